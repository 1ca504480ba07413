"""Hecke polynomial tables for weight-2 new subspaces.

A table holds, for one level M, the monic degree-d polynomials H_{M,p}
(characteristic polynomial of the Hecke operator T_p on the dimension-d
new subspace of weight-2 level-M cusp forms) for a handful of primes p.
Tables are ingested, never computed here: either from fixture files in a
plain text format, or from a remote database over HTTP.  The upstream JSON
field names live in DatabaseAdapter, so schema drift is a one-file fix.

File format, bit-exact:

    M <level> d <dim>
    <p> <c0> <c1> ... <c_dim>

with ascending integer coefficients of the monic H_{M,p}, ASCII,
LF-terminated, '#' starting a comment line.

weil_transform computes H'(x) = x^d H(x + p/x), the degree-2d integer
polynomial whose roots pair each Hecke eigenvalue a with the roots of
x^2 - a x + p.
"""

from __future__ import annotations

import os
import time
import urllib.error
import urllib.request
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, Sequence

from .intpoly import IntPoly


class HeckeFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class MissingHeckeTable(FileNotFoundError):
    def __init__(self, level: int, where: str):
        super().__init__(f"no Hecke table for level {level} in {where}")
        self.level = level


class HeckeFetchError(RuntimeError):
    pass


@dataclass(frozen=True)
class HeckeTable:
    level: int
    dim: int
    entries: Mapping[int, IntPoly]

    def __post_init__(self):
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))
        for p, poly in self.entries.items():
            if poly.degree != self.dim or not poly.is_monic():
                raise ValueError(f"H_{{{self.level},{p}}} is not monic of degree {self.dim}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(sorted(self.entries))

    def polynomial(self, p: int) -> IntPoly:
        if self.dim == 0:
            return IntPoly([1])
        if p not in self.entries:
            raise KeyError(f"level {self.level} table has no entry for p = {p}")
        return self.entries[p]

    def covers(self, primes: Iterable[int]) -> bool:
        return self.dim == 0 or all(p in self.entries for p in primes)


def parse_hecke_table(text: str) -> HeckeTable:
    level = dim = None
    entries: dict[int, IntPoly] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if level is None:
            if len(fields) != 4 or fields[0] != "M" or fields[2] != "d":
                raise HeckeFormatError("malformed header, expected 'M <level> d <dim>'", lineno)
            try:
                level, dim = int(fields[1]), int(fields[3])
            except ValueError:
                raise HeckeFormatError("non-integer level or dimension", lineno) from None
            if level < 1 or dim < 0:
                raise HeckeFormatError("level must be >= 1 and dim >= 0", lineno)
            continue
        if len(fields) != dim + 2:
            raise HeckeFormatError(
                f"row has {len(fields)} fields, expected {dim + 2} (p plus {dim + 1} coefficients)",
                lineno,
            )
        try:
            values = [int(v) for v in fields]
        except ValueError:
            raise HeckeFormatError("non-integer field", lineno) from None
        p, coeffs = values[0], values[1:]
        if coeffs[-1] != 1:
            raise HeckeFormatError(f"H_{{{level},{p}}} is not monic", lineno)
        if p in entries:
            raise HeckeFormatError(f"duplicate prime {p}", lineno)
        entries[p] = IntPoly(coeffs)
    if level is None:
        raise HeckeFormatError("empty input, header missing", 1)
    return HeckeTable(level=level, dim=dim, entries=entries)


def serialize_hecke_table(table: HeckeTable) -> str:
    lines = [f"M {table.level} d {table.dim}"]
    for p in table.primes:
        coeffs = table.entries[p].coeffs
        lines.append(" ".join(str(v) for v in (p, *coeffs)))
    return "\n".join(lines) + "\n"


def weil_transform(h: IntPoly, p: int) -> IntPoly:
    """x^d H(x + p/x) = sum_i c_i x^(d-i) (x^2 + p)^i for H = sum c_i x^i.

    Monic of degree 2d with integer coefficients; divisible by
    x^2 - a x + p whenever (x - a) divides H.
    """
    if not h.is_monic():
        raise ValueError("Hecke polynomial must be monic")
    d = h.degree
    base = IntPoly([p, 0, 1])
    power = IntPoly([1])
    out = IntPoly()
    for i, c in enumerate(h.coeffs):
        if c:
            out = out + power.scale(c).shift(d - i)
        if i < d:
            power = power * base
    return out


# ---------------------------------------------------------------------------
# Providers


def cache_filename(level: int) -> str:
    return f"hecke_M{level}.txt"


class FixtureDirectory:
    """File provider: one table per level, named hecke_M<level>.txt."""

    def __init__(self, root: str | Path):
        self.root = Path(root)

    def path_for(self, level: int) -> Path:
        return self.root / cache_filename(level)

    def load(self, level: int) -> HeckeTable:
        path = self.path_for(level)
        if not path.is_file():
            raise MissingHeckeTable(level, str(self.root))
        table = parse_hecke_table(path.read_text(encoding="utf-8"))
        if table.level != level:
            raise ValueError(f"{path} declares level {table.level}, expected {level}")
        return table


class DatabaseAdapter:
    """Field-name mapping for the remote newform-orbit schema."""

    level_key = "level"
    dim_key = "dim_new"
    orbits_key = "orbits"
    orbit_dim_key = "dim"
    orbit_charpoly_key = "charpoly"

    def query_url(self, endpoint: str, level: int, primes: Sequence[int]) -> str:
        plist = ",".join(str(p) for p in sorted(primes))
        return f"{endpoint.rstrip('/')}/newforms?level={level}&weight=2&primes={plist}"

    def table_from_response(self, payload: Mapping, level: int, primes: Sequence[int]) -> HeckeTable:
        if payload.get(self.level_key) != level:
            raise HeckeFetchError(f"response is for level {payload.get(self.level_key)}, expected {level}")
        dim = payload.get(self.dim_key)
        orbits = payload.get(self.orbits_key, [])
        total = sum(orbit[self.orbit_dim_key] for orbit in orbits)
        if total != dim:
            raise HeckeFetchError(f"orbit degrees sum to {total}, response declares dim {dim}")
        entries = {}
        for p in primes:
            product = IntPoly([1])
            for orbit in orbits:
                polys = orbit.get(self.orbit_charpoly_key, {})
                if str(p) not in polys:
                    raise HeckeFetchError(f"orbit missing charpoly for p = {p} at level {level}")
                factor = IntPoly([int(c) for c in polys[str(p)]])
                if factor.degree != orbit[self.orbit_dim_key] or not factor.is_monic():
                    raise HeckeFetchError(f"orbit charpoly at p = {p} is not monic of the orbit dimension")
                product = product * factor
            if dim > 0:
                entries[p] = product
        return HeckeTable(level=level, dim=dim, entries=entries)


Opener = Callable[[str, float], bytes]


def _default_opener(url: str, timeout: float) -> bytes:
    with urllib.request.urlopen(url, timeout=timeout) as response:
        return response.read()


class HeckeDatabaseClient:
    """HTTP provider with bounded retries; network use is explicit opt-in."""

    def __init__(
        self,
        endpoint: str,
        opener: Opener | None = None,
        retries: int = 3,
        backoff: float = 0.5,
        timeout: float = 30.0,
        adapter: DatabaseAdapter | None = None,
    ):
        self.endpoint = endpoint
        self.opener = opener or _default_opener
        self.retries = retries
        self.backoff = backoff
        self.timeout = timeout
        self.adapter = adapter or DatabaseAdapter()

    def fetch(self, level: int, primes: Sequence[int]) -> HeckeTable:
        import json

        url = self.adapter.query_url(self.endpoint, level, primes)
        last_error: Exception | None = None
        for attempt in range(self.retries):
            try:
                body = self.opener(url, self.timeout)
                payload = json.loads(body.decode("utf-8"))
                return self.adapter.table_from_response(payload, level, primes)
            except (urllib.error.URLError, urllib.error.HTTPError, OSError, ValueError) as exc:
                last_error = exc
                if attempt + 1 < self.retries:
                    time.sleep(self.backoff * (attempt + 1))
        raise HeckeFetchError(f"fetch failed for level {level} after {self.retries} attempts: {last_error}")


def fetch_hecke_table(
    level: int,
    primes: Sequence[int],
    endpoint: str,
    cache_dir: str | Path | None = None,
    opener: Opener | None = None,
    retries: int = 3,
) -> HeckeTable:
    """Serve from the cache when possible, otherwise fetch and cache.

    The cache file is the parse format, written atomically
    (single-writer contract).
    """
    cache_path = None
    if cache_dir is not None:
        cache_path = Path(cache_dir) / cache_filename(level)
        if cache_path.is_file():
            table = parse_hecke_table(cache_path.read_text(encoding="utf-8"))
            if table.level == level and table.covers(primes):
                return table
    client = HeckeDatabaseClient(endpoint, opener=opener, retries=retries)
    table = client.fetch(level, primes)
    if cache_path is not None:
        cache_path.parent.mkdir(parents=True, exist_ok=True)
        tmp = cache_path.with_suffix(".tmp")
        tmp.write_text(serialize_hecke_table(table), encoding="utf-8")
        os.replace(tmp, cache_path)
    return table
