"""Arithmetic in F_p and F_{p^k} (k <= 6) and polynomials over them.

A field element is a coefficient tuple of length k with entries in [0, p),
written in the basis 1, t, ..., t^(k-1) where t is the class of the field
modulus.  The modulus is chosen deterministically: monic degree-k
polynomials are scanned in the order of their coefficient vector
(c_0, ..., c_{k-1}) read as a base-p integer, and the first irreducible
one wins.  No Conway tables, so any two runs (or reimplementations that
follow the same rule) agree on the representation.

The raw tuple kernels on FiniteField (add/mul/...) are what the point
counting loops call; FFElement and FFPoly are thin wrappers over them.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterator, Sequence

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin, deterministic for n < 3.3e24 with the fixed witness set."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# -- polynomials over the prime field (plain int lists), used for the modulus
# scan only


def _pf_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pf_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # reduce by monic m
    n = len(m) - 1
    for i in range(len(prod) - 1, n - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(n):
                prod[i - n + j] = (prod[i - n + j] - c * m[j]) % p
    return _pf_trim(prod[:n])


def _pf_powmod_x(e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pf_mulmod([1], [0, 1], m, p)
    while e:
        if e & 1:
            result = _pf_mulmod(result, base, m, p)
        base = _pf_mulmod(base, base, m, p)
        e >>= 1
    return result


def _pf_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _pf_trim(list(a)), _pf_trim(list(b))
    while b:
        # a mod b
        inv = pow(b[-1], p - 2, p)
        n = len(b) - 1
        r = list(a)
        for i in range(len(r) - 1, n - 1, -1):
            c = r[i] * inv % p
            if c:
                r[i] = 0
                for j in range(n):
                    r[i - n + j] = (r[i - n + j] - c * b[j]) % p
        a, b = b, _pf_trim(r[:n])
    return a


def _pf_is_irreducible(m: list[int], p: int) -> bool:
    """m monic of degree k >= 1 over F_p."""
    k = len(m) - 1
    if k == 1:
        return True
    if _pf_powmod_x(p**k, m, p) != [0, 1]:
        return False
    for r in _prime_factors(k):
        xr = _pf_powmod_x(p ** (k // r), m, p)
        diff = list(xr) + [0] * max(0, 2 - len(xr))
        diff[1] = (diff[1] - 1) % p
        diff = _pf_trim(diff)
        if not diff:
            return False
        if len(_pf_gcd(m, diff, p)) - 1 >= 1:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FiniteField:
    """F_{p^k} with deterministic modulus; elements are int tuples of length k."""

    def __init__(self, p: int, k: int, _token=None):
        if _token is not _FIELD_TOKEN:
            raise TypeError("use field_create(p, k)")
        self.p = p
        self.k = k
        self.size = p**k
        self.modulus = self._scan_modulus()
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)
        # t^(k+j) mod modulus for j = 0..k-2, used by mul reduction
        self._red: list[tuple[int, ...]] = []
        if k > 1:
            row = tuple((-self.modulus[j]) % p for j in range(k))
            self._red.append(row)
            for _ in range(k - 2):
                prev = self._red[-1]
                shifted = [0] + list(prev[: k - 1])
                lead = prev[k - 1]
                if lead:
                    for j in range(k):
                        shifted[j] = (shifted[j] - lead * self.modulus[j]) % p
                self._red.append(tuple(c % p for c in shifted))

    def _scan_modulus(self) -> tuple[int, ...]:
        p, k = self.p, self.k
        if k == 1:
            return (0, 1)
        for idx in range(p**k):
            coeffs = []
            v = idx
            for _ in range(k):
                coeffs.append(v % p)
                v //= p
            m = coeffs + [1]
            if _pf_is_irreducible(m, p):
                return tuple(m)
        raise AssertionError("no irreducible polynomial found")  # unreachable

    # raw tuple kernels ------------------------------------------------

    def add(self, a: tuple, b: tuple) -> tuple:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a: tuple, b: tuple) -> tuple:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a: tuple) -> tuple:
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a: tuple, b: tuple) -> tuple:
        p = self.p
        k = self.k
        if k == 1:
            return (a[0] * b[0] % p,)
        prod = [0] * (2 * k - 1)
        for i in range(k):
            ai = a[i]
            if ai:
                for j in range(k):
                    prod[i + j] += ai * b[j]
        out = prod[:k]
        red = self._red
        for j in range(k - 1):
            c = prod[k + j]
            if c:
                row = red[j]
                for i in range(k):
                    out[i] += c * row[i]
        return tuple(x % p for x in out)

    def smul(self, c: int, a: tuple) -> tuple:
        p = self.p
        c %= p
        return tuple(c * x % p for x in a)

    def pow(self, a: tuple, e: int) -> tuple:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: tuple) -> tuple:
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.size - 2)

    def scalar(self, n: int) -> tuple:
        """Embed an integer via reduction mod p."""
        return (n % self.p,) + (0,) * (self.k - 1)

    def from_index(self, n: int) -> tuple:
        """n-th element in base-p counting order, 0 <= n < size."""
        coeffs = []
        for _ in range(self.k):
            coeffs.append(n % self.p)
            n //= self.p
        return tuple(coeffs)

    def elements(self) -> Iterator[tuple]:
        for n in range(self.size):
            yield self.from_index(n)

    def element(self, coeffs: Sequence[int] | int) -> "FFElement":
        if isinstance(coeffs, int):
            return FFElement(self, self.scalar(coeffs))
        if len(coeffs) > self.k:
            raise ValueError("too many coefficients")
        cs = tuple(c % self.p for c in coeffs) + (0,) * (self.k - len(coeffs))
        return FFElement(self, cs)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def __repr__(self):
        return f"FiniteField(p={self.p}, k={self.k})"


_FIELD_TOKEN = object()


@functools.lru_cache(maxsize=None)
def field_create(p: int, k: int) -> FiniteField:
    """F_{p^k}; p must be prime and 1 <= k <= 6."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not 1 <= k <= 6:
        raise ValueError("extension degree must be between 1 and 6")
    return FiniteField(p, k, _token=_FIELD_TOKEN)


@dataclass(frozen=True)
class FFElement:
    field: FiniteField
    coeffs: tuple

    def __add__(self, other: "FFElement") -> "FFElement":
        return FFElement(self.field, self.field.add(self.coeffs, other.coeffs))

    def __sub__(self, other: "FFElement") -> "FFElement":
        return FFElement(self.field, self.field.sub(self.coeffs, other.coeffs))

    def __neg__(self) -> "FFElement":
        return FFElement(self.field, self.field.neg(self.coeffs))

    def __mul__(self, other: "FFElement") -> "FFElement":
        return FFElement(self.field, self.field.mul(self.coeffs, other.coeffs))

    def __pow__(self, e: int) -> "FFElement":
        return FFElement(self.field, self.field.pow(self.coeffs, e))

    def inverse(self) -> "FFElement":
        return FFElement(self.field, self.field.inv(self.coeffs))

    def is_zero(self) -> bool:
        return self.coeffs == self.field.zero


class FFPoly:
    """Polynomial over a FiniteField; coefficients ascending, raw tuples."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Sequence = ()):
        raw = []
        for c in coeffs:
            if isinstance(c, FFElement):
                raw.append(c.coeffs)
            elif isinstance(c, int):
                raw.append(field.scalar(c))
            else:
                raw.append(tuple(c))
        n = len(raw)
        while n > 0 and raw[n - 1] == field.zero:
            n -= 1
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(raw[:n]))

    def __setattr__(self, name, value):
        raise AttributeError("FFPoly is immutable")

    @classmethod
    def from_int_coeffs(cls, field: FiniteField, coeffs: Sequence[int]) -> "FFPoly":
        return cls(field, [field.scalar(c) for c in coeffs])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> tuple:
        if not self.coeffs:
            raise ValueError("zero polynomial")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def __getitem__(self, e: int) -> tuple:
        if 0 <= e < len(self.coeffs):
            return self.coeffs[e]
        return self.field.zero

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FFPoly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.coeffs))

    def __add__(self, other: "FFPoly") -> "FFPoly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return FFPoly(F, out)

    def __sub__(self, other: "FFPoly") -> "FFPoly":
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        out = [F.sub(self[i], other[i]) for i in range(n)]
        return FFPoly(F, out)

    def __mul__(self, other: "FFPoly") -> "FFPoly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return FFPoly(F)
        out = [F.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == F.zero:
                continue
            for j, bj in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return FFPoly(F, out)

    def scale(self, c: tuple) -> "FFPoly":
        F = self.field
        return FFPoly(F, [F.mul(c, a) for a in self.coeffs])

    def monic(self) -> "FFPoly":
        if self.is_zero():
            raise ValueError("zero polynomial cannot be made monic")
        if self.is_monic():
            return self
        return self.scale(self.field.inv(self.lc))

    def divmod(self, d: "FFPoly") -> tuple["FFPoly", "FFPoly"]:
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        n = d.degree
        rem = list(self.coeffs)
        if len(rem) <= n:
            return FFPoly(F), self
        inv_lc = F.inv(d.lc)
        quo = [F.zero] * (len(rem) - n)
        for i in range(len(rem) - n - 1, -1, -1):
            q = F.mul(rem[i + n], inv_lc)
            if q != F.zero:
                quo[i] = q
                for j in range(n + 1):
                    rem[i + j] = F.sub(rem[i + j], F.mul(q, d.coeffs[j]))
        return FFPoly(F, quo), FFPoly(F, rem[:n])

    def __floordiv__(self, d: "FFPoly") -> "FFPoly":
        q, _ = self.divmod(d)
        return q

    def __mod__(self, d: "FFPoly") -> "FFPoly":
        _, r = self.divmod(d)
        return r

    def gcd(self, other: "FFPoly") -> "FFPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a.monic()

    def derivative(self) -> "FFPoly":
        F = self.field
        return FFPoly(F, [F.smul(e, c) for e, c in enumerate(self.coeffs)][1:])

    def evaluate(self, x: tuple) -> tuple:
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def pth_root(self) -> "FFPoly":
        """Inverse Frobenius: exact p-th root of a polynomial in x^p."""
        F = self.field
        p = F.p
        out = []
        for e, c in enumerate(self.coeffs):
            if e % p == 0:
                out.append(F.pow(c, p ** (F.k - 1)))
            elif c != F.zero:
                raise ValueError("not a p-th power")
        return FFPoly(F, out)

    def __repr__(self):
        return f"FFPoly({self.field!r}, {list(self.coeffs)!r})"

    def __str__(self):
        F = self.field
        if self.is_zero():
            return "0"
        parts = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if c == F.zero:
                continue
            if F.k == 1:
                cs = str(c[0])
            else:
                cs = "(" + ",".join(str(x) for x in c) + ")"
            if e == 0:
                parts.append(cs)
            else:
                xe = "x" if e == 1 else f"x^{e}"
                parts.append(xe if c == F.one else f"{cs}*{xe}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# Operations


def squarefree_profile(f: FFPoly) -> dict[int, FFPoly]:
    """Multiplicity decomposition f = lc * prod part_m^m over a finite field.

    Each part is monic and squarefree, distinct parts are coprime, and only
    multiplicities with a nonconstant part appear.  Works in any
    characteristic (p-th power blocks are peeled off by exact root
    extraction).
    """
    if f.is_zero():
        raise ValueError("squarefree profile of the zero polynomial")
    out: dict[int, FFPoly] = {}
    _squarefree_rec(f.monic(), 1, out)
    return out


def _squarefree_rec(f: FFPoly, e: int, out: dict[int, FFPoly]) -> None:
    if f.degree <= 0:
        return
    p = f.field.p
    df = f.derivative()
    if df.is_zero():
        _squarefree_rec(f.pth_root(), e * p, out)
        return
    c = f.gcd(df)
    w = f // c
    i = 1
    while w.degree > 0:
        y = w.gcd(c)
        part = w // y
        if part.degree > 0:
            key = i * e
            out[key] = out[key] * part if key in out else part
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        _squarefree_rec(c.pth_root(), e * p, out)


def quadratic_root_count(b: FFElement, c: FFElement) -> int:
    """Number of distinct roots of y^2 + b*y + c in the ambient field.

    Computed as deg gcd(y^q - y, y^2 + b y + c) with y^q by modular
    exponentiation, so it is uniform in the characteristic.
    """
    return _quad_roots_raw(b.field, b.coeffs, c.coeffs)


def _quad_roots_raw(F: FiniteField, b: tuple, c: tuple) -> int:
    mul, add, sub = F.mul, F.add, F.sub
    zero, one = F.zero, F.one
    # y^q mod (y^2 + b y + c), maintained as r1*y + r0
    r1, r0 = one, zero
    for bit in bin(F.size)[3:]:
        s = mul(r1, r1)
        t = mul(r0, r0)
        u = mul(r1, r0)
        r1 = sub(add(u, u), mul(s, b))
        r0 = sub(t, mul(s, c))
        if bit == "1":
            r1, r0 = sub(r0, mul(r1, b)), F.neg(mul(r1, c))
    a1 = sub(r1, one)
    if a1 == zero:
        return 2 if r0 == zero else 0
    # gcd with the linear y + r0/a1: one root iff it also kills the quadratic
    root = F.neg(mul(r0, F.inv(a1)))
    value = add(mul(root, add(root, b)), c)
    return 1 if value == zero else 0


def unit_order(modulus: FFPoly) -> int:
    """Multiplicative order of t in F[t]/(modulus); modulus(0) must be a unit."""
    F = modulus.field
    if modulus.degree < 1:
        raise ValueError("modulus must be nonconstant")
    if modulus[0] == F.zero:
        raise ValueError("t is not a unit modulo this polynomial")
    t = FFPoly(F, [F.zero, F.one])
    one = FFPoly(F, [F.one])
    cap = F.size ** modulus.degree
    r = t % modulus
    n = 1
    while r != one:
        r = (r * t) % modulus
        n += 1
        if n > cap:
            raise RuntimeError("order search exceeded the unit-group cap")
    return n
