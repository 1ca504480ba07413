"""Genus-3 hyperelliptic curve models, reduction analysis, point counts,
and Weil polynomials.

A curve is given by an integral model y^2 + h(x) y = f(x) with deg h <= 4
and deg f <= 8.  Validity means the simplified model 4f + h^2 has degree 7
or 8 and is squarefree over Q, which pins the genus at exactly 3.  Point
counts over F_{p^k} run through quadratic_root_count uniformly, so odd and
even characteristic share one code path, and the three counts k = 1, 2, 3
determine the Frobenius characteristic polynomial

    P_p(x) = x^6 + a x^5 + b x^4 + c x^3 + p b x^2 + p^2 a x + p^3

through Newton's identities with hard exactness assertions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from .finitefield import FFPoly, FiniteField, field_create, squarefree_profile, _quad_roots_raw
from .intpoly import IntPoly, resultant_sylvester

GENUS = 3


class CurveModelError(ValueError):
    """The (h, f) pair does not define a smooth genus-3 model."""


class BadReductionError(ValueError):
    """Operation requested at a prime of bad reduction."""


@dataclass(frozen=True)
class HyperellipticCurve:
    h: IntPoly
    f: IntPoly
    name: str = ""
    conductor: int | None = None
    component_groups: Mapping[int, int] = field(default_factory=dict)

    @property
    def genus(self) -> int:
        return GENUS

    def simplified_model(self) -> IntPoly:
        return simplified_model(self.h, self.f)

    def __repr__(self):
        return f"HyperellipticCurve(y^2 + ({self.h})*y = {self.f})"


def simplified_model(h: IntPoly, f: IntPoly) -> IntPoly:
    """4f + h^2: the y^2 = m(x) model obtained by completing the square."""
    return f.scale(4) + h * h


def validate_curve(
    h: IntPoly,
    f: IntPoly,
    name: str = "",
    conductor: int | None = None,
    component_groups: Mapping[int, int] | None = None,
) -> HyperellipticCurve:
    """Check the genus-3 constraints and build the curve object."""
    if h.degree > 4:
        raise CurveModelError(f"deg h = {h.degree} > 4")
    if f.degree > 8:
        raise CurveModelError(f"deg f = {f.degree} > 8")
    m = simplified_model(h, f)
    if m.degree not in (7, 8):
        raise CurveModelError(f"4f + h^2 has degree {m.degree}, need 7 or 8 for genus 3")
    if resultant_sylvester(m, m.derivative()) == 0:
        raise CurveModelError("4f + h^2 is not squarefree: singular model")
    return HyperellipticCurve(
        h=h,
        f=f,
        name=name,
        conductor=conductor,
        component_groups=dict(component_groups or {}),
    )


def curve_from_dict(data: Mapping) -> HyperellipticCurve:
    """Build a curve from the JSON input schema.

    Schema: {"name": str, "h": [int|str ...ascending], "f": [...],
    "conductor": int|str|null, "component_groups": {"q": int, ...}|null}.
    Decimal strings are accepted everywhere an integer is.
    """

    def as_int(v):
        if isinstance(v, bool):
            raise CurveModelError("boolean is not a coefficient")
        if isinstance(v, int):
            return v
        if isinstance(v, str):
            return int(v, 10)
        raise CurveModelError(f"expected integer or decimal string, got {v!r}")

    h = IntPoly([as_int(c) for c in data.get("h", [])])
    f = IntPoly([as_int(c) for c in data.get("f", [])])
    conductor = data.get("conductor")
    if conductor is not None:
        conductor = as_int(conductor)
    groups = {}
    for q, phi in (data.get("component_groups") or {}).items():
        groups[int(q)] = as_int(phi)
    return validate_curve(h, f, name=str(data.get("name", "")), conductor=conductor, component_groups=groups)


def load_curve(path: str | Path) -> HyperellipticCurve:
    with open(path, "r", encoding="utf-8") as fh:
        return curve_from_dict(json.load(fh))


# ---------------------------------------------------------------------------
# Reduction


def has_good_reduction(curve: HyperellipticCurve, p: int) -> bool:
    reason = bad_reduction_reason(curve, p)
    return reason is None


def bad_reduction_reason(curve: HyperellipticCurve, p: int) -> str | None:
    """None for good reduction, otherwise a human-readable reason."""
    if p == 2:
        return _bad_reduction_reason_2(curve)
    m = curve.simplified_model()
    if m.lc % p == 0:
        return f"leading coefficient of 4f + h^2 vanishes mod {p}"
    F = field_create(p, 1)
    mp = FFPoly.from_int_coeffs(F, m.coeffs)
    d = mp.derivative()
    if d.is_zero() or mp.gcd(d).degree > 0:
        return f"4f + h^2 is not squarefree mod {p}"
    return None


def _bad_reduction_reason_2(curve: HyperellipticCurve) -> str | None:
    h2 = [c % 2 for c in curve.h.coeffs]
    f2 = [c % 2 for c in curve.f.coeffs]
    if not any(h2):
        return "h vanishes mod 2 (y^2 = f is never smooth in characteristic 2)"
    dh2 = [(e * c) % 2 for e, c in enumerate(h2)][1:]
    df2 = [(e * c) % 2 for e, c in enumerate(f2)][1:]
    pad = lambda a, n: a + [0] * (n - len(a))
    h2, f2, dh2, df2 = pad(h2, 5), pad(f2, 9), pad(dh2, 4), pad(df2, 8)
    # search singular points of both charts over F_{2^r}; any singular point
    # of a plane model with deg h <= 4 lives in degree <= 4, scanning to 6
    # is strictly more than enough
    for r in range(1, 7):
        F = field_create(2, r)

        def ev(coeffs, x):
            acc = F.zero
            for c in reversed(coeffs):
                acc = F.mul(acc, x)
                if c:
                    acc = ((acc[0] + c) % 2,) + acc[1:]
            return acc

        for x in F.elements():
            if ev(h2, x) != F.zero:
                continue
            fx = ev(f2, x)
            dhx = ev(dh2, x)
            dfx = ev(df2, x)
            for y in F.elements():
                on_curve = F.add(F.mul(y, y), F.add(F.mul(ev(h2, x), y), fx)) == F.zero
                dx_zero = F.add(F.mul(dhx, y), dfx) == F.zero
                if on_curve and dx_zero:
                    return "singular point mod 2 on the affine chart"
        # infinity chart at u = 0: v^2 + h4 v + f8, partials h4 and h3 v + f7
        if h2[4] == 0:
            for v in F.elements():
                on_curve = F.add(F.mul(v, v), F.add(F.smul(h2[4], v), F.scalar(f2[8]))) == F.zero
                du_zero = F.add(F.smul(h2[3], v), F.scalar(f2[7])) == F.zero
                if on_curve and du_zero:
                    return "singular point mod 2 at infinity"
    return None


@dataclass
class ReductionProfile:
    q: int
    multiplicities: dict[int, FFPoly]
    degree_drop: bool
    toric_dim_one: bool
    note: str = ""


def reduction_profile(curve: HyperellipticCurve, q: int) -> ReductionProfile:
    """Multiplicity structure of (4f + h^2) mod q and the toric-dimension-1 test.

    toric_dim_one is true exactly when the reduction keeps its degree and
    has a single double root (a multiplicity-2 part of degree 1) with all
    other roots simple; that is the witness that the special fibre of the
    Neron model contains a 1-dimensional torus.
    """
    if q == 2:
        raise ValueError("reduction profile is defined for odd primes only")
    if not _is_prime_cached(q):
        raise ValueError(f"{q} is not prime")
    m = curve.simplified_model()
    if m.lc % q == 0:
        return ReductionProfile(
            q=q,
            multiplicities={},
            degree_drop=True,
            toric_dim_one=False,
            note="degree drops mod q; criterion not applicable",
        )
    F = field_create(q, 1)
    prof = squarefree_profile(FFPoly.from_int_coeffs(F, m.coeffs))
    toric = (
        set(prof) <= {1, 2}
        and 2 in prof
        and prof[2].degree == 1
    )
    return ReductionProfile(q=q, multiplicities=prof, degree_drop=False, toric_dim_one=toric)


def _is_prime_cached(q: int) -> bool:
    from .finitefield import is_prime

    return is_prime(q)


# ---------------------------------------------------------------------------
# Point counting


def count_points(curve: HyperellipticCurve, p: int, k: int) -> int:
    """Points of the smooth projective model over F_{p^k} (k = 1..3)."""
    if not 1 <= k <= 3:
        raise ValueError("k must be 1, 2, or 3")
    reason = bad_reduction_reason(curve, p)
    if reason is not None:
        raise BadReductionError(f"bad reduction at {p}: {reason}")
    return _count_points_unchecked(curve, p, k)


def _count_points_unchecked(curve: HyperellipticCurve, p: int, k: int) -> int:
    F = field_create(p, k)
    hc = [c % p for c in curve.h.coeffs]
    fc = [c % p for c in curve.f.coeffs]
    mul, neg = F.mul, F.neg
    zero = F.zero
    total = 0
    for x in F.elements():
        acc = zero
        for c in reversed(hc):
            acc = mul(acc, x)
            if c:
                acc = ((acc[0] + c) % p,) + acc[1:]
        b = acc
        acc = zero
        for c in reversed(fc):
            acc = mul(acc, x)
            if c:
                acc = ((acc[0] + c) % p,) + acc[1:]
        total += _quad_roots_raw(F, b, neg(acc))
    # points at infinity: distinct roots of T^2 + h4 T - f8
    h4 = curve.h[4] % p
    f8 = curve.f[8] % p
    total += _quad_roots_raw(F, F.scalar(h4), neg(F.scalar(f8)))
    return total


# ---------------------------------------------------------------------------
# Weil polynomials


@dataclass(frozen=True)
class WeilPolynomial:
    """P_p encoded by (p, alpha, beta, gamma); the rest is forced by the
    functional equation."""

    p: int
    alpha: int
    beta: int
    gamma: int

    def check(self) -> "WeilPolynomial":
        p = self.p
        if self.alpha**2 > 36 * p:
            raise ValueError(f"|alpha| exceeds 6*sqrt(p): {self}")
        if abs(self.beta) > 15 * p:
            raise ValueError(f"|beta| exceeds 15p: {self}")
        if self.gamma**2 > 400 * p**3:
            raise ValueError(f"|gamma| exceeds 20p^(3/2): {self}")
        if self.order() <= 0:
            raise ValueError(f"P_p(1) <= 0: {self}")
        return self

    def poly(self) -> IntPoly:
        p, a, b, c = self.p, self.alpha, self.beta, self.gamma
        return IntPoly([p**3, p**2 * a, p * b, c, b, a, 1])

    def order(self) -> int:
        """#J(F_p) = P_p(1)."""
        p, a, b, c = self.p, self.alpha, self.beta, self.gamma
        return 1 + a + b + c + p * b + p**2 * a + p**3

    def reduce_mod(self, ell: int) -> FFPoly:
        F = field_create(ell, 1)
        return FFPoly.from_int_coeffs(F, self.poly().coeffs)


def weil_polynomial(curve: HyperellipticCurve, p: int) -> WeilPolynomial:
    """Frobenius characteristic polynomial from counts over F_p, F_p^2, F_p^3."""
    reason = bad_reduction_reason(curve, p)
    if reason is not None:
        raise BadReductionError(f"bad reduction at {p}: {reason}")
    counts = [_count_points_unchecked(curve, p, k) for k in (1, 2, 3)]
    s = [p**k + 1 - counts[k - 1] for k in (1, 2, 3)]
    e1 = s[0]
    t2 = e1 * s[0] - s[1]
    if t2 % 2 != 0:
        raise AssertionError(f"Newton identity for e2 not divisible at p={p}: counts={counts}")
    e2 = t2 // 2
    t3 = e2 * s[0] - e1 * s[1] + s[2]
    if t3 % 3 != 0:
        raise AssertionError(f"Newton identity for e3 not divisible at p={p}: counts={counts}")
    e3 = t3 // 3
    w = WeilPolynomial(p=p, alpha=-e1, beta=e2, gamma=-e3)
    try:
        w.check()
    except ValueError as exc:
        raise AssertionError(f"Weil bound violated at p={p}; point counting bug: {exc}") from exc
    return w


def jacobian_order(w: WeilPolynomial) -> int:
    return w.order()
