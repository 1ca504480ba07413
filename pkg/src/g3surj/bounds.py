"""The divisor-bound engine.

Everything here is specific to abelian threefolds: the Weil polynomial is a
sextic, and the two cubic-splitting eliminations below (k_p and k_p_prime)
encode how a 3+3 Jordan-Holder filtration of the l-torsion would force
P_p to factor into a specific pair of cubics mod l.  The engine combines

    B1(T) = gcd{p * #J(F_p)}                      (kills 1- and 5-dim factors)
    R(M,T) = gcd{p * Res(P_p, H'_{M,p})}          (kills 2- and 4-dim pieces)
    B2(T) = lcm(B1, lcm over levels of R(M,T))
    B3(T) = gcd{K_p},  B4(T) = gcd{K'_p}          (kill 3+3 filtrations)
    B(T)  = lcm(B2, B3, B4)

and a prime l >= 5 with l not dividing B(T) gets a Surjective verdict,
provided the transvection conditions (a toric-dimension-1 witness prime q
with l not dividing gcd{q * #Phi_q}, plus semistability) are on record.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .curve import WeilPolynomial
from .hecke import HeckeTable
from .intpoly import (
    AllZeroNumerators,
    RatPoly,
    gcd_all,
    gcd_of_numerators,
    lcm_all,
    resultant_monic,
)
from .hecke import weil_transform


class HypothesisViolation(ValueError):
    """A per-prime hypothesis failed; choose another auxiliary prime."""


class MethodFailure(RuntimeError):
    """The bound method cannot produce a bound from these inputs."""


@dataclass(frozen=True)
class PrimeDatum:
    p: int
    weil: WeilPolynomial
    order: int

    def __post_init__(self):
        if self.order != self.weil.order():
            raise ValueError(f"order {self.order} != P_{self.p}(1) = {self.weil.order()}")

    @classmethod
    def from_weil(cls, weil: WeilPolynomial) -> "PrimeDatum":
        return cls(p=weil.p, weil=weil, order=weil.order())


@dataclass(frozen=True)
class ToricWitness:
    """A prime q whose special fibre has toric dimension 1, with #Phi_q."""

    q: int
    phi_order: int
    toric_dim_one: bool


@dataclass(frozen=True)
class SplitBound:
    """One cubic-splitting elimination at p: the forced factorization
    parameters and the divisor K they produce."""

    p: int
    delta: Fraction
    epsilon: Fraction
    g: RatPoly
    k: int
    K: int


@dataclass(frozen=True)
class CaseThreeTrace:
    p: int
    case1: SplitBound  # filtration with det(U) = chi or chi^2
    case2: SplitBound  # filtration with det(U) = 1 or chi^3


@dataclass(frozen=True)
class LevelBound:
    level: int
    dim: int
    resultants: Mapping[int, int]
    r_mt: int


def b1(data: Sequence[PrimeDatum]) -> int:
    """gcd of p * #J(F_p) over T; positive since every order is."""
    if not data:
        raise ValueError("empty prime set")
    value = gcd_all([d.p * d.order for d in data])
    assert value > 0
    return value


def r_mp(table: HeckeTable, weil: WeilPolynomial) -> int:
    """R(M,p) = Res(P_p, H'_{M,p}), via the 6x6 quotient-ring determinant."""
    h = table.polynomial(weil.p)
    hprime = weil_transform(h, weil.p)
    return resultant_monic(weil.poly(), hprime)


def r_mt(table: HeckeTable, data: Sequence[PrimeDatum]) -> int:
    """R(M,T) = gcd{p * R(M,p) : p in T}; 1 for a zero-dimensional level.

    A single vanishing R(M,p) does not kill the level (the gcd over the
    other primes can still be nonzero); only R(M,T) = 0 is a method
    failure, and that is for the caller to diagnose.
    """
    if table.dim == 0:
        return 1
    if not data:
        raise ValueError("empty prime set")
    return gcd_all([d.p * r_mp(table, d.weil) for d in data])


def b2(b1_value: int, r_values: Sequence[int]) -> int:
    """lcm(B1, lcm of the R(M,T) over levels with nonzero new subspace)."""
    if any(r == 0 for r in r_values):
        raise MethodFailure("R(M,T) = 0 for some level: no bound from resultants")
    if not r_values:
        return b1_value
    return lcm_all([b1_value, lcm_all(list(r_values))])


def k_p(weil: WeilPolynomial) -> SplitBound:
    """Divisor K_p killing 3+3 filtrations with det(U) = chi or chi^2.

    Requires p + 1 != alpha (automatic for p >= 36).  The forced mod-l
    factorization is (x^3 + e x^2 + d x - p)(x^3 - d x^2 - p e x - p^2);
    eliminating the quadratic terms pins d = delta, e = delta + alpha over
    Q, and K_p = p (p-1)(p+1-alpha) k with k the gcd of the numerators of
    the coefficients of P_p - g.  Nonzero for every genuine Weil sextic.
    """
    p, a, b, c = weil.p, weil.alpha, weil.beta, weil.gamma
    if p + 1 == a:
        raise HypothesisViolation(f"p + 1 = alpha at p = {p}; choose another prime")
    denom = (p - 1) * (p + 1 - a)
    delta = Fraction(-p**2 * a + p**2 + p * a**2 - p * a - p * b + p - b + c, denom)
    epsilon = delta + a
    g = RatPoly([-p, delta, epsilon, 1]) * RatPoly([-(p**2), -p * epsilon, -delta, 1])
    diff = weil.poly().to_rat() - g
    # the construction forces these identities exactly over Q; they turn the
    # elimination into a self-check
    assert diff[6] == 0 and diff[5] == 0 and diff[1] == 0 and diff[0] == 0
    assert diff[3] == (p + 1) * diff[4]
    assert diff[2] == p * diff[4]
    try:
        k = gcd_of_numerators(diff.coeffs)
    except AllZeroNumerators:
        raise AssertionError(
            f"P_p - g vanished identically at p = {p}: impossible for a Weil polynomial"
        ) from None
    K = p * denom * k
    assert K != 0
    return SplitBound(p=p, delta=delta, epsilon=epsilon, g=g, k=k, K=K)


def k_p_prime(weil: WeilPolynomial) -> SplitBound:
    """Divisor K'_p killing 3+3 filtrations with det(U) = 1 or chi^3.

    Requires p^3 + 1 != p*alpha (automatic for p >= 5).  Same elimination
    against (x^3 + e x^2 + d x - 1)(x^3 - p d x^2 - p^2 e x - p^3), with
    e = p*delta' + alpha and K'_p = p (p^3-1)(p^3+1-p*alpha) k'.
    """
    p, a, b, c = weil.p, weil.alpha, weil.beta, weil.gamma
    if p**3 + 1 == p * a:
        raise HypothesisViolation(f"p^3 + 1 = p*alpha at p = {p}; choose another prime")
    denom = (p**3 - 1) * (p**3 + 1 - p * a)
    delta = Fraction(-p**5 * a + p**4 + p**3 * a**2 - p**3 * b - p**2 * a + p * c + p - b, denom)
    epsilon = p * delta + a
    g = RatPoly([-1, delta, epsilon, 1]) * RatPoly([-(p**3), -(p**2) * epsilon, -p * delta, 1])
    diff = weil.poly().to_rat() - g
    assert diff[6] == 0 and diff[5] == 0 and diff[1] == 0 and diff[0] == 0
    assert p * diff[3] == (p**3 + 1) * diff[4]
    assert diff[2] == p * diff[4]
    try:
        k = gcd_of_numerators(diff.coeffs)
    except AllZeroNumerators:
        raise AssertionError(
            f"P_p - g' vanished identically at p = {p}: impossible for a Weil polynomial"
        ) from None
    K = p * denom * k
    assert K != 0
    return SplitBound(p=p, delta=delta, epsilon=epsilon, g=g, k=k, K=K)


def case_three_trace(weil: WeilPolynomial) -> CaseThreeTrace:
    return CaseThreeTrace(p=weil.p, case1=k_p(weil), case2=k_p_prime(weil))


@dataclass
class BoundReport:
    primes: tuple[int, ...]
    data: tuple[PrimeDatum, ...]
    witnesses: tuple[ToricWitness, ...]
    b1: int
    levels: tuple[LevelBound, ...]
    b2_prime: int | None
    b2: int | None
    traces: tuple[CaseThreeTrace, ...]
    b3: int
    b4: int
    b: int | None
    assumptions: tuple[str, ...] = ()
    diagnostics: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        """JSON-ready form; unbounded integers become decimal strings."""

        def frac(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        def split(sb: SplitBound) -> dict:
            return {
                "delta": frac(sb.delta),
                "epsilon": frac(sb.epsilon),
                "g": [frac(co) for co in sb.g.coeffs],
                "k": str(sb.k),
                "K": str(sb.K),
            }

        return {
            "primes": list(self.primes),
            "data": [
                {
                    "p": d.p,
                    "weil": [d.weil.alpha, d.weil.beta, d.weil.gamma],
                    "jacobian_order": str(d.order),
                }
                for d in self.data
            ],
            "witnesses": [
                {"q": w.q, "phi_order": w.phi_order, "toric_dim_one": w.toric_dim_one}
                for w in self.witnesses
            ],
            "b1": str(self.b1),
            "levels": [
                {
                    "level": lv.level,
                    "dim": lv.dim,
                    "resultants": {str(p): str(r) for p, r in sorted(lv.resultants.items())},
                    "r_mt": str(lv.r_mt),
                }
                for lv in self.levels
            ],
            "b2_prime": None if self.b2_prime is None else str(self.b2_prime),
            "b2": None if self.b2 is None else str(self.b2),
            "traces": [
                {"p": t.p, "case1": split(t.case1), "case2": split(t.case2)}
                for t in self.traces
            ],
            "b3": str(self.b3),
            "b4": str(self.b4),
            "b": None if self.b is None else str(self.b),
            "assumptions": list(self.assumptions),
            "diagnostics": list(self.diagnostics),
            "notes": list(self.notes),
        }


def bound(
    data: Sequence[PrimeDatum],
    tables: Sequence[HeckeTable] = (),
    witnesses: Sequence[ToricWitness] = (),
    semistable: str | None = None,
) -> BoundReport:
    """Assemble the full bound report.

    semistable is the reason the Jacobian is known semistable (for the
    assumptions list), or None when it is not established.  Method
    failures (a level with R(M,T) = 0) land in diagnostics and leave b2
    and b unset rather than raising.
    """
    if not data:
        raise ValueError("empty prime set")
    diagnostics: list[str] = []
    notes: list[str] = []
    assumptions: list[str] = []
    if semistable:
        assumptions.append(f"semistable: {semistable}")
    for w in witnesses:
        if w.toric_dim_one:
            assumptions.append(f"toric_dim_one@q={w.q} (#Phi_q={w.phi_order})")

    b1_value = b1(data)

    levels: list[LevelBound] = []
    for table in sorted(tables, key=lambda t: t.level):
        if table.dim == 0:
            levels.append(LevelBound(level=table.level, dim=0, resultants={}, r_mt=1))
            continue
        resultants = {d.p: r_mp(table, d.weil) for d in data}
        for p, r in resultants.items():
            if r == 0:
                notes.append(
                    f"R({table.level},{p}) = 0; the level survives through the gcd over T"
                )
        value = gcd_all([d.p * resultants[d.p] for d in data])
        if value == 0:
            diagnostics.append(
                f"R({table.level},T) = 0: resultant bound failed "
                "(possible extra endomorphisms)"
            )
        levels.append(
            LevelBound(level=table.level, dim=table.dim, resultants=resultants, r_mt=value)
        )

    r_values = [lv.r_mt for lv in levels if lv.dim > 0]
    b2_prime_value = b2_value = None
    if not any(lv.r_mt == 0 for lv in levels):
        b2_prime_value = lcm_all(r_values) if r_values else 1
        b2_value = lcm_all([b1_value, b2_prime_value])

    traces = tuple(case_three_trace(d.weil) for d in data)
    b3_value = gcd_all([t.case1.K for t in traces])
    b4_value = gcd_all([t.case2.K for t in traces])

    b_value = None
    if b2_value is not None:
        b_value = lcm_all([b2_value, b3_value, b4_value])

    return BoundReport(
        primes=tuple(d.p for d in data),
        data=tuple(data),
        witnesses=tuple(witnesses),
        b1=b1_value,
        levels=tuple(levels),
        b2_prime=b2_prime_value,
        b2=b2_value,
        traces=traces,
        b3=b3_value,
        b4=b4_value,
        b=b_value,
        assumptions=tuple(assumptions),
        diagnostics=tuple(diagnostics),
        notes=tuple(notes),
    )


@dataclass(frozen=True)
class Verdict:
    ell: int
    status: str  # "surjective" | "inconclusive"
    reason: str = ""

    @property
    def surjective(self) -> bool:
        return self.status == "surjective"


def verdict(ell: int, report: BoundReport, witnesses: Sequence[ToricWitness] | None = None) -> Verdict:
    """Per-prime verdict; Surjective re-derives every condition from the
    report's raw components (never from the cached composite values)."""
    if witnesses is None:
        witnesses = report.witnesses
    if ell < 5:
        if ell == 3:
            return Verdict(ell, "inconclusive", "ell < 5; see small-prime certificate")
        return Verdict(ell, "inconclusive", "ell < 5")
    verified = [w for w in witnesses if w.toric_dim_one]
    if not verified:
        return Verdict(ell, "inconclusive", "no transvection witness")
    if not any(a.startswith("semistable") for a in report.assumptions):
        return Verdict(ell, "inconclusive", "semistability not established")
    cond_d = gcd_all([w.q * w.phi_order for w in verified])
    if cond_d % ell == 0:
        return Verdict(ell, "inconclusive", f"ell divides gcd{{q * #Phi_q}} = {cond_d}")
    if report.diagnostics:
        return Verdict(ell, "inconclusive", "method failure: " + "; ".join(report.diagnostics))
    # recompute B from the per-component values
    b1_value = b1(report.data)
    r_values = [lv.r_mt for lv in report.levels if lv.dim > 0]
    if any(r == 0 for r in r_values):
        return Verdict(ell, "inconclusive", "method failure: R(M,T) = 0")
    b2_value = lcm_all([b1_value] + r_values) if r_values else b1_value
    b3_value = gcd_all([t.case1.K for t in report.traces])
    b4_value = gcd_all([t.case2.K for t in report.traces])
    b_value = lcm_all([b2_value, b3_value, b4_value])
    if b_value % ell == 0:
        return Verdict(ell, "inconclusive", f"ell divides B(T) = {b_value}")
    return Verdict(ell, "surjective")
