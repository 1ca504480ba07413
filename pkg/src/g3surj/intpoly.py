"""Exact univariate polynomial arithmetic over ZZ and QQ.

Coefficients are stored ascending (index = exponent) with no trailing
zeros, so the tuple length determines the degree; the zero polynomial is
the empty tuple.  Integer coefficients are plain Python ints, rational
ones are fractions.Fraction, which keeps every value in lowest terms with
a positive denominator.  All operations are exact; nothing in this module
(or anything built on it) ever touches floating point.

Two independent resultant routes are provided.  resultant() prefers the
quotient-ring determinant when its first argument is monic, because the
pipeline's resultants all have a small monic factor on one side and a
degree-990 monster on the other; resultant_sylvester() is the classical
fraction-free Sylvester determinant and doubles as the cross-check oracle.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence


class AllZeroNumerators(ValueError):
    """A numerator gcd was requested for a list whose entries are all zero."""


def _trim(coeffs: Sequence) -> tuple:
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def _format_terms(coeffs: Sequence, var: str = "x") -> str:
    if not coeffs:
        return "0"
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if e == 0:
            body = f"{mag}"
        else:
            xe = var if e == 1 else f"{var}^{e}"
            body = xe if mag == 1 else f"{mag}*{xe}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


class IntPoly:
    """Dense polynomial over ZZ, immutable, ascending coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = _trim(list(coeffs))
        for c in cs:
            if not isinstance(c, int):
                raise TypeError(f"integer coefficient expected, got {c!r}")
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, e: int) -> int:
        """Coefficient of x^e (0 beyond the degree)."""
        if 0 <= e < len(self.coeffs):
            return self.coeffs[e]
        return 0

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("IntPoly", self.coeffs))

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return IntPoly(out)

    def scale(self, c: int) -> "IntPoly":
        return IntPoly([c * a for a in self.coeffs])

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise ValueError("negative power")
        result = IntPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        """Evaluate by Horner; x may be an int or a Fraction."""
        acc = 0 if isinstance(x, int) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly([e * c for e, c in enumerate(self.coeffs)][1:])

    def reversed(self) -> "IntPoly":
        """Coefficient reversal x^deg * p(1/x)."""
        return IntPoly(list(reversed(self.coeffs)))

    def shift(self, e: int) -> "IntPoly":
        """Multiply by x^e."""
        if self.is_zero():
            return self
        return IntPoly((0,) * e + self.coeffs)

    def divmod_monic(self, d: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Division with remainder by a monic divisor; exact over ZZ."""
        if not d.is_monic():
            raise ValueError("divisor must be monic")
        n = d.degree
        rem = list(self.coeffs)
        if len(rem) <= n:
            return IntPoly(), self
        quo = [0] * (len(rem) - n)
        dcs = d.coeffs
        for i in range(len(rem) - n - 1, -1, -1):
            q = rem[i + n]
            if q:
                quo[i] = q
                for j in range(n + 1):
                    rem[i + j] -= q * dcs[j]
        return IntPoly(quo), IntPoly(rem[:n])

    def to_rat(self) -> "RatPoly":
        return RatPoly([Fraction(c) for c in self.coeffs])

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)!r})"

    def __str__(self):
        return _format_terms(self.coeffs)


class RatPoly:
    """Dense polynomial over QQ, immutable, ascending Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = _trim([Fraction(c) for c in coeffs])
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("RatPoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, e: int) -> Fraction:
        if 0 <= e < len(self.coeffs):
            return self.coeffs[e]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, RatPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("RatPoly", self.coeffs))

    def __neg__(self) -> "RatPoly":
        return RatPoly([-c for c in self.coeffs])

    def __add__(self, other: "RatPoly") -> "RatPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPoly(out)

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        return self + (-other)

    def __mul__(self, other: "RatPoly") -> "RatPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RatPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return RatPoly(out)

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def numerators(self) -> list[int]:
        """Numerators of the coefficients (already in lowest terms)."""
        return [c.numerator for c in self.coeffs]

    def __repr__(self):
        return f"RatPoly({[str(c) for c in self.coeffs]!r})"

    def __str__(self):
        return _format_terms(self.coeffs)


# ---------------------------------------------------------------------------
# Resultants


def _bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix (Bareiss), destructive."""
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            row_k = m[k]
            mik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def resultant_sylvester(a: IntPoly, b: IntPoly) -> int:
    """Res(a, b) as the determinant of the Sylvester matrix."""
    if a.is_zero() or b.is_zero():
        raise ValueError("resultant of the zero polynomial is undefined")
    m, n = a.degree, b.degree
    if m == 0 and n == 0:
        return 1
    size = m + n
    ad = list(reversed(a.coeffs))
    bd = list(reversed(b.coeffs))
    rows: list[list[int]] = []
    for i in range(n):
        rows.append([0] * i + ad + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + bd + [0] * (size - n - 1 - i))
    return _bareiss_det(rows)


def resultant_monic(a: IntPoly, b: IntPoly) -> int:
    """Res(a, b) for monic a, as det of multiplication by (b mod a) on ZZ[x]/(a).

    Equal to the product of b over the roots of a, which is the Sylvester
    resultant since lc(a) = 1.  Far cheaper than the Sylvester determinant
    when deg b >> deg a.
    """
    if not a.is_monic():
        raise ValueError("first argument must be monic")
    if b.is_zero():
        raise ValueError("resultant of the zero polynomial is undefined")
    n = a.degree
    if n == 0:
        return 1
    _, r = b.divmod_monic(a)
    if r.is_zero():
        return 0
    # column j of the matrix is x^j * r reduced mod a
    col = list(r.coeffs) + [0] * (n - len(r.coeffs))
    cols = [list(col)]
    acs = a.coeffs
    for _ in range(n - 1):
        lead = col[n - 1]
        nxt = [0] + col[: n - 1]
        if lead:
            for j in range(n):
                nxt[j] -= lead * acs[j]
        col = nxt
        cols.append(list(col))
    rows = [[cols[j][i] for j in range(n)] for i in range(n)]
    return _bareiss_det(rows)


def resultant(a: IntPoly, b: IntPoly) -> int:
    """Res(a, b) with the Sylvester sign convention.

    Zero iff a and b share a root in an algebraic closure.  Dispatches to
    the quotient-ring determinant when a is monic.
    """
    if a.is_zero() or b.is_zero():
        raise ValueError("resultant of the zero polynomial is undefined")
    if a.is_monic():
        return resultant_monic(a, b)
    return resultant_sylvester(a, b)


# ---------------------------------------------------------------------------
# gcd / lcm helpers


def gcd_all(values: Iterable[int]) -> int:
    """Nonnegative gcd of a nonempty list."""
    vals = list(values)
    if not vals:
        raise ValueError("gcd of an empty list")
    return math.gcd(*vals)


def lcm_all(values: Iterable[int]) -> int:
    """Positive lcm of a nonempty list of nonzero integers."""
    vals = list(values)
    if not vals:
        raise ValueError("lcm of an empty list")
    if any(v == 0 for v in vals):
        raise ValueError("lcm with a zero entry")
    return math.lcm(*vals)


def gcd_of_numerators(values: Iterable[Fraction]) -> int:
    """gcd of |numerators|, zeros skipped; Fractions are in lowest terms.

    Raises AllZeroNumerators when every entry is zero, so callers can report
    "difference identically zero" instead of silently treating it as 0.
    """
    nums = [v.numerator for v in values if v != 0]
    if not nums:
        raise AllZeroNumerators("all numerators are zero")
    return math.gcd(*nums)
