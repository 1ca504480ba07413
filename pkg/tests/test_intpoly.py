"""Exact arithmetic substrate: polynomials, resultants, gcd helpers."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g3surj.intpoly import (
    AllZeroNumerators,
    IntPoly,
    RatPoly,
    gcd_all,
    gcd_of_numerators,
    lcm_all,
    resultant,
    resultant_monic,
    resultant_sylvester,
)

# -- independent oracles ----------------------------------------------------


def naive_mul(a, b):
    """Schoolbook product on raw coefficient dicts."""
    out = {}
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] = out.get(i + j, 0) + ai * bj
    deg = max(out) if out else -1
    result = [out.get(k, 0) for k in range(deg + 1)]
    while result and result[-1] == 0:
        result.pop()
    return result


def fraction_det(rows):
    """Plain Gaussian elimination determinant over QQ."""
    m = [[Fraction(x) for x in row] for row in rows]
    n = len(m)
    det = Fraction(1)
    for k in range(n):
        pivot = None
        for i in range(k, n):
            if m[i][k] != 0:
                pivot = i
                break
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            det = -det
        det *= m[k][k]
        inv = 1 / m[k][k]
        for i in range(k + 1, n):
            factor = m[i][k] * inv
            if factor:
                m[i] = [x - factor * y for x, y in zip(m[i], m[k])]
    return det


def sylvester_rows(a, b):
    m, n = a.degree, b.degree
    ad = list(reversed(a.coeffs))
    bd = list(reversed(b.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + ad + [0] * (m + n - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + bd + [0] * (m + n - n - 1 - i))
    return rows


coeffs_small = st.lists(st.integers(-9, 9), min_size=0, max_size=11)
nonzero_poly = coeffs_small.map(IntPoly).filter(lambda p: not p.is_zero())


# -- polynomial core --------------------------------------------------------


def test_mul_simple():
    assert IntPoly([1, 1]) * IntPoly([-1, 1]) == IntPoly([-1, 0, 1])


def test_add_identity():
    a = IntPoly([3, 0, -2, 7])
    assert a + IntPoly() == a


def test_eval():
    assert IntPoly([1, 0, 0, 0, 0, 0, 1])(1) == 2
    assert IntPoly([1, 2])(Fraction(1, 2)) == 2


def test_trailing_zeros_trimmed():
    assert IntPoly([1, 2, 0, 0]).degree == 1
    assert IntPoly([0, 0]).is_zero()
    assert IntPoly().degree == -1


def test_degree_of_product():
    a = IntPoly([1, 2, 3])
    b = IntPoly([5, 0, 0, 7])
    assert (a * b).degree == a.degree + b.degree


@given(coeffs_small, coeffs_small)
def test_mul_matches_schoolbook(ac, bc):
    got = IntPoly(ac) * IntPoly(bc)
    assert list(got.coeffs) == naive_mul(ac, bc)


@given(coeffs_small, coeffs_small)
def test_add_sub_roundtrip(ac, bc):
    a, b = IntPoly(ac), IntPoly(bc)
    assert (a + b) - b == a


def test_divmod_monic():
    a = IntPoly([1, 2, 3, 4, 5])
    d = IntPoly([7, -1, 1])
    q, r = a.divmod_monic(d)
    assert q * d + r == a
    assert r.degree < d.degree
    with pytest.raises(ValueError):
        a.divmod_monic(IntPoly([1, 2]))


def test_derivative_and_reverse():
    p = IntPoly([3, 0, 5])
    assert p.derivative() == IntPoly([0, 10])
    assert p.reversed() == IntPoly([5, 0, 3])


def test_ratpoly_arithmetic():
    a = RatPoly([Fraction(1, 2), 1])
    b = RatPoly([Fraction(1, 2), -1])
    assert a * b == RatPoly([Fraction(1, 4), 0, -1])
    assert (a - a).is_zero()


def test_rational_canonical():
    # Fraction keeps lowest terms with positive denominator
    q = Fraction(-6, -4)
    assert (q.numerator, q.denominator) == (3, 2)
    assert math.gcd(q.numerator, q.denominator) == 1
    assert Fraction(4, -6).denominator > 0


def test_str_rendering():
    assert str(IntPoly([8, 8, 6, 4, 3, 2, 1])) == "x^6 + 2*x^5 + 3*x^4 + 4*x^3 + 6*x^2 + 8*x + 8"
    assert str(IntPoly([-1, 0, 1])) == "x^2 - 1"
    assert str(IntPoly()) == "0"


# -- resultants --------------------------------------------------------------


def test_resultant_linear():
    assert resultant(IntPoly([-1, 1]), IntPoly([1, 1])) == 2


def test_resultant_self_is_zero():
    f = IntPoly([1, 3, 0, 2])
    assert resultant(f, f) == 0


def test_resultant_sylvester_oracle_value():
    a = IntPoly([1, 0, 1])
    b = IntPoly([-2, 0, 1])
    expected = fraction_det(sylvester_rows(a, b))
    assert expected == 9
    assert resultant(a, b) == 9
    assert resultant_sylvester(a, b) == 9


def test_resultant_rejects_zero():
    with pytest.raises(ValueError):
        resultant(IntPoly(), IntPoly([1]))
    with pytest.raises(ValueError):
        resultant(IntPoly([1]), IntPoly())


def test_resultant_constant_cases():
    assert resultant(IntPoly([1]), IntPoly([5, 1])) == 1
    assert resultant(IntPoly([3]), IntPoly([5, 1])) == 3
    # monic a, constant b: c^(deg a)
    assert resultant(IntPoly([0, 0, 1]), IntPoly([7])) == 49


@given(nonzero_poly, nonzero_poly)
@settings(max_examples=100)
def test_resultant_swap_sign(a, b):
    sign = (-1) ** (a.degree * b.degree)
    assert resultant_sylvester(a, b) == sign * resultant_sylvester(b, a)


@given(
    st.lists(st.integers(-9, 9), min_size=0, max_size=8),
    st.lists(st.integers(-9, 9), min_size=1, max_size=31),
)
@settings(max_examples=100)
def test_resultant_two_routes_agree(ac, bc):
    a = IntPoly(ac + [1])  # force monic, degree <= 8
    b = IntPoly(bc)
    if b.is_zero():
        b = IntPoly([1])
    assert resultant_monic(a, b) == resultant_sylvester(a, b)


@given(nonzero_poly, nonzero_poly)
@settings(max_examples=60)
def test_resultant_sylvester_matches_fraction_det(a, b):
    if a.degree == 0 and b.degree == 0:
        return
    assert resultant_sylvester(a, b) == fraction_det(sylvester_rows(a, b))


# -- gcd / lcm ---------------------------------------------------------------


def test_gcd_all():
    assert gcd_all([64, 640, 3136]) == 64
    assert gcd_all([14, 6900, 83202]) == 2
    assert gcd_all([0, 0]) == 0


def test_lcm_all():
    assert lcm_all([16, 4194304]) == 4194304
    with pytest.raises(ValueError):
        lcm_all([4, 0])


def test_gcd_of_numerators():
    assert gcd_of_numerators([Fraction(3, 2), Fraction(9, 4)]) == 3
    assert gcd_of_numerators([Fraction(0), Fraction(5, 7)]) == 5
    assert gcd_of_numerators([Fraction(14, 9), Fraction(28, 3), Fraction(7)]) == 7
    with pytest.raises(AllZeroNumerators):
        gcd_of_numerators([Fraction(0), Fraction(0)])
