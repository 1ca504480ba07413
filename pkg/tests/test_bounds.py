"""The divisor-bound engine: B1, resultant bounds, cubic splittings, verdicts."""

import math
import random
from fractions import Fraction

import pytest

from g3surj.bounds import (
    CaseThreeTrace,
    HypothesisViolation,
    MethodFailure,
    PrimeDatum,
    ToricWitness,
    b1,
    b2,
    bound,
    case_three_trace,
    k_p,
    k_p_prime,
    r_mp,
    r_mt,
    verdict,
)
from g3surj.curve import WeilPolynomial
from g3surj.hecke import FixtureDirectory, HeckeTable, weil_transform
from g3surj.intpoly import IntPoly, resultant_sylvester


@pytest.fixture(scope="module")
def data(reference_weils):
    return [PrimeDatum.from_weil(reference_weils[p]) for p in (2, 5, 7)]


# -- B1 -------------------------------------------------------------------------


def test_b1_reference(data):
    assert [d.order for d in data] == [32, 128, 448]
    assert b1(data) == 64


def test_b1_single():
    w = WeilPolynomial(p=2, alpha=2, beta=3, gamma=4)
    assert b1([PrimeDatum.from_weil(w)]) == 2 * 32


def test_b1_random_matches_direct_gcd():
    rng = random.Random(5)
    for _ in range(20):
        ws = [WeilPolynomial(p=p, alpha=0, beta=rng.randrange(-2, 3), gamma=0)
              for p in (2, 3, 5)]
        ws = [w for w in ws if w.order() > 0]
        datums = [PrimeDatum.from_weil(w) for w in ws]
        assert b1(datums) == math.gcd(*[w.p * w.order() for w in ws])


def test_prime_datum_order_invariant():
    w = WeilPolynomial(p=2, alpha=2, beta=3, gamma=4)
    with pytest.raises(ValueError):
        PrimeDatum(p=2, weil=w, order=31)


# -- resultant bounds -------------------------------------------------------------


def test_r_mp_matches_sylvester_oracle(data):
    table = HeckeTable(level=11, dim=1, entries={p: IntPoly([-1, 1]) for p in (2, 5, 7)})
    for d in data:
        expected = resultant_sylvester(d.weil.poly(), weil_transform(IntPoly([-1, 1]), d.p))
        assert r_mp(table, d.weil) == expected


def test_r_mt_zero_dim_table(data):
    assert r_mt(HeckeTable(level=1, dim=0, entries={}), data) == 1


def test_r_mt_reference_values(data, hecke_dir):
    provider = FixtureDirectory(hecke_dir)
    assert r_mt(provider.load(2969), data) == 16
    assert r_mt(provider.load(8907), data) == 4194304


def test_b2_assembly():
    assert b2(64, [16, 4194304]) == 4194304
    assert b2(64, []) == 64
    with pytest.raises(MethodFailure):
        b2(64, [16, 0])


# -- cubic splittings --------------------------------------------------------------


def test_k_p_reference(reference_weils):
    assert k_p(reference_weils[2]).K == 14
    assert k_p(reference_weils[5]).K == 6900
    assert k_p(reference_weils[7]).K == 83202


def test_k_p_prime_reference(reference_weils):
    assert k_p_prime(reference_weils[2]).K == 154490
    assert k_p_prime(reference_weils[5]).K == 15531373270380
    assert k_p_prime(reference_weils[7]).K == 10908656905042386


def test_k_p_trace_details(reference_weils):
    sb = k_p(reference_weils[2])
    assert sb.delta == Fraction(-3) and sb.epsilon == Fraction(-1)
    assert sb.k == 7
    diff = reference_weils[2].poly().to_rat() - sb.g
    assert diff[4] == 7 and diff[3] == 21 and diff[2] == 14


def test_case_three_trace(reference_weils):
    t = case_three_trace(reference_weils[2])
    assert isinstance(t, CaseThreeTrace)
    assert t.case1.K == 14 and t.case2.K == 154490
    assert t.case1.epsilon == t.case1.delta + reference_weils[2].alpha
    assert t.case2.epsilon == 2 * t.case2.delta + reference_weils[2].alpha


def test_k_p_hypothesis_violation():
    w = WeilPolynomial(p=2, alpha=3, beta=5, gamma=1)  # p + 1 = alpha
    with pytest.raises(HypothesisViolation):
        k_p(w)
    # the primed hypothesis p^3 + 1 = p*alpha has no integer solution
    k_p_prime(w)


def test_k_p_fails_on_split_weil_polynomial():
    # build P := g from integer (a, b); the elimination must then find
    # P - g identically zero and hard-fail, confirming b was eliminated
    # correctly
    p, a, b = 2, 1, 0
    w = WeilPolynomial(p=p, alpha=a - b, beta=b - a * b - p * a,
                       gamma=-p - b * b - p * a * a - p * p)
    with pytest.raises(AssertionError):
        k_p(w)


def test_k_p_prime_fails_on_split_weil_polynomial():
    p, a, b = 2, 1, 1
    w = WeilPolynomial(
        p=p,
        alpha=a - p * b,
        beta=b - p * a * b - p**2 * a,
        gamma=-1 - p * b**2 - p**2 * a**2 - p**3,
    )
    with pytest.raises(AssertionError):
        k_p_prime(w)


def test_split_identities_hold_for_random_weils():
    rng = random.Random(11)
    count = 0
    while count < 25:
        p = rng.choice([2, 3, 5, 7, 11, 13])
        alpha = rng.randrange(-int(6 * p**0.5), int(6 * p**0.5) + 1)
        beta = rng.randrange(-15 * p, 15 * p + 1)
        gamma = rng.randrange(-int(20 * p**1.5), int(20 * p**1.5) + 1)
        w = WeilPolynomial(p=p, alpha=alpha, beta=beta, gamma=gamma)
        if w.order() <= 0 or p + 1 == alpha:
            continue
        count += 1
        try:
            sb = k_p(w)
        except AssertionError:
            continue  # accidentally split: the gcd step has nothing to divide
        diff = w.poly().to_rat() - sb.g
        assert diff[5] == 0 and diff[1] == 0 and diff[0] == 0
        assert diff[3] == (p + 1) * diff[4]
        assert diff[2] == p * diff[4]
        sb2 = k_p_prime(w)
        diff2 = w.poly().to_rat() - sb2.g
        assert p * diff2[3] == (p**3 + 1) * diff2[4]
        assert diff2[2] == p * diff2[4]


# -- bound assembly ------------------------------------------------------------


@pytest.fixture(scope="module")
def reference_report(data, hecke_dir):
    provider = FixtureDirectory(hecke_dir)
    tables = [provider.load(m) for m in (1, 3, 2969, 8907)]
    witnesses = [ToricWitness(q=3, phi_order=1, toric_dim_one=True),
                 ToricWitness(q=2969, phi_order=1, toric_dim_one=True)]
    return bound(data, tables=tables, witnesses=witnesses,
                 semistable="conductor 8907 is squarefree")


def test_bound_reference_values(reference_report):
    rep = reference_report
    assert rep.b1 == 64
    assert rep.b2_prime == 4194304
    assert rep.b2 == 4194304
    assert rep.b3 == 2 and rep.b4 == 2
    assert rep.b == 4194304 == 2**22
    assert not rep.diagnostics
    assert any(a.startswith("semistable") for a in rep.assumptions)


def test_bound_report_serialization(reference_report):
    d = reference_report.to_dict()
    assert d["b"] == "4194304"
    assert d["b3"] == "2" and d["b4"] == "2"
    levels = {lv["level"]: lv for lv in d["levels"]}
    assert levels[2969]["r_mt"] == "16"
    assert levels[8907]["dim"] == 495
    assert d["traces"][0]["case1"]["K"] == "14"


def test_bound_zero_resultant_diagnostic():
    # P = (x^2 + 2x + 2)(x^4 + 4) has the Weil shape with p = 2 and is
    # divisible by the transform of x + 2: the elliptic-factor failure mode
    w = WeilPolynomial(p=2, alpha=2, beta=2, gamma=0)
    datum = PrimeDatum.from_weil(w)
    table = HeckeTable(level=11, dim=1, entries={2: IntPoly([2, 1])})
    assert r_mp(table, w) == 0
    rep = bound([datum], tables=[table], witnesses=[], semistable="test")
    assert rep.b2 is None and rep.b is None
    assert any("R(11,T) = 0" in diag for diag in rep.diagnostics)
    v = verdict(7, rep, [ToricWitness(q=3, phi_order=1, toric_dim_one=True)])
    assert not v.surjective and "method failure" in v.reason


def test_bound_zero_single_resultant_is_note_not_failure(reference_weils):
    # one vanishing R(M,p) with another prime saving the level
    w2 = WeilPolynomial(p=2, alpha=2, beta=2, gamma=0)
    data = [PrimeDatum.from_weil(w2), PrimeDatum.from_weil(reference_weils[5])]
    table = HeckeTable(level=11, dim=1,
                       entries={2: IntPoly([2, 1]), 5: IntPoly([2, 1])})
    rep = bound(data, tables=[table], witnesses=[], semistable="test")
    assert rep.b2 is not None
    assert any("survives" in n for n in rep.notes)
    assert not rep.diagnostics


# -- verdicts -------------------------------------------------------------------


def test_verdict_reference(reference_report):
    for ell in (5, 7, 11, 13, 97):
        v = verdict(ell, reference_report)
        assert v.surjective, (ell, v.reason)
    assert not verdict(2, reference_report).surjective
    v3 = verdict(3, reference_report)
    assert not v3.surjective and "small-prime" in v3.reason


def test_verdict_no_witness(reference_report):
    v = verdict(7, reference_report, witnesses=[])
    assert not v.surjective and "witness" in v.reason


def test_verdict_condition_d(reference_report):
    witnesses = [ToricWitness(q=7, phi_order=1, toric_dim_one=True)]
    v = verdict(7, reference_report, witnesses=witnesses)
    assert not v.surjective and "#Phi_q" in v.reason


def test_verdict_needs_semistability(data):
    rep = bound(data, tables=[], witnesses=[ToricWitness(3, 1, True)], semistable=None)
    v = verdict(7, rep)
    assert not v.surjective and "semistability" in v.reason


def test_verdict_ell_divides_b(reference_report):
    # B(T) = 2^22, so ell = 2 is already excluded by condition (c); fake a
    # larger ell dividing B by checking divisibility logic directly on 2:
    # instead use witnesses to pass and pick ell | B3 impossible; craft ell
    # dividing b via a custom report with b3 = 2 and ell = 5 not dividing:
    assert verdict(5, reference_report).surjective
    # and a divisible case through a synthetic K value
    w = WeilPolynomial(p=2, alpha=2, beta=3, gamma=4)
    rep = bound([PrimeDatum.from_weil(w)], tables=[], witnesses=[ToricWitness(3, 1, True)],
                semistable="test")
    # B = lcm(B1, K_2, K'_2) components: B1 = 64, K = 14, K' = 154490
    v = verdict(7, rep)
    assert not v.surjective and "divides B(T)" in v.reason  # 7 | 14


def test_verdict_gcd_only_shrinks(reference_weils):
    # adding a prime to T can only shrink the divisor set of B3 and B4
    full = [PrimeDatum.from_weil(reference_weils[p]) for p in (2, 5, 7)]
    small = full[:1]
    witnesses = [ToricWitness(q=3, phi_order=1, toric_dim_one=True)]
    rep_small = bound(small, tables=[], witnesses=witnesses, semistable="test")
    rep_full = bound(full, tables=[], witnesses=witnesses, semistable="test")
    assert rep_full.b3 % 1 == 0 and rep_small.b3 % rep_full.b3 == 0
    assert rep_small.b4 % rep_full.b4 == 0
