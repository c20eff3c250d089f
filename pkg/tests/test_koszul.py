import itertools

import pytest

from gorcalc.errors import InhomogeneousElement
from gorcalc.gradedalg import context, enumerate_basis, presentation
from gorcalc.koszul import build_koszul, is_regular_sequence, koszul_homology, verify_koszul
from gorcalc.series import HilbertSeries, hilbert_series


def test_single_regular_element_homology():
    kx = presentation(3, [("x", 2)])
    cx = build_koszul(kx, [{(1,): 1}])
    verify_koszul(cx, 12)
    hom = koszul_homology(cx, 12)
    assert {(s, t): v for s, t, v in hom.entries} == {(0, 0): 1}


def test_two_variable_ranks_are_binomial():
    kxy = presentation(2, [("x", 1), ("y", 1)])
    cx = build_koszul(kxy, [{(1, 0): 1}, {(0, 1): 1}])
    assert [len(cx.stage_basis(s)) for s in range(3)] == [1, 2, 1]
    verify_koszul(cx, 10)
    hom = koszul_homology(cx, 10)
    assert {(s, t): v for s, t, v in hom.entries} == {(0, 0): 1}


def test_power_element_quotient_in_degree_zero(fp_mu2):
    p = 3
    cx = build_koszul(fp_mu2, [{(p,): 1}])
    hom = koszul_homology(cx, 4 * p)
    got_h0 = {t: v for s, t, v in hom.entries if s == 0}
    # H_0 = F_p[mu]/(mu^p), checked against the quotient-basis oracle
    quotient = presentation(p, [("mu2", 2)], [{(p,): 1}])
    gv = enumerate_basis(quotient, 4 * p)
    assert got_h0 == {n: gv.dim(n) for n in range(4 * p + 1) if gv.dim(n)}
    assert not any(s > 0 for s, t, v in hom.entries)


def test_zero_divisor_leaves_h1():
    ring = presentation(2, [("x", 1), ("y", 1)], [{(1, 1): 1}])
    cx = build_koszul(ring, [{(1, 0): 1}])
    hom = koszul_homology(cx, 10)
    h1 = {t: v for s, t, v in hom.entries if s == 1}
    assert h1, "multiplication by x on k[x,y]/(xy) must have kernel"
    # kernel is the y-multiples: y in degree 1 shifted by |x| = 1
    assert min(h1) == 2


def test_regular_sequence_detection():
    kxy = presentation(2, [("x", 1), ("y", 1)])
    rep = is_regular_sequence(kxy, [{(1, 0): 1}, {(0, 1): 1}], 10)
    assert rep.regular

    ring = presentation(2, [("x", 1), ("y", 1)], [{(1, 1): 1}])
    rep = is_regular_sequence(ring, [{(1, 0): 1}], 10)
    assert not rep.regular
    assert rep.witness["s"] == 1
    assert rep.witness["representative"]

    p = 3
    mu = presentation(p, [("mu2", 2)])
    rep = is_regular_sequence(mu, [{(p,): 1}], 12)
    assert rep.regular


def test_homology_independent_of_element_order():
    ring = presentation(3, [("x", 2), ("y", 4)])
    e1 = {(1, 0): 1}
    e2 = {(0, 1): 1}
    h12 = koszul_homology(build_koszul(ring, [e1, e2]), 16)
    h21 = koszul_homology(build_koszul(ring, [e2, e1]), 16)
    assert h12.entries == h21.entries


def test_h0_hilbert_series_for_regular_sequence():
    ring = presentation(3, [("x", 2), ("y", 4)])
    elements = [{(2, 0): 1}, {(0, 1): 1}]  # x^2, y: a regular sequence
    cx = build_koszul(ring, elements)
    bound = 20
    hom = koszul_homology(cx, bound)
    h0 = {t: v for s, t, v in hom.entries if s == 0}
    base, _, _ = hilbert_series(ring)
    expect = base
    for d in (4, 4):
        expect = expect.mul(HilbertSeries.make({0: 1, d: -1}, ()))
    exp = expect.expand(0, bound)
    assert h0 == {n: exp[n] for n in range(bound + 1) if exp[n]}


def test_inhomogeneous_element_rejected(fp_mu2):
    with pytest.raises(InhomogeneousElement):
        build_koszul(fp_mu2, [{(0,): 1, (1,): 1}])
    with pytest.raises(InhomogeneousElement):
        build_koszul(fp_mu2, [{(0,): 1}])  # degree-zero element
