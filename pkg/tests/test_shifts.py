import random

import pytest

from gorcalc.errors import InconsistentLedger, LedgerFormatError
from gorcalc.shifts import (
    ShiftLedger,
    parse_ledger,
    print_ledger,
    solve,
    thh_descent_shift,
    thh_general_descent,
)


def test_wood_cofibre_relative_shift():
    ledger = parse_ledger(
        """
        node ku shift=-4
        node ko
        relative ko ku -2
        """
    )
    res = solve(ledger)
    assert res.assignments["ko"] == -6
    assert res.consistent


def test_trivial_cofibre():
    ledger = parse_ledger(
        """
        node S shift=0
        node Q shift=0
        cofibre S R Q
        """
    )
    assert solve(ledger).assignments["R"] == 0


def test_tmf_chain_p3():
    ledger = parse_ledger(
        """
        axiom tmf_0(2) -15 "coefficients Z_(3)[c2, c4]"
        relative tmf tmf_0(2) -8
        thh tmf thh-tmf p=3
        """
    )
    res = solve(ledger)
    assert res.assignments["tmf"] == -23
    assert res.assignments["thh-tmf"] == 20


def test_thh_descent_values():
    assert thh_descent_shift(0) == -3
    assert thh_descent_shift(-1) == -2
    for n in (1, 2, 3):
        assert thh_descent_shift(-n - 3) == n


def test_general_descent_values():
    for p in (3, 5):
        assert thh_general_descent(-2, 2 * p - 1) == 2 * p - 3
    assert thh_general_descent(-2, 3) == 1
    assert thh_general_descent(1, 2) == 3


def test_descent_identity():
    for a in range(-30, 31):
        assert thh_descent_shift(a) == thh_general_descent(-3, -a)


def test_conflict_is_reported_with_both_paths():
    ledger = parse_ledger(
        """
        node X shift=1
        axiom X 2 "disagrees"
        """
    )
    res = solve(ledger)
    assert not res.consistent
    assert res.conflicts[0]["node"] == "X"
    values = {v["value"] for v in res.conflicts[0]["values"]}
    assert values == {1, 2}
    with pytest.raises(InconsistentLedger):
        solve(ledger, strict=True)


def test_solver_is_order_independent():
    base = parse_ledger(
        """
        node fp shift=0
        thh fp thh-fp p=3
        cofibre s1 thh-z thh-fp
        axiom s1 1 "circle chains"
        relative ko ku -2
        node ku shift=-4
        thh ko thh-ko p=2
        cofibre s2 thh-ko2 thh-ku
        axiom s2 2 "sphere chains"
        node thh-ku shift=1
        """
    )
    expected = solve(base)
    rng = random.Random(11)
    for _ in range(6):
        cof = list(base.cofibres)
        rel = list(base.relatives)
        th = list(base.thh)
        ax = list(base.axioms)
        gor = list(base.gorenstein)
        for lst in (cof, rel, th, ax, gor):
            rng.shuffle(lst)
        shuffled = ShiftLedger(
            nodes=base.nodes,
            gorenstein=tuple(gor),
            cofibres=tuple(cof),
            relatives=tuple(rel),
            thh=tuple(th),
            axioms=tuple(ax),
        )
        res = solve(shuffled)
        assert res.assignments == expected.assignments
        assert {c["node"] for c in res.conflicts} == {c["node"] for c in expected.conflicts}


def test_double_derivation_consistency():
    # thh-ko reachable two ways: descent from ko and ascent over the sphere
    ledger = parse_ledger(
        """
        node ku shift=-4
        relative ko ku -2
        thh ko thh-ko p=2
        node thh-ku shift=1
        axiom a-sphere-2 2 "chains on S^2"
        cofibre a-sphere-2 thh-ko thh-ku
        """
    )
    res = solve(ledger)
    assert res.consistent
    assert res.assignments["thh-ko"] == 3


def test_unresolved_nodes_are_listed():
    ledger = parse_ledger("node mystery\ncofibre a b mystery\n")
    res = solve(ledger)
    assert set(res.unresolved) == {"a", "b", "mystery"}


def test_ledger_roundtrip():
    text = (
        "node ku shift=-4\n"
        "node ko\n"
        "cofibre a-sphere-2 thh-ko thh-ku\n"
        "relative ko ku -2\n"
        "thh ko thh-ko p=2\n"
        'axiom a-sphere-2 2 "chains on S^2"\n'
    )
    ledger = parse_ledger(text)
    assert print_ledger(ledger) == text
    assert parse_ledger(print_ledger(ledger)) == ledger


def test_bad_ledger_lines_raise():
    with pytest.raises(LedgerFormatError):
        parse_ledger("frobnicate x y\n")
    with pytest.raises(LedgerFormatError):
        parse_ledger("thh a b\n")


def test_proof_markdown_contains_rows():
    ledger = parse_ledger("node ku shift=-4\nrelative ko ku -2\n")
    md = solve(ledger).proof_markdown()
    assert "| ko | -6 |" in md
