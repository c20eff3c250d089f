import pytest

from gorcalc.gradedalg import presentation


@pytest.fixture
def fp_mu2():
    """F_p[mu2] for p=3: the polynomial algebra on one degree-2 generator."""
    return presentation(3, [("mu2", 2)])


@pytest.fixture
def ko_ring():
    """Lambda(l5, l7) (x) F_2[mu8]; exterior squares explicit at p=2."""
    return presentation(
        2,
        [("l5", 5, "odd"), ("l7", 7, "odd"), ("mu8", 8, "even")],
        [
            {(2, 0, 0): 1},
            {(0, 2, 0): 1},
        ],
    )


@pytest.fixture
def truncated_v(request):
    """F_p[v]/(v^(p-1)), |v| = 2, p = 5."""
    p = 5
    return presentation(p, [("v", 2)], [{(p - 1,): 1}])
