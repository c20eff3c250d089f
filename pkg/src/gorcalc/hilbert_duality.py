"""Functional-equation checks on Hilbert series.

For a series p and Krull dimension r we solve p(1/t) = eps * t^e * p(t)
exactly, report paper_a = r - e, and whether eps matches (-1)^r.  The
almost-Gorenstein defect extracts q from
p(1/t) - (-1)^r t^(r-a) p(t) = (-1)^(r-1) (1+t) q(t)
and checks q's own functional equation.  The identification of paper_a
with any certificate shift is deliberately left to the caller; reports
expose both numbers.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import NotDivisible
from .series import HilbertSeries, lp_divide, lp_mul


@dataclass(frozen=True)
class FunctionalEquationReport:
    krull_dim: int
    epsilon: int
    exponent: int
    paper_a: int
    sign_matches_paper: bool

    def to_json(self) -> dict:
        return {
            "r": self.krull_dim,
            "epsilon": self.epsilon,
            "e": self.exponent,
            "paper_a": self.paper_a,
            "sign_matches_paper": self.sign_matches_paper,
        }


@dataclass(frozen=True)
class DefectReport:
    q: HilbertSeries
    q_is_laurent_polynomial: bool
    q_equation_holds: bool

    def to_json(self) -> dict:
        return {
            "q": self.q.to_json(),
            "q_pretty": self.q.pretty(),
            "q_is_laurent_polynomial": self.q_is_laurent_polynomial,
            "q_equation_holds": self.q_equation_holds,
        }


def functional_equation(
    series: HilbertSeries, r: int
) -> Optional[FunctionalEquationReport]:
    """Solve p(1/t) = eps*t^e*p(t); None when the ratio is not ±(a monomial)."""
    if series.is_zero():
        return None
    recip = series.reciprocal()
    na, nb, _ = recip.over_common(series)
    lo_a, lo_b = min(na), min(nb)
    e = lo_a - lo_b
    if nb[lo_b] == 0 or na[lo_a] % nb[lo_b]:
        return None
    eps = na[lo_a] // nb[lo_b]
    if eps not in (1, -1):
        return None
    if lp_mul(nb, {e: eps}) != na:
        return None
    return FunctionalEquationReport(
        krull_dim=r,
        epsilon=eps,
        exponent=e,
        paper_a=r - e,
        sign_matches_paper=(eps == (-1) ** r),
    )


def almost_gorenstein_defect(series: HilbertSeries, r: int, a: int) -> DefectReport:
    """Extract q from the defect of the Gorenstein functional equation.

    The defect is computed exactly as a rational function in canonical
    form; NotDivisible means (1+t) does not divide its numerator, i.e.
    the series is not almost-Gorenstein-shaped for this (r, a).
    """
    twisted = series.scale_monomial((-1) ** r, r - a)
    defect = series.reciprocal().sub(twisted)
    if defect.is_zero():
        return DefectReport(
            q=HilbertSeries.make({}, ()),
            q_is_laurent_polynomial=True,
            q_equation_holds=True,
        )
    quo = lp_divide(defect.num, {0: 1, 1: 1})
    if quo is None:
        raise NotDivisible(
            "defect numerator is not divisible by (1+t); "
            f"numerator {defect.pretty()}"
        )
    sign = (-1) ** (r - 1)
    q = HilbertSeries.make(lp_mul(quo, {0: sign}), defect.denominator)
    holds = q.reciprocal().eq_rational(q.scale_monomial(sign, a - r + 1))
    return DefectReport(
        q=q,
        q_is_laurent_polynomial=(len(q.denominator) == 0),
        q_equation_holds=holds,
    )
