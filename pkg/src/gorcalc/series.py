"""Hilbert series as exact rational functions.

A series is an integer Laurent polynomial numerator over a multiset of
positive integers {d_i} standing for the denominator ∏(1 - t^d_i).  All
arithmetic is exact over Z; canonical form cancels every denominator
factor that divides the numerator.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import NotArtinian, NotTensorForm, ReconstructionFailed
from .gradedalg import AlgebraPresentation, context, tensor_form, top_nonzero_degree

Laurent = Dict[int, int]


def lp_add(a: Laurent, b: Laurent, scale: int = 1) -> Laurent:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + scale * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def lp_mul(a: Laurent, b: Laurent) -> Laurent:
    out: Laurent = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def lp_shift(a: Laurent, k: int) -> Laurent:
    return {e + k: c for e, c in a.items()}


def lp_reverse(a: Laurent) -> Laurent:
    """Substitute t -> 1/t."""
    return {-e: c for e, c in a.items()}


def lp_divide(a: Laurent, b: Laurent) -> Optional[Laurent]:
    """Exact Laurent division a/b; None if the remainder is nonzero."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return {}
    rem = dict(a)
    blo = min(b)
    bhi = max(b)
    blead = b[blo]
    ahi = max(a)
    out: Laurent = {}
    while rem:
        lo = min(rem)
        if lo - blo + bhi > ahi:
            return None  # quotient degree would exceed deg(a) - deg(b)
        q, r = divmod(rem[lo], blead)
        if r:
            return None
        e = lo - blo
        out[e] = q
        rem = lp_add(rem, lp_shift(b, e), scale=-q)
    return out


def one_minus_td(d: int) -> Laurent:
    return {0: 1, d: -1}


@dataclass(frozen=True)
class HilbertSeries:
    numerator: Tuple[Tuple[int, int], ...]
    denominator: Tuple[int, ...]

    @staticmethod
    def make(num: Laurent, den: Iterable[int]) -> "HilbertSeries":
        return HilbertSeries(
            tuple(sorted((e, c) for e, c in num.items() if c)),
            tuple(sorted(den)),
        ).canonical()

    @property
    def num(self) -> Laurent:
        return {e: c for e, c in self.numerator}

    def canonical(self) -> "HilbertSeries":
        num = self.num
        den = list(self.denominator)
        if not num:
            return HilbertSeries((), ())
        changed = True
        while changed:
            changed = False
            for i, d in enumerate(den):
                q = lp_divide(num, one_minus_td(d))
                if q is not None:
                    num = q
                    den.pop(i)
                    changed = True
                    break
        return HilbertSeries(
            tuple(sorted(num.items())), tuple(sorted(den))
        )

    def is_zero(self) -> bool:
        return not self.numerator

    @property
    def krull_dim(self) -> int:
        """Pole order at t=1 of the canonical form."""
        return len(self.canonical().denominator)

    def expand(self, lo: int, hi: int) -> Dict[int, int]:
        """Coefficients of the formal expansion on [lo, hi]."""
        coeffs: Laurent = self.num
        shift = min(coeffs) if coeffs else 0
        work = [0] * (hi - shift + 1)
        for e, c in coeffs.items():
            if e - shift <= hi - shift:
                work[e - shift] += c
        for d in self.denominator:
            # multiply by 1/(1-t^d): prefix sums with stride d
            for i in range(d, len(work)):
                work[i] += work[i - d]
        out: Dict[int, int] = {}
        for n in range(lo, hi + 1):
            idx = n - shift
            out[n] = work[idx] if 0 <= idx < len(work) else 0
        return out

    def coefficient(self, n: int) -> int:
        return self.expand(n, n)[n]

    def mul(self, other: "HilbertSeries") -> "HilbertSeries":
        return HilbertSeries.make(
            lp_mul(self.num, other.num), self.denominator + other.denominator
        )

    def scale_monomial(self, coeff: int, exp: int) -> "HilbertSeries":
        return HilbertSeries.make(lp_mul(self.num, {exp: coeff}), self.denominator)

    def over_common(self, other: "HilbertSeries") -> Tuple[Laurent, Laurent, Tuple[int, ...]]:
        """Both numerators over the multiset-lcm denominator."""
        from collections import Counter

        ca, cb = Counter(self.denominator), Counter(other.denominator)
        lcm = ca | cb
        na, nb = self.num, other.num
        for d, k in sorted((lcm - ca).items()):
            for _ in range(k):
                na = lp_mul(na, one_minus_td(d))
        for d, k in sorted((lcm - cb).items()):
            for _ in range(k):
                nb = lp_mul(nb, one_minus_td(d))
        den = tuple(sorted(lcm.elements()))
        return na, nb, den

    def sub(self, other: "HilbertSeries") -> "HilbertSeries":
        na, nb, den = self.over_common(other)
        return HilbertSeries.make(lp_add(na, nb, scale=-1), den)

    def eq_rational(self, other: "HilbertSeries") -> bool:
        return self.sub(other).is_zero()

    def reciprocal(self) -> "HilbertSeries":
        """Exact substitution t -> 1/t, renormalized to the same denominator family."""
        r = len(self.denominator)
        total = sum(self.denominator)
        num = lp_mul(lp_reverse(self.num), {total: (-1) ** r})
        return HilbertSeries.make(num, self.denominator)

    def to_json(self) -> dict:
        return {
            "numerator": [[e, c] for e, c in self.numerator],
            "denominator": list(self.denominator),
        }

    @staticmethod
    def from_json(d: dict) -> "HilbertSeries":
        return HilbertSeries.make(
            {int(e): int(c) for e, c in d["numerator"]},
            [int(x) for x in d["denominator"]],
        )

    def pretty(self) -> str:
        if not self.numerator:
            return "0"
        parts = []
        for e, c in self.numerator:
            if e == 0:
                parts.append(str(c))
            else:
                mon = "t" if e == 1 else f"t^{e}"
                if c == 1:
                    parts.append(mon)
                elif c == -1:
                    parts.append(f"-{mon}")
                else:
                    parts.append(f"{c}*{mon}")
        num = " + ".join(parts).replace("+ -", "- ")
        if not self.denominator:
            return num
        den = " * ".join(f"(1 - t^{d})" for d in self.denominator)
        return f"({num}) / ({den})"


def series_one() -> HilbertSeries:
    return HilbertSeries.make({0: 1}, ())


def hilbert_series(
    pres: AlgebraPresentation, degree_bound: int = 32
) -> Tuple[HilbertSeries, str, Optional[int]]:
    """Hilbert series of a presented algebra (computed on the reflected grading).

    Tensor presentations get the exact closed form; anything else is
    rationally reconstructed against the polynomial-generator denominator
    guess and cross-checked against enumerated dimensions up to
    degree_bound.  Returns (series, method, reconstruction_window).
    """
    ctx = context(pres)
    try:
        form = tensor_form(pres)
    except NotTensorForm:
        form = None
    if form is not None:
        num: Laurent = {0: 1}
        for e in form.exterior_degrees(pres):
            num = lp_mul(num, {0: 1, e: 1})
        if form.block_pres is not None:
            try:
                top = top_nonzero_degree(form.block_pres)
            except NotArtinian:
                top = None
            if top is not None:
                bctx = context(form.block_pres)
                h = {n: bctx.dim(n) for n in range(top + 1) if bctx.dim(n)}
                num = lp_mul(num, h)
                return (
                    HilbertSeries.make(num, form.poly_degrees(pres)),
                    "closed_form",
                    None,
                )
        else:
            return (
                HilbertSeries.make(num, form.poly_degrees(pres)),
                "closed_form",
                None,
            )
    # reconstruction against the polynomial-type denominator guess
    guess = []
    for i, g in enumerate(pres.generators):
        if pres.field.p != 2 and pres.parity_bit(i):
            continue
        if any(len(r) == 1 and r[0][0][i] == 2 and sum(r[0][0]) == 2 for r in pres.relations):
            continue
        guess.append(pres.abs_degree(i))
    dims = [ctx.dim(n) for n in range(degree_bound + 1)]
    return reconstruct_rational(dims, guess, degree_bound), "reconstruction", degree_bound


def reconstruct_rational(
    dims: Sequence[int], denominator_guess: Sequence[int], window: int
) -> HilbertSeries:
    """Fit dims as a rational function over ∏(1-t^d) for the guessed d's.

    The product (Σ dims t^n)·∏(1-t^d) must vanish on a trailing stretch of
    the window (length max(d)+4) or the fit is rejected outright.
    """
    num: Laurent = {n: c for n, c in enumerate(dims) if c}
    for d in denominator_guess:
        num = lp_mul(num, one_minus_td(d))
        num = {e: c for e, c in num.items() if e <= window}
    margin = (max(denominator_guess) if denominator_guess else 1) + 4
    if window <= margin:
        raise ReconstructionFailed(
            f"window {window} too small for validation margin {margin}"
        )
    tail = [e for e in num if e > window - margin]
    if tail:
        raise ReconstructionFailed(
            f"dimension data is not rational over {sorted(denominator_guess)}: "
            f"residual terms at degrees {sorted(tail)[:4]} inside the validation margin"
        )
    return HilbertSeries.make(num, denominator_guess)
