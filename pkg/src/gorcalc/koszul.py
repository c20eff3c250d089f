"""Koszul complexes over a presented algebra and regular-sequence detection.

K(R; x_1,...,x_n) is realized as the tensor of two-term complexes taken
left to right in the given element order.  Chain stage s is free of rank
C(n, s) on basis e_S (S a size-s subset), internally shifted by the sum
of the element degrees over S.  Signs follow the tensor convention; only
dimension-level data is exposed, which is independent of these choices.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import InhomogeneousElement, InhomogeneousOperand
from .gradedalg import AlgebraPresentation, Element, FrozenPoly, context, freeze_poly
from .linalg import Vec, rank
from .resolution import BigradedDimensions

Subset = Tuple[int, ...]


@dataclass(frozen=True)
class KoszulComplex:
    base: AlgebraPresentation
    elements: Tuple[FrozenPoly, ...]
    element_degrees: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.elements)

    def stage_basis(self, s: int) -> List[Subset]:
        return [tuple(c) for c in itertools.combinations(range(self.length), s)]

    def shift(self, subset: Subset) -> int:
        return sum(self.element_degrees[i] for i in subset)

    def sign(self, j: int, subset: Subset) -> int:
        # e_j's differential crosses the earlier tensor factors in subset
        exp = sum(1 + self.element_degrees[l] for l in subset if l < j)
        return -1 if exp % 2 else 1

    def differential_component(self, subset: Subset, j: int) -> Element:
        """Coefficient of e_{subset - j} in d(e_subset)."""
        elt = dict(self.elements[j])
        s = self.sign(j, subset) % self.base.field.p
        return {m: (c * s) % self.base.field.p for m, c in elt.items()}


def build_koszul(pres: AlgebraPresentation, elements: List[Element]) -> KoszulComplex:
    ctx = context(pres)
    frozen = []
    degrees = []
    for elt in elements:
        reduced = ctx.reduce_element(elt)
        try:
            deg = ctx.element_degree(reduced)
        except InhomogeneousOperand as exc:
            raise InhomogeneousElement(str(exc)) from exc
        if deg is None or deg == 0:
            raise InhomogeneousElement(
                "Koszul elements must be homogeneous of nonzero degree"
            )
        frozen.append(freeze_poly(reduced))
        degrees.append(deg)
    return KoszulComplex(pres, tuple(frozen), tuple(degrees))


def _stage_matrix(cx: KoszulComplex, s: int, t: int) -> Tuple[List[Vec], int, int]:
    """Rows of d_s: (K_s)_t -> (K_{s-1})_t in coordinates; (rows, dim_dom, dim_cod)."""
    ctx = context(cx.base)
    dom = [
        (S, m)
        for S in cx.stage_basis(s)
        for m in ctx.basis(t - cx.shift(S))
    ]
    cod = [
        (S, m)
        for S in cx.stage_basis(s - 1)
        for m in ctx.basis(t - cx.shift(S))
    ]
    cod_index = {b: k for k, b in enumerate(cod)}
    rows: List[Vec] = []
    for (S, m) in dom:
        row: Vec = {}
        for j in S:
            rest = tuple(i for i in S if i != j)
            comp = cx.differential_component(S, j)
            prod = ctx.mul({m: 1}, comp)
            for mm, c in prod.items():
                k = cod_index[(rest, mm)]
                v = (row.get(k, 0) + c) % ctx.p
                if v:
                    row[k] = v
                else:
                    row.pop(k, None)
        rows.append(row)
    return rows, len(dom), len(cod)


def verify_koszul(cx: KoszulComplex, degree_bound: int) -> None:
    """Assert d∘d = 0 degreewise within the window."""
    ctx = context(cx.base)
    for s in range(2, cx.length + 1):
        for S in cx.stage_basis(s):
            acc: Dict[Subset, Element] = {}
            for j in S:
                rest = tuple(i for i in S if i != j)
                outer = cx.differential_component(S, j)
                for l in rest:
                    rest2 = tuple(i for i in rest if i != l)
                    inner = cx.differential_component(rest, l)
                    prod = ctx.mul(outer, inner)
                    tgt = acc.setdefault(rest2, {})
                    for m, c in prod.items():
                        v = (tgt.get(m, 0) + c) % ctx.p
                        if v:
                            tgt[m] = v
                        else:
                            tgt.pop(m, None)
            for rest2, elt in acc.items():
                if elt:
                    raise AssertionError(f"d∘d != 0 at {S} -> {rest2}")


def koszul_homology(cx: KoszulComplex, degree_bound: int) -> BigradedDimensions:
    if degree_bound < 0:
        raise ValueError("degree_bound must be >= 0")
    ctx = context(cx.base)
    p = ctx.p
    entries: Dict[Tuple[int, int], int] = {}
    for s in range(cx.length + 1):
        for t in range(degree_bound + 1):
            if s == 0:
                dim_dom = len(ctx.basis(t))
                rank_in = 0
                if cx.length:
                    rows_in, _, _ = _stage_matrix(cx, 1, t)
                    rank_in = rank(rows_in, p)
                h = dim_dom - rank_in
            else:
                rows, dim_dom, _ = _stage_matrix(cx, s, t)
                rank_out = rank(rows, p)
                rank_in = 0
                if s + 1 <= cx.length:
                    rows_in, _, _ = _stage_matrix(cx, s + 1, t)
                    rank_in = rank(rows_in, p)
                h = dim_dom - rank_out - rank_in
            if h:
                entries[(s, t)] = h
    return BigradedDimensions(tuple(sorted((s, t, v) for (s, t), v in entries.items())))


@dataclass(frozen=True)
class RegularityReport:
    regular: bool
    witness: Optional[dict]  # first nonzero higher homology class

    def to_json(self) -> dict:
        return {"regular": self.regular, "witness": self.witness}


def is_regular_sequence(
    pres: AlgebraPresentation, elements: List[Element], degree_bound: int
) -> RegularityReport:
    """True iff all higher Koszul homology vanishes within the window."""
    from .presentation_io import format_polynomial

    cx = build_koszul(pres, elements)
    ctx = context(pres)
    p = ctx.p
    for t in range(degree_bound + 1):
        for s in range(1, cx.length + 1):
            rows, dim_dom, _ = _stage_matrix(cx, s, t)
            rank_out = rank(rows, p)
            rank_in = 0
            rows_in = []
            if s + 1 <= cx.length:
                rows_in, _, _ = _stage_matrix(cx, s + 1, t)
                rank_in = rank(rows_in, p)
            h = dim_dom - rank_out - rank_in
            if h:
                rep = _witness_cycle(cx, s, t, rows, rows_in)
                return RegularityReport(
                    False,
                    {
                        "s": s,
                        "t": t,
                        "dim": h,
                        "representative": rep,
                    },
                )
    return RegularityReport(True, None)


def _witness_cycle(cx, s, t, rows, boundary_rows) -> Optional[str]:
    from .linalg import RowReducer, nullspace
    from .presentation_io import format_monomial

    ctx = context(cx.base)
    dom = [
        (S, m)
        for S in cx.stage_basis(s)
        for m in ctx.basis(t - cx.shift(S))
    ]
    cycles = nullspace(rows, ctx.p)
    # boundary rows from d_{s+1} already live in stage-s coordinates
    rr_img = RowReducer(ctx.p)
    for b in boundary_rows:
        rr_img.add(b)
    for cyc in cycles:
        if not rr_img.contains(cyc):
            parts = []
            for k, c in sorted(cyc.items()):
                S, m = dom[k]
                label = "e[" + ",".join(str(i) for i in S) + "]"
                mono = format_monomial(m, cx.base)
                coeff = "" if c == 1 else f"{c}*"
                parts.append(f"{coeff}{mono}*{label}" if mono != "1" else f"{coeff}{label}")
            return " + ".join(parts)
    return None
