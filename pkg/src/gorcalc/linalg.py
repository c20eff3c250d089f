"""Exact sparse linear algebra over a prime field F_p.

Vectors are dicts {column_index: coefficient} with coefficients in 1..p-1;
zero entries are never stored.
"""
from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Tuple

Vec = Dict[int, int]


def vec_add(a: Vec, b: Vec, p: int, scale: int = 1) -> Vec:
    """a + scale*b over F_p."""
    out = dict(a)
    for c, v in b.items():
        w = (out.get(c, 0) + scale * v) % p
        if w:
            out[c] = w
        else:
            out.pop(c, None)
    return out


def vec_scale(a: Vec, s: int, p: int) -> Vec:
    s %= p
    if s == 0:
        return {}
    return {c: (v * s) % p for c, v in a.items()}


class RowReducer:
    """Incremental Gaussian elimination keeping normalized pivot rows.

    Pivot of a row is its smallest column index.  Each inserted row is
    reduced against existing pivots; rows that survive with a nonzero
    entry become new pivots (normalized so the pivot coefficient is 1).
    """

    def __init__(self, p: int):
        self.p = p
        self.pivots: Dict[int, Vec] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Vec) -> Vec:
        p = self.p
        r = dict(row)
        while r:
            c = min(r)
            piv = self.pivots.get(c)
            if piv is None:
                return r
            r = vec_add(r, piv, p, scale=-r[c])
        return r

    def add(self, row: Vec) -> Optional[Vec]:
        """Insert a row; returns the normalized new pivot row, or None if dependent."""
        r = self.reduce(row)
        if not r:
            return None
        c = min(r)
        inv = pow(r[c], self.p - 2, self.p)
        r = vec_scale(r, inv, self.p)
        # keep earlier pivot rows fully reduced against the new one
        for pc, prow in list(self.pivots.items()):
            if c in prow:
                self.pivots[pc] = vec_add(prow, r, self.p, scale=-prow[c])
        self.pivots[c] = r
        return r

    def contains(self, row: Vec) -> bool:
        return not self.reduce(row)


def rank(rows: Iterable[Vec], p: int) -> int:
    rr = RowReducer(p)
    for row in rows:
        rr.add(row)
    return rr.rank


def nullspace(rows: List[Vec], p: int) -> List[Vec]:
    """Kernel of the map e_i -> rows[i], as combination vectors over row indices.

    Returned vectors k satisfy sum_i k[i]*rows[i] == 0 and are reduced
    (leading index carries coefficient 1), listed by increasing leading index.
    """
    rr = RowReducer(p)
    combos: Dict[int, Vec] = {}  # pivot col of reduced row -> combination
    kernel: List[Vec] = []
    for i, row in enumerate(rows):
        r = dict(row)
        combo: Vec = {i: 1}
        while r:
            c = min(r)
            piv = rr.pivots.get(c)
            if piv is None:
                break
            coeff = r[c]
            r = vec_add(r, piv, p, scale=-coeff)
            combo = vec_add(combo, combos[c], p, scale=-coeff)
        if not r:
            kernel.append(combo)
            continue
        c = min(r)
        inv = pow(r[c], p - 2, p)
        r = vec_scale(r, inv, p)
        combo = vec_scale(combo, inv, p)
        for pc, prow in list(rr.pivots.items()):
            if c in prow:
                s = -prow[c]
                rr.pivots[pc] = vec_add(prow, r, p, scale=s)
                combos[pc] = vec_add(combos[pc], combo, p, scale=s)
        rr.pivots[c] = r
        combos[c] = combo
    return kernel


def quotient_dim(space_rows: List[Vec], sub_rows: List[Vec], p: int) -> int:
    """dim(span(space_rows)) - dim(span(sub_rows)), assuming sub ⊆ space."""
    return rank(space_rows, p) - rank(sub_rows, p)


def intersect_kernels(matrices: List[List[Vec]], dim: int, p: int) -> List[Vec]:
    """Common kernel of several maps given as per-domain-index image vectors.

    matrices[m][i] is the image of basis vector i under map m (a Vec over
    that map's own codomain indices).  Returns reduced spanning vectors of
    {x in F_p^dim : all maps send x to 0}.
    """
    widths = []
    for mat in matrices:
        w = 0
        for img in mat:
            if img:
                w = max(w, max(img) + 1)
        widths.append(w)
    stacked: List[Vec] = []
    for i in range(dim):
        row: Vec = {}
        offset = 0
        for m, mat in enumerate(matrices):
            img = mat[i] if i < len(mat) else {}
            for c, v in img.items():
                row[offset + c] = v
            offset += widths[m]
        stacked.append(row)
    return nullspace(stacked, p)
