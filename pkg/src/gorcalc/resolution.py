"""Minimal free resolutions of the residue field, Tor/Ext, and certificates.

The resolution is built stage by stage: the kernel of each differential
is computed per internal degree by exact sparse row reduction, and new
free generators are exactly the kernel vectors independent modulo the
submodule generated in lower degrees.  Minimality (all matrix entries in
the maximal ideal) is asserted, never assumed.

All verdicts are relative to the (hom_bound, deg_bound) window; the
certificate records the scanned region and whether the window was large
enough to list every resolution generator through hom_bound.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import NotArtinian, NotTensorForm, WindowTooSmall
from .gradedalg import (
    AlgebraPresentation,
    Element,
    FrozenPoly,
    Monomial,
    context,
    freeze_poly,
    socle,
    structural_shift,
    tensor_form,
    top_nonzero_degree,
)
from .linalg import RowReducer, Vec, nullspace, rank, vec_add

Column = Tuple[FrozenPoly, ...]  # entries over the previous stage's generators
Matrix = Tuple[Column, ...]      # one column per generator of this stage

DEFAULT_HOM_BOUND = 12
DEFAULT_DEG_BOUND = 48


@dataclass(frozen=True)
class FreeResolution:
    pres: AlgebraPresentation
    gen_degrees: Tuple[Tuple[int, ...], ...]
    matrices: Tuple[Matrix, ...]  # matrices[s] is d_{s+1}: F_{s+1} -> F_s
    hom_bound: int
    deg_bound: int
    terminated: bool

    @property
    def stages(self) -> int:
        return len(self.gen_degrees)

    def tor(self) -> "BigradedDimensions":
        entries: Dict[Tuple[int, int], int] = {}
        for s, degs in enumerate(self.gen_degrees):
            for d in degs:
                entries[(s, d)] = entries.get((s, d), 0) + 1
        return BigradedDimensions(tuple(sorted((s, t, v) for (s, t), v in entries.items())))

    def max_gen_degree(self) -> int:
        return max((max(d) for d in self.gen_degrees if d), default=0)

    def to_json(self) -> dict:
        from .presentation_io import canonical_text, format_polynomial
        from . import ALGO_VERSION

        return {
            "algo_version": ALGO_VERSION,
            "presentation": canonical_text(self.pres),
            "hom_bound": self.hom_bound,
            "deg_bound": self.deg_bound,
            "terminated": self.terminated,
            "gen_degrees": [list(d) for d in self.gen_degrees],
            "matrices": [
                [[format_polynomial(dict(e), self.pres) for e in col] for col in mat]
                for mat in self.matrices
            ],
        }

    @staticmethod
    def from_json(doc: dict) -> "FreeResolution":
        from .presentation_io import parse_polynomial, parse_presentation

        pres = parse_presentation(doc["presentation"])
        mats = []
        for mat in doc["matrices"]:
            cols = []
            for col in mat:
                cols.append(tuple(freeze_poly(parse_polynomial(e, pres)) for e in col))
            mats.append(tuple(cols))
        return FreeResolution(
            pres=pres,
            gen_degrees=tuple(tuple(d) for d in doc["gen_degrees"]),
            matrices=tuple(mats),
            hom_bound=int(doc["hom_bound"]),
            deg_bound=int(doc["deg_bound"]),
            terminated=bool(doc["terminated"]),
        )


@dataclass(frozen=True)
class BigradedDimensions:
    entries: Tuple[Tuple[int, int, int], ...]  # (s, t, dim), sorted

    def dim(self, s: int, t: int) -> int:
        for ss, tt, v in self.entries:
            if ss == s and tt == t:
                return v
        return 0

    def by_total(self, total_of=lambda s, t: s + t) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for s, t, v in self.entries:
            n = total_of(s, t)
            out[n] = out.get(n, 0) + v
        return dict(sorted(out.items()))

    def nonzero(self) -> Tuple[Tuple[int, int, int], ...]:
        return self.entries

    def to_json(self) -> list:
        return [[s, t, v] for s, t, v in self.entries]


def _coords_index(degs: Sequence[int], t: int, ctx) -> Tuple[List[Tuple[int, Monomial]], Dict[Tuple[int, Monomial], int]]:
    basis = []
    for i, d in enumerate(degs):
        for m in ctx.basis(t - d):
            basis.append((i, m))
    return basis, {b: k for k, b in enumerate(basis)}


def _column_coords(col: Sequence[Element], degs_out: Sequence[int], t: int, ctx, index) -> Vec:
    vec: Vec = {}
    for i, elt in enumerate(col):
        for m, c in elt.items():
            key = (i, m)
            k = index.get(key)
            if k is None:
                continue  # entry lands outside the tracked degree; callers align degrees
            v = (vec.get(k, 0) + c) % ctx.p
            if v:
                vec[k] = v
            else:
                vec.pop(k, None)
    return vec


def _scale_column(col: Sequence[Element], m: Monomial, ctx) -> List[Element]:
    return [ctx.mul({m: 1}, elt) for elt in col]


def minimal_resolution(
    pres: AlgebraPresentation,
    hom_bound: int = DEFAULT_HOM_BOUND,
    deg_bound: int = DEFAULT_DEG_BOUND,
    module_ideal: Optional[List[Element]] = None,
) -> FreeResolution:
    """Minimal free resolution of k, or of the cyclic module R/(module_ideal).

    module_ideal=None resolves the residue field (the augmentation kernel is
    the whole maximal ideal); otherwise stage 1 consists of the minimal
    generators of the given ideal and later stages are plain syzygies.
    """
    if hom_bound < 0 or deg_bound < 0:
        raise WindowTooSmall("bounds must be nonnegative")
    ctx = context(pres)
    for i in range(len(pres.generators)):
        if pres.abs_degree(i) > deg_bound:
            raise WindowTooSmall(
                f"generator {pres.generators[i].name} has degree {pres.abs_degree(i)} "
                f"beyond deg_bound {deg_bound}; its syzygies would be invisible"
            )
    ideal_rows: Optional[Dict[int, List[Vec]]] = None
    if module_ideal is not None:
        ideal_rows = {}
        for t in range(1, deg_bound + 1):
            data = ctx.degree_data(t)
            rr = RowReducer(ctx.p)
            rows: List[Vec] = []
            for g in module_ideal:
                gdeg = ctx.element_degree(g)
                if gdeg is None or gdeg > t:
                    continue
                for m in ctx.basis(t - gdeg):
                    prod = ctx.mul({m: 1}, g)
                    vec = {data.basis_index[mm]: c for mm, c in prod.items()}
                    red = rr.add(vec)
                    if red is not None:
                        rows.append(dict(vec))
            ideal_rows[t] = rows
    gen_degrees: List[Tuple[int, ...]] = [(0,)]
    matrices: List[Matrix] = []
    terminated = False

    for s in range(hom_bound):
        prev_degs = gen_degrees[s]
        cur_matrix = matrices[s - 1] if s >= 1 else None
        new_gens: List[Tuple[int, List[Element]]] = []  # (degree, column over F_s)

        for t in range(1, deg_bound + 1):
            dom_basis, dom_index = _coords_index(prev_degs, t, ctx)
            if not dom_basis:
                continue
            # kernel of d_s at internal degree t; at stage 0 this is the whole
            # maximal ideal (k) or the degreewise span of the ideal (cyclic case)
            if s == 0 and ideal_rows is not None:
                kernel = ideal_rows[t]
            elif s == 0:
                kernel = [{k: 1} for k in range(len(dom_basis))]
            else:
                out_degs = gen_degrees[s - 1]
                _, out_index = _coords_index(out_degs, t, ctx)
                rows: List[Vec] = []
                for (j, m) in dom_basis:
                    col = cur_matrix[j]
                    scaled = [ctx.mul({m: 1}, dict(e)) for e in col]
                    rows.append(_column_coords(scaled, out_degs, t, ctx, out_index))
                kernel = nullspace(rows, ctx.p)
            if not kernel:
                continue
            rr = RowReducer(ctx.p)
            # span of lower-degree generators times the maximal ideal
            for gdeg, gcol in new_gens:
                if gdeg >= t:
                    continue
                for m in ctx.basis(t - gdeg):
                    prod = _scale_column(gcol, m, ctx)
                    vec = _column_coords(prod, prev_degs, t, ctx, dom_index)
                    if vec:
                        rr.add(vec)
            for combo in kernel:
                if rr.add(dict(combo)) is not None:
                    col: List[Element] = [dict() for _ in prev_degs]
                    for k, c in sorted(combo.items()):
                        i, m = dom_basis[k]
                        col[i][m] = (col[i].get(m, 0) + c) % ctx.p
                    col = [{m: c for m, c in e.items() if c} for e in col]
                    if any(pres.unit in e for e in col):
                        raise AssertionError(
                            "non-minimal generator produced; kernel stripping is broken"
                        )
                    new_gens.append((t, col))
        if not new_gens:
            terminated = True
            break
        new_gens.sort(key=lambda g: g[0])
        gen_degrees.append(tuple(g[0] for g in new_gens))
        matrices.append(tuple(tuple(freeze_poly(e) for e in g[1]) for g in new_gens))

    return FreeResolution(
        pres=pres,
        gen_degrees=tuple(gen_degrees),
        matrices=tuple(matrices),
        hom_bound=hom_bound,
        deg_bound=deg_bound,
        terminated=terminated,
    )


def verify_complex(res: FreeResolution) -> None:
    """Assert d∘d = 0 and minimality on every stored stage."""
    ctx = context(res.pres)
    for mat in res.matrices:
        for col in mat:
            for entry in col:
                if any(sum(m) == 0 for m, _ in entry):
                    raise AssertionError("unit entry violates minimality")
    for s in range(1, len(res.matrices)):
        upper = res.matrices[s]      # d_{s+1}
        lower = res.matrices[s - 1]  # d_s
        n_out = len(res.gen_degrees[s - 1])
        for col in upper:
            acc: List[Element] = [dict() for _ in range(n_out)]
            for i, entry in enumerate(col):
                if not entry:
                    continue
                lower_col = lower[i]
                for k in range(n_out):
                    prod = ctx.mul(dict(lower_col[k]), dict(entry))
                    for m, c in prod.items():
                        v = (acc[k].get(m, 0) + c) % ctx.p
                        if v:
                            acc[k][m] = v
                        else:
                            acc[k].pop(m, None)
            if any(e for e in acc):
                raise AssertionError("d∘d != 0")


_res_cache: Dict[Tuple[AlgebraPresentation, int, int], FreeResolution] = {}


def cached_resolution(pres: AlgebraPresentation, hom_bound: int, deg_bound: int) -> FreeResolution:
    key = (pres, hom_bound, deg_bound)
    got = _res_cache.get(key)
    if got is None:
        got = minimal_resolution(pres, hom_bound, deg_bound)
        _res_cache[key] = got
    return got


def tor_dimensions(
    pres: AlgebraPresentation,
    hom_bound: int = DEFAULT_HOM_BOUND,
    deg_bound: int = DEFAULT_DEG_BOUND,
) -> BigradedDimensions:
    return cached_resolution(pres, hom_bound, deg_bound).tor()


def ext_dimensions(
    res: FreeResolution, t_lo: int, t_hi: int
) -> Tuple[Dict[Tuple[int, int], int], int]:
    """Cohomology of Hom(F_•, R) per (s, t); returns (dims, s_hi scanned).

    Cohomology at stage s needs the differential into stage s+1, so the
    scan stops one stage short of the computed resolution unless it
    terminated.
    """
    ctx = context(res.pres)
    pres = res.pres
    s_count = res.stages
    s_hi = s_count - 1 if res.terminated else s_count - 2
    if s_hi < 0:
        return {}, -1
    dims: Dict[Tuple[int, int], int] = {}
    for t in range(t_lo, t_hi + 1):
        spaces: List[List[Tuple[int, Monomial]]] = []
        for s in range(min(s_hi + 2, s_count)):
            basis = []
            for i, d in enumerate(res.gen_degrees[s]):
                for m in ctx.basis(d + t):
                    basis.append((i, m))
            spaces.append(basis)
        # delta_s: Hom(F_s, R) -> Hom(F_{s+1}, R), phi -> phi ∘ d_{s+1}
        deltas: List[List[Vec]] = []
        for s in range(len(spaces) - 1):
            mat = res.matrices[s] if s < len(res.matrices) else ()
            tgt_index = {b: k for k, b in enumerate(spaces[s + 1])}
            rows: List[Vec] = []
            for (i, m) in spaces[s]:
                row: Vec = {}
                for j, col in enumerate(mat):
                    entry = col[i]
                    if not entry:
                        continue
                    prod = ctx.mul(dict(entry), {m: 1})
                    for mm, c in prod.items():
                        k = tgt_index.get((j, mm))
                        if k is None:
                            continue
                        v = (row.get(k, 0) + c) % ctx.p
                        if v:
                            row[k] = v
                        else:
                            row.pop(k, None)
                rows.append(row)
            deltas.append(rows)
        prev_rank = 0
        for s in range(s_hi + 1):
            dim_s = len(spaces[s])
            if s < len(deltas):
                rank_s = _matrix_rank(deltas[s], ctx.p)
            else:
                rank_s = 0  # terminated resolution: no further differential
            h = dim_s - rank_s - prev_rank
            if h:
                dims[(s, t)] = h
            prev_rank = rank_s
    return dims, s_hi


def _matrix_rank(rows: List[Vec], p: int) -> int:
    return rank(rows, p)


@dataclass(frozen=True)
class GorensteinCertificate:
    verdict: str  # "gorenstein" | "not_gorenstein" | "inconclusive"
    shift: Optional[int]
    evidence: dict
    window: dict

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "shift": self.shift,
            "evidence": self.evidence,
            "window": self.window,
        }


def tensor_stage_degree_bound(pres: AlgebraPresentation, hom_bound: int) -> Optional[int]:
    """Exact-ish upper bound on resolution generator degrees through hom_bound
    for tensor presentations; None when the presentation is not tensor-form."""
    try:
        form = tensor_form(pres)
    except NotTensorForm:
        return None
    slopes: List[List[int]] = []  # per factor: max gen degree at stage s
    for i in form.poly:
        d = pres.abs_degree(i)
        slopes.append([0, d] + [-1] * max(0, hom_bound - 1))
    for i in form.exterior:
        e = pres.abs_degree(i)
        slopes.append([s * e for s in range(hom_bound + 1)])
    if form.block_pres is not None:
        try:
            top = top_nonzero_degree(form.block_pres)
        except NotArtinian:
            return None
        maxgen = max(abs(g.degree) for g in form.block_pres.generators)
        slopes.append([s * (top + maxgen) for s in range(hom_bound + 1)])
    best = [0] + [-1] * hom_bound
    for fac in slopes:
        nxt = [-1] * (hom_bound + 1)
        for s0 in range(hom_bound + 1):
            if best[s0] < 0:
                continue
            for s1 in range(hom_bound + 1 - s0):
                if s1 < len(fac) and fac[s1] >= 0:
                    cand = best[s0] + fac[s1]
                    if cand > nxt[s0 + s1]:
                        nxt[s0 + s1] = cand
        best = nxt
    return max(v for v in best if v >= 0)


def gorenstein_certificate(
    pres: AlgebraPresentation,
    hom_bound: int = DEFAULT_HOM_BOUND,
    deg_bound: int = DEFAULT_DEG_BOUND,
) -> GorensteinCertificate:
    """Artinian: verdict from the socle.  Otherwise: Ext(k, R) from the dual
    of the minimal resolution; Gorenstein iff exactly one 1-dimensional class
    appears in the scanned window, with shift t - s."""
    from .presentation_io import format_polynomial

    try:
        top = top_nonzero_degree(pres)
        artinian = True
    except NotArtinian:
        artinian = False
    if artinian:
        soc = socle(pres)
        window = {"mode": "socle", "top_degree": pres.signed(top)}
        if len(soc) == 1:
            deg, elt = soc[0]
            return GorensteinCertificate(
                "gorenstein",
                abs(deg),
                {"socle_generator": format_polynomial(elt, pres), "degree": deg},
                window,
            )
        return GorensteinCertificate(
            "not_gorenstein",
            None,
            {"socle_dimension": len(soc), "degrees": [d for d, _ in soc]},
            window,
        )

    stage_bound = tensor_stage_degree_bound(pres, hom_bound)
    complete = stage_bound is not None
    eff_deg = max(deg_bound, stage_bound) if complete else deg_bound
    res = cached_resolution(pres, hom_bound, eff_deg)
    maxg = res.max_gen_degree()
    t_lo = -maxg
    if complete:
        t_hi = max(8, max((pres.abs_degree(i) for i in range(len(pres.generators))), default=0) + 2)
    else:
        t_hi = max(0, eff_deg - maxg)
    dims, s_hi = ext_dimensions(res, t_lo, t_hi)
    window = {
        "mode": "ext",
        "hom_bound": hom_bound,
        "deg_bound": eff_deg,
        "s_range": [0, s_hi],
        "t_range": [t_lo, t_hi],
        "stages_complete": complete,
        "terminated": res.terminated,
    }
    classes = sorted((s, t, v) for (s, t), v in dims.items())
    total = sum(v for _, _, v in classes)
    if total == 1:
        s, t, _ = classes[0]
        return GorensteinCertificate(
            "gorenstein", t - s, {"ext_class": {"s": s, "t": t}}, window
        )
    if total == 0:
        return GorensteinCertificate(
            "inconclusive", None, {"reason": "no Ext class found in window"}, window
        )
    return GorensteinCertificate(
        "not_gorenstein",
        None,
        {"ext_classes": [{"s": s, "t": t, "dim": v} for s, t, v in classes]},
        window,
    )


__all__ = [
    "FreeResolution",
    "BigradedDimensions",
    "GorensteinCertificate",
    "minimal_resolution",
    "cached_resolution",
    "verify_complex",
    "tor_dimensions",
    "ext_dimensions",
    "gorenstein_certificate",
    "structural_shift",
    "socle",
    "DEFAULT_HOM_BOUND",
    "DEFAULT_DEG_BOUND",
]
