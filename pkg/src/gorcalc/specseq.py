"""Multiplicative bigraded spectral-sequence engine for cofibre sequences.

The E2 page of Q ⊗ S is carried as explicit pair monomials
(q-basis monomial, s-basis monomial) per bidegree (s, t); every later
page is a subquotient, stored as cycle rows Z and boundary rows B in E2
coordinates.  Differentials are specified on presentation generators
only and extended to all monomials by the Leibniz rule with the sign of
the total degree; d² = 0 is verified monomial by monomial before a page
is turned.

Bidegrees whose incoming or outgoing differential would leave the
window are marked unreliable and excluded from convergence checks.

Both presentations must be connective or both coconnective; the engine
computes on the reflected grading, so the cohomological variant runs
through the same code path with the differential direction flipped in
reports only.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import (
    BidegreeViolation,
    CharacteristicZero,
    FieldMismatch,
    LeibnizInconsistent,
    OrientationMismatch,
    ScheduleFormatError,
)
from .gradedalg import AlgebraPresentation, Element, Monomial, context
from .linalg import RowReducer, Vec, nullspace, vec_add
from .series import HilbertSeries

Pair = Tuple[Monomial, Monomial]
PairElement = Dict[Pair, int]


@dataclass(frozen=True)
class Window:
    s_max: int
    t_max: int

    def contains(self, s: int, t: int) -> bool:
        return 0 <= s <= self.s_max and 0 <= t <= self.t_max


@dataclass(frozen=True)
class DifferentialSpec:
    page: int
    assignments: Tuple[Tuple[str, Tuple[Tuple[Pair, int], ...]], ...]

    @staticmethod
    def make(page: int, assignments: Dict[str, PairElement]) -> "DifferentialSpec":
        items = []
        for name in sorted(assignments):
            elt = assignments[name]
            items.append((name, tuple(sorted(elt.items()))))
        return DifferentialSpec(page, tuple(items))

    def as_dict(self) -> Dict[str, PairElement]:
        return {name: dict(elt) for name, elt in self.assignments}


class BigradedPage:
    """One page of the spectral sequence.  Treat as immutable."""

    def __init__(
        self,
        q_pres: AlgebraPresentation,
        s_pres: AlgebraPresentation,
        window: Window,
        r: int,
        entries: Dict[Tuple[int, int], "_PageEntry"],
        unreliable: Set[Tuple[int, int]],
    ):
        self.q_pres = q_pres
        self.s_pres = s_pres
        self.window = window
        self.r = r
        self.entries = entries
        self.unreliable = frozenset(unreliable)
        self.p = q_pres.field.p
        self.orientation = q_pres.orientation

    def dim(self, s: int, t: int) -> int:
        e = self.entries.get((s, t))
        return e.dim if e else 0

    def dims(self) -> Dict[Tuple[int, int], int]:
        return {
            st: e.dim for st, e in sorted(self.entries.items()) if e.dim
        }

    def labels(self, s: int, t: int) -> List[str]:
        e = self.entries.get((s, t))
        if not e:
            return []
        return [pair_label(pr, self.q_pres, self.s_pres) for pr in e.labels]

    def total_dims(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for (s, t), e in self.entries.items():
            if e.dim:
                out[s + t] = out.get(s + t, 0) + e.dim
        return dict(sorted(out.items()))

    def differential_bidegree(self) -> Tuple[int, int]:
        if self.orientation == "connective":
            return (-self.r, self.r - 1)
        return (self.r, -self.r + 1)


@dataclass(frozen=True)
class _PageEntry:
    pairs: Tuple[Pair, ...]
    z_rows: Tuple[Tuple[Tuple[int, int], ...], ...]
    b_rows: Tuple[Tuple[Tuple[int, int], ...], ...]
    dim: int
    labels: Tuple[Pair, ...]

    @cached_property
    def index(self) -> Dict[Pair, int]:
        return {pr: i for i, pr in enumerate(self.pairs)}


def pair_label(pair: Pair, q_pres: AlgebraPresentation, s_pres: AlgebraPresentation) -> str:
    from .presentation_io import format_monomial

    ql = format_monomial(pair[0], q_pres)
    sl = format_monomial(pair[1], s_pres)
    if ql == "1":
        return sl
    if sl == "1":
        return ql
    return f"{ql}*{sl}"


def _span_rank(rows: Iterable[Vec], p: int) -> int:
    rr = RowReducer(p)
    for row in rows:
        rr.add(dict(row))
    return rr.rank


def _freeze_rows(rows: List[Vec]) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
    return tuple(tuple(sorted(r.items())) for r in rows)


def _thaw_rows(rows) -> List[Vec]:
    return [dict(r) for r in rows]


def _canonical_labels(pairs, z_rows, b_rows, p) -> Tuple[Pair, ...]:
    """Lexicographically least representatives of a basis of Z/B."""
    rr = RowReducer(p)
    for b in b_rows:
        rr.add(dict(b))
    labels = []
    for z in z_rows:
        rem = rr.add(dict(z))
        if rem is not None:
            labels.append(pairs[min(rem)])
    return tuple(sorted(labels))


def build_e2(
    q_pres: AlgebraPresentation, s_pres: AlgebraPresentation, window: Window
) -> BigradedPage:
    if q_pres.field != s_pres.field:
        raise FieldMismatch(f"{q_pres.field.p} vs {s_pres.field.p}")
    if q_pres.orientation != s_pres.orientation:
        raise OrientationMismatch(f"{q_pres.orientation} vs {s_pres.orientation}")
    qnames = {g.name for g in q_pres.generators}
    snames = {g.name for g in s_pres.generators}
    if qnames & snames:
        raise ScheduleFormatError(f"generator names collide: {sorted(qnames & snames)}")
    qctx = context(q_pres)
    sctx = context(s_pres)
    entries: Dict[Tuple[int, int], _PageEntry] = {}
    for s in range(window.s_max + 1):
        qb = qctx.basis(s)
        if not qb:
            continue
        for t in range(window.t_max + 1):
            sb = sctx.basis(t)
            if not sb:
                continue
            pairs = tuple((qm, sm) for qm in qb for sm in sb)
            z = tuple(((i, 1),) for i in range(len(pairs)))
            entries[(s, t)] = _PageEntry(pairs, z, (), len(pairs), tuple(sorted(pairs)))
    return BigradedPage(q_pres, s_pres, window, 2, entries, set())


class _Derivation:
    """Leibniz extension of generator assignments over E2 pair monomials."""

    def __init__(self, page: BigradedPage, assignments: Dict[str, PairElement]):
        self.page = page
        self.qctx = context(page.q_pres)
        self.sctx = context(page.s_pres)
        self.p = page.p
        self.q_assign: Dict[int, PairElement] = {}
        self.s_assign: Dict[int, PairElement] = {}
        for name, elt in assignments.items():
            if name in {g.name for g in page.q_pres.generators}:
                self.q_assign[page.q_pres.gen_index(name)] = elt
            elif name in {g.name for g in page.s_pres.generators}:
                self.s_assign[page.s_pres.gen_index(name)] = elt
            else:
                raise ScheduleFormatError(f"unknown generator {name!r} in differential spec")
        self._memo: Dict[Pair, PairElement] = {}

    # -- multiplication of E2 elements: (q1⊗s1)(q2⊗s2) = ±(q1q2)⊗(s1s2) --

    def mul_pairs(self, a: Pair, b: Pair) -> PairElement:
        q1, s1 = a
        q2, s2 = b
        sign = 1
        if self.p != 2:
            d_s1 = self.sctx.pres.mono_abs_degree(s1)
            d_q2 = self.qctx.pres.mono_abs_degree(q2)
            if (d_s1 * d_q2) % 2:
                sign = -1
        qprod = self.qctx.mono_mul(q1, q2)
        sprod = self.sctx.mono_mul(s1, s2)
        out: PairElement = {}
        for qm, qc in qprod.items():
            for sm, sc in sprod.items():
                c = (sign * qc * sc) % self.p
                if c:
                    out[(qm, sm)] = (out.get((qm, sm), 0) + c) % self.p
        return {k: v for k, v in out.items() if v}

    def mul(self, a: PairElement, b: PairElement) -> PairElement:
        out: PairElement = {}
        for pa, ca in a.items():
            for pb, cb in b.items():
                c = (ca * cb) % self.p
                if not c:
                    continue
                for pr, v in self.mul_pairs(pa, pb).items():
                    w = (out.get(pr, 0) + c * v) % self.p
                    if w:
                        out[pr] = w
                    else:
                        del out[pr]
        return out

    def pair_bidegree(self, pr: Pair) -> Tuple[int, int]:
        return (
            self.qctx.pres.mono_abs_degree(pr[0]),
            self.sctx.pres.mono_abs_degree(pr[1]),
        )

    def d(self, pr: Pair) -> PairElement:
        got = self._memo.get(pr)
        if got is not None:
            return got
        q, s = pr
        result: PairElement = {}
        letter = None
        rest: Optional[Pair] = None
        for i, e in enumerate(q):
            if e:
                letter = ("q", i)
                rest = (tuple(x - 1 if j == i else x for j, x in enumerate(q)), s)
                break
        if letter is None:
            for j, e in enumerate(s):
                if e:
                    letter = ("s", j)
                    rest = (q, tuple(x - 1 if l == j else x for l, x in enumerate(s)))
                    break
        if letter is None:
            self._memo[pr] = {}
            return {}
        kind, idx = letter
        if kind == "q":
            d_letter = self.q_assign.get(idx, {})
            letter_elt: PairElement = {
                (self.qctx.pres.gen_monomial(self.qctx.pres.generators[idx].name), self.sctx.pres.unit): 1
            }
            letter_deg = self.qctx.pres.abs_degree(idx)
        else:
            d_letter = self.s_assign.get(idx, {})
            letter_elt = {
                (self.qctx.pres.unit, self.sctx.pres.gen_monomial(self.sctx.pres.generators[idx].name)): 1
            }
            letter_deg = self.sctx.pres.abs_degree(idx)
        rest_elt: PairElement = {rest: 1}
        # d(letter * rest) = d(letter)*rest + (-1)^{|letter|} letter*d(rest)
        if d_letter:
            result = self.mul(d_letter, rest_elt)
        d_rest = self.d(rest)
        if d_rest:
            sign = 1
            if self.p != 2 and letter_deg % 2:
                sign = -1
            term = self.mul(letter_elt, d_rest)
            for pr2, c in term.items():
                v = (result.get(pr2, 0) + sign * c) % self.p
                if v:
                    result[pr2] = v
                else:
                    result.pop(pr2, None)
        self._memo[pr] = result
        return result

    def d_element(self, elt: PairElement) -> PairElement:
        out: PairElement = {}
        for pr, c in elt.items():
            for pr2, v in self.d(pr).items():
                w = (out.get(pr2, 0) + c * v) % self.p
                if w:
                    out[pr2] = w
                else:
                    del out[pr2]
        return out


def _validate_spec(page: BigradedPage, spec: DifferentialSpec, der: _Derivation) -> None:
    if spec.page != page.r:
        raise BidegreeViolation(
            f"spec is for page {spec.page} but the current page is {page.r}"
        )
    r = page.r
    for name, frozen in spec.assignments:
        elt = dict(frozen)
        if not elt:
            continue
        try:
            gi = page.q_pres.gen_index(name)
            src = (page.q_pres.abs_degree(gi), 0)
        except KeyError:
            gi = page.s_pres.gen_index(name)
            src = (0, page.s_pres.abs_degree(gi))
        want = (src[0] - r, src[1] + r - 1)
        for pr in elt:
            got = der.pair_bidegree(pr)
            if got != want:
                raise BidegreeViolation(
                    f"d_{r}({name}) must land in bidegree {want}, found a term in {got}"
                )


def apply_and_turn(page: BigradedPage, spec: DifferentialSpec) -> BigradedPage:
    """Extend the spec by Leibniz, verify d²=0 in the window, return page r+1."""
    der = _Derivation(page, spec.as_dict())
    _validate_spec(page, spec, der)
    p = page.p
    r = page.r
    if all(not dict(elt) for _, elt in spec.assignments):
        # the zero differential is exactly known everywhere: nothing to
        # compute and no window edge can hide anything
        return BigradedPage(
            page.q_pres, page.s_pres, page.window, r + 1, page.entries,
            set(page.unreliable),
        )
    # global d² = 0 check on every pair monomial present in the window
    for (s, t), entry in sorted(page.entries.items()):
        for pr in entry.pairs:
            dd = der.d_element(der.d(pr))
            if dd:
                raise LeibnizInconsistent(
                    f"d²({pair_label(pr, page.q_pres, page.s_pres)}) != 0 at bidegree {(s, t)}"
                )

    win = page.window
    qctx = context(page.q_pres)
    sctx = context(page.s_pres)

    def math_dim(s0: int, t0: int) -> int:
        if s0 < 0 or t0 < 0:
            return 0
        return qctx.dim(s0) * sctx.dim(t0)

    new_unreliable = set(page.unreliable)
    # images of current cycles, per source bidegree
    images: Dict[Tuple[int, int], List[Vec]] = {}
    kernels: Dict[Tuple[int, int], List[Vec]] = {}
    for (s, t), entry in sorted(page.entries.items()):
        tgt = (s - r, t + r - 1)
        src = (s + r, t - r + 1)
        # window-edge bookkeeping: a bidegree is unreliable once a nonzero
        # differential in or out of it falls outside the materialized window
        if not win.contains(*src) and math_dim(*src):
            new_unreliable.add((s, t))
        tgt_outside = not win.contains(*tgt) and math_dim(*tgt) > 0
        if tgt_outside:
            new_unreliable.add((s, t))
        z_rows = _thaw_rows(entry.z_rows)
        tgt_entry = page.entries.get(tgt)
        img_rows: List[Vec] = []
        red_rows: List[Vec] = []
        if tgt_outside:
            # outgoing differential leaves the window: unknown, no constraint;
            # the bidegree is flagged unreliable above
            img_rows = [{} for _ in z_rows]
            red_rows = [{} for _ in z_rows]
        elif tgt_entry is None:
            # negative coordinates or a genuinely zero bidegree: pairs cannot
            # exist there, so a nonzero image is an engine invariant violation
            for z in z_rows:
                img = der.d_element({entry.pairs[i]: c for i, c in z.items()})
                if img:
                    raise LeibnizInconsistent(
                        f"differential from {(s, t)} lands in an empty bidegree {tgt}"
                    )
                img_rows.append({})
                red_rows.append({})
        else:
            rr_b = RowReducer(p)
            for b in _thaw_rows(tgt_entry.b_rows):
                rr_b.add(b)
            rr_z = RowReducer(p)
            for z in _thaw_rows(tgt_entry.z_rows):
                rr_z.add(z)
            for z in z_rows:
                img_elt = der.d_element({entry.pairs[i]: c for i, c in z.items()})
                img: Vec = {}
                for pr, c in img_elt.items():
                    k = tgt_entry.index.get(pr)
                    if k is None:
                        raise LeibnizInconsistent(
                            f"differential image leaves the E2 basis at {tgt}"
                        )
                    img[k] = c
                if img and not rr_z.contains(img):
                    raise LeibnizInconsistent(
                        f"differential of a page-{r} cycle at {(s, t)} is not a page cycle"
                    )
                img_rows.append(img)
                red_rows.append(rr_b.reduce(img))
        images[(s, t)] = img_rows
        kernels[(s, t)] = red_rows

    new_entries: Dict[Tuple[int, int], _PageEntry] = {}
    for (s, t), entry in sorted(page.entries.items()):
        src = (s + r, t - r + 1)
        z_rows = _thaw_rows(entry.z_rows)
        b_rows = _thaw_rows(entry.b_rows)
        # new cycles: combinations of current cycles whose image dies mod boundaries
        combos = nullspace(kernels[(s, t)], p)
        new_z: List[Vec] = []
        for combo in combos:
            acc: Vec = {}
            for i, c in combo.items():
                acc = vec_add(acc, {k: (v * c) % p for k, v in z_rows[i].items()}, p)
            if acc:
                new_z.append(acc)
        # new boundaries: old ones plus images from the source bidegree
        new_b = list(b_rows)
        src_entry = page.entries.get(src)
        if src_entry is not None:
            for img in images.get(src, []):
                if img:
                    new_b.append(img)
        rr = RowReducer(p)
        nb: List[Vec] = []
        for b in new_b:
            red = rr.add(b)
            if red is not None:
                nb.append(red)
        dim = _span_rank(new_z, p) - len(nb)
        labels = _canonical_labels(list(entry.pairs), new_z, nb, p)
        new_entries[(s, t)] = _PageEntry(
            entry.pairs, _freeze_rows(new_z), _freeze_rows(nb), dim, labels
        )
    return BigradedPage(
        page.q_pres, page.s_pres, page.window, r + 1, new_entries, new_unreliable
    )


def turn_trivially(page: BigradedPage) -> BigradedPage:
    """Advance one page with the zero differential."""
    return apply_and_turn(page, DifferentialSpec.make(page.r, {}))


@dataclass(frozen=True)
class ScheduleResult:
    final: BigradedPage
    history: Tuple[Tuple[int, Tuple[Tuple[Tuple[int, int], int], ...]], ...]
    collapse_page: Optional[int]

    def history_dims(self) -> List[Tuple[int, Dict[Tuple[int, int], int]]]:
        return [(r, dict(d)) for r, d in self.history]


def s_support_degrees(s_pres: AlgebraPresentation, t_max: int) -> List[int]:
    ctx = context(s_pres)
    return [t for t in range(t_max + 1) if ctx.dim(t)]


def collapse_page_bound(s_pres: AlgebraPresentation, t_max: int) -> Optional[int]:
    """Last page that can carry a differential, from the S-side support.

    Valid when S is Artinian with top degree inside the window; None when
    the support may continue past t_max.
    """
    from .errors import NotArtinian
    from .gradedalg import top_nonzero_degree

    try:
        top = top_nonzero_degree(s_pres)
    except NotArtinian:
        return None
    if top > t_max:
        return None
    support = s_support_degrees(s_pres, t_max)
    diffs = sorted({b - a for a in support for b in support if b > a})
    if not diffs:
        return 2
    return max(diffs) + 2  # pages r with r-1 in diffs can act; r = maxdiff+1 is last


def run_schedule(
    q_pres: AlgebraPresentation,
    s_pres: AlgebraPresentation,
    specs: Sequence[DifferentialSpec],
    window: Window,
) -> ScheduleResult:
    specs = sorted(specs, key=lambda sp: sp.page)
    for a, b in zip(specs, specs[1:]):
        if a.page == b.page:
            raise ScheduleFormatError(f"two specs for page {a.page}")
    page = build_e2(q_pres, s_pres, window)
    history = [(2, tuple(sorted(page.dims().items())))]
    collapse = collapse_page_bound(s_pres, window.t_max)
    for spec in specs:
        while page.r < spec.page:
            page = turn_trivially(page)
        page = apply_and_turn(page, spec)
        history.append((page.r, tuple(sorted(page.dims().items()))))
    if collapse is not None:
        while page.r < collapse:
            page = apply_and_turn(page, DifferentialSpec.make(page.r, {}))
        history.append((page.r, tuple(sorted(page.dims().items()))))
    return ScheduleResult(page, tuple(history), collapse)


@dataclass(frozen=True)
class ConvergenceReport:
    ok: bool
    first_mismatch: Optional[int]
    checked: Tuple[int, ...]
    uncovered: Tuple[int, ...]
    detail: Tuple[Tuple[int, int, int], ...]  # (n, e_infty_total, target)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "first_mismatch": self.first_mismatch,
            "checked_degrees": list(self.checked),
            "uncovered_degrees": list(self.uncovered),
            "detail": [list(x) for x in self.detail],
        }


def convergence_check(
    page: BigradedPage,
    target,
    total_degree: int,
) -> ConvergenceReport:
    """Compare E∞ total-degree dimensions with the abutment up to total_degree.

    target: HilbertSeries or {degree: dim} dict.  Degrees whose bidegree
    line touches an unreliable or unpopulated-but-possibly-nonzero entry
    are reported as uncovered, not failed.
    """
    if isinstance(target, HilbertSeries):
        expect = target.expand(0, total_degree)
    else:
        expect = {n: int(target.get(n, 0)) for n in range(total_degree + 1)}
    support = s_support_degrees(page.s_pres, page.window.t_max)
    s_complete = collapse_page_bound(page.s_pres, page.window.t_max) is not None
    got = {n: 0 for n in range(total_degree + 1)}
    covered = {n: True for n in range(total_degree + 1)}
    for n in range(total_degree + 1):
        if not s_complete and n > page.window.t_max:
            covered[n] = False
            continue
        for t in support:
            if t > n:
                continue
            s = n - t
            if s > page.window.s_max or (s, t) in page.unreliable:
                covered[n] = False
                break
            got[n] += page.dim(s, t)
    mismatch = None
    checked = []
    uncovered = []
    detail = []
    for n in range(total_degree + 1):
        if not covered[n]:
            uncovered.append(n)
            continue
        checked.append(n)
        detail.append((n, got[n], expect[n]))
        if got[n] != expect[n] and mismatch is None:
            mismatch = n
    return ConvergenceReport(
        ok=(mismatch is None and not uncovered),
        first_mismatch=mismatch,
        checked=tuple(checked),
        uncovered=tuple(uncovered),
        detail=tuple(detail),
    )


@dataclass(frozen=True)
class SurvivalReport:
    generator: str
    exponent_power: int  # m: x^(p^m) is guaranteed to survive
    derivation: str

    def to_json(self) -> dict:
        return {
            "generator": self.generator,
            "survives_exponent": self.exponent_power,
            "derivation": self.derivation,
        }


def frobenius_survival(
    page: BigradedPage, s_support: Optional[Sequence[int]] = None
) -> List[SurvivalReport]:
    """Guaranteed p-power survival exponents for even Q-axis generators.

    In characteristic p the Leibniz rule kills d_r(x^p) termwise, so each
    page that can carry a differential costs at most one factor of p; the
    number of such pages is the number of distinct positive differences
    of the S-side degree support.
    """
    p = page.p
    if p <= 0:
        raise CharacteristicZero("prime characteristic required")
    if s_support is None:
        support = s_support_degrees(page.s_pres, page.window.t_max)
    else:
        support = sorted(set(s_support))
    diffs = sorted({b - a for a in support for b in support if b > a})
    m = len(diffs)
    out = []
    for i, g in enumerate(page.q_pres.generators):
        if page.q_pres.field.p != 2 and page.q_pres.parity_bit(i):
            continue
        pages = ", ".join(str(d + 1) for d in diffs) if diffs else "none"
        out.append(
            SurvivalReport(
                generator=g.name,
                exponent_power=m,
                derivation=(
                    f"differentials can only act on pages {{{pages}}}; "
                    f"d_r({g.name}^p) = 0 termwise in characteristic {p}, so each "
                    f"such page costs at most one p-th power: {g.name}^(p^{m}) survives"
                ),
            )
        )
    return out


def parse_schedule(text: str) -> Tuple[Dict[str, str], List[Tuple[int, Dict[str, str]]]]:
    """Parse a schedule file: optional `q:`/`s:` refs plus per-page assignments.

        q: ring_q.pres
        s: ring_s.pres
        page 2: mu2 -> x1
        page 4: mu4 -> 0

    Returns (refs, [(page, {gen: polynomial-or-0 string})]) in page order.
    """
    refs: Dict[str, str] = {}
    pages: Dict[int, Dict[str, str]] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("q:") or line.startswith("s:"):
            key, _, val = line.partition(":")
            refs[key.strip()] = val.strip()
            continue
        if not line.startswith("page"):
            raise ScheduleFormatError(f"cannot parse schedule line {raw!r}")
        head, _, body = line.partition(":")
        try:
            r = int(head[len("page"):].strip())
        except ValueError:
            raise ScheduleFormatError(f"bad page number in {raw!r}")
        if "->" not in body:
            raise ScheduleFormatError(f"missing '->' in {raw!r}")
        gen, _, target = body.partition("->")
        pages.setdefault(r, {})[gen.strip()] = target.strip()
    return refs, sorted(pages.items())


def specs_from_strings(
    q_pres: AlgebraPresentation,
    s_pres: AlgebraPresentation,
    page_assignments: Sequence[Tuple[int, Dict[str, str]]],
) -> List[DifferentialSpec]:
    """Resolve textual generator assignments into pair elements."""
    from .presentation_io import parse_polynomial
    from .gradedalg import AlgebraPresentation as AP

    combined = AP(
        q_pres.field,
        q_pres.generators + s_pres.generators,
        (),
        q_pres.orientation,
    )
    nq = len(q_pres.generators)
    qctx = context(q_pres)
    sctx = context(s_pres)
    specs = []
    for r, assigns in page_assignments:
        conv: Dict[str, PairElement] = {}
        for gen, target in assigns.items():
            if target.strip() == "0":
                conv[gen] = {}
                continue
            poly = parse_polynomial(target, combined)
            elt: PairElement = {}
            for mono, c in poly.items():
                qm, sm = mono[:nq], mono[nq:]
                qred = qctx.reduce_element({qm: 1})
                sred = sctx.reduce_element({sm: 1})
                for q2, cq in qred.items():
                    for s2, cs in sred.items():
                        pr = (q2, s2)
                        v = (elt.get(pr, 0) + c * cq * cs) % q_pres.field.p
                        if v:
                            elt[pr] = v
                        else:
                            elt.pop(pr, None)
            conv[gen] = elt
        specs.append(DifferentialSpec.make(r, conv))
    return specs
