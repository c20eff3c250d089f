"""Finitely presented graded-commutative algebras over prime fields.

Monomials are exponent tuples aligned with the presentation's generator
list.  Elements are dicts {monomial: coefficient mod p}.  All degreewise
data (free monomials, quotient bases, reduction maps) is computed by
span-and-reduce linear algebra and memoized per presentation; values are
immutable after construction so sharing across threads is safe.

Coconnective presentations are reflected to positive internal degrees on
the computation side; reported degrees carry the orientation sign.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    DegreeZeroGenerator,
    InhomogeneousOperand,
    NotArtinian,
    NotTensorForm,
    PresentationError,
    RelationNotHomogeneous,
)
from .linalg import RowReducer, Vec, intersect_kernels, vec_add

Monomial = Tuple[int, ...]
Element = Dict[Monomial, int]
FrozenPoly = Tuple[Tuple[Monomial, int], ...]

CONNECTIVE = "connective"
COCONNECTIVE = "coconnective"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise PresentationError(f"characteristic {self.p} is not prime")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    degree: int
    parity: str  # "even" | "odd"

    def __post_init__(self):
        if self.degree == 0:
            raise DegreeZeroGenerator(f"generator {self.name} has degree 0")
        if self.parity not in ("even", "odd"):
            raise PresentationError(f"bad parity {self.parity!r} for {self.name}")


def generator(name: str, degree: int, parity: Optional[str] = None) -> GeneratorSpec:
    if parity is None:
        parity = "odd" if degree % 2 else "even"
    return GeneratorSpec(name, degree, parity)


@dataclass(frozen=True)
class AlgebraPresentation:
    field: PrimeField
    generators: Tuple[GeneratorSpec, ...]
    relations: Tuple[FrozenPoly, ...] = ()
    orientation: str = CONNECTIVE

    def __post_init__(self):
        if self.orientation not in (CONNECTIVE, COCONNECTIVE):
            raise PresentationError(f"bad orientation {self.orientation!r}")
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise PresentationError("duplicate generator names")
        sign = 1 if self.orientation == CONNECTIVE else -1
        for g in self.generators:
            if g.degree * sign < 0:
                raise PresentationError(
                    f"generator {g.name} degree {g.degree} conflicts with {self.orientation}"
                )
            if self.field.p != 2 and g.parity != ("odd" if g.degree % 2 else "even"):
                raise PresentationError(
                    f"generator {g.name}: parity must match degree mod 2 when p is odd"
                )
        for rel in self.relations:
            degs = {self.mono_abs_degree(m) for m, _ in rel}
            if len(degs) > 1:
                raise RelationNotHomogeneous(f"relation {rel} mixes degrees {sorted(degs)}")
            if degs == {0}:
                raise PresentationError("relation in degree 0")

    # -- degree helpers (abs = reflected-to-positive internal degree) --

    def abs_degree(self, i: int) -> int:
        return abs(self.generators[i].degree)

    def mono_abs_degree(self, m: Monomial) -> int:
        return sum(e * self.abs_degree(i) for i, e in enumerate(m))

    def signed(self, n: int) -> int:
        return n if self.orientation == CONNECTIVE else -n

    def parity_bit(self, i: int) -> int:
        return 1 if self.generators[i].parity == "odd" else 0

    def gen_index(self, name: str) -> int:
        for i, g in enumerate(self.generators):
            if g.name == name:
                return i
        raise KeyError(name)

    def gen_monomial(self, name: str) -> Monomial:
        i = self.gen_index(name)
        return tuple(1 if j == i else 0 for j in range(len(self.generators)))

    @property
    def unit(self) -> Monomial:
        return (0,) * len(self.generators)


def freeze_poly(poly: Element) -> FrozenPoly:
    return tuple(sorted((m, c) for m, c in poly.items() if c))


def presentation(
    p: int,
    gens: Sequence[Tuple],
    relations: Sequence[Element] = (),
    orientation: str = CONNECTIVE,
) -> AlgebraPresentation:
    """Convenience constructor: gens are (name, degree[, parity]) tuples."""
    gspecs = tuple(generator(*g) for g in gens)
    fld = PrimeField(p)
    rels = []
    for r in relations:
        norm = {m: c % p for m, c in r.items() if c % p}
        if norm:
            rels.append(freeze_poly(norm))
    return AlgebraPresentation(fld, gspecs, tuple(rels), orientation)


@dataclass(frozen=True)
class GradedVectorSpace:
    """Degreewise monomial bases of a quotient algebra, reported with signed degrees."""

    dims: Tuple[Tuple[int, int], ...]  # (signed degree, dim), sorted
    labels: Tuple[Tuple[int, Tuple[Monomial, ...]], ...]

    def dim(self, n: int) -> int:
        for d, v in self.dims:
            if d == n:
                return v
        return 0

    def basis(self, n: int) -> Tuple[Monomial, ...]:
        for d, mons in self.labels:
            if d == n:
                return mons
        return ()

    def dims_dict(self) -> Dict[int, int]:
        return {d: v for d, v in self.dims}


class _DegreeData:
    __slots__ = ("free", "index", "basis", "basis_index", "red")

    def __init__(self, free, index, basis, basis_index, red):
        self.free = free          # sorted free monomials of this degree
        self.index = index        # monomial -> position in free
        self.basis = basis        # quotient basis monomials (subset of free)
        self.basis_index = basis_index
        self.red = red            # free position -> Vec over basis positions


class Context:
    """Per-presentation caches: free monomials, quotient bases, products."""

    def __init__(self, pres: AlgebraPresentation):
        self.pres = pres
        self.p = pres.field.p
        self.ngens = len(pres.generators)
        self._free: Dict[int, List[Monomial]] = {}
        self._data: Dict[int, _DegreeData] = {}
        self._prod: Dict[Tuple[Monomial, Monomial], Element] = {}

    # -- free graded-commutative algebra --

    def free_monomials(self, n: int) -> List[Monomial]:
        got = self._free.get(n)
        if got is not None:
            return got
        out: List[Monomial] = []
        degs = [self.pres.abs_degree(i) for i in range(self.ngens)]
        caps = [
            1 if (self.p != 2 and self.pres.parity_bit(i)) else None
            for i in range(self.ngens)
        ]

        def rec(i: int, rem: int, acc: List[int]):
            if i == self.ngens:
                if rem == 0:
                    out.append(tuple(acc))
                return
            d = degs[i]
            top = rem // d
            if caps[i] is not None:
                top = min(top, caps[i])
            for e in range(top + 1):
                acc.append(e)
                rec(i + 1, rem - e * d, acc)
                acc.pop()

        if n == 0:
            out.append(self.pres.unit)
        elif n > 0:
            rec(0, n, [])
            out.sort()
        self._free[n] = out
        return out

    def mono_mul_free(self, a: Monomial, b: Monomial) -> Optional[Tuple[int, Monomial]]:
        """Product in the free algebra: (sign, monomial), or None if zero."""
        p = self.p
        sign = 1
        prod = []
        if p != 2:
            # Koszul sign: each odd letter of b crosses the odd letters of a
            # sitting at strictly larger generator indices.
            tail: List[int] = [0] * (self.ngens + 1)
            acc = 0
            for j in range(self.ngens - 1, -1, -1):
                tail[j] = acc
                if self.pres.parity_bit(j):
                    acc += a[j]
            for i in range(self.ngens):
                if self.pres.parity_bit(i) and b[i]:
                    if a[i] + b[i] > 1:
                        return None
                    sign *= -1 if (b[i] * tail[i]) % 2 else 1
        for i in range(self.ngens):
            prod.append(a[i] + b[i])
        return sign % p, tuple(prod)

    # -- quotient structure per degree --

    def degree_data(self, n: int) -> _DegreeData:
        got = self._data.get(n)
        if got is not None:
            return got
        free = self.free_monomials(n)
        index = {m: i for i, m in enumerate(free)}
        rr = RowReducer(self.p)
        for rel in self.pres.relations:
            rel_deg = self.pres.mono_abs_degree(rel[0][0])
            if rel_deg > n:
                continue
            for m in self.free_monomials(n - rel_deg):
                row: Vec = {}
                for rm, c in rel:
                    prod = self.mono_mul_free(m, rm)
                    if prod is None:
                        continue
                    s, pm = prod
                    row = vec_add(row, {index[pm]: (s * c) % self.p}, self.p)
                if row:
                    rr.add(row)
        pivots = rr.pivots
        basis = [m for i, m in enumerate(free) if i not in pivots]
        basis_index = {m: i for i, m in enumerate(basis)}
        red: Dict[int, Vec] = {}
        col_to_basis = {index[m]: basis_index[m] for m in basis}
        for i, m in enumerate(free):
            if i in pivots:
                row = pivots[i]
                red[i] = {
                    col_to_basis[c]: (-v) % self.p for c, v in row.items() if c != i
                }
            else:
                red[i] = {col_to_basis[i]: 1}
        data = _DegreeData(free, index, basis, basis_index, red)
        self._data[n] = data
        return data

    def basis(self, n: int) -> List[Monomial]:
        if n < 0:
            return []
        return self.degree_data(n).basis

    def dim(self, n: int) -> int:
        return len(self.basis(n))

    def reduce_element(self, elt: Element) -> Element:
        """Normal form of a (not necessarily homogeneous) element."""
        out: Element = {}
        by_deg: Dict[int, Element] = {}
        for m, c in elt.items():
            c %= self.p
            if not c:
                continue
            by_deg.setdefault(self.pres.mono_abs_degree(m), {})[m] = c
        for n, part in by_deg.items():
            data = self.degree_data(n)
            acc: Vec = {}
            for m, c in part.items():
                acc = vec_add(acc, {k: (v * c) % self.p for k, v in data.red[data.index[m]].items()}, self.p)
            for k, v in acc.items():
                out[data.basis[k]] = v
        return out

    def mono_mul(self, a: Monomial, b: Monomial) -> Element:
        """Product of two quotient-basis monomials, in normal form."""
        key = (a, b)
        got = self._prod.get(key)
        if got is not None:
            return got
        prod = self.mono_mul_free(a, b)
        if prod is None:
            result: Element = {}
        else:
            s, m = prod
            result = self.reduce_element({m: s})
        self._prod[key] = result
        return result

    def mul(self, a: Element, b: Element) -> Element:
        out: Element = {}
        p = self.p
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                c = (c1 * c2) % p
                if not c:
                    continue
                for m, v in self.mono_mul(m1, m2).items():
                    w = (out.get(m, 0) + c * v) % p
                    if w:
                        out[m] = w
                    else:
                        del out[m]
        return out

    def element_degree(self, elt: Element) -> Optional[int]:
        degs = {self.pres.mono_abs_degree(m) for m, c in elt.items() if c % self.p}
        if not degs:
            return None
        if len(degs) > 1:
            raise InhomogeneousOperand(f"element spans degrees {sorted(degs)}")
        return degs.pop()


_contexts: Dict[AlgebraPresentation, Context] = {}


def context(pres: AlgebraPresentation) -> Context:
    ctx = _contexts.get(pres)
    if ctx is None:
        ctx = Context(pres)
        _contexts[pres] = ctx
    return ctx


# -- public operations --


def enumerate_basis(pres: AlgebraPresentation, degree_bound: int) -> GradedVectorSpace:
    if degree_bound < 0:
        raise PresentationError("degree_bound must be >= 0")
    ctx = context(pres)
    dims = []
    labels = []
    for n in range(degree_bound + 1):
        b = ctx.basis(n)
        sn = pres.signed(n)
        dims.append((sn, len(b)))
        labels.append((sn, tuple(b)))
    if pres.orientation == COCONNECTIVE:
        dims.reverse()
        labels.reverse()
    return GradedVectorSpace(tuple(dims), tuple(labels))


def multiply(pres: AlgebraPresentation, a: Element, b: Element) -> Element:
    ctx = context(pres)
    ctx.element_degree(a)
    ctx.element_degree(b)
    return ctx.mul(ctx.reduce_element(a), ctx.reduce_element(b))


def top_nonzero_degree(pres: AlgebraPresentation, probe_limit: Optional[int] = None) -> int:
    """Top internal degree of an Artinian quotient; NotArtinian otherwise.

    Vanishing on a stretch of length max generator degree forces vanishing
    everywhere above (a monomial of higher degree factors through the gap).
    """
    ctx = context(pres)
    if not pres.generators:
        return 0
    maxd = max(pres.abs_degree(i) for i in range(len(pres.generators)))
    limit = probe_limit if probe_limit is not None else _artinian_probe(pres)
    top = 0
    gap = 0
    n = 0
    while gap < maxd:
        n += 1
        if n > limit:
            raise NotArtinian(
                f"dimensions persist past probe bound {limit}; not Artinian within window"
            )
        if ctx.dim(n):
            top = n
            gap = 0
        else:
            gap += 1
    return top


def _artinian_probe(pres: AlgebraPresentation) -> int:
    bound = 0
    for i, g in enumerate(pres.generators):
        d = pres.abs_degree(i)
        cap = None
        if pres.field.p != 2 and pres.parity_bit(i):
            cap = d
        for rel in pres.relations:
            if len(rel) == 1:
                m, _ = rel[0]
                if m[i] and all(e == 0 for j, e in enumerate(m) if j != i):
                    c = (m[i] - 1) * d
                    cap = c if cap is None else min(cap, c)
        if cap is None:
            cap = 8 * d + 32  # no visible nilpotence; generous probe
        bound += cap
    return max(bound + 1, 48)


def socle(pres: AlgebraPresentation) -> List[Tuple[int, Element]]:
    """Basis of the annihilator of the maximal ideal (Artinian input only)."""
    ctx = context(pres)
    top = top_nonzero_degree(pres)
    out: List[Tuple[int, Element]] = []
    ngens = len(pres.generators)
    for n in range(top + 1):
        bas = ctx.basis(n)
        if not bas:
            continue
        if ngens == 0:
            out.append((pres.signed(n), {pres.unit: 1}))
            continue
        mats: List[List[Vec]] = []
        for i in range(ngens):
            g = pres.gen_monomial(pres.generators[i].name)
            tgt = ctx.degree_data(n + pres.abs_degree(i))
            mat: List[Vec] = []
            for m in bas:
                img = ctx.mono_mul(m, g)
                mat.append({tgt.basis_index[mm]: c for mm, c in img.items()})
            mats.append(mat)
        for combo in intersect_kernels(mats, len(bas), pres.field.p):
            elt = {bas[i]: c for i, c in sorted(combo.items())}
            out.append((pres.signed(n), elt))
    return out


# -- tensor-form classification --


@dataclass(frozen=True)
class TensorForm:
    poly: Tuple[int, ...]       # generator indices with free polynomial behaviour
    exterior: Tuple[int, ...]   # square-zero generators
    block: Tuple[int, ...]      # generators of the residual Artinian factor
    block_pres: Optional[AlgebraPresentation]

    def poly_degrees(self, pres: AlgebraPresentation) -> List[int]:
        return [pres.abs_degree(i) for i in self.poly]

    def exterior_degrees(self, pres: AlgebraPresentation) -> List[int]:
        return [pres.abs_degree(i) for i in self.exterior]


def _mentions(rel: FrozenPoly, i: int) -> bool:
    return any(m[i] for m, _ in rel)


def _is_square_relation(rel: FrozenPoly, i: int) -> bool:
    if len(rel) != 1:
        return False
    m, _ = rel[0]
    return m[i] == 2 and all(e == 0 for j, e in enumerate(m) if j != i)


def tensor_form(pres: AlgebraPresentation) -> TensorForm:
    """Split a presentation as polynomial ⊗ exterior ⊗ Artinian block.

    Raises NotTensorForm when relations tie a free generator to others.
    """
    p = pres.field.p
    poly: List[int] = []
    ext: List[int] = []
    block: List[int] = []
    consumed: set = set()
    for i in range(len(pres.generators)):
        mentioning = [r for r in pres.relations if _mentions(r, i)]
        if not mentioning:
            if p != 2 and pres.parity_bit(i):
                ext.append(i)
            else:
                poly.append(i)
        elif len(mentioning) == 1 and _is_square_relation(mentioning[0], i):
            ext.append(i)
            consumed.add(mentioning[0])
        else:
            block.append(i)
    block_rels = [r for r in pres.relations if r not in consumed]
    for r in block_rels:
        for i in poly + ext:
            if _mentions(r, i):
                raise NotTensorForm(
                    f"relation entangles generator {pres.generators[i].name} with the quotient block"
                )
    block_pres = None
    if block:
        keep = block
        remap = {old: new for new, old in enumerate(keep)}

        def project(m: Monomial) -> Monomial:
            return tuple(m[i] for i in keep)

        rels = []
        for r in block_rels:
            rels.append({project(m): c for m, c in r})
        block_pres = presentation(
            p,
            [(pres.generators[i].name, pres.generators[i].degree, pres.generators[i].parity) for i in keep],
            rels,
            pres.orientation,
        )
    elif block_rels:
        raise NotTensorForm("relations without generators")
    return TensorForm(tuple(poly), tuple(ext), tuple(block), block_pres)


def structural_shift(pres: AlgebraPresentation) -> int:
    """Σ(exterior degrees) − Σ(polynomial degrees + 1) + block socle degree."""
    form = tensor_form(pres)
    shift = sum(form.exterior_degrees(pres)) - sum(d + 1 for d in form.poly_degrees(pres))
    if form.block_pres is not None:
        try:
            soc = socle(form.block_pres)
        except NotArtinian as exc:
            raise NotTensorForm(f"residual block is not Artinian: {exc}") from exc
        if len(soc) != 1:
            raise NotTensorForm(
                f"Artinian block has socle dimension {len(soc)}; not a Poincaré duality factor"
            )
        shift += abs(soc[0][0])
    return shift
