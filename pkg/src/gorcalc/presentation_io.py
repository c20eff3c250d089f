"""Text format for algebra presentations.

    char = 5
    orientation = connective
    [gen] v, 2, poly
    [gen] lam, 9, ext
    [rel] v^4
    [rel] v^2*lam + 3*v*lam*v   # comments allowed

Polynomials use `*`, `^`, `+` (and `-`) with integer coefficients.
The printer emits a canonical form that parses back to the same
presentation; `canonical_text` is the cache-hash input.
"""
from __future__ import annotations

import re
from typing import Dict, List, Optional, Tuple

from .errors import PresentationError
from .gradedalg import (
    CONNECTIVE,
    COCONNECTIVE,
    AlgebraPresentation,
    Element,
    Monomial,
    PrimeField,
    GeneratorSpec,
    freeze_poly,
    generator,
)

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9']*|\^|\*|\+|-)")


def parse_polynomial(text: str, pres: AlgebraPresentation) -> Element:
    """Parse a polynomial string into an element dict over free monomials."""
    tokens: List[str] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise PresentationError(f"cannot tokenize {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()

    idx = {g.name: i for i, g in enumerate(pres.generators)}
    ngens = len(pres.generators)
    p = pres.field.p
    out: Element = {}
    i = 0

    def take_term(sign: int) -> None:
        nonlocal i
        start = i
        coeff = 1
        expo = [0] * ngens
        while i < len(tokens):
            tok = tokens[i]
            if tok.isdigit():
                coeff *= int(tok)
                i += 1
            elif tok in idx:
                gi = idx[tok]
                i += 1
                e = 1
                if i < len(tokens) and tokens[i] == "^":
                    i += 1
                    if i >= len(tokens) or not tokens[i].isdigit():
                        raise PresentationError(f"missing exponent in {text!r}")
                    e = int(tokens[i])
                    i += 1
                expo[gi] += e
            elif tok in "+-":
                break
            else:
                raise PresentationError(f"unexpected token {tok!r} in {text!r}")
            if i < len(tokens) and tokens[i] == "*":
                i += 1
                continue
            break
        if i == start:
            raise PresentationError(f"empty term in {text!r}")
        mono: Monomial = tuple(expo)
        c = (out.get(mono, 0) + sign * coeff) % p
        if c:
            out[mono] = c
        else:
            out.pop(mono, None)

    sign = 1
    if i < len(tokens) and tokens[i] in "+-":
        sign = -1 if tokens[i] == "-" else 1
        i += 1
    take_term(sign)
    while i < len(tokens):
        tok = tokens[i]
        if tok not in "+-":
            raise PresentationError(f"expected + or - at {tok!r} in {text!r}")
        i += 1
        take_term(-1 if tok == "-" else 1)
    return out


def format_monomial(m: Monomial, pres: AlgebraPresentation) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(pres.generators[i].name)
        elif e > 1:
            parts.append(f"{pres.generators[i].name}^{e}")
    return "*".join(parts) if parts else "1"


def format_polynomial(poly: Element, pres: AlgebraPresentation) -> str:
    if not poly:
        return "0"
    parts = []
    for m, c in sorted(poly.items()):
        c %= pres.field.p
        if not c:
            continue
        body = format_monomial(m, pres)
        if body == "1":
            parts.append(str(c))
        elif c == 1:
            parts.append(body)
        else:
            parts.append(f"{c}*{body}")
    return " + ".join(parts)


def parse_presentation(text: str) -> AlgebraPresentation:
    char: Optional[int] = None
    orientation = CONNECTIVE
    gen_lines: List[Tuple[str, int, Optional[str]]] = []
    rel_lines: List[str] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[gen]"):
            fields = [f.strip() for f in line[len("[gen]"):].split(",")]
            if len(fields) not in (2, 3):
                raise PresentationError(f"bad generator line {raw!r}")
            name = fields[0]
            try:
                degree = int(fields[1])
            except ValueError:
                raise PresentationError(f"bad degree in {raw!r}")
            kind = fields[2] if len(fields) == 3 else None
            if kind not in (None, "poly", "ext"):
                raise PresentationError(f"bad generator kind {kind!r}")
            gen_lines.append((name, degree, kind))
        elif line.startswith("[rel]"):
            rel_lines.append(line[len("[rel]"):].strip())
        elif "=" in line:
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key == "char":
                char = int(value)
            elif key == "orientation":
                if value not in (CONNECTIVE, COCONNECTIVE):
                    raise PresentationError(f"bad orientation {value!r}")
                orientation = value
            else:
                raise PresentationError(f"unknown key {key!r}")
        else:
            raise PresentationError(f"cannot parse line {raw!r}")
    if char is None:
        raise PresentationError("missing 'char = <p>' line")
    field = PrimeField(char)
    gens = []
    for name, degree, kind in gen_lines:
        if kind is None:
            parity = "odd" if degree % 2 else "even"
        else:
            parity = "odd" if kind == "ext" else "even"
        gens.append(GeneratorSpec(name, degree, parity))
    shell = AlgebraPresentation(field, tuple(gens), (), orientation)
    rels = []
    for rtext in rel_lines:
        poly = parse_polynomial(rtext, shell)
        poly = {m: c % char for m, c in poly.items() if c % char}
        if poly:
            rels.append(freeze_poly(poly))
    return AlgebraPresentation(field, tuple(gens), tuple(rels), orientation)


def print_presentation(pres: AlgebraPresentation) -> str:
    lines = [f"char = {pres.field.p}", f"orientation = {pres.orientation}"]
    for g in pres.generators:
        kind = "ext" if g.parity == "odd" else "poly"
        lines.append(f"[gen] {g.name}, {g.degree}, {kind}")
    for rel in pres.relations:
        lines.append(f"[rel] {format_polynomial(dict(rel), pres)}")
    return "\n".join(lines) + "\n"


def canonical_text(pres: AlgebraPresentation) -> str:
    return print_presentation(pres)
