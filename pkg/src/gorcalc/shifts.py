"""Constraint solver over shift ledgers.

A ledger carries named rings and typed relations, each of which is one
linear equation over the Gorenstein shifts:

    cofibre S R Q      shift(R) = shift(S) + shift(Q)     (ascent)
    relative S R m     shift(S) = shift(R) + m            (Hom_S(R,S) = Σ^m R)
    thh C T p=<prime>  shift(T) = -shift(C) - 3           (descent to THH(C;k))
    node N shift=a     declared Gorenstein shift
    axiom N a "note"   declared shift with provenance

The solver keeps every derivable value per node together with its
derivation, so the assignment and the conflict set are independent of
propagation order.  A node with two distinct derived values is a
conflict; the conflicting derivation paths are the output.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InconsistentLedger, LedgerFormatError

_VALUE_CAP = 8  # per node; cyclic contradictory ledgers stay finite


@dataclass(frozen=True)
class ShiftLedger:
    nodes: Tuple[str, ...] = ()
    gorenstein: Tuple[Tuple[str, int], ...] = ()
    cofibres: Tuple[Tuple[str, str, str], ...] = ()
    relatives: Tuple[Tuple[str, str, int], ...] = ()
    thh: Tuple[Tuple[str, str, int], ...] = ()  # (C, result, prime)
    axioms: Tuple[Tuple[str, int, str], ...] = ()

    def all_names(self) -> List[str]:
        names = set(self.nodes)
        names.update(n for n, _ in self.gorenstein)
        for s, r, q in self.cofibres:
            names.update((s, r, q))
        for s, r, _ in self.relatives:
            names.update((s, r))
        for c, t, _ in self.thh:
            names.update((c, t))
        names.update(n for n, _, _ in self.axioms)
        return sorted(names)

    def merge(self, other: "ShiftLedger") -> "ShiftLedger":
        def uniq(seq):
            out = []
            for x in seq:
                if x not in out:
                    out.append(x)
            return tuple(out)

        return ShiftLedger(
            nodes=uniq(self.nodes + other.nodes),
            gorenstein=uniq(self.gorenstein + other.gorenstein),
            cofibres=uniq(self.cofibres + other.cofibres),
            relatives=uniq(self.relatives + other.relatives),
            thh=uniq(self.thh + other.thh),
            axioms=uniq(self.axioms + other.axioms),
        )


@dataclass(frozen=True)
class Derivation:
    rule: str
    premises: Tuple[Tuple[str, int], ...]

    def describe(self, node: str, value: int) -> str:
        if not self.premises:
            return f"shift({node}) = {value}   [{self.rule}]"
        prem = ", ".join(f"shift({n}) = {v}" for n, v in self.premises)
        return f"shift({node}) = {value}   [{self.rule}; from {prem}]"


@dataclass(frozen=True)
class SolveResult:
    assignments: Dict[str, int]
    unresolved: Tuple[str, ...]
    conflicts: Tuple[dict, ...]
    trace: Tuple[str, ...]

    @property
    def consistent(self) -> bool:
        return not self.conflicts

    def to_json(self) -> dict:
        return {
            "assignments": dict(sorted(self.assignments.items())),
            "unresolved": list(self.unresolved),
            "conflicts": list(self.conflicts),
            "consistent": self.consistent,
            "trace": list(self.trace),
        }

    def proof_markdown(self) -> str:
        lines = ["| node | shift | derivation |", "| --- | --- | --- |"]
        for name in sorted(self.assignments):
            lines.append(f"| {name} | {self.assignments[name]} | {self._first_trace(name)} |")
        for c in self.conflicts:
            vals = "; ".join(str(v["value"]) for v in c["values"])
            lines.append(f"| {c['node']} | CONFLICT ({vals}) | see trace |")
        for name in self.unresolved:
            lines.append(f"| {name} | ? | unresolved |")
        return "\n".join(lines)

    def _first_trace(self, name: str) -> str:
        for line in self.trace:
            if line.startswith(f"shift({name}) ="):
                return line.split("[", 1)[1].rstrip("]")
        return ""


def thh_descent_shift(a: int) -> int:
    """Shift of THH(C;k) over a characteristic-p field when C has shift a."""
    return -a - 3


def thh_general_descent(shift_thh_b: int, shift_a: int) -> int:
    """Descent along a cofibre sequence: the shifts add."""
    return shift_thh_b + shift_a


def solve(ledger: ShiftLedger, strict: bool = False) -> SolveResult:
    values: Dict[str, Dict[int, Derivation]] = {n: {} for n in ledger.all_names()}

    def put(node: str, value: int, der: Derivation) -> bool:
        vals = values.setdefault(node, {})
        if value in vals or len(vals) >= _VALUE_CAP:
            return False
        vals[value] = der
        return True

    for name, v in ledger.gorenstein:
        put(name, v, Derivation("declared", ()))
    for name, v, note in ledger.axioms:
        put(name, v, Derivation(f"axiom: {note}", ()))

    changed = True
    while changed:
        changed = False
        for s, r, q in ledger.cofibres:
            rule = f"cofibre {s} -> {r} -> {q}"
            for vs, ds in sorted(values.get(s, {}).items()):
                for vq in sorted(values.get(q, {})):
                    changed |= put(r, vs + vq, Derivation(rule, ((s, vs), (q, vq))))
            for vr in sorted(values.get(r, {})):
                for vq in sorted(values.get(q, {})):
                    changed |= put(s, vr - vq, Derivation(rule, ((r, vr), (q, vq))))
                for vs in sorted(values.get(s, {})):
                    changed |= put(q, vr - vs, Derivation(rule, ((r, vr), (s, vs))))
        for s, r, m in ledger.relatives:
            rule = f"relative {s} {r} {m}"
            for vr in sorted(values.get(r, {})):
                changed |= put(s, vr + m, Derivation(rule, ((r, vr),)))
            for vs in sorted(values.get(s, {})):
                changed |= put(r, vs - m, Derivation(rule, ((s, vs),)))
        for c, t, p in ledger.thh:
            rule = f"thh descent over F_{p}"
            for vc in sorted(values.get(c, {})):
                changed |= put(t, -vc - 3, Derivation(rule, ((c, vc),)))
            for vt in sorted(values.get(t, {})):
                changed |= put(c, -vt - 3, Derivation(rule, ((t, vt),)))

    assignments: Dict[str, int] = {}
    conflicts: List[dict] = []
    unresolved: List[str] = []
    trace: List[str] = []
    for name in sorted(values):
        vals = values[name]
        if not vals:
            unresolved.append(name)
        elif len(vals) == 1:
            v, der = next(iter(vals.items()))
            assignments[name] = v
            trace.append(der.describe(name, v))
        else:
            conflicts.append(
                {
                    "node": name,
                    "values": [
                        {"value": v, "derivation": der.describe(name, v)}
                        for v, der in sorted(vals.items())
                    ],
                }
            )
            for v, der in sorted(vals.items()):
                trace.append("CONFLICT " + der.describe(name, v))
    result = SolveResult(assignments, tuple(unresolved), tuple(conflicts), tuple(trace))
    if strict and conflicts:
        raise InconsistentLedger(
            "; ".join(c["node"] for c in conflicts)
        )
    return result


# -- ledger text format --


def parse_ledger(text: str) -> ShiftLedger:
    nodes: List[str] = []
    gorenstein: List[Tuple[str, int]] = []
    cofibres: List[Tuple[str, str, str]] = []
    relatives: List[Tuple[str, str, int]] = []
    thh: List[Tuple[str, str, int]] = []
    axioms: List[Tuple[str, int, str]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        try:
            if kind == "node":
                name = parts[1]
                nodes.append(name)
                if len(parts) == 3 and parts[2].startswith("shift="):
                    gorenstein.append((name, int(parts[2][len("shift="):])))
                elif len(parts) > 2:
                    raise LedgerFormatError(f"bad node line {raw!r}")
            elif kind == "cofibre":
                _, s, r, q = parts
                cofibres.append((s, r, q))
            elif kind == "relative":
                _, s, r, m = parts
                relatives.append((s, r, int(m)))
            elif kind == "thh":
                _, c, t, pspec = parts
                if not pspec.startswith("p="):
                    raise LedgerFormatError(f"thh line needs p=<prime>: {raw!r}")
                thh.append((c, t, int(pspec[len("p="):])))
            elif kind == "axiom":
                name = parts[1]
                value = int(parts[2])
                note = ""
                if '"' in line:
                    note = line.split('"', 1)[1].rstrip().rstrip('"')
                axioms.append((name, value, note))
            else:
                raise LedgerFormatError(f"unknown ledger line {raw!r}")
        except (ValueError, IndexError) as exc:
            raise LedgerFormatError(f"cannot parse ledger line {raw!r}") from exc
    return ShiftLedger(
        nodes=tuple(nodes),
        gorenstein=tuple(gorenstein),
        cofibres=tuple(cofibres),
        relatives=tuple(relatives),
        thh=tuple(thh),
        axioms=tuple(axioms),
    )


def print_ledger(ledger: ShiftLedger) -> str:
    lines = []
    declared = dict(ledger.gorenstein)
    for n in ledger.nodes:
        if n in declared:
            lines.append(f"node {n} shift={declared[n]}")
        else:
            lines.append(f"node {n}")
    for name, v in ledger.gorenstein:
        if name not in ledger.nodes:
            lines.append(f"node {name} shift={v}")
    for s, r, q in ledger.cofibres:
        lines.append(f"cofibre {s} {r} {q}")
    for s, r, m in ledger.relatives:
        lines.append(f"relative {s} {r} {m}")
    for c, t, p in ledger.thh:
        lines.append(f"thh {c} {t} p={p}")
    for name, v, note in ledger.axioms:
        lines.append(f'axiom {name} {v} "{note}"')
    return "\n".join(lines) + "\n"
