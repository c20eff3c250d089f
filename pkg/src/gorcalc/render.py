"""Report assembly: versioned JSON documents, markdown tables, text charts.

Reports are byte-identical across runs for identical inputs: keys are
sorted, orderings are stable, and nothing timestamps itself.
"""
from __future__ import annotations

import json
from typing import Dict, Iterable, List, Optional, Tuple

SCHEMA = "gorcalc-report/1"


def report(kind: str, inputs: dict, result: dict) -> dict:
    return {"schema": SCHEMA, "kind": kind, "inputs": inputs, "result": result}


def to_json_str(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def dims_table_markdown(entries: Iterable[Tuple[int, int, int]], row="s", col="t") -> str:
    lines = [f"| {row} | {col} | dim |", "| --- | --- | --- |"]
    for s, t, v in entries:
        lines.append(f"| {s} | {t} | {v} |")
    return "\n".join(lines)


def totals_markdown(totals: Dict[int, int], label="degree") -> str:
    lines = [f"| {label} | dim |", "| --- | --- |"]
    for n in sorted(totals):
        lines.append(f"| {n} | {totals[n]} |")
    return "\n".join(lines)


def chart(
    dims: Dict[Tuple[int, int], int],
    s_max: Optional[int] = None,
    t_max: Optional[int] = None,
    unreliable: Iterable[Tuple[int, int]] = (),
) -> str:
    """Monospace bigraded chart, t increasing upwards, s rightwards.

    Cells show the dimension (dot for zero); unreliable bidegrees are
    bracketed.
    """
    if not dims and s_max is None:
        return "(empty chart)"
    smax = s_max if s_max is not None else max(s for s, _ in dims)
    tmax = t_max if t_max is not None else max(t for _, t in dims)
    unrel = set(unreliable)
    width = max([3] + [len(str(v)) + 2 for v in dims.values()])
    lines = []
    for t in range(tmax, -1, -1):
        cells = []
        for s in range(smax + 1):
            v = dims.get((s, t), 0)
            body = "." if not v else str(v)
            if (s, t) in unrel:
                body = f"[{body}]"
            cells.append(body.rjust(width))
        lines.append(f"t={t:<3d}|" + "".join(cells))
    footer = "     +" + "-" * (width * (smax + 1))
    slabels = "      " + "".join(str(s).rjust(width) for s in range(smax + 1))
    lines.append(footer)
    lines.append(slabels)
    return "\n".join(lines)


def functional_equation_markdown(rows: List[dict]) -> str:
    """Rows: series, r, epsilon, e, paper_a, ext shift, discrepancy."""
    lines = [
        "| series | r | epsilon | e | paper_a | ext_shift | paper_a - shift |",
        "| --- | --- | --- | --- | --- | --- | --- |",
    ]
    for row in rows:
        disc = ""
        if row.get("ext_shift") is not None and row.get("paper_a") is not None:
            disc = str(row["paper_a"] - row["ext_shift"])
        lines.append(
            "| {series} | {r} | {epsilon} | {e} | {paper_a} | {shift} | {disc} |".format(
                series=row.get("series", ""),
                r=row.get("r", ""),
                epsilon=row.get("epsilon", ""),
                e=row.get("e", ""),
                paper_a=row.get("paper_a", ""),
                shift=row.get("ext_shift", ""),
                disc=disc,
            )
        )
    return "\n".join(lines)


def corpus_markdown(results: List[dict]) -> str:
    lines = [
        "| entry | status | checks | outcome |",
        "| --- | --- | --- | --- |",
    ]
    for r in results:
        checks = ", ".join(
            f"{c['name']}:{'pass' if c['ok'] else 'FAIL'}" for c in r["checks"]
        ) or "(none)"
        lines.append(
            f"| {r['name']} | {r['status']} | {checks} | "
            f"{'pass' if r['ok'] else 'FAIL'} |"
        )
    return "\n".join(lines)
