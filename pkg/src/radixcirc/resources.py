"""Resource reports and the 2-controlled gate cost model.

Gates are bucketed by (arity, dim class) where arity counts targets plus
controls and the dim class is the largest capacity among the wires a gate
touches.  A 2-controlled gate can be expanded into 6 two-qudit and 10
single-qudit gates; ``expand_cost_model`` applies that substitution to the
counts.  Depth is not remodeled by expansion, so expanded reports carry the
pre-expansion depth and say so.
"""
from __future__ import annotations

import io
import json
from dataclasses import dataclass, field, replace

from . import ir
from .ir import Circuit

TWO_CONTROLLED_EXPANSION = {2: 6, 1: 10}


@dataclass(frozen=True)
class ResourceReport:
    """Aggregate counts for one circuit.

    ``gate_counts`` maps (arity, dim_class) to a count.  ``depth_exact`` is
    False after cost-model expansion, when the stored depth describes the
    unexpanded circuit.  ``ancilla_generated`` is filled in by callers that
    know the plan (it cannot be read off the gate list).
    """

    width: int
    depth: int
    gate_counts: dict[tuple[int, int], int] = field(default_factory=dict)
    max_dim_touched: int = 0
    ancilla_generated: int | None = None
    depth_exact: bool = True

    @property
    def total_gates(self) -> int:
        return sum(self.gate_counts.values())

    def count_by_arity(self, arity: int) -> int:
        return sum(n for (a, _), n in self.gate_counts.items() if a == arity)

    def to_dict(self) -> dict:
        d = {
            "width": self.width,
            "depth": self.depth,
            "depth_exact": self.depth_exact,
            "total_gates": self.total_gates,
            "max_dim_touched": self.max_dim_touched,
            "gate_counts": [
                {"arity": a, "dim": dim, "count": n}
                for (a, dim), n in sorted(self.gate_counts.items())
            ],
        }
        if self.ancilla_generated is not None:
            d["ancilla_generated"] = self.ancilla_generated
        return d


def report(c: Circuit, ancilla_generated: int | None = None) -> ResourceReport:
    """Exact per-bucket gate counts plus depth and touched-dim maximum."""
    dims = c.dims
    counts: dict[tuple[int, int], int] = {}
    max_dim = 0
    for g in c.gates:
        dim_class = max(dims[w] for w in g.wires())
        max_dim = max(max_dim, dim_class)
        key = (g.arity, dim_class)
        counts[key] = counts.get(key, 0) + 1
    return ResourceReport(
        width=c.width,
        depth=ir.depth(c),
        gate_counts=counts,
        max_dim_touched=max_dim,
        ancilla_generated=ancilla_generated,
    )


def expand_cost_model(r: ResourceReport) -> ResourceReport:
    """Replace every 2-controlled gate by 6 two-qudit and 10 single-qudit gates.

    Counts with arity <= 2 pass through.  The depth field is kept as the
    pre-expansion value and marked inexact; idempotent once no arity-3
    buckets remain.
    """
    counts: dict[tuple[int, int], int] = {}
    expanded_any = False
    for (arity, dim), n in r.gate_counts.items():
        if arity == 3:
            expanded_any = True
            for new_arity, factor in TWO_CONTROLLED_EXPANSION.items():
                key = (new_arity, dim)
                counts[key] = counts.get(key, 0) + factor * n
        else:
            counts[(arity, dim)] = counts.get((arity, dim), 0) + n
    if not expanded_any:
        return r
    return replace(r, gate_counts=counts, depth_exact=False)


# --- serialization ---------------------------------------------------------

CSV_FIELDS = (
    "width",
    "depth",
    "depth_exact",
    "total_gates",
    "single_qudit",
    "two_qudit",
    "two_controlled",
    "max_dim_touched",
    "ancilla_generated",
)


def to_json(r: ResourceReport, indent: int | None = 2) -> str:
    return json.dumps(r.to_dict(), indent=indent)


def csv_header() -> str:
    return ",".join(CSV_FIELDS)


def to_csv_row(r: ResourceReport) -> str:
    anc = "" if r.ancilla_generated is None else str(r.ancilla_generated)
    vals = (
        r.width,
        r.depth,
        int(r.depth_exact),
        r.total_gates,
        r.count_by_arity(1),
        r.count_by_arity(2),
        r.count_by_arity(3),
        r.max_dim_touched,
        anc,
    )
    return ",".join(str(v) for v in vals)


def to_csv(reports: list[ResourceReport]) -> str:
    buf = io.StringIO()
    buf.write(csv_header() + "\n")
    for r in reports:
        buf.write(to_csv_row(r) + "\n")
    return buf.getvalue()
