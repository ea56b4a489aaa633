"""Mixed-radix reversible circuit IR.

A circuit is an ordered list of gates over dimensioned wires.  Gates are
classical-reversible primitives: flips (exchange two digit values),
increments (add k modulo the wire dimension) and swaps, each optionally
conditioned on up to two control wires holding specific digit values.

Circuits are treated as immutable once built; every function here is pure
except ``append_gate``, which mutates the circuit it was given during
construction and returns it for chaining.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

FLIP = "flip"
INCR = "incr"
SWAP = "swap"

_KINDS = (FLIP, INCR, SWAP)


class CircuitError(ValueError):
    """Raised when a wire, gate or circuit invariant is violated."""


@dataclass(frozen=True)
class Wire:
    """A device line with capacity ``dim`` (the number of usable levels)."""

    id: int
    name: str
    dim: int

    def __post_init__(self):
        if self.dim < 2:
            raise CircuitError(f"wire {self.name!r}: dim must be >= 2, got {self.dim}")


@dataclass(frozen=True)
class Gate:
    """A primitive gate: kind, 1-2 targets, kind parameters, 0-2 controls.

    ``params`` is ``(i, j)`` for a flip, ``(k,)`` for an increment and empty
    for a swap.  ``controls`` is a tuple of ``(wire_id, value)`` pairs; the
    gate acts only on basis states where every control wire holds its value.
    """

    kind: str
    targets: tuple[int, ...]
    params: tuple[int, ...] = ()
    controls: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise CircuitError(f"unknown gate kind {self.kind!r}")
        n_targets = 2 if self.kind == SWAP else 1
        if len(self.targets) != n_targets:
            raise CircuitError(f"{self.kind} takes {n_targets} target(s), got {len(self.targets)}")
        n_params = {FLIP: 2, INCR: 1, SWAP: 0}[self.kind]
        if len(self.params) != n_params:
            raise CircuitError(f"{self.kind} takes {n_params} param(s), got {len(self.params)}")
        if len(self.controls) > 2:
            raise CircuitError("at most 2 controls are supported")
        touched = list(self.targets) + [w for w, _ in self.controls]
        if len(set(touched)) != len(touched):
            raise CircuitError(f"targets and control wires must be pairwise distinct: {touched}")

    @property
    def arity(self) -> int:
        return len(self.targets) + len(self.controls)

    def wires(self) -> tuple[int, ...]:
        """All wire ids the gate touches (targets then controls)."""
        return self.targets + tuple(w for w, _ in self.controls)


def flip(target: int, i: int, j: int, controls: Iterable[tuple[int, int]] = ()) -> Gate:
    return Gate(FLIP, (target,), (i, j), tuple(controls))


def incr(target: int, k: int, controls: Iterable[tuple[int, int]] = ()) -> Gate:
    return Gate(INCR, (target,), (k,), tuple(controls))


def swap(t0: int, t1: int, controls: Iterable[tuple[int, int]] = ()) -> Gate:
    return Gate(SWAP, (t0, t1), (), tuple(controls))


def x(target: int, controls: Iterable[tuple[int, int]] = ()) -> Gate:
    """Binary NOT: flip of levels 0 and 1."""
    return flip(target, 0, 1, controls)


def cx(control: int, target: int) -> Gate:
    """Binary CNOT."""
    return flip(target, 0, 1, ((control, 1),))


def ccx(c0: int, c1: int, target: int) -> Gate:
    """Binary Toffoli."""
    return flip(target, 0, 1, ((c0, 1), (c1, 1)))


@dataclass
class Circuit:
    """Ordered gates over a fixed wire list.

    ``input_bounds`` declares the per-wire input alphabet the circuit is
    meant to accept (e.g. binary inputs on capacity-3 wires); it defaults to
    the wire dimensions and is metadata for verification harnesses, not a
    gate-level constraint.
    """

    wires: tuple[Wire, ...]
    gates: list[Gate] = field(default_factory=list)
    input_bounds: tuple[int, ...] = ()

    def __post_init__(self):
        ids = [w.id for w in self.wires]
        if ids != list(range(len(self.wires))):
            raise CircuitError(f"wire ids must be contiguous from 0, got {ids}")
        if not self.input_bounds:
            self.input_bounds = tuple(w.dim for w in self.wires)
        if len(self.input_bounds) != len(self.wires):
            raise CircuitError("input_bounds length must match wire count")
        for b, w in zip(self.input_bounds, self.wires):
            if not 2 <= b <= w.dim:
                raise CircuitError(f"input bound {b} invalid for wire {w.name!r} (dim {w.dim})")

    @property
    def width(self) -> int:
        return len(self.wires)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(w.dim for w in self.wires)

    def validate_gate(self, g: Gate) -> None:
        dims = self.dims
        for w in g.wires():
            if not 0 <= w < self.width:
                raise CircuitError(f"gate touches unknown wire {w}")
        for w, v in g.controls:
            if not 0 <= v < dims[w]:
                raise CircuitError(f"control value {v} out of range for wire {w} (dim {dims[w]})")
        if g.kind == FLIP:
            i, j = g.params
            d = dims[g.targets[0]]
            if i == j or not (0 <= i < d and 0 <= j < d):
                raise CircuitError(f"flip({i},{j}) invalid on wire of dim {d}")
        elif g.kind == INCR:
            (k,) = g.params
            d = dims[g.targets[0]]
            if not 0 < k < d:
                raise CircuitError(f"incr({k}) invalid on wire of dim {d}")
        else:  # SWAP
            d0, d1 = dims[g.targets[0]], dims[g.targets[1]]
            if d0 != d1:
                raise CircuitError(f"swap requires equal dims, got {d0} and {d1}")


def new_circuit(wires: Sequence[Wire], input_bounds: Sequence[int] = ()) -> Circuit:
    return Circuit(tuple(wires), [], tuple(input_bounds))


def binary_wires(names: Sequence[str], dim: int = 2) -> list[Wire]:
    """Wires with binary input interface on capacity-``dim`` devices."""
    return [Wire(i, n, dim) for i, n in enumerate(names)]


def append_gate(c: Circuit, g: Gate) -> Circuit:
    c.validate_gate(g)
    c.gates.append(g)
    return c


def extend(c: Circuit, gates: Iterable[Gate]) -> Circuit:
    for g in gates:
        append_gate(c, g)
    return c


def invert_gate(g: Gate, dims: Sequence[int]) -> Gate:
    """Inverse of a single gate: increments become d-k, flips/swaps are self-inverse."""
    if g.kind == INCR:
        d = dims[g.targets[0]]
        return Gate(INCR, g.targets, (d - g.params[0],), g.controls)
    return g


def invert_gates(gates: Sequence[Gate], dims: Sequence[int]) -> list[Gate]:
    return [invert_gate(g, dims) for g in reversed(gates)]


def inverse(c: Circuit) -> Circuit:
    """Gates in reverse order with each +k increment replaced by +(d-k)."""
    out = new_circuit(c.wires, c.input_bounds)
    return extend(out, invert_gates(c.gates, c.dims))


def concat(a: Circuit, b: Circuit) -> Circuit:
    if a.wires != b.wires:
        raise CircuitError("concat requires identical wire lists")
    out = new_circuit(a.wires, a.input_bounds)
    out.gates = list(a.gates) + list(b.gates)
    return out


def depth(c: Circuit) -> int:
    """ASAP layering; controls occupy their wires like targets."""
    level = [0] * c.width
    d = 0
    for g in c.gates:
        layer = 1 + max(level[w] for w in g.wires())
        for w in g.wires():
            level[w] = layer
        d = max(d, layer)
    return d


# --- JSON interchange ---------------------------------------------------

def circuit_to_dict(c: Circuit) -> dict:
    return {
        "wires": [{"name": w.name, "dim": w.dim} for w in c.wires],
        "gates": [
            {
                "kind": g.kind,
                "targets": list(g.targets),
                "params": list(g.params),
                "controls": [{"wire": w, "value": v} for w, v in g.controls],
            }
            for g in c.gates
        ],
    }


def circuit_from_dict(d: dict) -> Circuit:
    wires = [Wire(i, w["name"], w["dim"]) for i, w in enumerate(d["wires"])]
    c = new_circuit(wires)
    for g in d["gates"]:
        controls = tuple((ct["wire"], ct["value"]) for ct in g.get("controls", []))
        append_gate(c, Gate(g["kind"], tuple(g["targets"]), tuple(g["params"]), controls))
    return c


def dumps(c: Circuit, indent: int | None = None) -> str:
    return json.dumps(circuit_to_dict(c), indent=indent)


def loads(s: str) -> Circuit:
    return circuit_from_dict(json.loads(s))
