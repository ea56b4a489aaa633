"""Zero-external-ancilla block adders.

The register is split into c blocks.  While one block is being added, every
other block is compressed, and the freed wires supply the ancilla the
carry-lookahead sub-adder needs.  Block carry-outs are parked on ancilla
inside blocks that stay compressed, chained into the next block's carry-in,
and finally cleared by re-running each sub-adder (inverse with carry-out,
then forward without) in reverse block order.

Feasibility uses exact per-step accounting: the ancilla generated by the
c - 1 compressed blocks must cover the sub-adder's worst case plus up to
c - 1 live carry slots.  The closed-form worst-case inequality
floor((c-1) * q / (g * c)) >= 2n/c + c - 1 (q = total register qubits,
g = qubits consumed per generated ancilla) selects c and is cross-checked
against the exact accounting.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import compress as cmp
from . import ir
from .ir import Circuit, Gate, Wire, swap
from .qubit_adders import (
    AdderSpec,
    AdderWiring,
    _emit_cla,
    ancilla_required,
    ancilla_required_plus_k,
)

MODE_AB = "a+b"
MODE_PLUS_K = "+k"


class InfeasiblePlan(ValueError):
    """Raised when a builder is asked to realize an infeasible plan."""


@dataclass(frozen=True)
class BlockPlan:
    """Block decomposition of one adder instance."""

    mode: str
    scheme: cmp.CompressionScheme
    n: int
    c: int

    @property
    def registers(self) -> int:
        return 2 if self.mode == MODE_AB else 1

    @property
    def block_bits(self) -> int:
        return self.n // self.c

    @property
    def block_wires(self) -> int:
        return self.registers * self.block_bits

    @property
    def blocks(self) -> list[list[int]]:
        size = self.block_wires
        return [list(range(j * size, (j + 1) * size)) for j in range(self.c)]

    def block_layout(self, j: int) -> cmp.CompressedLayout:
        return cmp.layout_block(self.blocks[j], self.scheme)

    @property
    def carry_slots(self) -> list[int]:
        """Carry slot for step j lives on block j's first generated ancilla."""
        return [self.block_layout(j).ancilla[0] for j in range(self.c - 1)]

    @property
    def ancilla_per_step(self) -> int:
        """Generated ancilla available while one block is decompressed."""
        return (self.c - 1) * (self.block_wires // self.scheme.m)

    @property
    def adder_ancilla(self) -> int:
        if self.mode == MODE_AB:
            return ancilla_required(self.block_bits)
        return ancilla_required_plus_k(self.block_bits)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "scheme": self.scheme.label,
            "n": self.n,
            "c": self.c,
            "blocks": self.blocks,
            "carry_slots": self.carry_slots,
        }


def worst_case_inequality(mode: str, scheme: cmp.CompressionScheme, n: int, c: int) -> bool:
    """Closed-form feasibility bound assuming worst-case ancilla demand 2n/c."""
    regs = 2 if mode == MODE_AB else 1
    lhs = ((c - 1) * regs * n) // (scheme.m * c)
    return lhs >= 2 * n // c + c - 1


def exact_accounting(plan: BlockPlan) -> bool:
    """Per-step check: pool covers the sub-adder plus all live carry slots."""
    return plan.ancilla_per_step >= plan.adder_ancilla + plan.c - 1


def plan_blocks(mode: str, scheme: cmp.CompressionScheme, n: int) -> BlockPlan | None:
    """Smallest feasible block count, or None when no c divides n and passes.

    Only c | n is supported; remainder blocks are rejected rather than
    planned.  A candidate must pass both the worst-case inequality and the
    exact per-step accounting.
    """
    if mode not in (MODE_AB, MODE_PLUS_K):
        raise ValueError(f"unknown mode {mode!r}")
    if n < 1:
        raise ValueError("register size must be >= 1")
    for c in range(2, n + 1):
        if n % c:
            continue
        if not worst_case_inequality(mode, scheme, n, c):
            continue
        plan = BlockPlan(mode, scheme, n, c)
        if exact_accounting(plan):
            return plan
    return None


# --- construction ----------------------------------------------------------

class _Builder:
    def __init__(self, plan: BlockPlan, carry_in: bool, carry_out: bool, k: int | None):
        self.plan = plan
        self.carry_in = carry_in
        self.carry_out = carry_out
        self.k = k
        if plan.mode == MODE_PLUS_K:
            if k is None:
                raise ValueError("+k mode requires the constant")
            if not 0 <= k < (1 << plan.n):
                raise ValueError(f"constant {k} out of range for {plan.n} bits")
        elif k is not None:
            raise ValueError("a+b mode takes no constant")
        if not exact_accounting(plan):
            raise InfeasiblePlan(
                f"plan (mode={plan.mode}, scheme={plan.scheme.label}, n={plan.n}, c={plan.c}) "
                f"provides {plan.ancilla_per_step} ancilla per step but needs "
                f"{plan.adder_ancilla + plan.c - 1}"
            )
        self.layouts = [plan.block_layout(j) for j in range(plan.c)]
        self.slots = plan.carry_slots
        n_reg = plan.registers * plan.n
        self.cin_wire = n_reg if carry_in else None
        self.cout_wire = n_reg + (1 if carry_in else 0) if carry_out else None

    def wires(self) -> list[Wire]:
        plan = self.plan
        dim = plan.scheme.y
        names = []
        for i in range(plan.n):
            if plan.mode == MODE_AB:
                names += [f"a{i + 1}", f"b{i + 1}"]
            else:
                names.append(f"b{i + 1}")
        out = [Wire(i, nm, dim) for i, nm in enumerate(names)]
        if self.carry_in:
            out.append(Wire(len(out), "cin", 2))
        if self.carry_out:
            out.append(Wire(len(out), "cout", 2))
        return out

    def new_circuit(self) -> Circuit:
        wires = self.wires()
        return ir.new_circuit(wires, input_bounds=(2,) * len(wires))

    def compress_gates(self, j: int) -> list[Gate]:
        gates: list[Gate] = []
        for orig, _, _ in self.layouts[j].groups:
            gates += cmp.group_gates(self.plan.scheme, orig)
        return gates

    def decompress_gates(self, j: int, dims) -> list[Gate]:
        return ir.invert_gates(self.compress_gates(j), dims)

    def pool(self, active: int, live_slots: int) -> list[int]:
        """Usable generated ancilla while block ``active`` is decompressed."""
        live = set(self.slots[:live_slots])
        out = []
        for j in range(self.plan.c):
            if j == active:
                continue
            out += [a for a in self.layouts[j].ancilla if a not in live]
        return sorted(out)

    def adder_gates(self, j: int, cin: int | None, cout: int | None, ancilla: list[int]) -> list[Gate]:
        plan = self.plan
        nb = plan.block_bits
        block = plan.blocks[j]
        spec = AdderSpec(nb, carry_in=cin is not None, carry_out=cout is not None)
        if plan.mode == MODE_AB:
            wiring = AdderWiring(tuple(block[0::2]), tuple(block[1::2]), cin, cout, tuple(ancilla))
            return _emit_cla(spec, wiring)
        k_j = (self.k >> (j * nb)) & ((1 << nb) - 1)  # type: ignore[operator]
        wiring = AdderWiring((), tuple(block), cin, cout, tuple(ancilla))
        return _emit_cla(spec, wiring, k=k_j)

    def forward_gates(self, dims) -> list[Gate]:
        plan = self.plan
        gates: list[Gate] = []
        for j in range(1, plan.c):
            gates += self.compress_gates(j)
        for j in range(plan.c):
            if j > 0:
                gates += self.decompress_gates(j, dims)
            cin = self.cin_wire if j == 0 else self.slots[j - 1]
            pool = self.pool(j, live_slots=j)
            internal = pool[: plan.adder_ancilla]
            if j < plan.c - 1:
                cout = pool[plan.adder_ancilla]
            else:
                cout = self.cout_wire
            gates += self.adder_gates(j, cin, cout, internal)
            if j < plan.c - 1:
                gates += self.compress_gates(j)
                gates.append(swap(cout, self.slots[j]))
        return gates

    def undo_gates(self, dims) -> list[Gate]:
        plan = self.plan
        gates: list[Gate] = []
        for j in range(plan.c - 2, -1, -1):
            gates += self.compress_gates(j + 1)
            pool = self.pool(j, live_slots=j)
            internal = pool[: plan.adder_ancilla]
            tmp = pool[plan.adder_ancilla]
            gates.append(swap(self.slots[j], tmp))
            gates += self.decompress_gates(j, dims)
            cin = self.cin_wire if j == 0 else self.slots[j - 1]
            gates += ir.invert_gates(self.adder_gates(j, cin, tmp, internal), dims)
            gates += self.adder_gates(j, cin, None, internal)
        return gates

    def final_gates(self, dims) -> list[Gate]:
        gates: list[Gate] = []
        for j in range(1, self.plan.c):
            gates += self.decompress_gates(j, dims)
        return gates

    def build(self) -> Circuit:
        circ = self.new_circuit()
        dims = circ.dims
        ir.extend(circ, self.forward_gates(dims))
        ir.extend(circ, self.undo_gates(dims))
        ir.extend(circ, self.final_gates(dims))
        return circ


def build_block_adder(plan: BlockPlan, carry_in: bool = False, carry_out: bool = False) -> Circuit:
    """The in-place A+B block adder over exactly 2n register wires."""
    if plan.mode != MODE_AB:
        raise ValueError(f"plan mode is {plan.mode!r}, expected {MODE_AB!r}")
    return _Builder(plan, carry_in, carry_out, None).build()


def build_block_plus_k(plan: BlockPlan, k: int, carry_in: bool = False, carry_out: bool = False) -> Circuit:
    """The in-place B += k block adder over exactly n register wires."""
    if plan.mode != MODE_PLUS_K:
        raise ValueError(f"plan mode is {plan.mode!r}, expected {MODE_PLUS_K!r}")
    return _Builder(plan, carry_in, carry_out, k).build()


def uncompute_carries(plan: BlockPlan, carry_in: bool = False, carry_out: bool = False, k: int | None = None) -> Circuit:
    """The carry-cleanup fragment alone, over the full wire set.

    Assumes the state left by the forward pass: every block summed, blocks
    other than the last compressed, carry slots holding the intermediate
    carry-outs.
    """
    b = _Builder(plan, carry_in, carry_out, k)
    circ = b.new_circuit()
    return ir.extend(circ, b.undo_gates(circ.dims))


# --- encode/decode helpers for oracles and the CLI -------------------------

def encode_input(plan: BlockPlan, b_value: int, a_value: int | None = None, cin: int | None = None,
                 carry_in: bool = False, carry_out: bool = False) -> list[int]:
    width = plan.registers * plan.n + int(carry_in) + int(carry_out)
    digits = [0] * width
    for i in range(plan.n):
        if plan.mode == MODE_AB:
            digits[2 * i] = (a_value >> i) & 1  # type: ignore[operator]
            digits[2 * i + 1] = (b_value >> i) & 1
        else:
            digits[i] = (b_value >> i) & 1
    if carry_in:
        digits[plan.registers * plan.n] = cin or 0
    return digits


def decode_output(plan: BlockPlan, digits, carry_in: bool = False, carry_out: bool = False):
    """Returns (a_value or None, sum_value, cout or None)."""
    a_val = None
    if plan.mode == MODE_AB:
        a_val = sum(int(digits[2 * i]) << i for i in range(plan.n))
        s_val = sum(int(digits[2 * i + 1]) << i for i in range(plan.n))
    else:
        s_val = sum(int(digits[i]) << i for i in range(plan.n))
    cout = None
    if carry_out:
        cout = int(digits[plan.registers * plan.n + int(carry_in)])
    return a_val, s_val, cout
