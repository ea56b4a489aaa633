"""Binary in-place sub-adders.

Three builders share one contract (B' = A + B + c_in mod 2^n in place, A
preserved, supplied ancilla restored to 0, optional carry-out on a separate
zero-initialized interface wire):

* ``build_cla_adder`` - carry-lookahead with a Brent-Kung style prefix tree
  over generate/propagate bits, O(log n) depth, using at most
  2n - w(n) - floor(log2 n) ancilla.
* ``build_plus_k`` - the same structure with the A register deleted; gates
  controlled on a_i are dropped (k_i = 0) or demoted (k_i = 1).
* ``build_ripple_adder`` - O(n) depth, zero ancilla, for sizes where block
  compression is infeasible.

All gates emitted here are binary (flips of levels 0/1 with value-1
controls), so the builders are safe on wires of any capacity >= 2.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import ir
from .ir import Circuit, Gate, Wire, ccx, cx, x


def ancilla_required(m: int) -> int:
    """Worst-case ancilla of the carry-lookahead adder: 2m - w(m) - floor(log2 m)."""
    if m < 1:
        raise ValueError("register size must be >= 1")
    return 2 * m - m.bit_count() - (m.bit_length() - 1)


def ancilla_required_plus_k(m: int) -> int:
    """Worst-case ancilla of the constant adder: one less than the A+B bound."""
    return ancilla_required(m) - 1


def tree_ancilla(m: int) -> int:
    """Internal propagate-tree nodes of a size-m carry network."""
    if m < 1:
        return 0
    return sum(max(0, (m >> t) - 1) for t in range(1, m.bit_length()))


@dataclass(frozen=True)
class AdderSpec:
    n: int
    carry_in: bool = False
    carry_out: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("register size must be >= 1")


@dataclass(frozen=True)
class AdderWiring:
    """Wire ids for an adder embedded in a host circuit, LSB first."""

    a: tuple[int, ...]
    b: tuple[int, ...]
    carry_in: int | None = None
    carry_out: int | None = None
    ancilla: tuple[int, ...] = ()

    def __post_init__(self):
        wires = list(self.a) + list(self.b) + list(self.ancilla)
        if self.carry_in is not None:
            wires.append(self.carry_in)
        if self.carry_out is not None:
            wires.append(self.carry_out)
        if len(set(wires)) != len(wires):
            raise ValueError("adder wiring has colliding wires")


def _check_wiring(spec: AdderSpec, w: AdderWiring, need_a: bool, min_ancilla: int) -> None:
    if need_a and len(w.a) != spec.n:
        raise ValueError(f"A register must have {spec.n} wires, got {len(w.a)}")
    if len(w.b) != spec.n:
        raise ValueError(f"B register must have {spec.n} wires, got {len(w.b)}")
    if spec.carry_in and w.carry_in is None:
        raise ValueError("spec requires a carry-in wire")
    if spec.carry_out and w.carry_out is None:
        raise ValueError("spec requires a carry-out wire")
    if len(w.ancilla) < min_ancilla:
        raise ValueError(f"insufficient ancilla: need {min_ancilla}, got {len(w.ancilla)}")


# --- carry network -------------------------------------------------------

def _network_gates(m: int, p: dict[int, int], g: list[int | None], pool: list[int]) -> list[Gate]:
    """Prefix-carry rounds over positions 1..m.

    ``p[i]`` holds the propagate bit of position i (1-indexed, 1..m-1 used);
    ``g[i]`` holds the generate of position i-1 on entry and the carry into
    position i on exit.  Tree nodes are drawn from ``pool`` and are restored
    to 0 by the trailing inverse propagate rounds.
    """
    if m < 2:
        return []
    levels = m.bit_length() - 1
    node: dict[tuple[int, int], int] = {(0, i): p[i] for i in range(1, m)}
    alloc = iter(pool)
    p_rounds: list[Gate] = []
    for t in range(1, levels + 1):
        for mm in range(1, (m >> t)):
            node[(t, mm)] = next(alloc)
            p_rounds.append(ccx(node[(t - 1, 2 * mm)], node[(t - 1, 2 * mm + 1)], node[(t, mm)]))
    g_rounds: list[Gate] = []
    for t in range(1, levels + 1):
        for mm in range(m >> t):
            g_rounds.append(ccx(g[(mm << t) + (1 << (t - 1))], node[(t - 1, 2 * mm + 1)], g[(mm + 1) << t]))
    c_rounds: list[Gate] = []
    top = (2 * m // 3).bit_length() - 1
    for t in range(top, 0, -1):
        for mm in range(1, ((m - (1 << (t - 1))) >> t) + 1):
            c_rounds.append(ccx(g[mm << t], node[(t - 1, 2 * mm)], g[(mm << t) + (1 << (t - 1))]))
    return p_rounds + g_rounds + c_rounds + [gate for gate in reversed(p_rounds)]


def _emit_cla(spec: AdderSpec, w: AdderWiring, k: int | None = None) -> list[Gate]:
    """Carry-lookahead gate list; when ``k`` is given the A register is the
    constant k and a-controlled gates are specialized away."""
    n = spec.n
    plus_k = k is not None

    def k_bit(i: int) -> int:
        return (k >> i) & 1  # type: ignore[operator]

    def gen(i: int, target: int) -> list[Gate]:
        """generate of position i into target: a_i AND b_i."""
        if plus_k:
            return [cx(w.b[i], target)] if k_bit(i) else []
        return [ccx(w.a[i], w.b[i], target)]

    def prop(i: int) -> list[Gate]:
        """fold a_i into b_i (propagate)."""
        if plus_k:
            return [x(w.b[i])] if k_bit(i) else []
        return [cx(w.a[i], w.b[i])]

    m_fwd = n if spec.carry_out else n - 1
    z: list[int | None] = [None] + list(w.ancilla[: n - 1])
    if spec.carry_out:
        z.append(w.carry_out)
    pool = list(w.ancilla[n - 1 :])

    gates: list[Gate] = []
    # generate and propagate layers
    for i in range(m_fwd):
        gates += gen(i, z[i + 1])
    for i in range(n):
        gates += prop(i)
    fold = [ccx(w.carry_in, w.b[0], z[1])] if (spec.carry_in and m_fwd >= 1) else []
    gates += fold
    # carry tree: z[i] becomes the carry into position i
    gates += _network_gates(m_fwd, {i: w.b[i] for i in range(1, m_fwd)}, z, pool)
    # sum layer
    for i in range(1, n):
        gates.append(cx(z[i], w.b[i]))
    if spec.carry_in:
        gates.append(cx(w.carry_in, w.b[0]))

    if n < 2:
        return gates

    # Uncompute carries z[1..n-1] from (A, S) via the borrow network:
    # the borrows of S - A - c_in equal the carries just used, with
    # generate a_i AND NOT s_i and propagate NOT (a_i XOR s_i).
    for i in range(n - 1):
        gates += prop(i)
        gates.append(x(w.b[i]))
    m_und = n - 1
    und_fold = [ccx(w.carry_in, w.b[0], z[1])] if spec.carry_in else []
    und_net = und_fold + _network_gates(m_und, {i: w.b[i] for i in range(1, m_und)}, z, pool)
    gates += [gate for gate in reversed(und_net)]  # all self-inverse
    for i in range(n - 1):
        gates += prop(i)
    for i in range(n - 1):
        gates += gen(i, z[i + 1])
    for i in range(n - 1):
        gates.append(x(w.b[i]))
    return gates


# --- ripple fallback ------------------------------------------------------

def _emit_ripple(spec: AdderSpec, w: AdderWiring) -> list[Gate]:
    n = spec.n
    gates: list[Gate] = []
    if spec.carry_in:
        # majority/unmajority ripple chain seeded by the carry-in wire
        chain = [w.carry_in] + list(w.a)

        def maj(x0: int, y: int, z0: int) -> list[Gate]:
            return [cx(z0, y), cx(z0, x0), ccx(x0, y, z0)]

        def uma(x0: int, y: int, z0: int) -> list[Gate]:
            return [ccx(x0, y, z0), cx(z0, x0), cx(x0, y)]

        for i in range(n):
            gates += maj(chain[i], w.b[i], w.a[i])
        if spec.carry_out:
            gates.append(cx(w.a[n - 1], w.carry_out))
        for i in range(n - 1, -1, -1):
            gates += uma(chain[i], w.b[i], w.a[i])
        return gates

    # No carry-in: carry ladder rippled through the A register itself.
    if n == 1:
        if spec.carry_out:
            gates.append(ccx(w.a[0], w.b[0], w.carry_out))
        gates.append(cx(w.a[0], w.b[0]))
        return gates
    for i in range(1, n):
        gates.append(cx(w.a[i], w.b[i]))
    if spec.carry_out:
        gates.append(cx(w.a[n - 1], w.carry_out))
    for i in range(n - 2, 0, -1):
        gates.append(cx(w.a[i], w.a[i + 1]))
    for i in range(n - 1):
        gates.append(ccx(w.a[i], w.b[i], w.a[i + 1]))
    if spec.carry_out:
        gates.append(ccx(w.a[n - 1], w.b[n - 1], w.carry_out))
    for i in range(n - 1, 0, -1):
        gates.append(cx(w.a[i], w.b[i]))
        gates.append(ccx(w.a[i - 1], w.b[i - 1], w.a[i]))
    for i in range(1, n - 1):
        gates.append(cx(w.a[i], w.a[i + 1]))
    for i in range(n):
        gates.append(cx(w.a[i], w.b[i]))
    return gates


# --- public builders -------------------------------------------------------

@dataclass
class BuiltAdder:
    """A standalone adder circuit plus the wiring that locates its registers."""

    circuit: Circuit
    wiring: AdderWiring


def _canonical(spec: AdderSpec, n_a: int, n_ancilla: int, dim: int = 2) -> tuple[Circuit, AdderWiring]:
    names: list[str] = [f"a{i + 1}" for i in range(n_a)] + [f"b{i + 1}" for i in range(spec.n)]
    if spec.carry_in:
        names.append("cin")
    if spec.carry_out:
        names.append("cout")
    names += [f"z{i + 1}" for i in range(n_ancilla)]
    wires = [Wire(i, nm, dim) for i, nm in enumerate(names)]
    circ = ir.new_circuit(wires, input_bounds=(2,) * len(wires))
    pos = n_a + spec.n
    cin = pos if spec.carry_in else None
    pos += spec.carry_in
    cout = pos if spec.carry_out else None
    pos += spec.carry_out
    wiring = AdderWiring(
        a=tuple(range(n_a)),
        b=tuple(range(n_a, n_a + spec.n)),
        carry_in=cin,
        carry_out=cout,
        ancilla=tuple(range(pos, pos + n_ancilla)),
    )
    return circ, wiring


def build_cla_adder(spec: AdderSpec, wiring: AdderWiring | None = None, circuit: Circuit | None = None) -> BuiltAdder:
    """Log-depth in-place adder.  With no wiring, a canonical circuit is laid
    out as a, b, carries, then exactly ``ancilla_required(n)`` ancilla."""
    if wiring is None:
        circuit, wiring = _canonical(spec, spec.n, ancilla_required(spec.n))
    elif circuit is None:
        raise ValueError("explicit wiring requires the host circuit")
    _check_wiring(spec, wiring, need_a=True, min_ancilla=ancilla_required(spec.n))
    ir.extend(circuit, _emit_cla(spec, wiring))
    return BuiltAdder(circuit, wiring)


def build_plus_k(spec: AdderSpec, k: int, wiring: AdderWiring | None = None, circuit: Circuit | None = None) -> BuiltAdder:
    """In-place B += k; derived from the carry-lookahead layout."""
    if not 0 <= k < (1 << spec.n):
        raise ValueError(f"constant {k} out of range for {spec.n} bits")
    if wiring is None:
        circuit, wiring = _canonical(spec, 0, ancilla_required_plus_k(spec.n))
    elif circuit is None:
        raise ValueError("explicit wiring requires the host circuit")
    _check_wiring(spec, wiring, need_a=False, min_ancilla=ancilla_required_plus_k(spec.n))
    ir.extend(circuit, _emit_cla(spec, wiring, k=k))
    return BuiltAdder(circuit, wiring)


def build_ripple_adder(spec: AdderSpec, wiring: AdderWiring | None = None, circuit: Circuit | None = None) -> BuiltAdder:
    """Linear-depth in-place adder with zero ancilla."""
    if wiring is None:
        circuit, wiring = _canonical(spec, spec.n, 0)
    elif circuit is None:
        raise ValueError("explicit wiring requires the host circuit")
    _check_wiring(spec, wiring, need_a=True, min_ancilla=0)
    ir.extend(circuit, _emit_ripple(spec, wiring))
    return BuiltAdder(circuit, wiring)
