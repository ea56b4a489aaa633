import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radixcirc import ir, sim
from radixcirc.ir import Wire


def mixed_circuit():
    wires = [Wire(0, "a", 2), Wire(1, "b", 3), Wire(2, "c", 4)]
    c = ir.new_circuit(wires)
    ir.extend(c, [
        ir.incr(1, 1, [(0, 1)]),
        ir.flip(2, 0, 3),
        ir.incr(2, 2, [(1, 2)]),
        ir.x(0, [(2, 3)]),
    ])
    return c


def test_basis_state_validation():
    c = mixed_circuit()
    with pytest.raises(ValueError):
        sim.basis_state(c, [0, 3, 0])
    with pytest.raises(ValueError):
        sim.basis_state(c, [0, 0])
    s = sim.basis_state(c, [1, 2, 3])
    assert s.digits == (1, 2, 3)


def test_apply_gate_control_gating():
    c = mixed_circuit()
    s = sim.basis_state(c, [0, 0, 0])
    # control a=1 not met: identity
    assert sim.apply_gate(s, ir.incr(1, 1, [(0, 1)])).digits == (0, 0, 0)
    assert sim.apply_gate(s.replace({0: 1}), ir.incr(1, 1, [(0, 1)])).digits == (1, 1, 0)


def test_increment_wraps_modulo_dim():
    c = mixed_circuit()
    s = sim.basis_state(c, [0, 2, 3])
    assert sim.apply_gate(s, ir.incr(1, 2)).digits[1] == 1
    assert sim.apply_gate(s, ir.incr(2, 1)).digits[2] == 0


def test_swap_gate():
    wires = [Wire(0, "a", 3), Wire(1, "b", 3)]
    c = ir.new_circuit(wires)
    ir.append_gate(c, ir.swap(0, 1))
    assert sim.run(c, sim.basis_state(c, [2, 1])).digits == (1, 2)


def test_run_is_permutation_on_full_space():
    c = mixed_circuit()
    table = sim.permutation_table(c, sim.all_basis_states(c))
    assert len(table) == 24
    assert len(set(table.values())) == 24


def test_interface_states_honor_bounds():
    wires = [Wire(0, "a", 3), Wire(1, "b", 3)]
    c = ir.new_circuit(wires, input_bounds=(2, 2))
    assert len(list(sim.interface_states(c))) == 4
    assert len(list(sim.all_basis_states(c))) == 9


def test_run_batch_matches_scalar_run():
    c = mixed_circuit()
    states = np.array([s.digits for s in sim.all_basis_states(c)])
    out, max_digit = sim.run_batch(c, states, track_max=True)
    for row_in, row_out in zip(states, out):
        assert tuple(row_out) == sim.run(c, sim.basis_state(c, row_in)).digits
    assert max_digit == 3
    with pytest.raises(ValueError):
        sim.run_batch(c, states[:, :2])


def test_statevector_agrees_with_basis_run():
    c = mixed_circuit()
    for s in sim.all_basis_states(c):
        v = sim.run_statevector(c, sim.statevector_from_basis(s))
        expect = sim.statevector_from_basis(sim.run(c, s))
        assert np.allclose(v.amps, expect.amps)


def test_statevector_preserves_norm_on_superposition():
    c = mixed_circuit()
    v = sim.run_statevector(c, sim.uniform_statevector(c))
    assert v.norm_sq == pytest.approx(1.0)


def test_statevector_cap():
    wires = [Wire(i, f"q{i}", 4) for i in range(11)]  # 4^11 > 2^20
    c = ir.new_circuit(wires)
    with pytest.raises(ValueError):
        sim.run_statevector(c, sim.Statevector(np.zeros(4 ** 11, dtype=complex), c.dims))


@st.composite
def circuit_and_state(draw):
    dims = draw(st.lists(st.integers(2, 4), min_size=2, max_size=4))
    wires = [Wire(i, f"q{i}", d) for i, d in enumerate(dims)]
    c = ir.new_circuit(wires)
    n_gates = draw(st.integers(0, 8))
    for _ in range(n_gates):
        t = draw(st.integers(0, len(dims) - 1))
        kind = draw(st.sampled_from(["flip", "incr"]))
        if kind == "flip":
            i = draw(st.integers(0, dims[t] - 1))
            j = draw(st.integers(0, dims[t] - 1).filter(lambda v: v != i))
            g = ir.flip(t, i, j)
        else:
            g = ir.incr(t, draw(st.integers(1, dims[t] - 1)))
        ctrl_pool = [w for w in range(len(dims)) if w != t]
        if draw(st.booleans()):
            w = draw(st.sampled_from(ctrl_pool))
            g = ir.Gate(g.kind, g.targets, g.params, ((w, draw(st.integers(0, dims[w] - 1))),))
        ir.append_gate(c, g)
    digits = tuple(draw(st.integers(0, d - 1)) for d in dims)
    return c, digits


@settings(max_examples=60, deadline=None)
@given(circuit_and_state())
def test_property_inverse_round_trip(cs):
    c, digits = cs
    s = sim.basis_state(c, digits)
    assert sim.run(ir.inverse(c), sim.run(c, s)) == s


@settings(max_examples=60, deadline=None)
@given(circuit_and_state())
def test_property_batch_and_statevector_agree(cs):
    c, digits = cs
    s = sim.basis_state(c, digits)
    out = sim.run(c, s)
    batch, _ = sim.run_batch(c, np.array([digits]))
    assert tuple(batch[0]) == out.digits
    v = sim.run_statevector(c, sim.statevector_from_basis(s))
    assert v.amps[sim.state_index(out.digits, c.dims)] == pytest.approx(1.0)
