import math

import numpy as np
import pytest

from quditgraph import (
    DensityMatrix,
    Gate,
    ResourceGuardError,
    apply_gate,
    dump_state,
    fourier_matrix,
    gate_matrix,
    init_state,
    parse_state_dump,
    rank,
    reduced_density,
    run_gates,
    sequence_matrix,
    spectrum,
    square_state,
    states_equal_up_to_phase,
)
from quditgraph.simulator import bipartition_subsets, sequence_source_map, validate_gate

from util import field_for, random_cadw_circuit

# ---------------------------------------------------------------------------
# Initialization
# ---------------------------------------------------------------------------

def test_init_single_superposition_qubit():
    st = init_state(field_for(2), 1, ["s"])
    assert np.allclose(st.amps, [1 / math.sqrt(2)] * 2)


def test_init_superposition_zero_f4():
    st = init_state(field_for(4), 2, ["s", "0"])
    expected = np.zeros(16)
    expected[[0, 4, 8, 12]] = 0.5
    assert np.allclose(st.amps, expected)


def test_init_all_zero_f3():
    st = init_state(field_for(3), 2, ["0", "0"])
    assert st.amps[0] == 1 and np.count_nonzero(st.amps) == 1


def test_init_guard():
    with pytest.raises(ResourceGuardError):
        init_state(field_for(2), 25, ["0"] * 25)


# ---------------------------------------------------------------------------
# Gates
# ---------------------------------------------------------------------------

def test_cnot_builds_generalized_bell():
    for d in (2, 3, 4, 5):
        fld = field_for(d)
        st = run_gates(init_state(fld, 2, ["s", "0"]), [Gate("C", (1, 2), 1)])
        expect = np.zeros(d * d, dtype=complex)
        for i in range(d):
            expect[i * d + i] = 1 / math.sqrt(d)
        assert np.allclose(st.amps, expect)


def test_identity_parameters_do_nothing():
    rng = np.random.default_rng(3)
    for d in (2, 3, 4):
        fld = field_for(d)
        amps = rng.standard_normal(d ** 2) + 1j * rng.standard_normal(d ** 2)
        amps /= np.linalg.norm(amps)
        st = init_state(fld, 2, ["0", "0"])
        st.amps[:] = amps
        for g in (Gate("A", (1,), 0), Gate("D", (2,), 1), Gate("C", (1, 2), 0)):
            assert np.allclose(apply_gate(st, g).amps, amps)


def test_fourier_maps_zero_to_uniform():
    for d in (2, 3, 4, 5, 7, 8, 9):
        fld = field_for(d)
        st = apply_gate(init_state(fld, 1, ["0"]), Gate("H", (1,)))
        assert np.allclose(st.amps, np.full(d, 1 / math.sqrt(d)))


def test_fourier_is_qubit_hadamard():
    h = fourier_matrix(field_for(2))
    assert np.allclose(h, np.array([[1, 1], [1, -1]]) / math.sqrt(2))


@pytest.mark.parametrize("d", [2, 3, 4, 5, 7, 8, 9])
def test_fourier_unitary(d):
    h = fourier_matrix(field_for(d))
    assert np.max(np.abs(h @ h.conj().T - np.eye(d))) < 1e-10


@pytest.mark.parametrize("d", [2, 3, 4, 5, 7, 8, 9])
def test_shift_fixes_uniform_superposition(d):
    fld = field_for(d)
    st = init_state(fld, 1, ["s"])
    for a in fld.elements():
        assert np.allclose(apply_gate(st, Gate("A", (1,), a)).amps, st.amps)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_cnot_on_superposition_factorizes(d):
    # C_mn(a_k)|s, a_j> equals A_n(a_j) D_n(a_k) applied to the Bell state
    fld = field_for(d)
    bell = run_gates(init_state(fld, 2, ["s", "0"]), [Gate("C", (1, 2), 1)])
    for aj in fld.elements():
        prepared = init_state(fld, 2, ["s", "0"])
        if aj:
            prepared = apply_gate(prepared, Gate("A", (2,), aj))
        for ak in range(1, fld.d):
            lhs = apply_gate(prepared, Gate("C", (1, 2), ak))
            rhs = run_gates(bell, [Gate("D", (2,), ak), Gate("A", (2,), aj)])
            assert np.max(np.abs(lhs.amps - rhs.amps)) < 1e-12


def test_norm_preserved_by_random_circuits():
    rng = np.random.default_rng(11)
    for d in (2, 3, 4):
        fld = field_for(d)
        circ = random_cadw_circuit(fld, 4, 2, 25, rng)
        st = circ.simulate()
        gates = [Gate("H", (1,)), Gate("V", (2,)), Gate("H", (3,))]
        st = run_gates(st, gates)
        assert abs(st.norm() - 1) < 1e-10


def test_gate_validation_errors():
    fld = field_for(3)
    st = init_state(fld, 2, ["s", "0"])
    with pytest.raises(ValueError):
        apply_gate(st, Gate("D", (1,), 0))
    with pytest.raises(ValueError):
        apply_gate(st, Gate("A", (3,), 1))
    with pytest.raises(ValueError):
        apply_gate(st, Gate("C", (1, 1), 1))
    with pytest.raises(ValueError):
        apply_gate(st, Gate("C", (1, 2), 5))
    with pytest.raises(ValueError):
        validate_gate(fld, 2, Gate("H", (1,), 1))


# ---------------------------------------------------------------------------
# Dense operators
# ---------------------------------------------------------------------------

def test_sequence_source_map_matches_matrix_product():
    rng = np.random.default_rng(5)
    fld = field_for(3)
    for _ in range(20):
        ops = []
        for _ in range(4):
            kind = ["A", "D", "C", "W", "V"][rng.integers(5)]
            if kind in ("C", "W"):
                m, t = rng.permutation(2)[:2] + 1
                param = int(rng.integers(3)) if kind == "C" else None
                ops.append(Gate(kind, (int(m), int(t)), param))
            elif kind == "D":
                ops.append(Gate("D", (int(rng.integers(2)) + 1,), int(rng.integers(1, 3))))
            elif kind == "A":
                ops.append(Gate("A", (int(rng.integers(2)) + 1,), int(rng.integers(3))))
            else:
                ops.append(Gate("V", (int(rng.integers(2)) + 1,)))
        via_src = np.eye(9)[sequence_source_map(fld, 2, ops)]
        via_mats = np.eye(9, dtype=complex)
        for g in ops:
            via_mats = via_mats @ gate_matrix(fld, 2, g)
        assert np.max(np.abs(via_src - via_mats)) < 1e-12


def test_sequence_matrix_with_fourier():
    fld = field_for(2)
    # H on each wire conjugates the CNOT into the opposite-direction CNOT
    ops = [Gate("H", (1,)), Gate("H", (2,)), Gate("C", (1, 2), 1), Gate("H", (1,)), Gate("H", (2,))]
    got = sequence_matrix(fld, 2, ops)
    want = gate_matrix(fld, 2, Gate("C", (2, 1), 1))
    assert np.max(np.abs(got - want)) < 1e-10


# ---------------------------------------------------------------------------
# Reduced density matrices
# ---------------------------------------------------------------------------

def test_bell_marginal_is_maximally_mixed():
    for d in (2, 3):
        fld = field_for(d)
        bell = run_gates(init_state(fld, 2, ["s", "0"]), [Gate("C", (1, 2), 1)])
        dm = reduced_density(bell, [1])
        assert np.max(np.abs(dm.entries - np.eye(d) / d)) < 1e-12
        assert np.allclose(spectrum(dm), [1 / d] * d)
        assert rank(dm) == d


def test_product_state_marginal_is_pure():
    st = init_state(field_for(3), 2, ["0", "0"])
    dm = reduced_density(st, [1])
    assert rank(dm) == 1
    assert abs(dm.entries[0, 0] - 1) < 1e-12


def test_square_state_pair_marginal_f4():
    sq = square_state(field_for(4), 2)
    dm = reduced_density(sq, [1, 2])
    assert np.max(np.abs(dm.entries - np.eye(16) / 16)) < 1e-12


def test_density_matrix_invariants():
    rng = np.random.default_rng(2)
    circ = random_cadw_circuit(field_for(3), 4, 2, 15, rng)
    st = circ.simulate()
    for subset in bipartition_subsets(4):
        dm = reduced_density(st, subset)
        assert np.max(np.abs(dm.entries - dm.entries.conj().T)) < 1e-12
        assert abs(np.trace(dm.entries).real - 1) < 1e-10
        assert spectrum(dm).min() > -1e-10


def test_reduced_density_subset_errors():
    st = init_state(field_for(2), 2, ["s", "0"])
    with pytest.raises(ValueError):
        reduced_density(st, [])
    with pytest.raises(ValueError):
        reduced_density(st, [1, 2])


def test_rank_of_maximally_mixed():
    for d in (2, 3, 4):
        dm = DensityMatrix((1,), np.eye(d) / d)
        assert rank(dm) == d


def test_bipartition_subsets_count():
    assert bipartition_subsets(4) == [
        (1,), (2,), (3,), (4,), (1, 2), (1, 3), (1, 4)
    ]
    assert len(bipartition_subsets(5)) == 5 + 10


# ---------------------------------------------------------------------------
# Phase comparison and dumps
# ---------------------------------------------------------------------------

def test_states_equal_up_to_phase():
    st = init_state(field_for(3), 2, ["s", "0"])
    shifted = st.copy()
    shifted.amps = shifted.amps * np.exp(1j * 0.7)
    assert states_equal_up_to_phase(st, shifted)
    bell = run_gates(st, [Gate("C", (1, 2), 1)])
    assert states_equal_up_to_phase(st, bell) is False


def test_dump_round_trip():
    sq = square_state(field_for(4), 2)
    text = dump_state(sq.amps, 4, 4, header=["construction test"])
    amps, d, n = parse_state_dump(text)
    assert (d, n) == (4, 4)
    assert np.allclose(amps, sq.amps)
    first_data = next(l for l in text.splitlines() if not l.startswith("#"))
    assert first_data.split()[0] == "0000"


def test_dump_round_trip_large_dimension():
    rng = np.random.default_rng(0)
    amps = rng.standard_normal(12 ** 2) + 1j * rng.standard_normal(12 ** 2)
    amps /= np.linalg.norm(amps)
    text = dump_state(amps, 12, 2, header=[])
    parsed, d, n = parse_state_dump(text)
    assert (d, n) == (12, 2)
    assert np.max(np.abs(parsed - amps)) < 1e-15


def test_dump_parse_errors():
    with pytest.raises(ValueError):
        parse_state_dump("0 1.0 0.0\n")  # missing header
    with pytest.raises(ValueError):
        parse_state_dump("# quditgraph-state d=2 qudits=1\n0 1.0\n")


def test_sorted_dump_order():
    st = init_state(field_for(2), 3, ["s", "s", "s"])
    lines = [l for l in dump_state(st.amps, 2, 3).splitlines() if not l.startswith("#")]
    assert [l.split()[0] for l in lines] == sorted(l.split()[0] for l in lines)
