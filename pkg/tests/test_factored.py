import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_assignment, zero_register
from mqca import dense, factored
from mqca.dense import ColumnAssignment, init_state
from mqca.factored import (UnsupportedTopologyError, frun, fstep,
                           init_factored, output_register, to_dense)
from mqca.gates import ProgramColumn, column_unitary
from mqca.lattice import LatticeSpec, Topology

TORUS_12 = LatticeSpec(1, 2, Topology.TORUS)


def zero_assign(spec):
    data = [zero_register(spec.n_rows) for _ in range(spec.r)]
    programs = [ProgramColumn.zeros(spec.n_rows) for _ in range(spec.r)]
    return ColumnAssignment(data, programs)


class TestFStep:
    def test_two_steps_of_zero_program_give_plus_plus(self):
        state = frun(init_factored(zero_assign(TORUS_12), TORUS_12), 2)
        assert np.allclose(state.data[0], 0.5, atol=1e-12)

    def test_output_is_ordered_program_product(self):
        rng = np.random.default_rng(2)
        assign = random_assignment(rng, TORUS_12)
        state = frun(init_factored(assign, TORUS_12), TORUS_12.r)
        u = np.eye(4, dtype=complex)
        for k in range(1, TORUS_12.r + 1):
            u = column_unitary(assign.programs[(k - 1) % TORUS_12.r],
                               (k - 1) % 2, 1) @ u
        assert np.allclose(state.data[0], u @ assign.data[0], atol=1e-10)

    def test_auxiliary_register_sees_scrambled_order(self):
        rng = np.random.default_rng(4)
        assign = random_assignment(rng, TORUS_12)
        state = frun(init_factored(assign, TORUS_12), 2)
        # register 1 meets p_2 first, then p_1
        u = (column_unitary(assign.programs[0], 1, 1)
             @ column_unitary(assign.programs[1], 0, 1))
        assert np.allclose(state.data[1], u @ assign.data[1], atol=1e-10)

    def test_programs_never_modified(self):
        rng = np.random.default_rng(6)
        assign = random_assignment(rng, TORUS_12)
        state = frun(init_factored(assign, TORUS_12), 5)
        assert state.programs == assign.programs

    def test_planar_rejected(self):
        spec = LatticeSpec(1, 2, Topology.PLANAR)
        with pytest.raises(UnsupportedTopologyError):
            init_factored(zero_assign(spec), spec)


class TestOutputRegister:
    def test_position_at_readout(self):
        state = frun(init_factored(zero_assign(TORUS_12), TORUS_12),
                     TORUS_12.r)
        assert state.data_column(0) == TORUS_12.r
        assert output_register(state) is state.data[0]

    def test_off_schedule_read_rejected(self):
        state = init_factored(zero_assign(TORUS_12), TORUS_12)
        with pytest.raises(ValueError):
            output_register(state)
        assert output_register(state, allow_off_schedule=True) is state.data[0]


class TestToDense:
    def test_matches_init_state(self):
        rng = np.random.default_rng(8)
        assign = random_assignment(rng, TORUS_12)
        a = to_dense(init_factored(assign, TORUS_12))
        b = init_state(assign, TORUS_12)
        assert np.allclose(a.amplitudes, b.amplitudes, atol=1e-12)

    def test_norm_preserved(self):
        rng = np.random.default_rng(10)
        state = frun(init_factored(random_assignment(rng, TORUS_12),
                                   TORUS_12), 3)
        assert abs(np.linalg.norm(to_dense(state).amplitudes) - 1) < 1e-10

    @given(st.integers(1, 2), st.integers(2, 3), st.integers(0, 2 ** 32 - 1))
    @settings(max_examples=15, deadline=None)
    def test_commuting_diagram(self, s, r, seed):
        # to_dense(fstep(x)) == dense.step(to_dense(x)): the evolution
        # law checked numerically
        spec = LatticeSpec(s, r, Topology.TORUS)
        if spec.n_qubits > 16:
            return
        rng = np.random.default_rng(seed)
        fs = init_factored(random_assignment(rng, spec), spec)
        for _ in range(2 * r):
            stepped_dense = dense.step(to_dense(fs))
            fs = fstep(fs)
            fid = abs(np.vdot(to_dense(fs).amplitudes,
                              stepped_dense.amplitudes))
            assert fid >= 1 - 1e-10
