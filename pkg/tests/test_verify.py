import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_assignment, random_programs
from mqca import dense, verify
from mqca.dense import ColumnAssignment, init_state, run, zero_assignment
from mqca.gates import ProgramColumn
from mqca.lattice import LatticeSpec, Topology

TORUS_12 = LatticeSpec(1, 2, Topology.TORUS)
PLANAR_12 = LatticeSpec(1, 2, Topology.PLANAR)


def _unit(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


class TestFidelityUpToPhase:
    def test_identical(self):
        rng = np.random.default_rng(0)
        x = _unit(rng, 8)
        rep = verify.fidelity_up_to_phase(x, x)
        assert rep.fidelity == pytest.approx(1.0)
        assert rep.passed

    def test_global_phase_invisible(self):
        rng = np.random.default_rng(1)
        x = _unit(rng, 8)
        rep = verify.fidelity_up_to_phase(x, np.exp(0.7j) * x)
        assert rep.fidelity == pytest.approx(1.0)
        assert rep.phase == pytest.approx(np.exp(0.7j))

    def test_orthogonal(self):
        a = np.eye(4)[0].astype(complex)
        b = np.eye(4)[1].astype(complex)
        rep = verify.fidelity_up_to_phase(a, b)
        assert rep.fidelity == pytest.approx(0.0)
        assert not rep.passed

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            verify.fidelity_up_to_phase(np.zeros(4), np.zeros(8))

    @given(st.integers(0, 2 ** 32 - 1), st.floats(0, 2 * np.pi))
    @settings(max_examples=25, deadline=None)
    def test_symmetric_and_phase_invariant(self, seed, theta):
        rng = np.random.default_rng(seed)
        a, b = _unit(rng, 8), _unit(rng, 8)
        f_ab = verify.fidelity_up_to_phase(a, b).fidelity
        f_ba = verify.fidelity_up_to_phase(b, a).fidelity
        f_rot = verify.fidelity_up_to_phase(np.exp(1j * theta) * a,
                                            np.exp(1j * theta) * b).fidelity
        assert f_ab == pytest.approx(f_ba, abs=1e-12)
        assert f_ab == pytest.approx(f_rot, abs=1e-12)


class TestCheckOccupancy:
    def test_fresh_init(self):
        rng = np.random.default_rng(2)
        assign = random_assignment(rng, TORUS_12)
        state = init_state(assign, TORUS_12)
        assert verify.check_occupancy(state, assign.programs)

    def test_program_moves_left(self):
        programs = [ProgramColumn((1, 0)), ProgramColumn((0, 1))]
        assign = zero_assignment(TORUS_12, programs)
        state = dense.step(init_state(assign, TORUS_12))
        # after one step p_1 has moved from column 1 to column 0
        rho = dense.column_marginal(state, 0)
        assert abs(rho[programs[0].basis_index(),
                       programs[0].basis_index()] - 1.0) < 1e-10
        assert verify.check_occupancy(state, programs)

    def test_holds_through_full_cycle(self):
        rng = np.random.default_rng(3)
        for s, r in [(1, 2), (1, 3), (2, 2)]:
            spec = LatticeSpec(s, r, Topology.TORUS)
            assign = random_assignment(rng, spec)
            state = init_state(assign, spec)
            for _ in range(2 * r + 1):
                assert verify.check_occupancy(state, assign.programs)
                state = dense.step(state)

    def test_corrupted_program_detected(self):
        rng = np.random.default_rng(4)
        assign = random_assignment(rng, TORUS_12)
        state = init_state(assign, TORUS_12)
        bits = list(assign.programs[0].bits)
        bits[0] ^= 1
        corrupted = [ProgramColumn(tuple(bits))] + assign.programs[1:]
        assert not verify.check_occupancy(state, corrupted)


class TestProgramOrthogonality:
    def test_identical_sets_not_orthogonal(self):
        a = [ProgramColumn((0, 1))]
        assert not verify.program_orthogonality(a, list(a))

    def test_single_bit_difference(self):
        a = [ProgramColumn((0, 1))]
        b = [ProgramColumn((1, 1))]
        assert verify.program_orthogonality(a, b)

    def test_exhaustive_minimal_scale(self):
        # every distinct pair of full program states is orthogonal
        sets = [[ProgramColumn((x, y))] for x in (0, 1) for y in (0, 1)]
        for i, a in enumerate(sets):
            for j, b in enumerate(sets):
                assert verify.program_orthogonality(a, b) == (i != j)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            verify.program_orthogonality([ProgramColumn((0, 1))],
                                         [ProgramColumn((0, 1, 0, 0))])


class TestWavefrontProfile:
    def test_initial_state_all_rank_one(self):
        state = init_state(zero_assignment(PLANAR_12), PLANAR_12)
        assert verify.wavefront_profile(state) == [1, 1, 1]

    def test_monotone_and_bounded(self):
        rng = np.random.default_rng(5)
        spec = LatticeSpec(1, 3, Topology.PLANAR)
        assign = random_assignment(rng, spec)
        state = init_state(assign, spec)
        for t in range(spec.r + 1):
            profile = verify.wavefront_profile(state)
            for c in range(2 * spec.r - 1 - t):
                if c < len(profile):
                    assert profile[c] == 1
            assert all(profile[i] <= profile[i + 1]
                       for i in range(len(profile) - 1))
            state = dense.step(state)

    def test_torus_rejected(self):
        state = init_state(zero_assignment(TORUS_12), TORUS_12)
        with pytest.raises(ValueError):
            verify.wavefront_profile(state)


class TestReport:
    def test_shape(self):
        rep = verify.report("occupancy", {"s": 1, "r": 2}, True, 1e-10, True)
        assert set(rep) == {"check", "params", "value", "tolerance", "pass"}
        assert rep["pass"] is True
