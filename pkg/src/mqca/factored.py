"""Column-product backend.

On the torus with classical programs the automaton state stays an exact
tensor product of column states, so it is enough to evolve r small data
registers and track positions.  Cost per step is O(r * s * 4^s),
independent of the full lattice dimension.
"""

from dataclasses import dataclass

import numpy as np

from .dense import StateVector, _check_guard, _program_vector
from .gates import apply_gates, u_of_p
from .lattice import LatticeSpec, Topology
from .linalg import kron_all

NORM_TOL = 1e-10


class UnsupportedTopologyError(ValueError):
    pass


@dataclass
class FactoredState:
    data: list        # r register amplitude vectors, register index i
    programs: list    # r program columns; list index i holds p_(i+1)
    t: int
    spec: LatticeSpec

    def data_column(self, i):
        """Column currently holding data register i."""
        return (2 * i + self.t) % self.spec.n_cols

    def program_column(self, i):
        """Column currently holding the program at list index i."""
        # list index i is p_(i+1); at time t it sits at column
        # 2(i-t)+t+1 mod 2r, i.e. 2i-t+1.
        return (2 * i - self.t + 1) % self.spec.n_cols

    def program_at_register(self, i):
        """List index of the program register i meets at the next step."""
        return (i + self.t) % self.spec.r


def init_factored(assign, spec):
    if spec.topology is not Topology.TORUS:
        raise UnsupportedTopologyError(
            "the factored backend requires the torus; planar evolution "
            "does not stay a column product")
    if len(assign.data) != spec.r or len(assign.programs) != spec.r:
        raise ValueError(f"need {spec.r} data states and {spec.r} programs")
    dim = 2 ** spec.n_rows
    data = []
    for i, d in enumerate(assign.data):
        v = np.asarray(d, dtype=np.complex128)
        if v.size != dim:
            raise ValueError(f"data register {i} has wrong dimension")
        if abs(np.linalg.norm(v) - 1.0) > NORM_TOL:
            raise ValueError(f"data register {i} is not normalized")
        data.append(v.copy())
    for p in assign.programs:
        if len(p) != spec.n_rows:
            raise ValueError("program column has wrong length")
    return FactoredState(data, list(assign.programs), 0, spec)


def fstep(state):
    """Apply U(p, phi) to every data register and advance the clock."""
    phi = state.t % 2
    new_data = []
    for i, d in enumerate(state.data):
        p = state.programs[state.program_at_register(i)]
        new_data.append(apply_gates(d, u_of_p(p, phi, state.spec.s)))
    return FactoredState(new_data, state.programs, state.t + 1, state.spec)


def frun(state, steps):
    if steps < 0:
        raise ValueError("steps must be >= 0")
    for _ in range(steps):
        state = fstep(state)
    return state


def output_register(state, allow_off_schedule=False):
    """Data register 0, readable from column r once t = r."""
    if state.t != state.spec.r and not allow_off_schedule:
        raise ValueError(
            f"output is defined at t = r = {state.spec.r}, state has "
            f"t = {state.t} (pass allow_off_schedule to read anyway)")
    if state.t == state.spec.r:
        assert state.data_column(0) == state.spec.r
    return state.data[0]


def to_dense(state):
    """Embed every register at its current column (cross-backend oracle)."""
    _check_guard(state.spec)
    spec = state.spec
    columns = [None] * spec.n_cols
    for i in range(spec.r):
        columns[state.data_column(i)] = np.asarray(state.data[i])
        columns[state.program_column(i)] = _program_vector(
            state.programs[i], spec.n_rows)
    factors = [columns[x] for x in reversed(range(spec.n_cols))]
    return StateVector(kron_all(factors), spec, state.t)


def dump_registers(state, threshold=1e-14):
    """Per-register amplitude dump in the dense text format."""
    lines = []
    for i, d in enumerate(state.data):
        lines.append(f"register {i} column {state.data_column(i)}")
        for idx in np.nonzero(np.abs(d) > threshold)[0]:
            z = d[idx]
            lines.append(f"{idx} {z.real:.17g} {z.imag:.17g}")
    return "\n".join(lines) + "\n"
