"""Cross-cutting verification probes.

Phase-insensitive comparison, register occupancy/motion checks,
entanglement-structure probes, and the program-orthogonality sanity
property.
"""

from dataclasses import dataclass, asdict

import numpy as np

from .dense import RANK_TOL, column_marginal, schmidt_rank_at_cut
from .lattice import Topology


@dataclass(frozen=True)
class EquivalenceReport:
    fidelity: float
    phase: complex
    tolerance: float

    @property
    def passed(self):
        return self.fidelity >= 1.0 - self.tolerance


def fidelity_up_to_phase(a, b, tol=1e-10):
    a = np.asarray(a).reshape(-1)
    b = np.asarray(b).reshape(-1)
    if a.size != b.size:
        raise ValueError(f"dimension mismatch: {a.size} vs {b.size}")
    inner = np.vdot(a, b)
    fid = float(abs(inner))
    phase = inner / fid if fid > 0 else complex(1.0)
    return EquivalenceReport(fid, complex(phase), tol)


def check_occupancy(state, programs, tol=1e-10):
    """True iff every program column marginal is the predicted basis
    state and every data column marginal is pure (torus position law)."""
    spec = state.spec
    if spec.topology is not Topology.TORUS:
        raise ValueError("occupancy law is defined on the torus")
    t, r, two_r = state.t, spec.r, spec.n_cols
    for i in range(r):
        # program at list index (i + t) mod r sits at column 2i+t+1
        p = programs[(i + t) % r]
        col = (2 * i + t + 1) % two_r
        rho = column_marginal(state, col)
        expect = np.zeros(rho.shape[0])
        expect[p.basis_index()] = 1.0
        if np.max(np.abs(rho - np.outer(expect, expect))) > tol:
            return False
        # data register i sits at column 2i+t; its marginal must be pure
        dcol = (2 * i + t) % two_r
        rho_d = column_marginal(state, dcol)
        evals = np.linalg.eigvalsh(rho_d)
        if abs(evals[-1] - 1.0) > 1e-8:
            return False
    return True


def program_orthogonality(programs_a, programs_b):
    """True iff the two full program basis states are orthogonal.

    Classical basis states are orthogonal exactly when any bit differs;
    identical sets have inner product 1.
    """
    bits_a = tuple(p.bits for p in programs_a)
    bits_b = tuple(p.bits for p in programs_b)
    if len(bits_a) != len(bits_b) or any(
            len(x) != len(y) for x, y in zip(bits_a, bits_b)):
        raise ValueError("program sets must have equal dimensions")
    return bits_a != bits_b


def wavefront_profile(state, tol=RANK_TOL):
    """Schmidt rank at every vertical cut, left to right (planar)."""
    if state.spec.topology is not Topology.PLANAR:
        raise ValueError("the wavefront profile is a planar-sheet probe")
    return [schmidt_rank_at_cut(state, c, tol)[0]
            for c in range(state.spec.n_cols - 1)]


def report(check, params, value, tolerance, passed):
    """Uniform JSON-serializable verification record."""
    return {"check": check, "params": params, "value": value,
            "tolerance": tolerance, "pass": bool(passed)}
