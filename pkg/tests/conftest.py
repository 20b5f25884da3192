import numpy as np
import pytest

from mqca.dense import ColumnAssignment
from mqca.gates import ProgramColumn


def random_register(rng, two_s):
    dim = 2 ** two_s
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_basis_register(rng, two_s):
    dim = 2 ** two_s
    v = np.zeros(dim, dtype=np.complex128)
    v[rng.integers(0, dim)] = 1.0
    return v


def random_programs(rng, spec):
    return [ProgramColumn(tuple(int(b) for b in rng.integers(0, 2, spec.n_rows)))
            for _ in range(spec.r)]


def random_assignment(rng, spec, basis=False):
    make = random_basis_register if basis else random_register
    data = [make(rng, spec.n_rows) for _ in range(spec.r)]
    return ColumnAssignment(data, random_programs(rng, spec))


def zero_register(two_s, index=0):
    v = np.zeros(2 ** two_s, dtype=np.complex128)
    v[index] = 1.0
    return v
