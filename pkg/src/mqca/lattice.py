"""Geometry of the 2s x 2r qubit lattice and its Margolus cell partitions.

Columns are indexed 0..2r-1, rows 0..2s-1.  Qubit (x, y) maps to bit
position x*2s + y of the amplitude index (column-major, bit 0 least
significant), so a column occupies a contiguous bit group.
"""

from dataclasses import dataclass
from enum import Enum


class Topology(Enum):
    TORUS = "torus"
    PLANAR = "planar"


class CellKind(Enum):
    TAU = "tau"          # full 2x2 cell, gets the elementary transition
    SWAP = "swap"        # 2-site boundary cell, gets a SWAP
    IDENTITY = "identity"  # boundary cell left untouched


@dataclass(frozen=True)
class LatticeSpec:
    s: int
    r: int
    topology: Topology = Topology.TORUS

    def __post_init__(self):
        if self.s < 1:
            raise ValueError(f"s must be >= 1, got {self.s}")
        if self.r < 2:
            raise ValueError(f"r must be >= 2, got {self.r}")
        if not isinstance(self.topology, Topology):
            raise TypeError("topology must be a Topology")

    @property
    def n_rows(self):
        return 2 * self.s

    @property
    def n_cols(self):
        return 2 * self.r

    @property
    def n_qubits(self):
        return 4 * self.s * self.r


@dataclass(frozen=True)
class CellAddress:
    """A full cell: column i, cell-row index j, step parity phi.

    The cell's top row is (2j + phi) mod 2s; on the torus i must have
    parity phi.
    """
    i: int
    j: int
    phi: int


@dataclass(frozen=True)
class Cell:
    kind: CellKind
    sites: tuple
    addr: CellAddress = None


def site_index(x, y, spec):
    """Bit position of qubit at column x, row y."""
    if not (0 <= x < spec.n_cols):
        raise ValueError(f"column {x} out of range [0, {spec.n_cols})")
    if not (0 <= y < spec.n_rows):
        raise ValueError(f"row {y} out of range [0, {spec.n_rows})")
    return x * spec.n_rows + y


def cell_sites(addr, spec):
    """The four sites (q1, q2, q3, q4) of a full cell.

    q1/q2 are the top/bottom of the left (data) column, q3/q4 of the
    right (program) column.
    """
    two_s, two_r = spec.n_rows, spec.n_cols
    if not (0 <= addr.i < two_r and 0 <= addr.j < spec.s):
        raise ValueError(f"cell address {addr} out of range")
    if addr.phi not in (0, 1):
        raise ValueError(f"parity must be 0 or 1, got {addr.phi}")
    if spec.topology is Topology.TORUS and addr.i % 2 != addr.phi:
        raise ValueError(
            f"column {addr.i} has wrong parity for a step of parity {addr.phi}")
    a = (2 * addr.j + addr.phi) % two_s
    b = (a + 1) % two_s
    i2 = (addr.i + 1) % two_r
    return (site_index(addr.i, a, spec), site_index(addr.i, b, spec),
            site_index(i2, a, spec), site_index(i2, b, spec))


def _full_cell(addr, spec):
    return Cell(CellKind.TAU, cell_sites(addr, spec), addr)


def cells_of_step(t, spec):
    """The cell partition used for the transition from time t to t+1."""
    if t < 0:
        raise ValueError("t must be >= 0")
    phi = t % 2
    if spec.topology is Topology.TORUS:
        return [_full_cell(CellAddress(i, j, phi), spec)
                for i in range(phi, spec.n_cols, 2)
                for j in range(spec.s)]
    return _planar_cells(phi, spec)


def _planar_cells(phi, spec):
    s, two_s, two_r = spec.s, spec.n_rows, spec.n_cols
    if phi == 0:
        # The even partition tiles the sheet exactly.
        return [_full_cell(CellAddress(i, j, 0), spec)
                for i in range(0, two_r, 2) for j in range(s)]

    cells = []
    interior_cols = list(range(1, two_r - 2, 2))  # left column of each pair
    # Full cells.  For s == 1 the row pair (1, 0) is still a contiguous
    # 2x2 block, so the whole interior column pair is a tau cell; only
    # for s >= 2 does the wrapped row pair fall apart into boundary cells.
    full_js = range(s) if s == 1 else range(s - 1)
    for i in interior_cols:
        for j in full_js:
            cells.append(_full_cell(CellAddress(i, j, 1), spec))
    if s > 1:
        # Horizontal 2-site SWAP cells along the top and bottom rows keep
        # the boundary rows of each register moving with the bulk.
        for i in interior_cols:
            for y in (0, two_s - 1):
                cells.append(Cell(CellKind.SWAP,
                                  (site_index(i, y, spec),
                                   site_index(i + 1, y, spec))))
        # Four 1-site corners.
        for x in (0, two_r - 1):
            for y in (0, two_s - 1):
                cells.append(Cell(CellKind.IDENTITY, (site_index(x, y, spec),)))
    # Vertical 2-site identity cells on the boundary columns: a register
    # waiting at the wall for one step, which reflects it.
    for x in (0, two_r - 1):
        for j in (range(s) if s == 1 else range(s - 1)):
            a = (2 * j + 1) % two_s
            b = (a + 1) % two_s
            cells.append(Cell(CellKind.IDENTITY,
                              (site_index(x, a, spec), site_index(x, b, spec))))
    return cells
