"""Margolus-partitioned quantum cellular automaton: two cross-validating
simulation backends and a circuit-to-program compiler."""

from .lattice import LatticeSpec, Topology

__version__ = "0.1.0"
__all__ = ["LatticeSpec", "Topology", "__version__"]
