"""Invariants of the cohits (QP_k)_n under Sigma_k and GL_k(F2), and
Boardman-style coinvariant dimensions of primitive homology."""

from .boardman import coinvariant_dim, identify_params
from .clusters import compute_invariants
from .reducer import build_cohit_basis, is_hit, reduce

__all__ = ["build_cohit_basis", "coinvariant_dim", "compute_invariants", "identify_params", "is_hit", "reduce"]
