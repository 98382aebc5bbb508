"""Witnessed entanglement and geometric discord in Schatten norms.

States are ``State`` objects holding a numpy density matrix and a bipartite
cut; every analysis function returns a plain dict with the same layout as the
``qcorr`` command-line tool's JSON output.
"""

from ._core import (
    BoundViolation,
    ConvergenceError,
    State,
    discord,
    horodecki_3x3,
    max_entangled,
    mix_with_noise,
    negativity,
    partial_transpose,
    random_robustness_certified,
    random_robustness_decomposable,
    rebipartition,
    reproduce_tables,
    schatten,
    state_from_dict,
    sweep,
    upb_tiles_4x4,
    verify_bounds,
    werner,
)

__all__ = [
    "BoundViolation",
    "ConvergenceError",
    "State",
    "discord",
    "horodecki_3x3",
    "max_entangled",
    "mix_with_noise",
    "negativity",
    "partial_transpose",
    "random_robustness_certified",
    "random_robustness_decomposable",
    "rebipartition",
    "reproduce_tables",
    "schatten",
    "state_from_dict",
    "sweep",
    "upb_tiles_4x4",
    "verify_bounds",
    "werner",
]
