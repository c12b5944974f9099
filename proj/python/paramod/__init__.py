from ._core import (
    FourierExpansion,
    classify,
    coset_count,
    dim_vs,
    disc4,
    eigen_report,
    equivalent,
    orbit_reps,
    radial_check,
    reduce,
    scalar,
    spin_lfactor,
    verify_identities,
    y_set,
)

__all__ = [
    "FourierExpansion",
    "classify",
    "coset_count",
    "dim_vs",
    "disc4",
    "eigen_report",
    "equivalent",
    "orbit_reps",
    "radial_check",
    "reduce",
    "scalar",
    "spin_lfactor",
    "verify_identities",
    "y_set",
]
