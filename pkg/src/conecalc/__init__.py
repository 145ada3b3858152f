"""Exact Duistermaat–Heckman measures as signed sums of cone terms."""
from .cones import (
    ConeTerm,
    ImproperProjectionError,
    SignedConeSum,
    difference,
    flip_to_direction,
    fourier_sum,
    is_proper,
    project_drop_last,
)
from .density import SingularTermError, density_at, regular_density_at
from .exact import NonGenericError
from .localization import (
    DecompositionError,
    FixedPointDatum,
    decompose_multiplicity,
    heckman_cone_sum,
    holomorphy_check,
    localization_series,
    moments_match,
)
from .measures import measures_equal
from .polynomial import Polynomial
from .toric import DelzantPolytope, brianchon_gram_sum, lattice_count, toric_fixed_data

__version__ = "0.1.0"

__all__ = [
    "ConeTerm",
    "DecompositionError",
    "DelzantPolytope",
    "FixedPointDatum",
    "ImproperProjectionError",
    "NonGenericError",
    "Polynomial",
    "SignedConeSum",
    "SingularTermError",
    "brianchon_gram_sum",
    "decompose_multiplicity",
    "density_at",
    "difference",
    "flip_to_direction",
    "fourier_sum",
    "heckman_cone_sum",
    "holomorphy_check",
    "is_proper",
    "lattice_count",
    "localization_series",
    "measures_equal",
    "moments_match",
    "project_drop_last",
    "regular_density_at",
    "toric_fixed_data",
]
