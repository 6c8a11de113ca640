"""Orthogonal Deligne-Lusztig varieties of type 2D_n over finite fields."""

from .errors import (CloudTooSmallError, NotIsotropicError, NotStabilizedError,
                     ParameterError, ResourceLimitError)
from .gf import FieldElem, FieldTower, make_tower, prime_field
from .quadspace import QuadraticSpace, Subspace, build_space

__version__ = "0.1.0"

__all__ = [
    "CloudTooSmallError", "NotIsotropicError", "NotStabilizedError", "ParameterError",
    "ResourceLimitError", "FieldElem", "FieldTower", "make_tower", "prime_field",
    "QuadraticSpace", "Subspace", "build_space", "__version__",
]
