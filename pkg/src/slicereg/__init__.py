"""Regular (slice) functions of a quaternionic variable given by power series."""

from .config import DEFAULT, Config
from .errors import SliceRegError
from .quaternion import (
    QI,
    QJ,
    QK,
    ImaginaryUnit,
    Quaternion,
    SliceCoordinates,
    conjugate,
    hamilton_mul,
    inverse,
    norm,
    slice_decompose,
)
from .series import (
    RegularSeries,
    evaluate,
    evaluate_many,
    product_eval_identity,
    reciprocal_eval_identity,
    reciprocal_pointwise,
    reciprocal_series,
    regular_conjugate,
    regular_product,
    scale,
    symmetrization,
    transform_T,
)
from .spheres import (
    ExtremaReport,
    Sphere2,
    SphericalValue,
    ZeroOnSphere,
    is_degenerate,
    modulus_extrema_on_sphere,
    sphere_zero,
    spherical_split,
    value_at,
)
from .zeros import ZeroSet, conjugate_zero_check, symmetrization_roots, zero_set

__version__ = "0.1.0"

__all__ = [
    "QI",
    "QJ",
    "QK",
    "ImaginaryUnit",
    "Quaternion",
    "SliceCoordinates",
    "conjugate",
    "hamilton_mul",
    "inverse",
    "norm",
    "slice_decompose",
    "RegularSeries",
    "evaluate",
    "evaluate_many",
    "product_eval_identity",
    "reciprocal_eval_identity",
    "reciprocal_pointwise",
    "reciprocal_series",
    "regular_conjugate",
    "regular_product",
    "scale",
    "symmetrization",
    "transform_T",
    "ExtremaReport",
    "Sphere2",
    "SphericalValue",
    "ZeroOnSphere",
    "is_degenerate",
    "modulus_extrema_on_sphere",
    "sphere_zero",
    "spherical_split",
    "value_at",
    "DEFAULT",
    "Config",
    "SliceRegError",
    "ZeroSet",
    "conjugate_zero_check",
    "symmetrization_roots",
    "zero_set",
]
