"""Mixed volumes, mixed discriminants, and spectral verification of
Alexandrov-Fenchel type inequalities for boxes, zonotopes, and polygon
fans."""

from ._kernels import IMPLEMENTATION as kernel_implementation
from .exact import InputError, PreconditionError
from .geom import Box, PolygonFan, SupportVector, Zonotope, support, minkowski_combine, volume, edge_lengths
from .mixvol import (
    InequalityReport,
    mixed_area,
    mixed_volume,
    mixed_volume_boxes,
    mixed_volume_oracle,
    mixed_volume_zonotopes,
    verify_af,
)
from .mixdisc import (
    diagonal_operator,
    md_minor_identity,
    mixed_discriminant,
    trace_identities,
    verify_alexandrov,
)
from .spectral import (
    OperatorPair,
    SpectralReport,
    eigh,
    eigh_weighted,
    hyperbolicity_check,
    inertia,
    perron_check,
)
from .afop import (
    NotHyperbolicError,
    bochner_check,
    box_af_operator,
    box_support_vector,
    fan_af_operator,
    polygon_form_matrix,
    spectrum_report,
    verify_af_via_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "Box",
    "InequalityReport",
    "InputError",
    "NotHyperbolicError",
    "OperatorPair",
    "PolygonFan",
    "PreconditionError",
    "SpectralReport",
    "SupportVector",
    "Zonotope",
    "bochner_check",
    "box_af_operator",
    "box_support_vector",
    "diagonal_operator",
    "edge_lengths",
    "eigh",
    "eigh_weighted",
    "fan_af_operator",
    "hyperbolicity_check",
    "inertia",
    "kernel_implementation",
    "md_minor_identity",
    "minkowski_combine",
    "mixed_area",
    "mixed_discriminant",
    "mixed_volume",
    "mixed_volume_boxes",
    "mixed_volume_oracle",
    "mixed_volume_zonotopes",
    "perron_check",
    "polygon_form_matrix",
    "spectrum_report",
    "support",
    "trace_identities",
    "verify_af",
    "verify_af_via_spectrum",
    "verify_alexandrov",
    "volume",
    "__version__",
]
