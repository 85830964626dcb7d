"""Worst-case-optimal packing of circle sets into squares and non-acute triangles.

Any set of circles whose combined area is at most pi/(3 + 2*sqrt(2)) of a
square's area (about 53.90%), or at most a right/obtuse triangle's incircle
area, is packable; both bounds are tight. The packer realizes these bounds
constructively by greedily splitting the circle set in two and recursing into
corner-rounded triangular subcontainers ("hats"). An independent verifier
certifies every produced packing, and a smallest-container mode turns the
density guarantee into a constant-factor approximation.
"""

from .errors import (
    ConjugacyError,
    DocumentError,
    InvalidParameterError,
    MalformedTreeError,
    OverCapacityError,
    SplitPackError,
    UnsupportedContainerError,
)
from .geometry import (
    PHI_SQUARE,
    Circle,
    Hat,
    HatDimensions,
    Point,
    SplitKey,
    Square,
    Triangle,
    altitude_halves,
    convex_polygon_distance,
    critical_density,
    hat_dimensions,
    hat_split_key,
    point_segment_distance,
    segment_segment_distance,
    signed_distance,
    square_twincircles,
    triangle_incircle,
)
from .splitting import (
    CircleSet,
    ConjugatedPair,
    check_conjugated,
    min_guarantee,
    split,
    weighted_split,
)
from .packer import (
    PackRequest,
    PackStats,
    PackingNode,
    min_container,
    pack,
    packable_area,
    place_circle_in_hat,
    place_hats_in_square,
    place_subhats_in_hat,
)
from .verifier import Check, CheckKind, VerificationReport, projection_widths, verify
from .documents import InstanceDocument, PackingDocument, decide
from .svg import render_packing_svg

__version__ = "0.1.0"

__all__ = [
    "PHI_SQUARE",
    "Check",
    "CheckKind",
    "Circle",
    "CircleSet",
    "ConjugacyError",
    "ConjugatedPair",
    "DocumentError",
    "Hat",
    "HatDimensions",
    "InstanceDocument",
    "InvalidParameterError",
    "MalformedTreeError",
    "OverCapacityError",
    "PackRequest",
    "PackStats",
    "PackingDocument",
    "PackingNode",
    "Point",
    "SplitKey",
    "SplitPackError",
    "Square",
    "Triangle",
    "UnsupportedContainerError",
    "VerificationReport",
    "altitude_halves",
    "check_conjugated",
    "convex_polygon_distance",
    "critical_density",
    "decide",
    "hat_dimensions",
    "hat_split_key",
    "min_container",
    "min_guarantee",
    "pack",
    "packable_area",
    "place_circle_in_hat",
    "place_hats_in_square",
    "place_subhats_in_hat",
    "point_segment_distance",
    "projection_widths",
    "render_packing_svg",
    "segment_segment_distance",
    "signed_distance",
    "split",
    "square_twincircles",
    "triangle_incircle",
    "verify",
    "weighted_split",
    "__version__",
]
