"""Explicit bounding circles and spheres for similitude IFS fractals."""

from .ifs import (
    AddressWord,
    Ball,
    DEFAULT_NODE_BUDGET,
    IfsSystem,
    NodeBudgetExceeded,
    Point,
    Similitude2,
    Similitude3,
    address_points,
    apply_map,
    apply_map_ball,
    apply_word,
    chaos_game,
    dist,
    hutchinson_balls,
)
from .minball import SupportSet, ball_from_support, min_ball, radius_function
from .bounds import (
    BoundReport,
    CircumcircleError,
    apply_M,
    best_bounding_ball,
    circumcircle_bifractal,
    circumcircle_trifractal,
    containment_tol,
    general_bounding_ball,
    mean_centers,
    mu_norm,
    mu_star,
    mu_values,
    tighten,
    verify_containment,
)
from .queries import HitInterval, Line, LineIntersection, intersect_line, line_ball_distance
from .render import (
    CIRCUM_COLOR,
    GENERAL_COLOR,
    CircleOutline,
    Label,
    LineSegment,
    PointCloud,
    Scene,
    Viewport,
    auto_viewport,
    canvas_transform,
    emit,
)
from .cli import IfsDocumentError, parse_ifs, serialize_ifs

__version__ = "0.1.0"

__all__ = [
    "AddressWord",
    "Ball",
    "BoundReport",
    "CIRCUM_COLOR",
    "CircleOutline",
    "CircumcircleError",
    "DEFAULT_NODE_BUDGET",
    "GENERAL_COLOR",
    "HitInterval",
    "IfsDocumentError",
    "IfsSystem",
    "Label",
    "Line",
    "LineIntersection",
    "LineSegment",
    "NodeBudgetExceeded",
    "Point",
    "PointCloud",
    "Scene",
    "Similitude2",
    "Similitude3",
    "SupportSet",
    "Viewport",
    "address_points",
    "apply_M",
    "apply_map",
    "apply_map_ball",
    "apply_word",
    "auto_viewport",
    "ball_from_support",
    "best_bounding_ball",
    "canvas_transform",
    "chaos_game",
    "circumcircle_bifractal",
    "circumcircle_trifractal",
    "containment_tol",
    "dist",
    "emit",
    "general_bounding_ball",
    "hutchinson_balls",
    "intersect_line",
    "line_ball_distance",
    "mean_centers",
    "min_ball",
    "mu_norm",
    "mu_star",
    "mu_values",
    "parse_ifs",
    "radius_function",
    "serialize_ifs",
    "tighten",
    "verify_containment",
]
