"""Exact visibility, directed duals and deflatability certificates for simple polygons."""

from __future__ import annotations

from .deflatability import Certificate, certify, check_compatibility, enumerate_candidate_duals
from .dual import (
    DualTree,
    direct_dual,
    find_illegal_path,
    maximal_outer_paths,
    parse_dual,
    plane_isomorphism,
    trace_visibility_path,
)
from .exact_geom import Point, orient, point
from .fixtures import load_fixture
from .polygon import Polygon, parse_polygon
from .realize_deform import Trajectory, check_monotonic, deform_same_dual, realize
from .smallpoly import classify_small, enumerate_order_types, enumerate_simple_polygons
from .triangulation import Triangulation, enumerate_triangulations
from .visibility import (
    is_deflated,
    is_general_position,
    vertex_sees_edge,
    vertices_visible,
    visibility_graph,
)

__all__ = [
    "Certificate",
    "DualTree",
    "Point",
    "Polygon",
    "Trajectory",
    "Triangulation",
    "certify",
    "check_compatibility",
    "check_monotonic",
    "classify_small",
    "deform_same_dual",
    "direct_dual",
    "enumerate_candidate_duals",
    "enumerate_order_types",
    "enumerate_simple_polygons",
    "enumerate_triangulations",
    "find_illegal_path",
    "is_deflated",
    "is_general_position",
    "load_fixture",
    "maximal_outer_paths",
    "orient",
    "parse_dual",
    "parse_polygon",
    "plane_isomorphism",
    "point",
    "realize",
    "trace_visibility_path",
    "vertex_sees_edge",
    "vertices_visible",
    "visibility_graph",
]
