"""Bundled example polygons and duals, with the checks each one carries.

Every fixture is a JSON document holding either a polygon (``vertices``) or a
dual (``nodes``/``edges``/``rotation``) plus an ``expect`` block.  Loading a
fixture re-verifies every expectation and raises ``FixtureError`` on the first
that fails.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Callable

from gmpy2 import mpq

from .deflatability import certify
from .dual import (
    DualTree,
    direct_dual,
    find_illegal_path,
    maximal_outer_paths,
    parse_dual,
    plane_isomorphism,
    trace_visibility_path,
)
from .errors import DeflateKitError
from .exact_geom import Point, parse_scalar, proper_crossing
from .polygon import Polygon, parse_polygon
from .triangulation import enumerate_triangulations
from .visibility import induced_sequence, is_deflated, is_general_position, vv_pairs

NAMES = ("fig1", "fig2", "fig2-dual", "fig4", "fig6-dual", "fig8", "fig9", "fig10", "fig11")


class FixtureError(DeflateKitError):
    pass


@dataclass
class Fixture:
    name: str
    document: dict
    expect: dict
    labels: dict = field(default_factory=dict)
    checked: list[str] = field(default_factory=list)

    @property
    def is_polygon(self) -> bool:
        return "vertices" in self.document

    def polygon(self) -> Polygon:
        return parse_polygon(self.document)

    def dual(self) -> DualTree:
        return parse_dual(self.document)


def fixture_dir():
    return resources.files("deflate_kit") / "fixtures"


def fixture_text(name: str) -> str:
    return (fixture_dir() / f"{name}.json").read_text()


def resolve_path(path: str) -> str:
    """Read a document path; ``fixtures/<name>`` falls back to the bundled copy."""
    p = Path(path)
    if p.exists():
        return p.read_text()
    if p.parts and p.parts[0] == "fixtures" and len(p.parts) == 2:
        bundled = fixture_dir() / p.parts[1]
        if bundled.is_file():
            return bundled.read_text()
    raise FileNotFoundError(path)


def load_fixture(name: str, verify: bool = True) -> Fixture:
    doc = json.loads(fixture_text(name))
    fx = Fixture(name, doc, doc.get("expect", {}), doc.get("labels", {}))
    if verify:
        verify_fixture(fx)
    return fx


# --- expectation checks ----------------------------------------------------


def _tri_node(T, tri) -> int:
    key = sorted(tri)
    for t, cand in enumerate(T.triangles):
        if sorted(cand) == key:
            return t
    raise FixtureError(f"triangle {tri} not in the triangulation")


def _edge_index(n: int, pair) -> int:
    a, b = pair
    if (a + 1) % n == b:
        return a
    if (b + 1) % n == a:
        return b
    raise FixtureError(f"{pair} is not a polygon edge")


def _label_node(fx: Fixture, D: DualTree, name: str) -> int:
    item = fx.labels[name]
    if "node" in item:
        return item["node"]
    T = D.triangulation
    if "triangle" in item:
        return D.node_of_triangle(_tri_node(T, item["triangle"]))
    if "edge" in item:
        return D.node_of_edge(_edge_index(T.n, item["edge"]))
    raise FixtureError(f"label {name} does not name a node")


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise FixtureError(what)


def _unique_dual(P: Polygon) -> DualTree:
    (T,) = enumerate_triangulations(P)
    return direct_dual(P, T)


def _check_general_position(fx, value):
    _require(bool(is_general_position(fx.polygon())) == value, "general position mismatch")


def _check_deflated(fx, value):
    _require(bool(is_deflated(fx.polygon())) == value, "deflatedness mismatch")


def _check_triangulations(fx, value):
    _require(len(enumerate_triangulations(fx.polygon())) == value, "triangulation count mismatch")


def _check_mirror_triangulations(fx, value):
    """Exactly two triangulations, exchanged by a reflection of the labels."""
    P = fx.polygon()
    tris = [set(T.diagonals) for T in enumerate_triangulations(P)]
    n = P.n
    found = False
    if len(tris) == 2:
        for c in range(n):
            image = {tuple(sorted(((c - a) % n, (c - b) % n))) for a, b in tris[0]}
            if image == tris[1]:
                found = True
    _require(found == value, "triangulations are not a mirror pair")


def _check_undirected(fx, value):
    P = fx.polygon()
    counts = [len(direct_dual(P, T).undirected_non_terminal()) for T in enumerate_triangulations(P)]
    _require(all(c == value for c in counts), f"undirected non-terminal edge counts {counts}")


def _certificate(fx):
    cert = fx.__dict__.get("_cert")
    if cert is None:
        cert = certify(fx.polygon())
        fx.__dict__["_cert"] = cert
    return cert


def _check_certificate(fx, value):
    _require(_certificate(fx).kind == value, "certificate kind mismatch")


def _check_rejections_per_triangulation(fx, value):
    cert = _certificate(fx)
    per: dict[int, list[str]] = {}
    for r in cert.rejections:
        per.setdefault(r.triangulation, []).append(r.reason)
    got = {k: sorted(v) for k, v in per.items()}
    _require(all(got.get(t) == sorted(value) for t in range(len(cert.triangulations))), f"rejections {got}")


def _check_visibility_excess(fx, value):
    cert = _certificate(fx)
    witnesses = [(r.vertex, r.edge) for r in cert.rejections if r.reason == "VisibilityExcess"]
    v = fx.labels[value[0]]["vertex"]
    e = _edge_index(fx.polygon().n, fx.labels[value[1]]["edge"])
    _require((v, e) in witnesses, f"VisibilityExcess({v}, {e}) not among {witnesses}")


def _check_excess_realizable(fx, value):
    """Some illegal-path-free candidate rejected only by VisibilityExcess still
    realizes to a deflated polygon with that directed dual."""
    from .deflatability import enumerate_candidate_duals
    from .realize_deform import dual_of, realize

    cert = _certificate(fx)
    keys = {(r.triangulation, r.assignment) for r in cert.rejections if r.reason == "VisibilityExcess"}
    found = False
    for cand in enumerate_candidate_duals(fx.polygon()):
        if (cand.triangulation, cand.assignment) not in keys:
            continue
        D = cand.dual.unbound()
        Q = realize(D)
        if is_deflated(Q) and plane_isomorphism(D, dual_of(Q)) is not None:
            found = True
            break
    _require(found == value, "no VisibilityExcess candidate realizes")


def _check_triangulations_spanned(fx, value):
    _require(len(_certificate(fx).triangulations_spanned()) == value, "triangulations spanned mismatch")


def _check_vv_matches(fx, value):
    other = load_fixture(value["fixture"], verify=False).polygon()
    P = fx.polygon()
    k = value["offset"]
    n = P.n
    mapped = {tuple(sorted(((a + k) % n, (b + k) % n))) for a, b in vv_pairs(other)}
    _require(P.n == other.n and mapped == set(vv_pairs(P)), "vertex-vertex visibilities differ")


def _check_deflation(fx, value):
    from .realize_deform import Frame, Trajectory, check_monotonic

    P = fx.polygon()
    u = fx.labels[value["vertex"]]["vertex"]
    x, y = value["target"]
    target = Point(parse_scalar(x), parse_scalar(y))
    steps = value["frames"]
    frames = []
    for k in range(steps + 1):
        t = mpq(k, steps)
        pts = list(P.vertices)
        pts[u] = P[u] + (target - P[u]).scaled(t)
        frames.append(Frame(t, tuple(pts)))
    traj = Trajectory(tuple(frames))
    _require(check_monotonic(traj).ok, "deflation trajectory is not monotonic")
    end = Polygon(traj.end, normalize=False)
    _require(bool(is_deflated(end)), "deflation trajectory does not end deflated")
    if "through" in value:
        a, b = fx.labels[value["through"]]["edge"]
        _require(proper_crossing(P[u], target, P[a], P[b]), "motion does not pass through the named diagonal")


def _check_illegal(fx, value):
    D = fx.dual() if not fx.is_polygon else _unique_dual(fx.polygon())
    _require((find_illegal_path(D) is None) == (value is None), "illegal path mismatch")


def _check_dual_of(fx, value):
    D = fx.dual()
    other = load_fixture(value, verify=False).polygon()
    _require(plane_isomorphism(D, _unique_dual(other)) is not None, f"dual differs from that of {value}")


def _check_shape_of(fx, value):
    other = load_fixture(value, verify=False).dual()
    D = _unique_dual(fx.polygon())
    _require(plane_isomorphism(other, D, respect_directions=False) is not None, f"dual shape differs from {value}")


def _check_outer_paths(fx, value):
    D = fx.dual()
    names = {item["node"]: name for name, item in fx.labels.items()}
    got = [[names[x] for x in path] for path in maximal_outer_paths(D)]
    _require(got == value, f"outer paths {got}")


def _check_visibility_path(fx, value):
    P = fx.polygon()
    D = _unique_dual(P)
    a, b = (_label_node(fx, D, s) for s in value["start"])
    got = trace_visibility_path(D, a, b)
    want = [_label_node(fx, D, s) for s in value["nodes"]]
    _require(got == want, f"visibility path {got} != {want}")


def _check_induced_sequence(fx, value):
    P = fx.polygon()
    (T,) = enumerate_triangulations(P)
    u = fx.labels[value["vertex"]]["vertex"]
    e = tuple(fx.labels[value["entry"]]["edge"])
    seq = induced_sequence(P, T, u, e)
    want = tuple(tuple(sorted(fx.labels[s]["edge"])) for s in value["chain"])
    _require(seq.chain == want, f"induced sequence {seq.chain} != {want}")


CHECKS: dict[str, Callable[[Fixture, Any], None]] = {
    "general_position": _check_general_position,
    "deflated": _check_deflated,
    "triangulations": _check_triangulations,
    "mirror_triangulations": _check_mirror_triangulations,
    "undirected_non_terminal": _check_undirected,
    "certificate": _check_certificate,
    "rejections_per_triangulation": _check_rejections_per_triangulation,
    "visibility_excess": _check_visibility_excess,
    "excess_realizable": _check_excess_realizable,
    "triangulations_spanned": _check_triangulations_spanned,
    "vv_matches": _check_vv_matches,
    "deflation": _check_deflation,
    "illegal": _check_illegal,
    "dual_of": _check_dual_of,
    "shape_of": _check_shape_of,
    "outer_paths": _check_outer_paths,
    "visibility_path": _check_visibility_path,
    "induced_sequence": _check_induced_sequence,
}


def verify_fixture(fx: Fixture) -> list[str]:
    for key, value in fx.expect.items():
        check = CHECKS.get(key)
        if check is None:
            raise FixtureError(f"{fx.name}: unknown expectation {key!r}")
        try:
            check(fx, value)
        except FixtureError as exc:
            raise FixtureError(f"{fx.name}: {key}: {exc}") from exc
        fx.checked.append(key)
    return fx.checked
