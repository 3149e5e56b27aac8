"""Compatible directed duals and non-deflatability certificates."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .dual import (
    AB,
    BA,
    DualTree,
    direct_dual,
    dual_to_json,
    dual_vertex_edge_pairs,
    dual_vertex_vertex_pairs,
    find_illegal_path,
    parse_dual,
)
from .errors import MalformedDocument, NotGeneralPosition
from .polygon import Polygon, parse_polygon, polygon_to_json
from .triangulation import Triangulation, enumerate_triangulations, make_triangulation
from .visibility import is_general_position, vertex_sees_edge, vertices_visible

NON_DEFLATABLE = "NonDeflatable"
COMPATIBLE_FOUND = "CompatibleFound"


@dataclass(frozen=True)
class Candidate:
    triangulation: int
    assignment: tuple[tuple[int, str], ...]  # (dual edge id, direction) for the completed edges
    dual: DualTree = field(compare=False, repr=False)


@dataclass(frozen=True)
class Rejection:
    triangulation: int
    assignment: tuple[tuple[int, str], ...]
    reason: str  # "IllegalPath" or "VisibilityExcess"
    path: tuple[int, ...] = ()
    vertex: int | None = None
    edge: int | None = None


@dataclass(frozen=True)
class Compatible:
    """Marker verdict for a candidate passing every check."""


def enumerate_candidate_duals(P: Polygon) -> Iterator[Candidate]:
    """Directed duals of every triangulation with every completion of the
    undirected non-terminal edges.  Completions run in bitmask order over the
    undirected edges sorted by id; bit i set means direction ``ab``."""
    for tid, T in enumerate(enumerate_triangulations(P)):
        base = direct_dual(P, T)
        open_edges = base.undirected_non_terminal()
        for mask in range(1 << len(open_edges)):
            assignment = tuple((e, AB if mask >> i & 1 else BA) for i, e in enumerate(open_edges))
            yield Candidate(tid, assignment, base.with_directions(dict(assignment)))


def check_compatibility(P: Polygon, D: DualTree) -> Compatible | Rejection:
    """Combinatorial visibilities of D must be visibilities of P.

    The first missing vertex-edge pair (ascending vertex, then edge) is
    reported.  Vertex-vertex pairs hold automatically since D's triangles are
    triangles of P; they are still checked.
    """
    for u, g in sorted(dual_vertex_edge_pairs(D)):
        if not vertex_sees_edge(P, u, g):
            return Rejection(-1, (), "VisibilityExcess", vertex=u, edge=g)
    for u, v in sorted(dual_vertex_vertex_pairs(D)):
        if not vertices_visible(P, u, v):
            raise AssertionError(f"triangle vertices {u}, {v} not visible in the source polygon")
    return Compatible()


def _judge(P: Polygon, cand: Candidate) -> Compatible | Rejection:
    bad = find_illegal_path(cand.dual)
    if bad is not None:
        return Rejection(cand.triangulation, cand.assignment, "IllegalPath", path=tuple(bad))
    verdict = check_compatibility(P, cand.dual)
    if isinstance(verdict, Rejection):
        return Rejection(cand.triangulation, cand.assignment, verdict.reason, vertex=verdict.vertex, edge=verdict.edge)
    return verdict


@dataclass(frozen=True)
class Certificate:
    kind: str
    polygon: Polygon
    triangulations: tuple[tuple[tuple[int, int], ...], ...]
    rejections: tuple[Rejection, ...]
    witness: DualTree | None = None
    witness_triangulation: int | None = None
    witness_assignment: tuple[tuple[int, str], ...] = ()
    realization: Polygon | None = None

    @property
    def candidate_count(self) -> int:
        return len(self.rejections) + (1 if self.witness is not None else 0)

    def triangulations_spanned(self) -> list[int]:
        ids = {r.triangulation for r in self.rejections}
        if self.witness_triangulation is not None:
            ids.add(self.witness_triangulation)
        return sorted(ids)


def _worker_count() -> int:
    raw = os.environ.get("DEFLATE_KIT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _judge_packed(args):
    P, cand = args
    return _judge(P, cand)


def certify(P: Polygon, workers: int | None = None) -> Certificate:
    """Search every candidate directed dual; return the first compatible one
    (with its realization) or an exhaustive rejection list."""
    from .realize_deform import realize

    gp = is_general_position(P)
    if not gp:
        raise NotGeneralPosition(gp.witness)
    tris: list[Triangulation] = enumerate_triangulations(P)
    diag_lists = tuple(tuple(T.sorted_diagonals()) for T in tris)
    cands = list(enumerate_candidate_duals(P))
    workers = workers or _worker_count()
    if workers > 1 and len(cands) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            verdicts = list(pool.map(_judge_packed, [(P, c) for c in cands]))
    else:
        verdicts = []
        for c in cands:
            v = _judge(P, c)
            verdicts.append(v)
            if isinstance(v, Compatible):
                break
    rejections = []
    for cand, verdict in zip(cands, verdicts):
        if isinstance(verdict, Compatible):
            return Certificate(
                COMPATIBLE_FOUND,
                P,
                diag_lists,
                tuple(rejections),
                witness=cand.dual,
                witness_triangulation=cand.triangulation,
                witness_assignment=cand.assignment,
                realization=realize(cand.dual.unbound()),
            )
        rejections.append(verdict)
    return Certificate(NON_DEFLATABLE, P, diag_lists, tuple(rejections))


# --- documents -------------------------------------------------------------


def _assignment_json(assignment) -> list:
    return [{"edge": e, "dir": d} for e, d in assignment]


def certificate_to_json(cert: Certificate) -> dict:
    doc: dict = {
        "kind": cert.kind,
        "polygon": polygon_to_json(cert.polygon),
        "triangulations": [{"id": i, "diagonals": [list(d) for d in diags]} for i, diags in enumerate(cert.triangulations)],
        "candidates": [],
    }
    for r in cert.rejections:
        entry = {"triangulation": r.triangulation, "assignment": _assignment_json(r.assignment), "reason": r.reason}
        if r.reason == "IllegalPath":
            entry["path"] = list(r.path)
        else:
            entry["vertex"] = r.vertex
            entry["edge"] = r.edge
        doc["candidates"].append(entry)
    if cert.witness is not None:
        doc["candidates"].append(
            {
                "triangulation": cert.witness_triangulation,
                "assignment": _assignment_json(cert.witness_assignment),
                "reason": "Compatible",
            }
        )
        doc["witness"] = dual_to_json(cert.witness)
        doc["realization"] = polygon_to_json(cert.realization)
    return doc


def dump_certificate(cert: Certificate) -> str:
    return json.dumps(certificate_to_json(cert), indent=2)


def parse_certificate(document: str | dict) -> Certificate:
    if isinstance(document, str):
        try:
            data = json.loads(document)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"invalid JSON: {exc}") from exc
    else:
        data = document
    try:
        P = parse_polygon(data["polygon"])
        tris = tuple(tuple(tuple(d) for d in t["diagonals"]) for t in data["triangulations"])
        rejections = []
        witness_tid = None
        witness_assignment: tuple = ()
        for c in data["candidates"]:
            assignment = tuple((int(a["edge"]), a["dir"]) for a in c["assignment"])
            if c["reason"] == "Compatible":
                witness_tid, witness_assignment = c["triangulation"], assignment
            elif c["reason"] == "IllegalPath":
                rejections.append(Rejection(c["triangulation"], assignment, "IllegalPath", path=tuple(c["path"])))
            elif c["reason"] == "VisibilityExcess":
                rejections.append(
                    Rejection(c["triangulation"], assignment, "VisibilityExcess", vertex=c["vertex"], edge=c["edge"])
                )
            else:
                raise MalformedDocument(f"unknown reason {c['reason']!r}")
        witness = parse_dual(data["witness"]) if "witness" in data else None
        if witness is not None and witness_tid is not None:
            witness = _rebind(P, tris[witness_tid], witness)
        realization = parse_polygon(data["realization"]) if "realization" in data else None
        return Certificate(
            data["kind"], P, tris, tuple(rejections), witness, witness_tid, witness_assignment, realization
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise MalformedDocument(f"bad certificate document: {exc}") from exc


def _rebind(P: Polygon, diagonals, witness: DualTree) -> DualTree:
    """Attach the witness to its triangulation of P (the document stores the
    binding only as node labels)."""
    try:
        T = make_triangulation(P, diagonals)
    except ValueError as exc:
        raise MalformedDocument(f"witness triangulation: {exc}") from exc
    bound = direct_dual(P, T).with_directions(dict(enumerate(witness.directions)))
    if bound != witness:
        raise MalformedDocument("witness does not match its triangulation")
    return bound
