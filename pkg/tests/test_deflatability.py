from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deflate_kit.deflatability import (
    COMPATIBLE_FOUND,
    NON_DEFLATABLE,
    Compatible,
    Rejection,
    certificate_to_json,
    certify,
    check_compatibility,
    dump_certificate,
    enumerate_candidate_duals,
    parse_certificate,
)
from deflate_kit.dual import dual_vertex_edge_pairs, find_illegal_path
from deflate_kit.errors import MalformedDocument, NotGeneralPosition, NotSimple
from deflate_kit.fixtures import load_fixture
from deflate_kit.realize_deform import dual_of
from deflate_kit.triangulation import enumerate_triangulations
from deflate_kit.visibility import is_deflated, is_general_position, visibility_graph

from conftest import oracle_sampled_ve, oracle_vv, poly

CONVEX_QUAD = [(0, 0), (4, 0), (5, 3), (1, 4)]
NONCONVEX_QUAD = [(0, 0), (4, 0), (1, 1), (0, 4)]


@pytest.mark.parametrize("cs, count", [(NONCONVEX_QUAD, 1), (CONVEX_QUAD, 4)])
def test_candidate_counts(cs, count):
    assert len(list(enumerate_candidate_duals(poly(*cs)))) == count


def test_candidate_order_is_bitmask_order():
    cands = list(enumerate_candidate_duals(poly(*CONVEX_QUAD)))
    assert [c.triangulation for c in cands] == [0, 0, 1, 1]
    assert [c.assignment[0][1] for c in cands] == ["ba", "ab", "ba", "ab"]


def test_convex_quad_deflatable():
    cert = certify(poly(*CONVEX_QUAD))
    assert cert.kind == COMPATIBLE_FOUND
    assert is_deflated(cert.realization)


def test_deflated_polygon_finds_own_dual(corpus):
    for P in corpus[:10]:
        cert = certify(P)
        assert cert.kind == COMPATIBLE_FOUND
        assert cert.candidate_count == 1
        assert cert.witness == dual_of(P)


@pytest.mark.parametrize("name", ["fig8", "fig9", "fig10"])
def test_figures_non_deflatable(name):
    cert = certify(load_fixture(name, verify=False).polygon())
    assert cert.kind == NON_DEFLATABLE
    assert cert.witness is None and cert.realization is None
    assert cert.candidate_count == 4


def test_fig10_spans_both_triangulations():
    cert = certify(load_fixture("fig10", verify=False).polygon())
    assert cert.triangulations_spanned() == [0, 1]


def test_fig11_compatible():
    cert = certify(load_fixture("fig11", verify=False).polygon())
    assert cert.kind == COMPATIBLE_FOUND
    assert [r.reason for r in cert.rejections] == ["IllegalPath"]


def test_non_general_position_rejected():
    with pytest.raises(NotGeneralPosition):
        certify(poly((0, 0), (4, 0), (2, 2), (4, 4), (0, 4)))


def _check_certificate(P):
    """Each rejection must be genuine and a witness must really deflate P."""
    cert = certify(P)
    cands = list(enumerate_candidate_duals(P))
    # the search stops at the first compatible candidate
    if cert.kind == COMPATIBLE_FOUND:
        assert len(cands) >= cert.candidate_count
        w = cands[len(cert.rejections)]
        assert (w.triangulation, w.assignment) == (cert.witness_triangulation, cert.witness_assignment)
    else:
        assert len(cands) == cert.candidate_count
    for r, cand in zip(cert.rejections, cands):
        assert (r.triangulation, r.assignment) == (cand.triangulation, cand.assignment)
        if r.reason == "IllegalPath":
            assert find_illegal_path(cand.dual) == list(r.path)
        else:
            assert find_illegal_path(cand.dual) is None
            assert (r.vertex, r.edge) in dual_vertex_edge_pairs(cand.dual)
            assert not oracle_sampled_ve(P, r.vertex, r.edge, samples=128)
    if cert.kind == COMPATIBLE_FOUND:
        R = cert.realization
        assert R.n == P.n
        assert is_deflated(R)
        assert oracle_vv(R) <= oracle_vv(P)
        assert visibility_graph(R).ve <= visibility_graph(P).ve
        assert isinstance(check_compatibility(P, cert.witness), Compatible)
    return cert


@pytest.mark.parametrize("name", ["fig1", "fig8", "fig9", "fig10", "fig11"])
def test_figure_certificates_sound(name):
    _check_certificate(load_fixture(name, verify=False).polygon())


@given(st.integers(0, 10**9))
@settings(max_examples=25, deadline=None)
def test_random_certificates_sound(seed):
    rng = random.Random(seed)
    n = rng.randint(4, 7)
    cs = [(rng.randint(0, 10), rng.randint(0, 10)) for _ in range(n)]
    if len(set(cs)) < n:
        return
    try:
        P = poly(*cs)
    except NotSimple:
        return
    if not is_general_position(P):
        return
    _check_certificate(P)


def test_visibility_excess_reports_lowest_pair():
    fx = load_fixture("fig8", verify=False)
    P = fx.polygon()
    for cand in enumerate_candidate_duals(P):
        verdict = check_compatibility(P, cand.dual)
        if isinstance(verdict, Rejection):
            missing = sorted(p for p in dual_vertex_edge_pairs(cand.dual) if p not in visibility_graph(P).ve)
            assert (verdict.vertex, verdict.edge) == missing[0]


def test_certificate_deterministic():
    P = load_fixture("fig10", verify=False).polygon()
    assert dump_certificate(certify(P)) == dump_certificate(certify(P))


@pytest.mark.parametrize("name", ["fig8", "fig11"])
def test_parallel_matches_serial(name, monkeypatch):
    P = load_fixture(name, verify=False).polygon()
    serial = dump_certificate(certify(P, workers=1))
    monkeypatch.setenv("DEFLATE_KIT_THREADS", "2")
    assert dump_certificate(certify(P)) == serial


@pytest.mark.parametrize("name", ["fig8", "fig11"])
def test_certificate_json_round_trip(name):
    cert = certify(load_fixture(name, verify=False).polygon())
    doc = dump_certificate(cert)
    again = parse_certificate(doc)
    assert again.kind == cert.kind
    assert again.rejections == cert.rejections
    assert dump_certificate(again) == doc
    assert json.loads(doc)["kind"] == cert.kind


def test_certificate_lists_triangulations():
    P = load_fixture("fig10", verify=False).polygon()
    doc = certificate_to_json(certify(P))
    want = [sorted(T.sorted_diagonals()) for T in enumerate_triangulations(P)]
    assert [[tuple(d) for d in t["diagonals"]] for t in doc["triangulations"]] == [[tuple(d) for d in w] for w in want]


@pytest.mark.parametrize("bad", ["{", '{"kind": "NonDeflatable"}', '{"polygon": 3}'])
def test_certificate_parse_errors(bad):
    with pytest.raises(MalformedDocument):
        parse_certificate(bad)
