import json

import pytest

from gkm3.graph import parse_graph
from gkm3.verdict import SCHEMA, realizability_report

from conftest import corpus_graph

NOT_GKM_K4 = {
    "vertices": ["A", "B", "C", "D"],
    "edges": [
        {"from": "A", "to": "B", "weight": [1, -2]},
        {"from": "B", "to": "C", "weight": [1, 2]},
        {"from": "C", "to": "D", "weight": [0, 3]},
        {"from": "D", "to": "A", "weight": [2, -3]},
        {"from": "A", "to": "C", "weight": [1, 3]},
        {"from": "B", "to": "D", "weight": [3, -1]},
    ],
}


def test_cube_tier_and_warning(cube):
    rep = realizability_report(cube)
    assert rep["schema"] == SCHEMA
    assert rep["tier"] == "integer-gkm-realizable"
    assert rep["betti"] == [1, 3, 3, 1, 0, 0]
    assert rep["poincare_duality"]["ok"]
    assert rep["z_freeness"]["status"] == "certified"
    assert not rep["connected_isotropy"]["ok"]
    assert any("unique" in w for w in rep["warnings"])
    assert rep["connections"]["count"] == 1
    assert rep["connections"]["loop_holonomy_trivial"]
    assert rep["surface"]["name"] == "sphere"
    assert rep["findings"] == []


def test_flag_tier(flag):
    rep = realizability_report(flag)
    assert rep["tier"] == "rigid-class"
    assert rep["betti"] == [1, 2, 2, 1, 0, 0]
    assert rep["connected_isotropy"]["ok"]
    assert rep["surface"]["name"] == "crosscap-1 surface"
    assert rep["orientability"]["orientable"]
    assert rep["warnings"] == []


def test_theta_tier(theta):
    rep = realizability_report(theta)
    assert rep["tier"] == "rigid-class"
    assert rep["betti"] == [1, 0, 0, 1, 0, 0]


def test_nonorientable_tier(nonorientable):
    rep = realizability_report(nonorientable)
    assert rep["tier"] == "not-realizable"
    assert not rep["poincare_duality"]["ok"]
    assert not rep["orientability"]["orientable"]
    assert rep["orientability"]["violating_cycle"]
    assert rep["z_freeness"]["status"] == "not-free"


def test_invalid_tier():
    g = parse_graph(json.dumps({
        "vertices": ["a", "b"],
        "edges": [{"from": "a", "to": "b", "weight": [1, 0]}] * 2,
    }))
    rep = realizability_report(g)
    assert rep["tier"] == "invalid"
    assert not rep["validity"]["ok"]
    assert rep["connections"] is None
    assert rep["betti"] is None
    assert rep["surface"] is None


def test_not_gkm_tier():
    g = parse_graph(json.dumps(NOT_GKM_K4))
    rep = realizability_report(g)
    assert rep["validity"]["ok"]
    assert rep["tier"] == "not-gkm"
    assert rep["connections"]["count"] == 0
    assert rep["orientability"] is None
    assert rep["surface"] is None
    # Cohomology is still reported for information.
    assert rep["betti"] is not None


def test_connection_index_selection(theta):
    rep0 = realizability_report(theta, connection_index=0)
    seen = {rep0["surface"]["name"]}
    for i in range(1, rep0["connections"]["count"]):
        rep = realizability_report(theta, connection_index=i)
        assert rep["tier"] == rep0["tier"]
        seen.add(rep["surface"]["name"])
    assert len(seen) > 1  # connection choice changes the glued surface
    with pytest.raises(IndexError):
        realizability_report(theta, connection_index=99)


def test_report_is_json_serializable(any_corpus_graph):
    rep = realizability_report(any_corpus_graph)
    parsed = json.loads(json.dumps(rep, sort_keys=True))
    assert parsed["schema"] == SCHEMA
    for key in (
        "validity", "connections", "orientability", "betti",
        "poincare_duality", "z_freeness", "connected_isotropy", "surface",
        "tier", "warnings", "findings", "options", "name",
    ):
        assert key in parsed


def test_orientability_consistency_flag(theta):
    # The theta graph has both orientable and nonorientable connections, so
    # the report flags the discrepancy instead of assuming invariance.
    rep = realizability_report(theta)
    assert rep["orientability"]["consistent_across_connections"] in (
        True, False,
    )
    if not rep["orientability"]["consistent_across_connections"]:
        assert any("differs" in w for w in rep["warnings"])
