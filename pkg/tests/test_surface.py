import json

import pytest

from skewgentle import data_text
from skewgentle.errors import NotDissection, SurfaceError
from skewgentle.surface import DissectedOrbifold, load_surface


def cylinder_doc():
    return json.loads(data_text("cylinder.json"))


def test_load_cylinder(cylinder):
    assert len(cylinder.arcs) == 4
    assert cylinder.orbifold_vertices() == ["x"]
    assert cylinder.punctures() == ["p"]
    assert cylinder.greens == ["sb", "st"]


def test_disk_minimal(disk):
    assert len(disk.faces) == 1
    assert len(disk.faces[0]) == 1


def test_orbifold_multiplicity_rejected():
    doc = cylinder_doc()
    # reroute arc 4 so it ends at the orbifold point as a second arc
    doc["arcs"][3]["ends"] = ["top", "x"]
    doc["ribbon"]["x"] = ["2.1", "4.1"]
    del doc["ribbon"]["p"]
    doc["vertices"] = [v for v in doc["vertices"] if v["id"] != "p"]
    with pytest.raises(SurfaceError, match="orbifold endpoint multiplicity"):
        load_surface(json.dumps(doc))


def test_cylinder_faces(cylinder):
    assert len(cylinder.faces) == 2
    for f in cylinder.faces:
        assert sum(1 for d in f.sides if d[0] == "s") == 1
    # the puncture face and the orbifold face both are pentagons
    assert sorted(len(f) for f in cylinder.faces) == [5, 5]
    kinds = set()
    for f in cylinder.faces:
        if any(cylinder.vertices[v] == "orbifold" for v in f.corner_vertices):
            kinds.add("x")
        if any(cylinder.vertices[v] == "puncture" for v in f.corner_vertices):
            kinds.add("p")
    assert kinds == {"x", "p"}


def test_annulus_without_arcs_rejected():
    doc = {
        "vertices": [{"id": "v1", "kind": "boundary-marked"},
                     {"id": "v2", "kind": "boundary-marked"}],
        "arcs": [],
        "ribbon": {"v1": [], "v2": []},
        "boundary": [["v1", "s1"], ["v2", "s2"]],
    }
    with pytest.raises(NotDissection, match="not a dissection"):
        load_surface(json.dumps(doc))


def test_two_segment_face_rejected():
    # annulus joined by a single arc: the unique face sees both segments
    doc = {
        "vertices": [{"id": "v1", "kind": "boundary-marked"},
                     {"id": "v2", "kind": "boundary-marked"}],
        "arcs": [{"id": "a", "ends": ["v1", "v2"]}],
        "ribbon": {"v1": ["a.0"], "v2": ["a.1"]},
        "boundary": [["v1", "s1"], ["v2", "s2"]],
    }
    with pytest.raises(NotDissection):
        load_surface(json.dumps(doc))


def test_delete_one_arc_rejected(cylinder):
    for k in range(4):
        doc = cylinder_doc()
        gone = doc["arcs"][k]["id"]
        doc["arcs"] = [a for a in doc["arcs"] if a["id"] != gone]
        doc["ribbon"] = {v: [t for t in toks if t.split(".")[0] != gone]
                         for v, toks in doc["ribbon"].items()}
        with pytest.raises((NotDissection, SurfaceError)):
            load_surface(json.dumps(doc))


def test_euler_check(cylinder, disk):
    assert disk.euler_check()[:2] == (0, 1)
    g, b, counts = cylinder.euler_check()
    assert (g, b) == (0, 2)
    assert counts["chi"] == 0


def test_face_walk_totality(cylinder):
    seen = set()
    for f in cylinder.faces:
        for d in f.sides:
            if d[0] == "a":
                assert d not in seen
                seen.add(d)
    assert len(seen) == 2 * len(cylinder.arcs)


def test_other_side_involution(cylinder):
    for f in cylinder.faces:
        for i, d in enumerate(f.sides):
            if d[0] != "a":
                continue
            g, j = cylinder.other_side(f.id, i)
            assert cylinder.other_side(g, j) == (f.id, i)


def test_zero_incidence_puncture_flagged():
    doc = {
        "vertices": [{"id": "v", "kind": "boundary-marked"},
                     {"id": "q", "kind": "puncture"},
                     {"id": "p", "kind": "puncture"}],
        "arcs": [{"id": "a", "ends": ["v", "q"]}],
        "ribbon": {"v": ["a.0"], "q": ["a.1"], "p": []},
        "boundary": [["v", "s"]],
    }
    with pytest.raises(NotDissection):
        # p floats free of the ribbon graph: disconnected input
        load_surface(json.dumps(doc))
    doc["vertices"] = doc["vertices"][:2]
    del doc["ribbon"]["p"]
    s = load_surface(json.dumps(doc))
    assert s.warnings == []
