import itertools
import json

import pytest

from skewgentle.algebra import (
    QuiverPresentation,
    SkewGroupAlgebra,
    bar_presentation,
    gentle_check,
    morita_idempotents,
    presentations_isomorphic,
    skew_gentle_from_dissection,
)
from skewgentle.errors import AlgebraError
from skewgentle.fields import QQ, Field
from skewgentle.surface import load_surface


@pytest.fixture(scope="module")
def triple(cylinder):
    return skew_gentle_from_dissection(cylinder)


def paper_cylinder_triple():
    vertices = ["1", "2", "3", "4"]
    arrows = {"a": ("1", "2"), "b": ("2", "3"), "c": ("1", "4"),
              "d": ("4", "3"), "e": ("4", "4"), "eps": ("2", "2")}
    relations = [[(1, ("a", "b"))], [(1, ("c", "d"))], [(1, ("e", "e"))]]
    return QuiverPresentation(vertices, arrows, relations), ("eps",)


def test_cylinder_triple_matches_paper(triple):
    expected, special = paper_cylinder_triple()
    hit = presentations_isomorphic(triple.presentation, expected,
                                   triple.special, special)
    assert hit is not None
    # quiver vertices are the arcs by construction
    assert hit["vertices"] == {"1": "1", "2": "2", "3": "3", "4": "4"}


def test_cylinder_gentle_pair(triple):
    ok, witness = gentle_check(triple.gentle_pair())
    assert ok, witness


def test_gentle_fail_three_arrows():
    p = QuiverPresentation(["u", "v"],
                           {"a": ("u", "v"), "b": ("u", "v"), "c": ("u", "v")}, [])
    ok, witness = gentle_check(p)
    assert not ok and "axiom 1" in witness


def test_gentle_infinite_dimensional_fail():
    p = QuiverPresentation(["u"], {"a": ("u", "u")}, [])
    ok, witness = gentle_check(p)
    assert not ok and "axiom 4" in witness


def test_disk_single_arc_trivial():
    doc = {
        "vertices": [{"id": "v", "kind": "boundary-marked"},
                     {"id": "w", "kind": "boundary-marked"}],
        "arcs": [{"id": "a", "ends": ["v", "w"]}],
        "ribbon": {"v": ["a.0"], "w": ["a.1"]},
        "boundary": [["v", "s1", "w", "s2"]],
    }
    t = skew_gentle_from_dissection(load_surface(json.dumps(doc)))
    assert list(t.presentation.vertices) == ["a"]
    assert not t.presentation.arrows and not t.special


def test_bar_presentation_matches_paper(triple):
    bar = bar_presentation(triple)
    expect = QuiverPresentation(
        ["1", "2", "2'", "3", "4"],
        {"a": ("1", "2"), "a'": ("1", "2'"), "b": ("2", "3"), "b'": ("2'", "3"),
         "c": ("1", "4"), "d": ("4", "3"), "e": ("4", "4")},
        [[(1, ("a", "b")), (1, ("a'", "b'"))], [(1, ("c", "d"))], [(1, ("e", "e"))]])
    assert presentations_isomorphic(bar.presentation, expect) is not None


def test_bar_arithmetic(triple):
    bar = bar_presentation(triple).presentation
    e = {v: bar.unit(v) for v in bar.vertices}
    for v in bar.vertices:
        assert e[v] * e[v] == e[v]
    a = {x: bar.arrow_elem(x) for x in bar.arrows}
    # ba = -b'a' modulo the binomial relation
    ba = a["2>3"] * a["1>2"]
    bpap = a["2>3'"] * a["1>2'"]
    assert ba == -bpap and ba


def test_bar_dimension_preserved(triple):
    assert bar_presentation(triple).presentation.dim() == triple.algebra().dim() == 16


def brute_force_dim(p):
    # independent oracle: plain BFS over words, linear algebra on normal forms
    words = {(v, ()) for v in p.vertices}
    frontier = list(words)
    while frontier:
        nxt = []
        for v, arrows in frontier:
            here = p.tgt(arrows[-1]) if arrows else v
            for a2 in p.arrows:
                if p.src(a2) != here:
                    continue
                w = (v, arrows + (a2,))
                if len(w[1]) > 12:
                    raise AssertionError("unexpected long path")
                nxt.append(w)
        live = []
        for w in nxt:
            if p.path_elem(w[0], w[1]):
                live.append(w)
        frontier = [w for w in live if w not in words]
        words.update(live)
    nfs = set()
    for v, arrows in words:
        elem = p.path_elem(v, arrows)
        key = tuple(sorted(elem.terms))
        nfs.add(key)
    return len(nfs)


def test_dim_against_brute_force(triple):
    bar = bar_presentation(triple).presentation
    assert bar.dim() == brute_force_dim(bar)


def test_two_special_loops_bar():
    doc = {
        "vertices": [{"id": "v", "kind": "boundary-marked"},
                     {"id": "x1", "kind": "orbifold"},
                     {"id": "x2", "kind": "orbifold"}],
        "arcs": [{"id": "a1", "ends": ["v", "x1"]}, {"id": "a2", "ends": ["v", "x2"]}],
        "ribbon": {"v": ["a1.0", "a2.0"], "x1": ["a1.1"], "x2": ["a2.1"]},
        "boundary": [["v", "s"]],
    }
    t = skew_gentle_from_dissection(load_surface(json.dumps(doc)))
    assert len(t.special) == 2
    bar = bar_presentation(t)
    assert len(bar.presentation.vertices) == 4
    assert len(bar.presentation.arrows) == 4  # one base arrow, both ends split
    assert bar.presentation.dim() == t.algebra().dim() == 8


def test_multiply_associative_sampled(triple):
    bar = bar_presentation(triple).presentation
    basis = [bar.path_elem(v, w) for v, w in bar.basis()]
    for x, y, z in itertools.islice(itertools.product(basis, repeat=3), 0, None, 97):
        assert (x * y) * z == x * (y * z)


def test_cover_presentation_matches_paper(cylinder):
    from skewgentle.cover import build_double_cover

    cov = build_double_cover(cylinder)
    t = skew_gentle_from_dissection(cov.surface)
    assert not t.special
    expect = QuiverPresentation(
        ["1-", "1+", "2", "3-", "3+", "4-", "4+"],
        {"a-": ("1-", "2"), "a+": ("1+", "2"), "b-": ("2", "3-"), "b+": ("2", "3+"),
         "c-": ("1-", "4-"), "c+": ("1+", "4+"), "d-": ("4-", "3-"), "d+": ("4+", "3+"),
         "e-": ("4-", "4-"), "e+": ("4+", "4+")},
        [[(1, ("a-", "b-"))], [(1, ("a+", "b+"))], [(1, ("c-", "d-"))],
         [(1, ("c+", "d+"))], [(1, ("e-", "e-"))], [(1, ("e+", "e+"))]])
    ok, witness = gentle_check(t.presentation)
    assert ok, witness
    hit = presentations_isomorphic(t.presentation, expect)
    assert hit is not None


def test_skew_group_morita_classes(cylinder):
    from skewgentle.cover import build_double_cover

    cov = build_double_cover(cylinder)
    t = skew_gentle_from_dissection(cov.surface)
    sga = SkewGroupAlgebra(t.presentation, cov.sigma_vertices_of_quiver(),
                           cov.sigma_arrows_of_quiver(t))
    idems = morita_idempotents(sga)
    assert len(idems) == 5
    labels = sorted(lbl for lbl, _ in idems)
    assert labels == ["1+", "2:+", "2:-", "3+", "4+"]
    for lbl, e in idems:
        assert sga.equal(sga.mult(e, e), e)
    for (l1, e1), (l2, e2) in itertools.combinations(idems, 2):
        assert sga.is_zero(sga.mult(e1, e2)), (l1, l2)
        assert sga.is_zero(sga.mult(e2, e1))


def test_skew_group_trivial_sigma():
    p = QuiverPresentation(["v"], {}, [])
    sga = SkewGroupAlgebra(p, {"v": "v"}, {})
    idems = morita_idempotents(sga)
    assert len(idems) == 2


def test_non_involutive_sigma_rejected():
    p = QuiverPresentation(["u", "v", "w"], {}, [])
    with pytest.raises(AlgebraError, match="involution"):
        SkewGroupAlgebra(p, {"u": "v", "v": "w", "w": "u"}, {})


def test_char2_rejected():
    with pytest.raises(AlgebraError):
        Field(2)


def test_local_inverse(triple):
    bar = bar_presentation(triple).presentation
    x = bar.unit("4") + bar.arrow_elem("4>4")
    inv = bar.local_inverse(x, "4")
    assert x * inv == bar.unit("4")
