import pytest
from hypothesis import given, settings, strategies as st

from strategies import schemes
from surfmcg.errors import Disconnected, LabelArity, MalformedToken, ParseError
from surfmcg.surface import (CombSurface, boundary_components, classify, euler_characteristic,
                             parse_scheme, standard_scheme, surface_type)
from surfmcg.triangulation import triangulate


def test_parse_sphere_and_torus():
    S = parse_scheme("face a a-")
    assert len(S.faces) == 1 and S.labels == ["a"]
    T = parse_scheme("surface torus\nface a b a- b-  # square\n")
    assert T.name == "torus" and T.classify().genus == 1


def test_parse_boundary_and_interior_labels():
    S = parse_scheme("face a a b b c")
    assert S.boundary_labels == ["c"]
    assert sorted(S.interior_labels) == ["a", "b"]
    assert not S.orientable


@pytest.mark.parametrize("text, err", [
    ("face a+ b", MalformedToken),
    ("face a a a", LabelArity),
    ("shape a", ParseError),
    ("", ParseError),
])
def test_parse_errors(text, err):
    with pytest.raises(err):
        parse_scheme(text)


def test_strict_parse_rejects_disconnected():
    text = "face a a-\nface b b-"
    assert not parse_scheme(text).is_connected
    with pytest.raises(Disconnected):
        parse_scheme(text, strict=True)
    with pytest.raises(Disconnected):
        classify(parse_scheme(text))


@pytest.mark.parametrize("word, chi", [
    ("a a-", 2), ("a b a- b-", 0), ("a b a- b- c d c- d-", -2), ("a a", 1), ("a", 1),
])
def test_euler_characteristic(word, chi):
    assert euler_characteristic(CombSurface.from_words(word)) == chi


def test_classify_examples():
    t = classify(CombSurface.from_words("a b a- b-"))
    assert (t.orientable, t.genus, t.boundary, t.euler, t.excluded) == (True, 1, 0, 0, True)
    p = classify(CombSurface.from_words("a a"))
    assert (p.orientable, p.crosscaps, p.boundary, p.excluded) == (False, 1, 0, True)
    g2 = classify(CombSurface.from_words("a b a- b- c d c- d-"))
    assert (g2.orientable, g2.genus, g2.boundary, g2.excluded) == (True, 2, 0, False)


@pytest.mark.parametrize("kw, excluded", [
    (dict(genus=0), True), (dict(boundary=1), True), (dict(boundary=2), True),
    (dict(crosscaps=1, boundary=1), True), (dict(genus=1), True), (dict(crosscaps=2), True),
    (dict(crosscaps=1), True), (dict(boundary=3), False), (dict(genus=1, boundary=1), False),
    (dict(crosscaps=3), False), (dict(genus=2), False),
])
def test_excluded_list(kw, excluded):
    assert classify(standard_scheme(**kw)).excluded == excluded


def test_boundary_components():
    assert boundary_components(standard_scheme(1)) == []
    assert len(boundary_components(standard_scheme(0, 3))) == 3
    S = CombSurface.from_words("a b a- c")
    assert len(boundary_components(S)) == classify(S).boundary


def test_surface_type_formula():
    t = surface_type(True, -3, 1)
    assert t.genus == 2 and not t.excluded
    n = surface_type(False, -1, 0)
    assert n.crosscaps == 3


@pytest.mark.parametrize("S", [standard_scheme(1), standard_scheme(0, 1), standard_scheme(2),
                               standard_scheme(1, 2), standard_scheme(crosscaps=1, boundary=1)])
def test_triangulate_preserves_invariants(S):
    for T in (triangulate(S), triangulate(S, "split", parts=4)):
        assert T.euler_characteristic() == S.euler_characteristic()
        assert len(T.source.boundary_cycles) == len(S.boundary_cycles)

    T = triangulate(S)
    orbits = {p[1] for p in T.vertex_prov if p[0] == "vertex"}
    assert orbits == set(range(S.num_vertices))


def test_triangulation_edge_sides():
    T = triangulate(standard_scheme(1, 1))
    for e in range(T.n_edges):
        assert len(T.edge_sides[e]) == (1 if T.is_boundary_edge(e) else 2)


@settings(max_examples=60, deadline=None)
@given(schemes())
def test_euler_matches_classification(S):
    t = S.classify()
    if t.orientable:
        assert t.euler == 2 - 2 * t.genus - t.boundary
    else:
        assert t.euler == 2 - t.crosscaps - t.boundary
    assert t.euler == S.euler_characteristic()


@settings(max_examples=40, deadline=None)
@given(schemes(max_labels=4))
def test_triangulate_preserves_euler_and_boundary(S):
    T = triangulate(S)
    assert T.euler_characteristic() == S.euler_characteristic()
    assert len(boundary_components(T.source)) == len(boundary_components(S))


@settings(max_examples=60, deadline=None)
@given(schemes(), st.data())
def test_classify_invariant_under_moves(S, data):
    faces = [list(f) for f in S.faces]
    i = data.draw(st.integers(0, len(faces) - 1))
    k = data.draw(st.integers(0, len(faces[i]) - 1))
    faces[i] = faces[i][k:] + faces[i][:k]
    if data.draw(st.booleans()):
        faces[i] = [(l, not r) for l, r in reversed(faces[i])]
    moved = CombSurface(tuple(tuple(f) for f in faces))
    names = data.draw(st.permutations(S.labels))
    relabeled = moved.relabeled({l: "y" + n for l, n in zip(S.labels, names)})
    assert relabeled.classify() == S.classify()


@settings(max_examples=60, deadline=None)
@given(schemes())
def test_capping(S):
    r = S.classify().boundary
    C = S.capped()
    assert C.euler_characteristic() == S.euler_characteristic() + r
    assert C.classify().boundary == 0
