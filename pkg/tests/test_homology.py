import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from strategies import schemes, triangle_loop
from surfmcg import curves as cv
from surfmcg.errors import HasBoundary, NonOrientable, OneSidedTwistCurve, RelativeOnClosed
from surfmcg.gf2 import inverse
from surfmcg.homology import (ChainComplexZ2, class_of_curve, complexes, h1_action,
                              homology_ranks, intersection_form, is_separating_by_class,
                              orientation_action, transvection)
from surfmcg.mcg import twist_word
from surfmcg.surface import CombSurface, standard_scheme
from surfmcg.torus import torus_curve
from surfmcg.triangulation import square_torus, triangulate

PRIMS = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (3, 2), (-2, 3)]


def test_ranks_examples():
    assert homology_ranks(CombSurface.from_words("a a-")) == (1, 0, 1)
    assert homology_ranks(CombSurface.from_words("a b a- b")) == (1, 2, 1)
    assert homology_ranks(standard_scheme(1, 2), relative=True)[1] == 3
    with pytest.raises(RelativeOnClosed):
        homology_ranks(standard_scheme(2), relative=True)


@pytest.mark.parametrize("g", [0, 1, 2])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_relative_rank_formula(g, r):
    assert homology_ranks(standard_scheme(g, r), relative=True)[1] == 2 * g + r - 1


@settings(max_examples=60, deadline=None)
@given(schemes())
def test_betti_alternating_sum_is_euler(S):
    b0, b1, b2 = homology_ranks(S)
    assert b0 - b1 + b2 == S.euler_characteristic()


@settings(max_examples=40, deadline=None)
@given(schemes(), st.booleans())
def test_d_squared_vanishes(S, relative):
    if relative and not S.boundary_labels:
        relative = False
    assert ChainComplexZ2(S, relative=relative).check_d_squared()


def test_triangle_boundary_is_zero():
    T = triangulate(standard_scheme(2))
    t = T.triangles[0]
    c = triangle_loop(T, t)
    assert class_of_curve(T, c).is_zero
    assert is_separating_by_class(T, c)


def test_pants_boundary_parallel_curve():
    T = triangulate(standard_scheme(0, 3), "split", parts=4)
    found = False
    for vs, es in cv.enumerate_cycles(T, 10):
        c = cv.carry_path(T, vs, kind="closed", edges=es)
        if not class_of_curve(T, c).is_zero:
            found = True
            assert class_of_curve(T, c, capped=True).is_zero
            assert is_separating_by_class(T, c) and cv.is_separating_by_cut(T, c)
    assert found


def test_cylinder_and_disk_arcs():
    T = triangulate(standard_scheme(0, 2), "split", parts=4)
    verdicts = {is_separating_by_class(T, cv.carry_path(T, vs, kind="arc", edges=es))
                for vs, es in cv.enumerate_arcs(T, 8)}
    assert verdicts == {True, False}
    D = triangulate(standard_scheme(0, 1), "split", parts=4)
    for vs, es in cv.enumerate_arcs(D, 8):
        a = cv.carry_path(D, vs, kind="arc", edges=es)
        assert is_separating_by_class(D, a)
        assert len(cv.cut_along(D, a)) == 2


def test_genus2_generator_nonseparating():
    from surfmcg.mcg import filling_system
    T = triangulate(standard_scheme(2), "split", parts=4)
    c = filling_system(T, 10).curves[0]
    assert not is_separating_by_class(T, c)


def test_intersection_form_examples():
    Q = intersection_form(square_torus())
    assert Q.tolist() == [[0, 1], [1, 0]]
    assert intersection_form(triangulate(CombSurface.from_words("a a"))).tolist() == [[1]]
    Q2 = intersection_form(triangulate(standard_scheme(2)))
    assert (Q2 == Q2.T).all()
    assert round(abs(np.linalg.det(Q2.astype(float)))) % 2 == 1
    with pytest.raises(HasBoundary):
        intersection_form(triangulate(standard_scheme(1, 1)))


def test_genus2_form_is_symplectic():
    # two hyperbolic blocks up to change of basis: alternating and unimodular
    Q = intersection_form(triangulate(standard_scheme(2)))
    assert Q.shape == (4, 4)
    assert not Q.diagonal().any() and (Q == Q.T).all()
    assert inverse(Q) is not None
    assert intersection_form(triangulate(standard_scheme(2))).tolist() == [
        [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]


@pytest.mark.parametrize("S", [standard_scheme(2), CombSurface.from_words("a a b b c c")])
def test_form_matches_crossing_parity(S):
    T = triangulate(S, "split", parts=4)
    Q = intersection_form(T)
    cs = [cv.carry_path(T, vs, kind="closed", edges=es) for vs, es in cv.enumerate_cycles(T, 7)]
    rng = random.Random(3)
    for _ in range(150):
        a, b = rng.sample(cs, 2)
        x = np.array(class_of_curve(T, a).coords)
        y = np.array(class_of_curve(T, b).coords)
        assert int(x @ Q @ y) % 2 == cv.general_position(a, b).count % 2


@pytest.mark.parametrize("a", PRIMS)
@pytest.mark.parametrize("b", PRIMS)
def test_form_computes_parity_of_torus_intersections(a, b):
    T = square_torus()
    Q = intersection_form(T)
    x = np.array(class_of_curve(T, torus_curve(T, *a)).coords)
    y = np.array(class_of_curve(T, torus_curve(T, *b)).coords)
    assert int(x @ Q @ y) % 2 == abs(a[0] * b[1] - a[1] * b[0]) % 2


def test_h1_action_on_torus():
    T = square_torus()
    m, l = torus_curve(T, 1, 0), torus_curve(T, 0, 1)
    gens = {"a": m}
    assert (h1_action(T, twist_word(T, gens, "")) == np.eye(2)).all()
    B = h1_action(T, twist_word(T, gens, "a"))
    x = np.array(class_of_curve(T, m).coords)
    y = np.array(class_of_curve(T, l).coords)
    assert ((B @ x) % 2 == x).all()
    assert ((B @ y) % 2 == (x + y) % 2).all()
    assert (h1_action(T, twist_word(T, gens, "a a")) == np.eye(2)).all()


def test_transvection_is_involution():
    Q = np.array([[0, 1], [1, 0]], dtype=np.uint8)
    t = transvection(Q, [1, 1])
    assert ((t @ t) % 2 == np.eye(2)).all()


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(range(len(PRIMS))), st.sampled_from([1, -1])),
                max_size=6))
def test_h1_action_properties(letters):
    T = square_torus()
    gens = {f"c{k}": torus_curve(T, *pq) for k, pq in enumerate(PRIMS)}
    text = " ".join(f"c{k}" + ("-" if s < 0 else "") for k, s in letters)
    w = twist_word(T, gens, text)
    B = h1_action(T, w)
    Binv = h1_action(T, w.inverse())
    Q = intersection_form(T)
    assert ((B @ Binv) % 2 == np.eye(2)).all()
    assert ((B.T @ Q @ B) % 2 == Q).all()


def test_orientation_action():
    T = square_torus()
    gens = {"a": torus_curve(T, 1, 0)}
    assert orientation_action(T, twist_word(T, gens, "a a-")) == 1
    with pytest.raises(NonOrientable):
        orientation_action(triangulate(CombSurface.from_words("a a b b")),
                           twist_word(triangulate(CombSurface.from_words("a a b b")), {}, ""))


def test_one_sided_twist_curve_rejected():
    T = triangulate(CombSurface.from_words("a a b b"), "split", parts=4)
    one = next(c for c in (cv.carry_path(T, vs, kind="closed", edges=es)
                           for vs, es in cv.enumerate_cycles(T, 8))
               if cv.sidedness(T, c) == 1)
    with pytest.raises(OneSidedTwistCurve):
        twist_word(T, {"a": one}, "a")


def test_complexes_cached():
    T = square_torus()
    assert complexes(T) is complexes(T)
