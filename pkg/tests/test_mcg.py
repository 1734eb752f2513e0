import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from surfmcg import curves as cv, overlay
from surfmcg.errors import (CarrierMismatch, ExcludedSurface, OneSidedTwistCurve,
                            UnknownGenerator, Unsupported)
from surfmcg.homology import class_of_curve, h1_action, intersection_form, transvection
from surfmcg.mcg import (TwistWord, apply_word, dehn_twist, filling_system, is_trivial,
                         twist_word, verify_alignment)
from surfmcg.surface import CombSurface, standard_scheme
from surfmcg.torus import torus_curve
from surfmcg.triangulation import square_torus, triangulate


@pytest.fixture(scope="module")
def g2():
    T = triangulate(standard_scheme(2), "split", parts=4)
    F = filling_system(T, 10)
    gens = {f"g{k}": c for k, c in enumerate(F.curves)}
    return T, F, gens


def _i(a, b):
    return cv.bigon_reduce(cv.general_position(a, b))[1]


def _h1_identity(H):
    return bool((H == np.eye(len(H), dtype=H.dtype)).all())


# -- words ----------------------------------------------------------------

def test_word_free_reduction_and_text(g2):
    T, _, gens = g2
    w = twist_word(T, gens, "g0 g1 g1- g2")
    assert str(w) == "g0 g2" and len(w) == 2
    assert str(twist_word(T, gens, "g0 g0-")) == "1"
    assert str(w.inverse()) == "g2- g0-"
    assert str(w * w.inverse()) == "1"


def test_word_validation(g2):
    T, _, gens = g2
    with pytest.raises(UnknownGenerator):
        twist_word(T, gens, "zz")
    with pytest.raises(CarrierMismatch):
        twist_word(square_torus(), gens, "")
    N = triangulate(CombSurface.from_words("a a b b c c"), "split", parts=4)
    one = next(c for c in (cv.carry_path(N, vs, kind="closed", edges=es)
                           for vs, es in cv.enumerate_cycles(N, 8)) if c.sidedness() == 1)
    with pytest.raises(OneSidedTwistCurve):
        TwistWord(N, {"a": one}, [("a", 1)])


# -- twists on the torus --------------------------------------------------

def test_twist_on_torus_examples():
    T = square_torus()
    m, l = torus_curve(T, 1, 0), torus_curve(T, 0, 1)
    w = twist_word(T, {"m": m}, "m")
    img = apply_word(w, l)
    assert _i(img, l) == 1 and _i(img, m) == 1
    x, y = class_of_curve(T, m).coords, class_of_curve(T, l).coords
    assert class_of_curve(T, img).coords == tuple((a + b) % 2 for a, b in zip(x, y))
    # turning left across the meridian
    assert cv.are_isotopic(T, img, torus_curve(T, -1, 1))
    assert not cv.are_isotopic(T, img, torus_curve(T, 1, 1))
    assert cv.are_isotopic(T, apply_word(w.inverse(), l), torus_curve(T, 1, 1))
    assert apply_word(twist_word(T, {"m": m}, ""), l) == l
    assert dehn_twist(m, torus_curve(T, 1, 0, offset=(0.5, 0.3))) == torus_curve(T, 1, 0, offset=(0.5, 0.3))


@pytest.mark.parametrize("p, q", [(0, 1), (1, 1), (2, 1), (1, 2), (3, -2), (-1, 3)])
@pytest.mark.parametrize("k", [1, -1, 2])
def test_torus_twist_powers(p, q, k):
    # T_(1,0)^k sends (p, q) to (p - k q, q)
    T = square_torus()
    w = twist_word(T, {"m": torus_curve(T, 1, 0)}, " ".join(["m" if k > 0 else "m-"] * abs(k)))
    img = apply_word(w, torus_curve(T, p, q))
    assert cv.are_isotopic(T, img, torus_curve(T, p - k * q, q), oriented=True)


def test_apply_word_carrier_checked(g2):
    T, _, gens = g2
    with pytest.raises(CarrierMismatch):
        apply_word(twist_word(T, gens, "g0"), torus_curve(square_torus(), 1, 0))


# -- filling systems ------------------------------------------------------

def test_filling_system_genus2(g2):
    T, F, _ = g2
    assert len(F.pants_curves) == 3
    assert [(t.euler, t.boundary) for t in F.pieces] == [(-1, 3), (-1, 3)]
    assert all(cv.crossing_count(a, b) == 0 for i, a in enumerate(F.pants_curves)
               for b in F.pants_curves[i + 1:])
    types = cv._pieces(overlay.build(T, F.curves, cut=set(range(len(F.curves)))))
    assert all(p.type.euler == 1 and p.type.boundary == 1 for p in types)
    again = filling_system(T, 10)
    assert [c.key for c in again.curves] == [c.key for c in F.curves]


def test_filling_system_one_holed_torus():
    T = triangulate(standard_scheme(1, 1), "split", parts=4)
    F = filling_system(T, 10)
    assert len(F.pants_curves) == 1
    assert [(t.euler, t.boundary) for t in F.pieces] == [(-1, 3)]
    assert any(c.kind == "arc" for c in F.duals)


@pytest.mark.parametrize("S", [standard_scheme(1), standard_scheme(0, 2), standard_scheme(0)])
def test_filling_system_excluded(S):
    T = triangulate(S, "split", parts=4)
    with pytest.raises(ExcludedSurface):
        filling_system(T)
    with pytest.raises(ExcludedSurface):
        is_trivial(twist_word(T, {}, ""))


def test_filling_system_non_orientable_unsupported():
    with pytest.raises(Unsupported):
        filling_system(triangulate(CombSurface.from_words("a a b b c c"), "split", parts=4))


# -- triviality -----------------------------------------------------------

def test_is_trivial_examples(g2):
    T, F, gens = g2
    assert is_trivial(twist_word(T, gens, ""), F)
    assert is_trivial(twist_word(T, gens, "g0 g0-"), F)
    for g in gens:
        w = twist_word(T, gens, g)
        assert not is_trivial(w, F)


def test_separating_twist_is_nontrivial_but_invisible_in_homology(g2):
    T, F, gens = g2
    sep = [g for g, c in gens.items() if cv.is_separating_by_cut(T, c)]
    assert sep
    w = twist_word(T, gens, sep[0])
    assert _h1_identity(h1_action(T, w))
    assert not is_trivial(w, F)


def test_commutators(g2):
    T, F, gens = g2
    names = list(gens)
    seen = set()
    for a in names:
        for b in names:
            if a >= b:
                continue
            i = _i(gens[a], gens[b])
            v = is_trivial(twist_word(T, gens, f"{a} {b} {a}- {b}-"), F)
            if i == 0:
                assert v
            seen.add((i, v))
    assert (1, False) in seen


def test_braid_relation(g2):
    T, F, gens = g2
    a, b = next((x, y) for x in gens for y in gens if x < y and _i(gens[x], gens[y]) == 1)
    assert is_trivial(twist_word(T, gens, f"{a} {b} {a} {b}- {a}- {b}-"), F)
    assert not is_trivial(twist_word(T, gens, f"{a} {b} {a}- {b}-"), F)


def test_verify_alignment(g2):
    T, F, gens = g2
    rep = verify_alignment(twist_word(T, gens, ""), F)
    assert all(r["aligned"] and r["trace"] == [] for r in rep)
    rep = verify_alignment(twist_word(T, gens, "g0"), F)
    assert rep[0]["aligned"]
    assert not all(r["aligned"] for r in rep)
    for r in rep:
        assert all(x - y == 2 for x, y in zip(r["trace"], r["trace"][1:]))


def test_declared_reflection(g2):
    T, F, gens = g2
    refl = {"r": [(c, c) for c in F.curves]}
    assert not is_trivial(twist_word(T, gens, "r", refl), F)
    assert is_trivial(twist_word(T, gens, "r r", refl), F)
    from surfmcg.homology import orientation_action
    assert orientation_action(T, twist_word(T, gens, "r", refl)) == -1
    assert orientation_action(T, twist_word(T, gens, "r r g0", refl)) == 1


def test_one_holed_torus_twists():
    T = triangulate(standard_scheme(1, 1), "split", parts=4)
    F = filling_system(T, 10)
    gens = {"p": F.pants_curves[0]}
    closed = [c for c in F.duals if c.kind == "closed"]
    if closed:
        gens["d"] = closed[0]
    assert not is_trivial(twist_word(T, gens, "p"), F)
    assert is_trivial(twist_word(T, gens, "p p-"), F)


# -- properties -----------------------------------------------------------

def _letters(n, max_size):
    return st.lists(st.tuples(st.integers(0, n - 1), st.sampled_from([1, -1])), max_size=max_size)


def _text(letters):
    return " ".join(f"g{k}" + ("-" if s < 0 else "") for k, s in letters)


@settings(max_examples=25, deadline=None)
@given(_letters(6, 4), st.integers(0, 5))
def test_homology_equivariance(g2, letters, k):
    T, F, gens = g2
    w = twist_word(T, gens, _text(letters))
    c = F.curves[k]
    H = h1_action(T, w)
    lhs = np.array(class_of_curve(T, apply_word(w, c)).coords)
    rhs = (H @ np.array(class_of_curve(T, c).coords)) % 2
    assert (lhs == rhs).all()


@settings(max_examples=15, deadline=None)
@given(_letters(6, 3))
def test_h1_action_is_product_of_transvections(g2, letters):
    T, F, gens = g2
    w = twist_word(T, gens, _text(letters))
    Q = intersection_form(T)
    B = np.eye(len(Q), dtype=np.uint8)
    for name, _ in w.letters:
        B = (B @ transvection(Q, class_of_curve(T, gens[name]).coords)) % 2
    assert (B == h1_action(T, w)).all()


@settings(max_examples=15, deadline=None)
@given(_letters(6, 3), _letters(6, 3), st.integers(0, 5))
def test_apply_word_respects_concatenation(g2, u, v, k):
    T, F, gens = g2
    wu, wv = twist_word(T, gens, _text(u)), twist_word(T, gens, _text(v))
    c = F.curves[k]
    assert cv.are_isotopic(T, apply_word(wu * wv, c), apply_word(wu, apply_word(wv, c)),
                           oriented=True)


@settings(max_examples=10, deadline=None)
@given(_letters(6, 2), _letters(6, 2))
def test_conjugation_covariance_and_soundness(g2, u, w):
    T, F, gens = g2
    wu, ww = twist_word(T, gens, _text(u)), twist_word(T, gens, _text(w))
    v = is_trivial(ww, F)
    assert is_trivial(wu * ww * wu.inverse(), F) == v
    if not _h1_identity(h1_action(T, ww)):
        assert not v


def test_disjoint_twists_commute(g2):
    T, F, gens = g2
    names = list(gens)
    pairs = [(a, b) for a in names for b in names if a < b and _i(gens[a], gens[b]) == 0]
    assert pairs
    for a, b in pairs:
        ab = twist_word(T, gens, f"{a} {b}")
        ba = twist_word(T, gens, f"{b} {a}")
        for c in F.curves:
            assert cv.are_isotopic(T, apply_word(ab, c), apply_word(ba, c), oriented=True)
