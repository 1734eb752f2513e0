"""End-to-end acceptance checks.  Each test records one PASS/FAIL line,
printed in the terminal summary (and by ``python tests/test_acceptance.py``)."""
import random
import time
from collections import Counter
from functools import lru_cache
from math import gcd

import numpy as np
import pytest

from conftest import ACCEPTANCE
from surfmcg import curves as cv
from surfmcg.homology import h1_action, homology_ranks, is_separating_by_class
from surfmcg.isotopy import alexander_trick, circle_isotopy, interpolated_rotation, refinement_ratios
from surfmcg.mcg import filling_system, is_trivial, twist_word
from surfmcg.pi1 import (brute_force_trivial, check_peripheral, cyclic_canonical,
                         parse_endomorphism, presentation, word_problem)
from surfmcg.surface import CombSurface, standard_scheme
from surfmcg.torus import wiggled_pair
from surfmcg.triangulation import triangulate


NAMES = {1: "separating by cut = by class", 2: "relative Betti numbers", 3: "Euler bookkeeping",
         4: "torus intersection oracle", 5: "bigon monotonicity", 6: "cylinder iff isotopic",
         7: "genus-2 mapping classes", 8: "peripheral checks", 9: "isotopy certification",
         10: "Dehn algorithm vs brute force"}


def record(n, ok, detail, elapsed=None):
    extra = f" [{elapsed:.1f}s]" if elapsed is not None else ""
    ACCEPTANCE.append(f"{n:02d} {'PASS' if ok else 'FAIL'} {NAMES[n]}: {detail}{extra}")
    print(ACCEPTANCE[-1])


def _tri(g, r):
    return triangulate(standard_scheme(g, r), "split", parts=4)


@lru_cache(maxsize=None)
def enumerated(g, r, max_len=10):
    """Every simple closed edge-path curve and simple arc up to ``max_len``."""
    T = _tri(g, r)
    out = [cv.carry_path(T, vs, kind="closed", edges=es)
           for vs, es in cv.enumerate_cycles(T, max_len)]
    if T.boundary_edges:
        out += [cv.carry_path(T, vs, kind="arc", edges=es)
                for vs, es in cv.enumerate_arcs(T, max_len)]
    return T, out


SURFACES = [(2, 0), (1, 2)]


def test_1_separating_by_cut_matches_class():
    t0 = time.time()
    total, bad = 0, 0
    for g, r in SURFACES:
        T, cs = enumerated(g, r)
        for c in cs:
            total += 1
            bad += cv.is_separating_by_cut(T, c) != is_separating_by_class(T, c)
    dt = time.time() - t0
    ok = bad == 0 and total > 1000 and dt < 60
    record(1, ok, f"{total} curves and arcs, {bad} disagreements", dt)
    assert bad == 0 and total > 1000
    assert dt < 60


def test_2_relative_betti():
    t0 = time.time()
    bad = [(g, r) for g in range(3) for r in range(1, 4)
           if homology_ranks(standard_scheme(g, r), relative=True)[1] != 2 * g + r - 1]
    dt = time.time() - t0
    record(2, not bad and dt < 5, f"relative b1 = 2g+r-1 for g<=2, 1<=r<=3; failures {bad}", dt)
    assert not bad
    assert dt < 5


def test_3_euler_bookkeeping():
    stats = Counter()
    bad = 0
    for g, r in SURFACES:
        T, cs = enumerated(g, r)
        chi = T.euler_characteristic()
        for c in cs:
            change = sum(p.type.euler for p in cv.cut_along(T, c)) - chi
            if c.kind == "arc":
                kind, want = "arc", 1
            elif cv.sidedness(T, c) == 2:
                kind, want = "2-sided", 0
            else:
                # only reachable on non-orientable surfaces; see the ledger
                kind, want = "1-sided", 1
            stats[kind] += 1
            bad += change != want
    record(3, bad == 0, f"{dict(stats)} cuts, {bad} exceptions")
    assert bad == 0


@lru_cache(maxsize=None)
def torus_reductions():
    R = range(-5, 6)
    prims = [(p, q) for p in R for q in R if gcd(p, q) == 1]
    out = []
    k = 0
    for p, q in prims:
        for p2, q2 in prims:
            T, a, b = wiggled_pair(p, q, p2, q2, fingers=k % 5, seed=k)
            k += 1
            P, i, trace = cv.bigon_reduce(cv.general_position(a, b))
            out.append(((p, q, p2, q2), i, trace, P))
    return out


def test_4_torus_oracle():
    t0 = time.time()
    red = torus_reductions()
    dt = time.time() - t0
    wrong = [key for key, i, _, _ in red if i != abs(key[0] * key[3] - key[2] * key[1])]
    spurious = max(tr[0] - i for _, i, tr, _ in red)
    ok = not wrong and dt < 30
    record(4, ok, f"{len(red)} torus pairs, {len(wrong)} wrong, up to {spurious} spurious crossings", dt)
    assert not wrong
    assert dt < 30


def test_5_bigon_monotone():
    red = torus_reductions()
    steps = sum(len(tr) - 1 for _, _, tr, _ in red)
    nonmono = [key for key, _, tr, _ in red if any(x - y != 2 for x, y in zip(tr, tr[1:]))]
    leftover = [key for key, _, _, P in red if cv.region_scan(P.a, P.b)]
    ok = not nonmono and not leftover
    record(5, ok, f"{steps} bigon steps, {len(nonmono)} non-monotone, {len(leftover)} with a bigon left")
    assert ok


def test_6_cylinder_iff_isotopic():
    t0 = time.time()
    T, cs = enumerated(2, 0)
    uniq = {}
    for c in cs:
        if c.kind == "closed":
            uniq.setdefault(c.key, c)
    ess = [c for c in uniq.values() if not cv.is_nullhomotopic(T, c) and cv.sidedness(T, c) == 2]
    stats = Counter()
    for i in range(len(ess)):
        for j in range(i + 1, len(ess)):
            if cv.general_position(ess[i], ess[j]).count:
                continue
            stats[(cv.bounds_cylinder(T, ess[i], ess[j]), cv.are_isotopic(T, ess[i], ess[j]))] += 1
    bad = stats[(True, False)] + stats[(False, True)]
    pairs = sum(stats.values())
    record(6, bad == 0, f"{pairs} disjoint essential pairs ({stats[(True, True)]} isotopic), "
           f"{bad} exceptions", time.time() - t0)
    assert bad == 0 and pairs > 0


def test_7_mapping_class_suite():
    t0 = time.time()
    T = _tri(2, 0)
    F = filling_system(T, 10)
    gens = {f"g{k}": c for k, c in enumerate(F.curves)}
    verdicts, problems = [], []

    def check(text, want=None):
        w = twist_word(T, gens, text)
        v = is_trivial(w, F)
        H = h1_action(T, w)
        if not v and want is True or v and want is False:
            problems.append(f"{text!r} -> {v}")
        if v and not (H == np.eye(len(H), dtype=H.dtype)).all():
            problems.append(f"{text!r} trivial but acts on H1")
        verdicts.append(v)
        return v

    check("", True)
    for g in gens:
        check(g, False)
    one_nontrivial = False
    names = list(gens)
    for x in names:
        for y in names[names.index(x) + 1:]:
            i = cv.bigon_reduce(cv.general_position(gens[x], gens[y]))[1]
            v = check(f"{x} {y} {x}- {y}-", True if i == 0 else None)
            one_nontrivial |= i == 1 and not v
    if not one_nontrivial:
        problems.append("no nontrivial commutator with i = 1")
    dt = time.time() - t0
    record(7, not problems and dt < 120, f"{len(verdicts)} words on {len(gens)} generators, "
           f"problems {problems}", dt)
    assert not problems
    assert dt < 120


def test_8_peripheral():
    problems = []
    for S in (standard_scheme(1, 1), standard_scheme(0, 3)):
        P = presentation(S)
        e = parse_endomorphism("", P, P)
        rep = check_peripheral(P, P, e)
        if not (rep["pass"] and rep["injective"] and all(b["n"] == 1 for b in rep["boundaries"])):
            problems.append(f"identity on {S.name}: {rep}")
    A = presentation(standard_scheme(0, 2))
    g = A.generators[0]
    rep = check_peripheral(A, A, parse_endomorphism(f"map {g} -> {g} {g}", A, A))
    if rep["pass"] or {abs(b["n"]) for b in rep["boundaries"]} != {2}:
        problems.append(f"annulus square: {rep}")
    M = presentation(CombSurface.from_words("a a t h t-", name="mobius"))
    if [M.fmt(b) for b in M.boundary_words] != ["a a"]:
        problems.append(f"mobius boundary {M.to_dict()}")
    record(8, not problems, "identity passes on one-holed torus and pants, annulus square n=2, "
           f"Mobius boundary a a; problems {problems}")
    assert not problems


def test_9_isotopy_certification():
    t0 = time.time()
    G = circle_isotopy(lambda x: x + 0.04 * np.sin(2 * np.pi * x), 0.1, 2048, 256)
    g = interpolated_rotation(1.0, 0.1)
    A = alexander_trick(g, 0.1)
    ratios, defects = refinement_ratios(g, 0.1)
    dt = time.time() - t0
    m = G.metrics
    ok = (m["min_forward_difference"] > 0 and m["start_error"] <= 1e-9 and m["end_error"] <= 1e-9
          and A.metrics["psi1_inside_error"] <= 1e-9 and all(r <= 0.6 for r in ratios) and dt < 30)
    record(9, ok, f"min forward difference {m['min_forward_difference']:.3g}, "
           f"endpoint errors {m['start_error']:.1g}/{m['end_error']:.1g}, "
           f"psi1 error {A.metrics['psi1_inside_error']:.1g}, refinement ratios "
           f"{[round(r, 3) for r in ratios]}", dt)
    assert ok


def test_10_dehn_vs_brute_force():
    t0 = time.time()
    P = presentation(standard_scheme(2))
    r = P.relators[0]
    rng = random.Random(0)
    letters = [1, 2, 3, 4, -1, -2, -3, -4]
    cache, disagree, trivial = {}, [], 0
    for _ in range(10000):
        w = tuple(rng.choice(letters) for _ in range(rng.randint(0, 6)))
        key = cyclic_canonical(w)
        if key not in cache:
            cache[key] = brute_force_trivial(r, w, 12)
        trivial += cache[key]
        if word_problem(P, w) != cache[key]:
            disagree.append(w)
    dt = time.time() - t0
    record(10, not disagree and dt < 120, f"10000 sampled words ({len(cache)} cyclic classes, "
           f"{trivial} trivial), {len(disagree)} disagreements", dt)
    assert not disagree
    assert dt < 120


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
