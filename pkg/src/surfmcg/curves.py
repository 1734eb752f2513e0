"""Operations on carried curves: carrying, cutting, general position, bigons,
isotopy and cylinder tests."""
from __future__ import annotations

from dataclasses import dataclass, field
from gmpy2 import mpq

from . import overlay
from .errors import (CarrierMismatch, MatchingViolation, MixedKinds, NotCarried,
                     NotSimple, PreconditionViolated, Unsupported)
from .surface import CombSurface
from .normal import NormalCurve, interleave, normalize, side_index, u_of
from .pi1 import free_reduce, inverse, is_conjugate, tree_cotree, words_of_loops

THIRD = mpq(1, 3)


# -- carrying edge paths ---------------------------------------------------

def _edge_between(T, a, b):
    for e in T.incident_edges[a]:
        if T.other_end(e, a) == b:
            return e
    raise NotCarried(f"vertices {a} and {b} are not adjacent")


def _near(T, e, v):
    return THIRD if T.edge_ends[e][0] == v else 1 - THIRD


def _other_edge_at(T, t, v, e):
    tri = T.triangles[t]
    c = tri.verts.index(v)
    a, b = tri.edges[c], tri.edges[(c - 1) % 3]
    if e == a:
        return b
    if e == b:
        return a
    raise NotCarried("edge path leaves its triangle fan")


def _fan(T, v, cur, e_in, e_out):
    """Rotate about v from e_in (in triangle cur) until e_out, or the boundary.

    Returns ``(crossed, cur, stop_edge)`` where ``crossed`` lists
    ``(edge, triangle entered)``; ``stop_edge`` is None when e_out was reached.
    """
    crossed = []
    for _ in range(len(T.incident_edges[v]) + 2):
        f = _other_edge_at(T, cur, v, e_in)
        if f == e_out:
            return crossed, cur, None
        o = T.other_side(cur, side_index(T, cur, f))
        if o is None:
            return crossed, cur, f
        crossed.append((f, o[0]))
        cur, e_in = o[0], f
    raise NotCarried("fan walk did not terminate")


def _pushoff(T, verts, edges, tau, kind):
    pts, tris = [], []
    n = len(edges)
    if kind == "arc":
        crossed, cur, stop = _fan(T, verts[0], tau, edges[0], None)
        if stop is None:
            return None
        walk_tris = [tau] + [t for _, t in crossed]      # s_0 .. s_m
        m = len(crossed)
        pts.append((stop, _near(T, stop, verts[0])))
        tris.append(walk_tris[m])
        for i in range(m, 0, -1):
            f = crossed[i - 1][0]
            pts.append((f, _near(T, f, verts[0])))
            tris.append(walk_tris[i - 1])
        cur = tau
        inner = range(1, n)
    else:
        cur = tau
        inner = range(1, n + 1)
    for i in inner:
        v = verts[i]
        e_in = edges[i - 1]
        e_out = edges[i % n] if kind == "closed" else edges[i]
        crossed, cur, stop = _fan(T, v, cur, e_in, e_out)
        if stop is not None:
            return None
        for f, t2 in crossed:
            pts.append((f, _near(T, f, v)))
            tris.append(t2)
    if kind == "arc":
        v = verts[n]
        crossed, cur, stop = _fan(T, v, cur, edges[n - 1], None)
        if stop is None:
            return None
        for f, t2 in crossed:
            pts.append((f, _near(T, f, v)))
            tris.append(t2)
        pts.append((stop, _near(T, stop, v)))
        return pts, tris
    if cur != tau:
        # one-sided: the push-off returns on the other side, cross the path once
        pts.append((edges[0], mpq(1, 2)))
        tris.append(tau)
    return pts, tris


def carry_path(T, path, kind=None, name="", edges=None) -> NormalCurve:
    """Push a simple edge path (vertex list) off itself into normal position.

    A closed path repeats its first vertex at the end.  Arcs must start and
    end at boundary vertices with everything in between in the interior.
    ``edges`` disambiguates multiple edges between two vertices.
    """
    verts = list(path)
    if kind is None:
        kind = "closed" if len(verts) > 2 and verts[0] == verts[-1] else "arc"
    if edges is None:
        edges = [_edge_between(T, verts[i], verts[i + 1]) for i in range(len(verts) - 1)]
    edges = list(edges)
    core = verts[:-1] if kind == "closed" else verts
    if len(set(core)) != len(core):
        raise NotSimple("edge path revisits a vertex")
    if kind == "closed":
        if verts[0] != verts[-1] or len(edges) < 2:
            raise NotCarried("closed path must return to its start")
        if len(edges) == 2 and edges[0] == edges[1]:
            raise NotSimple("path backtracks")
    else:
        bv = T.boundary_vertices
        if verts[0] not in bv or verts[-1] not in bv:
            raise NotCarried("arc must start and end on the boundary")
        if any(v in bv for v in verts[1:-1]) or any(T.is_boundary_edge(e) for e in edges):
            raise NotCarried("arc interior must avoid the boundary")
    errors = []
    for tau, _ in T.edge_sides[edges[0]]:
        try:
            res = _pushoff(T, verts, edges, tau, kind)
            if res is None or len(res[0]) < 2:
                continue
            c = NormalCurve(T, kind, tuple(res[0]), tuple(res[1]), name)
            return normalize(c)
        except (NotCarried, NotSimple, MatchingViolation) as exc:
            errors.append(exc)
    if errors:
        raise errors[0]
    raise NotCarried("path has no push-off on either side")


# -- carrying normal coordinates --------------------------------------------

def carry_coords(T, corners, name="", kind=None) -> NormalCurve:
    """Curve from per-triangle corner counts ``{t: (c0, c1, c2)}``.

    ``c_k`` counts normal arcs cutting off corner k.  The data must satisfy
    the matching conditions and trace a single component.
    """
    counts = {t: tuple(int(x) for x in corners.get(t, (0, 0, 0))) for t in range(T.n_triangles)}
    for t, c in counts.items():
        if any(x < 0 for x in c):
            raise MatchingViolation(f"negative corner count in triangle {t}")
    side_n = {}
    for t, c in counts.items():
        for k in range(3):
            side_n[(t, k)] = c[k] + c[(k + 1) % 3]
    for e, sides in enumerate(T.edge_sides):
        vals = {side_n[s] for s in sides}
        if len(vals) > 1:
            raise MatchingViolation(f"edge {e}: sides report {sorted(vals)} crossings")
    npts = {e: side_n[sides[0]] for e, sides in enumerate(T.edge_sides)}
    pos = {e: [mpq(i + 1, n + 1) for i in range(n)] for e, n in npts.items()}
    # in each triangle pair up points: side k's points ordered by u
    link = {}

    def pt_u(t, k, i):
        s = T.triangles[t].signs[k]
        e = T.triangles[t].edges[k]
        n = npts[e]
        # i-th point of side k in increasing u
        idx = i if s > 0 else n - 1 - i
        return (e, idx)

    for t, c in counts.items():
        for k in range(3):
            kp = (k - 1) % 3          # side before corner k
            nkp = side_n[(t, kp)]
            for i in range(c[k]):
                # i-th nearest corner k on side k (start of side k), and on side kp (its end)
                a = pt_u(t, k, i)
                b = pt_u(t, kp, nkp - 1 - i)
                link.setdefault(a, []).append((b, t))
                link.setdefault(b, []).append((a, t))
    if not link:
        raise NotCarried("coordinates are all zero")
    ends = [p for p, l in link.items() if len(l) == 1]
    start = min(ends) if ends else min(link)
    kind = kind or ("arc" if ends else "closed")
    order, tris = [start], []
    prev_t, cur = None, start
    while True:
        opts = [(q, t) for q, t in link[cur] if t != prev_t]
        if not opts:
            break
        q, t = opts[0]
        tris.append(t)
        if q == start:
            break
        order.append(q)
        prev_t, cur = t, q
    if len(order) != len(link):
        raise MatchingViolation(f"coordinates trace more than one component "
                                f"({len(order)} of {len(link)} points on the first)")
    pts = [(e, pos[e][i]) for e, i in order]
    c = NormalCurve(T, kind, tuple(pts), tuple(tris), name)
    return normalize(c)


def carry(T, data, kind=None, name="") -> NormalCurve:
    if isinstance(data, dict):
        return carry_coords(T, data, name=name, kind=kind)
    return carry_path(T, data, kind=kind, name=name)


def corner_counts(c: NormalCurve) -> dict:
    """Per-triangle corner counts of a normal curve (no returns)."""
    T = c.carrier
    out = {}
    n = len(c.points)
    for i, t in enumerate(c.tris):
        k1 = side_index(T, t, c.points[i][0])
        k2 = side_index(T, t, c.points[(i + 1) % n][0])
        if k1 == k2:
            raise NotCarried("curve has a return; normalise first")
        corner = k1 if (k1 - k2) % 3 == 1 else k2
        row = out.setdefault(t, [0, 0, 0])
        row[corner] += 1
    return {t: tuple(v) for t, v in sorted(out.items())}


# -- cutting ------------------------------------------------------------------

@dataclass
class CutPiece:
    scheme: object
    type: object
    boundary_from_curve: list     # per boundary cycle: True if made only of curve sides

    def to_dict(self) -> dict:
        d = self.type.to_dict()
        d["curve_boundaries"] = sum(self.boundary_from_curve)
        return d


def _check_carrier(T, *curves):
    for c in curves:
        if c.carrier is not T:
            raise NotCarried("curve lives on a different triangulation")


def _pieces(ov) -> list:
    out = []
    for comp in ov.scheme.components():
        cyc = comp.boundary_cycles
        flags = [all(ov.info[l][0] == "c" for l, _ in cy) for cy in cyc]
        out.append(CutPiece(comp, comp.classify(), flags))
    return out


def cut_along(T, c: NormalCurve) -> list:
    """Components of F split open along c, each with its classification."""
    _check_carrier(T, c)
    return _pieces(overlay.cached_build(T, [c], cut={0}))


def is_separating_by_cut(T, c) -> bool:
    return len(cut_along(T, c)) >= 2


def is_nullhomotopic(T, c) -> bool:
    if c.kind != "closed":
        raise ValueError("null-homotopy is tested for closed curves")
    for p in cut_along(T, c):
        t = p.type
        if t.orientable and t.genus == 0 and t.boundary == 1 and t.euler == 1 \
                and all(p.boundary_from_curve):
            return True
    return False


def sidedness(T, c) -> int:
    _check_carrier(T, c)
    return c.sidedness()


# -- pairs ------------------------------------------------------------------

def crossing_count(a: NormalCurve, b: NormalCurve) -> int:
    return len(_crossings(a, b))


def _crossings(a, b) -> list:
    """Crossing chords ``(triangle, chord of a, chord of b)``.

    Screened in floating point; any float tie is re-decided exactly.
    """
    out = []
    bt = b.float_chords_by_tri
    exact_a = exact_b = None
    for t, ca in a.float_chords_by_tri.items():
        cb = bt.get(t)
        if not cb:
            continue
        for i, u1, u2 in ca:
            lo, hi = (u1, u2) if u1 < u2 else (u2, u1)
            for j, v1, v2 in cb:
                if v1 in (lo, hi) or v2 in (lo, hi):
                    if exact_a is None:
                        exact_a, exact_b = a.chords, b.chords
                    hit = interleave(*exact_a[i][1:], *exact_b[j][1:])
                else:
                    hit = (lo < v1 < hi) != (lo < v2 < hi)
                if hit:
                    out.append((t, i, j))
    return out


@dataclass
class CurvePair:
    a: NormalCurve
    b: NormalCurve
    crossings: list = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.crossings)


def _pair(a, b) -> CurvePair:
    return CurvePair(a, b, _crossings(a, b))


def _gap(positions, s, d):
    """Distance from s to the nearest other position in direction d (edge ends included)."""
    best = (1 - s) if d > 0 else s
    for p in positions:
        if p != s and (p - s) * d > 0:
            best = min(best, abs(p - s))
    return best


def general_position(a: NormalCurve, b: NormalCurve) -> CurvePair:
    """Perturb b off the points it shares with a, towards b's transported left."""
    if a.carrier is not b.carrier:
        raise CarrierMismatch("curves live on different triangulations")
    shared = a.point_set & b.point_set
    if not shared:
        return _pair(a, b)
    dirs = b.side_directions()
    on = {}
    for e, p in a.points + b.points:
        on.setdefault(e, set()).add(p)
    new = []
    for j, (e, p) in enumerate(b.points):
        if (e, p) in shared:
            d = dirs[j]
            p = p + d * _gap(on[e], p, d) / 3
        new.append((e, p))
    # each moved point stays inside its gap, so b's own point order (and its
    # simplicity) is unchanged
    nb = NormalCurve(b.carrier, b.kind, tuple(new), b.tris, b.name, _checked=True)
    return _pair(a, nb)


def general_position_many(curves) -> list:
    """Perturb each curve off the points it shares with the curves before it."""
    out = []
    for c in curves:
        taken = set()
        for d in out:
            taken |= d.point_set
        shared = c.point_set & taken
        if shared:
            dirs = c.side_directions()
            on = {}
            for e, p in list(taken) + list(c.points):
                on.setdefault(e, set()).add(p)
            new = []
            for j, (e, p) in enumerate(c.points):
                if (e, p) in shared:
                    d = dirs[j]
                    p = p + d * _gap(on[e], p, d) / 3
                    on[e].add(p)
                new.append((e, p))
            c = NormalCurve(c.carrier, c.kind, tuple(new), c.tris, c.name, _checked=True)
        out.append(c)
    return out


# -- wiggles ---------------------------------------------------------------

def _endpoints(t, curves):
    """Chord ends on the sides of t as ``(u, curve, chord, point index)``, sorted."""
    out = []
    for ci, c in enumerate(curves):
        n = len(c.points)
        for j, u1, u2 in c.chords_by_tri.get(t, ()):
            out.append((u1, ci, j, j))
            out.append((u2, ci, j, (j + 1) % n))
    out.sort()
    return out


def _across(T, t, e):
    for t2, _ in T.edge_sides[e]:
        if t2 != t:
            return t2
    raise NotCarried(f"edge {e} is on the boundary")


def _nudge(T, t, on, e, p, du, frac):
    """Point on edge e at ``frac`` of the gap from p in u-direction du of t."""
    d = du * T.triangles[t].signs[side_index(T, t, e)]
    return (e, p + d * frac * _gap(on[e], p, d))


def _finger_candidates(a, b):
    fingers, smoves = [], []
    for t in sorted(set(a.tris) & set(b.tris)):
        ends = _endpoints(t, [a, b])
        m = len(ends)
        for k in range(m):
            for du in (1, -1):
                x, y = ends[k], ends[(k + du) % m]
                if x[1] == 0 and y[1] == 1:
                    if not interleave(*a.chords[x[2]][1:], *b.chords[y[2]][1:]):
                        fingers.append((t, x[3], y[3], y[2], du))
        ach = [(u1, u2) for _, u1, u2 in a.chords_by_tri[t]]
        for j, u1, u2 in b.chords_by_tri[t]:
            if sum(interleave(u1, u2, *v) for v in ach) == 1:
                smoves.append((t, j))
    return fingers, smoves


def finger_move(a, b, choice=0) -> NormalCurve:
    """Isotope b by a finger move that adds exactly two crossings with a.

    Prefers pushing a finger of b around an endpoint of a neighbouring
    a-chord; falls back to an S-shaped zigzag of a b-chord that crosses a
    once.  ``choice`` picks among the candidates.
    """
    T = a.carrier
    fingers, smoves = _finger_candidates(a, b)
    on = {}
    for e, p in a.points + b.points:
        on.setdefault(e, set()).add(p)
    pts, tris = list(b.points), list(b.tris)
    if fingers:
        t, ja, jb_pt, ib, du = fingers[choice % len(fingers)]
        e, p = a.points[ja]
        t2 = _across(T, t, e)
        # du points from a's endpoint towards b's endpoint along the triangle
        z2 = _nudge(T, t, on, e, p, du, THIRD)
        z1 = _nudge(T, t, on, e, p, -du, THIRD)
        ins = [z1, z2] if jb_pt != ib else [z2, z1]
        new_pts = pts[:ib + 1] + ins + pts[ib + 1:]
        new_tris = tris[:ib] + [t, t2, t] + tris[ib + 1:]
    elif smoves:
        t, j = smoves[choice % len(smoves)]
        n = len(pts)
        (e1, p1), (e2, p2) = pts[j], pts[(j + 1) % n]
        w1 = _nudge(T, t, on, e1, p1, 1, THIRD)
        w2 = _nudge(T, t, on, e1, p1, 1, 2 * THIRD)
        z2 = _nudge(T, t, on, e2, p2, 1, THIRD)
        z1 = _nudge(T, t, on, e2, p2, 1, 2 * THIRD)
        new_pts = pts[:j + 1] + [z1, z2, w1, w2] + pts[j + 1:]
        new_tris = tris[:j] + [t, _across(T, t, e2), t, _across(T, t, e1), t] + tris[j + 1:]
    else:
        raise PreconditionViolated("no finger move available")
    nb = NormalCurve(T, b.kind, tuple(new_pts), tuple(new_tris), b.name)
    before, after = crossing_count(a, b), crossing_count(a, nb)
    if after != before + 2:
        raise RuntimeError(f"finger move went from {before} to {after} crossings")
    return nb


def wiggle(a, b, fingers: int, seed: int = 0) -> NormalCurve:
    """Apply ``fingers`` finger moves to b (2 spurious crossings each)."""
    import random
    rng = random.Random(seed)
    for _ in range(fingers):
        b = finger_move(a, b, rng.randrange(1 << 30))
    return b


# -- bigons ---------------------------------------------------------------

def _runs(tokens, info):
    """Split a cyclic token list into maximal runs by curve index."""
    ids = [info[l][1] if info[l][0] == "c" else None for l, _ in tokens]
    n = len(ids)
    start = next((i for i in range(n) if ids[i] != ids[i - 1]), None)
    if start is None:
        return [(ids[0], list(tokens))]
    runs = []
    for k in range(n):
        i = (start + k) % n
        if not runs or runs[-1][0] != ids[i]:
            runs.append((ids[i], []))
        runs[-1][1].append(tokens[i])
    return runs


def find_bigons(a, b) -> list:
    """Bigon regions of F - (a u b), as ``(region id, cyclic tokens, info)``.

    Only regions with exactly two corners where the boundary switches
    between the curves can be bigons; those are then checked to be disks
    bounded by a single cycle.
    """
    ov = overlay.cached_build(a.carrier, [a, b], cut={0, 1})
    S, info = ov.scheme, ov.info
    comps = S.face_components
    curve = {l: (d[1] if d[0] == "c" else None) for l, d in info.items()}
    out = []
    for rid, comp in enumerate(comps):
        switches = 0
        for f in comp:
            face = S.faces[f]
            prev = curve[face[-1][0]]
            for l, _ in face:
                c = curve[l]
                if c is not None and prev is not None and c != prev:
                    switches += 1
                prev = c
            if switches > 2:
                break
        if switches != 2:
            continue
        piece = CombSurface(tuple(S.faces[f] for f in comp), _check=False)
        cyc = piece.boundary_cycles
        if len(cyc) != 1 or piece.euler_characteristic() != 1:
            continue
        runs = _runs(cyc[0], info)
        if len(runs) == 2 and {r[0] for r in runs} == {0, 1}:
            out.append((rid, runs, ov))
    return out


def _chain(run, info):
    """Chords visited by a run and the curve points passed between them."""
    chords, points, fwd = [], [], None
    for l, rev in run:
        _, ci, j, q, _side = info[l]
        if fwd is None:
            fwd = not rev
        if not chords or chords[-1] != j:
            if chords:
                points.append(j if fwd else chords[-1])
            chords.append(j)
    return chords, points, fwd


def _offset_points(T, a, b, chain_tris, P, c0, A):
    """Offset copies of a's points ``A`` on the side of a facing P.

    ``chain_tris[i]`` holds the a-chord ending at ``A[i]``; the first of them
    (a's chord ``c0``) also contains P's chord.
    """
    if not A:
        return []
    on = {}
    for e, p in a.points + b.points:
        on.setdefault(e, set()).add(p)
    t1 = chain_tris[0]
    ends = (a.points[c0], a.points[(c0 + 1) % len(a.points)])
    other = ends[1] if ends[0] == A[0] else ends[0]
    uA = u_of(T, t1, *A[0])
    uO = u_of(T, t1, *other)
    uP = u_of(T, t1, *P)
    du = 1 if (uP - uA) % 3 < (uO - uA) % 3 else -1

    def sign(t, e):
        return T.triangles[t].signs[side_index(T, t, e)]

    out = []
    d = du * sign(t1, A[0][0])
    for i, (e, p) in enumerate(A):
        if i:
            t = chain_tris[i]
            du = -d * sign(t, A[i - 1][0])
            d = du * sign(t, e)
        out.append((e, p + d * _gap(on[e], p, d) / 3))
    return out


def _reroute(a, b, runs, info):
    T = a.carrier
    if runs[0][0] != 0:
        runs = runs[1:] + runs[:1]
    a_run, b_run = runs[0][1], runs[1][1]
    ja, apts, afwd = _chain(a_run, info)
    kb, bpts, bfwd = _chain(b_run, info)
    na, nb = len(a.points), len(b.points)
    a_points = [a.points[i % na] for i in apts]
    if bfwd:
        k_in, k_out = kb[0], kb[-1]
        L = len(bpts)
        A = a_points[::-1]
        chords = ja[::-1]
    else:
        k_in, k_out = kb[-1], kb[0]
        L = len(bpts)
        A = a_points
        chords = ja
    chain_tris = [a.tris[j] for j in chords]
    P = b.points[k_in]
    t1 = b.tris[k_in]
    if chain_tris[0] != t1 or chain_tris[-1] != b.tris[k_out]:
        raise RuntimeError("bigon corners are not where expected")
    A2 = _offset_points(T, a, b, chain_tris, P, chords[0], A)
    if b.kind == "closed":
        pts = list(b.points[k_in:] + b.points[:k_in])
        tris = list(b.tris[k_in:] + b.tris[:k_in])
        if (k_out - k_in) % nb != L % nb:
            raise RuntimeError("bigon b-run does not match b's point order")
        new_pts = [pts[0]] + A2 + pts[1 + L:]
        new_tris = chain_tris + tris[1 + L:]
    else:
        pts, tris = list(b.points), list(b.tris)
        new_pts = pts[:k_in + 1] + A2 + pts[k_in + 1 + L:]
        new_tris = tris[:k_in] + chain_tris + tris[k_out + 1:]
    return NormalCurve(T, b.kind, tuple(new_pts), tuple(new_tris), b.name)


def _try_reroute(a, b, runs, info):
    # a reroute along nearly all of b can degenerate (a bounce or a repeated
    # point); that option is then skipped
    try:
        return _reroute(a, b, runs, info)
    except (MatchingViolation, NotSimple, NotCarried, RuntimeError):
        return None


def _bigon_step(a, b, count):
    """Remove one bigon, rerouting b (or else a) across it.

    Chords are straight inside triangles, so a reroute can also straighten
    a neighbouring kink and lose more than two crossings at once; such
    moves (and degenerate reroutes) are skipped in favour of the next
    (bigon, curve) choice, the least region id first.  Returns None when there is no bigon.
    """
    found = find_bigons(a, b)
    if not found:
        return None
    for rid, runs, ov in found:
        nb = _try_reroute(a, b, runs, ov.info)
        if nb is not None and crossing_count(a, nb) == count - 2:
            return a, nb
        swapped = [(1 - ci, toks) for ci, toks in runs]
        na = _try_reroute(b, a, swapped, ov.info)
        if na is not None and crossing_count(na, b) == count - 2:
            return na, b
    raise RuntimeError("every bigon removal loses more than two crossings")


def bigon_reduce(pair, max_steps=None):
    """Remove innermost bigons until none is left.

    Returns ``(pair, i, trace)`` with the crossing count after each step in
    ``trace`` (starting with the initial count).
    """
    if not isinstance(pair, CurvePair):
        pair = general_position(*pair)
    a, b = pair.a, pair.b
    count = crossing_count(a, b)
    trace = [count]
    steps = 0
    while count > 0:
        step = _bigon_step(a, b, count)
        if step is None:
            break
        a, b = step
        count -= 2
        trace.append(count)
        steps += 1
        if max_steps is not None and steps >= max_steps:
            break
    return _pair(a, b), count, trace


def region_scan(a, b) -> list:
    """Independent bigon scan over the complementary regions of a u b.

    Regions are grown by flood fill across edge segments of the uncut cell
    structure; a region is a bigon when it is an open disk (V - E + F = 1
    over its interior cells), touches no boundary of F, and has exactly two
    corners at crossings.  Returns the offending regions (empty when none).
    """
    ov = overlay.cached_build(a.carrier, [a, b])
    S = ov.scheme
    nf = len(S.faces)
    parent = list(range(nf))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for l, occ in S.occurrences.items():
        if ov.info[l][0] == "s" and len(occ) == 2:
            parent[find(occ[0][0])] = find(occ[1][0])
    regions = {}
    for f in range(nf):
        regions.setdefault(find(f), []).append(f)
    vc = S.vertex_of_corner
    # vertices lying on a curve or on dF
    on_curve = set()
    for f, face in enumerate(S.faces):
        n = len(face)
        for i, (l, _) in enumerate(face):
            d = ov.info[l]
            if d[0] == "c" or len(S.occurrences[l]) == 1:
                on_curve.add(vc[(f, i)])
                on_curve.add(vc[(f, (i + 1) % n)])
    bad = []
    for root, faces in sorted(regions.items()):
        fs = set(faces)
        e_int, touches_bd, corners = set(), False, 0
        verts = set()
        for f in faces:
            face = S.faces[f]
            n = len(face)
            for i, (l, _) in enumerate(face):
                d = ov.info[l]
                if d[0] == "s":
                    if len(S.occurrences[l]) == 1:
                        touches_bd = True
                    else:
                        e_int.add(l)
                verts.add(vc[(f, i)])
                prev = face[i - 1][0]
                dp = ov.info[prev]
                if d[0] == "c" and dp[0] == "c" and d[1] != dp[1]:
                    corners += 1
        v_int = len(verts - on_curve)
        chi = v_int - len(e_int) + len(faces)
        if chi == 1 and not touches_bd and corners == 2:
            bad.append(sorted(faces))
    return bad


# -- isotopy -------------------------------------------------------------------

def _is_trivial_curve(T, c):
    cache = T.__dict__.setdefault("_trivial_cache", {})
    k = c.key
    if k not in cache:
        cache[k] = is_nullhomotopic(T, c)
    return cache[k]


def are_isotopic(T, a, b, oriented=False) -> bool:
    """Isotopy of simple closed curves (and of arcs, see ``_arcs_isotopic``).

    Trivial curves are isotopic exactly to trivial curves.  Otherwise the pair
    is put in minimal position; crossing curves are not isotopic.  Disjoint
    curves are compared as free-homotopy classes, in pi1(F) when F has
    boundary and in pi1 of F punctured in each complementary region otherwise.
    """
    if a.kind != b.kind:
        raise MixedKinds("cannot compare an arc with a closed curve")
    _check_carrier(T, a, b)
    if a.key == b.key:
        return True
    if a.kind == "arc":
        return _arcs_isotopic(T, a, b, oriented)
    ta, tb = _is_trivial_curve(T, a), _is_trivial_curve(T, b)
    if ta or tb:
        return ta and tb
    sa, sb = a.sidedness(), b.sidedness()
    if sa != sb:
        return False
    pair, i, _ = bigon_reduce(general_position(a, b))
    if sa == 1:
        # copies of a one-sided curve meet at least once
        if i != 1:
            return False
        raise Unsupported("isotopy of one-sided curves meeting once is not implemented")
    if i > 0:
        return False
    return _freely_homotopic_disjoint(T, pair.a, pair.b, oriented)


def _edge_path_loop(c):
    return [(f"e{e}", s < 0) for e, s in c.edge_path_word()]


def _arcs_isotopic(T, a, b, oriented):
    """Arcs are compared with endpoints free to slide inside their boundary
    edges: same endpoint edges and homotopic edge paths rel endpoints."""
    ends = lambda c: (c.points[0][0], c.points[-1][0])
    cands = [b] if oriented else [b, b.reversed()]
    for bb in cands:
        if ends(a) != ends(bb):
            continue
        _, words, _ = tree_cotree(T.scheme)
        wa, wb = words_of_loops(words, [_edge_path_loop(a), _edge_path_loop(bb)])
        if not free_reduce(wa + inverse(wb)):
            return True
    return False


def _freely_homotopic_disjoint(T, a, b, oriented):
    ov = overlay.cached_build(T, [a, b])
    S = ov.scheme
    loops = [[(l, False) for l in ov.curve_labels[k]] for k in (0, 1)]
    if T.boundary_edges:
        roots = [None]
    else:
        cut = overlay.cached_build(T, [a, b], cut={0, 1})
        roots = [comp[0] for comp in cut.scheme.face_components]
    for r in roots:
        _, words, _ = tree_cotree(S, root_face=r)
        wa, wb = words_of_loops(words, loops)
        if is_conjugate(wa, wb) or (not oriented and is_conjugate(wa, inverse(wb))):
            return True
    return False


def bounds_cylinder(T, a, b) -> bool:
    _check_carrier(T, a, b)
    if a.kind != "closed" or b.kind != "closed":
        raise PreconditionViolated("cylinder test needs closed curves")
    pair = general_position(a, b)
    if pair.count:
        raise PreconditionViolated(f"curves cross {pair.count} times")
    if _is_trivial_curve(T, a) or _is_trivial_curve(T, b):
        raise PreconditionViolated("cylinder test needs essential curves")
    if a.sidedness() != 2 or b.sidedness() != 2:
        raise PreconditionViolated("cylinder test needs 2-sided curves")
    ov = overlay.cached_build(T, [pair.a, pair.b], cut={0, 1})
    for comp in ov.scheme.components():
        t = comp.classify()
        if not (t.orientable and t.euler == 0 and t.boundary == 2):
            continue
        owners = []
        for cyc in comp.boundary_cycles:
            ids = {ov.info[l][1] if ov.info[l][0] == "c" else None for l, _ in cyc}
            owners.append(ids)
        if sorted(map(sorted, owners), key=str) == [[0], [1]]:
            return True
    return False


# -- enumeration --------------------------------------------------------------

def enumerate_cycles(T, max_len: int, avoid_boundary=True):
    """Simple closed edge paths up to ``max_len`` edges, one per cyclic class.

    Yields ``(vertices, edges)`` with the first vertex repeated at the end.
    """
    bv = T.boundary_vertices if avoid_boundary else frozenset()
    adj = {v: [(e, T.other_end(e, v)) for e in T.incident_edges[v]
                if not T.is_boundary_edge(e)] for v in range(T.n_vertices)}
    for s in range(T.n_vertices):
        if s in bv:
            continue
        # paths s -> ... -> s through vertices larger than s
        stack = [(s, [s], [])]
        while stack:
            v, vs, es = stack.pop()
            for e, w in adj[v]:
                if es and e == es[-1]:
                    continue
                if w == s and len(es) >= 1:
                    cyc_es = es + [e]
                    if len(cyc_es) == 2 and cyc_es[0] == cyc_es[1]:
                        continue
                    # one orientation per cycle: compare first and last edge
                    if cyc_es[0] < cyc_es[-1]:
                        yield vs + [s], cyc_es
                    continue
                if w <= s or w in vs or w in bv or len(es) + 1 >= max_len:
                    continue
                stack.append((w, vs + [w], es + [e]))


def enumerate_arcs(T, max_len: int):
    """Simple edge-path arcs between boundary vertices with interior interiors."""
    bv = T.boundary_vertices
    adj = {v: [(e, T.other_end(e, v)) for e in T.incident_edges[v]
                if not T.is_boundary_edge(e)] for v in range(T.n_vertices)}
    for s in sorted(bv):
        stack = [(s, [s], [])]
        while stack:
            v, vs, es = stack.pop()
            for e, w in adj[v]:
                if w in vs:
                    continue
                if w in bv:
                    if w > s:
                        yield vs + [w], es + [e]
                    continue
                if len(es) + 1 >= max_len:
                    continue
                stack.append((w, vs + [w], es + [e]))
