"""Cell structure of a triangulated surface refined by carried curves.

Every triangle is cut by the chords of the given curves into polygonal cells.
Cells become faces of a gluing scheme whose sides are edge segments (glued
across triangles) and chord pieces between consecutive crossings.  Chord
pieces of curves listed in ``cut`` get a different label on each side, so the
resulting scheme is the surface split open along those curves.

Geometry inside a triangle only needs the cyclic order of boundary points, so
the points are placed at ``(r, r*r)`` for their rank ``r``; all angle
comparisons are then exact integer arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .surface import CombSurface


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


@dataclass
class Overlay:
    scheme: CombSurface
    face_tri: list          # triangle of every cell
    info: dict              # label -> ("s", edge, index) | ("c", curve, chord, piece[, side])
    curve_labels: list      # per curve: chord-piece labels in curve order
    crossings: list         # (curve_a, chord_a, curve_b, chord_b)

    def curve_of(self, label):
        d = self.info[label]
        return d[1] if d[0] == "c" else None


def _points_on_edges(T, curves):
    on = [[] for _ in range(T.n_edges)]
    for ci, c in enumerate(curves):
        for j, (e, p) in enumerate(c.points):
            on[e].append((p, ci, j))
    for lst in on:
        lst.sort()
    return on


def build(T, curves, cut=()) -> Overlay:
    cut = set(cut)
    on = _points_on_edges(T, curves)
    chords_in = [[] for _ in range(T.n_triangles)]
    for ci, c in enumerate(curves):
        n = len(c.points)
        for j, t in enumerate(c.tris):
            chords_in[t].append((ci, j, (ci, j), (ci, (j + 1) % n)))
    faces, face_tri, info = [], [], {}
    slab = []            # per edge: labels of its segments
    for e, lst in enumerate(on):
        labs = [f"s{e}.{idx}" for idx in range(len(lst) + 1)]
        for idx, label in enumerate(labs):
            info[label] = ("s", e, idx)
        slab.append(labs)
    pieces = {}          # (ci, j) -> labels of its pieces
    crossings = []
    for t, tri in enumerate(T.triangles):
        _triangle_cells(T, t, tri, on, slab, chords_in[t], cut, faces, face_tri, info,
                        pieces, crossings)
    curve_labels = []
    for ci, c in enumerate(curves):
        seq = []
        for j in range(c.n_chords):
            seq.extend(pieces[(ci, j)])
        curve_labels.append(seq)
    S = CombSurface(tuple(faces), name="overlay", _check=False)
    return Overlay(S, face_tri, info, curve_labels, crossings)


def cached_build(T, curves, cut=()) -> Overlay:
    """``build`` with a small per-triangulation cache of recent results."""
    cache = T.__dict__.setdefault("_overlay_cache", {})
    key = (tuple(c.key for c in curves), frozenset(cut))
    ov = cache.get(key)
    if ov is None:
        ov = build(T, curves, cut)
        if len(cache) >= 16:
            cache.pop(next(iter(cache)))
        cache[key] = ov
    return ov


def _triangle_cells(T, t, tri, on, slab, chords, cut, faces, face_tri, info, pieces,
                    crossings):
    if not chords:
        face = []
        for k in range(3):
            e, s = tri.edges[k], tri.signs[k]
            labs = slab[e] if s > 0 else slab[e][::-1]
            face.extend((label, s < 0) for label in labs)
        faces.append(tuple(face))
        face_tri.append(t)
        return
    # boundary nodes in counterclockwise order: corner k, then the points of side k
    rank_of_pt = {}
    hull = []            # (label, reversed) of the arc leaving each node
    N = 0
    for k in range(3):
        e, s = tri.edges[k], tri.signs[k]
        pts = on[e] if s > 0 else on[e][::-1]
        n = len(pts)
        for m in range(n + 1):
            if m:
                _, ci, j = pts[m - 1]
                rank_of_pt[(ci, j)] = N
            hull.append((slab[e][m if s > 0 else n - m], s < 0))
            N += 1
    # Nodes: 0..N-1 on the boundary, then one per crossing.  Edge ``eid`` has
    # half-edges 2*eid (leaving its first node) and 2*eid+1; edges 0..N-1 are
    # the hull arcs r -> r+1.
    labels = [h[0] for h in hull]
    hull_rev = [h[1] for h in hull]
    kinds = [None] * N           # None for hull arcs, curve index for chords
    chord_at = [None] * N        # boundary node -> half-edge of its chord

    cinfo = []
    for ci, j, p1, p2 in chords:
        a, b = rank_of_pt[p1], rank_of_pt[p2]
        cinfo.append((ci, j, a, b, b - a, b * b - a * a))
    m = len(cinfo)
    xs = [[] for _ in range(m)]
    xnodes = []                  # (i, k, den > 0)
    for i in range(m):
        ci, j, a1, a2, dx, dy = cinfo[i]
        lo, hi = (a1, a2) if a1 < a2 else (a2, a1)
        for k in range(i + 1, m):
            cj, jj, b1, b2, ex, ey = cinfo[k]
            if (lo < b1 < hi) == (lo < b2 < hi):
                continue
            den = dx * ey - dy * ex
            wx, wy = b1 - a1, b1 * b1 - a1 * a1
            node = N + len(xnodes)
            xnodes.append((i, k, den > 0))
            xs[i].append((mpq(wx * ey - wy * ex, den), node))
            xs[k].append((mpq(wx * dy - wy * dx, den), node))
            crossings.append((ci, j, cj, jj))
    around = [[None] * 4 for _ in xnodes]   # out along i, out along k, back i, back k
    for i, (ci, j, a, b, _, _) in enumerate(cinfo):
        xi = xs[i]
        xi.sort()
        seq = [a] + [n for _, n in xi] + [b]
        last = len(seq) - 2
        plabs = pieces[(ci, j)] = []
        for q in range(last + 1):
            label = f"c{ci}.{j}.{q}"
            info[label] = ("c", ci, j, q)
            plabs.append(label)
            eid = len(labels)
            labels.append(label)
            hull_rev.append(False)
            kinds.append(ci)
            u, v = seq[q], seq[q + 1]
            if q == 0:
                chord_at[a] = 2 * eid
            else:
                x = xnodes[u - N]
                around[u - N][0 if x[0] == i else 1] = 2 * eid
            if q == last:
                chord_at[b] = 2 * eid + 1
            else:
                x = xnodes[v - N]
                around[v - N][2 if x[0] == i else 3] = 2 * eid + 1

    # rotation system (counterclockwise); boundary nodes sit on a convex
    # curve, so their order is hull-next, chord, hull-prev
    order = []
    for r in range(N):
        c = chord_at[r]
        prev = 2 * ((r - 1) % N) + 1
        order.append((2 * r, c, prev) if c is not None else (2 * r, prev))
    for (i, k, pos), hs in zip(xnodes, around):
        order.append((hs[0], hs[1], hs[2], hs[3]) if pos else (hs[0], hs[3], hs[2], hs[1]))
    # the half-edge after h in its face: turn clockwise at the node h enters
    nh = 2 * len(labels)
    nxt = [0] * nh
    for lst in order:
        for idx, g in enumerate(lst):
            nxt[g ^ 1] = lst[idx - 1]
    tok = [None] * nh
    for eid, label in enumerate(labels):
        if eid < N:
            tok[2 * eid] = (label, hull_rev[eid])
        elif kinds[eid] in cut:
            for side, rev in (("l", False), ("r", True)):
                lab = label + side
                info[lab] = info[label] + (side,)
                tok[2 * eid + rev] = (lab, rev)
        else:
            tok[2 * eid] = (label, False)
            tok[2 * eid + 1] = (label, True)

    # the outer face runs backwards along the hull
    seen = [False] * nh
    for r in range(N):
        seen[2 * r + 1] = True
    for h0 in range(2 * N, nh):
        if seen[h0]:
            continue
        face, h = [], h0
        while not seen[h]:
            seen[h] = True
            face.append(tok[h])
            h = nxt[h]
        faces.append(tuple(face))
        face_tri.append(t)
