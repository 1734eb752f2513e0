"""Curves carried transversally by a triangulation.

A curve is recorded by the points where it crosses edges, in order, plus the
triangle each consecutive pair of points is joined through.  A point is an
``(edge, position)`` pair with ``0 < position < 1`` measured from the edge's
tail.  Inside a triangle a curve segment is a chord between two boundary
points; two chords cross exactly when their endpoints interleave around the
triangle, so every combinatorial question is decided exactly.

Triangle boundary parameter: side ``k`` covers ``u`` in ``[k, k+1]``,
increasing from corner ``k`` to corner ``k+1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from gmpy2 import mpq
from functools import cached_property

from .errors import MatchingViolation, NotCarried, NotSimple


def side_index(T, t: int, e: int) -> int:
    edges = T.triangles[t].edges
    k = edges.index(e)
    if edges.count(e) != 1:
        raise NotCarried(f"edge {e} occurs twice in triangle {t}")
    return k


def u_of(T, t: int, e: int, pos) -> mpq:
    k = side_index(T, t, e)
    s = T.triangles[t].signs[k]
    return k + (pos if s > 0 else 1 - pos)


def interleave(a1, a2, b1, b2) -> bool:
    lo, hi = (a1, a2) if a1 < a2 else (a2, a1)
    return (lo < b1 < hi) != (lo < b2 < hi)


@dataclass(frozen=True)
class NormalCurve:
    """A simple closed curve or a properly embedded arc, transverse to the edges."""

    carrier: object
    kind: str                 # "closed" | "arc"
    points: tuple             # ((edge, Fraction), ...)
    tris: tuple               # triangle of chord i (points[i] -> points[i+1])
    name: str = ""
    _checked: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        pts = tuple((int(e), mpq(p)) for e, p in self.points)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "tris", tuple(int(t) for t in self.tris))
        if not self._checked:
            self.validate()

    # -- structure ----------------------------------------------------
    @property
    def n_chords(self) -> int:
        return len(self.points) if self.kind == "closed" else len(self.points) - 1

    def chord(self, i: int):
        """(triangle, u_start, u_end) of chord i."""
        return self.chords[i]

    @cached_property
    def chords(self) -> tuple:
        tris = self.carrier.triangles
        pts = self.points
        n = len(pts)
        out = []
        for i in range(self.n_chords):
            t = self.tris[i]
            tri = tris[t]
            us = [t]
            for e, p in (pts[i], pts[(i + 1) % n]):
                k = tri.edges.index(e)
                us.append(k + p if tri.signs[k] > 0 else k + 1 - p)
            out.append(tuple(us))
        return tuple(out)

    @cached_property
    def chords_by_tri(self) -> dict:
        out = {}
        for j, (t, u1, u2) in enumerate(self.chords):
            out.setdefault(t, []).append((j, u1, u2))
        return out

    @cached_property
    def float_chords_by_tri(self) -> dict:
        """Like :attr:`chords_by_tri` with float parameters (for fast screening)."""
        T = self.carrier
        n = len(self.points)
        out = {}
        for j, t in enumerate(self.tris):
            tri = T.triangles[t]
            us = []
            for e, p in (self.points[j], self.points[(j + 1) % n]):
                k = tri.edges.index(e)
                us.append(k + (float(p) if tri.signs[k] > 0 else 1.0 - float(p)))
            out.setdefault(t, []).append((j, us[0], us[1]))
        return out

    @cached_property
    def point_set(self) -> frozenset:
        return frozenset(self.points)

    @property
    def key(self) -> tuple:
        return (self.kind, self.points, self.tris)

    def validate(self):
        T = self.carrier
        if self.kind not in ("closed", "arc"):
            raise ValueError(f"bad kind {self.kind!r}")
        n = len(self.points)
        if n < 2:
            raise NotCarried("a carried curve crosses at least two edge points")
        if len(self.tris) != self.n_chords:
            raise NotCarried("one triangle per chord is required")
        if len(set(self.points)) != n:
            raise NotSimple("curve passes through one edge point twice")
        for e, p in self.points:
            if not 0 < p < 1:
                raise NotCarried(f"position {p} on edge {e} outside (0, 1)")
        for i, t in enumerate(self.tris):
            e1 = self.points[i][0]
            e2 = self.points[(i + 1) % n][0]
            edges = T.triangles[t].edges
            if e1 not in edges or e2 not in edges:
                raise MatchingViolation(f"chord {i} does not lie in triangle {t}")
        for j, (e, _) in enumerate(self.points):
            bd = T.is_boundary_edge(e)
            end = self.kind == "arc" and j in (0, n - 1)
            if bd != end:
                raise NotCarried("arc endpoints must lie on the boundary, all other "
                                 "points on interior edges")
        # consecutive chords meeting at an edge point sit on opposite sides of it
        rng = range(n) if self.kind == "closed" else range(1, n - 1)
        for j in rng:
            t_in, t_out = self.tris[j - 1], self.tris[j % self.n_chords]
            e = self.points[j][0]
            sides = T.edge_sides[e]
            if t_in == t_out and len({s[0] for s in sides}) == 2:
                raise MatchingViolation(f"curve bounces off edge {e} at point {j}")
        if self.self_crossings():
            raise NotSimple("curve crosses itself")

    def self_crossings(self) -> int:
        by_tri = {}
        for t, u1, u2 in self.chords:
            by_tri.setdefault(t, []).append((u1, u2))
        count = 0
        for cs in by_tri.values():
            for i in range(len(cs)):
                for j in range(i + 1, len(cs)):
                    if interleave(*cs[i], *cs[j]):
                        count += 1
        return count

    # -- derived data -------------------------------------------------
    def edge_weights(self) -> dict:
        """Normal coordinates: crossing count per edge."""
        w = {}
        for e, _ in self.points:
            w[e] = w.get(e, 0) + 1
        return w

    def _tail_corner(self, t: int, e: int) -> int:
        k = side_index(self.carrier, t, e)
        return k if self.carrier.triangles[t].signs[k] > 0 else (k + 1) % 3

    def edge_path_word(self) -> list:
        """A homotopic edge path, each point slid to its edge's tail.

        Returned as ``(edge, +1|-1)`` steps; for arcs the path is relative.
        """
        T = self.carrier
        out = []
        n = len(self.points)
        for i, t in enumerate(self.tris):
            tri = T.triangles[t]
            j = self._tail_corner(t, self.points[i][0])
            k = self._tail_corner(t, self.points[(i + 1) % n][0])
            while j != k:
                out.append((tri.edges[j], tri.signs[j]))
                j = (j + 1) % 3
        return out

    def edge_chain(self) -> list:
        """Edges of a homotopic edge path (with repetition)."""
        return [e for e, _ in self.edge_path_word()]

    def side_directions(self) -> list:
        """Transported normal direction at each point, as +1/-1 along the edge.

        Starts on the left of chord 0.  For closed curves the list has one
        extra entry: the direction after going once around.
        """
        T = self.carrier
        n = len(self.points)
        dirs = []
        # left of chord 0 near its start is the decreasing-u side
        t = self.tris[0]
        e, _ = self.points[0]
        k = side_index(T, t, e)
        dirs.append(-T.triangles[t].signs[k])
        for i in range(self.n_chords):
            t = self.tris[i]
            e1, _ = self.points[i]
            e2, _ = self.points[(i + 1) % n]
            s1 = T.triangles[t].signs[side_index(T, t, e1)]
            s2 = T.triangles[t].signs[side_index(T, t, e2)]
            left = dirs[i] * s1 < 0
            dirs.append((1 if left else -1) * s2)
        return dirs

    def sidedness(self) -> int:
        if self.kind != "closed":
            raise ValueError("sidedness is defined for closed curves")
        d = self.side_directions()
        return 2 if d[0] == d[-1] else 1

    def reversed(self) -> "NormalCurve":
        if self.kind == "closed":
            pts = (self.points[0],) + tuple(reversed(self.points[1:]))
            tris = tuple(reversed(self.tris))
        else:
            pts = tuple(reversed(self.points))
            tris = tuple(reversed(self.tris))
        return NormalCurve(self.carrier, self.kind, pts, tris, self.name, _checked=True)

    def renamed(self, name: str) -> "NormalCurve":
        return NormalCurve(self.carrier, self.kind, self.points, self.tris, name,
                           _checked=True)

    def with_points(self, points, tris) -> "NormalCurve":
        return NormalCurve(self.carrier, self.kind, tuple(points), tuple(tris), self.name)

    def is_normal(self) -> bool:
        return not any(self.points[i][0] == self.points[(i + 1) % len(self.points)][0]
                       for i in range(self.n_chords))

    def to_dict(self) -> dict:
        return {"name": self.name, "kind": self.kind,
                "points": [[e, str(p)] for e, p in self.points],
                "triangles": list(self.tris)}


# -- normalisation -----------------------------------------------------------

def normalize(c: NormalCurve) -> NormalCurve:
    """Remove returns (chords with both ends on one edge) by pushing across the edge.

    Only innermost returns are pushed, one at a time; each push is an
    isotopy.  Curves never shrink below two points.
    """
    T = c.carrier
    pts, tris = list(c.points), list(c.tris)
    closed = c.kind == "closed"
    changed = True
    while changed and len(pts) > 2:
        changed = False
        n = len(pts)
        nch = n if closed else n - 1
        for i in range(nch):
            j = (i + 1) % n
            (e1, p1), (e2, p2) = pts[i], pts[j]
            if e1 != e2 or T.is_boundary_edge(e1):
                continue
            if not closed and (i == 0 or j == n - 1):
                continue
            lo, hi = min(p1, p2), max(p1, p2)
            if any(e == e1 and lo < p < hi for e, p in pts):
                continue
            if closed and n <= 3:
                break
            # chords i-1 and i+1 lie in the triangle across e; join them
            prev_t = tris[(i - 1) % nch]
            next_t = tris[(i + 1) % nch]
            if prev_t != next_t:
                continue
            if closed:
                keep = [k for k in range(n) if k not in (i, j)]
                # chord from point i-1 to point j+1 lives in prev_t
                new_pts = [pts[k] for k in keep]
                new_tris = []
                for k in keep:
                    if k == (i - 1) % n:
                        new_tris.append(prev_t)
                    else:
                        new_tris.append(tris[k])
                pts = new_pts
                tris = new_tris
                if len(set(pts)) != len(pts):
                    raise RuntimeError("normalisation produced a repeated point")
            else:
                pts = pts[:i] + pts[j + 1:]
                tris = tris[:i - 1] + [prev_t] + tris[j + 1:]
            changed = True
            break
    return NormalCurve(T, c.kind, tuple(pts), tuple(tris), c.name)
