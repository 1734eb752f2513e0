"""Straight (p, q) curves on the flat square torus, with optional finger wiggles.

Curves are closed polylines in the plane, read modulo Z^2, traced through the
coned square (4 triangles: the square sides plus the four spokes to the
centre).  Everything is exact rational arithmetic.
"""
from __future__ import annotations

from gmpy2 import mpq
from functools import lru_cache
from math import floor, gcd

from .curves import general_position, wiggle
from .normal import NormalCurve
from .triangulation import square_torus

# edge lines of the coned square: n . P is an integer on them
_FAMILIES = ((1, 0), (0, 1), (1, -1), (1, 1))


def _dot(n, P):
    return n[0] * P[0] + n[1] * P[1]


def _mod1(P):
    return (P[0] - floor(P[0]), P[1] - floor(P[1]))


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _locate_point(T, P):
    """(edge, pos) of a point of the 1-skeleton given in the unit square."""
    for t, pts in enumerate(T.coords):
        tri = T.triangles[t]
        for k in range(3):
            A, B = pts[k], pts[(k + 1) % 3]
            d = (B[0] - A[0], B[1] - A[1])
            w = (P[0] - A[0], P[1] - A[1])
            if _cross(d, w) != 0:
                continue
            lam = _dot(d, w) / _dot(d, d)
            if 0 < lam < 1:
                return tri.edges[k], (lam if tri.signs[k] > 0 else 1 - lam)
    raise ValueError(f"point {P} is not in the interior of an edge")


def _locate_face(T, P):
    for t, pts in enumerate(T.coords):
        signs = [_cross((pts[(k + 1) % 3][0] - pts[k][0], pts[(k + 1) % 3][1] - pts[k][1]),
                        (P[0] - pts[k][0], P[1] - pts[k][1])) for k in range(3)]
        if all(s > 0 for s in signs) or all(s < 0 for s in signs):
            return t
    raise ValueError(f"point {P} is on the 1-skeleton")


def trace_polyline(T, poly, name="") -> NormalCurve:
    """Carry a closed polyline ``poly`` (last point = first + lattice vector)."""
    events = []      # (segment index, s, point)
    m = len(poly) - 1
    for i in range(m):
        P, Q = poly[i], poly[i + 1]
        for n in _FAMILIES:
            a, b = _dot(n, P), _dot(n, Q)
            if a == b:
                continue
            if a.denominator == 1 and i:   # a vertex of the polyline on an edge
                raise ValueError("polyline vertex lies on an edge")
            lo, hi = (a, b) if a < b else (b, a)
            for k in range(floor(lo) + 1, floor(hi) + (0 if hi.denominator == 1 else 1)):
                if k == lo:
                    continue
                s = (k - a) / (b - a)
                X = (P[0] + s * (Q[0] - P[0]), P[1] + s * (Q[1] - P[1]))
                events.append((i, s, X))
    events.sort(key=lambda e: (e[0], e[1]))
    for j in range(len(events) - 1):
        if events[j][:2] == events[j + 1][:2]:
            raise ValueError("polyline passes through a vertex")
    points, tris = [], []
    for j, (i, s, X) in enumerate(events):
        points.append(_locate_point(T, _mod1(X)))
        i2, s2, _ = events[(j + 1) % len(events)]
        # a point just after X on the polyline, before the next event or vertex
        end = s2 if i2 == i and s2 > s else mpq(1)
        P, Q = poly[i], poly[i + 1]
        mid = (s + end) / 2
        M = (P[0] + mid * (Q[0] - P[0]), P[1] + mid * (Q[1] - P[1]))
        tris.append(_locate_face(T, _mod1(M)))
    return NormalCurve(T, "closed", tuple(points), tuple(tris), name)


def _base(p, q, offset):
    return (mpq(offset[0]), mpq(offset[1]))


def straight_polyline(p, q, offset):
    x0, y0 = _base(p, q, offset)
    return [(x0, y0), (x0 + p, y0 + q)]


def torus_curve(T, p: int, q: int, offset=None, name="") -> NormalCurve:
    """The straight curve of slope (p, q) through ``offset``."""
    if gcd(p, q) != 1:
        raise ValueError("(p, q) must be coprime")
    if offset is None:
        offset = (mpq(1, 7), mpq(2, 11))
    if T is square_torus() and not name:
        return _cached_curve(p, q, mpq(offset[0]), mpq(offset[1]))
    return trace_polyline(T, straight_polyline(p, q, offset), name or f"({p},{q})")


@lru_cache(maxsize=4096)
def _cached_curve(p, q, x0, y0):
    return trace_polyline(square_torus(), straight_polyline(p, q, (x0, y0)), f"({p},{q})")


def wiggled_pair(p, q, p2, q2, fingers: int = 4, seed: int = 0, offsets=None):
    """Straight curves a = (p, q) and b = (p2, q2) in general position, then
    ``fingers`` finger moves of b across a.

    The pair starts with ``|p q2 - p2 q| + 2 * fingers`` crossings.  Returns
    ``(T, a, b)``.
    """
    T = square_torus()
    if offsets is None:
        offsets = ((mpq(1, 7), mpq(2, 11)), (mpq(3, 13), mpq(5, 17)))
    a = torus_curve(T, p, q, offsets[0])
    b = torus_curve(T, p2, q2, offsets[1])
    if not fingers:
        return T, a, b
    b = general_position(a, b).b
    return T, a, wiggle(a, b, fingers, seed)
