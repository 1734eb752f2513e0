"""Triangulations refined from gluing schemes.

Each n-gon face is coned from an interior point and the resulting complex is
barycentrically subdivided once.  After the subdivision every triangle has
three distinct vertices and three distinct edges, and no edge is a loop,
which is what the curve machinery relies on.

Conventions: side ``k`` of a triangle runs from corner ``k`` to corner
``k + 1``; ``signs[k]`` is +1 when that traversal agrees with the edge's own
direction (tail -> head) and -1 otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from gmpy2 import mpq
from functools import cached_property, lru_cache

from .surface import CombSurface


@dataclass(frozen=True)
class Tri:
    verts: tuple
    edges: tuple
    signs: tuple


@dataclass
class Triangulation:
    n_vertices: int
    edge_ends: list            # edge id -> (tail vertex, head vertex)
    triangles: list            # list of Tri
    source: CombSurface | None = None
    vertex_prov: list = field(default_factory=list)
    edge_prov: list = field(default_factory=list)
    tri_prov: list = field(default_factory=list)
    coords: list | None = None  # per triangle: 3 corner points in the face chart

    def __post_init__(self):
        sides = [[] for _ in self.edge_ends]
        for t, tri in enumerate(self.triangles):
            for k in range(3):
                sides[tri.edges[k]].append((t, k))
        self.edge_sides = [tuple(s) for s in sides]
        for e, s in enumerate(self.edge_sides):
            if len(s) not in (1, 2):
                raise ValueError(f"edge {e} has {len(s)} triangle sides")

    # -- basic queries ------------------------------------------------
    @property
    def n_edges(self) -> int:
        return len(self.edge_ends)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    def is_boundary_edge(self, e: int) -> bool:
        return len(self.edge_sides[e]) == 1

    @cached_property
    def boundary_edges(self) -> list:
        return [e for e in range(self.n_edges) if self.is_boundary_edge(e)]

    @cached_property
    def boundary_vertices(self) -> frozenset:
        return frozenset(v for e in self.boundary_edges for v in self.edge_ends[e])

    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_triangles

    def side_start(self, t: int, k: int) -> int:
        return self.triangles[t].verts[k]

    def other_side(self, t: int, k: int):
        """The triangle side glued to side k of t, or None on the boundary."""
        for s in self.edge_sides[self.triangles[t].edges[k]]:
            if s != (t, k):
                return s
        return None

    def cross(self, t: int, k: int, at_start: bool):
        """Cross side k of t standing at its start (or end) corner.

        Returns ``(t2, k2, at_start2)``: the glued side and whether the same
        point is the start of that side, or None on the boundary.
        """
        o = self.other_side(t, k)
        if o is None:
            return None
        t2, k2 = o
        same = self.triangles[t].signs[k] == self.triangles[t2].signs[k2]
        return t2, k2, at_start == same

    def corner_of(self, t: int, v: int) -> int:
        return self.triangles[t].verts.index(v)

    def orientation_compatible(self, t: int, k: int) -> bool:
        """Whether the triangles on the two sides of side k induce one orientation."""
        o = self.other_side(t, k)
        t2, k2 = o
        return self.triangles[t].signs[k] != self.triangles[t2].signs[k2]

    def label(self, e: int) -> str:
        return f"e{e}"

    @cached_property
    def scheme(self) -> CombSurface:
        faces = []
        for tri in self.triangles:
            faces.append(tuple((self.label(e), s < 0) for e, s in zip(tri.edges, tri.signs)))
        name = (self.source.name if self.source else "T") + "/tri"
        return CombSurface(tuple(faces), name=name, _check=False)

    def vertex_corners(self, v: int) -> list:
        return [(t, k) for t, tri in enumerate(self.triangles)
                for k in range(3) if tri.verts[k] == v]

    @cached_property
    def incident_edges(self) -> list:
        inc = [[] for _ in range(self.n_vertices)]
        for e, (a, b) in enumerate(self.edge_ends):
            inc[a].append(e)
            if b != a:
                inc[b].append(e)
        return inc

    def other_end(self, e: int, v: int) -> int:
        a, b = self.edge_ends[e]
        return b if a == v else a


def _cone(S: CombSurface, coords=None):
    """Cone every face of S; returns the raw Delta-complex pieces."""
    vc = S.vertex_of_corner
    nv = S.num_vertices
    vprov = [("vertex", v) for v in range(nv)]
    edge_ends, eprov, edge_id = [], [], {}
    for label in S.labels:
        f, i, rev = S.occurrences[label][0]
        n = len(S.faces[f])
        a, b = vc[(f, i)], vc[(f, (i + 1) % n)]
        if rev:
            a, b = b, a
        edge_id[label] = len(edge_ends)
        edge_ends.append((a, b))
        eprov.append(("label", label))
    tris, tprov, tcoords = [], [], []
    for f, face in enumerate(S.faces):
        n = len(face)
        center = len(vprov)
        vprov.append(("center", f))
        spokes = []
        for i in range(n):
            spokes.append(len(edge_ends))
            edge_ends.append((center, vc[(f, i)]))
            eprov.append(("spoke", f, i))
        pts = None
        if coords is not None:
            pts = [tuple(mpq(c) for c in p) for p in coords[f]]
            cx = sum(p[0] for p in pts) / n
            cy = sum(p[1] for p in pts) / n
        for i, (label, rev) in enumerate(face):
            j = (i + 1) % n
            verts = (vc[(f, i)], vc[(f, j)], center)
            edges = (edge_id[label], spokes[j], spokes[i])
            signs = (-1 if rev else 1, -1, 1)
            tris.append(Tri(verts, edges, signs))
            tprov.append(("face", f, i))
            if pts is not None:
                tcoords.append((pts[i], pts[j], (cx, cy)))
    return (len(vprov), edge_ends, tris, vprov, eprov, tprov,
            tcoords if coords is not None else None)


def _barycentric(nv, edge_ends, tris, vprov, eprov, tprov, tcoords):
    vprov = list(vprov)
    mid = []
    for e in range(len(edge_ends)):
        mid.append(len(vprov))
        vprov.append(("mid",) + tuple(eprov[e]))
    new_ends, new_eprov = [], []
    half = {}
    for e, (a, b) in enumerate(edge_ends):
        half[(e, 0)] = len(new_ends)
        new_ends.append((a, mid[e]))
        new_eprov.append(("half", 0) + tuple(eprov[e]))
        half[(e, 1)] = len(new_ends)
        new_ends.append((mid[e], b))
        new_eprov.append(("half", 1) + tuple(eprov[e]))
    out, out_prov, out_coords = [], [], []
    for t, tri in enumerate(tris):
        z = len(vprov)
        vprov.append(("bary",) + tuple(tprov[t]))
        zc, zm = [], []
        for k in range(3):
            zc.append(len(new_ends))
            new_ends.append((z, tri.verts[k]))
            new_eprov.append(("zc", t, k))
        for k in range(3):
            zm.append(len(new_ends))
            new_ends.append((z, mid[tri.edges[k]]))
            new_eprov.append(("zm", t, k))
        if tcoords is not None:
            P = tcoords[t]
            Z = (sum(p[0] for p in P) / 3, sum(p[1] for p in P) / 3)
        for k in range(3):
            k1 = (k + 1) % 3
            e, s = tri.edges[k], tri.signs[k]
            m = mid[e]
            first = (half[(e, 0)], 1) if s > 0 else (half[(e, 1)], -1)
            second = (half[(e, 1)], 1) if s > 0 else (half[(e, 0)], -1)
            out.append(Tri((tri.verts[k], m, z),
                           (first[0], zm[k], zc[k]),
                           (first[1], -1, 1)))
            out.append(Tri((m, tri.verts[k1], z),
                           (second[0], zc[k1], zm[k]),
                           (second[1], -1, 1)))
            out_prov.append(tuple(tprov[t]) + (2 * k,))
            out_prov.append(tuple(tprov[t]) + (2 * k + 1,))
            if tcoords is not None:
                M = ((P[k][0] + P[k1][0]) / 2, (P[k][1] + P[k1][1]) / 2)
                out_coords.append((P[k], M, Z))
                out_coords.append((M, P[k1], Z))
    return (len(vprov), new_ends, out, vprov, new_eprov, out_prov,
            out_coords if tcoords is not None else None)


def split_edges(S: CombSurface, parts: int = 2) -> CombSurface:
    """Subdivide every label into ``parts`` pieces: ``x`` becomes ``x_0 x_1 ...``."""
    faces = []
    for face in S.faces:
        out = []
        for l, rev in face:
            seq = [(f"{l}_{i}", False) for i in range(parts)]
            out.extend([(m, True) for m, _ in reversed(seq)] if rev else seq)
        faces.append(tuple(out))
    return CombSurface(tuple(faces), name=S.name, _check=False)


def _split_coords(coords, parts):
    out = []
    for pts in coords:
        pts = [tuple(mpq(x) for x in p) for p in pts]
        face = []
        for i, p in enumerate(pts):
            q = pts[(i + 1) % len(pts)]
            for j in range(parts):
                face.append(tuple(p[k] + (q[k] - p[k]) * j / parts for k in range(2)))
        out.append(face)
    return out


def triangulate(S: CombSurface, subdivide=True, coords=None, parts: int = 2) -> Triangulation:
    """Cone each face, then (by default) subdivide barycentrically once.

    ``subdivide="split"`` instead cuts every label into ``parts`` pieces
    before coning: a coarser triangulation whose triangles still have three
    distinct corners.  ``coords`` optionally gives planar corner positions for
    every face; the triangles then carry exact chart coordinates.
    """
    if subdivide == "split":
        if parts < 2:
            raise ValueError("split needs at least two parts per label")
        if coords is not None:
            coords = _split_coords(coords, parts)
        T = triangulate(split_edges(S, parts), subdivide=False, coords=coords)
        T.source = S
        return T
    parts = _cone(S, coords)
    if subdivide:
        parts = _barycentric(*parts)
    nv, ends, tris, vprov, eprov, tprov, tc = parts
    return Triangulation(nv, ends, tris, source=S, vertex_prov=vprov,
                         edge_prov=eprov, tri_prov=tprov, coords=tc)


@lru_cache(maxsize=None)
def square_torus(subdivide: bool = False) -> Triangulation:
    """The flat unit-square torus ``a b a- b-`` with exact chart coordinates.

    Shared between calls, so curves built by separate calls can be compared.
    """
    S = CombSurface.from_words("a b a- b-", name="torus")
    return triangulate(S, subdivide=subdivide,
                       coords=[[(0, 0), (1, 0), (1, 1), (0, 1)]])
