"""Mod-2 cellular homology of gluing schemes and their triangulations."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import gf2
from .errors import (HasBoundary, NonOrientable, NotCarried, OneSidedTwistCurve,
                     RelativeOnClosed)
from .surface import CombSurface


class ChainComplexZ2:
    """Cellular chain complex of a scheme over Z/2, optionally relative to the boundary.

    Cells: vertices are corner orbits, edges are labels (sorted), faces are
    the scheme's polygons.  With ``relative=True`` boundary edges and boundary
    vertices are quotiented out.
    """

    def __init__(self, S: CombSurface, relative: bool = False, basis_hint=None):
        self.surface = S
        self.relative = relative
        self.labels = S.labels
        self.edge_index = {l: i for i, l in enumerate(self.labels)}
        vc = S.vertex_of_corner
        self.n_vertices = S.num_vertices
        self.relative_mask = set()
        bverts = set()
        if relative:
            for l in S.boundary_labels:
                f, i, _ = S.occurrences[l][0]
                n = len(S.faces[f])
                bverts.update((vc[(f, i)], vc[(f, (i + 1) % n)]))
            self.relative_mask = {("edge", l) for l in S.boundary_labels} | \
                                 {("vertex", v) for v in bverts}
        self._bverts = bverts
        self._bedges = set(S.boundary_labels) if relative else set()
        d1 = []
        for l in self.labels:
            if l in self._bedges:
                d1.append(0)
                continue
            f, i, rev = S.occurrences[l][0]
            t, h = S.side_ends(f, i)
            v = 0
            for corner in (t, h):
                w = vc[corner]
                if w not in bverts:
                    v ^= 1 << w
            d1.append(v)
        d2 = []
        for face in S.faces:
            v = 0
            for l, _ in face:
                if l not in self._bedges:
                    v ^= 1 << self.edge_index[l]
            d2.append(v)
        self.d1 = d1   # per edge: vertex bitmask
        self.d2 = d2   # per face: edge bitmask
        self._hint = basis_hint or []

    # -- matrices -----------------------------------------------------
    @property
    def boundary_1(self) -> np.ndarray:
        """edges x vertices."""
        return gf2.to_matrix(self.d1, self.n_vertices)

    @property
    def boundary_2(self) -> np.ndarray:
        """faces x edges."""
        return gf2.to_matrix(self.d2, len(self.labels))

    def check_d_squared(self) -> bool:
        return not gf2.matmul(self.boundary_2, self.boundary_1).any()

    # -- ranks --------------------------------------------------------
    @cached_property
    def _rank1(self):
        return gf2.rank(self.d1)

    @cached_property
    def _rank2(self):
        return gf2.rank(self.d2)

    def betti(self) -> tuple:
        nv = self.n_vertices - len(self._bverts)
        ne = len(self.labels) - len(self._bedges)
        nf = len(self.surface.faces)
        b0 = nv - self._rank1
        b1 = ne - self._rank1 - self._rank2
        b2 = nf - self._rank2
        return b0, b1, b2

    # -- cycles and classes ------------------------------------------
    @cached_property
    def boundaries(self) -> gf2.Echelon:
        e = gf2.Echelon()
        for r in self.d2:
            e.add(r)
        return e

    def chain(self, edges) -> int:
        """Pack an iterable of labels (with repetition) into a chain vector."""
        v = 0
        for l in edges:
            if l in self._bedges:
                continue
            v ^= 1 << self.edge_index[l]
        return v

    def is_cycle(self, z: int) -> bool:
        acc = 0
        for i in gf2.support(z):
            acc ^= self.d1[i]
        return acc == 0

    def canonical(self, z: int) -> int:
        return self.boundaries.reduce(z)[0]

    @cached_property
    def cycle_basis(self) -> list:
        """Cycles whose classes form a basis of H1, hint cycles first."""
        ker = gf2.nullspace(self._d1_rows_by_vertex(), len(self.labels))
        cand = [self.chain(c) for c in self._hint] + ker
        span = gf2.Echelon()
        for r in self.d2:
            span.add(r)
        basis = []
        for z in cand:
            if z and self.is_cycle(z) and span.add(z):
                basis.append(self.canonical(z))
        return basis

    def _d1_rows_by_vertex(self):
        rows = [0] * self.n_vertices
        for i, col in enumerate(self.d1):
            for v in gf2.support(col):
                rows[v] ^= 1 << i
        # quotiented edges must not appear as free coordinates
        extra = [1 << self.edge_index[l] for l in self._bedges]
        return rows + extra

    @cached_property
    def _coord_echelon(self) -> gf2.Echelon:
        e = gf2.Echelon()
        for r in self.d2:
            e.add(r, 0)
        for k, z in enumerate(self.cycle_basis):
            e.add(z, 1 << k)
        return e

    def coordinates(self, z: int) -> tuple:
        if not self.is_cycle(z):
            raise NotCarried("chain is not a cycle")
        rem, tag = self._coord_echelon.reduce(z)
        if rem:
            raise RuntimeError("cycle outside the span of the H1 basis")
        n = len(self.cycle_basis)
        return tuple((tag >> k) & 1 for k in range(n))

    def is_zero(self, z: int) -> bool:
        return self.boundaries.contains(z)


@dataclass(frozen=True)
class HomologyClass:
    ambient: ChainComplexZ2
    coords: tuple
    representative: int

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def to_dict(self) -> dict:
        return {"relative": self.ambient.relative, "coords": list(self.coords),
                "basis_size": len(self.coords)}


# -- operations on schemes ------------------------------------------------

def homology_ranks(S: CombSurface, relative: bool = False) -> tuple:
    if relative and not S.boundary_labels:
        raise RelativeOnClosed("relative homology needs a nonempty boundary")
    return ChainComplexZ2(S, relative=relative).betti()


def _source_hint(T):
    """Cycles of the triangulation running along the source scheme's label loops."""
    if T.source is None:
        return []
    hint = []
    halves = {}
    for e, prov in enumerate(T.edge_prov):
        if prov and prov[0] == "half" and prov[2] == "label":
            halves.setdefault(prov[3], []).append(e)
        elif prov and prov[0] == "label":
            halves.setdefault(prov[1], []).append(e)
    for label in T.source.labels:
        if label in halves:
            hint.append([T.label(e) for e in halves[label]])
    return hint


class _Complexes:
    """Lazily built complexes attached to a triangulation."""

    def __init__(self, T):
        self.T = T

    @cached_property
    def absolute(self):
        return ChainComplexZ2(self.T.scheme, basis_hint=_source_hint(self.T))

    @cached_property
    def relative(self):
        return ChainComplexZ2(self.T.scheme, relative=True, basis_hint=_source_hint(self.T))

    @cached_property
    def capped(self):
        return ChainComplexZ2(self.T.scheme.capped(), basis_hint=_source_hint(self.T))


def complexes(T) -> _Complexes:
    c = T.__dict__.get("_complexes")
    if c is None:
        c = _Complexes(T)
        T.__dict__["_complexes"] = c
    return c


def _curve_chain(T, c):
    if getattr(c, "carrier", T) is not T:
        raise NotCarried("curve lives on a different triangulation")
    return [T.label(e) for e in c.edge_chain()]


def class_of_curve(T, c, capped: bool = False) -> HomologyClass:
    """Z/2 class of a closed curve in H1(F) (or H1 of the capped surface),
    or of an arc in H1(F, dF)."""
    cx = complexes(T)
    if c.kind == "arc":
        C = cx.relative
    else:
        C = cx.capped if capped else cx.absolute
    z = C.chain(_curve_chain(T, c))
    return HomologyClass(C, C.coordinates(z), C.canonical(z))


def is_separating_by_class(T, c) -> bool:
    """Arcs: relative class zero.  Closed curves: zero in the boundary-capped surface."""
    cx = complexes(T)
    C = cx.relative if c.kind == "arc" else cx.capped
    z = C.chain(_curve_chain(T, c))
    if not C.is_cycle(z):
        raise NotCarried("curve chain is not a cycle")
    return C.is_zero(z)


# -- intersection form and mapping-class actions --------------------------

def _barycentric_cup(S: CombSurface):
    """Barycentric subdivision of ``S`` as a Delta-complex (vertex < midpoint
    < centre), returned as (triangles, n_edges, half-edge index).

    Each triangle is a triple of edge ids ``(front, back, long)`` with front
    = [v, m], back = [m, c] and long = [v, c], which is all the cup product
    needs.
    """
    vc = S.vertex_of_corner
    edges = {}

    def eid(key):
        return edges.setdefault(key, len(edges))

    tris, ends = [], {}
    for f, face in enumerate(S.faces):
        n = len(face)
        for i, (l, rev) in enumerate(face):
            spoke = eid(("spoke", f, i))
            for k, corner in enumerate(((f, i), (f, (i + 1) % n))):
                end = k ^ int(rev)          # 0 = label tail, 1 = label head
                half = eid(("half", l, end))
                ends[(l, end)] = vc[corner]
                tris.append((half, spoke, eid(("corner",) + corner)))
    return tris, edges, ends


def intersection_form(T) -> np.ndarray:
    """Mod-2 intersection pairing on the H1 basis of ``complexes(T).absolute``.

    Computed by Poincare duality from the cup product on the barycentric
    subdivision: with C the cup-product matrix of a cohomology basis and E
    its evaluation on the homology basis, the pairing is E^T C^-T E.
    """
    if T.boundary_edges:
        raise HasBoundary("intersection form is defined here for closed surfaces")
    cached = T.__dict__.get("_qform")
    if cached is not None:
        return cached
    C = complexes(T).absolute
    S = C.surface
    tris, edges, ends = _barycentric_cup(S)
    ne = len(edges)
    cocycles = gf2.nullspace([gf2.bits(t) for t in tris], ne)
    # coboundaries of the subdivision's vertices
    star = {}
    for key, e in edges.items():
        if key[0] == "half":
            a, b = ("v", ends[key[1:]]), ("m", key[1])
        elif key[0] == "spoke":
            a, b = ("m", S.faces[key[1]][key[2]][0]), ("c", key[1])
        else:
            a, b = ("v", S.vertex_of_corner[key[1:]]), ("c", key[1])
        for x in (a, b):
            star[x] = star.get(x, 0) ^ (1 << e)
    cob = gf2.Echelon()
    for row in star.values():
        cob.add(row)
    reps = [phi for phi in cocycles if cob.add(phi)]
    n = len(C.cycle_basis)
    assert len(reps) == n, (len(reps), n)
    E = np.zeros((n, n), dtype=np.uint8)
    for j, z in enumerate(C.cycle_basis):
        sd = 0
        for i in gf2.support(z):
            l = C.labels[i]
            sd ^= (1 << edges[("half", l, 0)]) ^ (1 << edges[("half", l, 1)])
        for k, phi in enumerate(reps):
            E[k, j] = bin(phi & sd).count("1") & 1
    cup = np.zeros((n, n), dtype=np.uint8)
    for k, phi in enumerate(reps):
        for m, psi in enumerate(reps):
            cup[k, m] = sum((phi >> a & 1) & (psi >> b & 1) for a, b, _ in tris) & 1
    Q = gf2.matmul(gf2.matmul(E.T, gf2.inverse(cup).T), E)
    T.__dict__["_qform"] = Q
    return Q


def transvection(Q: np.ndarray, a) -> np.ndarray:
    a = np.asarray(a, dtype=np.uint8)
    n = len(a)
    return (np.eye(n, dtype=np.uint8) + np.outer(a, gf2.matmul(Q, a[:, None])[:, 0])) % 2


def h1_action(T, word) -> np.ndarray:
    """Matrix of the twist word on H1(F; Z/2): the product of transvections.

    Letters are applied right to left, matching ``apply_word``.
    """
    Q = intersection_form(T)
    n = Q.shape[0]
    B = np.eye(n, dtype=np.uint8)
    for name, _sign in word.letters:
        c = word.curves[name]
        if c.sidedness() != 2:
            raise OneSidedTwistCurve(f"twist curve {name!r} is one-sided")
        a = class_of_curve(T, c).coords
        B = gf2.matmul(B, transvection(Q, a))
    return B


def orientation_action(T, word) -> int:
    """+1 if the word preserves the fundamental class, -1 otherwise."""
    if not T.scheme.orientable:
        raise NonOrientable("orientation action needs an orientable surface")
    sign = 1
    for name, _s in word.letters:
        if name in getattr(word, "reflections", {}):
            sign = -sign
    return sign
