"""Compact surfaces as polygon gluing schemes.

A scheme is a list of faces; each face is a cyclic word of side tokens
``(label, reversed)``.  A label used twice is an interior side glued to its
partner, a label used once is a boundary side.  Side ``i`` of a face runs
from corner ``i`` to corner ``i + 1``; the token is ``reversed`` when that
traversal runs against the label's own direction.
"""
from __future__ import annotations

import json
import re
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import Disconnected, LabelArity, MalformedToken, NonManifold, ParseError

_TOKEN = re.compile(r"^([A-Za-z0-9_]+)(-?)$")

Token = tuple  # (label: str, reversed: bool)


def parse_token(text: str) -> Token:
    m = _TOKEN.match(text)
    if not m:
        raise MalformedToken(f"bad side token {text!r}")
    return (m.group(1), m.group(2) == "-")


def token_str(tok: Token) -> str:
    return tok[0] + ("-" if tok[1] else "")


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass(frozen=True)
class SurfaceType:
    orientable: bool
    genus: int
    crosscaps: int
    boundary: int
    euler: int
    excluded: bool

    @property
    def name(self) -> str:
        key = (self.orientable, self.genus if self.orientable else self.crosscaps,
               self.boundary)
        names = {
            (True, 0, 0): "sphere", (True, 0, 1): "disk", (True, 0, 2): "cylinder",
            (True, 0, 3): "pair of pants", (True, 1, 0): "torus",
            (True, 1, 1): "one-holed torus", (False, 1, 0): "projective plane",
            (False, 1, 1): "Moebius band", (False, 2, 0): "Klein bottle",
        }
        if key in names:
            return names[key]
        if self.orientable:
            return f"orientable genus {self.genus}, {self.boundary} boundary"
        return f"non-orientable, {self.crosscaps} crosscaps, {self.boundary} boundary"

    def to_dict(self) -> dict:
        return {"orientable": self.orientable, "genus": self.genus,
                "crosscaps": self.crosscaps, "boundary": self.boundary,
                "euler": self.euler, "excluded": self.excluded}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)


EXCLUDED = {
    (True, 0, 0), (True, 0, 1), (True, 0, 2),     # sphere, disk, cylinder
    (True, 1, 0),                                 # torus
    (False, 1, 0), (False, 1, 1), (False, 2, 0),  # RP2, Moebius band, Klein bottle
}


def surface_type(orientable: bool, euler: int, boundary: int) -> SurfaceType:
    """Closed-form classification from orientability, chi and r."""
    rest = 2 - euler - boundary
    if orientable:
        if rest < 0 or rest % 2:
            raise NonManifold(f"chi={euler}, r={boundary} is not an orientable surface")
        g, k = rest // 2, 0
        key = (True, g, boundary)
    else:
        if rest < 1:
            raise NonManifold(f"chi={euler}, r={boundary} is not a non-orientable surface")
        g, k = 0, rest
        key = (False, k, boundary)
    return SurfaceType(orientable, g, k, boundary, euler, key in EXCLUDED)


@dataclass(frozen=True)
class CombSurface:
    """A polygon gluing scheme.  Immutable; validated on construction."""

    faces: tuple
    name: str = "surface"
    allow_disconnected: bool = True
    _check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        # unchecked construction is internal and already passes normalised tokens
        if self._check:
            faces = tuple(tuple((str(l), bool(r)) for l, r in face) for face in self.faces)
            object.__setattr__(self, "faces", faces)
            self._validate()

    # -- construction -------------------------------------------------
    @classmethod
    def from_words(cls, *words: str, name: str = "surface", **kw) -> "CombSurface":
        faces = [[parse_token(t) for t in w.split()] for w in words]
        return cls(tuple(tuple(f) for f in faces), name=name, **kw)

    def _validate(self):
        for i, face in enumerate(self.faces):
            if not face:
                raise MalformedToken(f"face {i} is empty")
        for label, occ in self.occurrences.items():
            if len(occ) > 2:
                raise LabelArity(f"label {label!r} used {len(occ)} times")
        if not self.allow_disconnected and len(self.face_components) > 1:
            raise Disconnected(f"scheme has {len(self.face_components)} components")
        self._check_links()

    # -- combinatorics ------------------------------------------------
    @cached_property
    def occurrences(self) -> dict:
        occ = defaultdict(list)
        for f, face in enumerate(self.faces):
            for i, (label, rev) in enumerate(face):
                occ[label].append((f, i, rev))
        return dict(occ)

    @property
    def labels(self) -> list:
        return sorted(self.occurrences)

    @cached_property
    def boundary_labels(self) -> list:
        return sorted(l for l, o in self.occurrences.items() if len(o) == 1)

    @cached_property
    def interior_labels(self) -> list:
        return sorted(l for l, o in self.occurrences.items() if len(o) == 2)

    def side_ends(self, f: int, i: int) -> tuple:
        """(tail corner, head corner) of side ``i`` of face ``f`` in label direction."""
        n = len(self.faces[f])
        a, b = (f, i), (f, (i + 1) % n)
        return (b, a) if self.faces[f][i][1] else (a, b)

    @cached_property
    def vertex_of_corner(self) -> dict:
        """Corner ``(f, i)`` -> vertex id, numbered in order of first corner."""
        base, n = [], 0
        for face in self.faces:
            base.append(n)
            n += len(face)
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        faces = self.faces
        for occ in self.occurrences.values():
            if len(occ) == 2:
                (f1, i1, r1), (f2, i2, r2) = occ
                n1, n2 = len(faces[f1]), len(faces[f2])
                a1, b1 = base[f1] + i1, base[f1] + (i1 + 1) % n1
                a2, b2 = base[f2] + i2, base[f2] + (i2 + 1) % n2
                if r1:
                    a1, b1 = b1, a1
                if r2:
                    a2, b2 = b2, a2
                for x, y in ((a1, a2), (b1, b2)):
                    rx, ry = find(x), find(y)
                    if rx != ry:
                        parent[ry] = rx
        ids, out = {}, {}
        for f, face in enumerate(faces):
            for i in range(len(face)):
                root = find(base[f] + i)
                out[(f, i)] = ids.setdefault(root, len(ids))
        return out

    @property
    def num_vertices(self) -> int:
        return len(set(self.vertex_of_corner.values()))

    @cached_property
    def face_components(self) -> list:
        parent = list(range(len(self.faces)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for occ in self.occurrences.values():
            if len(occ) == 2:
                ra, rb = find(occ[0][0]), find(occ[1][0])
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        comps = defaultdict(list)
        for f in range(len(self.faces)):
            comps[find(f)].append(f)
        return sorted(comps.values())

    @property
    def is_connected(self) -> bool:
        return len(self.face_components) == 1

    @cached_property
    def _partners(self) -> dict:
        out = {}
        for occ in self.occurrences.values():
            if len(occ) == 2:
                (f1, i1, r1), (f2, i2, r2) = occ
                out[(f1, i1)] = (f2, i2, r2)
                out[(f2, i2)] = (f1, i1, r1)
        return out

    def partner(self, f: int, i: int):
        """The other occurrence of side (f, i), or None on the boundary."""
        return self._partners.get((f, i))

    def _rotate(self, f: int, via: int, at_tail: bool):
        """Cross side ``via`` of face ``f`` at one of its ends.

        ``at_tail`` says whether we stand at the start (in face order) of the
        side.  Returns ``(g, side, at_tail)``: the other side of the partner
        face at the matching corner, or None if ``via`` is a boundary side.
        """
        p = self.partner(f, via)
        if p is None:
            return None
        g, j, rev2 = p
        same_dir = self.faces[f][via][1] == rev2
        n = len(self.faces[g])
        if at_tail == same_dir:
            return g, (j - 1) % n, False   # standing at corner j, start of side j
        return g, (j + 1) % n, True        # standing at corner j+1, end of side j

    def _check_links(self):
        """Each vertex link must be a single circle or a single arc."""
        vc = self.vertex_of_corner
        seen = set()
        links = defaultdict(int)
        for f, face in enumerate(self.faces):
            n = len(face)
            for c in range(n):
                if (f, c) in seen:
                    continue
                links[vc[(f, c)]] += 1
                stack = [(f, c)]
                while stack:
                    g, d = stack.pop()
                    if (g, d) in seen:
                        continue
                    seen.add((g, d))
                    m = len(self.faces[g])
                    for via, at_tail in ((d, True), ((d - 1) % m, False)):
                        r = self._rotate(g, via, at_tail)
                        if r is not None:
                            h, side, tail = r
                            corner = side if tail else (side + 1) % len(self.faces[h])
                            stack.append((h, corner))
        for v, k in links.items():
            if k > 1:
                raise NonManifold(f"vertex {v} has a disconnected link")

    @cached_property
    def boundary_cycles(self) -> list:
        """Boundary components as cyclic lists of boundary side tokens.

        Each component is read in the direction of the face traversal it is
        first met in, rotated to start at its least label.
        """
        bsides = {(occ[0][0], occ[0][1]) for occ in self.occurrences.values()
                  if len(occ) == 1}
        used, cycles = set(), []
        for start in sorted(bsides):
            if start in used:
                continue
            cyc = []
            f, i, forward = start[0], start[1], True
            while (f, i) not in used:
                used.add((f, i))
                label, rev = self.faces[f][i]
                cyc.append((label, rev ^ (not forward)))
                n = len(self.faces[f])
                via, at_tail = ((i + 1) % n, True) if forward else ((i - 1) % n, False)
                while (f, via) not in bsides:
                    f, via, at_tail = self._rotate(f, via, at_tail)
                f, i, forward = f, via, at_tail
            k = min(range(len(cyc)), key=lambda j: cyc[j])
            cycles.append(cyc[k:] + cyc[:k])
        return cycles

    # -- invariants ---------------------------------------------------
    def euler_characteristic(self) -> int:
        return self.num_vertices - len(self.occurrences) + len(self.faces)

    @cached_property
    def face_flips(self):
        """Per-face flip flags making the scheme coherently oriented, or None."""
        flip = {}
        for comp in self.face_components:
            flip[comp[0]] = False
            stack = [comp[0]]
            while stack:
                f = stack.pop()
                for i, (label, rev) in enumerate(self.faces[f]):
                    p = self.partner(f, i)
                    if p is None:
                        continue
                    g, _, rev2 = p
                    want = flip[f] ^ rev ^ (not rev2)  # opposite directions once flipped
                    if g in flip:
                        if flip[g] != want:
                            return None
                    else:
                        flip[g] = want
                        stack.append(g)
        return [flip[f] for f in range(len(self.faces))]

    @property
    def orientable(self) -> bool:
        return self.face_flips is not None

    def classify(self) -> SurfaceType:
        if not self.is_connected:
            raise Disconnected("classify needs a connected scheme")
        return surface_type(self.orientable, self.euler_characteristic(),
                            len(self.boundary_cycles))

    # -- derived schemes ---------------------------------------------
    @cached_property
    def component_data(self) -> list:
        """Per component ``(faces, euler characteristic, boundary cycles)``,
        computed on the whole scheme without splitting it."""
        comp_of = {}
        for k, comp in enumerate(self.face_components):
            for f in comp:
                comp_of[f] = k
        vc = self.vertex_of_corner
        verts = [set() for _ in self.face_components]
        labels = [set() for _ in self.face_components]
        for f, face in enumerate(self.faces):
            k = comp_of[f]
            for i, (label, _) in enumerate(face):
                verts[k].add(vc[(f, i)])
                labels[k].add(label)
        cycles = [[] for _ in self.face_components]
        for cyc in self.boundary_cycles:
            cycles[comp_of[self.occurrences[cyc[0][0]][0][0]]].append(cyc)
        return [(comp, len(verts[k]) - len(labels[k]) + len(comp), cycles[k])
                for k, comp in enumerate(self.face_components)]

    def components(self) -> list:
        """Split into connected sub-schemes."""
        if self.is_connected:
            return [self]
        return [CombSurface(tuple(self.faces[f] for f in comp),
                            name=f"{self.name}#{k}", _check=False)
                for k, comp in enumerate(self.face_components)]

    def capped(self) -> "CombSurface":
        """Glue one new face onto every boundary component."""
        faces = list(self.faces)
        for cyc in self.boundary_cycles:
            faces.append(tuple((l, not r) for l, r in reversed(cyc)))
        return CombSurface(tuple(faces), name=self.name + "^", _check=False)

    def relabeled(self, mapping: dict) -> "CombSurface":
        return CombSurface(tuple(tuple((mapping.get(l, l), r) for l, r in face)
                                 for face in self.faces), name=self.name)

    def to_text(self) -> str:
        lines = [f"surface {self.name}"]
        for face in self.faces:
            lines.append("face " + " ".join(token_str(t) for t in face))
        return "\n".join(lines) + "\n"

    def __str__(self):
        return " | ".join(" ".join(token_str(t) for t in face) for face in self.faces)


def parse_scheme(text: str, strict: bool = False) -> CombSurface:
    """Parse the line-oriented surface file format."""
    name, faces = "surface", []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "surface":
            if len(rest) != 1:
                raise ParseError(f"line {lineno}: expected 'surface <name>'")
            name = rest[0]
        elif head == "face":
            if not rest:
                raise MalformedToken(f"line {lineno}: empty face")
            faces.append(tuple(parse_token(t) for t in rest))
        else:
            raise ParseError(f"line {lineno}: unknown directive {head!r}")
    if not faces:
        raise ParseError("no faces")
    return CombSurface(tuple(faces), name=name, allow_disconnected=not strict)


def euler_characteristic(S: CombSurface) -> int:
    return S.euler_characteristic()


def classify(S: CombSurface) -> SurfaceType:
    return S.classify()


def boundary_components(S: CombSurface) -> list:
    return [[token_str(t) for t in cyc] for cyc in S.boundary_cycles]


# -- a few standard schemes, used by tests and the CLI --------------------

def standard_scheme(genus: int = 0, boundary: int = 0, crosscaps: int = 0,
                    name: str | None = None) -> CombSurface:
    """One-face scheme for the surface with the given invariants.

    Orientable: a1 b1 a1- b1- ... then one boundary loop per hole, each
    attached by a connecting side ``t_j`` (the face word contains
    ``t_j h_j t_j-``, with ``h_j`` the boundary side).
    """
    if genus and crosscaps:
        raise ValueError("give genus or crosscaps, not both")
    word = []
    for i in range(1, genus + 1):
        word += [f"a{i}", f"b{i}", f"a{i}-", f"b{i}-"]
    for i in range(1, crosscaps + 1):
        word += [f"c{i}", f"c{i}"]
    if not word:
        if boundary == 0:
            word = ["a", "a-"]
        elif boundary == 1:
            word = ["h1"]
        else:
            word = ["h1"]
            for j in range(2, boundary + 1):
                word += [f"t{j}", f"h{j}", f"t{j}-"]
        return CombSurface.from_words(" ".join(word), name=name or f"S0_{boundary}")
    for j in range(1, boundary + 1):
        word += [f"t{j}", f"h{j}", f"t{j}-"]
    tag = f"S{genus}_{boundary}" if not crosscaps else f"N{crosscaps}_{boundary}"
    return CombSurface.from_words(" ".join(word), name=name or tag)


def cone_faces(S: CombSurface) -> Iterable:
    return S.faces
