"""Fundamental groups of gluing schemes and free-group word machinery.

Words are tuples of nonzero ints: ``k`` is the k-th generator (1-based) and
``-k`` its inverse.  Presentations come from a spanning tree of the 1-skeleton
and a spanning tree of the dual graph (tree-cotree): labels in neither tree
are the generators.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import (Disconnected, NoPeripheralImage, ParseError, UnknownGenerator,
                     Unsupported)
from .surface import CombSurface

# -- free group ----------------------------------------------------------


def inverse(w) -> tuple:
    return tuple(-x for x in reversed(w))


def free_reduce(w) -> tuple:
    out = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(w) -> tuple:
    w = free_reduce(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def power(w, n: int) -> tuple:
    if n < 0:
        return free_reduce(inverse(w) * (-n))
    return free_reduce(tuple(w) * n)


def is_conjugate(u, v) -> bool:
    """Conjugacy in a free group: cyclic reductions agree up to rotation."""
    a, b = cyclic_reduce(u), cyclic_reduce(v)
    if len(a) != len(b):
        return False
    if not a:
        return True
    return _is_rotation(a, b)


def _is_rotation(a, b) -> bool:
    doubled = a + a
    n = len(a)
    return any(doubled[i:i + n] == b for i in range(n))


def cyclic_canonical(w) -> tuple:
    """Least rotation of ``w`` or its inverse; positive letters sort first."""
    c = cyclic_reduce(w)
    if not c:
        return c
    key = lambda word: tuple((x < 0, abs(x)) for x in word)
    cands = []
    for x in (c, inverse(c)):
        cands.extend(x[i:] + x[:i] for i in range(len(x)))
    return min(cands, key=key)


def free_ops(u, v) -> dict:
    return {"u": free_reduce(u), "v": free_reduce(v),
            "u_cyclic": cyclic_reduce(u), "v_cyclic": cyclic_reduce(v),
            "conjugate": is_conjugate(u, v)}


# -- text ----------------------------------------------------------------


def parse_word(text: str, generators) -> tuple:
    index = {g: i + 1 for i, g in enumerate(generators)}
    out = []
    for tok in text.split():
        if tok in ("1", "e"):
            continue
        name, inv = (tok[:-1], True) if tok.endswith("-") else (tok, False)
        if not name:
            raise ParseError(f"bad token {tok!r}")
        if name not in index:
            raise UnknownGenerator(f"unknown generator {name!r}")
        out.append(-index[name] if inv else index[name])
    return tuple(out)


def format_word(w, generators) -> str:
    if not w:
        return "1"
    return " ".join(generators[abs(x) - 1] + ("-" if x < 0 else "") for x in w)


# -- presentations -------------------------------------------------------


@dataclass
class GroupPresentation:
    generators: list
    relators: list
    boundary_words: list
    label_words: dict = field(default_factory=dict, repr=False)

    @property
    def kind(self) -> str:
        return "one-relator" if self.relators else "free"

    @property
    def rank(self) -> int:
        return len(self.generators)

    def word(self, text: str) -> tuple:
        return parse_word(text, self.generators)

    def fmt(self, w) -> str:
        return format_word(w, self.generators)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "generators": list(self.generators),
                "relators": [self.fmt(r) for r in self.relators],
                "boundary_words": [self.fmt(b) for b in self.boundary_words]}


def _label_ends(S: CombSurface) -> dict:
    vc = S.vertex_of_corner
    ends = {}
    for l in S.labels:
        f, i, rev = S.occurrences[l][0]
        a, b = S.side_ends(f, i)
        a, b = vc[a], vc[b]
        ends[l] = (b, a) if rev else (a, b)
    return ends


def tree_cotree(S: CombSurface, root_face=None):
    """Generators and label words from a tree-cotree decomposition.

    ``root_face=None`` roots the dual tree outside the boundary (surfaces with
    boundary) or at face 0 (closed surfaces, whose root face yields the one
    relator).  An explicit root face is treated as punctured: its relation is
    dropped and the group is free.
    Returns ``(generators, label_words, relators)``.
    """
    if not S.is_connected:
        raise Disconnected("presentation needs a connected scheme")
    ends = _label_ends(S)
    labels = S.labels
    nv = S.num_vertices
    adj = {v: [] for v in range(nv)}
    for l in labels:
        a, b = ends[l]
        adj[a].append((l, b))
        adj[b].append((l, a))
    tree, seen = set(), {0}
    q = deque([0])
    while q:
        v = q.popleft()
        for l, w in adj[v]:
            if w not in seen:
                seen.add(w)
                tree.add(l)
                q.append(w)
    OUT = -1
    closed = not S.boundary_labels
    if root_face is None:
        root = 0 if closed else OUT
    else:
        root = root_face
    dual = {f: [] for f in range(len(S.faces))}
    dual[OUT] = []
    for l in labels:
        if l in tree:
            continue
        occ = S.occurrences[l]
        f1 = occ[0][0]
        f2 = occ[1][0] if len(occ) == 2 else OUT
        if f1 == f2:
            continue
        dual[f1].append((l, f2))
        dual[f2].append((l, f1))
    parent, order = {root: None}, [root]
    q = deque([root])
    while q:
        f = q.popleft()
        for l, g in dual[f]:
            if g not in parent:
                parent[g] = l
                order.append(g)
                q.append(g)
    need = set(range(len(S.faces))) | ({OUT} if not closed else set())
    if not need <= set(parent):
        raise RuntimeError("dual graph minus the spanning tree is disconnected")
    cotree = {l for l in parent.values() if l is not None}
    gens = [l for l in labels if l not in tree and l not in cotree]
    words = {l: () for l in tree}
    for k, g in enumerate(gens):
        words[g] = (k + 1,)

    def face_word(f):
        w = []
        for l, rev in S.faces[f]:
            x = words[l]
            w.extend(inverse(x) if rev else x)
        return free_reduce(w)

    for f in reversed(order):
        if f == root or f == OUT:
            continue
        l = parent[f]
        face = S.faces[f]
        i = next(k for k, (m, _) in enumerate(face) if m == l)
        rest = []
        for m, rev in face[i + 1:] + face[:i]:
            x = words[m]
            rest.extend(inverse(x) if rev else x)
        rest = free_reduce(rest)
        # face word l^e * rest = 1
        words[l] = rest if face[i][1] else inverse(rest)
    relators = []
    if closed and root_face is None:
        r = cyclic_reduce(face_word(root))
        if r:
            relators.append(r)
    return gens, words, relators


def words_of_loops(words: dict, loops) -> list:
    """Translate loops given as ``(label, reversed)`` sequences."""
    out = []
    for loop in loops:
        w = []
        for l, rev in loop:
            x = words[l]
            w.extend(inverse(x) if rev else x)
        out.append(free_reduce(w))
    return out


def presentation(S: CombSurface) -> GroupPresentation:
    gens, words, rels = tree_cotree(S)
    bws = [cyclic_canonical(w) for w in words_of_loops(words, S.boundary_cycles)]
    return GroupPresentation(list(gens), rels, bws, words)


# -- word problem --------------------------------------------------------


def _is_surface_relator(r, ngens) -> bool:
    counts = {}
    for x in r:
        counts[x] = counts.get(x, 0) + 1
    return all(counts.get(k, 0) == 1 and counts.get(-k, 0) == 1
               for k in range(1, ngens + 1))


def _symmetrized(r) -> list:
    out = []
    for x in (r, inverse(r)):
        out.extend(x[i:] + x[:i] for i in range(len(x)))
    return list(dict.fromkeys(out))


def max_piece(r) -> int:
    """Longest piece of the symmetrized relator set."""
    R = _symmetrized(r)
    best = 0
    for i, a in enumerate(R):
        for b in R[i + 1:]:
            k = 0
            while k < len(a) and a[k] == b[k]:
                k += 1
            best = max(best, k)
    return best


class DehnSolver:
    """Dehn's algorithm for a one-relator C'(1/6) presentation."""

    def __init__(self, relator):
        self.relator = tuple(relator)
        L = len(relator)
        self.rules = {}
        for rs in _symmetrized(relator):
            for k in range(L // 2 + 1, L + 1):
                self.rules.setdefault(rs[:k], inverse(rs[k:]))
        self.lengths = sorted({len(k) for k in self.rules}, reverse=True)

    def reduce(self, w) -> tuple:
        w = free_reduce(w)
        changed = True
        while changed:
            changed = False
            for k in self.lengths:
                for i in range(len(w) - k + 1):
                    rep = self.rules.get(w[i:i + k])
                    if rep is not None:
                        w = free_reduce(w[:i] + rep + w[i + k:])
                        changed = True
                        break
                if changed:
                    break
        return w

    def is_trivial(self, w) -> bool:
        return not self.reduce(w)


def word_problem(P: GroupPresentation, w) -> bool:
    """True iff ``w`` is trivial in the group."""
    if not P.relators:
        return not free_reduce(w)
    if len(P.relators) == 1:
        r = P.relators[0]
        n = P.rank
        if _is_surface_relator(r, n) and n >= 4 and max_piece(r) * 6 < len(r):
            return DehnSolver(r).is_trivial(w)
    raise Unsupported("word problem is implemented for free groups and closed "
                      "orientable surfaces of genus at least 2")


def brute_force_trivial(relator, w, max_len: int = 12, max_states: int = 200000) -> bool:
    """Breadth-first search for a derivation of ``w = 1``.

    States are cyclically reduced words up to rotation; moves insert a cyclic
    permutation of the relator or its inverse at any position, followed by
    free and cyclic reduction.  Words longer than ``max_len`` are discarded.
    """
    R = _symmetrized(tuple(relator))

    def canon(x):
        x = cyclic_reduce(x)
        if not x:
            return x
        return min(x[i:] + x[:i] for i in range(len(x)))

    start = canon(w)
    if not start:
        return True
    seen = {start}
    q = deque([start])
    while q and len(seen) < max_states:
        x = q.popleft()
        for i in range(len(x) + 1):
            for r in R:
                y = canon(x[:i] + r + x[i:])
                if len(y) > max_len or y in seen:
                    continue
                if not y:
                    return True
                seen.add(y)
                q.append(y)
    return False


# -- peripheral structure -------------------------------------------------


@dataclass
class Endomorphism:
    images: dict    # generator name -> word over the target generators

    def apply(self, w, source_gens) -> tuple:
        out = []
        for x in w:
            img = self.images[source_gens[abs(x) - 1]]
            out.extend(img if x > 0 else inverse(img))
        return free_reduce(out)


def parse_endomorphism(text: str, PF: GroupPresentation, PG: GroupPresentation) -> Endomorphism:
    images = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        if parts[0] != "map" or "->" not in line:
            raise ParseError(f"expected 'map <gen> -> <word>': {raw!r}")
        lhs, rhs = parts[1].split("->", 1)
        g = lhs.strip()
        if g not in PF.generators:
            raise UnknownGenerator(f"unknown source generator {g!r}")
        images[g] = free_reduce(PG.word(rhs))
    for g in PF.generators:
        images.setdefault(g, (PF.generators.index(g) + 1,)
                          if PF.generators == PG.generators else ())
    return Endomorphism(images)


def _injective_choice(options):
    """One target per boundary, pairwise distinct if possible (small backtracking)."""
    pick = [None] * len(options)

    def go(j, used):
        if j == len(options):
            return True
        for k in options[j]:
            if k not in used:
                pick[j] = k
                if go(j + 1, used | {k}):
                    return True
        return False

    if go(0, frozenset()):
        return pick, True
    return [opts[0] for opts in options], False


def check_peripheral(PF: GroupPresentation, PG: GroupPresentation, e: Endomorphism) -> dict:
    """Where each boundary word of F goes, up to conjugacy and powers.

    Boundary components with conjugate words (the two ends of an annulus)
    are interchangeable, so the reported assignment is injective whenever
    some choice among the matching targets is.
    """
    if PF.relators or PG.relators:
        raise Unsupported("peripheral checks need free presentations")
    min_len = min((len(cyclic_reduce(k)) for k in PG.boundary_words), default=0)
    found, images = [], []
    for J in PF.boundary_words:
        img = e.apply(J, PF.generators)
        L = len(cyclic_reduce(img))
        bound = max(1, -(-L // min_len)) if min_len else 1
        hits = []
        for m in range(1, bound + 1):
            for n in (m, -m):
                hits += [(kdx, n) for kdx, K in enumerate(PG.boundary_words)
                         if is_conjugate(img, power(K, n))]
            if hits:
                break
        if not hits:
            raise NoPeripheralImage(
                f"image of boundary word {PF.fmt(J)} is {PG.fmt(img)}, not conjugate "
                f"to a power of a boundary word")
        found.append(hits)
        images.append(img)
    targets, injective = _injective_choice([[k for k, _ in hits] for hits in found])
    entries = []
    for jdx, (J, img, hits, kdx) in enumerate(zip(PF.boundary_words, images, found, targets)):
        n = next(n for k, n in hits if k == kdx)
        entries.append({"boundary": jdx, "word": PF.fmt(J), "image": PG.fmt(img),
                        "target": kdx, "target_word": PG.fmt(PG.boundary_words[kdx]),
                        "n": n, "pass": abs(n) == 1})
    return {"boundaries": entries, "injective": injective,
            "pass": injective and all(x["pass"] for x in entries)}
