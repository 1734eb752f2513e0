"""Mapping classes as Dehn-twist words.

A twist word acts on carried curves by combinatorial Dehn twists.  Triviality
is decided by the Alexander method: the word must fix, up to oriented isotopy,
every curve of a filling system (pants curves plus duals cutting the pants
into disks) and preserve orientation.

Twist convention: ``T_a`` turns left when crossing ``a``, left being measured
in the orientation of the carrier (the orientation of ``a``'s annulus on
non-orientable carriers).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from gmpy2 import mpq

from . import overlay
from .curves import (_is_trivial_curve, _pieces, are_isotopic, bigon_reduce,
                     carry_path, crossing_count, enumerate_arcs, enumerate_cycles,
                     general_position, general_position_many)
from .errors import (CarrierMismatch, ExcludedSurface, NotSimple, OneSidedTwistCurve,
                     PreconditionViolated, UnknownGenerator, Unsupported)
from .normal import NormalCurve, normalize


# -- twist words --------------------------------------------------------------

def _free_reduce_letters(letters):
    out = []
    for name, s in letters:
        if out and out[-1][0] == name and out[-1][1] == -s:
            out.pop()
        else:
            out.append((name, s))
    return out


@dataclass
class TwistWord:
    """A word in named Dehn twists (and declared reflections).

    ``letters`` are ``(name, +1|-1)`` pairs, applied right to left.  A
    reflection is declared by the images of filling-system curves:
    ``reflections[name]`` is a list of ``(source, image)`` curve pairs.
    """

    carrier: object
    curves: dict
    letters: list = field(default_factory=list)
    reflections: dict = field(default_factory=dict)

    def __post_init__(self):
        self.letters = _free_reduce_letters([(n, int(s)) for n, s in self.letters])
        for name, c in self.curves.items():
            if c.carrier is not self.carrier:
                raise CarrierMismatch(f"generator {name!r} lives on another triangulation")
            if c.kind != "closed":
                raise PreconditionViolated(f"generator {name!r} is not a closed curve")
            if c.sidedness() != 2:
                raise OneSidedTwistCurve(f"twist curve {name!r} is one-sided")
        for name, _ in self.letters:
            if name not in self.curves and name not in self.reflections:
                raise UnknownGenerator(name)

    def __mul__(self, other: "TwistWord") -> "TwistWord":
        curves = dict(self.curves)
        curves.update(other.curves)
        refl = dict(self.reflections)
        refl.update(other.reflections)
        return TwistWord(self.carrier, curves, self.letters + other.letters, refl)

    def inverse(self) -> "TwistWord":
        letters = [(n, s if n in self.reflections else -s) for n, s in reversed(self.letters)]
        if any(n in self.reflections and s < 0 for n, s in self.letters):
            raise Unsupported("inverse reflections are not declared")
        return TwistWord(self.carrier, self.curves, letters, self.reflections)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return " ".join(n if s > 0 else n + "-" for n, s in self.letters) or "1"


def twist_word(carrier, curves: dict, text: str = "", reflections=None) -> TwistWord:
    """Parse ``"a b- a"`` (trailing ``-`` marks an inverse)."""
    letters = []
    for tok in text.split():
        if tok.endswith("-"):
            letters.append((tok[:-1], -1))
        else:
            letters.append((tok, 1))
    return TwistWord(carrier, dict(curves), letters, dict(reflections or {}))


# -- Dehn twists ------------------------------------------------------------

def orientation_signs(T):
    """Per triangle, +1 or -1 so that the signed triangles are coherently
    oriented; all +1 on non-orientable carriers."""
    cache = T.__dict__.get("_orient_signs")
    if cache is not None:
        return cache
    o = [0] * T.n_triangles
    ok = True
    for s in range(T.n_triangles):
        if o[s]:
            continue
        o[s] = 1
        q = deque([s])
        while q:
            t = q.popleft()
            for k in range(3):
                nb = T.other_side(t, k)
                if nb is None:
                    continue
                want = o[t] if T.orientation_compatible(t, k) else -o[t]
                if not o[nb[0]]:
                    o[nb[0]] = want
                    q.append(nb[0])
                elif o[nb[0]] != want:
                    ok = False
    out = o if ok else [1] * T.n_triangles
    T.__dict__["_orient_signs"] = out
    return out


def _ccw(u, base):
    return (u - base) % 3


def dehn_twist(a: NormalCurve, c: NormalCurve, sign: int = 1) -> NormalCurve:
    """``T_a(c)`` (``sign=-1`` for the inverse twist).

    Each crossing arc of c is replaced by a spiral once around a thin annulus
    about a.  In the annulus (angle along a, height across it) all spirals
    are parallel, so the result is simple.
    """
    T = a.carrier
    if c.carrier is not T:
        raise CarrierMismatch("curves live on different triangulations")
    if a.sidedness() != 2:
        raise OneSidedTwistCurve("twist curve is one-sided")
    pair = general_position(a, c)
    if not pair.count:
        return c
    c = pair.b
    n = len(a.points)
    achords, cchords = a.chords, c.chords
    dirs = a.side_directions()
    eps = sign * orientation_signs(T)[a.tris[0]]

    # order the crossings along each chord of a and of c
    along_a, along_c = {}, {}
    for t, i, j in pair.crossings:
        _, ua1, ua2 = achords[i]
        _, uc1, uc2 = cchords[j]
        da = _ccw(uc1, ua1) if _ccw(uc1, ua1) < _ccw(ua2, ua1) else _ccw(uc2, ua1)
        dc = _ccw(ua1, uc1) if _ccw(ua1, uc1) < _ccw(uc2, uc1) else _ccw(ua2, uc1)
        along_a.setdefault(i, []).append((da, j))
        along_c.setdefault(j, []).append((dc, i))
    lam = {}
    for i, lst in along_a.items():
        lst.sort()
        for r, (_, j) in enumerate(lst):
            lam[(i, j)] = i + mpq(r + 1, len(lst) + 1)

    # annulus half-widths at the points of a
    on = {}
    for e, p in a.points + c.points:
        on.setdefault(e, []).append(p)
    width = []
    for e, p in a.points:
        gap = min([p, 1 - p] + [abs(q - p) for q in on[e] if q != p])
        width.append(gap / 2)

    def spiral(i, j):
        t, ua1, ua2 = achords[i]
        uc1 = cchords[j][1]
        tri = T.triangles[t]
        k = tri.edges.index(a.points[i][0])
        plus_is_left = dirs[i] * tri.signs[k] < 0
        start_left = _ccw(uc1, ua2) < _ccw(ua1, ua2)
        from_plus = start_left == plus_is_left
        # travel direction along a: turning left from the -d side runs against a
        delta = (1 if from_plus else -1) * eps
        L = lam[(i, j)]
        pts, tris = [], []
        ks = [(i + 1 + s) % n for s in range(n)] if delta > 0 else [(i - s) % n for s in range(n)]
        for s, kk in enumerate(ks):
            dist = ((kk - L) % n) if delta > 0 else ((L - kk) % n)
            y = dist / n
            if from_plus:
                y = 1 - y
            e, p = a.points[kk]
            pts.append((e, p + dirs[kk] * (2 * y - 1) * width[kk]))
            if s < n - 1:
                tris.append(a.tris[kk] if delta > 0 else a.tris[(kk - 1) % n])
        return pts, tris

    new_pts, new_tris = [], []
    npts = len(c.points)
    for j in range(npts):
        new_pts.append(c.points[j])
        if j >= c.n_chords:
            break
        t = c.tris[j]
        for _, i in sorted(along_c.get(j, [])):
            sp, st = spiral(i, j)
            new_tris.append(t)
            new_pts.extend(sp)
            new_tris.extend(st)
        new_tris.append(t)
    out = NormalCurve(T, c.kind, tuple(new_pts), tuple(new_tris), c.name)
    return normalize(out)


def _apply_reflection(w, name, c):
    for src, img in w.reflections[name]:
        if src.kind == c.kind and are_isotopic(w.carrier, src, c, oriented=True):
            return img
    raise Unsupported(f"reflection {name!r} has no declared image for this curve")


def apply_word(w: TwistWord, c: NormalCurve) -> NormalCurve:
    """Image of c under the word; letters act right to left."""
    if c.carrier is not w.carrier:
        raise CarrierMismatch("curve and word live on different triangulations")
    for name, s in reversed(w.letters):
        if name in w.reflections:
            c = _apply_reflection(w, name, c)
        else:
            c = dehn_twist(w.curves[name], c, s)
    return c


# -- filling systems ---------------------------------------------------------

@dataclass
class FillingSystem:
    carrier: object
    pants_curves: list
    duals: list
    pieces: list                 # SurfaceTypes of the pants decomposition

    @property
    def curves(self) -> list:
        return self.pants_curves + self.duals

    def to_dict(self) -> dict:
        return {"pants_curves": [c.to_dict() for c in self.pants_curves],
                "duals": [c.to_dict() for c in self.duals],
                "pieces": [p.to_dict() for p in self.pieces]}


def _candidates(T, max_len):
    cyc = sorted(enumerate_cycles(T, max_len), key=lambda x: (len(x[1]), x[1]))
    out = []
    for vs, es in cyc:
        try:
            c = carry_path(T, vs, kind="closed", edges=es)
        except NotSimple:
            continue
        if c.sidedness() == 2 and not _is_trivial_curve(T, c):
            out.append(c)
    return out


def _cut_types(T, curves):
    ov = overlay.build(T, curves, cut=set(range(len(curves))))
    return [p.type for p in _pieces(ov)]


def _minimal(a, b) -> bool:
    pair = general_position(a, b)
    return bigon_reduce(pair, max_steps=1)[1] == pair.count


def filling_system(T, max_len: int = 12) -> FillingSystem:
    """A deterministic pants decomposition plus dual curves (and arcs on
    surfaces with boundary) whose union cuts F into disks.

    Pants curves are chosen greedily among short edge-path curves: a curve is
    kept if it misses the curves already chosen and no complementary piece
    becomes a disk, annulus or Moebius band.  Duals are kept greedily while
    they make the complement simpler and sit in minimal position with the
    curves already chosen.
    """
    typ = T.scheme.classify()
    if typ.excluded:
        raise ExcludedSurface(f"{typ.name} is excluded")
    if not typ.orientable:
        raise Unsupported("filling systems are built on orientable surfaces only")
    cands = _candidates(T, max_len)
    pants = []
    types = [typ]
    for c in cands:
        if all(t.euler == -1 and t.boundary == 3 for t in types):
            break
        moved = general_position_many(pants + [c])[-1]
        if any(crossing_count(p, moved) for p in pants):
            continue
        new = _cut_types(T, pants + [moved])
        if any(t.euler >= 0 for t in new):
            continue
        pants.append(moved)
        types = new
    if not all(t.euler == -1 and t.boundary == 3 for t in types):
        raise Unsupported("no pants decomposition among edge-path curves of length "
                          f"< {max_len}; try a finer triangulation")

    def measure(ts):
        bad = [t for t in ts if t.euler != 1]
        return (sum(1 - t.euler for t in bad), -len(bad))

    pool = list(cands)
    if T.boundary_edges:
        arcs = sorted(enumerate_arcs(T, max_len), key=lambda x: (len(x[1]), x[1]))
        for vs, es in arcs:
            try:
                pool.append(carry_path(T, vs, kind="arc", edges=es))
            except NotSimple:
                continue
    duals = []
    current = measure(types)
    for c in pool:
        if current == (0, 0):
            break
        moved = general_position_many(pants + duals + [c])[-1]
        if moved.kind == "closed" and not all(_minimal(d, moved) for d in pants + duals):
            continue
        m = measure(_cut_types(T, pants + duals + [moved]))
        if m < current:
            duals.append(moved)
            current = m
    if current != (0, 0):
        raise RuntimeError("duals do not cut the pants into disks")
    return FillingSystem(T, pants, duals, types)


def _system_for(T, system):
    if system is None:
        cache = T.__dict__.get("_filling")
        if cache is None:
            cache = T.__dict__["_filling"] = filling_system(T)
        system = cache
    return system


# -- triviality ------------------------------------------------------------

def _orientation_sign(w):
    sign = 1
    for name, _ in w.letters:
        if name in w.reflections:
            sign = -sign
    return sign


def verify_alignment(w: TwistWord, system: FillingSystem | None = None) -> list:
    """Per filling curve: whether w(gamma) is isotopic to gamma, with the
    bigon-reduction trace of the pair (gamma, w(gamma))."""
    T = w.carrier
    typ = T.scheme.classify()
    if typ.excluded:
        raise ExcludedSurface(f"{typ.name} is excluded")
    system = _system_for(T, system)
    report = []
    for k, g in enumerate(system.curves):
        img = apply_word(w, g)
        if img.key == g.key:
            report.append({"curve": k, "aligned": True, "trace": [], "kind": g.kind})
            continue
        trace = []
        if g.kind == "closed":
            _, _, trace = bigon_reduce(general_position(g, img))
        aligned = are_isotopic(T, g, img, oriented=True)
        report.append({"curve": k, "aligned": aligned, "trace": trace, "kind": g.kind})
    return report


def is_trivial(w: TwistWord, system: FillingSystem | None = None) -> bool:
    T = w.carrier
    typ = T.scheme.classify()
    if typ.excluded:
        raise ExcludedSurface(f"{typ.name} is excluded")
    if not w.letters:
        return True
    if _orientation_sign(w) != 1:
        return False
    system = _system_for(T, system)
    for g in system.curves:
        if not are_isotopic(T, g, apply_word(w, g), oriented=True):
            return False
    return True
