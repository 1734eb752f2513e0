"""Text formats for curves, twist words and the default triangulation.

Curve files::

    curve <name> on <surface> kind closed|arc
    path <v0> <v1> ...                 # vertices of the triangulation, or
    coords <triangle> <c0> <c1> <c2>   # corner counts, one line per triangle

Word files::

    mcg on <surface>
    gen <name> = curve <curvename>
    word <name> <name>- ...

A ``gen`` refers to a curve defined inline in the word file or else to
``<curvename>.crv`` next to it.
"""
from __future__ import annotations

import os

from .curves import carry_coords, carry_path
from .errors import CarrierMismatch, ParseError, UnknownGenerator
from .mcg import TwistWord
from .surface import parse_scheme
from .triangulation import triangulate

DEFAULT_PARTS = 4


def load_surface(path):
    with open(path) as fh:
        return parse_scheme(fh.read())


def default_triangulation(S, mode: str = "split"):
    """The triangulation curve files refer to: every label cut into four
    pieces and every face coned (``mode="split"``), or the barycentric
    subdivision of the coned faces (``mode="bary"``)."""
    if mode == "split":
        return triangulate(S, "split", parts=DEFAULT_PARTS)
    if mode == "bary":
        return triangulate(S)
    raise ParseError(f"unknown triangulation mode {mode!r}")


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _int(tok, lineno):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"line {lineno}: expected an integer, got {tok!r}") from None


def _build_curve(T, header, body, surface_name=None):
    lineno, name, on, kind = header
    if surface_name is not None and on != surface_name:
        raise CarrierMismatch(f"curve {name!r} is on {on!r}, not {surface_name!r}")
    paths = [b for b in body if b[1] == "path"]
    coords = [b for b in body if b[1] == "coords"]
    if paths and coords or len(paths) > 1:
        raise ParseError(f"curve {name!r}: give one path or coords lines, not both")
    if paths:
        ln, _, args = paths[0]
        return carry_path(T, [_int(a, ln) for a in args], kind=kind, name=name)
    if not coords:
        raise ParseError(f"curve {name!r} has no data")
    corners = {}
    for ln, _, args in coords:
        if len(args) != 4:
            raise ParseError(f"line {ln}: expected 'coords <triangle> <c0> <c1> <c2>'")
        t = _int(args[0], ln)
        if not 0 <= t < T.n_triangles:
            raise ParseError(f"line {ln}: no triangle {t}")
        corners[t] = tuple(_int(a, ln) for a in args[1:])
    return carry_coords(T, corners, name=name, kind=kind)


def parse_curves(text: str, T, surface_name=None) -> dict:
    """All curves of a curve file (or of the inline blocks of a word file)."""
    out, header, body = {}, None, []

    def flush():
        if header is not None:
            out[header[1]] = _build_curve(T, header, body, surface_name)

    for lineno, toks in _lines(text):
        head = toks[0]
        if head == "curve":
            flush()
            if len(toks) != 6 or toks[2] != "on" or toks[4] != "kind" \
                    or toks[5] not in ("closed", "arc"):
                raise ParseError(f"line {lineno}: expected "
                                 "'curve <name> on <surface> kind closed|arc'")
            header, body = (lineno, toks[1], toks[3], toks[5]), []
        elif head in ("path", "coords"):
            if header is None:
                raise ParseError(f"line {lineno}: {head} outside a curve block")
            body.append((lineno, head, toks[1:]))
        elif head in ("mcg", "gen", "word"):
            flush()
            header = None
        else:
            raise ParseError(f"line {lineno}: unknown directive {head!r}")
    flush()
    return out


def load_curve(path, T, surface_name=None):
    with open(path) as fh:
        curves = parse_curves(fh.read(), T, surface_name)
    if len(curves) != 1:
        raise ParseError(f"{path}: expected exactly one curve, found {len(curves)}")
    return next(iter(curves.values()))


def parse_word_file(text: str, T, surface_name=None, base_dir=".") -> TwistWord:
    inline = parse_curves(text, T, surface_name)
    gens, letters, seen_word = {}, [], False
    for lineno, toks in _lines(text):
        head = toks[0]
        if head == "mcg":
            if len(toks) != 3 or toks[1] != "on":
                raise ParseError(f"line {lineno}: expected 'mcg on <surface>'")
            if surface_name is not None and toks[2] != surface_name:
                raise CarrierMismatch(f"word is on {toks[2]!r}, not {surface_name!r}")
        elif head == "gen":
            if len(toks) != 5 or toks[2] != "=" or toks[3] != "curve":
                raise ParseError(f"line {lineno}: expected 'gen <name> = curve <curvename>'")
            cname = toks[4]
            if cname in inline:
                gens[toks[1]] = inline[cname]
            else:
                path = os.path.join(base_dir, cname + ".crv")
                if not os.path.exists(path):
                    raise UnknownGenerator(f"no curve {cname!r} inline or at {path}")
                gens[toks[1]] = load_curve(path, T, surface_name)
        elif head == "word":
            if seen_word:
                raise ParseError(f"line {lineno}: more than one word line")
            seen_word = True
            for tok in toks[1:]:
                name, s = (tok[:-1], -1) if tok.endswith("-") else (tok, 1)
                if name not in gens:
                    raise UnknownGenerator(f"line {lineno}: unknown generator {name!r}")
                letters.append((name, s))
    if not seen_word:
        raise ParseError("word file has no 'word' line")
    return TwistWord(T, gens, letters)


def load_word(path, T, surface_name=None) -> TwistWord:
    with open(path) as fh:
        text = fh.read()
    return parse_word_file(text, T, surface_name, os.path.dirname(os.path.abspath(path)))


def curve_text(c, surface_name: str) -> str:
    """A curve file body in coords form (normal curves only)."""
    from .curves import corner_counts
    lines = [f"curve {c.name or 'c'} on {surface_name} kind {c.kind}"]
    for t, row in corner_counts(c).items():
        lines.append(f"coords {t} {row[0]} {row[1]} {row[2]}")
    return "\n".join(lines) + "\n"
