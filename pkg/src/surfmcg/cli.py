"""Command-line entry point: ``surfmcg <verb> ...``.

Every verb prints one JSON object.  Exit codes: 0 success (or a positive
verdict for predicates), 1 negative verdict, 2 input error with
``{"error": code, "detail": text}``.
"""
from __future__ import annotations

import json
import os
import sys

import click
import numpy as np

from . import curves as cv
from . import formats, homology, isotopy, mcg, pi1
from .errors import SurfError


def _emit(obj, code=0):
    click.echo(json.dumps(obj))
    sys.exit(code)


def _fail(code, detail):
    _emit({"error": code, "detail": detail}, 2)


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except SurfError as exc:
            _fail(exc.code, exc.detail or str(exc))
        except FileNotFoundError as exc:
            _fail("FileNotFound", str(exc))
        except (OSError, UnicodeDecodeError) as exc:
            _fail("IOError", str(exc))
        except click.ClickException:
            raise
        except (ValueError, RuntimeError) as exc:
            _fail(type(exc).__name__, str(exc))


@click.group(cls=_Group)
@click.option("--tri", type=click.Choice(["split", "bary"]), default="split",
              show_default=True, help="Triangulation that curve files refer to.")
@click.pass_context
def main(ctx, tri):
    """Combinatorial surfaces, curves and mapping classes."""
    ctx.obj = {"tri": tri}


def _surface(ctx, path):
    S = formats.load_surface(path)
    return S, formats.default_triangulation(S, ctx.obj["tri"])


def _curve(T, S, path):
    return formats.load_curve(path, T, S.name)


@main.command()
@click.argument("srf")
def classify(srf):
    """Orientability, genus, boundary count, Euler characteristic."""
    S = formats.load_surface(srf)
    _emit(S.classify().to_dict())


@main.command("homology")
@click.argument("srf")
@click.option("--relative", is_flag=True, help="Homology relative to the boundary.")
def homology_cmd(srf, relative):
    """Z/2 Betti numbers."""
    S = formats.load_surface(srf)
    b = homology.homology_ranks(S, relative=relative)
    _emit({"relative": relative, "betti": list(b), "euler": S.euler_characteristic()})


@main.command()
@click.argument("query", type=click.Choice(["class", "separating", "trivial", "sidedness"]))
@click.argument("srf")
@click.argument("crv")
@click.pass_context
def curve(ctx, query, srf, crv):
    """Homology class, separating test, null-homotopy test or sidedness."""
    S, T = _surface(ctx, srf)
    c = _curve(T, S, crv)
    if query == "class":
        _emit(homology.class_of_curve(T, c).to_dict())
    if query == "separating":
        by_cut = cv.is_separating_by_cut(T, c)
        by_class = homology.is_separating_by_class(T, c)
        _emit({"separating": by_cut, "by_cut": by_cut, "by_class": by_class},
              0 if by_cut else 1)
    if query == "trivial":
        t = cv.is_nullhomotopic(T, c)
        _emit({"trivial": t}, 0 if t else 1)
    _emit({"sidedness": cv.sidedness(T, c)})


@main.command()
@click.argument("srf")
@click.argument("crv")
@click.pass_context
def cut(ctx, srf, crv):
    """Pieces of the surface cut open along a curve."""
    S, T = _surface(ctx, srf)
    pieces = cv.cut_along(T, _curve(T, S, crv))
    chi = sum(p.type.euler for p in pieces)
    _emit({"pieces": [p.to_dict() for p in pieces], "euler_change": chi - S.euler_characteristic()})


@main.command()
@click.argument("srf")
@click.argument("crv_a")
@click.argument("crv_b")
@click.pass_context
def intersect(ctx, srf, crv_a, crv_b):
    """Geometric intersection number by bigon removal."""
    S, T = _surface(ctx, srf)
    a, b = _curve(T, S, crv_a), _curve(T, S, crv_b)
    _, i, trace = cv.bigon_reduce(cv.general_position(a, b))
    _emit({"intersection": i, "initial": trace[0], "trace": trace})


@main.command()
@click.argument("srf")
@click.argument("crv_a")
@click.argument("crv_b")
@click.pass_context
def cylinder(ctx, srf, crv_a, crv_b):
    """Whether two disjoint curves cobound an annulus."""
    S, T = _surface(ctx, srf)
    a, b = _curve(T, S, crv_a), _curve(T, S, crv_b)
    bc = cv.bounds_cylinder(T, a, b)
    _emit({"bounds_cylinder": bc, "isotopic": cv.are_isotopic(T, a, b)}, 0 if bc else 1)


@main.command()
@click.argument("srf")
@click.argument("word")
@click.argument("crv")
@click.pass_context
def twist(ctx, srf, word, crv):
    """Image of a curve under a twist word."""
    S, T = _surface(ctx, srf)
    w = formats.load_word(word, T, S.name)
    img = mcg.apply_word(w, _curve(T, S, crv))
    cls = homology.class_of_curve(T, img)
    _emit({"word": str(w), "curve": img.to_dict(), "class": list(cls.coords)})


@main.command("mcg-trivial")
@click.argument("srf")
@click.argument("word")
@click.pass_context
def mcg_trivial(ctx, srf, word):
    """Decide whether a twist word is the trivial mapping class."""
    S, T = _surface(ctx, srf)
    w = formats.load_word(word, T, S.name)
    report = mcg.verify_alignment(w)
    trivial = mcg.is_trivial(w)
    out = {"trivial": trivial, "word": str(w), "alignment": report}
    if S.classify().boundary == 0:
        H = homology.h1_action(T, w)
        out["h1_identity"] = bool((H == np.eye(len(H), dtype=H.dtype)).all())
    _emit(out, 0 if trivial else 1)


@main.command()
@click.argument("srf_f")
@click.argument("srf_g")
@click.argument("mapfile")
def peripheral(srf_f, srf_g, mapfile):
    """Check that an endomorphism of free groups sends boundary words to
    conjugates of boundary words (powers reported as n)."""
    PF = pi1.presentation(formats.load_surface(srf_f))
    PG = pi1.presentation(formats.load_surface(srf_g))
    with open(mapfile) as fh:
        e = pi1.parse_endomorphism(fh.read(), PF, PG)
    rep = pi1.check_peripheral(PF, PG, e)
    _emit(rep, 0 if rep["pass"] else 1)


def _grid(text, default):
    if text is None:
        return default
    try:
        return tuple(int(x) for x in text.lower().split("x"))
    except ValueError:
        raise click.BadParameter(f"grid must look like 2048x256, got {text!r}") from None


@main.command("isotopy")
@click.argument("kind", type=click.Choice(["circle", "disk"]))
@click.option("--eps", type=float, default=0.1, show_default=True)
@click.option("--grid", default=None, help="circle: NXxNT (2048x256); disk: NRxNTHETAxNX.")
@click.option("--amp", type=float, default=0.04, show_default=True,
              help="circle: f(x) = x + shift + amp sin(2 pi x).")
@click.option("--shift", type=float, default=0.0, show_default=True)
@click.option("--theta", type=float, default=1.0, show_default=True,
              help="disk: rotation angle of the interpolated rotation.")
@click.option("--plot-data", "plot_dir", default=None,
              help="Directory for grid CSV and certification JSON.")
def isotopy_cmd(kind, eps, grid, amp, shift, theta, plot_dir):
    """Sampled isotopy of the circle or Alexander trick on the disk."""
    if kind == "circle":
        nx, nt = _grid(grid, (2048, 256))
        G = isotopy.circle_isotopy(lambda x: x + shift + amp * np.sin(2 * np.pi * x), eps, nx, nt)
    else:
        nr, nth, nx = _grid(grid, (129, 128, 65))
        G = isotopy.alexander_trick(isotopy.interpolated_rotation(theta, eps), eps, nr, nth, nx)
    out = G.summary()
    if plot_dir:
        os.makedirs(plot_dir, exist_ok=True)
        G.write_csv(os.path.join(plot_dir, f"{kind}.csv"), max_points=64)
        G.write_json(os.path.join(plot_dir, f"{kind}.json"))
        out["plot_data"] = plot_dir
    _emit(out, 0 if G.ok else 1)


if __name__ == "__main__":
    main()
