"""Grid-sampled isotopies of the circle and the Alexander trick on the disk.

Nothing here is assumed smooth: every claimed property of a constructed
family is measured on its grid and reported as a certification flag.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import BadEps, NotCollarProduct, NotEquivariant, NotMonotone

TOL = 1e-9


def _flat(s):
    out = np.zeros_like(s, dtype=float)
    pos = s > 0
    out[pos] = np.exp(-1.0 / s[pos])
    return out


def bump_function(eps: float):
    """The smooth step rho with rho = 0 on [0, eps] and rho = 1 on [1 - eps, 1]."""
    if not 0 < eps < 0.5:
        raise BadEps(f"eps must lie in (0, 1/2), got {eps}")

    def rho(t):
        t = np.asarray(t, dtype=float)
        s = (t - eps) / (1 - 2 * eps)
        a, b = _flat(s), _flat(1 - s)
        return a / (a + b)
    return rho


def bump(eps: float, n: int = 1025):
    """Samples ``(t, rho(t))`` on a uniform grid of [0, 1]."""
    t = np.linspace(0.0, 1.0, n)
    return t, bump_function(eps)(t)


@dataclass
class IsotopyGrid:
    axes: dict                    # axis name -> 1-d sample array
    values: np.ndarray            # indexed by the axes, in order
    certified: dict = field(default_factory=dict)
    metrics: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.certified.values())

    def summary(self) -> dict:
        return {"axes": {k: len(v) for k, v in self.axes.items()},
                "certified": {k: bool(v) for k, v in self.certified.items()},
                "metrics": {k: float(v) for k, v in self.metrics.items()},
                "ok": self.ok}

    def write_json(self, path):
        with open(path, "w") as fh:
            json.dump(self.summary(), fh, indent=2)

    def write_csv(self, path, max_points: int | None = None):
        """One row per grid point: the axis values, then the value (complex
        values as two columns).  ``max_points`` subsamples every axis."""
        names = list(self.axes)
        cplx = np.iscomplexobj(self.values)
        idx = []
        for k in names:
            n = len(self.axes[k])
            step = 1 if not max_points else max(1, -(-n // max_points))
            idx.append(np.arange(0, n, step))
        grids = np.meshgrid(*[self.axes[k][i] for k, i in zip(names, idx)], indexing="ij")
        vals = self.values[np.ix_(*idx)]
        cols = [g.ravel() for g in grids]
        v = vals.ravel()
        cols += [v.real, v.imag] if cplx else [v]
        header = ",".join(names + (["re", "im"] if cplx else ["value"]))
        np.savetxt(path, np.column_stack(cols), delimiter=",", header=header,
                   comments="", fmt="%.12g")


# -- circle -----------------------------------------------------------------

def circle_isotopy(f_lift, eps: float = 0.1, nx: int = 2048, nt: int = 256) -> IsotopyGrid:
    """The isotopy F(x, t) = (1 - rho(t)) f(x) + rho(t) x from f to the identity.

    ``f_lift`` is a callable lift of a circle diffeomorphism (or its samples
    on ``x = k / nx``).  Slices equal f for t <= eps and the identity for
    t >= 1 - eps.
    """
    rho = bump_function(eps)
    x = np.arange(nx) / nx
    if callable(f_lift):
        fx = np.asarray(f_lift(x), dtype=float)
        shift = np.asarray(f_lift(x + 1.0), dtype=float) - fx - 1.0
        if np.max(np.abs(shift)) > TOL:
            raise NotEquivariant(f"f(x+1) - f(x) - 1 reaches {np.max(np.abs(shift)):.3g}")
    else:
        fx = np.asarray(f_lift, dtype=float)
        if fx.shape != (nx,):
            raise ValueError(f"expected {nx} samples, got {fx.shape}")
    step = np.diff(np.append(fx, fx[0] + 1.0))
    if np.min(step) <= 0:
        raise NotMonotone("the lift is not strictly increasing")
    t = np.linspace(0.0, 1.0, nt)
    r = rho(t)[:, None]
    F = (1 - r) * fx[None, :] + r * x[None, :]
    diffs = np.diff(np.concatenate([F, F[:, :1] + 1.0], axis=1), axis=1)
    lo, hi = t <= eps, t >= 1 - eps
    start_err = float(np.max(np.abs(F[lo] - fx[None, :]))) if lo.any() else 0.0
    end_err = float(np.max(np.abs(F[hi] - x[None, :]))) if hi.any() else 0.0
    g = IsotopyGrid({"t": t, "x": x}, F)
    g.metrics.update(min_forward_difference=float(diffs.min()),
                     start_error=start_err, end_error=end_err)
    g.certified.update(monotone=bool(diffs.min() > 0),
                       starts_at_f=start_err <= TOL,
                       ends_at_identity=end_err <= TOL)
    return g


# -- disk -------------------------------------------------------------------

def interpolated_rotation(theta0: float, eps: float = 0.1, inner: float = 0.5):
    """Rotation by ``theta0`` on |z| <= inner, tapering smoothly to the
    identity at |z| = 1 - eps; the identity beyond."""
    step = bump_function(0.0001)

    def g(z):
        z = np.asarray(z, dtype=complex)
        r = np.abs(z)
        s = np.clip((r - inner) / (1 - eps - inner), 0.0, 1.0)
        ang = theta0 * (1 - step(s))
        return z * np.exp(1j * ang)
    return g


def _polar(nr, ntheta, eps):
    r = np.linspace(0.0, 1.0 + eps, nr)
    th = np.arange(ntheta) * (2 * np.pi / ntheta)
    return r, th, r[:, None] * np.exp(1j * th[None, :])


def _check_collar(gz, z, r, eps):
    band = r > 1 - eps
    if not band.any():
        return
    w, zz = gz[band], z[band]
    if np.max(np.abs(np.abs(w) - np.abs(zz))) > 1e-7:
        raise NotCollarProduct("g changes the radius on the collar")
    turn = np.angle(w / np.where(zz == 0, 1, zz))
    if np.max(np.ptp(turn, axis=0)) > 1e-7:
        raise NotCollarProduct("g on the collar depends on the radius")


def alexander_trick(g, eps: float = 0.1, nr: int = 129, ntheta: int = 128,
                    nx: int = 65) -> IsotopyGrid:
    """The cone homotopy psi_x from g to h (h = identity on |z| <= 1, g outside).

    psi_x(z) = (1 - x) g(z / (1 - x)) inside the cone |z| <= 1 - x, z on the
    rest of the unit disk and g(z) for |z| > 1.  ``g`` is a callable on
    complex arrays on the disk of radius 1 + eps.
    """
    if not 0 < eps < 0.5:
        raise BadEps(f"eps must lie in (0, 1/2), got {eps}")
    r, th, z = _polar(nr, ntheta, eps)
    gz = np.asarray(g(z), dtype=complex)
    _check_collar(gz, z, r, eps)
    xs = np.linspace(0.0, 1.0, nx)
    R = r[:, None]
    psi = np.empty((nx,) + z.shape, dtype=complex)
    inside = np.empty((nx,) + z.shape, dtype=bool)
    for k, x in enumerate(xs):
        cone = np.broadcast_to(R <= 1 - x, z.shape)
        if x < 1:
            val = (1 - x) * np.asarray(g(z / (1 - x)), dtype=complex)
        else:
            val = np.zeros_like(z)
        psi[k] = np.where(cone, val, np.where(R <= 1, z, gz))
        inside[k] = cone
    disk = np.broadcast_to(R <= 1, z.shape)
    collar = np.broadcast_to(R > 1 - eps, z.shape)
    e0 = float(np.max(np.abs(psi[0] - gz)))
    e1_in = float(np.max(np.abs(psi[-1] - z)[disk]))
    e1_out = float(np.max(np.abs(psi[-1] - gz)[~disk])) if (~disk).any() else 0.0
    e_collar = float(np.max(np.abs(psi - psi[0][None])[:, collar]))
    defect = _seam_defect(psi, inside)
    h = max(r[1] - r[0], (th[1] - th[0]) * r[-1], xs[1] - xs[0])
    lip = _lipschitz(gz, r, th)
    G = IsotopyGrid({"x": xs, "r": r, "theta": th}, psi)
    G.metrics.update(psi0_error=e0, psi1_inside_error=e1_in, psi1_outside_error=e1_out,
                     collar_variation=e_collar, seam_defect=defect, spacing=h,
                     lipschitz=lip)
    G.certified.update(starts_at_g=e0 <= TOL, ends_at_identity_inside=e1_in <= TOL,
                       ends_at_g_outside=e1_out <= TOL, collar_constant=e_collar <= TOL,
                       seam_continuous=defect <= 10 * h * max(lip, 1.0))
    return G


def _seam_defect(psi, inside):
    """Largest jump between grid neighbours on opposite sides of the cone."""
    best = 0.0
    for ax in range(3):
        a = np.take(psi, range(psi.shape[ax] - 1), axis=ax)
        b = np.take(psi, range(1, psi.shape[ax]), axis=ax)
        ia = np.take(inside, range(inside.shape[ax] - 1), axis=ax)
        ib = np.take(inside, range(1, inside.shape[ax]), axis=ax)
        cross = ia != ib
        if cross.any():
            best = max(best, float(np.max(np.abs(a - b)[cross])))
    return best


def _lipschitz(gz, r, th):
    dr = np.abs(np.diff(gz, axis=0)) / (r[1] - r[0])
    rr = np.maximum(r[:, None], r[1])
    dth = np.abs(np.diff(np.concatenate([gz, gz[:, :1]], axis=1), axis=1)) / ((th[1] - th[0]) * rr)
    return float(max(dr.max(), dth.max()))


def refinement_ratios(g, eps: float = 0.1, levels: int = 3, base=(33, 32, 17)) -> list:
    """Seam defects on successively halved grids, and their ratios."""
    nr, nth, nx = base
    defects = []
    for _ in range(levels):
        defects.append(alexander_trick(g, eps, nr, nth, nx).metrics["seam_defect"])
        nr, nth, nx = 2 * nr - 1, 2 * nth, 2 * nx - 1
    return [b / a for a, b in zip(defects, defects[1:])], defects
