"""Run diagnostics: invariants, errors against a traced reference, area defect.

The reference solution for pure advection follows characteristics backwards
with a high-order adaptive integrator and evaluates the analytic initial data
at the feet, so it is accurate to the integrator tolerance, not the grid.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import minimize_scalar

from .errors import NumericalError
from .grid import ScalarField, sample
from .kernels import areas_at_levels

CSV_HEADER = "t,energy,C1,C2,C3,C4,min,max,area_defect,l2_err"

_FORMAT = "%.17g"


@dataclass(frozen=True)
class DiagnosticsRecord:
    """One diagnostics row at time t; l2_err and area_defect are NaN when unavailable."""

    t: float
    energy: float
    c1: float
    c2: float
    c3: float
    c4: float
    vmin: float
    vmax: float
    area_defect: float
    l2_err: float

    def csv_row(self):
        vals = (self.t, self.energy, self.c1, self.c2, self.c3, self.c4,
                self.vmin, self.vmax, self.area_defect, self.l2_err)
        return ",".join("nan" if math.isnan(v) else _FORMAT % v for v in vals)


def casimirs(omega):
    """Grid sums h^2 * sum(omega^n) for n = 1..4."""
    w = omega.values
    h2 = omega.grid.h ** 2
    return tuple(float(h2 * np.sum(w ** n)) for n in range(1, 5))


def energy(omega, psi):
    """Interaction energy 0.5 * h^2 * sum(psi * omega)."""
    return float(0.5 * omega.grid.h ** 2 * np.sum(psi.values * omega.values))


def l2_norm(omega):
    return float(np.sqrt(omega.grid.h ** 2 * np.sum(omega.values ** 2)))


def l2_difference(a, b):
    if a.grid != b.grid:
        raise ValueError("fields live on different grids")
    return float(np.sqrt(a.grid.h ** 2 * np.sum((a.values - b.values) ** 2)))


def linf_difference(a, b):
    if a.grid != b.grid:
        raise ValueError("fields live on different grids")
    return float(np.max(np.abs(a.values - b.values)))


def area_defect(a0, omega):
    """sup over the reference table's levels of |A0(c) - A_omega(c)|.

    The current field's areas are computed fresh at the stored knot levels,
    so the comparison carries no interpolation error on either side when a0
    was tabulated without extrapolation.
    """
    cur = areas_at_levels(omega.values, omega.grid.h, np.asarray(a0.levels))
    return float(np.max(np.abs(np.asarray(a0.areas) - cur)))


def table_defect(a0, a_t):
    """sup over the union of knots of |a0(c) - a_t(c)|."""
    knots = np.union1d(a0.levels, a_t.levels)
    va = np.atleast_1d(a0.evaluate(knots))
    vb = np.atleast_1d(a_t.evaluate(knots))
    return float(np.max(np.abs(va - vb)))


def peak_prominences(values):
    """Topographic prominence of every interior local maximum.

    Floods the terrain from the top with a union-find; when two basins meet,
    the lower peak's prominence is its height above the meeting saddle.
    Returns a list of (value, i, j, prominence) sorted by descending value.
    The global maximum never merges into higher ground and is omitted.
    """
    v = np.asarray(values, dtype=float)
    nx, ny = v.shape
    flat = v.ravel()
    order = np.argsort(flat, kind="stable")[::-1]
    parent = np.arange(flat.size)
    comp_max = flat.copy()
    seen = np.zeros(flat.size, dtype=bool)
    died_at = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for idx in order:
        i, j = divmod(int(idx), ny)
        seen[idx] = True
        for di in (-1, 0, 1):
            for dj in (-1, 0, 1):
                if di == 0 and dj == 0:
                    continue
                ii, jj = i + di, j + dj
                if 0 <= ii < nx and 0 <= jj < ny and seen[ii * ny + jj]:
                    ra, rb = find(int(idx)), find(ii * ny + jj)
                    if ra == rb:
                        continue
                    lo, hi = (ra, rb) if comp_max[ra] <= comp_max[rb] else (rb, ra)
                    died_at[lo] = comp_max[lo] - flat[idx]
                    parent[lo] = hi
                    comp_max[hi] = max(comp_max[ra], comp_max[rb])

    out = []
    for idx, prom in died_at.items():
        i, j = divmod(idx, ny)
        if not (0 < i < nx - 1 and 0 < j < ny - 1):
            continue
        nbrs = v[i - 1:i + 2, j - 1:j + 2]
        if v[i, j] >= nbrs.max() and v[i, j] > nbrs.min():
            out.append((float(v[i, j]), i, j, float(prom)))
    out.sort(key=lambda r: -r[0])
    return out


def secondary_maximum(field, isolation=1.0 / 3.0):
    """Height of the tallest isolated interior local maximum below the peak.

    A candidate is an interior vertex with no higher 8-neighbor and at least
    one strictly lower; it counts only when its topographic prominence is at
    least `isolation` times its value.  Ripples and oscillations riding on
    the flank of a larger feature have small prominence and are excluded, so
    a well-resolved single-vortex field reports 0.0 while a detached ghost
    maximum reports its full height.  Only positive maxima are considered.
    """
    best = 0.0
    for value, _, _, prom in peak_prominences(field.values):
        if value > 0.0 and prom >= isolation * value:
            best = max(best, value)
    return best


def reference_liouville(omega0, psi, grid, t, rtol=1e-10, atol=1e-12):
    """Trace characteristics backwards from the vertices and sample omega0 there."""
    if not hasattr(psi, "velocity"):
        raise ValueError("reference tracing needs a stream function with an analytic velocity")
    if t == 0.0:
        return sample(grid, omega0)
    x, y = grid.meshgrid()
    n = x.size
    z0 = np.concatenate([x.ravel(), y.ravel()])

    def rhs(s, z):
        u, v = psi.velocity(z[:n], z[n:], t - s)
        return np.concatenate([-u, -v])

    sol = solve_ivp(rhs, (0.0, t), z0, method="DOP853", rtol=rtol, atol=atol)
    if not sol.success:
        raise NumericalError(f"characteristic tracing failed: {sol.message}")
    xb = sol.y[:n, -1]
    yb = sol.y[n:, -1]
    vals = omega0.value(xb, yb)
    return ScalarField(grid, np.asarray(vals).reshape(grid.shape))


def peak_return_time(psi, start=(0.75, 0.5), window=(0.6, 0.9), rtol=1e-10, atol=1e-12):
    """Time in `window` at which the particle from `start` comes back closest.

    Returns (t_star, distance); with the sine stream the orbit through
    (0.75, 0.5) closes after roughly three quarters of a time unit.
    """
    if not hasattr(psi, "velocity"):
        raise ValueError("particle tracing needs a stream function with an analytic velocity")

    def rhs(s, z):
        u, v = psi.velocity(z[0], z[1], s)
        return [float(u), float(v)]

    sol = solve_ivp(rhs, (0.0, window[1]), list(start), method="DOP853",
                    rtol=rtol, atol=atol, dense_output=True)
    if not sol.success:
        raise NumericalError(f"particle tracing failed: {sol.message}")

    def dist(s):
        z = sol.sol(s)
        return math.hypot(z[0] - start[0], z[1] - start[1])

    res = minimize_scalar(dist, bounds=window, method="bounded",
                          options={"xatol": 1e-12})
    return float(res.x), float(res.fun)


def record(omega, psi, t, a0=None, reference=None):
    """Assemble one diagnostics row from the state at time t.

    psi is the stream-function field used for the energy sum; a0 (initial
    area table) enables the area defect, reference (a ScalarField) the L2
    error.  Missing pieces become NaN.
    """
    c1, c2, c3, c4 = casimirs(omega)
    defect = math.nan
    if a0 is not None:
        defect = area_defect(a0, omega)
    err = math.nan
    if reference is not None:
        err = l2_difference(omega, reference)
    return DiagnosticsRecord(
        t=float(t),
        energy=energy(omega, psi),
        c1=c1, c2=c2, c3=c3, c4=c4,
        vmin=omega.min(),
        vmax=omega.max(),
        area_defect=defect,
        l2_err=err,
    )


def write_csv(records, path):
    lines = [CSV_HEADER] + [r.csv_row() for r in records]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
