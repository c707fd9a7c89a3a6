"""Smooth relabelling projection through the contour-area function.

Each vertex value omega_i is remapped to the label whose initial contour
encloses the same area as the current contour through omega_i:

    omega_new_i = A0^{-1}( A_t(omega_i) )

with A0 the area function of the initial field, frozen once, and A_t the
area function of the current field, tabulated at every projection.  The map
is monotone, keeps values inside the initial range, and is near-idempotent
up to tabulation error.
"""

import numpy as np

from . import areafn
from .grid import ScalarField, make_grid


def coarse_companion(field):
    """Restrict a field to the half-resolution grid for Richardson pairing.

    Odd vertex counts (2m+1) inject the even-index vertices; otherwise the
    piecewise-linear interpolant is resampled at the coarse vertices.
    """
    g = field.grid
    ncx = (g.nx + 1) // 2 if g.nx % 2 == 1 else (g.nx - 1) // 2 + 1
    ncy = (g.ny + 1) // 2 if g.ny % 2 == 1 else (g.ny - 1) // 2 + 1
    coarse = make_grid(ncx, ncy, boundary=g.boundary)
    if g.nx % 2 == 1 and g.ny % 2 == 1:
        vals = field.values[::2, ::2]
        return ScalarField(coarse, vals)
    x, y = coarse.meshgrid()
    return ScalarField(coarse, areafn.interpolate_pl(field, x, y))


def _tabulate_pair(field, budget, use_richardson, coarse=None):
    fine = areafn.tabulate(field, budget=budget)
    if not use_richardson:
        return fine
    if coarse is None:
        coarse = coarse_companion(field)
    coarse_table = areafn.tabulate(coarse, budget=budget)
    return areafn.richardson(fine, coarse_table)


def build_initial_table(omega0, budget=None, use_richardson=True, coarse=None):
    """Tabulate the initial area function A0, optionally Richardson-corrected.

    A caller holding the analytic initial data can pass its restriction to
    the coarse grid as `coarse`; otherwise the companion is restricted from
    the field itself.
    """
    return _tabulate_pair(omega0, budget, use_richardson, coarse=coarse)


def relabel_project(omega, a0, budget=None, use_richardson=True):
    """Remap values through A0^{-1}(A_t(.)); boundary vertices keep their values."""
    a_t = _tabulate_pair(omega, budget, use_richardson)
    flat = omega.values.ravel()
    remapped = a0.invert(a_t.evaluate(flat))
    out = np.asarray(remapped).reshape(omega.values.shape).copy()
    # the advected boundary ring is Dirichlet data, not a transported label
    out[0, :] = omega.values[0, :]
    out[-1, :] = omega.values[-1, :]
    out[:, 0] = omega.values[:, 0]
    out[:, -1] = omega.values[:, -1]
    return omega.with_values(out)
