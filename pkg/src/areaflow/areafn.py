"""Contour-area function of a gridded scalar: tabulation, interpolation, inversion.

A field is read as the piecewise-linear interpolant on the center-split
triangulation (each cell cut into four triangles meeting at the cell center,
whose value is the mean of the corners).  A(c) is the area of the super-level
set {interpolant >= c}; it is nonincreasing, equals the domain area at the
field minimum, and is exactly invariant under relabellings that permute the
vertex values monotonically.

Two independent routes compute A(c): a fast signed-segment accumulation in
the kernels package, and a plain per-triangle half-plane clipping oracle kept
here for verification.  They agree to round-off and must stay separate.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels

_FORMAT = "%.17g"


def polygon_area(vertices):
    """Signed shoelace area, positive for counterclockwise vertex order."""
    pts = np.asarray(vertices, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 3:
        raise ValueError("polygon needs at least 3 vertices as an (n, 2) array")
    x = pts[:, 0]
    y = pts[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - y * np.roll(x, -1)))


def _cell_triangles(values, h, ci, cj):
    x0 = ci * h
    y0 = cj * h
    x1 = x0 + h
    y1 = y0 + h
    xc = x0 + 0.5 * h
    yc = y0 + 0.5 * h
    v00 = values[ci, cj]
    v10 = values[ci + 1, cj]
    v11 = values[ci + 1, cj + 1]
    v01 = values[ci, cj + 1]
    vc = 0.25 * (v00 + v10 + v11 + v01)
    center = (xc, yc, vc)
    corners = ((x0, y0, v00), (x1, y0, v10), (x1, y1, v11), (x0, y1, v01))
    for k in range(4):
        yield (corners[k], corners[(k + 1) % 4], center)


def _clip_to_level(tri, c):
    # Sutherland-Hodgman against the half-plane {value >= c}; vertices on the
    # cut (value == c) are kept, matching the closed super-level set.
    out = []
    for k in range(3):
        x1, y1, v1 = tri[k]
        x2, y2, v2 = tri[(k + 1) % 3]
        if v1 >= c:
            out.append((x1, y1))
        if (v1 >= c) != (v2 >= c):
            t = (c - v1) / (v2 - v1)
            out.append((x1 + t * (x2 - x1), y1 + t * (y2 - y1)))
    return out


def area_at_level_clipped(field, level):
    """Oracle A(c): clip every triangle to {value >= c} and sum shoelace areas."""
    values = field.values
    h = field.grid.h
    c = float(level)
    total = 0.0
    for ci in range(field.grid.nx - 1):
        for cj in range(field.grid.ny - 1):
            for tri in _cell_triangles(values, h, ci, cj):
                poly = _clip_to_level(tri, c)
                if len(poly) >= 3:
                    total += polygon_area(poly)
    return total


def area_at_level(field, level):
    """Fast-path A(c) via the kernel's signed contour accumulation."""
    levels = np.array([float(level)], dtype=np.float64)
    return float(kernels.areas_at_levels(field.values, field.grid.h, levels)[0])


def _monotone_slopes(x, y):
    # Fritsch-Carlson shape-preserving slopes: weighted harmonic mean inside,
    # zero at local extrema of the data, one-sided rule at the ends.
    n = x.shape[0]
    d = np.zeros(n)
    if n == 1:
        return d
    hseg = np.diff(x)
    delta = np.diff(y) / hseg
    if n == 2:
        d[:] = delta[0]
        return d
    d0 = delta[:-1]
    d1 = delta[1:]
    w1 = 2.0 * hseg[1:] + hseg[:-1]
    w2 = hseg[1:] + 2.0 * hseg[:-1]
    mask = d0 * d1 > 0.0
    denom = np.ones_like(d0)
    np.divide(w1, d0, out=denom, where=mask)
    denom2 = np.zeros_like(d0)
    np.divide(w2, d1, out=denom2, where=mask)
    interior = np.zeros_like(d0)
    np.divide(w1 + w2, denom + denom2, out=interior, where=mask)
    d[1:-1] = interior
    d[0] = _edge_slope(hseg[0], hseg[1], delta[0], delta[1])
    d[-1] = _edge_slope(hseg[-1], hseg[-2], delta[-1], delta[-2])
    return d


def _edge_slope(h0, h1, del0, del1):
    d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1)
    if d * del0 <= 0.0:
        return 0.0
    if del0 * del1 < 0.0 and abs(d) > 3.0 * abs(del0):
        return 3.0 * del0
    return d


@dataclass(frozen=True)
class AreaFunction:
    """Tabulated A(c) with a monotone piecewise-cubic interpolant.

    levels are strictly increasing, areas nonincreasing; evaluation clamps to
    the end areas outside the tabulated range and inversion clamps to the end
    levels outside [areas[-1], areas[0]].
    """

    levels: np.ndarray
    areas: np.ndarray
    slopes: np.ndarray

    @classmethod
    def from_samples(cls, levels, areas):
        levels = np.ascontiguousarray(levels, dtype=np.float64)
        areas = np.ascontiguousarray(areas, dtype=np.float64)
        if levels.ndim != 1 or levels.shape != areas.shape:
            raise ValueError("levels and areas must be matching 1D arrays")
        if levels.shape[0] == 0:
            raise ValueError("area table needs at least one sample")
        if not np.all(np.isfinite(levels)) or not np.all(np.isfinite(areas)):
            raise ValueError("area table samples must be finite")
        if levels.shape[0] > 1 and not np.all(np.diff(levels) > 0.0):
            raise ValueError("levels must be strictly increasing")
        # snap round-off wiggles; A is nonincreasing by construction
        areas = np.minimum.accumulate(areas)
        slopes = _monotone_slopes(levels, areas)
        for arr in (levels, areas, slopes):
            arr.setflags(write=False)
        return cls(levels, areas, slopes)

    @property
    def total(self):
        return float(self.areas[0])

    def evaluate(self, c):
        q = np.ascontiguousarray(np.atleast_1d(c), dtype=np.float64)
        out = kernels.hermite_eval(self.levels, self.areas, self.slopes, q)
        return float(out[0]) if np.isscalar(c) or np.ndim(c) == 0 else out

    def invert(self, a):
        q = np.ascontiguousarray(np.atleast_1d(a), dtype=np.float64)
        out = kernels.hermite_invert(self.levels, self.areas, self.slopes, q)
        return float(out[0]) if np.isscalar(a) or np.ndim(a) == 0 else out

    def to_csv(self, path):
        lines = ["c,area"]
        for c, a in zip(self.levels, self.areas):
            lines.append(f"{_FORMAT % c},{_FORMAT % a}")
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")

    @classmethod
    def from_csv(cls, path):
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        if data.shape[1] != 2:
            raise ValueError(f"{path}: expected two columns c,area")
        return cls.from_samples(data[:, 0], data[:, 1])


def tabulate(field, budget=None, min_spacing=None):
    """Adaptively tabulate A(c) over the value range of the field.

    Starting from the endpoints, intervals whose area jump exceeds
    total_area/budget are bisected (all pending midpoints evaluated in one
    kernel call per round) until every jump is resolved or the level spacing
    reaches min_spacing times the value span (default 1e-12), which caps
    refinement at genuine discontinuities of A such as plateaus of the field.
    A coarser min_spacing deliberately leaves steep-but-narrow stretches of A
    as single jump intervals for the interpolant to bridge.
    """
    values = field.values
    h = field.grid.h
    if budget is None:
        budget = 4 * max(field.grid.nx, field.grid.ny)
    budget = int(budget)
    if budget < 8:
        raise ValueError(f"area table budget must be at least 8, got {budget}")
    cmin = float(values.min())
    cmax = float(values.max())
    total = field.grid.area
    if cmax == cmin:
        return AreaFunction.from_samples(np.array([cmin]), np.array([total]))
    span = cmax - cmin
    minsep = (1e-12 if min_spacing is None else float(min_spacing)) * span
    thresh = total / budget
    cap = 50 * budget
    cs = [cmin, cmax]
    ars = list(kernels.areas_at_levels(values, h, np.array([cmin, cmax])))
    while len(cs) < cap:
        mids = []
        spots = []
        for k in range(len(cs) - 1):
            if ars[k] - ars[k + 1] > thresh and cs[k + 1] - cs[k] > 2.0 * minsep:
                m = 0.5 * (cs[k] + cs[k + 1])
                if cs[k] < m < cs[k + 1]:
                    mids.append(m)
                    spots.append(k)
        if not mids:
            break
        new_areas = kernels.areas_at_levels(values, h, np.array(mids))
        for off, (k, m, a) in enumerate(zip(spots, mids, new_areas)):
            cs.insert(k + 1 + off, m)
            ars.insert(k + 1 + off, a)
    return AreaFunction.from_samples(np.array(cs), np.array(ars))


def _pav_nonincreasing(y):
    # pool-adjacent-violators on the negated sequence, equal weights
    means = []
    counts = []
    for v in np.asarray(y, dtype=np.float64):
        means.append(-v)
        counts.append(1)
        while len(means) > 1 and means[-2] > means[-1]:
            m2, c2 = means.pop(), counts.pop()
            m1, c1 = means.pop(), counts.pop()
            means.append((m1 * c1 + m2 * c2) / (c1 + c2))
            counts.append(c1 + c2)
    return -np.repeat(means, counts)


def richardson(fine, coarse):
    """Richardson-extrapolate two area tables of the same field at spacings h and 2h.

    Combines (4*A_h - A_2h)/3 on the union of the knots, restores monotonicity
    with a pool-adjacent-violators pass and clips to [0, total area].  The two
    tables must cover matching level ranges; a mismatch beyond half the span
    is rejected as inconsistent input.
    """
    span = max(fine.levels[-1] - fine.levels[0], coarse.levels[-1] - coarse.levels[0])
    gap = max(abs(fine.levels[0] - coarse.levels[0]), abs(fine.levels[-1] - coarse.levels[-1]))
    # restriction can flatten narrow extrema, so ranges differ by O(h) per end;
    # half the span still separates that from tables of unrelated fields
    if span > 0.0 and gap > 0.5 * span:
        raise ValueError("area tables cover mismatched level ranges; same field at h and 2h expected")
    knots = np.union1d(fine.levels, coarse.levels)
    knots = knots[(knots >= fine.levels[0]) & (knots <= fine.levels[-1])]
    a_fine = np.atleast_1d(fine.evaluate(knots))
    a_coarse = np.atleast_1d(coarse.evaluate(knots))
    ext = (4.0 * a_fine - a_coarse) / 3.0
    ext = _pav_nonincreasing(ext)
    ext = np.clip(ext, 0.0, fine.total)
    return AreaFunction.from_samples(knots, ext)


def interpolate_pl(field, x, y):
    """Evaluate the center-split piecewise-linear interpolant at points.

    Coordinates are clamped to the domain; on triangle edges any adjacent
    triangle gives the same value.
    """
    g = field.grid
    values = field.values
    h = g.h
    ex, ey = g.extent
    x = np.clip(np.asarray(x, dtype=np.float64), 0.0, ex)
    y = np.clip(np.asarray(y, dtype=np.float64), 0.0, ey)
    ci = np.clip((x // h).astype(np.intp), 0, g.nx - 2)
    cj = np.clip((y // h).astype(np.intp), 0, g.ny - 2)
    a = x / h - ci
    b = y / h - cj
    v00 = values[ci, cj]
    v10 = values[ci + 1, cj]
    v11 = values[ci + 1, cj + 1]
    v01 = values[ci, cj + 1]
    vc = 0.25 * (v00 + v10 + v11 + v01)
    a, b = np.broadcast_arrays(a, b)
    # bottom/right/top/left triangle of the cell, picked by the diagonals;
    # linear forms alpha + beta*a + gamma*b fitted per triangle
    bottom = (b <= a) & (b <= 1.0 - a)
    right = (a >= b) & (a >= 1.0 - b)
    top = (b >= a) & (b >= 1.0 - a)
    bottom_val = v00 + (v10 - v00) * a + (2.0 * vc - v00 - v10) * b
    right_val = v10 + (v11 - v10) * b + (2.0 * vc - v10 - v11) * (1.0 - a)
    top_val = v01 + (v11 - v01) * a + (2.0 * vc - v01 - v11) * (1.0 - b)
    left_val = v00 + (v01 - v00) * b + (2.0 * vc - v00 - v01) * a
    out = np.where(bottom, bottom_val, np.where(right, right_val, np.where(top, top_val, left_val)))
    return out if out.ndim else float(out)
