"""Pure-numpy implementations of the hot kernels.

Semantics here are the contract; the numba module mirrors them loop-for-loop.
All functions take bare float64 arrays, not field objects.
"""

import numpy as np


def arakawa_jacobian(omega, psi, h):
    """Nine-point conservative Jacobian J(omega, psi), zero on the boundary ring.

    Average of the three second-order forms; discretely conserves sum(J),
    sum(omega*J) and sum(psi*J) over the grid when both fields vanish on the
    boundary.
    """
    o, p = omega, psi
    out = np.zeros_like(o)
    C = (slice(1, -1), slice(1, -1))
    E = (slice(2, None), slice(1, -1))
    W = (slice(0, -2), slice(1, -1))
    N = (slice(1, -1), slice(2, None))
    S = (slice(1, -1), slice(0, -2))
    NE = (slice(2, None), slice(2, None))
    NW = (slice(0, -2), slice(2, None))
    SE = (slice(2, None), slice(0, -2))
    SW = (slice(0, -2), slice(0, -2))
    jpp = (o[E] - o[W]) * (p[N] - p[S]) - (o[N] - o[S]) * (p[E] - p[W])
    jpx = (o[E] * (p[NE] - p[SE]) - o[W] * (p[NW] - p[SW])
           - o[N] * (p[NE] - p[NW]) + o[S] * (p[SE] - p[SW]))
    jxp = (o[NE] * (p[N] - p[E]) - o[SW] * (p[W] - p[S])
           - o[NW] * (p[N] - p[W]) + o[SE] * (p[E] - p[S]))
    out[C] = (jpp + jpx + jxp) / (12.0 * h * h)
    return out


def central_jacobian(omega, psi, h):
    """Plain centered-difference Jacobian (the non-conservative J++ form)."""
    o, p = omega, psi
    out = np.zeros_like(o)
    C = (slice(1, -1), slice(1, -1))
    E = (slice(2, None), slice(1, -1))
    W = (slice(0, -2), slice(1, -1))
    N = (slice(1, -1), slice(2, None))
    S = (slice(1, -1), slice(0, -2))
    out[C] = ((o[E] - o[W]) * (p[N] - p[S]) - (o[N] - o[S]) * (p[E] - p[W])) / (4.0 * h * h)
    return out


def _triangles(values, h):
    # Four CCW triangles per cell: (corner k, corner k+1, cell center);
    # the center value is the mean of the four corners.
    v00 = values[:-1, :-1].ravel()
    v10 = values[1:, :-1].ravel()
    v11 = values[1:, 1:].ravel()
    v01 = values[:-1, 1:].ravel()
    nx, ny = values.shape
    ii, jj = np.meshgrid(np.arange(nx - 1), np.arange(ny - 1), indexing="ij")
    x0 = ii.ravel() * h
    y0 = jj.ravel() * h
    x1 = x0 + h
    y1 = y0 + h
    xc = x0 + 0.5 * h
    yc = y0 + 0.5 * h
    vc = 0.25 * (v00 + v10 + v11 + v01)
    tx = np.concatenate([
        np.stack([x0, x1, xc], axis=1),
        np.stack([x1, x1, xc], axis=1),
        np.stack([x1, x0, xc], axis=1),
        np.stack([x0, x0, xc], axis=1),
    ])
    ty = np.concatenate([
        np.stack([y0, y0, yc], axis=1),
        np.stack([y0, y1, yc], axis=1),
        np.stack([y1, y1, yc], axis=1),
        np.stack([y1, y0, yc], axis=1),
    ])
    tv = np.concatenate([
        np.stack([v00, v10, vc], axis=1),
        np.stack([v10, v11, vc], axis=1),
        np.stack([v11, v01, vc], axis=1),
        np.stack([v01, v00, vc], axis=1),
    ])
    return tx, ty, tv


def _boundary_edges(values, h):
    # Directed domain-boundary edges in counterclockwise order (region kept left).
    nx, ny = values.shape
    xmax = (nx - 1) * h
    ymax = (ny - 1) * h
    i = np.arange(nx - 1)
    j = np.arange(ny - 1)
    ax = np.concatenate([i * h, np.full(ny - 1, xmax), (i + 1) * h, np.zeros(ny - 1)])
    ay = np.concatenate([np.zeros(nx - 1), j * h, np.full(nx - 1, ymax), (j + 1) * h])
    bx = np.concatenate([(i + 1) * h, np.full(ny - 1, xmax), i * h, np.zeros(ny - 1)])
    by = np.concatenate([np.zeros(nx - 1), (j + 1) * h, np.full(nx - 1, ymax), j * h])
    va = np.concatenate([values[:-1, 0], values[-1, :-1], values[1:, -1], values[0, 1:]])
    vb = np.concatenate([values[1:, 0], values[-1, 1:], values[:-1, -1], values[0, :-1]])
    return ax, ay, va, bx, by, vb


def areas_at_levels(values, h, levels):
    """Area of {interpolant >= c} for each level, by signed contour accumulation.

    Each crossed triangle contributes the chord of its contour segment,
    oriented with the region on the left; counterclockwise domain-boundary
    edges clipped to the region close the curves.  Green's theorem then gives
    the enclosed area as half the accumulated cross products.
    """
    tx, ty, tv = _triangles(values, h)
    tmin = tv.min(axis=1)
    tmax = tv.max(axis=1)
    ax, ay, va, bx, by, vb = _boundary_edges(values, h)
    emin = np.minimum(va, vb)
    emax = np.maximum(va, vb)
    ecross = ax * by - ay * bx
    areas = np.zeros(len(levels))
    for li, c in enumerate(np.asarray(levels, dtype=np.float64)):
        acc = 0.0
        hit = np.nonzero((tmin < c) & (tmax >= c))[0]
        if hit.size:
            s = tv[hit] - c
            inside = s >= 0.0
            nin = inside.sum(axis=1)
            for count, pick in ((1, inside), (2, ~inside)):
                rows = np.nonzero(nin == count)[0]
                if rows.size == 0:
                    continue
                r = hit[rows]
                k = np.argmax(pick[rows], axis=1)
                m = (k + 1) % 3
                n = (k + 2) % 3
                sl = s[rows, k]
                lx, ly = tx[r, k], ty[r, k]
                tm = sl / (sl - s[rows, m])
                tn = sl / (sl - s[rows, n])
                pmx = lx + tm * (tx[r, m] - lx)
                pmy = ly + tm * (ty[r, m] - ly)
                pnx = lx + tn * (tx[r, n] - lx)
                pny = ly + tn * (ty[r, n] - ly)
                if count == 1:
                    # lone inside vertex: segment runs entry -> exit
                    acc += 0.5 * np.sum(pmx * pny - pmy * pnx)
                else:
                    acc += 0.5 * np.sum(pnx * pmy - pny * pmx)
        full = emin >= c
        acc += 0.5 * ecross[full].sum()
        part = np.nonzero((emin < c) & (emax >= c))[0]
        if part.size:
            t = (c - va[part]) / (vb[part] - va[part])
            mx = ax[part] + t * (bx[part] - ax[part])
            my = ay[part] + t * (by[part] - ay[part])
            a_in = va[part] >= c
            piece = np.where(a_in,
                             ax[part] * my - ay[part] * mx,
                             mx * by[part] - my * bx[part])
            acc += 0.5 * piece.sum()
        areas[li] = acc
    return areas


def _hermite_basis(t):
    omt = 1.0 - t
    h00 = (1.0 + 2.0 * t) * omt * omt
    h10 = t * omt * omt
    h01 = t * t * (3.0 - 2.0 * t)
    h11 = t * t * (t - 1.0)
    return h00, h10, h01, h11


def hermite_eval(xk, yk, dk, q):
    """Evaluate the monotone cubic Hermite interpolant, clamping outside the knots."""
    q = np.asarray(q, dtype=np.float64)
    n = xk.shape[0]
    if n == 1:
        return np.full(q.shape, yk[0])
    idx = np.clip(np.searchsorted(xk, q, side="right") - 1, 0, n - 2)
    x0 = xk[idx]
    w = xk[idx + 1] - x0
    t = np.clip((q - x0) / w, 0.0, 1.0)
    h00, h10, h01, h11 = _hermite_basis(t)
    return h00 * yk[idx] + w * h10 * dk[idx] + h01 * yk[idx + 1] + w * h11 * dk[idx + 1]


def hermite_invert(xk, yk, dk, targets, rtol=1e-13):
    """Solve interpolant(c) = target for a nonincreasing table, by bisection.

    Targets outside [yk[-1], yk[0]] clamp to the corresponding endpoint knot.
    """
    targets = np.asarray(targets, dtype=np.float64)
    n = xk.shape[0]
    if n == 1:
        return np.full(targets.shape, xk[0])
    lo = np.full(targets.shape, xk[0])
    hi = np.full(targets.shape, xk[-1])
    tol = rtol * (xk[-1] - xk[0])
    for _ in range(80):
        if np.max(hi - lo) <= tol:
            break
        mid = 0.5 * (lo + hi)
        v = hermite_eval(xk, yk, dk, mid)
        go_right = v > targets
        lo = np.where(go_right, mid, lo)
        hi = np.where(go_right, hi, mid)
    out = 0.5 * (lo + hi)
    out = np.where(targets >= yk[0], xk[0], out)
    out = np.where(targets <= yk[-1], xk[-1], out)
    return out
