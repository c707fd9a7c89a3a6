"""Numba-compiled implementations of the hot kernels.

Loop-level mirrors of numpy_impl with identical semantics; no fastmath and no
parallel scheduling, so results stay deterministic across runs and threads.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def arakawa_jacobian(omega, psi, h):
    nx, ny = omega.shape
    out = np.zeros((nx, ny))
    scale = 1.0 / (12.0 * h * h)
    for i in range(1, nx - 1):
        for j in range(1, ny - 1):
            jpp = ((omega[i + 1, j] - omega[i - 1, j]) * (psi[i, j + 1] - psi[i, j - 1])
                   - (omega[i, j + 1] - omega[i, j - 1]) * (psi[i + 1, j] - psi[i - 1, j]))
            jpx = (omega[i + 1, j] * (psi[i + 1, j + 1] - psi[i + 1, j - 1])
                   - omega[i - 1, j] * (psi[i - 1, j + 1] - psi[i - 1, j - 1])
                   - omega[i, j + 1] * (psi[i + 1, j + 1] - psi[i - 1, j + 1])
                   + omega[i, j - 1] * (psi[i + 1, j - 1] - psi[i - 1, j - 1]))
            jxp = (omega[i + 1, j + 1] * (psi[i, j + 1] - psi[i + 1, j])
                   - omega[i - 1, j - 1] * (psi[i - 1, j] - psi[i, j - 1])
                   - omega[i - 1, j + 1] * (psi[i, j + 1] - psi[i - 1, j])
                   + omega[i + 1, j - 1] * (psi[i + 1, j] - psi[i, j - 1]))
            out[i, j] = (jpp + jpx + jxp) * scale
    return out


@njit(cache=True)
def central_jacobian(omega, psi, h):
    nx, ny = omega.shape
    out = np.zeros((nx, ny))
    scale = 1.0 / (4.0 * h * h)
    for i in range(1, nx - 1):
        for j in range(1, ny - 1):
            out[i, j] = ((omega[i + 1, j] - omega[i - 1, j]) * (psi[i, j + 1] - psi[i, j - 1])
                         - (omega[i, j + 1] - omega[i, j - 1]) * (psi[i + 1, j] - psi[i - 1, j])) * scale
    return out


@njit(cache=True)
def _upper_bound(arr, v):
    # first index with arr[idx] > v
    lo = 0
    hi = arr.shape[0]
    while lo < hi:
        mid = (lo + hi) // 2
        if arr[mid] <= v:
            lo = mid + 1
        else:
            hi = mid
    return lo


@njit(cache=True)
def areas_at_levels(values, h, levels):
    nx, ny = values.shape
    nlev = levels.shape[0]
    areas = np.zeros(nlev)
    if nlev == 0:
        return areas
    px = np.empty(3)
    py = np.empty(3)
    pv = np.empty(3)
    for ci in range(nx - 1):
        for cj in range(ny - 1):
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
            for tri in range(4):
                if tri == 0:
                    px[0] = x0; py[0] = y0; pv[0] = v00
                    px[1] = x1; py[1] = y0; pv[1] = v10
                elif tri == 1:
                    px[0] = x1; py[0] = y0; pv[0] = v10
                    px[1] = x1; py[1] = y1; pv[1] = v11
                elif tri == 2:
                    px[0] = x1; py[0] = y1; pv[0] = v11
                    px[1] = x0; py[1] = y1; pv[1] = v01
                else:
                    px[0] = x0; py[0] = y1; pv[0] = v01
                    px[1] = x0; py[1] = y0; pv[1] = v00
                px[2] = xc; py[2] = yc; pv[2] = vc
                tmin = min(pv[0], min(pv[1], pv[2]))
                tmax = max(pv[0], max(pv[1], pv[2]))
                for li in range(_upper_bound(levels, tmin), _upper_bound(levels, tmax)):
                    c = levels[li]
                    in0 = pv[0] >= c
                    in1 = pv[1] >= c
                    in2 = pv[2] >= c
                    nin = int(in0) + int(in1) + int(in2)
                    if nin == 1:
                        k = 0 if in0 else (1 if in1 else 2)
                    else:
                        k = 0 if not in0 else (1 if not in1 else 2)
                    m = (k + 1) % 3
                    n = (k + 2) % 3
                    sl = pv[k] - c
                    tm = sl / (sl - (pv[m] - c))
                    tn = sl / (sl - (pv[n] - c))
                    pmx = px[k] + tm * (px[m] - px[k])
                    pmy = py[k] + tm * (py[m] - py[k])
                    pnx = px[k] + tn * (px[n] - px[k])
                    pny = py[k] + tn * (py[n] - py[k])
                    if nin == 1:
                        areas[li] += 0.5 * (pmx * pny - pmy * pnx)
                    else:
                        areas[li] += 0.5 * (pnx * pmy - pny * pmx)
    # counterclockwise boundary closure: 4 sides of edges a -> b
    nedge = 2 * (nx - 1) + 2 * (ny - 1)
    for e in range(nedge):
        if e < nx - 1:
            i = e
            ax = i * h; ay = 0.0; bx = ax + h; by = 0.0
            va = values[i, 0]; vb = values[i + 1, 0]
        elif e < (nx - 1) + (ny - 1):
            j = e - (nx - 1)
            ax = (nx - 1) * h; ay = j * h; bx = ax; by = ay + h
            va = values[nx - 1, j]; vb = values[nx - 1, j + 1]
        elif e < 2 * (nx - 1) + (ny - 1):
            i = e - (nx - 1) - (ny - 1)
            ax = (i + 1) * h; ay = (ny - 1) * h; bx = i * h; by = ay
            va = values[i + 1, ny - 1]; vb = values[i, ny - 1]
        else:
            j = e - 2 * (nx - 1) - (ny - 1)
            ax = 0.0; ay = (j + 1) * h; bx = 0.0; by = j * h
            va = values[0, j + 1]; vb = values[0, j]
        emin = min(va, vb)
        emax = max(va, vb)
        cr = ax * by - ay * bx
        kmin = _upper_bound(levels, emin)
        for li in range(kmin):
            areas[li] += 0.5 * cr
        for li in range(kmin, _upper_bound(levels, emax)):
            c = levels[li]
            t = (c - va) / (vb - va)
            mx = ax + t * (bx - ax)
            my = ay + t * (by - ay)
            if va >= c:
                areas[li] += 0.5 * (ax * my - ay * mx)
            else:
                areas[li] += 0.5 * (mx * by - my * bx)
    return areas


@njit(cache=True)
def _heval_scalar(xk, yk, dk, q):
    n = xk.shape[0]
    idx = _upper_bound(xk, q) - 1
    if idx < 0:
        idx = 0
    if idx > n - 2:
        idx = n - 2
    w = xk[idx + 1] - xk[idx]
    t = (q - xk[idx]) / w
    if t < 0.0:
        t = 0.0
    if t > 1.0:
        t = 1.0
    omt = 1.0 - t
    h00 = (1.0 + 2.0 * t) * omt * omt
    h10 = t * omt * omt
    h01 = t * t * (3.0 - 2.0 * t)
    h11 = t * t * (t - 1.0)
    return h00 * yk[idx] + w * h10 * dk[idx] + h01 * yk[idx + 1] + w * h11 * dk[idx + 1]


@njit(cache=True)
def hermite_eval(xk, yk, dk, q):
    out = np.empty(q.shape[0])
    if xk.shape[0] == 1:
        out[:] = yk[0]
        return out
    for i in range(q.shape[0]):
        out[i] = _heval_scalar(xk, yk, dk, q[i])
    return out


@njit(cache=True)
def hermite_invert(xk, yk, dk, targets, rtol=1e-13):
    n = xk.shape[0]
    out = np.empty(targets.shape[0])
    if n == 1:
        out[:] = xk[0]
        return out
    tol = rtol * (xk[-1] - xk[0])
    for i in range(targets.shape[0]):
        t = targets[i]
        if t >= yk[0]:
            out[i] = xk[0]
            continue
        if t <= yk[-1]:
            out[i] = xk[-1]
            continue
        lo = xk[0]
        hi = xk[-1]
        for _ in range(80):
            if hi - lo <= tol:
                break
            mid = 0.5 * (lo + hi)
            if _heval_scalar(xk, yk, dk, mid) > t:
                lo = mid
            else:
                hi = mid
        out[i] = 0.5 * (lo + hi)
    return out
