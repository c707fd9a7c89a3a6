"""Uniform vertex-centered grids on the unit square and scalar fields on them.

Vertices sit at (i*h, j*h) with h = 1/(n_x - 1); a field stores one value per
vertex in an (n_x, n_y) array indexed [i, j].  The only supported boundary
treatment is homogeneous Dirichlet: schemes hold the boundary ring fixed.
"""

import numpy as np

DIRICHLET_ZERO = "dirichlet-zero"

_FORMAT = "%.17g"  # shortest round-trip representation for float64


class Grid:
    """Vertex grid covering [0, 1] x [0, (n_y-1)h], h = 1/(n_x-1)."""

    __slots__ = ("nx", "ny", "h", "boundary")

    def __init__(self, nx, ny, h, boundary=DIRICHLET_ZERO):
        self.nx = int(nx)
        self.ny = int(ny)
        self.h = float(h)
        self.boundary = boundary

    @property
    def shape(self):
        return (self.nx, self.ny)

    @property
    def extent(self):
        return ((self.nx - 1) * self.h, (self.ny - 1) * self.h)

    @property
    def area(self):
        ex, ey = self.extent
        return ex * ey

    def xs(self):
        return np.arange(self.nx) * self.h

    def ys(self):
        return np.arange(self.ny) * self.h

    def meshgrid(self):
        return np.meshgrid(self.xs(), self.ys(), indexing="ij")

    def __eq__(self, other):
        if not isinstance(other, Grid):
            return NotImplemented
        return (self.nx, self.ny, self.h, self.boundary) == (other.nx, other.ny, other.h, other.boundary)

    def __hash__(self):
        return hash((self.nx, self.ny, self.h, self.boundary))

    def __repr__(self):
        return f"Grid(nx={self.nx}, ny={self.ny}, h={self.h!r}, boundary={self.boundary!r})"


def make_grid(nx, ny=None, boundary=DIRICHLET_ZERO):
    """Build a grid with nx vertices across the unit interval (ny defaults to nx)."""
    if ny is None:
        ny = nx
    nx, ny = int(nx), int(ny)
    if nx < 3 or ny < 3:
        raise ValueError(f"grid needs at least 3 vertices per direction, got {nx}x{ny}")
    if boundary != DIRICHLET_ZERO:
        raise ValueError(f"unknown boundary treatment {boundary!r}")
    return Grid(nx, ny, 1.0 / (nx - 1), boundary)


class ScalarField:
    """Immutable pairing of a grid and per-vertex float64 values."""

    __slots__ = ("grid", "values")

    def __init__(self, grid, values):
        values = np.asarray(values, dtype=np.float64)
        if values.shape != grid.shape:
            raise ValueError(f"values shape {values.shape} does not match grid {grid.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("field values must be finite")
        values = values.copy()
        values.setflags(write=False)
        self.grid = grid
        self.values = values

    def with_values(self, values):
        return ScalarField(self.grid, values)

    def min(self):
        return float(self.values.min())

    def max(self):
        return float(self.values.max())

    def __repr__(self):
        return f"ScalarField(grid={self.grid!r}, min={self.min():.6g}, max={self.max():.6g})"


def sample(grid, f, t=0.0, apply_boundary=False):
    """Evaluate an analytic field (descriptor with .value or plain f(x, y)) at the vertices.

    With apply_boundary=True the boundary ring is overwritten with zeros, the
    Dirichlet data the schemes hold fixed.
    """
    x, y = grid.meshgrid()
    if hasattr(f, "value"):
        vals = f.value(x, y, t)
    else:
        vals = f(x, y)
    vals = np.asarray(vals, dtype=np.float64)
    if vals.shape != grid.shape:
        vals = np.broadcast_to(vals, grid.shape).copy()
    if apply_boundary:
        vals = vals.copy()
        vals[0, :] = 0.0
        vals[-1, :] = 0.0
        vals[:, 0] = 0.0
        vals[:, -1] = 0.0
    return ScalarField(grid, vals)


def write_snapshot(field, path):
    """Write a field as 'n_x n_y h' header plus one row of x-values per y line."""
    g = field.grid
    lines = [f"{g.nx} {g.ny} {_FORMAT % g.h}"]
    for j in range(g.ny):
        lines.append(" ".join(_FORMAT % v for v in field.values[:, j]))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_snapshot(path):
    """Read a field written by write_snapshot, validating the header geometry."""
    with open(path) as fh:
        tokens = fh.readline().split()
        if len(tokens) != 3:
            raise ValueError(f"{path}: malformed snapshot header")
        nx, ny, h = int(tokens[0]), int(tokens[1]), float(tokens[2])
        grid = make_grid(nx, ny)
        if abs(h - grid.h) > 1e-12 * grid.h:
            raise ValueError(f"{path}: header spacing {h} inconsistent with nx={nx}")
        rows = np.loadtxt(fh, dtype=np.float64, ndmin=2)
    if rows.shape != (ny, nx):
        raise ValueError(f"{path}: expected {ny} rows of {nx} values, got {rows.shape}")
    return ScalarField(grid, rows.T)
