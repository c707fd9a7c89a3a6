"""Isocontour polylines of the center-split piecewise-linear interpolant.

Each crossed triangle yields one segment; segment endpoints are keyed by the
triangulation edge they sit on and computed once per edge, so neighboring
segments share endpoints exactly and chain into paths or closed loops.

When the level equals a vertex or cell-center value exactly, the contour
passes through that node and the chain splits there: the meeting segments
live on different edges and share no endpoint key.  The pieces remain
geometrically correct, so generic levels give one polyline per component
while degenerate ones may return it in several open arcs.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Polyline:
    points: np.ndarray  # (m, 2)
    closed: bool


def _corner(ci, cj, k):
    if k == 0:
        return ci, cj
    if k == 1:
        return ci + 1, cj
    if k == 2:
        return ci + 1, cj + 1
    return ci, cj + 1


def _corner_edge(ci, cj, k):
    # vertex-vertex edge between corner k and corner k+1 of cell (ci, cj)
    if k == 0:
        return ("h", ci, cj)
    if k == 1:
        return ("v", ci + 1, cj)
    if k == 2:
        return ("h", ci, cj + 1)
    return ("v", ci, cj)


def _edge_endpoints(edge, values, h, centers):
    kind = edge[0]
    if kind == "h":
        _, i, j = edge
        return (i * h, j * h, values[i, j]), ((i + 1) * h, j * h, values[i + 1, j])
    if kind == "v":
        _, i, j = edge
        return (i * h, j * h, values[i, j]), (i * h, (j + 1) * h, values[i, j + 1])
    _, ci, cj, k = edge
    vi, vj = _corner(ci, cj, k)
    a = (vi * h, vj * h, values[vi, vj])
    b = ((ci + 0.5) * h, (cj + 0.5) * h, centers[ci, cj])
    return a, b


def contour_polylines(field, level):
    """Extract the level set as a list of Polyline, loops marked closed."""
    values = field.values
    g = field.grid
    h = g.h
    c = float(level)
    centers = 0.25 * (values[:-1, :-1] + values[1:, :-1] + values[1:, 1:] + values[:-1, 1:])

    crossing_point = {}

    def point_on(edge):
        p = crossing_point.get(edge)
        if p is None:
            (ax, ay, va), (bx, by, vb) = _edge_endpoints(edge, values, h, centers)
            t = (c - va) / (vb - va)
            p = (ax + t * (bx - ax), ay + t * (by - ay))
            crossing_point[edge] = p
        return p

    segments = []
    for ci in range(g.nx - 1):
        for cj in range(g.ny - 1):
            vc = centers[ci, cj]
            for k in range(4):
                ai, aj = _corner(ci, cj, k)
                bi, bj = _corner(ci, cj, (k + 1) % 4)
                tri_edges = (_corner_edge(ci, cj, k), ("c", ci, cj, (k + 1) % 4), ("c", ci, cj, k))
                tri_vals = ((values[ai, aj], values[bi, bj]),
                            (values[bi, bj], vc),
                            (vc, values[ai, aj]))
                crossed = [e for e, (va, vb) in zip(tri_edges, tri_vals)
                           if (va >= c) != (vb >= c)]
                if len(crossed) == 2:
                    p0 = point_on(crossed[0])
                    p1 = point_on(crossed[1])
                    if abs(p0[0] - p1[0]) + abs(p0[1] - p1[1]) > 1e-14:
                        segments.append((crossed[0], crossed[1]))

    adj = {}
    for si, (e0, e1) in enumerate(segments):
        adj.setdefault(e0, []).append((e1, si))
        adj.setdefault(e1, []).append((e0, si))

    used = [False] * len(segments)
    polylines = []

    def walk(start):
        chain = [start]
        node = start
        while True:
            nxt = None
            for other, si in adj[node]:
                if not used[si]:
                    used[si] = True
                    nxt = other
                    break
            if nxt is None:
                return chain, False
            if nxt == start:
                return chain, True
            chain.append(nxt)
            node = nxt

    ends = [e for e, nbrs in adj.items() if len(nbrs) == 1]
    for start in ends + list(adj):
        if any(not used[si] for _, si in adj[start]):
            chain, closed = walk(start)
            pts = np.array([crossing_point[e] for e in chain])
            polylines.append(Polyline(points=pts, closed=closed))
    return polylines


def write_polylines_csv(levelled, path):
    """Write rows level,piece,x,y for a list of (level, [Polyline, ...])."""
    lines = ["level,piece,x,y"]
    for level, polys in levelled:
        for piece, poly in enumerate(polys):
            for x, y in poly.points:
                lines.append(f"{level:.17g},{piece},{x:.17g},{y:.17g}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
