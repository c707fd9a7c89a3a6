"""Discrete cell rearrangement: restore the initial value multiset by rank.

The projection replaces the k-th largest current value with the k-th largest
initial value, ties broken by flat grid index, so the sorted initial values
are preserved bitwise and the current ordering of cells is kept.
"""

import numpy as np


class SortedValueTable:
    """Initial vertex values sorted descending, frozen at projection setup."""

    __slots__ = ("values_desc", "size")

    def __init__(self, values_desc):
        values_desc = np.ascontiguousarray(values_desc, dtype=np.float64)
        if values_desc.ndim != 1:
            raise ValueError("sorted value table must be one-dimensional")
        values_desc = values_desc.copy()
        values_desc.setflags(write=False)
        self.values_desc = values_desc
        self.size = values_desc.shape[0]


def build_table(omega0):
    """Sort the initial field's values descending into a projection table."""
    flat = omega0.values.ravel()
    return SortedValueTable(np.sort(flat)[::-1])


def rank_project(omega, table):
    """Assign table values to cells by descending rank of the current values."""
    flat = omega.values.ravel()
    if flat.shape[0] != table.size:
        raise ValueError(f"field has {flat.shape[0]} values but table has {table.size}")
    order = np.argsort(-flat, kind="stable")
    out = np.empty_like(flat)
    out[order] = table.values_desc
    return omega.with_values(out.reshape(omega.values.shape))
