"""Sparse exact Gaussian elimination over a field.

Rows are dicts column-key -> element; elements need +, -, *, is_zero and
inv (both the cyclotomic field elements and the scalar quotients qualify).
The matrices here are tiny but extremely sparse (the differential has at
most n nonzero entries per row), so elimination keeps rows as dicts.
"""

from __future__ import annotations


class RowReducer:
    """Incremental row-echelon accumulator; deterministic pivot choice
    (smallest column key)."""

    def __init__(self):
        self.pivots = {}  # column key -> reduced row with 1 in that column

    def reduce(self, row):
        """Reduce a row against the current echelon; returns the residue."""
        row = dict(row)
        while row:
            col = min(row)
            piv = self.pivots.get(col)
            if piv is None:
                return row, col
            c = row.pop(col)
            for k, v in piv.items():
                if k == col:
                    continue
                w = row.get(k)
                w = -(c * v) if w is None else w - c * v
                if w.is_zero():
                    row.pop(k, None)
                else:
                    row[k] = w
        return row, None

    def add(self, row):
        """Insert a row; returns True if it enlarged the span."""
        residue, col = self.reduce(row)
        if col is None:
            return False
        lead = residue[col]
        inv = lead.inv()
        self.pivots[col] = {k: v * inv for k, v in residue.items()}
        return True

    def contains(self, row):
        residue, col = self.reduce(row)
        return col is None

    @property
    def rank(self):
        return len(self.pivots)


def in_span(rows, target):
    red = RowReducer()
    for row in rows:
        red.add(row)
    return red.contains(target)

