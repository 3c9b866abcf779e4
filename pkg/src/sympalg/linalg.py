"""Exact sparse nullspace computation over the rationals.

Rows are dictionaries column -> coefficient.  Elimination is fraction-free in
the division-minimizing sense: rows are scaled to integers once, updates use
integer cross-multiplication (r' = a*r - b*piv), and every row is stripped to
content 1 afterwards, which keeps entries small without ever leaving exact
arithmetic.  Rows are processed sparsest-first and each pivot is the smallest
column of its row, so for a fixed column order the computed kernel basis is
deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, List

Row = Dict[int, Fraction]
IntRow = Dict[int, int]


def _integerize(row: Row) -> IntRow:
    denom = 1
    for c in row.values():
        denom = denom * c.denominator // gcd(denom, c.denominator)
    out = {j: int(c * denom) for j, c in row.items() if c != 0}
    return _strip_content(out)


def _strip_content(row: IntRow) -> IntRow:
    if not row:
        return row
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if g > 1:
        row = {j: v // g for j, v in row.items()}
    return row


def _combine(row: IntRow, piv: IntRow, col: int) -> IntRow:
    """Eliminate ``col`` from row using the pivot row (integer cross-multiply)."""
    a = piv[col]
    b = row[col]
    out: IntRow = {}
    for j, v in row.items():
        out[j] = a * v
    for j, v in piv.items():
        nv = out.get(j, 0) - b * v
        if nv:
            out[j] = nv
        elif j in out:
            del out[j]
    return _strip_content(out)


def nullspace(rows: List[Row], ncols: int) -> List[List[Fraction]]:
    """Exact basis of {v : M v = 0} for the sparse matrix given by ``rows``.

    Returns one integer-normalized vector (content 1, first nonzero entry
    positive) per free column, ordered by free column index.
    """
    int_rows = [_integerize(r) for r in rows]
    int_rows = [r for r in int_rows if r]
    int_rows.sort(key=lambda r: (len(r), sorted(r)))
    pivots: Dict[int, IntRow] = {}
    for row in int_rows:
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                pivots[col] = row
                break
            row = _combine(row, piv, col)
    # back-substitution: make pivot rows mutually reduced
    for col in sorted(pivots, reverse=True):
        piv = pivots[col]
        for col2 in sorted(pivots):
            if col2 >= col:
                break
            upper = pivots[col2]
            if col in upper:
                pivots[col2] = _combine(upper, piv, col)
    free_cols = [j for j in range(ncols) if j not in pivots]
    basis: List[List[Fraction]] = []
    for f in free_cols:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for col, piv in pivots.items():
            if f in piv:
                vec[col] = Fraction(-piv[f], piv[col])
        basis.append(_normalize(vec))
    return basis


def _normalize(vec: List[Fraction]) -> List[Fraction]:
    denom = 1
    for c in vec:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    ints = [int(c * denom) for c in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    for v in ints:
        if v:
            if v < 0:
                ints = [-w for w in ints]
            break
    return [Fraction(v) for v in ints]


def rank(rows: List[Row]) -> int:
    int_rows = [_integerize(r) for r in rows]
    int_rows = [r for r in int_rows if r]
    int_rows.sort(key=lambda r: (len(r), sorted(r)))
    pivots: Dict[int, IntRow] = {}
    for row in int_rows:
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                pivots[col] = row
                break
            row = _combine(row, piv, col)
    return len(pivots)
