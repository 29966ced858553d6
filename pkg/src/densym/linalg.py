"""Dense exact-rational linear algebra: elimination, rank, nullspace, solve.

Matrices are lists of lists of Fraction.  Sizes here are small (at most a few
hundred rows), so plain fraction-pivoting Gauss-Jordan is fast enough and
keeps everything exact.
"""
from __future__ import annotations

from fractions import Fraction


def mat_copy(m):
    return [row[:] for row in m]


def rref(m):
    """Reduced row echelon form. Returns (rref_matrix, pivot_columns)."""
    m = [list(map(Fraction, row)) for row in m]
    if not m:
        return m, []
    rows, cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [v / inv for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(m) -> int:
    return len(rref(m)[1])


def nullspace(m, ncols=None):
    """Basis of the right nullspace of m (list of column vectors)."""
    if not m:
        if ncols is None:
            return []
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    ncols = len(m[0]) if ncols is None else ncols
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve_in_span(basis_vectors, target):
    """Coordinates of target in the span of basis_vectors, or None.

    basis_vectors: list of length-n vectors, assumed linearly independent.
    """
    n = len(target)
    aug = [[basis_vectors[j][i] for j in range(len(basis_vectors))] + [target[i]]
           for i in range(n)]
    red, pivots = rref(aug)
    last = len(basis_vectors)
    if last in pivots:
        return None  # inconsistent: target outside the span
    coords = [Fraction(0)] * len(basis_vectors)
    for r, pc in enumerate(pivots):
        coords[pc] = red[r][last]
    return coords


def independent_subset(vectors):
    """Indices of a maximal linearly independent subset, scanned in order."""
    chosen = []
    rows = []
    for i, v in enumerate(vectors):
        trial = rows + [list(v)]
        if rank(trial) == len(trial):
            rows = trial
            chosen.append(i)
    return chosen


def matvec(m, v):
    return [sum(a * b for a, b in zip(row, v)) for row in m]


def mat_eq_zero(m) -> bool:
    return all(all(v == 0 for v in row) for row in m)


def max_abs(m) -> Fraction:
    """Max |entry| of a matrix or vector; the exact 'defect norm'."""
    worst = Fraction(0)
    for row in m:
        if isinstance(row, Fraction):
            worst = max(worst, abs(row))
        else:
            for v in row:
                worst = max(worst, abs(v))
    return worst
