## @file smith.py
#  @brief Smith normal form L = B Delta A of a full-rank r x n integer matrix
#
# Elimination by division with remainder on rows and columns, keeping the
# factorisation L = B D A true after every elementary operation: a row
# operation E applied to D is compensated by B <- B E^{-1}, a column
# operation F by A <- F^{-1} A. All intermediates go through the 64-bit
# guard; the final reconstruction is checked in unbounded precision.
#

import logging

import numpy as np

from pynekhoro.errors import InvalidArgumentError
from .checked import as_int_matrix, check, determinant

logger = logging.getLogger(__name__)


class SmithDecomposition:
    def __init__(self, B, diagonal, A, n):
        """! Result of smith_normal_form, with L = B Delta A
        @param B r x r unimodular matrix (list of rows)
        @param diagonal invariant factors d_1 | d_2 | ... | d_r
        @param A n x n unimodular matrix (list of rows)
        @param n number of columns of L
        """
        self.B = np.array(B, dtype=np.int64)
        self.invariant_factors = tuple(int(d) for d in diagonal)
        self.A = np.array(A, dtype=np.int64)
        r = len(diagonal)
        Delta = np.zeros((r, n), dtype=np.int64)
        for ii, d in enumerate(diagonal):
            Delta[ii, ii] = d
        ## the r x n diagonal matrix of invariant factors
        self.Delta = Delta

    def reconstruct(self):
        """! B Delta A in Python integers (no overflow possible)"""
        B = self.B.tolist()
        D = self.Delta.tolist()
        A = self.A.tolist()
        BD = [[sum(b * d for b, d in zip(row, col)) for col in zip(*D)] for row in B]
        return [[sum(x * a for x, a in zip(row, col)) for col in zip(*A)] for row in BD]

    def to_dict(self):
        return {
            "B": self.B.tolist(),
            "invariant_factors": list(self.invariant_factors),
            "A": self.A.tolist(),
        }


class _Elimination:
    """Working state of the elimination: D with the running factors B, A."""

    def __init__(self, L):
        self.r = len(L)
        self.n = len(L[0])
        self.D = [list(row) for row in L]
        self.B = [[int(ii == jj) for jj in range(self.r)] for ii in range(self.r)]
        self.A = [[int(ii == jj) for jj in range(self.n)] for ii in range(self.n)]

    # row i of D <- row i + c row j ; B: column j <- column j - c column i
    def add_row(self, i, j, c):
        D, B = self.D, self.B
        D[i] = [check(x + c * y) for x, y in zip(D[i], D[j])]
        for row in B:
            row[j] = check(row[j] - c * row[i])

    # column i of D <- column i + c column j ; A: row j <- row j - c row i
    def add_col(self, i, j, c):
        D, A = self.D, self.A
        for row in D:
            row[i] = check(row[i] + c * row[j])
        A[j] = [check(y - c * x) for x, y in zip(A[i], A[j])]

    def swap_rows(self, i, j):
        if i == j:
            return
        self.D[i], self.D[j] = self.D[j], self.D[i]
        for row in self.B:
            row[i], row[j] = row[j], row[i]

    def swap_cols(self, i, j):
        if i == j:
            return
        for row in self.D:
            row[i], row[j] = row[j], row[i]
        self.A[i], self.A[j] = self.A[j], self.A[i]

    def negate_row(self, i):
        self.D[i] = [-x for x in self.D[i]]
        for row in self.B:
            row[i] = -row[i]

    def smallest_entry(self, t):
        best = None
        for ii in range(t, self.r):
            for jj in range(t, self.n):
                value = abs(self.D[ii][jj])
                if value != 0 and (best is None or value < best[0]):
                    best = (value, ii, jj)
        return best

    def clear_pivot_line(self, t):
        """Reduces row t and column t of D to the pivot only; True if already clean."""
        D = self.D
        clean = True
        for ii in range(t + 1, self.r):
            if D[ii][t] != 0:
                self.add_row(ii, t, -(D[ii][t] // D[t][t]))
                clean = clean and D[ii][t] == 0
        for jj in range(t + 1, self.n):
            if D[t][jj] != 0:
                self.add_col(jj, t, -(D[t][jj] // D[t][t]))
                clean = clean and D[t][jj] == 0
        return clean

    def run(self):
        for t in range(self.r):
            while True:
                best = self.smallest_entry(t)
                if best is None:
                    raise InvalidArgumentError(
                        f"matrix has rank {t} < {self.r}, no Smith form of full rank"
                    )
                _, ii, jj = best
                self.swap_rows(t, ii)
                self.swap_cols(t, jj)
                if not self.clear_pivot_line(t):
                    continue
                # the pivot must divide the whole remaining block
                offender = next(
                    (
                        ii
                        for ii in range(t + 1, self.r)
                        for jj in range(t + 1, self.n)
                        if self.D[ii][jj] % self.D[t][t] != 0
                    ),
                    None,
                )
                if offender is None:
                    break
                self.add_row(t, offender, 1)
            if self.D[t][t] < 0:
                self.negate_row(t)
        return [self.D[t][t] for t in range(self.r)]


def smith_normal_form(L):
    """! Smith normal form of an integer matrix of full row rank
    @param L r x n integer matrix (array-like, rows first) of rank r over Q
    @returns a SmithDecomposition with L = B Delta A exactly
    """
    L = as_int_matrix(L)
    r, n = len(L), len(L[0])
    if r > n:
        raise InvalidArgumentError(f"a {r} x {n} matrix cannot have rank {r}")

    work = _Elimination(L)
    diagonal = work.run()
    result = SmithDecomposition(work.B, diagonal, work.A, n)

    if result.reconstruct() != L:
        raise AssertionError("Smith decomposition does not reconstruct its input")
    if any(diagonal[ii + 1] % diagonal[ii] != 0 for ii in range(r - 1)):
        raise AssertionError(f"invariant factors {diagonal} do not form a divisibility chain")
    if abs(determinant(work.A)) != 1 or abs(determinant(work.B)) != 1:
        raise AssertionError("Smith factors are not unimodular")

    logger.debug("Smith form of %s x %s matrix: %s", r, n, diagonal)
    return result
