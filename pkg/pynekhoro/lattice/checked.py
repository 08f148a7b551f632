## @file checked.py
#  @brief Exact integer helpers with a signed 64-bit overflow guard
#
# Python integers never wrap, so the guard is explicit: every intermediate
# produced through these helpers is checked against the int64 range and an
# ArithmeticOverflowError is raised instead of silently growing.
#

from pynekhoro.errors import ArithmeticOverflowError, InvalidArgumentError

INT64_MAX = 2**63 - 1


def check(value):
    """! Returns value unchanged if it fits in a signed 64-bit integer
    @param value a Python int
    @returns value
    """
    if value > INT64_MAX or value < -INT64_MAX - 1:
        raise ArithmeticOverflowError(f"integer intermediate {value} exceeds 64 bits")
    return value


def as_int_vector(k):
    """! Converts a sequence of integral numbers into a tuple of Python ints
    @param k the sequence, e.g. a list, tuple or integer numpy array
    @returns tuple of ints
    """
    out = []
    for ki in k:
        ii = int(ki)
        if ii != ki:
            raise InvalidArgumentError(f"component {ki!r} is not an integer")
        out.append(check(ii))
    if len(out) == 0:
        raise InvalidArgumentError("integer vectors need at least one component")
    return tuple(out)


def as_int_matrix(L):
    """! Converts a 2D array-like into a list of lists of Python ints
    @param L the matrix, rows first
    @returns list of row lists
    """
    rows = [list(as_int_vector(row)) for row in L]
    if len(rows) == 0:
        raise InvalidArgumentError("matrix has no rows")
    ncol = len(rows[0])
    if any(len(row) != ncol for row in rows):
        raise InvalidArgumentError("matrix rows have different lengths")
    return rows


def l1_norm(k):
    """! The l1 norm |k| = sum |k_i| of an integer vector"""
    return check(sum(abs(int(ki)) for ki in k))


def row_norm(A):
    """! Matrix norm induced by the sup norm: the maximal l1 norm of a row"""
    return max(l1_norm(row) for row in A)


def matmul(A, B):
    """! Exact checked product of two integer matrices given as lists of rows"""
    ncol = len(B[0])
    inner = len(B)
    out = []
    for row in A:
        if len(row) != inner:
            raise InvalidArgumentError("matrix shapes do not match")
        out.append(
            [check(sum(row[kk] * B[kk][jj] for kk in range(inner))) for jj in range(ncol)]
        )
    return out


def determinant(A):
    """! Exact determinant of a square integer matrix (fraction-free Bareiss elimination)
    @param A list of rows
    @returns the determinant as a Python int
    """
    n = len(A)
    if any(len(row) != n for row in A):
        raise InvalidArgumentError("determinant needs a square matrix")
    M = [list(row) for row in A]
    sign = 1
    prev = 1
    for kk in range(n - 1):
        if M[kk][kk] == 0:
            swap = next((ii for ii in range(kk + 1, n) if M[ii][kk] != 0), None)
            if swap is None:
                return 0
            M[kk], M[swap] = M[swap], M[kk]
            sign = -sign
        for ii in range(kk + 1, n):
            for jj in range(kk + 1, n):
                M[ii][jj] = check((M[ii][jj] * M[kk][kk] - M[ii][kk] * M[kk][jj]) // prev)
        prev = M[kk][kk]
    return sign * M[n - 1][n - 1]


def adjugate(A):
    """! Exact adjugate (transposed cofactor matrix) of a square integer matrix"""
    n = len(A)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for ii in range(n):
        for jj in range(n):
            minor = [row[:jj] + row[jj + 1 :] for kk, row in enumerate(A) if kk != ii]
            adj[jj][ii] = check((-1) ** (ii + jj) * determinant(minor))
    return adj


def unimodular_inverse(A):
    """! Exact inverse of an integer matrix with determinant +1 or -1
    @param A list of rows
    @returns the integer inverse, computed from the cofactors
    """
    det = determinant(A)
    if abs(det) != 1:
        raise InvalidArgumentError(f"matrix is not unimodular (det = {det})")
    return [[det * entry for entry in row] for row in adjugate(A)]
