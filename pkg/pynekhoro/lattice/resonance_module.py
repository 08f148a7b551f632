## @file resonance_module.py
#  @brief K-submodules of Z^n given by a basis, with their volume
#

import numpy as np

from pynekhoro.errors import InvalidArgumentError, PreconditionError
from .checked import as_int_matrix, determinant, l1_norm
from .euclid import canonical_generator, is_primitive
from .smith import smith_normal_form


class ResonanceModule:
    def __init__(self, basis, K):
        """! A rank-r submodule of Z^n
        @param basis r x n integer matrix whose rows generate the module
        @param K the order of the module, supplied by the caller; only |k^i| <= K is verified
        """
        rows = as_int_matrix(basis)
        self.rank = len(rows)
        self.n = len(rows[0])
        self.K = int(K)
        if self.K < 1:
            raise InvalidArgumentError("K must be at least 1")
        if self.rank > self.n:
            raise InvalidArgumentError("more generators than the dimension")
        if determinant(_gram(rows)) == 0:
            raise InvalidArgumentError("basis rows are linearly dependent")
        for row in rows:
            if l1_norm(row) > self.K:
                raise PreconditionError(f"generator {row} has l1 norm above K = {self.K}")
        ## the basis, one generator per row
        self.basis = np.array(rows, dtype=np.int64)

    @classmethod
    def from_vector(cls, k, K):
        """! The rank-1 module generated by k, with the canonical sign of the generator"""
        return cls([canonical_generator(k)], K)

    def gram_determinant(self):
        """! det(M^t M) for the n x r matrix M whose columns are the generators, exact"""
        return determinant(_gram(self.basis.tolist()))

    def invariant_factors(self):
        return smith_normal_form(self.basis.tolist()).invariant_factors

    def is_maximal(self):
        """! True iff all the invariant factors equal one"""
        if self.rank == 1:
            return is_primitive(self.basis[0])
        return all(d == 1 for d in self.invariant_factors())

    def volume(self):
        return module_volume(self)


def _gram(rows):
    return [[sum(a * b for a, b in zip(r1, r2)) for r2 in rows] for r1 in rows]


def module_volume(module):
    """! Volume |Lambda| = sqrt(det(M^t M)) of a module
    @param module a ResonanceModule
    @returns the volume, a positive float; the Euclidean norm of the generator in rank 1
    """
    gram = module.gram_determinant()
    if gram <= 0:
        raise InvalidArgumentError("rank-deficient basis has no volume")
    return float(np.sqrt(float(gram)))
