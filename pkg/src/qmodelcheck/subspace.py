"""Closed subspaces of C^d as orthonormal bases, and their lattice operations."""
import numpy as np

from . import kernels
from .complexla import (DEFAULT_TOL, as_vector, orthonormalize,
                        require_unitary)
from .errors import ContractError


class Subspace:
    """A subspace of C^d stored as an orthonormal basis.

    ``vectors`` has shape ``(rank, d)``; row ``k`` is the k-th basis vector.
    Bases are not canonical, so compare subspaces with :func:`equal`.
    """

    __slots__ = ("dim", "vectors")

    def __init__(self, dim, vectors=None):
        if dim < 1:
            raise ContractError("ambient dimension must be positive")
        if vectors is None:
            vectors = np.empty((0, dim), dtype=np.complex128)
        vectors = np.ascontiguousarray(vectors, dtype=np.complex128).reshape(-1, dim)
        vectors.setflags(write=False)
        self.dim = dim
        self.vectors = vectors

    @property
    def rank(self):
        return self.vectors.shape[0]

    def basis(self):
        return [v for v in self.vectors]

    def is_zero(self):
        return self.rank == 0

    def gram_error(self):
        G = self.vectors.conj() @ self.vectors.T
        return float(np.max(np.abs(G - np.eye(self.rank)))) if self.rank else 0.0

    # thin method wrappers; the module functions are the primary API
    def contains(self, v, tol=DEFAULT_TOL):
        return contains(self, v, tol)

    def __le__(self, other):
        return leq(self, other)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, rank={self.rank})"


def _check_dims(X, Y):
    if X.dim != Y.dim:
        raise ContractError(f"ambient dimension mismatch: {X.dim} vs {Y.dim}")


def zero(d):
    return Subspace(d)


def full(d):
    return Subspace(d, np.eye(d, dtype=np.complex128))


def span_of(vectors, dim=None, tol=DEFAULT_TOL):
    vectors = list(vectors)
    if not vectors:
        if dim is None:
            raise ContractError("span_of([]) needs an explicit ambient dimension")
        return zero(dim)
    ortho = orthonormalize(vectors, tol)
    d = as_vector(vectors[0]).shape[0]
    if dim is not None and dim != d:
        raise ContractError(f"vectors have dimension {d}, expected {dim}")
    return Subspace(d, np.array(ortho) if ortho else None)


def ray(v, tol=DEFAULT_TOL):
    return span_of([v], tol=tol)


def residual_norm(X, v):
    """Norm of the component of ``v`` orthogonal to ``X``."""
    return kernels.residual_norm(X.vectors, v)


def contains(X, v, tol=DEFAULT_TOL):
    v = as_vector(v)
    if v.shape[0] != X.dim:
        raise ContractError(f"vector of dimension {v.shape[0]} tested against C^{X.dim}")
    scale = max(1.0, float(np.linalg.norm(v)))
    return residual_norm(X, v) <= tol.membership_eps * scale


def leq(X, Y, tol=DEFAULT_TOL):
    """Inclusion X <= Y."""
    _check_dims(X, Y)
    return all(contains(Y, v, tol) for v in X.vectors)


def equal(X, Y, tol=DEFAULT_TOL):
    return leq(X, Y, tol) and leq(Y, X, tol)


def join(X, Y, tol=DEFAULT_TOL):
    _check_dims(X, Y)
    if X.is_zero():
        return Y
    if Y.is_zero():
        return X
    return span_of(list(X.vectors) + list(Y.vectors), tol=tol)


def join_all(subspaces, dim, tol=DEFAULT_TOL):
    vecs = [v for X in subspaces for v in X.vectors]
    return span_of(vecs, dim=dim, tol=tol)


def complement(X, tol=DEFAULT_TOL):
    """Orthocomplement, read off the trailing right-singular vectors of the basis."""
    d = X.dim
    if X.rank == 0:
        return full(d)
    if X.rank == d:
        return zero(d)
    # rows of X.vectors are orthonormal, so the numerical rank is exactly X.rank
    _, _, vh = np.linalg.svd(X.vectors.conj(), full_matrices=True)
    return Subspace(d, vh[X.rank:].conj())


def meet(X, Y, tol=DEFAULT_TOL):
    """Intersection via De Morgan: (X^perp v Y^perp)^perp."""
    _check_dims(X, Y)
    if X.rank == X.dim:
        return Y
    if Y.rank == Y.dim:
        return X
    return complement(join(complement(X, tol), complement(Y, tol), tol), tol)


def projector(X):
    P = X.vectors.T @ X.vectors.conj()
    if X.rank == 0:
        return np.zeros((X.dim, X.dim), dtype=np.complex128)
    return P


def commutator_norm(X, Y):
    _check_dims(X, Y)
    P, R = projector(X), projector(Y)
    return float(np.max(np.abs(P @ R - R @ P)))


def commutes(X, Y, tol=DEFAULT_TOL):
    return commutator_norm(X, Y) <= tol.commute_eps


def apply(U, X, tol=DEFAULT_TOL):
    """Image U X of X under a unitary."""
    U = require_unitary(U, tol)
    if U.shape[0] != X.dim:
        raise ContractError(f"{U.shape[0]}x{U.shape[0]} unitary applied to subspace of C^{X.dim}")
    if X.is_zero():
        return X
    return span_of([U @ v for v in X.vectors], tol=tol)
