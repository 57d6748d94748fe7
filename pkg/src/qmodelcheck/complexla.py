"""Dense complex linear algebra with explicit tolerances.

Vectors are 1-d ``complex128`` arrays and matrices 2-d ``complex128``
arrays. Nothing here compares complex numbers exactly.
"""
from dataclasses import dataclass, replace

import numpy as np
import scipy.linalg

from . import kernels
from .errors import ContractError


@dataclass(frozen=True)
class Tolerances:
    membership_eps: float = 1e-9
    unitarity_eps: float = 1e-8
    degeneracy_gap: float = 1e-8
    overlap_eps: float = 1e-9
    # projector commutator threshold
    commute_eps: float = 1e-8

    def __post_init__(self):
        for name in ("membership_eps", "unitarity_eps", "degeneracy_gap",
                     "overlap_eps", "commute_eps"):
            if not getattr(self, name) > 0:
                raise ContractError(f"tolerance {name} must be strictly positive")
        if self.membership_eps > self.unitarity_eps:
            raise ContractError("membership_eps must not exceed unitarity_eps")

    def with_membership(self, eps):
        """Copy with ``membership_eps`` overridden (unitarity_eps raised if needed)."""
        return replace(self, membership_eps=eps,
                       unitarity_eps=max(self.unitarity_eps, eps))

    def as_dict(self):
        return {
            "membership_eps": self.membership_eps,
            "unitarity_eps": self.unitarity_eps,
            "degeneracy_gap": self.degeneracy_gap,
            "overlap_eps": self.overlap_eps,
            "commute_eps": self.commute_eps,
        }


DEFAULT_TOL = Tolerances()


def as_vector(v):
    a = np.asarray(v, dtype=np.complex128)
    if a.ndim != 1 or a.shape[0] == 0:
        raise ContractError(f"expected a non-empty vector, got shape {a.shape}")
    return a


def as_matrix(m):
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or 0 in a.shape:
        raise ContractError(f"expected a non-empty matrix, got shape {a.shape}")
    return a


def basis_vector(d, i):
    e = np.zeros(d, dtype=np.complex128)
    e[i] = 1.0
    return e


def inner(a, b):
    """<a|b>, conjugate-linear in ``a``."""
    a = as_vector(a)
    b = as_vector(b)
    if a.shape != b.shape:
        raise ContractError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return complex(np.vdot(a, b))


def orthonormalize(vectors, tol=DEFAULT_TOL):
    """Orthonormal list spanning the same space as ``vectors``.

    Vectors whose twice-orthogonalized residual against the accumulated set
    has norm <= ``tol.membership_eps`` are dropped.
    """
    vectors = [as_vector(v) for v in vectors]
    if not vectors:
        return []
    d = vectors[0].shape[0]
    if any(v.shape[0] != d for v in vectors):
        raise ContractError("orthonormalize: vectors of different dimensions")
    Q = np.empty((0, d), dtype=np.complex128)
    out = []
    for v in vectors:
        r = kernels.residual(Q, v)
        n = np.linalg.norm(r)
        if n <= tol.membership_eps:
            continue
        q = r / n
        out.append(q)
        Q = np.vstack([Q, q[None, :]])
    return out


def unitarity_violation(U):
    """max |(U^dagger U - I)_ij|."""
    U = as_matrix(U)
    if U.shape[0] != U.shape[1]:
        return float("inf")
    return float(np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0]))))


def is_unitary(U, tol=DEFAULT_TOL):
    return unitarity_violation(U) <= tol.unitarity_eps


def require_unitary(U, tol=DEFAULT_TOL, what="matrix"):
    U = as_matrix(U)
    if U.shape[0] != U.shape[1]:
        raise ContractError(f"{what} is not square: shape {U.shape}")
    viol = unitarity_violation(U)
    if viol > tol.unitarity_eps:
        raise ContractError(f"{what} is not unitary: max|U^dag U - I| = {viol:.3e}")
    return U


def eig_unitary(U, tol=DEFAULT_TOL):
    """Eigenpairs ``[(lambda, v), ...]`` of a unitary matrix.

    Uses the complex Schur form: for a normal matrix the triangular factor
    is diagonal up to rounding, so the Schur vectors are an orthonormal
    eigenbasis.
    """
    U = require_unitary(U, tol)
    T, Z = scipy.linalg.schur(U, output="complex")
    lams = np.diag(T)
    return [(complex(lams[k]), Z[:, k].copy()) for k in range(U.shape[0])]


def eigen_residual(U, lam, v):
    return float(np.linalg.norm(U @ v - lam * v))


def min_eigen_gap(pairs):
    lams = [lam for lam, _ in pairs]
    gap = float("inf")
    for i in range(len(lams)):
        for j in range(i + 1, len(lams)):
            gap = min(gap, abs(lams[i] - lams[j]))
    return gap


def is_degenerate(pairs, tol=DEFAULT_TOL):
    return min_eigen_gap(pairs) < tol.degeneracy_gap


def random_unitary(d, rng):
    """Haar-distributed unitary from the QR factorization of a complex Gaussian."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph[None, :]
