"""Product of a quantum automaton with (a profile of) a classical automaton.

The product lives on H (x) H_Q with coordinates laid out as ``j * |Q| + q``
for computational index ``j`` of H and state index ``q``. Its operators are
defined on the basis ``psi_i (x) |q>``, where ``psi_i`` runs over an
orthonormal basis of H whose leading vectors span I.
"""
from itertools import combinations

import numpy as np

from . import kernels
from .classauto import extract_profile, validate
from .complexla import DEFAULT_TOL
from .errors import ContractError
from .props import PropositionSet, label
from .qautomaton import QuantumAutomaton
from .subspace import Subspace, complement, contains


class ProductAutomaton:
    def __init__(self, base, hbasis, classical, profile, ap, letters, initial_pairs, n_init):
        self.base = base                  # QuantumAutomaton, or None if the initial space is empty
        self.hbasis = hbasis              # (d, d) rows psi_i
        self.classical = classical
        self.profile = profile
        self.ap = ap
        self.letters = letters            # (action, i) -> letter of U_a psi_i
        self.initial_pairs = initial_pairs
        self.n_init = n_init              # number of leading basis vectors spanning I
        self.d = hbasis.shape[0]
        self.nq = len(classical.states)

    @property
    def dim(self):
        return self.d * self.nq

    def index_of(self, i, q):
        return i * self.nq + self.classical.order[q]

    def pair_of(self, k):
        i, s = divmod(k, self.nq)
        return i, self.classical.states[s]

    def basis_vector(self, k):
        i, s = divmod(k, self.nq)
        e = np.zeros(self.nq, dtype=np.complex128)
        e[s] = 1.0
        return np.kron(self.hbasis[i], e)

    def good_states(self):
        fin = set(self.classical.finals)
        return [q for q in self.classical.states if q not in fin]

    def condition(self, states=None):
        """H (x) span{|q> : q in states}; defaults to the non-final states."""
        states = self.good_states() if states is None else list(states)
        return classical_cylinder(self.d, self.classical, states)

    def __repr__(self):
        return f"ProductAutomaton(dim={self.dim}, d={self.d}, |Q|={self.nq})"


def classical_cylinder(d, classical, states):
    nq = len(classical.states)
    rows = []
    for j in range(d):
        for q in states:
            v = np.zeros(d * nq, dtype=np.complex128)
            v[j * nq + classical.order[q]] = 1.0
            rows.append(v)
    return Subspace(d * nq, np.array(rows) if rows else None)


def _hilbert_basis(A, basis, tol):
    I = A.initial
    if basis is None:
        return np.vstack([I.vectors, complement(I, tol).vectors]), I.rank
    B = np.asarray(basis, dtype=np.complex128)
    if B.shape != (A.dim, A.dim):
        raise ContractError(f"basis must be {A.dim}x{A.dim} (rows are vectors)")
    if np.max(np.abs(B.conj() @ B.T - np.eye(A.dim))) > tol.unitarity_eps:
        raise ContractError("supplied basis is not orthonormal")
    inside = [k for k in range(A.dim) if contains(I, B[k], tol)]
    if len(inside) != I.rank:
        raise ContractError(
            f"{len(inside)} supplied basis vectors lie in I, but I has rank {I.rank}")
    rest = [k for k in range(A.dim) if k not in inside]
    return B[inside + rest], I.rank


def build_product(A, ap, CA, basis=None, tol=DEFAULT_TOL):
    """Build the product quantum automaton.

    On basis vectors, ``V_a (psi_i |q>) = (U_a psi_i) |p(q)>`` where ``p`` is
    the profile's permutation for the letter L(U_a psi_i): delta where the
    classical automaton has a successor on that letter, kappa elsewhere.
    """
    flags = validate(CA)
    if not flags["co_deterministic"]:
        raise ContractError("product needs a co-deterministic classical automaton")
    if set(CA.initials) & set(CA.finals):
        raise ContractError("initial and final states overlap (the empty word would be accepted)")
    if ap.dim != A.dim:
        raise ContractError(f"propositions live in C^{ap.dim}, automaton in C^{A.dim}")
    profile = extract_profile(CA)
    hb, n_init = _hilbert_basis(A, basis, tol)
    d, nq = A.dim, len(CA.states)
    order = CA.order
    letters = {}
    ops = {}
    for name, U in A.actions.items():
        V = np.zeros((d * nq, d * nq), dtype=np.complex128)
        for i in range(d):
            w = kernels.matvec(U, hb[i])
            a = label(ap, w, tol)
            letters[(name, i)] = a
            perm = profile.permutation(a)
            P = np.zeros((nq, nq))
            for q, q2 in perm.items():
                P[order[q2], order[q]] = 1.0
            V += np.kron(np.outer(w, hb[i].conj()), P)
        ops[name] = V
    pairs = []
    for i in range(n_init):
        a = label(ap, hb[i], tol)
        targets = set()
        for q0 in CA.initials:
            targets.update(CA.succ(q0, a))
        pairs.extend((i, q) for q in CA.states if q in targets)
    base = None
    if pairs:
        rows = []
        for i, q in pairs:
            e = np.zeros(nq, dtype=np.complex128)
            e[order[q]] = 1.0
            rows.append(np.kron(hb[i], e))
        base = QuantumAutomaton(ops, Subspace(d * nq, np.array(rows)), tol)
    return ProductAutomaton(base, hb, CA, profile, ap, letters, pairs, n_init)


def product_meet_support(pa, v, tol=DEFAULT_TOL):
    """Classical states carrying weight in ``v``.

    The meet of v's labels over the cylinder propositions
    {H (x) span{|q> : q in R} : R non-empty} is the cylinder over exactly
    these states, so no proposition needs to be enumerated.
    """
    norms = kernels.slot_norms(v, pa.nq)
    return {q for q, n in zip(pa.classical.states, norms) if n > tol.membership_eps}


def product_satisfies(pa, v, states, tol=DEFAULT_TOL):
    """v |= H (x) span{|q> : q in states}."""
    return product_meet_support(pa, v, tol) <= set(states)


def product_propositions(pa, tol=DEFAULT_TOL):
    """Materialize every cylinder proposition (2^|Q| - 1 of them)."""
    Q = pa.classical.states
    members = {}
    for k in range(1, len(Q) + 1):
        for R in combinations(Q, k):
            members["R:" + ",".join(R)] = classical_cylinder(pa.d, pa.classical, R)
    return PropositionSet(members, dim=pa.dim, tol=tol)


def basis_compatible(pa, A, tol=DEFAULT_TOL):
    """Is the product exact for traces that start in I's basis?

    True when every action of ``A`` maps each product basis vector psi_i to
    a phase times another psi_j, and every proposition is spanned by some
    of the psi_i. Outside this class a violating trace can be missed.
    """
    hb = pa.hbasis
    for U in A.actions.values():
        # coefficients of U psi_i in the basis; one unimodular entry per row
        C = np.abs((hb.conj() @ (U @ hb.T)).T)
        if np.any(np.abs(C.max(axis=1) - 1.0) > tol.unitarity_eps):
            return False
    for X in pa.ap.props.values():
        w = np.linalg.norm(X.vectors.conj() @ hb.T, axis=0) if X.rank else np.zeros(pa.d)
        if np.any(np.minimum(w, np.abs(1.0 - w)) > tol.unitarity_eps):
            return False
    return True
