"""Invariant checking by depth-first search over a growing independent set.

The search keeps two parallel lists: the raw reachable states ``B`` (so a
counterexample can be replayed exactly) and an orthonormalized copy used
for the "already in span B" test. Each raw state records its parent index
and the action that produced it.
"""
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .complexla import DEFAULT_TOL
from .errors import ContractError
from .props import satisfies, subspace_satisfies
from .qautomaton import PathFragment, reachable_subspace
from .subspace import Subspace


@dataclass
class CheckReport:
    verdict: bool  # None when a verdict is withheld
    witness: PathFragment = None
    visited_rank: int = 0
    iterations: int = 0
    engine: str = "dfs"
    kind: str = "invariant"
    # span of the states accumulated by the search
    span: Subspace = None
    extra: dict = field(default_factory=dict)

    def __bool__(self):
        return bool(self.verdict)


def _chain(parents, j):
    steps = []
    while parents[j][0] is not None:
        p, a = parents[j]
        steps.append(a)
        j = p
    return j, steps[::-1]


def _fragment(A, raw, parents, j, last_action=None, last_state=None):
    root, steps = _chain(parents, j)
    states = []
    k = j
    while True:
        states.append(raw[k])
        if parents[k][0] is None:
            break
        k = parents[k][0]
    states = states[::-1]
    if last_action is not None:
        steps.append(last_action)
        states.append(last_state)
    return PathFragment(raw[root], steps, states, start_index=root)


def invariant_dfs(A, sat, tol=DEFAULT_TOL, kind="invariant"):
    """Run the invariant search with state predicate ``sat``.

    The initial basis is pushed in order; the stack is popped last-in
    first-out and actions are tried in declaration order.
    """
    init = list(A.initial.vectors)
    raw = []
    parents = []
    Q = np.empty((0, A.dim), dtype=np.complex128)
    stack = []
    ok = True
    witness = None
    for v in init:
        raw.append(v)
        parents.append((None, None))
        r = kernels.residual(Q, v)
        Q = np.vstack([Q, (r / np.linalg.norm(r))[None, :]])
        stack.append(len(raw) - 1)
        if ok and not sat(v):
            ok = False
            witness = _fragment(A, raw, parents, len(raw) - 1)
    iterations = 0
    actions = list(A.actions.items())
    while ok and stack:
        j = stack.pop()
        iterations += 1
        psi = raw[j]
        for name, U in actions:
            xi = kernels.matvec(U, psi)
            if not sat(xi):
                ok = False
                witness = _fragment(A, raw, parents, j, name, xi)
                break
            r = kernels.residual(Q, xi)
            n = np.linalg.norm(r)
            if n > tol.membership_eps * max(1.0, float(np.linalg.norm(xi))):
                raw.append(xi)
                parents.append((j, name))
                Q = np.vstack([Q, (r / n)[None, :]])
                stack.append(len(raw) - 1)
    return CheckReport(
        verdict=ok,
        witness=witness,
        visited_rank=len(raw),
        iterations=iterations,
        engine="dfs",
        kind=kind,
        span=Subspace(A.dim, Q),
    )


def _prepare(A, ap, X):
    ap.require_lattice()
    if X.dim != A.dim or ap.dim != A.dim:
        raise ContractError(
            f"dimension mismatch: automaton C^{A.dim}, propositions C^{ap.dim}, condition C^{X.dim}")


def check_invariant(A, ap, X, tol=DEFAULT_TOL):
    """Decide A |= inv X by depth-first search."""
    _prepare(A, ap, X)
    return invariant_dfs(A, lambda v: satisfies(ap, v, X, tol), tol)


def check_persistence(A, ap, X, tol=DEFAULT_TOL):
    """Decide A |= pers X.

    In finite dimension, with commuting join-closed propositions,
    persistence and invariance coincide, so this runs the invariant search.
    """
    rep = check_invariant(A, ap, X, tol)
    rep.kind = "persistence"
    return rep


def check_invariant_oracle(A, ap, X, tol=DEFAULT_TOL):
    """Reference decision: fixed-point reachable subspace, then its basis."""
    _prepare(A, ap, X)
    return subspace_satisfies(ap, reachable_subspace(A, tol), X, tol)
