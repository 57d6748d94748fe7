"""Quantum automata: named unitaries acting on C^d plus an initial subspace."""
from dataclasses import dataclass
from itertools import product as iproduct

import numpy as np

from . import kernels
from .complexla import DEFAULT_TOL, as_vector, unitarity_violation
from .errors import ContractError, ModelError
from .subspace import Subspace, span_of


class QuantumAutomaton:
    """(Act, {U_a}, I) over C^d.

    ``actions`` keeps insertion order so that every traversal, and hence
    every counterexample, is reproducible.
    """

    def __init__(self, actions, initial, tol=DEFAULT_TOL):
        if not actions:
            raise ModelError([("automaton has no actions", None)])
        problems = []
        mats = {}
        d = None
        for name, U in actions.items():
            U = np.array(U, dtype=np.complex128)
            if U.ndim != 2 or U.shape[0] != U.shape[1]:
                problems.append((f"action {name!r} is not a square matrix", None))
                continue
            if d is None:
                d = U.shape[0]
            if U.shape[0] != d:
                problems.append((f"action {name!r} is {U.shape[0]}x{U.shape[0]}, expected {d}x{d}", None))
                continue
            viol = unitarity_violation(U)
            if viol > tol.unitarity_eps:
                problems.append((f"action {name!r} is not unitary: max|U^dag U - I|", viol))
            U.setflags(write=False)
            mats[name] = U
        if not isinstance(initial, Subspace):
            initial = span_of(list(initial), dim=d, tol=tol) if d is not None else None
        if initial is not None and d is not None and initial.dim != d:
            problems.append((f"initial space lives in C^{initial.dim}, actions in C^{d}", None))
        elif initial is None or initial.is_zero():
            problems.append(("initial subspace is the zero subspace", None))
        if problems:
            raise ModelError(problems)
        self.dim = d
        self.actions = mats
        self.initial = initial

    @property
    def action_names(self):
        return list(self.actions)

    def __repr__(self):
        return (f"QuantumAutomaton(dim={self.dim}, actions={self.action_names}, "
                f"initial_rank={self.initial.rank})")


@dataclass
class PathFragment:
    """A finite path: ``states[k+1] = U[steps[k]] @ states[k]``."""

    start: np.ndarray
    steps: list
    states: list
    # index of the initial basis vector the path starts from, when known
    start_index: int = None

    def __len__(self):
        return len(self.steps)

    @property
    def final(self):
        return self.states[-1]


def step(A, v, alpha):
    try:
        U = A.actions[alpha]
    except KeyError:
        raise ContractError(f"unknown action {alpha!r}") from None
    v = as_vector(v)
    if v.shape[0] != A.dim:
        raise ContractError(f"state of dimension {v.shape[0]} in a C^{A.dim} automaton")
    return kernels.matvec(U, v)


def replay(A, start, steps, start_index=None):
    states = [as_vector(start)]
    for a in steps:
        states.append(step(A, states[-1], a))
    return PathFragment(states[0], list(steps), states, start_index)


def fragment_is_valid(A, frag, tol=DEFAULT_TOL):
    """Check the PathFragment invariants against ``A``."""
    if len(frag.states) != len(frag.steps) + 1:
        return False
    if not A.initial.contains(frag.states[0], tol):
        return False
    for k, a in enumerate(frag.steps):
        nxt = A.actions[a] @ frag.states[k]
        if np.max(np.abs(nxt - frag.states[k + 1])) > 1e-8:
            return False
    return True


def reachable_subspace(A, tol=DEFAULT_TOL, stats=None):
    """Least subspace containing I and closed under every U_a.

    Fixed point iteration: each round applies every action to every basis
    vector and keeps directions whose residual exceeds membership_eps.
    ``stats``, if a dict, receives the number of enlargement rounds.
    """
    Q = A.initial.vectors.copy()
    rounds = 0
    frontier = list(Q)
    while frontier:
        new = []
        for v in frontier:
            for U in A.actions.values():
                w = kernels.matvec(U, v)
                r = kernels.residual(Q, w)
                n = np.linalg.norm(r)
                if n > tol.membership_eps:
                    q = r / n
                    Q = np.vstack([Q, q[None, :]])
                    new.append(q)
        if new:
            rounds += 1
        frontier = new
    if stats is not None:
        stats["rounds"] = rounds
    return Subspace(A.dim, Q)


def enumerate_fragments(A, from_basis, depth):
    """Yield every fragment of length <= depth from each start vector.

    Start vectors are taken in order; within a start, fragments come in
    breadth-first order over action sequences.
    """
    names = A.action_names
    for idx, v in enumerate(from_basis):
        for k in range(depth + 1):
            for seq in iproduct(names, repeat=k):
                yield replay(A, v, seq, start_index=idx)
