"""Atomic propositions (subspaces), labelling and the satisfaction relation."""
from itertools import combinations

import numpy as np

from .complexla import DEFAULT_TOL, as_vector
from .errors import ContractError, ModelError
from .subspace import Subspace, commutator_norm, contains, equal, full, join, leq, meet


class PropositionSet:
    """A finite, named set AP of subspaces of one ambient space.

    Commutation and join-closure are checked on construction; the result is
    in ``commuting`` and ``join_closed``. Operations that depend on both
    (see :func:`require_lattice`) refuse to run when either is false.
    """

    def __init__(self, props, dim=None, tol=DEFAULT_TOL):
        props = dict(props)
        dims = {X.dim for X in props.values()}
        if dim is not None:
            dims.add(dim)
        if len(dims) > 1:
            raise ModelError([(f"propositions live in different dimensions {sorted(dims)}", None)])
        if not dims:
            raise ModelError([("empty proposition set needs an explicit dimension", None)])
        self.dim = dims.pop()
        self.props = props
        self.tol = tol
        self.max_commutator = 0.0
        self.commuting = True
        self.join_closed = True
        self.join_failures = []
        names = list(props)
        for a, b in combinations(names, 2):
            c = commutator_norm(props[a], props[b])
            self.max_commutator = max(self.max_commutator, c)
            if c > tol.commute_eps:
                self.commuting = False
        for a, b in combinations(names, 2):
            J = join(props[a], props[b], tol)
            if not any(equal(J, props[n], tol) for n in names):
                self.join_closed = False
                self.join_failures.append((a, b))

    @property
    def names(self):
        return list(self.props)

    def __getitem__(self, name):
        return self.props[name]

    def __len__(self):
        return len(self.props)

    def __iter__(self):
        return iter(self.props)

    def require_lattice(self):
        problems = []
        if not self.commuting:
            problems.append(("atomic propositions do not pairwise commute: max commutator",
                             self.max_commutator))
        if not self.join_closed:
            a, b = self.join_failures[0]
            problems.append((f"atomic propositions are not closed under join "
                             f"({a!r} v {b!r} is not a member)", None))
        if problems:
            raise ContractError("; ".join(
                w if m is None else f"{w} {m:.3e}" for w, m in problems))

    def __repr__(self):
        return (f"PropositionSet({self.names}, commuting={self.commuting}, "
                f"join_closed={self.join_closed})")


def _check_vec(ap, v):
    v = as_vector(v)
    if v.shape[0] != ap.dim:
        raise ContractError(f"state of dimension {v.shape[0]} labelled over C^{ap.dim}")
    return v


def label(ap, v, tol=DEFAULT_TOL):
    """Names of the propositions containing ``v``, as a frozenset."""
    v = _check_vec(ap, v)
    return frozenset(n for n, X in ap.props.items() if contains(X, v, tol))


def meet_of(ap, names, tol=DEFAULT_TOL):
    """Meet of the named propositions; the empty meet is the whole space."""
    M = full(ap.dim)
    # smallest first keeps intermediate meets small
    for n in sorted(names, key=lambda n: ap.props[n].rank):
        M = meet(M, ap.props[n], tol)
    return M


def label_meet(ap, v, tol=DEFAULT_TOL):
    return meet_of(ap, label(ap, v, tol), tol)


def satisfies(ap, v, X, tol=DEFAULT_TOL):
    """|v> |= X: the meet of v's labels is included in X."""
    if X.dim != ap.dim:
        raise ContractError(f"condition lives in C^{X.dim}, propositions in C^{ap.dim}")
    if X.rank == X.dim:
        _check_vec(ap, v)
        return True
    return leq(label_meet(ap, v, tol), X, tol)


def subspace_satisfies(ap, Y, X, tol=DEFAULT_TOL):
    """Every state of Y satisfies X, decided on Y's basis.

    Only sound for commuting, join-closed AP; refuses otherwise.
    """
    ap.require_lattice()
    return all(satisfies(ap, v, X, tol) for v in Y.vectors)


def lattice_from_blocks(blocks, dim, prefix="P", tol=DEFAULT_TOL):
    """Commuting, join-closed AP: every non-empty union of the given blocks.

    ``blocks`` is a list of mutually orthogonal :class:`Subspace` objects.
    Member names are ``prefix`` followed by the sorted block indices, e.g.
    ``P0_2`` for block 0 joined with block 2.
    """
    members = {}
    idx = range(len(blocks))
    for k in range(1, len(blocks) + 1):
        for combo in combinations(idx, k):
            vecs = np.vstack([blocks[i].vectors for i in combo])
            members[prefix + "_".join(map(str, combo))] = Subspace(dim, vecs)
    return PropositionSet(members, dim=dim, tol=tol)
