"""Reduction of invariant checking to a classical transition system.

When no action has a degenerate spectrum, every eigenstate of every action
lies either inside the reachable subspace or orthogonal to it. The
classical system has one state per eigenstate (rays pooled across
actions), a single silent action linking non-orthogonal eigenstates, and
initial states for eigenstates not orthogonal to I.
"""
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .complexla import DEFAULT_TOL, eig_unitary, min_eigen_gap
from .errors import DegenerateSpectrum
from .invcheck import CheckReport, _prepare, check_invariant
from .props import satisfies
from .subspace import residual_norm, span_of


@dataclass
class ClassicalTS:
    states: list                    # [(name, eigenvector)]
    transitions: set                # {(name, name)}
    initials: set
    labels: dict                    # name -> proposition name p_name
    origin: dict = field(default_factory=dict)  # name -> (action, eigenvalue)

    def vector(self, name):
        return self._index()[name]

    def _index(self):
        return dict(self.states)

    def successors(self, name):
        return sorted(b for a, b in self.transitions if a == name)

    def reachable(self):
        """Names reachable from the initial states, with BFS parents."""
        adj = {}
        for a, b in self.transitions:
            adj.setdefault(a, []).append(b)
        order = [n for n, _ in self.states]
        rank = {n: i for i, n in enumerate(order)}
        parent = {}
        seen = []
        queue = deque()
        for n in sorted(self.initials, key=rank.get):
            parent[n] = None
            queue.append(n)
        while queue:
            n = queue.popleft()
            seen.append(n)
            for m in sorted(adj.get(n, ()), key=rank.get):
                if m not in parent:
                    parent[m] = n
                    queue.append(m)
        return seen, parent

    def to_text(self):
        lines = [f"states {len(self.states)}"]
        for name, _ in self.states:
            act, lam = self.origin.get(name, ("?", 0))
            flag = " initial" if name in self.initials else ""
            lines.append(f"  {name}: eigenstate of {act} "
                         f"(eigenvalue {lam.real:+.6f}{lam.imag:+.6f}i){flag}")
        lines.append("transitions")
        for name, _ in self.states:
            lines.append(f"  {name} -> {' '.join(self.successors(name))}")
        return "\n".join(lines)


def build_ts(A, tol=DEFAULT_TOL):
    """Classical transition system over the pooled eigenstates of A's actions.

    Raises :class:`DegenerateSpectrum` naming the first degenerate action.
    """
    states = []
    origin = {}
    for action, U in A.actions.items():
        pairs = eig_unitary(U, tol)
        gap = min_eigen_gap(pairs)
        if gap < tol.degeneracy_gap:
            raise DegenerateSpectrum(action, gap)
        for k, (lam, v) in enumerate(pairs):
            # pool rays that already occur for an earlier action
            if any(abs(np.vdot(w, v)) > 1 - tol.overlap_eps for _, w in states):
                continue
            name = f"{action}.{k}"
            states.append((name, v))
            origin[name] = (action, lam)
    transitions = set()
    for a, va in states:
        for b, vb in states:
            if abs(np.vdot(va, vb)) > tol.overlap_eps:
                transitions.add((a, b))
    initials = {n for n, v in states
                if np.linalg.norm(A.initial.vectors.conj() @ v) > tol.overlap_eps}
    labels = {n: f"p_{n}" for n, _ in states}
    return ClassicalTS(states, transitions, initials, labels, origin)


def reachable_span(ts, tol=DEFAULT_TOL):
    seen, _ = ts.reachable()
    vecs = ts._index()
    d = ts.states[0][1].shape[0]
    # eigenstates pooled from different actions are not mutually orthogonal
    return span_of([vecs[n] for n in seen], dim=d, tol=tol)


def dichotomy_residual(ts, RS):
    """max over eigenstates of min(distance to RS, distance to RS^perp)."""
    worst = 0.0
    for _, v in ts.states:
        inside = residual_norm(RS, v)
        outside = float(np.linalg.norm(RS.vectors.conj() @ v)) if RS.rank else 0.0
        worst = max(worst, min(inside, outside))
    return worst


def check_invariant_via_ts(A, ap, X, tol=DEFAULT_TOL, ts=None):
    _prepare(A, ap, X)
    if ts is None:
        ts = build_ts(A, tol)
    seen, parent = ts.reachable()
    vecs = ts._index()
    for n in seen:
        if not satisfies(ap, vecs[n], X, tol):
            chain = [n]
            while parent[chain[-1]] is not None:
                chain.append(parent[chain[-1]])
            chain.reverse()
            rep = CheckReport(verdict=False, visited_rank=len(seen), iterations=len(seen),
                              engine="eigen", extra={"ts_path": chain})
            # the classical path has no replayable quantum counterpart; borrow
            # one from the direct search, which must agree
            dfs = check_invariant(A, ap, X, tol)
            if not dfs.verdict:
                rep.witness = dfs.witness
            return rep
    return CheckReport(verdict=True, visited_rank=len(seen), iterations=len(seen),
                       engine="eigen", span=reachable_span(ts, tol))


def check_invariant_auto(A, ap, X, tol=DEFAULT_TOL):
    """Eigen reduction when every spectrum is simple, depth-first search otherwise."""
    try:
        ts = build_ts(A, tol)
    except DegenerateSpectrum as exc:
        rep = check_invariant(A, ap, X, tol)
        rep.extra["fallback"] = str(exc)
        return rep
    return check_invariant_via_ts(A, ap, X, tol, ts=ts)
