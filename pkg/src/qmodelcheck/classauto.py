"""Finite automata over the alphabet 2^AP.

Letters are frozensets of proposition names. Transitions are kept in
declaration order, which fixes every tie-break below.
"""
from itertools import chain, combinations

from .errors import ContractError, ModelError

FINITE = "finite"
BUECHI = "buechi"


def letter(names=()):
    return frozenset(names)


def all_letters(ap_names):
    """Every subset of ``ap_names``, smallest first."""
    ap_names = list(ap_names)
    return [frozenset(c) for c in chain.from_iterable(
        combinations(ap_names, k) for k in range(len(ap_names) + 1))]


def fmt_letter(a):
    return "{" + ",".join(sorted(a)) + "}"


class ClassicalAutomaton:
    def __init__(self, states, transitions, initials, finals, mode=FINITE):
        self.states = list(states)
        if len(set(self.states)) != len(self.states):
            raise ModelError([("duplicate state names", None)])
        known = set(self.states)
        if mode not in (FINITE, BUECHI):
            raise ModelError([(f"unknown acceptance mode {mode!r}", None)])
        self.mode = mode
        self.initials = [q for q in self.states if q in set(initials)]
        self.finals = [q for q in self.states if q in set(finals)]
        problems = [(f"unknown state {q!r}", None)
                    for q in chain(initials, finals) if q not in known]
        self.transitions = []
        seen = set()
        for p, a, q in transitions:
            if p not in known or q not in known:
                problems.append((f"transition {p!r} -> {q!r} uses an unknown state", None))
                continue
            t = (p, letter(a), q)
            if t not in seen:
                seen.add(t)
                self.transitions.append(t)
        if problems:
            raise ModelError(problems)
        self._succ = {}
        self._pred = {}
        for p, a, q in self.transitions:
            self._succ.setdefault((p, a), []).append(q)
            self._pred.setdefault((q, a), []).append(p)
        self.order = {q: i for i, q in enumerate(self.states)}

    @property
    def alphabet(self):
        """Letters that occur on some transition."""
        out = []
        for _, a, _ in self.transitions:
            if a not in out:
                out.append(a)
        return out

    def succ(self, q, a):
        return list(self._succ.get((q, frozenset(a)), ()))

    def step_set(self, current, a):
        a = frozenset(a)
        out = set()
        for q in current:
            out.update(self._succ.get((q, a), ()))
        return out

    def __repr__(self):
        return (f"ClassicalAutomaton({len(self.states)} states, "
                f"{len(self.transitions)} transitions, mode={self.mode})")


def validate(A):
    fwd_clash = any(len(v) > 1 for v in A._succ.values())
    bwd_clash = any(len(v) > 1 for v in A._pred.values())
    return {
        "deterministic": len(A.initials) == 1 and not fwd_clash,
        # the single-final-state requirement of the textbook definition is not
        # needed for the product construction and is not enforced
        "co_deterministic": not bwd_clash,
        "reversible": not fwd_clash and not bwd_clash,
    }


def accepts_word(A, word):
    if A.mode != FINITE:
        raise ContractError("accepts_word needs a finite-word automaton")
    current = set(A.initials)
    for a in word:
        current = A.step_set(current, a)
        if not current:
            return False
    return bool(current & set(A.finals))


def buechi_accepts_lasso(A, stem, loop):
    """Does some run on stem . loop^omega visit a final state infinitely often?"""
    if A.mode != BUECHI:
        raise ContractError("buechi_accepts_lasso needs a Buechi automaton")
    loop = [frozenset(a) for a in loop]
    if not loop:
        raise ContractError("lasso loop must be non-empty")
    current = set(A.initials)
    for a in stem:
        current = A.step_set(current, a)
    n = len(loop)
    finals = set(A.finals)
    # product graph of automaton states and loop positions
    start = {(q, 0) for q in current}
    reach = set(start)
    todo = list(start)
    while todo:
        q, i = todo.pop()
        for q2 in A._succ.get((q, loop[i]), ()):
            node = (q2, (i + 1) % n)
            if node not in reach:
                reach.add(node)
                todo.append(node)
    for node in reach:
        if node[0] in finals and _on_cycle(A, loop, node):
            return True
    return False


def _on_cycle(A, loop, node):
    n = len(loop)
    seen = set()
    todo = [node]
    while todo:
        q, i = todo.pop()
        for q2 in A._succ.get((q, loop[i]), ()):
            nxt = (q2, (i + 1) % n)
            if nxt == node:
                return True
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return False


class Profile:
    """A deterministic choice ``delta`` of successors plus, per letter, a
    bijection ``kappa`` completing it to a permutation of the states.

    ``delta`` prefers final successors; remaining ties, and the pairing
    inside ``kappa``, follow state declaration order.
    """

    def __init__(self, A):
        self.automaton = A
        self.delta = {}
        finals = set(A.finals)
        for (q, a), targets in A._succ.items():
            fin = [t for t in targets if t in finals]
            pick = fin or targets
            self.delta[(q, a)] = min(pick, key=A.order.get)
        self._kappa = {}

    def kappa(self, a):
        a = frozenset(a)
        if a not in self._kappa:
            A = self.automaton
            dom = [q for q in A.states if (q, a) not in self.delta]
            img = {self.delta[(q, a)] for q in A.states if (q, a) in self.delta}
            cod = [q for q in A.states if q not in img]
            if len(dom) != len(cod):
                raise ContractError(
                    f"letter {fmt_letter(a)}: successor choice is not injective")
            self._kappa[a] = dict(zip(dom, cod))
        return self._kappa[a]

    def next_state(self, q, a):
        a = frozenset(a)
        if (q, a) in self.delta:
            return self.delta[(q, a)]
        return self.kappa(a)[q]

    def permutation(self, a):
        """The combined map q -> delta(q, a) or kappa(q), as a dict."""
        perm = {q: self.next_state(q, a) for q in self.automaton.states}
        if len(set(perm.values())) != len(perm):
            raise ContractError(f"letter {fmt_letter(a)}: combined map is not a bijection")
        return perm


def extract_profile(A):
    if not validate(A)["co_deterministic"]:
        raise ContractError("profile extraction needs a co-deterministic automaton")
    prof = Profile(A)
    for a in A.alphabet:
        prof.permutation(a)
    return prof
