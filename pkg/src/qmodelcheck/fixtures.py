"""Worked examples: Pauli stabilizers, local-unitary reachability, and a
small catalogue of ready-made models for the command line."""
from collections import deque
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .classauto import BUECHI, FINITE, ClassicalAutomaton, all_letters
from .complexla import DEFAULT_TOL, as_vector
from .errors import ContractError
from .props import PropositionSet
from .qautomaton import QuantumAutomaton, reachable_subspace
from .subspace import complement, contains, full, ray

PAULI = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}
_PHASES = {"": 1, "+": 1, "-": -1, "i": 1j, "+i": 1j, "-i": -1j}


@dataclass(frozen=True)
class PauliWord:
    factors: str
    phase: complex = 1

    def __post_init__(self):
        if not self.factors or set(self.factors) - set(PAULI):
            raise ContractError(f"bad Pauli factors {self.factors!r}")
        if self.phase not in (1, -1, 1j, -1j):
            raise ContractError(f"Pauli phase must be one of +-1, +-i, got {self.phase}")

    @classmethod
    def parse(cls, text):
        """``"XXZ"``, ``"-ZZI"``, ``"iY"``, ``"-iX"``."""
        k = len(text) - len(text.lstrip("+-i"))
        prefix, body = text[:k], text[k:]
        if prefix not in _PHASES:
            raise ContractError(f"bad Pauli phase prefix {prefix!r}")
        return cls(body, _PHASES[prefix])

    @property
    def n(self):
        return len(self.factors)

    def matrix(self):
        return self.phase * reduce(np.kron, (PAULI[f] for f in self.factors))

    def __str__(self):
        sign = {1: "", -1: "-", 1j: "i", -1j: "-i"}[self.phase]
        return sign + self.factors


def ray_propositions(psi, tol=DEFAULT_TOL):
    """Commuting, join-closed AP around a state: its ray, the ray's complement, everything."""
    R = ray(psi, tol)
    return PropositionSet({"psi": R, "perp": complement(R, tol), "top": full(R.dim)}, tol=tol)


def stabilizer_automaton(generators, psi, tol=DEFAULT_TOL):
    """Automaton with one action per generator and initial space span{psi}.

    Returns ``(automaton, propositions, condition)``; the condition is the
    ray span{psi}.
    """
    words = [g if isinstance(g, PauliWord) else PauliWord.parse(g) for g in generators]
    psi = as_vector(psi)
    psi = psi / np.linalg.norm(psi)
    if not words:
        raise ContractError("need at least one generator")
    if len({w.n for w in words}) != 1:
        raise ContractError("generators act on different numbers of qubits")
    if psi.shape[0] != 2 ** words[0].n:
        raise ContractError(f"state has dimension {psi.shape[0]}, generators need {2 ** words[0].n}")
    actions = {}
    for k, w in enumerate(words, 1):
        actions[f"g{k}"] = w.matrix()
    A = QuantumAutomaton(actions, ray(psi, tol), tol)
    return A, ray_propositions(psi, tol), ray(psi, tol)


def local_operations(U_set, n):
    """Embed each single-site unitary on every one of ``n`` sites."""
    ops = {}
    for u_idx, U in enumerate(U_set):
        U = np.asarray(U, dtype=np.complex128)
        h = U.shape[0]
        I = np.eye(h, dtype=np.complex128)
        for site in range(n):
            mats = [U if j == site else I for j in range(n)]
            ops[f"u{u_idx}@{site}"] = reduce(np.kron, mats)
    return ops


def locally_equivalent(U_set, n, phi, target, tol=DEFAULT_TOL, budget=None):
    """Is ``target`` reachable from ``phi`` by local operations, up to phase?

    Returns True or False when decided and None when the search budget of
    ``4**n`` ray expansions (or ``budget``) runs out first.
    """
    phi, target = as_vector(phi), as_vector(target)
    ops = local_operations(U_set, n)
    d = next(iter(ops.values())).shape[0]
    if phi.shape[0] != d or target.shape[0] != d:
        raise ContractError(f"states must have dimension {d}")
    phi = phi / np.linalg.norm(phi)
    target = target / np.linalg.norm(target)

    def same_ray(u, v):
        return abs(np.vdot(u, v)) > 1 - tol.membership_eps

    if same_ray(phi, target):
        return True
    A = QuantumAutomaton(ops, ray(phi, tol), tol)
    if not contains(reachable_subspace(A, tol), target, tol):
        return False
    budget = 4 ** n if budget is None else budget
    seen = [phi]
    queue = deque([phi])
    expansions = 0
    while queue:
        if expansions >= budget:
            return None
        v = queue.popleft()
        expansions += 1
        for U in ops.values():
            w = U @ v
            if same_ray(w, target):
                return True
            if not any(same_ray(w, s) for s in seen):
                seen.append(w)
                queue.append(w)
    return False


# -- catalogue ---------------------------------------------------------------

@dataclass
class Fixture:
    name: str
    description: str
    automaton: object
    ap: object
    kind: str                 # invariant | persistence | safety | omega
    target: object = None     # Subspace for invariant/persistence
    recognizer: object = None  # ClassicalAutomaton for safety/omega


def _ket(bits):
    v = np.zeros(2 ** len(bits), dtype=np.complex128)
    v[int(bits, 2)] = 1.0
    return v


def _single_qubit_ap(tol):
    e0, e1 = _ket("0"), _ket("1")
    return PropositionSet({"A0": ray(e0, tol), "A1": ray(e1, tol), "top": full(2)}, tol=tol)


def _never_leave_a0(ap_names):
    # enters the final state on the first letter without A0
    trans = []
    for a in all_letters(ap_names):
        trans.append(("ok", a, "ok" if "A0" in a else "bad"))
    return ClassicalAutomaton(["ok", "bad"], trans, ["ok"], ["bad"], FINITE)


def _parity_buechi(ap_names):
    # letters with A0 keep the state, letters without it swap even/odd;
    # accepted iff the count of A0-free letters is odd infinitely often
    trans = []
    for a in all_letters(ap_names):
        if "A0" in a:
            trans += [("even", a, "even"), ("odd", a, "odd")]
        else:
            trans += [("even", a, "odd"), ("odd", a, "even")]
    return ClassicalAutomaton(["even", "odd"], trans, ["even"], ["odd"], BUECHI)


def catalogue(tol=DEFAULT_TOL):
    X = PAULI["X"]
    Z = PAULI["Z"]
    e0 = _ket("0")
    ghz = (_ket("000") + _ket("111")) / np.sqrt(2)
    out = []

    A, ap, R = stabilizer_automaton(["Z"], e0, tol)
    out.append(Fixture("z-stabilizer", "single qubit, Z stabilizes |0>", A, ap, "invariant", R))
    A, ap, R = stabilizer_automaton(["XXX", "ZZI", "IZZ"], ghz, tol)
    out.append(Fixture("ghz-stabilizer", "GHZ state under XXX, ZZI, IZZ", A, ap, "invariant", R))
    A, ap, R = stabilizer_automaton(["X", "Z"], e0, tol)
    out.append(Fixture("xz-not-stabilizer", "X moves |0> off its ray", A, ap, "invariant", R))

    ap1 = _single_qubit_ap(tol)
    xa = QuantumAutomaton({"x": X}, ray(e0, tol), tol)
    za = QuantumAutomaton({"z": Z}, ray(e0, tol), tol)
    out.append(Fixture("x-gate", "X flips |0> out of span{|0>}", xa, ap1, "invariant", ray(e0, tol)))
    out.append(Fixture("x-gate-persistence", "persistence of span{|0>} under X", xa, ap1,
                       "persistence", ray(e0, tol)))
    ap0 = PropositionSet({"A0": ray(e0, tol)}, tol=tol)
    out.append(Fixture("x-safety", "never leave A0, under X", xa, ap0, "safety",
                       recognizer=_never_leave_a0(ap0.names)))
    out.append(Fixture("z-safety", "never leave A0, under Z", za, ap0, "safety",
                       recognizer=_never_leave_a0(ap0.names)))
    out.append(Fixture("x-omega", "A0-free letters odd infinitely often, under X", xa, ap0,
                       "omega", recognizer=_parity_buechi(ap0.names)))
    out.append(Fixture("z-omega", "A0-free letters odd infinitely often, under Z", za, ap0,
                       "omega", recognizer=_parity_buechi(ap0.names)))
    return {f.name: f for f in out}
