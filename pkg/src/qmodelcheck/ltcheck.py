"""Safety and omega-regular checking through the product construction.

A reversible safety property, given by a reversible automaton for its
minimal bad prefixes, holds iff the product satisfies the invariant
H (x) span{|q> : q not final}. For a reversible Buechi automaton of the
complement language the same condition is checked as a persistence
property, which in finite dimension is the invariant again.
"""
from dataclasses import dataclass

from .classauto import BUECHI, FINITE, accepts_word, validate
from .complexla import DEFAULT_TOL
from .errors import ContractError
from .invcheck import CheckReport, check_invariant, check_persistence, invariant_dfs
from .product import (basis_compatible, build_product, product_meet_support,
                      product_propositions, product_satisfies)
from .props import label
from .qautomaton import replay

SAFETY = "safety"
OMEGA = "omega"


@dataclass
class PropertySpec:
    kind: str
    recognizer: object          # ClassicalAutomaton
    ap: object                  # PropositionSet
    # run non-reversible (co-deterministic) recognizers, reporting violations only
    sound_for_violation: bool = False


def _reaches_final(CA, word):
    current = set(CA.initials)
    for a in word:
        current = CA.step_set(current, a)
        if not current:
            return False
    return bool(current & set(CA.finals))


def _prepare(A, spec, kind, mode):
    if spec.kind != kind:
        raise ContractError(f"expected a {kind} property, got {spec.kind!r}")
    CA = spec.recognizer
    if CA.mode != mode:
        raise ContractError(f"{kind} properties need a {mode} recognizer, got {CA.mode}")
    if not CA.transitions:
        raise ContractError("recognizer has no transitions (empty alphabet)")
    if set(CA.initials) & set(CA.finals):
        raise ContractError(
            "recognizer accepts the empty word (initial state is final); "
            "the property is empty and is not checked")
    flags = validate(CA)
    if not flags["reversible"]:
        if not flags["co_deterministic"]:
            raise ContractError("recognizer is not co-deterministic; no product exists")
        if not spec.sound_for_violation:
            raise ContractError(
                "recognizer is not reversible: only violations found through the "
                "product are conclusive (enable sound_for_violation to run anyway)")
    return flags


def _run(A, spec, kind, basis, tol):
    flags = _prepare(A, spec, kind, FINITE if kind == SAFETY else BUECHI)
    pa = build_product(A, spec.ap, spec.recognizer, basis=basis, tol=tol)
    if pa.base is None:
        # no initial letter starts a run: nothing is ever recognized
        rep = CheckReport(verdict=True, engine="product-dfs", kind=kind)
    else:
        good = pa.good_states()
        rep = invariant_dfs(pa.base, lambda v: product_satisfies(pa, v, good, tol),
                            tol, kind=kind)
        rep.engine = "product-dfs"
    rep.extra["product_dim"] = pa.dim
    rep.extra["reversible"] = flags["reversible"]
    # a passing verdict is only exact inside this class; see basis_compatible
    rep.extra["basis_compatible"] = basis_compatible(pa, A, tol)
    if not rep.verdict:
        _project_witness(A, spec, pa, rep, tol)
    elif not flags["reversible"]:
        rep.extra["withheld"] = "recognizer is not reversible; a passing verdict is not conclusive"
        rep.verdict = None
    rep.extra["product"] = pa
    return rep


def _project_witness(A, spec, pa, rep, tol):
    pw = rep.witness
    i, q = pa.initial_pairs[pw.start_index]
    frag = replay(A, pa.hbasis[i], pw.steps, start_index=i)
    trace = [label(spec.ap, s, tol) for s in frag.states]
    final_support = set(pa.classical.finals) & product_meet_support(pa, pw.final, tol)
    if spec.kind == SAFETY:
        recognized = accepts_word(spec.recognizer, trace)
    else:
        recognized = _reaches_final(spec.recognizer, trace)
    rep.extra["product_witness"] = pw
    rep.extra["start_pair"] = (i, q)
    rep.extra["trace"] = trace
    rep.extra["witness_validated"] = bool(recognized and final_support)
    rep.witness = frag


def check_safety(A, spec, basis=None, tol=DEFAULT_TOL):
    return _run(A, spec, SAFETY, basis, tol)


def check_omega(A, spec, basis=None, tol=DEFAULT_TOL):
    return _run(A, spec, OMEGA, basis, tol)


def check_persistence_direct(A, ap, X, tol=DEFAULT_TOL):
    return check_persistence(A, ap, X, tol)


def product_reference(A, spec, basis=None, tol=DEFAULT_TOL, persistence=False):
    """Product check through the generic checker over materialized cylinder propositions.

    Exponential in |Q|; meant as an independent path for testing.
    """
    pa = build_product(A, spec.ap, spec.recognizer, basis=basis, tol=tol)
    if pa.base is None:
        return True
    ap = product_propositions(pa, tol)
    fn = check_persistence if persistence else check_invariant
    return fn(pa.base, ap, pa.condition(), tol).verdict
