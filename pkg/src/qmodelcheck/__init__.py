"""Linear-time model checking for quantum automata.

Atomic propositions are closed subspaces; a state satisfies a condition X
when the meet of the propositions containing it lies inside X.
"""
from .classauto import BUECHI, FINITE, ClassicalAutomaton, extract_profile, validate
from .complexla import DEFAULT_TOL, Tolerances
from .eigenreduce import build_ts, check_invariant_auto, check_invariant_via_ts
from .errors import ContractError, DegenerateSpectrum, ModelError
from .invcheck import CheckReport, check_invariant, check_invariant_oracle, check_persistence
from .kernels import BACKEND
from .ltcheck import OMEGA, SAFETY, PropertySpec, check_omega, check_safety
from .product import build_product, product_meet_support
from .props import PropositionSet, label, satisfies
from .qautomaton import QuantumAutomaton, reachable_subspace, replay
from .subspace import Subspace, complement, join, meet, span_of

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BUECHI",
    "CheckReport",
    "ClassicalAutomaton",
    "ContractError",
    "DEFAULT_TOL",
    "DegenerateSpectrum",
    "FINITE",
    "ModelError",
    "OMEGA",
    "PropertySpec",
    "PropositionSet",
    "QuantumAutomaton",
    "SAFETY",
    "Subspace",
    "Tolerances",
    "build_product",
    "build_ts",
    "check_invariant",
    "check_invariant_auto",
    "check_invariant_oracle",
    "check_invariant_via_ts",
    "check_omega",
    "check_persistence",
    "check_safety",
    "complement",
    "extract_profile",
    "join",
    "label",
    "meet",
    "product_meet_support",
    "reachable_subspace",
    "replay",
    "satisfies",
    "span_of",
    "validate",
]
