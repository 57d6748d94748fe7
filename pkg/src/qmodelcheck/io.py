"""JSON model and property files, and report serialization.

Model file::

    {"format_version": 1,
     "dim": 2,
     "actions": {"x": [[0, 1], [1, 0]]},
     "initial": [[1, 0]],
     "propositions": {"A0": [[1, 0]]},
     "flags": {"commuting": true, "join_closed": true}}

Amplitudes are numbers, ``[re, im]`` pairs, or short expression strings
such as ``"1/sqrt(2)"`` or ``"-i/sqrt(2)"``. Initial space and propositions
are given by spanning vectors (orthonormalized on load). ``flags`` is
optional; declared flags are checked against the computed ones.

Property file: ``{"format_version": 1, "kind": ...}`` plus, for
``invariant``/``persistence``, ``"target"``: a list of spanning vectors, a
proposition name, or ``"full"``; for ``safety``/``omega``, ``"automaton"``
with ``states``, ``initial``, ``final`` and ``transitions`` (each
``{"from", "to", "letter": [names]}``, or ``"letters"``: a list of letters
or ``"*"`` for all of 2^AP).
"""
import ast
import cmath
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .classauto import BUECHI, FINITE, ClassicalAutomaton, all_letters, fmt_letter, validate
from .complexla import DEFAULT_TOL, unitarity_violation
from .errors import ContractError, ModelError
from .ltcheck import OMEGA, SAFETY, PropertySpec
from .props import PropositionSet
from .qautomaton import QuantumAutomaton
from .subspace import full, span_of

FORMAT_VERSION = 1
_NAMES = {"pi": math.pi, "e": math.e, "i": 1j, "j": 1j}
_FUNCS = {"sqrt": cmath.sqrt, "exp": cmath.exp, "cos": cmath.cos, "sin": cmath.sin}


def _eval(node):
    if isinstance(node, ast.Expression):
        return _eval(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)):
        return node.value
    if isinstance(node, ast.Name) and node.id in _NAMES:
        return _NAMES[node.id]
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
        v = _eval(node.operand)
        return v if isinstance(node.op, ast.UAdd) else -v
    if isinstance(node, ast.BinOp):
        ops = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b,
               ast.Mult: lambda a, b: a * b, ast.Div: lambda a, b: a / b,
               ast.Pow: lambda a, b: a ** b}
        for k, f in ops.items():
            if isinstance(node.op, k):
                return f(_eval(node.left), _eval(node.right))
    if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
            and node.func.id in _FUNCS and len(node.args) == 1 and not node.keywords):
        return _FUNCS[node.func.id](_eval(node.args[0]))
    raise ValueError("unsupported expression")


def parse_amplitude(x):
    if isinstance(x, bool):
        raise ContractError(f"not an amplitude: {x!r}")
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, list) and len(x) == 2 and all(
            isinstance(p, (int, float, str)) and not isinstance(p, bool) for p in x):
        return complex(parse_amplitude(x[0]).real, parse_amplitude(x[1]).real) \
            if all(not isinstance(p, str) for p in x) else \
            parse_amplitude(x[0]) + 1j * parse_amplitude(x[1])
    if isinstance(x, str):
        try:
            return complex(_eval(ast.parse(x.strip(), mode="eval")))
        except (SyntaxError, ValueError, ZeroDivisionError, TypeError) as exc:
            raise ContractError(f"cannot read amplitude {x!r}: {exc}") from None
    raise ContractError(f"not an amplitude: {x!r}")


def parse_vector(row, dim=None, what="vector"):
    if not isinstance(row, list):
        raise ContractError(f"{what}: expected a list of amplitudes")
    v = np.array([parse_amplitude(x) for x in row], dtype=np.complex128)
    if dim is not None and v.shape[0] != dim:
        raise ContractError(f"{what}: has {v.shape[0]} entries, expected {dim}")
    return v


def parse_matrix(rows, dim, what="matrix"):
    if not isinstance(rows, list) or len(rows) != dim:
        raise ContractError(f"{what}: expected {dim} rows")
    return np.array([parse_vector(r, dim, f"{what} row {k}") for k, r in enumerate(rows)])


def encode_complex(z):
    return [float(z.real), float(z.imag)]


def encode_vector(v):
    return [encode_complex(z) for z in v]


def encode_matrix(M):
    return [encode_vector(r) for r in M]


def _read_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ContractError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ContractError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise ContractError(f"{path}: top level must be an object")
    if data.get("format_version") != FORMAT_VERSION:
        raise ContractError(f"{path}: unsupported format_version {data.get('format_version')!r}")
    return data


def model_from_dict(data, tol=DEFAULT_TOL):
    """Build ``(QuantumAutomaton, PropositionSet)``; collects every problem it finds."""
    problems = []
    try:
        d = int(data["dim"])
        actions_raw = data["actions"]
        initial_raw = data["initial"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelError([(f"missing or malformed field {exc}", None)]) from None
    if d < 1:
        raise ModelError([("dim must be positive", None)])
    actions = {}
    for name, rows in dict(actions_raw).items():
        try:
            U = parse_matrix(rows, d, f"action {name!r}")
        except ContractError as exc:
            problems.append((str(exc), None))
            continue
        viol = unitarity_violation(U)
        if viol > tol.unitarity_eps:
            problems.append((f"action {name!r} is not unitary: max|U^dag U - I|", viol))
        actions[name] = U
    if not actions_raw:
        problems.append(("model declares no actions", None))
    init_vecs = []
    for k, row in enumerate(initial_raw or []):
        try:
            init_vecs.append(parse_vector(row, d, f"initial vector {k}"))
        except ContractError as exc:
            problems.append((str(exc), None))
    if not initial_raw:
        problems.append(("initial subspace is empty", None))
    props = {}
    for name, rows in dict(data.get("propositions", {})).items():
        try:
            vecs = [parse_vector(r, d, f"proposition {name!r} vector {k}")
                    for k, r in enumerate(rows)]
        except ContractError as exc:
            problems.append((str(exc), None))
            continue
        props[name] = span_of(vecs, dim=d, tol=tol)
    if problems:
        raise ModelError(problems)
    initial = span_of(init_vecs, dim=d, tol=tol)
    if initial.is_zero():
        raise ModelError([("initial subspace is the zero subspace", None)])
    A = QuantumAutomaton(actions, initial, tol)
    ap = PropositionSet(props, dim=d, tol=tol)
    declared = data.get("flags", {}) or {}
    if declared.get("commuting") and not ap.commuting:
        problems.append(("flags.commuting declared but propositions do not commute: "
                         "max commutator", ap.max_commutator))
    if declared.get("join_closed") and not ap.join_closed:
        a, b = ap.join_failures[0]
        problems.append((f"flags.join_closed declared but {a!r} v {b!r} is not a member", None))
    if problems:
        raise ModelError(problems)
    return A, ap


def load_model(path, tol=DEFAULT_TOL):
    return model_from_dict(_read_json(path), tol)


def model_to_dict(A, ap):
    return {
        "format_version": FORMAT_VERSION,
        "dim": A.dim,
        "actions": {n: encode_matrix(U) for n, U in A.actions.items()},
        "initial": [encode_vector(v) for v in A.initial.vectors],
        "propositions": {n: [encode_vector(v) for v in X.vectors] for n, X in ap.props.items()},
        "flags": {"commuting": ap.commuting, "join_closed": ap.join_closed},
    }


def dump_model(A, ap, path):
    Path(path).write_text(json.dumps(model_to_dict(A, ap), indent=1))


@dataclass
class PropertyFile:
    kind: str
    target: object = None      # Subspace for invariant/persistence
    spec: object = None        # PropertySpec for safety/omega


def _parse_letter(raw, ap_names, where):
    if not isinstance(raw, list) or not all(isinstance(n, str) for n in raw):
        raise ContractError(f"{where}: a letter is a list of proposition names")
    unknown = set(raw) - set(ap_names)
    if unknown:
        raise ContractError(f"{where}: unknown propositions {sorted(unknown)}")
    return frozenset(raw)


def automaton_from_dict(data, ap_names, mode):
    try:
        states = list(data["states"])
        initials = list(data["initial"])
        finals = list(data.get("final", []))
        trans_raw = list(data["transitions"])
    except (KeyError, TypeError) as exc:
        raise ModelError([(f"automaton: missing or malformed field {exc}", None)]) from None
    trans = []
    for k, t in enumerate(trans_raw):
        where = f"transition {k}"
        try:
            src, dst = t["from"], t["to"]
        except (KeyError, TypeError):
            raise ModelError([(f"{where}: needs 'from' and 'to'", None)]) from None
        if "letters" in t:
            if t["letters"] == "*":
                letters = all_letters(ap_names)
            else:
                letters = [_parse_letter(a, ap_names, where) for a in t["letters"]]
        else:
            letters = [_parse_letter(t.get("letter", []), ap_names, where)]
        trans.extend((src, a, dst) for a in letters)
    return ClassicalAutomaton(states, trans, initials, finals, mode)


def automaton_to_dict(CA):
    return {
        "states": list(CA.states),
        "initial": list(CA.initials),
        "final": list(CA.finals),
        "transitions": [{"from": p, "letter": sorted(a), "to": q} for p, a, q in CA.transitions],
    }


def property_from_dict(data, ap, tol=DEFAULT_TOL):
    kind = data.get("kind")
    if kind in ("invariant", "persistence"):
        target = data.get("target")
        if target == "full":
            X = full(ap.dim)
        elif isinstance(target, str):
            if target not in ap.props:
                raise ContractError(f"target names unknown proposition {target!r}")
            X = ap.props[target]
        elif isinstance(target, list):
            X = span_of([parse_vector(r, ap.dim, f"target vector {k}")
                         for k, r in enumerate(target)], dim=ap.dim, tol=tol)
        else:
            raise ContractError("invariant property needs a 'target'")
        return PropertyFile(kind, target=X)
    if kind in (SAFETY, OMEGA):
        mode = FINITE if kind == SAFETY else BUECHI
        CA = automaton_from_dict(data.get("automaton") or {}, ap.names, mode)
        spec = PropertySpec(kind, CA, ap, bool(data.get("sound_for_violation", False)))
        flags = validate(CA)
        if not flags["reversible"] and not spec.sound_for_violation:
            raise ModelError([("recognizer is not reversible and sound_for_violation is not set",
                               None)])
        return PropertyFile(kind, spec=spec)
    raise ContractError(f"unknown property kind {kind!r}")


def load_property(path, ap, tol=DEFAULT_TOL):
    return property_from_dict(_read_json(path), ap, tol)


def property_to_dict(prop):
    out = {"format_version": FORMAT_VERSION, "kind": prop.kind}
    if prop.target is not None:
        out["target"] = [encode_vector(v) for v in prop.target.vectors]
        if prop.target.is_zero():
            out["target"] = []
    else:
        out["automaton"] = automaton_to_dict(prop.spec.recognizer)
        if prop.spec.sound_for_violation:
            out["sound_for_violation"] = True
    return out


def dump_property(prop, path):
    Path(path).write_text(json.dumps(property_to_dict(prop), indent=1))


def report_to_dict(rep, tol=DEFAULT_TOL):
    out = {
        "verdict": rep.verdict,
        "kind": rep.kind,
        "engine": rep.engine,
        "visited_rank": rep.visited_rank,
        "iterations": rep.iterations,
        "tolerances": tol.as_dict(),
        "witness": None,
    }
    if rep.witness is not None:
        out["witness"] = {
            "start_index": rep.witness.start_index,
            "actions": list(rep.witness.steps),
            "states": [encode_vector(s) for s in rep.witness.states],
        }
    ex = rep.extra
    if "trace" in ex:
        out["trace"] = [sorted(a) for a in ex["trace"]]
        out["witness_validated"] = ex.get("witness_validated")
    for key in ("fallback", "withheld", "ts_path", "product_dim", "basis_compatible"):
        if key in ex:
            out[key] = ex[key]
    return out


def report_to_text(rep, with_trace=False):
    word = {True: "HOLDS", False: "VIOLATED", None: "INCONCLUSIVE"}[rep.verdict]
    lines = [f"{rep.kind}: {word}  (engine {rep.engine}, visited rank {rep.visited_rank}, "
             f"iterations {rep.iterations})"]
    if "fallback" in rep.extra:
        lines.append(f"  eigen reduction unavailable: {rep.extra['fallback']}")
    if "withheld" in rep.extra:
        lines.append(f"  {rep.extra['withheld']}")
    if rep.verdict and rep.extra.get("basis_compatible") is False:
        lines.append("  note: actions or propositions are not diagonal in the product basis; "
                     "a passing verdict may miss violating traces")
    if with_trace and rep.witness is not None:
        w = rep.witness
        lines.append(f"  witness from initial basis vector {w.start_index}: "
                     f"{' '.join(w.steps) if w.steps else '(no steps)'}")
        for k, s in enumerate(w.states):
            amps = " ".join(f"{z.real:+.6f}{z.imag:+.6f}i" for z in s)
            lines.append(f"    state {k}: {amps}")
        if "trace" in rep.extra:
            lines.append("  trace: " + " ".join(fmt_letter(a) for a in rep.extra["trace"]))
            lines.append(f"  witness validated: {rep.extra['witness_validated']}")
    return "\n".join(lines)
