"""Command line front end: ``qmc <command> [options]``.

Exit codes: 0 the property holds, 1 it is violated, 2 bad input or a
violated precondition, 3 no conclusive verdict.
"""
import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import io
from .complexla import DEFAULT_TOL
from .eigenreduce import build_ts, check_invariant_auto, check_invariant_via_ts, dichotomy_residual
from .errors import ContractError
from .fixtures import PAULI, catalogue, locally_equivalent
from .invcheck import check_invariant, check_persistence
from .ltcheck import OMEGA, SAFETY, PropertySpec, check_omega, check_safety
from .qautomaton import reachable_subspace

EXIT_HOLDS, EXIT_VIOLATED, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3

_GATES = dict(PAULI)
_GATES["H"] = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
_GATES["S"] = np.diag([1, 1j]).astype(np.complex128)
_GATES["T"] = np.diag([1, np.exp(1j * np.pi / 4)]).astype(np.complex128)

_CHECKS = {
    "check-invariant": "invariant",
    "check-persistence": "persistence",
    "check-safety": SAFETY,
    "check-omega": OMEGA,
}


def _parser():
    p = argparse.ArgumentParser(prog="qmc", description="Linear-time model checking of quantum automata.")
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--model", metavar="PATH", help="model file (JSON)")
    src.add_argument("--fixture", metavar="NAME", help="use a built-in fixture instead of files")
    common.add_argument("--tolerance", type=float, metavar="EPS", help="membership tolerance")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common], help="load a model and report its flags")
    sub.add_parser("reachable", parents=[common], help="print a basis of the reachable subspace")
    sub.add_parser("eigen-reduce", parents=[common], help="print the eigenstate transition system")
    for name in _CHECKS:
        c = sub.add_parser(name, parents=[common])
        c.add_argument("--property", metavar="PATH", help="property file (JSON)")
        c.add_argument("--trace", action="store_true", help="print the counterexample")
        if name in ("check-invariant", "check-persistence"):
            c.add_argument("--engine", choices=("dfs", "eigen", "auto"), default="dfs")

    fx = sub.add_parser("fixtures", help="built-in examples")
    fsub = fx.add_subparsers(dest="fixture_command", required=True)
    fsub.add_parser("list")
    em = fsub.add_parser("emit", help="write a fixture as model.json and property.json")
    em.add_argument("name")
    em.add_argument("outdir")
    le = fsub.add_parser("local-equiv", help="reachability of a state under local gates, up to phase")
    le.add_argument("--qubits", type=int, required=True)
    le.add_argument("--gates", default="H,S", help=f"comma list from {','.join(sorted(_GATES))}")
    le.add_argument("--phi", required=True, help="JSON list of amplitudes")
    le.add_argument("--target", required=True, help="JSON list of amplitudes")
    le.add_argument("--budget", type=int, help="ray expansions before giving up")
    return p


def _tolerances(args):
    eps = getattr(args, "tolerance", None)
    if eps is None:
        return DEFAULT_TOL
    if not eps > 0:
        raise ContractError("--tolerance must be positive")
    return DEFAULT_TOL.with_membership(eps)


def _load(args, tol, want_property):
    """Return (automaton, ap, PropertyFile or None)."""
    if args.fixture:
        cat = catalogue(tol)
        if args.fixture not in cat:
            raise ContractError(f"unknown fixture {args.fixture!r}; try 'qmc fixtures list'")
        fx = cat[args.fixture]
        prop = None
        if want_property:
            if getattr(args, "property", None):
                prop = io.load_property(args.property, fx.ap, tol)
            else:
                spec = None
                if fx.recognizer is not None:
                    spec = PropertySpec(fx.kind, fx.recognizer, fx.ap)
                prop = io.PropertyFile(fx.kind, target=fx.target, spec=spec)
        return fx.automaton, fx.ap, prop
    if not args.model:
        raise ContractError("give --model PATH or --fixture NAME")
    A, ap = io.load_model(args.model, tol)
    prop = None
    if want_property:
        if not getattr(args, "property", None):
            raise ContractError("this command needs --property PATH")
        prop = io.load_property(args.property, ap, tol)
    return A, ap, prop


def _emit(args, payload, text):
    if args.format == "structured":
        print(json.dumps(payload, indent=1, sort_keys=True))
    else:
        print(text)


def _verdict_code(verdict):
    return {True: EXIT_HOLDS, False: EXIT_VIOLATED, None: EXIT_INCONCLUSIVE}[verdict]


def _cmd_validate(args, tol):
    A, ap, _ = _load(args, tol, False)
    info = {
        "dim": A.dim,
        "actions": A.action_names,
        "initial_rank": A.initial.rank,
        "propositions": {n: X.rank for n, X in ap.props.items()},
        "commuting": ap.commuting,
        "max_commutator": ap.max_commutator,
        "join_closed": ap.join_closed,
        "join_failures": [list(f) for f in ap.join_failures],
        "tolerances": tol.as_dict(),
    }
    lines = [f"dim {A.dim}, actions {', '.join(A.action_names)}, initial rank {A.initial.rank}",
             f"propositions: {', '.join(f'{n} (rank {r})' for n, r in info['propositions'].items()) or 'none'}",
             f"commuting: {ap.commuting} (max commutator {ap.max_commutator:.3e})",
             f"join-closed: {ap.join_closed}"]
    for a, b in ap.join_failures:
        lines.append(f"  join of {a} and {b} is not a proposition")
    _emit(args, info, "\n".join(lines))
    return EXIT_HOLDS


def _cmd_reachable(args, tol):
    A, _, _ = _load(args, tol, False)
    stats = {}
    RS = reachable_subspace(A, tol, stats)
    payload = {"dim": A.dim, "rank": RS.rank, "basis": [io.encode_vector(v) for v in RS.vectors],
               "rounds": stats.get("rounds"), "tolerances": tol.as_dict()}
    lines = [f"reachable subspace: rank {RS.rank} of {A.dim}"]
    for v in RS.vectors:
        lines.append("  " + " ".join(f"{z.real:+.6f}{z.imag:+.6f}i" for z in v))
    _emit(args, payload, "\n".join(lines))
    return EXIT_HOLDS


def _cmd_eigen(args, tol):
    A, _, _ = _load(args, tol, False)
    ts = build_ts(A, tol)
    RS = reachable_subspace(A, tol)
    seen, _ = ts.reachable()
    payload = {
        "states": [{"name": n, "vector": io.encode_vector(v), "action": ts.origin[n][0],
                    "eigenvalue": io.encode_complex(ts.origin[n][1]),
                    "initial": n in ts.initials} for n, v in ts.states],
        "transitions": sorted([a, b] for a, b in ts.transitions),
        "reachable": seen,
        "dichotomy_residual": dichotomy_residual(ts, RS),
        "tolerances": tol.as_dict(),
    }
    text = ts.to_text() + f"\nreachable: {' '.join(seen)}\n" \
        f"dichotomy residual: {payload['dichotomy_residual']:.3e}"
    _emit(args, payload, text)
    return EXIT_HOLDS


def _cmd_check(args, tol):
    kind = _CHECKS[args.command]
    A, ap, prop = _load(args, tol, True)
    if kind in ("invariant", "persistence"):
        if prop.target is None:
            raise ContractError(f"{args.command} needs an invariant or persistence property, "
                                f"got {prop.kind}")
        engine = args.engine
        if engine == "dfs":
            fn = check_invariant if kind == "invariant" else check_persistence
            rep = fn(A, ap, prop.target, tol)
        elif engine == "eigen":
            rep = check_invariant_via_ts(A, ap, prop.target, tol)
        else:
            rep = check_invariant_auto(A, ap, prop.target, tol)
        rep.kind = kind
    else:
        if prop.spec is None or prop.kind != kind:
            raise ContractError(f"{args.command} needs a {kind} property, got {prop.kind}")
        rep = (check_safety if kind == SAFETY else check_omega)(A, prop.spec, tol=tol)
    _emit(args, io.report_to_dict(rep, tol), io.report_to_text(rep, args.trace))
    return _verdict_code(rep.verdict)


def _parse_state(text, what):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ContractError(f"{what}: not JSON ({exc})") from None
    return io.parse_vector(raw, what=what)


def _cmd_fixtures(args, tol):
    if args.fixture_command == "list":
        for name, fx in catalogue(tol).items():
            print(f"{name:20s} {fx.kind:12s} {fx.description}")
        return EXIT_HOLDS
    if args.fixture_command == "emit":
        cat = catalogue(tol)
        if args.name not in cat:
            raise ContractError(f"unknown fixture {args.name!r}")
        fx = cat[args.name]
        out = Path(args.outdir)
        out.mkdir(parents=True, exist_ok=True)
        io.dump_model(fx.automaton, fx.ap, out / "model.json")
        spec = PropertySpec(fx.kind, fx.recognizer, fx.ap) if fx.recognizer is not None else None
        io.dump_property(io.PropertyFile(fx.kind, target=fx.target, spec=spec), out / "property.json")
        print(f"wrote {out / 'model.json'} and {out / 'property.json'}")
        return EXIT_HOLDS
    gates = [g.strip() for g in args.gates.split(",") if g.strip()]
    unknown = [g for g in gates if g not in _GATES]
    if unknown or not gates:
        raise ContractError(f"unknown gates {unknown}; choose from {sorted(_GATES)}")
    phi = _parse_state(args.phi, "--phi")
    target = _parse_state(args.target, "--target")
    res = locally_equivalent([_GATES[g] for g in gates], args.qubits, phi, target, tol, args.budget)
    print({True: "reachable", False: "not reachable", None: "inconclusive (search budget exhausted)"}[res])
    return _verdict_code(res)


def run_cli(argv=None):
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_HOLDS
    try:
        tol = _tolerances(args)
        if args.command == "fixtures":
            return _cmd_fixtures(args, tol)
        if args.command == "validate":
            return _cmd_validate(args, tol)
        if args.command == "reachable":
            return _cmd_reachable(args, tol)
        if args.command == "eigen-reduce":
            return _cmd_eigen(args, tol)
        return _cmd_check(args, tol)
    except (ContractError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
