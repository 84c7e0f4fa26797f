"""``qinfo`` command-line interface.

Exit codes: 0 success, 1 validation or applicability failure, 2 usage or
parse failure. Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import bloch, coherence, entanglement, measurement, witness
from .errors import QInfoError
from .io import (
    ParseError,
    StateDocument,
    encode_matrix,
    is_named_state,
    named_document,
    operator_document,
    parse_operator_set,
    parse_state_file,
    random_state,
)
from .report import QUANTITIES, ReportOptions, applicable_quantities, run_report
from .states import check_unitary

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dims_arg(text: str) -> tuple[int, int]:
    try:
        a, b = text.lower().split("x")
        dims = (int(a), int(b))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected AxB, e.g. 2x2, got {text!r}") from None
    if min(dims) < 1:
        raise argparse.ArgumentTypeError("dimensions must be positive")
    return dims


def load_state(source: str) -> StateDocument:
    """Read a state from a file path, ``-`` for stdin, or a built-in name."""
    if source == "-":
        return parse_state_file(sys.stdin.read())
    path = Path(source)
    if path.is_file():
        return parse_state_file(path.read_text(encoding="utf-8"))
    if is_named_state(source):
        return named_document(source)
    raise UsageError(f"{source!r} is neither a readable file nor a built-in state name")


def _basis(spec: str | None, dim: int) -> tuple[np.ndarray | None, str]:
    if spec is None or spec == "computational":
        return None, "computational"
    if spec == "hadamard":
        n = int(round(math.log2(dim)))
        if 2**n != dim:
            raise UsageError(f"hadamard basis needs a power-of-two dimension, got {dim}")
        h = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
        u = np.eye(1, dtype=complex)
        for _ in range(n):
            u = np.kron(u, h)
        return u, "hadamard"
    path = Path(spec)
    if not path.is_file():
        raise UsageError(f"basis must be computational, hadamard or a file, got {spec!r}")
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
        u = np.array([[complex(*z) if isinstance(z, list) else complex(z) for z in row] for row in obj["payload"]])
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ParseError(f"basis file {spec}: {exc}") from None
    return check_unitary(u), str(path)


def _options(args, doc: StateDocument | None = None) -> ReportOptions:
    opts = ReportOptions(tol=args.tol, dims=args.dims, seed=args.seed)
    if getattr(args, "budget", None) is not None:
        opts.budget = args.budget
    if doc is not None and getattr(args, "basis", None) is not None:
        opts.basis, opts.basis_name = _basis(args.basis, doc.density().dim)
    if getattr(args, "op_a", None):
        opts.correlator_ops = (args.op_a, args.op_b)
    if getattr(args, "a1", None) is not None:
        opts.chsh_axes = (tuple(args.a1), tuple(args.a2), tuple(args.b1), tuple(args.b2))
    return opts


def _emit(args, obj: dict, text: str) -> None:
    if args.json:
        print(json.dumps(obj, indent=2))
    else:
        print(text)


def _report_command(args, names) -> int:
    doc = load_state(args.state)
    opts = _options(args, doc)
    names = names(doc, opts) if callable(names) else names
    rep = run_report(doc, names, opts)
    _emit(args, rep.to_obj(), rep.to_text())
    return EXIT_OK if rep.ok else EXIT_INVALID


def cmd_validate(args) -> int:
    doc = load_state(args.state)
    rho = doc.density()
    dims = args.dims or doc.resolved_dims()
    if dims is not None:
        rho = rho.with_dims(dims)
    obj = {
        "valid": True,
        "kind": doc.kind,
        "label": doc.label,
        "dim": rho.dim,
        "dims": None if dims is None else list(dims),
        "pure_input": doc.pure_vector() is not None,
    }
    _emit(args, obj, f"valid {doc.kind} state, dim {rho.dim}" + ("" if dims is None else f", split {dims[0]}x{dims[1]}"))
    return EXIT_OK


def cmd_analyze(args) -> int:
    return _report_command(args, applicable_quantities)


def cmd_report(args) -> int:
    names = [q.strip() for q in args.quantities.split(",") if q.strip()]
    return _report_command(args, names)


def cmd_bloch(args) -> int:
    doc = load_state(args.state)
    rho = doc.density()
    r = bloch.to_bloch(rho)
    obj = {"bloch": r.as_array().tolist(), "length": r.length, "purity": (1 + r.length**2) / 2}
    if r.length > bloch.ZERO_TOL:
        theta, phi = r.angles()
        spec = bloch.bloch_spectrum(r)
        obj.update(theta=theta, phi=phi, eigenvalues=spec.eigenvalues.tolist())
    text = "\n".join(f"{k}: {v}" for k, v in obj.items())
    _emit(args, obj, text)
    return EXIT_OK


def cmd_schmidt(args) -> int:
    return _report_command(args, ["schmidt", "schmidt-number", "entanglement-entropy"])


def cmd_entangle(args) -> int:
    def names(doc, opts):
        dims = opts.dims or doc.resolved_dims()
        out = ["negativity", "ppt"]
        if dims is not None and tuple(dims) == (2, 2):
            out += ["concurrence", "entanglement-of-formation"]
        if args.relative_entropy:
            out.append("relative-entropy-of-entanglement")
        return out

    return _report_command(args, names)


def cmd_coherence(args) -> int:
    return _report_command(args, ["l1-coherence", "relative-entropy-coherence"])


def cmd_correlate(args) -> int:
    return _report_command(args, ["correlator", "uncorrelated"])


def cmd_witness_chsh(args) -> int:
    doc = load_state(args.state)
    axes = (args.a1, args.a2, args.b1, args.b2)
    w = witness.chsh_witness(*axes)
    value, verdict = witness.evaluate_witness(w, doc.density())
    if args.export:
        Path(args.export).write_text(json.dumps(operator_document(w.operator, w.description), indent=2))
    obj = {
        "value": value,
        "verdict": verdict,
        "axes": {k: witness.unit_axis(v).tolist() for k, v in zip(("a1", "a2", "b1", "b2"), axes)},
    }
    _emit(args, obj, f"Tr(W rho) = {value:.10g}  [{verdict}]\n{w.description}")
    return EXIT_OK


def cmd_measure(args) -> int:
    doc = load_state(args.state)
    rho = doc.density()
    if args.kraus:
        ops = parse_operator_set(Path(args.kraus).read_text(encoding="utf-8"))
        if isinstance(ops, measurement.PVMSet):
            ops = measurement.KrausSet(ops.projectors, ops.labels)
        elif isinstance(ops, measurement.POVMSet):
            ops = measurement.kraus_from_povm(ops)
        source = args.kraus
    else:
        pvm = measurement.basis_pvm(dim=rho.dim)
        ops = measurement.KrausSet(pvm.projectors, pvm.labels)
        source = "computational basis"
    outcomes, average = measurement.measure_general(rho, ops)
    obj = {
        "measurement": source,
        "outcomes": [
            {
                "label": o.label,
                "probability": o.probability,
                "post_state": None if o.post_state is None else encode_matrix(o.post_state.matrix),
            }
            for o in outcomes
        ],
        "average_state": encode_matrix(average.matrix),
    }
    lines = [f"measurement: {source}"]
    lines += [f"  outcome {o.label}: p = {o.probability:.10g}" for o in outcomes]
    lines.append("average state:\n" + np.array2string(average.matrix, precision=6, suppress_small=True))
    _emit(args, obj, "\n".join(lines))
    return EXIT_OK


def cmd_random(args) -> int:
    doc = random_state(args.kind, args.dim, args.rank, args.seed, args.dims)
    print(doc.to_json())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured JSON output")
    common.add_argument("--tol", type=float, default=None, help="tolerance for verdicts")
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--dims", type=_dims_arg, default=None, help="bipartite split AxB")

    parser = argparse.ArgumentParser(prog="qinfo", description="Quantum-information numerics on density matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    def state_cmd(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("state", help="state file, '-' for stdin, or a built-in name such as bell-phi-plus")
        p.set_defaults(func=func)
        return p

    state_cmd("validate", cmd_validate, "check that a state file is valid")
    p = state_cmd("analyze", cmd_analyze, "every applicable quantity")
    p.add_argument("--basis", default=None)
    p.add_argument("--budget", type=int, default=None)
    state_cmd("bloch", cmd_bloch, "Bloch vector of a qubit")
    state_cmd("schmidt", cmd_schmidt, "Schmidt decomposition of a bipartite pure state")
    p = state_cmd("entangle", cmd_entangle, "entanglement measures")
    p.add_argument("--relative-entropy", action="store_true", help="also bound the relative entropy of entanglement")
    p.add_argument("--budget", type=int, default=None)

    p = state_cmd("witness-chsh", cmd_witness_chsh, "evaluate a CHSH witness")
    for name, default in zip(("a1", "a2", "b1", "b2"), witness.GOOD_CHSH_AXES):
        p.add_argument(f"--{name}", type=float, nargs=3, default=list(default), metavar=("X", "Y", "Z"))
    p.add_argument("--export", default=None, help="write the witness operator to this file")

    p = state_cmd("measure", cmd_measure, "general measurement")
    p.add_argument("--kraus", default=None, help="operator-set file (pvm, kraus or povm)")
    p = state_cmd("coherence", cmd_coherence, "l1 and relative-entropy coherence")
    p.add_argument("--basis", default="computational", help="computational, hadamard or a unitary file")
    p = state_cmd("correlate", cmd_correlate, "two-point correlator")
    p.add_argument("--op-a", default="z", choices=["i", "x", "y", "z"])
    p.add_argument("--op-b", default="z", choices=["i", "x", "y", "z"])

    p = state_cmd("report", cmd_report, "selected quantities")
    p.add_argument("--quantities", "-q", required=True, help="comma-separated: " + ", ".join(QUANTITIES))
    p.add_argument("--basis", default=None)
    p.add_argument("--op-a", default=None, choices=["i", "x", "y", "z"])
    p.add_argument("--op-b", default="z", choices=["i", "x", "y", "z"])
    p.add_argument("--budget", type=int, default=None)
    for name in ("a1", "a2", "b1", "b2"):
        p.add_argument(f"--{name}", type=float, nargs=3, default=None, metavar=("X", "Y", "Z"))

    p = sub.add_parser("random", parents=[common], help="random state document")
    p.add_argument("--kind", choices=["pure", "mixed"], default="pure")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--rank", type=int, default=None)
    p.set_defaults(func=cmd_random)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "a1", None) is not None and getattr(args, "command") == "report":
        if any(getattr(args, n) is None for n in ("a1", "a2", "b1", "b2")):
            print("error: give all four of --a1 --a2 --b1 --b2", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QInfoError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
