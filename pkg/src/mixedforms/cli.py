"""Command-line front end: JSON-lines bodies/matrices in, reports out.

Input files hold one record per line:

    {"type": "box", "dim": 2, "sides": [1, 2], "anchor": [0, 0]}
    {"type": "zonotope", "dim": 2, "generators": [[1, 0], [1, 1]]}
    {"type": "polygon_fan", "angles": [...], "support": [...]}
    {"type": "matrix", "data": [[2, 0], [0, 3]]}

Numbers are JSON numbers or "p/q" strings; integers and "p/q" stay exact.
Exit codes: 0 success / inequality holds, 1 inequality violated or verdict
failed, 2 input or validation error.
"""

import argparse
import dataclasses
import json
import sys
from fractions import Fraction

import numpy as np

from . import afop, mixdisc, mixvol, spectral
from .exact import InputError, format_scalar, is_exact, parse_scalar
from .geom import Box, PolygonFan, Zonotope
from .mixvol import InequalityReport


def _scalar_out(x):
    """Exact values as "p/q" strings, floats as JSON numbers."""
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return format_scalar(x, exact=True)
    return float(x)


def _jsonable(obj):
    if dataclasses.is_dataclass(obj):
        return {
            f.name: _jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)
        }
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, Fraction):
        return _scalar_out(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def load_records(path):
    """Parse a JSON-lines file into (lineno, record) pairs."""
    records = []
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: cannot open: {exc.strerror}") from exc
    with fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputError(f"{path}:{lineno}: invalid JSON ({exc.msg})") from exc
            if not isinstance(obj, dict) or "type" not in obj:
                raise InputError(f"{path}:{lineno}: record must be an object with a 'type' field")
            records.append((lineno, obj))
    if not records:
        raise InputError(f"{path}: no records found")
    return records


def _numbers(record, key, path, lineno):
    if key not in record:
        raise InputError(f"{path}:{lineno}: missing field {key!r}")
    value = record[key]
    if not isinstance(value, list):
        raise InputError(f"{path}:{lineno}: field {key!r} must be a list")
    return [parse_scalar(v) for v in value]


def record_to_body(path, lineno, record):
    kind = record["type"]
    try:
        if kind == "box":
            sides = _numbers(record, "sides", path, lineno)
            anchor = (
                _numbers(record, "anchor", path, lineno) if "anchor" in record else None
            )
            body = Box(sides, anchor)
        elif kind == "zonotope":
            gens = record.get("generators")
            if not isinstance(gens, list):
                raise InputError("missing 'generators' list")
            gens = [[parse_scalar(v) for v in g] for g in gens]
            dim = record.get("dim", len(gens[0]) if gens else None)
            if dim is None:
                raise InputError("zonotope needs 'dim' or at least one generator")
            anchor = (
                _numbers(record, "anchor", path, lineno) if "anchor" in record else None
            )
            body = Zonotope(dim, gens, anchor)
        elif kind == "polygon_fan":
            angles = [float(v) for v in _numbers(record, "angles", path, lineno)]
            support = [float(v) for v in _numbers(record, "support", path, lineno)]
            body = PolygonFan(angles, support)
        else:
            raise InputError(f"unknown body type {kind!r}")
    except InputError as exc:
        msg = str(exc)
        if not msg.startswith(f"{path}:"):
            msg = f"{path}:{lineno}: {msg}"
        raise InputError(msg) from None
    declared = record.get("dim")
    if declared is not None and int(declared) != body.dim:
        raise InputError(f"{path}:{lineno}: declared dim {declared} != actual {body.dim}")
    return body


def record_to_matrix(path, lineno, record):
    if record["type"] != "matrix":
        raise InputError(f"{path}:{lineno}: expected a matrix record, got {record['type']!r}")
    data = record.get("data")
    if not isinstance(data, list) or not data:
        raise InputError(f"{path}:{lineno}: matrix record needs a nonempty 'data' field")
    rows = [[parse_scalar(v) for v in row] for row in data]
    if any(len(r) != len(rows) for r in rows):
        raise InputError(f"{path}:{lineno}: matrix must be square")
    return rows


def _bodies_from(path):
    return [record_to_body(path, lineno, rec) for lineno, rec in load_records(path)]


def _matrices_from(path):
    return [record_to_matrix(path, lineno, rec) for lineno, rec in load_records(path)]


def _verdict_tol(args) -> float:
    return args.tol if args.tol is not None else 1e-9


def _inequality_dict(report: InequalityReport) -> dict:
    return {
        "lhs": _scalar_out(report.lhs),
        "rhs": _scalar_out(report.rhs),
        "gap": _scalar_out(report.gap),
        "verdict": report.verdict,
        "equality": report.equality,
        "exact": report.exact,
        "cross": _scalar_out(report.cross),
        "left_square": _scalar_out(report.left_square),
        "right_square": _scalar_out(report.right_square),
    }


def cmd_mixvol(args):
    bodies = _bodies_from(args.file)
    value = mixvol.mixed_volume(bodies)
    oracle = mixvol.mixed_volume_oracle(bodies)
    exact = is_exact(value) and is_exact(oracle)
    if exact:
        agree = value == oracle
    else:
        scale = max(abs(float(value)), abs(float(oracle)), 1.0)
        agree = abs(float(value) - float(oracle)) <= _verdict_tol(args) * scale
    report = {
        "command": "mixvol",
        "value": _scalar_out(value),
        "oracle": _scalar_out(oracle),
        "engines_agree": bool(agree),
        "exact": exact,
    }
    return (0 if agree else 1), report


def cmd_mixdisc(args):
    mats = _matrices_from(args.file)
    value = mixdisc.mixed_discriminant(mats)
    return 0, {
        "command": "mixdisc",
        "value": _scalar_out(value),
        "exact": is_exact(value),
    }


def cmd_verify_af(args):
    bodies = _bodies_from(args.file)
    if len(bodies) < 2:
        raise InputError(f"{args.file}: verify-af needs at least two bodies")
    report = mixvol.verify_af(bodies[0], bodies[1], bodies[2:], tol=_verdict_tol(args))
    out = {"command": "verify-af", **_inequality_dict(report)}
    return (0 if report.verdict else 1), out


def cmd_verify_alexandrov(args):
    mats = _matrices_from(args.file)
    if len(mats) < 2:
        raise InputError(f"{args.file}: verify-alexandrov needs at least two matrices")
    report = mixdisc.verify_alexandrov(mats[0], mats[1], mats[2:], tol=_verdict_tol(args))
    out = {"command": "verify-alexandrov", **_inequality_dict(report)}
    return (0 if report.verdict else 1), out


def _operator_from_file(path):
    records = load_records(path)
    if len(records) != 1:
        raise InputError(f"{path}: expected exactly one fan or box record")
    lineno, record = records[0]
    body = record_to_body(path, lineno, record)
    if isinstance(body, PolygonFan):
        return afop.fan_af_operator(body), list(body.support)
    if isinstance(body, Box):
        return afop.box_af_operator(body), list(afop.box_support_vector(body))
    raise InputError(f"{path}:{lineno}: af operators need a polygon_fan or box record")


def _operator_dict(op: spectral.OperatorPair) -> dict:
    if op.matrix_exact is not None:
        matrix = [[_scalar_out(x) for x in row] for row in op.matrix_exact]
        weights = [_scalar_out(x) for x in op.weights_exact]
        exact = True
    else:
        matrix = [[float(x) for x in row] for row in op.matrix]
        weights = [float(x) for x in op.weights]
        exact = False
    return {"matrix": matrix, "weights": weights, "exact": exact}


def cmd_af_operator(args):
    op, reference = _operator_from_file(args.file)
    report = afop.spectrum_report(
        op,
        reference=reference,
        samples=args.samples,
        seed=args.seed,
        tol=_verdict_tol(args),
        zero_rel_tol=args.tol,
    )
    out = {
        "command": "af-operator",
        "operator": _operator_dict(op),
        "spectrum": _jsonable(report),
    }
    return (0 if report.verdict == "hyperbolic" else 1), out


def cmd_bochner(args):
    op, _ = _operator_from_file(args.file)
    report = afop.bochner_check(op, samples=args.samples, seed=args.seed)
    out = {"command": "bochner", **_jsonable(report)}
    return (0 if report.verdict else 1), out


def cmd_spectrum(args):
    records = load_records(args.file)
    if len(records) != 1:
        raise InputError(f"{args.file}: expected exactly one record")
    lineno, record = records[0]
    if record["type"] == "matrix":
        rows = record_to_matrix(args.file, lineno, record)
        arr = np.array([[float(x) for x in row] for row in rows])
        w, _ = spectral.eigh(arr)
        if args.tol is None:
            report = spectral.hyperbolicity_check(
                arr, samples=args.samples, rng_seed=args.seed
            )
        else:
            report = spectral.hyperbolicity_check(
                arr, samples=args.samples, rng_seed=args.seed, zero_rel_tol=args.tol
            )
        out = {
            "command": "spectrum",
            "eigenvalues": [float(x) for x in w],
            "inertia": list(report.inertia),
            "verdict": report.verdict,
            "min_residual": _jsonable(report.min_residual),
            "samples_used": report.samples_used,
            "witness": _jsonable(report.witness),
        }
        return (0 if report.verdict == "hyperbolic" else 1), out
    op, reference = _operator_from_file(args.file)
    report = afop.spectrum_report(
        op,
        reference=reference,
        samples=args.samples,
        seed=args.seed,
        tol=_verdict_tol(args),
        zero_rel_tol=args.tol,
    )
    out = {"command": "spectrum", **_jsonable(report)}
    return (0 if report.verdict == "hyperbolic" else 1), out


def cmd_selftest(args):
    from .acceptance import run_all

    results = run_all()
    if args.format == "text":
        for r in results:
            print(r.line())
    ok = all(r.passed for r in results)
    out = {
        "command": "selftest",
        "passed": ok,
        "criteria": [_jsonable(r) for r in results],
    }
    return (0 if ok else 1), (out if args.format == "json" else None)


def _print_text(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        for key, value in obj.items():
            if isinstance(value, (dict, list)) and value and not _is_flat(value):
                print(f"{pad}{key}:")
                _print_text(value, indent + 1)
            else:
                print(f"{pad}{key}: {_flat(value)}")
    elif isinstance(obj, list):
        for value in obj:
            if isinstance(value, dict) or (isinstance(value, list) and not _is_flat(value)):
                _print_text(value, indent)
            else:
                print(f"{pad}- {_flat(value)}")


def _is_flat(value):
    if isinstance(value, list):
        return all(not isinstance(v, (dict, list)) for v in value)
    return False


def _flat(value):
    if isinstance(value, list):
        return "[" + ", ".join(_flat(v) for v in value) + "]"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mixedforms",
        description="Mixed volumes, mixed discriminants, and spectral "
        "verification of Alexandrov-Fenchel type inequalities.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--tol",
        type=float,
        default=None,
        help="relative tolerance (default 1e-9); also sets the inertia zero band",
    )
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0, help="sampling seed")
    common.add_argument("--samples", type=int, default=10000, help="sample count")
    sub = parser.add_subparsers(dest="command", required=True)
    table = [
        ("mixvol", cmd_mixvol, "mixed volume of n bodies + oracle cross-check"),
        ("mixdisc", cmd_mixdisc, "mixed discriminant of m matrices"),
        ("verify-af", cmd_verify_af, "Alexandrov-Fenchel inequality report"),
        ("verify-alexandrov", cmd_verify_alexandrov, "mixed discriminant inequality report"),
        ("af-operator", cmd_af_operator, "build the AF operator and report its spectrum"),
        ("bochner", cmd_bochner, "sampled Bochner inequality check"),
        ("spectrum", cmd_spectrum, "eigenvalues, inertia, hyperbolicity verdict"),
    ]
    for name, handler, help_text in table:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("file", help="JSON-lines input file")
        p.set_defaults(handler=handler)
    p = sub.add_parser("selftest", parents=[common], help="run the full acceptance property suite")
    p.set_defaults(handler=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, report = args.handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except afop.NotHyperbolicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if report is not None:
        if args.format == "json":
            print(json.dumps(report, sort_keys=True))
        else:
            _print_text(report)
    return code


if __name__ == "__main__":
    sys.exit(main())
