"""Command-line front end: ``superkantor <verb> ...``.

Exit codes: 0 all requested checks pass, 1 a check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .algebra_file import AlgebraFileError, algebra_cap, content_hash, dumps, loads
from .bracket import (LeibnizError, check_general_jordan, check_poisson, check_product_shift,
                      check_unital_jordan, commutator_bracket, is_superskew,
                      random_superskew_bracket, DEFAULT_POOL, UNITAL_SIGNS)
from .deltaderiv import (SolutionSpace, centroid, delta_superderivations,
                         half_derivation_experiment, supercentroid, verify_solution_space)
from .exactlin import format_scalar, parse_scalar
from .grassmann import (DimensionCapError, grassmann_algebra, grassmann_envelope,
                        grassmann_poisson_bracket)
from .kantor import (check_jordan_superidentities, check_jordan_via_envelope,
                     double_jordan_verdict, kantor_double)
from .superalg import (CheckReport, PreconditionError, is_associative, is_supercommutative,
                       matrix_algebra, simple_extension, truncated_polynomials)

PASS, FAIL, INPUT_ERROR = 0, 1, 2

CHECKS = ("structure", "supercomm", "assoc", "bracket-skew", "bracket-jordan-unital",
          "bracket-jordan-general", "identity-10", "poisson")


class InputError(Exception):
    pass


class Loaded:
    def __init__(self, path: str):
        try:
            raw = Path(path).read_bytes()
        except OSError as e:
            raise InputError(f"cannot read {path}: {e.strerror}") from None
        try:
            self.algebra, self.bracket = loads(raw.decode("utf-8"))
        except UnicodeDecodeError:
            raise InputError(f"{path} is not UTF-8 text") from None
        self.path = path
        self.hash = content_hash(raw)

    def require_bracket(self, skew: bool = True):
        if self.bracket is None:
            raise InputError("the file has no bracket")
        if skew and not is_superskew(self.bracket, 1):
            raise InputError("the bracket is not superskew")
        return self.bracket


# ------------------------------------------------------------------ helpers

def _operator_json(op) -> dict:
    return {"matrix": [[format_scalar(x) for x in row] for row in op.matrix.to_rows()],
            "parity": op.parity,
            "delta": None if op.delta is None else format_scalar(op.delta)}


def _space_json(S: SolutionSpace) -> dict:
    out = {"kind": S.kind, "dimension": S.dim,
           "parity": S.parity,
           "delta": None if S.delta is None else format_scalar(S.delta),
           "basis": [_operator_json(op) for op in S.operators()]}
    out["resubstitution"] = verify_solution_space(S).verdict
    return out


def _render_text(x, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(x, dict):
        for k, v in x.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines += _render_text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {json.dumps(v, ensure_ascii=False)}")
    elif isinstance(x, list):
        for v in x:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines += _render_text(v, indent + 1)
            else:
                lines.append(f"{pad}- {json.dumps(v, ensure_ascii=False)}")
    else:
        lines.append(f"{pad}{x}")
    return lines


def _emit(args, text: str):
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_report(args, report: dict):
    if args.format == "text":
        text = "\n".join(_render_text(report)) + "\n"
    else:
        text = json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    _emit(args, text)


def _parse_delta(text: str) -> Fraction:
    try:
        return parse_scalar(text.strip())
    except ValueError as e:
        raise InputError(f"malformed delta: {e}") from None


# ------------------------------------------------------------------- verbs

def cmd_gen(args) -> tuple[int, str]:
    kind = args.kind
    bracket = None
    if kind == "grassmann":
        n = args.n if args.n is not None else 2
        if n < 0:
            raise InputError("n must be >= 0")
        if args.poisson:
            if n < 1:
                raise InputError("the Poisson bracket needs n >= 1")
            bracket = grassmann_poisson_bracket(n)
            A = bracket.algebra
        else:
            A = grassmann_algebra(n)
    elif kind == "truncpoly":
        k = args.k if args.k is not None else 3
        if k < 2:
            raise InputError("k must be >= 2")
        A = truncated_polynomials(k)
    elif kind == "matrix":
        n = args.n if args.n is not None else 2
        if n < 1:
            raise InputError("matrix size must be >= 1")
        A = matrix_algebra(n)
        if args.commutator:
            bracket = commutator_bracket(A)
    elif kind == "field_ext":
        if not args.min_poly:
            raise InputError("field_ext needs --min-poly (coefficients, constant term first)")
        try:
            coeffs = [parse_scalar(c.strip()) for c in args.min_poly.split(",")]
            A = simple_extension(coeffs)
        except ValueError as e:
            raise InputError(str(e)) from None
    elif kind == "random_bracket":
        if args.input is None:
            raise InputError("random_bracket needs --input FILE")
        if args.seed is None:
            raise InputError("random_bracket needs an explicit --seed")
        loaded = Loaded(args.input)
        A = loaded.algebra
        pool = DEFAULT_POOL
        if args.pool:
            try:
                pool = tuple(parse_scalar(c.strip()) for c in args.pool.split(","))
            except ValueError as e:
                raise InputError(str(e)) from None
        bracket = random_superskew_bracket(A, args.seed, pool)
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown kind {kind}")
    if len(A.basis) > algebra_cap():
        raise InputError(f"dimension {A.dim} exceeds the cap {algebra_cap()}")
    return PASS, dumps(A, bracket)


def _run_check(which: str, loaded: Loaded, args) -> CheckReport:
    A, mw = loaded.algebra, args.max_witnesses
    if which == "structure":
        rep = CheckReport("structure", {})
        rep.notes.append(f"dimension {A.dim}: {A.dim - sum(A.parity)} even, {sum(A.parity)} odd")
        if loaded.bracket is not None:
            rep.notes.append("bracket present and parity-preserving")
        return rep
    if which == "supercomm":
        return is_supercommutative(A, mw)
    if which == "assoc":
        return is_associative(A, mw)
    b = loaded.require_bracket(skew=which != "bracket-skew")
    if which == "bracket-skew":
        return is_superskew(b, mw)
    if which == "bracket-jordan-unital":
        return check_unital_jordan(b, mw, signs=args.signs)
    if which == "bracket-jordan-general":
        return check_general_jordan(b, mw)
    if which == "identity-10":
        return check_product_shift(b, mw)
    if which == "poisson":
        return check_poisson(b, mw)
    raise InputError(f"unknown check {which!r}")


def cmd_check(args) -> tuple[int, dict]:
    unknown = [w for w in args.which if w not in CHECKS]
    if unknown:
        raise InputError(f"unknown check name(s): {', '.join(unknown)}; choose from {', '.join(CHECKS)}")
    loaded = Loaded(args.file)
    results = {}
    ok = True
    for w in args.which or ["structure"]:
        rep = _run_check(w, loaded, args)
        results[w] = rep.to_json()
        ok = ok and rep.verdict
    return (PASS if ok else FAIL), {"input": _input(loaded), "checks": results, "pass": ok}


def cmd_double(args) -> tuple[int, str]:
    loaded = Loaded(args.file)
    b = loaded.require_bracket()
    J = kantor_double(loaded.algebra, b)
    J.metadata["derived_from"]["input_hash"] = loaded.hash
    return PASS, dumps(J)


def cmd_jordan(args) -> tuple[int, dict]:
    loaded = Loaded(args.file)
    J, mw = loaded.algebra, args.max_witnesses
    out = {"input": _input(loaded), "via": args.via}
    verdicts = []
    if args.via in ("superidentities", "both"):
        rep = check_jordan_superidentities(J, mw)
        out["superidentities"] = rep.to_json()
        verdicts.append(rep.verdict)
    if args.via in ("envelope", "both"):
        rep = check_jordan_via_envelope(J, args.n, mw)
        out["envelope"] = rep.to_json()
        verdicts.append(rep.verdict)
    out["jordan"] = all(verdicts)
    if args.via == "both":
        out["agree"] = verdicts[0] == verdicts[1]
        if not out["agree"]:
            return FAIL, out
    return (PASS if out["jordan"] else FAIL), out


def cmd_envelope(args) -> tuple[int, str]:
    loaded = Loaded(args.file)
    if args.n < 0:
        raise InputError("n must be >= 0")
    return PASS, dumps(grassmann_envelope(loaded.algebra, args.n))


def cmd_derivations(args) -> tuple[int, dict]:
    loaded = Loaded(args.file)
    delta = _parse_delta(args.delta)
    parities = [args.parity] if args.parity is not None else [0, 1]
    spaces = [delta_superderivations(loaded.algebra, delta, p) for p in parities]
    out = {"input": _input(loaded), "delta": format_scalar(delta),
           "spaces": [_space_json(S) for S in spaces]}
    ok = all(s["resubstitution"] for s in out["spaces"])
    return (PASS if ok else FAIL), out


def cmd_centroid(args) -> tuple[int, dict]:
    loaded = Loaded(args.file)
    A = loaded.algebra
    if args.super:
        parities = [args.parity] if args.parity is not None else [0, 1]
        spaces = [supercentroid(A, p) for p in parities]
    else:
        spaces = [centroid(A)]
    out = {"input": _input(loaded), "super": bool(args.super),
           "spaces": [_space_json(S) for S in spaces]}
    ok = all(s["resubstitution"] for s in out["spaces"])
    return (PASS if ok else FAIL), out


def cmd_theorem21(args) -> tuple[int, dict]:
    loaded = Loaded(args.file)
    v = double_jordan_verdict(loaded.algebra, loaded.require_bracket(), args.max_witnesses)
    return (PASS if v.agree else FAIL), {"input": _input(loaded), **v.to_json()}


def cmd_theorem31(args) -> tuple[int, dict]:
    loaded = Loaded(args.file)
    deltas = [_parse_delta(d) for d in args.deltas.split(",") if d.strip()]
    rep = half_derivation_experiment(loaded.algebra, loaded.require_bracket(), deltas,
                                     seed=args.seed or 0)
    code = PASS if (rep.consistent or not rep.hypothesis_met) else FAIL
    return code, {"input": _input(loaded), **rep.to_json()}


def _input(loaded: Loaded) -> dict:
    return {"file": Path(loaded.path).name, "hash": loaded.hash,
            "algebra": loaded.algebra.name, "dimension": loaded.algebra.dim}


VERBS = {"gen": cmd_gen, "check": cmd_check, "double": cmd_double, "jordan": cmd_jordan,
         "envelope": cmd_envelope, "derivations": cmd_derivations, "centroid": cmd_centroid,
         "theorem21": cmd_theorem21, "theorem31": cmd_theorem31}
FILE_VERBS = {"gen", "double", "envelope"}


# ------------------------------------------------------------------ parser

def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def _global_flags(p: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--output", default=d(None), help="write to this path instead of stdout")
    p.add_argument("--format", choices=("json", "text"), default=d("json"))
    p.add_argument("--seed", type=_u64, default=d(None), help="seed for random generation")
    p.add_argument("--max-witnesses", type=int, default=d(16), dest="max_witnesses")
    p.add_argument("--timing", action="store_true", default=d(False),
                   help="include wall-clock timing (makes reports non-reproducible)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superkantor",
                                     description="Exact checks for Jordan brackets and Kantor doubles.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate an algebra file")
    p.add_argument("kind", choices=("grassmann", "truncpoly", "matrix", "field_ext", "random_bracket"))
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--min-poly", dest="min_poly", help="e.g. --min-poly=-2,0,1 for t^2 - 2")
    p.add_argument("--input", help="file to augment (random_bracket)")
    p.add_argument("--pool", help="comma-separated coefficient pool (random_bracket)")
    p.add_argument("--poisson", action="store_true", help="attach the Poisson bracket (grassmann)")
    p.add_argument("--commutator", action="store_true", help="attach the commutator (matrix)")

    p = sub.add_parser("check", parents=[common], help="run identity checks")
    p.add_argument("file")
    p.add_argument("which", nargs="*", help=", ".join(CHECKS))
    p.add_argument("--signs", choices=UNITAL_SIGNS, default="printed",
                   help="sign convention for the unital Jacobi-type rule")

    p = sub.add_parser("double", parents=[common], help="emit the Kantor double")
    p.add_argument("file")

    p = sub.add_parser("jordan", parents=[common], help="is the algebra a Jordan superalgebra?")
    p.add_argument("file")
    p.add_argument("--via", choices=("superidentities", "envelope", "both"), default="superidentities")
    p.add_argument("--n", type=int, default=4, help="Grassmann generators for the envelope")

    p = sub.add_parser("envelope", parents=[common], help="emit the Grassmann envelope")
    p.add_argument("file")
    p.add_argument("--n", type=int, default=2)

    p = sub.add_parser("derivations", parents=[common], help="delta-superderivations")
    p.add_argument("file")
    p.add_argument("--delta", required=True, help='rational such as "1/2"')
    p.add_argument("--parity", type=int, choices=(0, 1))

    p = sub.add_parser("centroid", parents=[common], help="centroid or supercentroid")
    p.add_argument("file")
    p.add_argument("--super", action="store_true")
    p.add_argument("--parity", type=int, choices=(0, 1))

    p = sub.add_parser("theorem21", parents=[common],
                       help="double is Jordan vs. algebra supercommutative and bracket Jordan")
    p.add_argument("file")

    p = sub.add_parser("theorem31", parents=[common],
                       help="delta-superderivations of the double over a prime algebra")
    p.add_argument("file")
    p.add_argument("--deltas", default="2,-1,3/2", help="comma-separated rationals")
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return INPUT_ERROR if e.code not in (0, None) else 0
    start = time.perf_counter()
    try:
        code, payload = VERBS[args.verb](args)
    except (InputError, AlgebraFileError, PreconditionError, DimensionCapError, LeibnizError) as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR
    if args.verb in FILE_VERBS:
        _emit(args, payload)
        return code
    report = {"tool": "superkantor", "version": __version__, "command": ["superkantor"] + argv,
              "seed": args.seed, "exit_code": code, "result": payload}
    if args.timing:
        report["seconds"] = round(time.perf_counter() - start, 3)
    _emit_report(args, report)
    return code


if __name__ == "__main__":
    sys.exit(main())
