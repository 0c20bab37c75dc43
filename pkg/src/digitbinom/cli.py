"""Command-line surface: digit queries, q-binomial tables, matrix export,
and single or batch identity verification.

Results go to standard output; diagnostics (including sweep timing) go to
standard error, so sweep output on stdout is byte-identical whether or not
--parallel is used.  Exit codes: 0 success, 1 a verification failed,
2 invalid arguments.  All randomness is seeded and the seed is reported.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import binomlib, digits, identities, sierpinski
from .errors import DigitbinomError
from .exactalg import Polynomial, parse_polynomial
from .reports import VerificationReport

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_ARGS = 2


# -- identity registry --------------------------------------------------------

def _run_identity(name: str, **params) -> VerificationReport:
    if name == "digital-binomial":
        return identities.verify_digital_binomial(params["n"])
    if name == "q-digital":
        return identities.verify_q_digital(params["n"])
    if name == "special-case":
        return identities.verify_special_case(params["N"])
    if name == "rothe":
        return identities.verify_rothe(params["N"])
    if name == "q-binomial-formula":
        return identities.verify_q_binomial_formula(params["N"], params["k"])
    if name == "sum-q":
        return identities.identity_sum_q(params["N"])
    if name == "deriv-x":
        return identities.identity_deriv_x(params["N"])
    if name == "deriv-q":
        return identities.identity_deriv_q(params["N"])
    if name == "digit-sum-corollary":
        return identities.verify_digit_sum_corollary(params["N"])
    if name == "pq-analog":
        return identities.verify_pq_analog(params["N"])
    if name == "multivariable":
        return identities.verify_multivariable(
            params["b"], params["n"], mode=params.get("mode", "symbolic"),
            seed=params.get("seed"), points=params.get("points", 5))
    if name == "three-parameter":
        return identities.verify_three_parameter(params["b"], params["n"])
    if name == "chu-vandermonde":
        return binomlib.chu_vandermonde_check(params["p_idx"], params["q_idx"])
    raise ValueError(f"unknown identity {name!r}")


IDENTITY_NAMES = (
    "digital-binomial", "q-digital", "special-case", "rothe",
    "q-binomial-formula", "sum-q", "deriv-x", "deriv-q",
    "digit-sum-corollary", "pq-analog", "multivariable",
    "three-parameter", "chu-vandermonde",
)

_N_RANGED = {"digital-binomial", "q-digital", "multivariable", "three-parameter"}
_LEVEL_RANGED = {"special-case", "rothe", "sum-q", "deriv-x", "deriv-q",
                 "digit-sum-corollary", "pq-analog", "q-binomial-formula"}
_NEEDS_BASE = {"multivariable", "three-parameter"}


def _parse_range(text: str) -> list[int]:
    """'A..B' (inclusive) or a single integer."""
    if ".." in text:
        lo_text, hi_text = text.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
        if hi < lo:
            raise ValueError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


def _sweep_tasks(args) -> list[dict]:
    """Deterministically ordered parameter sets for one sweep."""
    name = args.identity
    if name == "chu-vandermonde":
        if args.p is None:
            raise ValueError("sweep chu-vandermonde needs --p A..B")
        return [{"p_idx": p, "q_idx": q}
                for p in _parse_range(args.p) for q in range(p + 1)]
    if name in _N_RANGED:
        if args.n is None:
            raise ValueError(f"sweep {name} needs --n A..B")
        tasks = []
        for n in _parse_range(args.n):
            params = {"n": n}
            if name in _NEEDS_BASE:
                params["b"] = args.b if args.b is not None else 2
            if name == "multivariable":
                params["mode"] = args.mode
                params["points"] = args.points
            tasks.append(params)
        return tasks
    if name in _LEVEL_RANGED:
        if args.N is None:
            raise ValueError(f"sweep {name} needs --N A..B")
        if name == "q-binomial-formula":
            return [{"N": n, "k": k}
                    for n in _parse_range(args.N) for k in range(n + 1)]
        return [{"N": n} for n in _parse_range(args.N)]
    raise ValueError(f"unknown identity {name!r}")


def _sweep_worker(task: tuple[str, dict]) -> tuple[dict, bool, int | None]:
    name, params = task
    report = _run_identity(name, **params)
    return dict(report.params), report.passed, report.seed


# -- digits command ------------------------------------------------------------

def _cmd_digits(args) -> int:
    b = args.base
    width = args.width if args.width is not None else digits.minimal_width(args.n, b)
    vector = digits.digit_expansion(args.n, b, width)
    record = {
        "n": args.n,
        "base": b,
        "width": width,
        "digits": list(vector.digits),
        "digit_sum": digits.sum_of_digits(args.n, b),
    }
    if args.m is not None:
        if args.m < 0:
            raise ValueError(f"m must be non-negative, got {args.m}")
        dominated = digits.dominates(args.m, args.n, b)
        record["m"] = args.m
        record["dominates"] = dominated
        record["z"] = digits.z_weight(args.m, args.n, b, width) if dominated else None
        record["w"] = (digits.w_weight(args.m, args.n, width)
                       if dominated and b == 2 else None)
    if args.format == "json":
        print(json.dumps(record))
    else:
        print(f"n={record['n']} base={b} width={width}")
        print(f"digits (least significant first): {record['digits']}")
        print(f"digit_sum: {record['digit_sum']}")
        if args.m is not None:
            line = f"m={args.m} dominates={'yes' if record['dominates'] else 'no'}"
            if record["z"] is not None:
                line += f" z={record['z']}"
            if record["w"] is not None:
                line += f" w={record['w']}"
            print(line)
    return EXIT_OK


# -- qbinom command ------------------------------------------------------------

def _qbinom_row(n: int, ks: list[int], route: str) -> list[dict]:
    rows = []
    for k in ks:
        row: dict = {"k": k}
        if route in ("product", "both"):
            row["product"] = binomlib.q_binomial_product(n, k).render()
        if route in ("digital", "both"):
            row["digital"] = binomlib.q_binomial_digital(n, k).render()
        if route == "both":
            row["agree"] = row["product"] == row["digital"]
        rows.append(row)
    return rows


def _cmd_qbinom(args) -> int:
    n = args.N
    if n < 0:
        raise ValueError(f"N must be non-negative, got {n}")
    ks = [args.k] if args.k is not None else list(range(n + 1))
    rows = _qbinom_row(n, ks, args.route)
    if args.format == "json":
        print(json.dumps({"N": n, "route": args.route, "rows": rows}))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout)
        header = ["k"] + [key for key in ("product", "digital", "agree")
                          if key in rows[0]]
        writer.writerow(header)
        for row in rows:
            writer.writerow([row[key] for key in header])
    else:
        for row in rows:
            parts = [f"k={row['k']}"]
            if "product" in row:
                parts.append(f"product: {row['product']}")
            if "digital" in row:
                parts.append(f"digital: {row['digital']}")
            if "agree" in row:
                parts.append("agree" if row["agree"] else "DISAGREE")
            print("  ".join(parts))
    if args.route == "both" and not all(row["agree"] for row in rows):
        return EXIT_VERIFY_FAILED
    return EXIT_OK


# -- matrix command --------------------------------------------------------------

def _parse_bindings(settings: list[str]) -> dict[str, Polynomial]:
    bindings = {}
    for item in settings:
        if "=" not in item:
            raise ValueError(f"--set expects VAR=EXPR, got {item!r}")
        name, expr = item.split("=", 1)
        bindings[name.strip()] = parse_polynomial(expr)
    return bindings


def _matrix_vectors(b: int, n: int, assign: str,
                    overrides: dict[str, Polynomial]) -> sierpinski.VariableVectors:
    if assign == "q-digital":
        # slot i becomes x + q^i * y with unit step, so entry (m, 0) is the
        # product side of the q-weighted digital identity
        xs = [Polynomial.variable("x") + Polynomial.monomial({"q": i, "y": 1})
              for i in range(n)]
        rs = [Polynomial.one() for _ in range(n)]
    else:
        xs = [Polynomial.variable(f"x{i}") for i in range(n)]
        rs = [Polynomial.variable(f"r{i}") for i in range(n)]
    for name, value in overrides.items():
        kind, index = name[0], name[1:]
        if kind not in ("x", "r") or not index.isdigit() or int(index) >= n:
            raise ValueError(f"--set slot {name!r} outside x0..x{n - 1}/r0..r{n - 1}")
        if kind == "x":
            xs[int(index)] = value
        else:
            rs[int(index)] = value
    return sierpinski.VariableVectors(tuple(xs), tuple(rs))


def _cmd_matrix(args) -> int:
    overrides = _parse_bindings(args.set or [])
    if args.assign == "ones":
        if overrides:
            raise ValueError("--set cannot override the all-ones assignment")
        matrix = sierpinski.build_numeric(
            args.b, args.N, [1] * args.N, [1] * args.N)
    else:
        vectors = _matrix_vectors(args.b, args.N, args.assign, overrides)
        matrix = sierpinski.build_direct(args.b, args.N, vectors)
    print(f"dimension={matrix.dimension} nnz={matrix.nnz()}", file=sys.stderr)
    if args.stats_only:
        return EXIT_OK
    out = open(args.output, "w") if args.output else sys.stdout
    try:
        if args.format == "csv":
            matrix.write_csv(out)
        else:
            matrix.write_json(out)
    finally:
        if args.output:
            out.close()
    return EXIT_OK


# -- verify command ---------------------------------------------------------------

def _verify_params(args) -> dict:
    params = {}
    for attr, key in (("n", "n"), ("N", "N"), ("b", "b"), ("k", "k"),
                      ("p_idx", "p_idx"), ("q_idx", "q_idx")):
        value = getattr(args, attr, None)
        if value is not None:
            params[key] = value
    name = args.identity
    if name == "multivariable":
        params.setdefault("b", 2)
        params["mode"] = args.mode
        params["points"] = args.points
        if args.seed is not None:
            params["seed"] = args.seed
    if name == "three-parameter":
        params.setdefault("b", 2)
    required = {
        "digital-binomial": ("n",), "q-digital": ("n",),
        "special-case": ("N",), "rothe": ("N",),
        "q-binomial-formula": ("N", "k"), "sum-q": ("N",),
        "deriv-x": ("N",), "deriv-q": ("N",), "digit-sum-corollary": ("N",),
        "pq-analog": ("N",), "multivariable": ("b", "n"),
        "three-parameter": ("b", "n"), "chu-vandermonde": ("p_idx", "q_idx"),
    }[name]
    missing = [key for key in required if key not in params]
    if missing:
        flags = ", ".join(f"--{key.replace('_', '-')}" for key in missing)
        raise ValueError(f"verify {name} needs {flags}")
    return params


def _print_report(report: VerificationReport, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report.to_json_dict()))
        return
    print(report.summary_line())
    if report.mode == "random_eval":
        print(f"mode: random_eval points={report.eval_points} seed={report.seed}")
    elif report.lhs is not None:
        print(f"lhs: {report.lhs.render()}")
        print(f"rhs: {report.rhs.render()}")
        if not report.passed:
            print(f"difference: {report.difference().render()}")
    if report.detail:
        print(f"detail: {report.detail}")


def _cmd_verify(args) -> int:
    params = _verify_params(args)
    report = _run_identity(args.identity, **params)
    _print_report(report, args.format)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


# -- sweep command ------------------------------------------------------------------

def _cmd_sweep(args) -> int:
    tasks = _sweep_tasks(args)
    if args.identity == "multivariable" and args.mode == "random_eval":
        base_seed = args.seed if args.seed is not None else (
            random.SystemRandom().randrange(1 << 32))
        for offset, params in enumerate(tasks):
            params["seed"] = base_seed + offset
        print(f"base seed: {base_seed}", file=sys.stderr)
    work = [(args.identity, params) for params in tasks]
    start = time.perf_counter()
    if args.parallel:
        with ProcessPoolExecutor() as pool:
            results = list(pool.map(_sweep_worker, work, chunksize=8))
    else:
        results = [_sweep_worker(item) for item in work]
    elapsed = time.perf_counter() - start

    failed = [params for params, ok, _ in results if not ok]
    if args.format == "json":
        payload = {
            "identity": args.identity,
            "results": [{"params": params, "passed": ok,
                         **({"seed": seed} if seed is not None else {})}
                        for params, ok, seed in results],
            "passed": len(results) - len(failed),
            "failed": len(failed),
        }
        print(json.dumps(payload))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["identity", "params", "passed"])
        for params, ok, _ in results:
            text = " ".join(f"{key}={value}" for key, value in params.items())
            writer.writerow([args.identity, text, "pass" if ok else "fail"])
    else:
        for params, ok, _ in results:
            text = " ".join(f"{key}={value}" for key, value in params.items())
            print(f"{args.identity} {text}: {'pass' if ok else 'FAIL'}")
        print(f"passed {len(results) - len(failed)}, failed {len(failed)}")
    print(f"elapsed: {elapsed:.2f}s", file=sys.stderr)
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="digitbinom",
        description="Exact digit-level combinatorics and identity verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_digits = sub.add_parser("digits", help="digit expansion, digit sum, weights")
    p_digits.add_argument("n", type=int)
    p_digits.add_argument("--base", type=int, default=2)
    p_digits.add_argument("--m", type=int, default=None,
                          help="report dominance and weights of m relative to n")
    p_digits.add_argument("--width", type=int, default=None)
    p_digits.add_argument("--format", choices=("text", "json"), default="text")
    p_digits.set_defaults(func=_cmd_digits)

    p_qbinom = sub.add_parser("qbinom", help="Gaussian binomial row or entry")
    p_qbinom.add_argument("N", type=int)
    p_qbinom.add_argument("k", type=int, nargs="?", default=None)
    p_qbinom.add_argument("--route", choices=("product", "digital", "both"),
                          default="product")
    p_qbinom.add_argument("--format", choices=("text", "json", "csv"),
                          default="text")
    p_qbinom.set_defaults(func=_cmd_qbinom)

    p_matrix = sub.add_parser("matrix", help="build and export a digit-product matrix")
    p_matrix.add_argument("--b", type=int, required=True)
    p_matrix.add_argument("--N", type=int, required=True)
    p_matrix.add_argument("--assign", choices=("symbolic", "q-digital", "ones"),
                          default="symbolic")
    p_matrix.add_argument("--set", action="append", metavar="VAR=EXPR",
                          help="override one slot, e.g. --set x0=1/2*q")
    p_matrix.add_argument("--format", choices=("json", "csv"), default="json")
    p_matrix.add_argument("--output", default=None, help="write to a file")
    p_matrix.add_argument("--stats-only", action="store_true",
                          help="print dimension and nnz only")
    p_matrix.set_defaults(func=_cmd_matrix)

    p_verify = sub.add_parser("verify", help="verify one identity instance")
    p_verify.add_argument("identity", choices=IDENTITY_NAMES)
    p_verify.add_argument("--n", type=int, default=None)
    p_verify.add_argument("--N", type=int, default=None)
    p_verify.add_argument("--b", type=int, default=None)
    p_verify.add_argument("--k", type=int, default=None)
    p_verify.add_argument("--p-idx", dest="p_idx", type=int, default=None)
    p_verify.add_argument("--q-idx", dest="q_idx", type=int, default=None)
    p_verify.add_argument("--mode", choices=("symbolic", "random_eval"),
                          default="symbolic")
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--points", type=int, default=5)
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.set_defaults(func=_cmd_verify)

    p_sweep = sub.add_parser("sweep", help="verify an identity over a range")
    p_sweep.add_argument("identity", choices=IDENTITY_NAMES)
    p_sweep.add_argument("--n", default=None, help="range A..B of n values")
    p_sweep.add_argument("--N", default=None, help="range A..B of level counts")
    p_sweep.add_argument("--p", default=None,
                         help="range A..B of p_idx (all q_idx <= p_idx)")
    p_sweep.add_argument("--b", type=int, default=None)
    p_sweep.add_argument("--mode", choices=("symbolic", "random_eval"),
                         default="symbolic")
    p_sweep.add_argument("--seed", type=int, default=None)
    p_sweep.add_argument("--points", type=int, default=5)
    p_sweep.add_argument("--parallel", action="store_true")
    p_sweep.add_argument("--format", choices=("text", "json", "csv"),
                         default="text")
    p_sweep.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DigitbinomError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS


if __name__ == "__main__":
    sys.exit(main())
