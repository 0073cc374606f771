"""Command-line surface.

Subcommands: carries, filt, expdeg, support, pullback, frobcheck, dims,
verify.  Exit codes: 0 success, 2 validation failure (bad input), 3 property
violation (an oracle or suite found falsified mathematics).
"""

import argparse
import itertools
import json
import sys

from .expdeg import (
    exponential_degree,
    exponential_height,
    ga_exp_filtration,
    module_exp_filtration,
)
from .fpcomb import PrimeField
from .ga import (
    GaUFamily,
    carries_basis,
    comodule_to_family,
    degree_filtration_ga,
    family_to_comodule,
    generated_submodule,
    regular_comodule,
)
from .io import (
    ModuleFileError,
    canonical_dumps,
    load_module,
    make_record,
    module_to_doc,
    report_doc,
    report_ok,
)
from .samplers import enumerate_1psg_un, random_1psg_ga, random_1psg_un, rng_from_seed
from .support import (
    frobenius_injectivity_check,
    ga_psg,
    pullback_module,
    support_sample,
    un_psg,
)
from .un import UNContext, degree_filtration_un, frobenius_kernel_dims
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_PROPERTY = 3


def _emit(text: str, output):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(doc, output):
    _emit(canonical_dumps(doc), output)


def cmd_carries(args) -> int:
    field = PrimeField(args.p)
    basis = carries_basis(args.n, field)
    result = {"n": args.n, "p": args.p, "basis": basis}
    if args.oracle:
        M = regular_comodule(field, args.n + 1)
        target = [0] * (args.n + 1)
        target[args.n] = 1
        span = generated_submodule(M, [target])
        oracle = sorted(span.pivots)
        result["oracle"] = oracle
        result["agrees"] = oracle == basis
        _emit_json(result, args.output)
        return EXIT_OK if result["agrees"] else EXIT_PROPERTY
    _emit_json(result, args.output)
    return EXIT_OK


def _load(args):
    try:
        return load_module(args.file)
    except (ModuleFileError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_VALIDATION)


def cmd_filt(args) -> int:
    obj = _load(args)
    if isinstance(obj, GaUFamily):
        if args.kind == "exp":
            space = ga_exp_filtration(obj, args.d)
        else:
            space = degree_filtration_ga(family_to_comodule(obj), args.d)
    elif obj.coalgebra.kind == "GaPoly":
        if args.kind == "exp":
            space = ga_exp_filtration(comodule_to_family(obj), args.d)
        else:
            space = degree_filtration_ga(obj, args.d)
    elif obj.coalgebra.kind == "UNPoly":
        if args.kind == "exp":
            space = module_exp_filtration(obj, args.d)
        else:
            space = degree_filtration_un(obj, args.d)
    else:
        print("error: filtrations need a polynomial (non-truncated) group kind", file=sys.stderr)
        return EXIT_VALIDATION
    lines = [f"dim {space.dim} of {space.ambient}"]
    lines.extend(" ".join(str(v) for v in row) for row in space.rows)
    _emit("\n".join(lines), args.output)
    return EXIT_OK


def cmd_expdeg(args) -> int:
    obj = _load(args)
    deg = exponential_degree(obj)
    field = obj.field
    value = exponential_height(deg, field) if args.scale == "height" else deg
    _emit(str(value), args.output)
    return EXIT_OK


def _sample_psis(obj, args):
    field = obj.field
    ga_form = isinstance(obj, GaUFamily) or obj.coalgebra.kind == "GaPoly"
    if args.exhaustive:
        if ga_form:
            lams = range(field.p)
            return [
                ga_psg(field, combo)
                for combo in itertools.product(lams, repeat=args.height)
            ]
        return enumerate_1psg_un(field, obj.coalgebra.N, args.height)
    rng = rng_from_seed(args.seed)
    if ga_form:
        return [random_1psg_ga(field, rng) for _ in range(args.samples)]
    return [random_1psg_un(field, obj.coalgebra.N, rng) for _ in range(args.samples)]


def cmd_support(args) -> int:
    obj = _load(args)
    if not isinstance(obj, GaUFamily) and obj.coalgebra.kind not in ("GaPoly", "UNPoly"):
        print("error: support sampling needs a polynomial (non-truncated) group kind",
              file=sys.stderr)
        return EXIT_VALIDATION
    psis = _sample_psis(obj, args)
    verdicts = support_sample(obj, psis)
    records = [
        make_record(
            f"support-sample-{k:04d}",
            v["psi"].describe(),
            v["in_support"],
            "support-not-free",
            witness={"jordan_type": list(v["jordan_type"].parts)},
        )
        for k, v in enumerate(verdicts)
    ]
    doc = report_doc(records, seed=None if args.exhaustive else args.seed)
    _emit_json(doc, args.output)
    return EXIT_OK


def _parse_psi(text: str, field: PrimeField):
    data = json.loads(text)
    if data.get("kind") == "Ga":
        return ga_psg(field, data["lambdas"])
    if data.get("kind") == "UN":
        mats = data["mats"]
        return un_psg(field, len(mats[0]), mats)
    raise ValueError("psi must have kind 'Ga' or 'UN'")


def cmd_pullback(args) -> int:
    obj = _load(args)
    try:
        psi = _parse_psi(args.psi, obj.field)
        fam = pullback_module(obj, psi)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    _emit_json(module_to_doc(fam), args.output)
    return EXIT_OK


def cmd_frobcheck(args) -> int:
    obj = _load(args)
    if isinstance(obj, GaUFamily):
        obj = family_to_comodule(obj)
    try:
        verdict = frobenius_injectivity_check(obj, args.r)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    doc = {"r": args.r, "free": verdict.free, "witness": verdict.witness()}
    _emit_json(doc, args.output)
    return EXIT_OK


def cmd_dims(args) -> int:
    try:
        ctx = UNContext(PrimeField(args.p), args.N)
        rec = frobenius_kernel_dims(ctx, args.r)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    _emit_json(rec.as_dict(), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        records = run_suite(args.suite, seed=args.seed, p=args.p, N=args.N)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    doc = report_doc(records, seed=args.seed, extra={"suite": args.suite})
    _emit_json(doc, args.output)
    ok = report_ok(doc)
    if not ok:
        failing = [r["check"] for r in doc["checks"] if not r["verdict"]]
        print(f"FAILED checks: {', '.join(failing)}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_PROPERTY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expfilt",
        description="Degree and exponential-degree filtrations over F_p",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(sp):
        sp.add_argument("--output", metavar="PATH", help="write the result to PATH")

    sp = sub.add_parser("carries", help="digit-domination basis of the orbit span of T^n")
    sp.add_argument("n", type=int)
    sp.add_argument("p", type=int)
    sp.add_argument("--oracle", action="store_true",
                    help="recompute via the generated-submodule span and compare")
    add_output(sp)
    sp.set_defaults(func=cmd_carries)

    sp = sub.add_parser("filt", help="filtration piece of a module file")
    sp.add_argument("file")
    sp.add_argument("--kind", choices=("degree", "exp"), required=True)
    sp.add_argument("--d", type=int, required=True)
    add_output(sp)
    sp.set_defaults(func=cmd_filt)

    sp = sub.add_parser("expdeg", help="exponential degree of a module file")
    sp.add_argument("file")
    sp.add_argument("--scale", choices=("raw", "height"), default="raw",
                    help="raw degree d, or the base-p height (minimal r with d <= p^r)")
    add_output(sp)
    sp.set_defaults(func=cmd_expdeg)

    sp = sub.add_parser("support", help="sampled support verdicts for a module file")
    sp.add_argument("file")
    sp.add_argument("--samples", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--exhaustive", action="store_true")
    sp.add_argument("--height", type=int, default=1, help="height for --exhaustive")
    add_output(sp)
    sp.set_defaults(func=cmd_support)

    sp = sub.add_parser("pullback", help="pull a module back along a 1-parameter subgroup")
    sp.add_argument("file")
    sp.add_argument("--psi", required=True,
                    help='JSON, e.g. {"kind": "Ga", "lambdas": [1]} or {"kind": "UN", "mats": [...]}')
    add_output(sp)
    sp.set_defaults(func=cmd_pullback)

    sp = sub.add_parser("frobcheck", help="freeness of the restriction to a Frobenius kernel")
    sp.add_argument("file")
    sp.add_argument("--r", type=int, required=True)
    add_output(sp)
    sp.set_defaults(func=cmd_frobcheck)

    sp = sub.add_parser("dims", help="dimension numerics for U_N Frobenius kernels")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    add_output(sp)
    sp.set_defaults(func=cmd_dims)

    sp = sub.add_parser("verify", help="run an acceptance suite")
    sp.add_argument("--suite", required=True,
                    help="one of: " + ", ".join(sorted(SUITES)) + ", all")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--p", type=int)
    sp.add_argument("--N", type=int)
    add_output(sp)
    sp.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_VALIDATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
