"""Command-line interface: ``surjpoly <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 internal soundness failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import random
import sys
import time
from pathlib import Path

from surjpoly import combinatorics as cb
from surjpoly import linsys
from surjpoly.backends import ProductAlgebra, ShiftAlgebra, WeylAlgebra, evaluate
from surjpoly.backends.shift import DEFAULT_PROBE
from surjpoly.expr import ParseError, parse, parse_element, parse_pc, max_variable
from surjpoly.formats import (
    FormatError,
    element_to_json,
    poly_from_json,
    witness_from_json,
    witness_to_json,
)
from surjpoly.identities import ALIASES, CHECKERS, checker
from surjpoly.pcpoly import ONE, TWO, generator_family, independence_rank, render
from surjpoly.solver import SoundnessError, solve, verify

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_SOUNDNESS = 0, 1, 2, 3

log = logging.getLogger("surjpoly")


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def make_backend(name: str, probe: int = DEFAULT_PROBE, components: str = "weyl,weyl"):
    if name == "weyl":
        return WeylAlgebra()
    if name == "shift":
        return ShiftAlgebra(probe)
    if name == "product":
        parts = [c.strip() for c in components.split(",") if c.strip()]
        if not parts or "product" in parts:
            raise UsageError("--components lists weyl/shift backends, e.g. weyl,shift")
        return ProductAlgebra([make_backend(p, probe) for p in parts])
    raise UsageError(f"unknown backend {name!r}")


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


# --- commands --------------------------------------------------------------

def cmd_normalize(args) -> int:
    node = parse(args.expr)
    n = args.n if args.n is not None else max(max_variable(node), 1)
    f = parse_pc(args.expr, n)
    text = render(f)
    _emit(args, {"n": n, "normal_form": text, "terms": len(f.terms)}, text)
    return EXIT_OK


def cmd_eval(args) -> int:
    alg = make_backend(args.backend, args.probe, args.components)
    witness = witness_from_json(_read_json(args.assign), alg)
    f = parse_pc(args.expr, witness.n)
    value = evaluate(f, witness)
    _emit(args, {"backend": alg.name, "value": element_to_json(value, alg)}, alg.render(value))
    return EXIT_OK


def cmd_solve(args) -> int:
    alg = make_backend(args.backend, args.probe, args.components)
    f = poly_from_json(_read_json(args.poly))
    if not f:
        raise UsageError("the polynomial is zero; its image is {0}")
    target = parse_element(args.target, alg)
    start = time.perf_counter()
    witness, trace = solve(f, target, alg, check_lifts=args.check_lifts)
    ok = verify(f, witness, target)
    elapsed = time.perf_counter() - start
    if args.trace:
        Path(args.trace).write_text(json.dumps(trace.to_json(), indent=2), encoding="utf-8")
    payload = witness_to_json(witness)
    payload["verified"] = ok
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(json.dumps(payload, indent=2))
        print(f"# verified: {ok} ({elapsed:.3f}s, {len(trace.steps)} reduction steps)", file=sys.stderr)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_independence(args) -> int:
    if args.n < 1 or args.r < 0:
        raise UsageError("need n >= 1 and r >= 0")
    family = generator_family(args.n, args.r, args.kind)
    expected = math.factorial(args.n) * len(cb.compositions(args.n, args.r))
    if args.kind == TWO:
        expected *= args.n
    rank = independence_rank(family)
    ok = rank == expected == len(family)
    _emit(args, {"n": args.n, "r": args.r, "kind": args.kind, "rank": rank,
                 "expected": expected, "independent": ok},
          f"rank {rank} of {expected} ({'independent' if ok else 'DEPENDENT'})")
    return EXIT_OK if ok else EXIT_VERIFY


def _parse_sigma(text: str | None, n: int):
    if text is None:
        return cb.identity_perm(n)
    try:
        sigma = tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError as exc:
        raise UsageError(f"--sigma takes comma-separated integers, got {text!r}") from exc
    if sorted(sigma) != list(range(1, n + 1)):
        raise UsageError(f"--sigma {text!r} is not a permutation of 1..{n}")
    return sigma


def cmd_gen_system(args) -> int:
    if args.paper_example:
        layout = linsys.worked_example_layout(args.r if args.r is not None else 1)
        system = linsys.gen_system((1, 2), 2, args.r if args.r is not None else 1, 2)
        kernel = system.kernel()
        lines = []
        for block, eqs in layout.items():
            lines.append(f"{block}:")
            lines.extend(f"  {e}" for e in eqs)
        lines.append(f"kernel dimension: {len(kernel)}")
        _emit(args, {"layout": layout, "kernel_dimension": len(kernel)}, "\n".join(lines))
        return EXIT_OK
    if args.n is None or args.r is None or args.kmax is None:
        raise UsageError("gen-system needs --n, --r and --kmax (or --paper-example)")
    if args.n < 1 or args.r < 0 or args.kmax < 0:
        raise UsageError("need n >= 1, r >= 0, kmax >= 0")
    sigma = _parse_sigma(args.sigma, args.n)
    system = linsys.gen_system(sigma, args.n, args.r, args.kmax)
    rank = system.rank()
    rows, cols = system.shape
    kernel_dim = cols - rank
    lines = [f"sigma={sigma} n={args.n} r={args.r} kmax={args.kmax}",
             f"rows {rows}, unknowns {cols}, rank {rank}, kernel dimension {kernel_dim}"]
    if args.show_equations:
        for (k, b), row in zip(system.rows, system.entries):
            terms = [(c, col[0], col[1]) for c, col in zip(row, system.columns) if c]
            if terms:
                lines.append(f"  k={k} b={b}: {linsys.render_equation(terms)}")
    _emit(args, {"sigma": list(sigma), "n": args.n, "r": args.r, "kmax": args.kmax,
                 "rows": rows, "unknowns": cols, "rank": rank, "kernel_dimension": kernel_dim},
          "\n".join(lines))
    return EXIT_OK


def cmd_verify_identities(args) -> int:
    try:
        fn = checker(args.lemma)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc
    results = []
    ns = [args.n] if args.n is not None else [1, 2, 3]
    for n in ns:
        for label, ok in fn(n, args.r, args.kmax):
            results.append((f"n={n} {label}", ok))
    if args.samples is not None and args.samples < len(results):
        results = random.Random(args.seed).sample(results, args.samples)
    failed = [lab for lab, ok in results if not ok]
    if args.json:
        print(json.dumps({"lemma": args.lemma, "instances": len(results), "failed": failed},
                         indent=2))
    else:
        for label, ok in results:
            print(f"{'PASS' if ok else 'FAIL'} {label}")
        print(f"{len(results) - len(failed)}/{len(results)} instances passed")
    return EXIT_OK if not failed else EXIT_VERIFY


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="surjpoly",
        description="Partially commutative polynomials, inner-derivation algebras and "
                    "constructive witnesses for images of multilinear polynomials.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--seed", type=int, default=0, help="seed for randomized choices")

    def backend_opts(sp):
        sp.add_argument("--backend", choices=["weyl", "shift", "product"], default="weyl")
        sp.add_argument("--probe", type=int, default=DEFAULT_PROBE,
                        help="columns compared for shift operators (default %(default)s)")
        sp.add_argument("--components", default="weyl,weyl",
                        help="comma-separated factors of the product backend")

    sp = sub.add_parser("normalize", help="print the normal form of a polynomial")
    sp.add_argument("expr")
    sp.add_argument("--n", type=int, help="number of noncommuting variables")
    common(sp)
    sp.set_defaults(func=cmd_normalize)

    sp = sub.add_parser("eval", help="evaluate a polynomial at an assignment")
    sp.add_argument("expr")
    sp.add_argument("--assign", required=True, help="JSON file with x list and optional u")
    backend_opts(sp)
    common(sp)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("solve", help="find x with f(x) equal to a target")
    sp.add_argument("--poly", required=True, help="JSON polynomial file")
    sp.add_argument("--target", required=True, help="target element expression")
    sp.add_argument("--trace", help="write the reduction trace to this JSON file")
    sp.add_argument("--check-lifts", action="store_true",
                    help="re-evaluate both sides of every variable substitution")
    backend_opts(sp)
    common(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("independence", help="rank of the admissible generator family")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--kind", choices=[ONE, TWO], required=True)
    common(sp)
    sp.set_defaults(func=cmd_independence)

    sp = sub.add_parser("gen-system", help="build the linear system and report its kernel")
    sp.add_argument("--n", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--kmax", type=int)
    sp.add_argument("--sigma", help="permutation as comma-separated images, e.g. 2,1,3")
    sp.add_argument("--paper-example", action="store_true",
                    help="print the n=2 worked example: k=1 and k=2 equations and their difference")
    sp.add_argument("--show-equations", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_gen_system)

    sp = sub.add_parser("verify-identities", help="check polynomial identities instance by instance")
    sp.add_argument("--lemma", required=True, choices=sorted(CHECKERS) + sorted(ALIASES))
    sp.add_argument("--n", type=int, help="variable count (default: 1, 2 and 3)")
    sp.add_argument("--r", type=int, default=2)
    sp.add_argument("--kmax", type=int, default=3)
    sp.add_argument("--samples", type=int, help="check a seeded random subset of instances")
    common(sp)
    sp.set_defaults(func=cmd_verify_identities)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, ParseError, FormatError) as exc:
        print(f"surjpoly: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SoundnessError as exc:
        print(f"surjpoly: internal soundness failure: {exc}", file=sys.stderr)
        return EXIT_SOUNDNESS
    except ValueError as exc:
        print(f"surjpoly: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
