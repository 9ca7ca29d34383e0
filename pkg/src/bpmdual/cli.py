"""Command-line interface.

Subcommands: coeff, poly, verify, count, sens, apxdeg, eval.  Graph files
use the text format of `bigraph.parse_graph` (first line n, then n rows of
0/1 characters); polynomial files are the TSV or JSON dumps produced by
`poly`.  Exit codes: 0 success, 1 verification failure, 2 usage or input
errors (including size caps, which print the configured limit).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from ._errors import BpmDualError, SizeLimitError
from .bigraph import BipartiteGraph, parse_graph
from .coeff import dual_coefficient
from .oracle import (
    bpm_star_value,
    coefficient_table,
    elementary_sum_coefficient,
    mc_chi_sum_coefficient,
    mobius_coefficient,
    permitted_sum_coefficient,
    star_table,
    zeta_transform,
)
from .ordered import canonical_sort, is_totally_ordered
from .polyspace import DualPolynomial, bound_report, evaluate, materialize
from .sensitivity import construct_path_input, sensitivity_at

CAPS_NOTE = (
    "size caps: coeff oracles n<=4 (permitted n<=5); poly/verify n<=4 "
    "(n=5 with --huge); count n<=10; sens n<=16; apxdeg n<=64, --assemble n<=3"
)


def _read_graph(path: str) -> BipartiteGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def _parse_rational(text: str) -> Fraction:
    if "/" in text:
        num, _, den = text.partition("/")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def _cmd_coeff(args) -> int:
    g = _read_graph(args.graph)
    method = args.method
    if method == "formula":
        value = dual_coefficient(g)
    elif method == "mobius":
        value = mobius_coefficient(g)
    elif method == "chisum":
        value = mc_chi_sum_coefficient(g)
    elif method == "elemsum":
        value = elementary_sum_coefficient(g)
    else:  # permitted
        if not is_totally_ordered(g):
            # not totally ordered: the coefficient is identically zero
            print(0)
            return 0
        value = permitted_sum_coefficient(canonical_sort(g)[0])
    print(value)
    return 0


def _cmd_poly(args) -> int:
    poly = materialize(args.n)
    text = poly.to_json() if args.format == "json" else poly.to_tsv()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if args.format == "json":
            sys.stdout.write("\n")
    return 0


def _cmd_verify(args) -> int:
    import numpy as np

    n = args.n
    if n > 4 and not args.huge:
        raise SizeLimitError("n", n, 4)
    table = coefficient_table(n, huge=args.huge)
    size = 1 << (n * n)
    failures = 0
    for mask in range(size):
        expected = table.terms.get(mask, 0)
        if dual_coefficient(BipartiteGraph.from_mask(n, mask)) != expected:
            failures += 1
    coeffs = np.zeros(size, dtype=np.int64)
    for mask, c in table.terms.items():
        coeffs[mask] = c
    reconstructed = zeta_transform(coeffs, n * n)
    star = star_table(n, huge=args.huge)
    eval_failures = int((reconstructed != star).sum())
    print(f"{size} coefficients compared against the closed form; {failures} mismatches")
    print(f"{size} evaluation points checked against the matching oracle; {eval_failures} mismatches")
    if failures or eval_failures:
        print("FAIL")
        return 1
    print("OK")
    return 0


def _cmd_count(args) -> int:
    report = bound_report(args.n)
    print(f"n\t{report.n}")
    print(f"monomial_count\t{report.monomial_count}")
    print(f"count_lower_(n!)^2\t{report.count_lower}")
    print(f"count_upper_(n+2)^(2n+2)\t{report.count_upper}")
    print(f"max_abs_coefficient\t{report.max_abs_coefficient}")
    print(f"coeff_lower_binom\t{report.coeff_lower}")
    print(f"coeff_upper_4^n\t{report.coeff_upper}")
    print(f"log2(count)/(2n*log2(n))\t{report.log2_count_ratio:.6f}")
    ok = report.count_in_bounds and report.coeff_in_bounds
    print(f"bounds\t{'OK' if ok else 'VIOLATED'}")
    return 0 if ok else 1


def _cmd_sens(args) -> int:
    report = sensitivity_at(construct_path_input(args.n))
    if args.format == "json":
        payload = {
            "n": report.n,
            "count": report.count,
            "lower_bound_formula": report.lower_bound_formula,
            "degree_lower_bound": report.degree_lower_bound,
            "sensitive_edges": [list(e) for e in report.sensitive_edges],
        }
        print(json.dumps(payload, separators=(",", ":")))
        return 0
    print(f"n\t{report.n}")
    print(f"count\t{report.count}")
    print(f"lower_bound_formula\t{report.lower_bound_formula}")
    print(f"degree_lower_bound\t{report.degree_lower_bound}")
    edges = ",".join(f"({i},{j})" for i, j in report.sensitive_edges)
    print(f"sensitive_edges\t{edges}")
    return 0


def _cmd_apxdeg(args) -> int:
    import math
    import warnings

    from .approxdeg import assemble_bpm_approximant, bpm_degree_bound

    eps = _parse_rational(args.eps)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        report = bpm_degree_bound(args.n, eps)
    log2_ep = math.log2(report.epsilon_prime.numerator) - math.log2(
        report.epsilon_prime.denominator
    ) if report.epsilon_prime.numerator < 1 << 53 else None
    if log2_ep is None:
        from .approxdeg import _log2_fraction

        log2_ep = _log2_fraction(report.epsilon_prime)
    rows = {
        "n": report.n,
        "eps": str(report.epsilon),
        "eps_prime_log2": f"{log2_ep:.4f}",
        "threshold": report.threshold,
        "and_degree": report.and_degree,
        "bound": report.overall_bound,
        "certified": report.certified,
        "eps_in_regime": report.eps_in_regime,
    }
    if args.format == "json":
        print(json.dumps(rows, separators=(",", ":")))
    else:
        for key, value in rows.items():
            print(f"{key}\t{value}")
    for w in caught:
        print(f"note: {w.message}", file=sys.stderr)
    if args.assemble:
        approx = assemble_bpm_approximant(args.n, eps)
        rep = approx.report()
        print(f"assembled_degree\t{rep.degree}")
        print(f"assembled_max_error\t{rep.max_error}")
        print(f"assembled_dual_max_error\t{rep.dual_max_error}")
        print(f"exact_terms\t{rep.exact_term_count}")
        print(f"approximated_terms\t{rep.approximated_term_count}")
    return 0


def _cmd_eval(args) -> int:
    g = _read_graph(args.graph)
    with open(args.poly, "r", encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        poly = DualPolynomial.from_json(text)
    else:
        poly = DualPolynomial.from_tsv(text, g.n)
    print(evaluate(poly, g))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bpmdual",
        description="Exact dual polynomial of bipartite perfect matching.",
        epilog=CAPS_NOTE,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeff", help="coefficient of one graph's monomial")
    p.add_argument("--graph", required=True, help="graph file")
    p.add_argument(
        "--method",
        default="formula",
        choices=["formula", "mobius", "chisum", "elemsum", "permitted"],
    )
    p.set_defaults(func=_cmd_coeff)

    p = sub.add_parser("poly", help="dump the full polynomial (n <= 4)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", default="tsv", choices=["tsv", "json"])
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=_cmd_poly)

    p = sub.add_parser("verify", help="closed form vs oracle, exhaustively")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--huge", action="store_true", help="allow n=5 (2^25 table)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("count", help="monomial count and coefficient bounds")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("sens", help="sensitivity report for the path input")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", default="tsv", choices=["tsv", "json"])
    p.set_defaults(func=_cmd_sens)

    p = sub.add_parser("apxdeg", help="approximate-degree bound report")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", required=True, help="rational like 1/3")
    p.add_argument("--assemble", action="store_true", help="certify end-to-end (n <= 3)")
    p.add_argument("--format", default="tsv", choices=["tsv", "json"])
    p.set_defaults(func=_cmd_apxdeg)

    p = sub.add_parser("eval", help="evaluate a dumped polynomial at a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--poly", required=True)
    p.set_defaults(func=_cmd_eval)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BpmDualError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
