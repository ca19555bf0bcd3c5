"""Command-line interface.

Commands
--------
check FILE
    Parse and validate a problem file.
homology FILE [--format json|table]
    Betti numbers, generators, and validation verdicts.
search FILE --max-len N [--max-states M] [--format json|table]
    Eigenvalue-1 products of holonomy words up to the given length.
oracle --fiber-genus H --base-genus G --base closed|one_boundary
    Trivial-holonomy cross-check of the engine against the Künneth product.

Exit codes: 0 success and all validations pass, 1 validation or verdict
failure, 2 malformed input.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from .homology import BettiReport, homology
from .search import DEFAULT_MAX_STATES, StateLimitError, find_fixed_classes, word_str
from .serialize import (ParseError, dumps, homology_report_dict,
                        oracle_report_dict, parse_problem, search_report_dict)
from .symplectic import (BASE_TYPES, CLOSED, HolonomyProblem, SymplecticMatrix,
                         ValidationError, build_problem)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MALFORMED = 2


def kunneth_betti(h: int, g: int, base_type: str) -> tuple[int, ...]:
    """Betti vector of fiber × base by the Künneth product (independent of
    the bundle engine)."""
    fiber = (1, 2 * h, 1)
    base = (1, 2 * g, 1) if base_type == CLOSED else (1, 2 * g, 0)
    out = [0] * 5
    for i, bf in enumerate(fiber):
        for j, bb in enumerate(base):
            out[i + j] += bf * bb
    return tuple(out)


def _use_color() -> bool:
    return sys.stdout.isatty() and not os.environ.get("NO_COLOR")


def _verdict_text(status: str) -> str:
    label = {"pass": "PASS", "fail": "FAIL", "n/a": "n/a "}[status]
    if _use_color():
        color = {"pass": "\x1b[32m", "fail": "\x1b[31m", "n/a": ""}[status]
        reset = "\x1b[0m" if color else ""
        return f"{color}{label}{reset}"
    return label


def _frac_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _vec_text(v) -> str:
    return "(" + ", ".join(_frac_text(x) for x in v) + ")"


def _homology_table(report: BettiReport) -> str:
    lines = [
        "surface bundle homology",
        f"  fiber genus : {report.h}",
        f"  base        : {report.base_type}, genus {report.g}",
        "  betti       : " + " ".join(f"b{i}={b}" for i, b in enumerate(report.betti)),
        f"  dims        : W={report.dim_W} Fix={report.dim_Fix} K={report.dim_K}"
        + (f" rank_beta={report.rank_beta}" if report.rank_beta is not None else ""),
        "  generators:",
    ]
    for gen in report.generators:
        extra = ""
        if gen.index is not None:
            extra = f" #{gen.index}"
        elif gen.vector is not None:
            extra = " " + _vec_text(gen.vector)
        elif gen.cylinder is not None:
            extra = " " + " | ".join(_vec_text(c) for c in gen.cylinder.components)
        elif gen.coefficient is not None:
            extra = f" boundary {gen.coefficient}·[S1]"
        lines.append(f"    H{gen.degree}  {gen.label}{extra}")
    lines.append("  validations:")
    for v in report.validations:
        lines.append(f"    {v.name:<22} {_verdict_text(v.status)}  {v.detail}")
    return "\n".join(lines) + "\n"


def _search_table(problem: HolonomyProblem, hits, max_len: int) -> str:
    lines = [
        "fixed-class search",
        f"  fiber genus : {problem.h}",
        f"  base        : {problem.base_type}, genus {problem.g}",
        f"  max length  : {max_len}",
        f"  hits        : {len(hits)}",
    ]
    for hit in hits:
        flags = []
        if hit.product_is_identity:
            flags.append("product=I (homologically trivial word; inconclusive)")
        if hit.fiber_genus_two_note:
            flags.append("genus-2 fiber note")
        lines.append(f"    word '{word_str(hit.word)}'  fixed dim {hit.fixed_space.dim}"
                     + ("  [" + "; ".join(flags) + "]" if flags else ""))
        for v in hit.fixed_space.basis:
            lines.append(f"      fixed {_vec_text(v)}")
        lines.append("      cycle " + " -> ".join(_vec_text(v) for v in hit.cycle))
    return "\n".join(lines) + "\n"


def _read_problem(path: str) -> HolonomyProblem:
    with open(path, "rb") as fh:
        return parse_problem(fh.read())


def _cmd_check(args) -> int:
    p = _read_problem(args.file)
    kinds = ", ".join("word" if e and '"word"' in e else "matrix"
                      for e in (p.source_entries or ())) or "matrices"
    print(f"ok: fiber_genus={p.h} base={p.base_type} genus={p.g} "
          f"entries={len(p.holonomy)} ({kinds})")
    return EXIT_OK


def _cmd_homology(args) -> int:
    p = _read_problem(args.file)
    report = homology(p)
    if args.format == "json":
        sys.stdout.write(dumps(homology_report_dict(report)))
    else:
        sys.stdout.write(_homology_table(report))
    return EXIT_OK if report.all_valid else EXIT_INVALID


def _cmd_search(args) -> int:
    p = _read_problem(args.file)
    hits = find_fixed_classes(p, args.max_len, max_states=args.max_states)
    if args.format == "json":
        sys.stdout.write(dumps(search_report_dict(p, hits, args.max_len,
                                                  args.max_states)))
    else:
        sys.stdout.write(_search_table(p, hits, args.max_len))
    return EXIT_OK


def _cmd_oracle(args) -> int:
    h, g = args.fiber_genus, args.base_genus
    ident = SymplecticMatrix.identity(h)
    p = build_problem(h, args.base, g, [ident] * (2 * g))
    report = homology(p)
    expected = kunneth_betti(h, g, args.base)
    payload = oracle_report_dict(report, expected)
    sys.stdout.write(dumps(payload))
    ok = payload["agree"] and report.all_valid
    return EXIT_OK if ok else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="surfbundle",
        description="Homology of surface bundles over surfaces from "
                    "symplectic holonomy data, with an eigenvalue-1 word search.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="parse and validate a problem file")
    p_check.add_argument("file")
    p_check.set_defaults(func=_cmd_check)

    p_hom = sub.add_parser("homology", help="compute Betti numbers and generators")
    p_hom.add_argument("file")
    p_hom.add_argument("--format", choices=("json", "table"), default="json")
    p_hom.set_defaults(func=_cmd_homology)

    p_search = sub.add_parser("search", help="search for eigenvalue-1 products")
    p_search.add_argument("file")
    p_search.add_argument("--max-len", type=int, required=True)
    p_search.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    p_search.add_argument("--format", choices=("json", "table"), default="json")
    p_search.set_defaults(func=_cmd_search)

    p_oracle = sub.add_parser("oracle",
                              help="trivial-holonomy Künneth cross-check")
    p_oracle.add_argument("--fiber-genus", type=int, required=True)
    p_oracle.add_argument("--base-genus", type=int, required=True)
    p_oracle.add_argument("--base", choices=BASE_TYPES, required=True)
    p_oracle.set_defaults(func=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except StateLimitError as exc:
        print(f"error: search state limit: {exc} "
              "(rerun with a larger --max-states)", file=sys.stderr)
        return EXIT_INVALID
    except ValidationError as exc:
        print(f"error: invalid problem: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
