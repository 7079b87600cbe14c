"""Command-line interface: solution files, analysis reports, verifiers.

File format: '#' comment lines, then a line with n, then n rows of n
space-separated integers; row x lists sigma_x(1..n), all 1-based.  Points are
0-based everywhere inside the library.

Exit codes: 0 pass, 1 validation failure, 2 theorem-verdict failure,
3 precondition/parse failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from ybrace.perm import DEFAULT_CLOSURE_CAP, Permutation, factorize, prime_divisors
from ybrace.solution import CONGRUENCE_SIZE_CAP, InvalidSolution, Solution

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_VERDICT = 2
EXIT_PRECONDITION = 3


class ParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# file format


def parse_solution_text(text: str) -> Solution:
    rows = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"line {lineno}: not integers: {raw!r}")
        if n is None:
            if len(values) != 1 or values[0] < 1:
                raise ParseError(f"line {lineno}: expected the size n first")
            n = values[0]
            continue
        if len(values) != n:
            raise ParseError(f"line {lineno}: expected {n} entries")
        if sorted(values) != list(range(1, n + 1)):
            raise ParseError(f"line {lineno}: not a permutation of 1..{n}")
        rows.append([v - 1 for v in values])
    if n is None:
        raise ParseError("empty file")
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, found {len(rows)}")
    try:
        return Solution([Permutation(r) for r in rows])
    except InvalidSolution:
        raise
    # Permutation errors cannot occur: rows were checked above


def read_solution(path: str) -> Solution:
    with open(path, encoding="utf-8") as fh:
        return parse_solution_text(fh.read())


def format_solution(S: Solution, comment: str | None = None) -> str:
    lines = []
    if comment:
        for part in comment.splitlines():
            lines.append(f"# {part}")
    lines.append(str(S.n))
    for x in range(S.n):
        lines.append(" ".join(str(v + 1) for v in S.sigma[x].images))
    return "\n".join(lines) + "\n"


def write_solution(S: Solution, path: str, comment: str | None = None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_solution(S, comment))


# ---------------------------------------------------------------------------
# reports


def _emit(report: dict, fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(report, indent=2, sort_keys=True, default=_json_default))
        out.write("\n")
    else:
        for line in _text_lines(report, indent=0):
            out.write(line + "\n")


def _json_default(v):
    if isinstance(v, frozenset):
        return sorted(v)
    if isinstance(v, tuple):
        return list(v)
    return str(v)


def _text_lines(value, indent: int, key: str = ""):
    pad = "  " * indent
    label = f"{key}: " if key else ""
    if isinstance(value, dict):
        lines = [f"{pad}{key}:"] if key else []
        for k in value:
            lines.extend(_text_lines(value[k], indent + (1 if key else 0), str(k)))
        return lines
    if isinstance(value, (list, tuple)) and value and isinstance(value[0], dict):
        lines = [f"{pad}{key}:"]
        for item in value:
            lines.extend(_text_lines(item, indent + 1))
            lines.append("")
        if lines and lines[-1] == "":
            lines.pop()
        return lines
    return [f"{pad}{label}{value}"]


def _solution_stats(S: Solution, cap: int) -> dict:
    G = S.perm_group(cap)
    stats = {
        "n": S.n,
        "valid": True,
        "indecomposable": S.is_indecomposable(),
        "mp_level": S.mp_level(),
        "retract_tower": S.retract_tower_sizes(),
        "group_order": G.order,
    }
    if S.n <= CONGRUENCE_SIZE_CAP:
        stats["simple"] = S.is_simple()
    return stats


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    try:
        S = read_solution(args.path)
    except ParseError as e:
        _emit({"valid": False, "parse_error": str(e)}, args.format)
        return EXIT_PRECONDITION
    except InvalidSolution as e:
        _emit(
            {"valid": False, "violations": [repr(v) for v in e.violations]},
            args.format,
        )
        return EXIT_INVALID
    _emit({"valid": True, "n": S.n}, args.format)
    return EXIT_OK


def cmd_analyze(args) -> int:
    try:
        S = read_solution(args.path)
    except ParseError as e:
        _emit({"parse_error": str(e)}, args.format)
        return EXIT_PRECONDITION
    except InvalidSolution as e:
        _emit({"valid": False, "violations": [repr(v) for v in e.violations]},
              args.format)
        return EXIT_INVALID
    report = {"solution": _solution_stats(S, args.cap_group)}
    fac = factorize(S.n)
    if S.n > 1 and all(e == 1 for e in fac.values()) and S.is_indecomposable():
        from ybrace.gbrace import GBrace

        GB = GBrace(S, args.cap_group, seed=args.seed)
        soc = GB.socle()
        report["brace"] = {
            "socle_order": len(soc),
            "socle_primes": list(prime_divisors(len(soc))) if len(soc) > 1 else [],
            "sylow_orders": {
                str(p): len(GB.sylow_additive(p)) for p in sorted(fac)
            },
            "additive_exponent": GB.exponent,
        }
    _emit(report, args.format)
    return EXIT_OK


def cmd_construct(args) -> int:
    from ybrace.family import construct

    try:
        primes = [int(p) for p in args.primes.split(",")]
        S = construct(primes)
    except ValueError as e:
        _emit({"error": str(e)}, args.format)
        return EXIT_PRECONDITION
    comment = f"size {S.n} solution from primes {','.join(map(str, primes))}"
    if args.output:
        write_solution(S, args.output, comment)
    else:
        sys.stdout.write(format_solution(S, comment))
    return EXIT_OK


def cmd_retract_tower(args) -> int:
    try:
        S = read_solution(args.path)
    except ParseError as e:
        _emit({"parse_error": str(e)}, args.format)
        return EXIT_PRECONDITION
    except InvalidSolution:
        _emit({"valid": False}, args.format)
        return EXIT_INVALID
    sizes = S.retract_tower_sizes()
    _emit({"sizes": sizes, "mp_level": S.mp_level()}, args.format)
    return EXIT_OK


def cmd_verify_theorems(args) -> int:
    from ybrace.gbrace import (
        GBrace,
        squarefree_chain,
        verify_abelian_sylow_retractability,
        verify_chain_matches_sylow_products,
        verify_lambda_on_generators,
        verify_multipermutation_property,
        verify_sylow_decomposition,
    )

    try:
        S = read_solution(args.path)
    except ParseError as e:
        _emit({"parse_error": str(e)}, args.format)
        return EXIT_PRECONDITION
    except InvalidSolution as e:
        _emit({"valid": False, "violations": [repr(v) for v in e.violations]},
              args.format)
        return EXIT_INVALID
    fac = factorize(S.n)
    pre = {}
    if any(e > 1 for e in fac.values()) or S.n <= 1:
        pre["square_free"] = False
    if not S.is_indecomposable():
        pre["indecomposable"] = False
    if pre:
        _emit({"preconditions": pre}, args.format)
        return EXIT_PRECONDITION
    GB = GBrace(S, args.cap_group, seed=args.seed)
    sylows = {p: GB.sylow_additive(p) for p in sorted(fac)}
    chain = squarefree_chain(S, sylows=sylows, cap=args.cap_group)
    report = {
        "solution": _solution_stats(S, args.cap_group),
        "kernel_chain": {
            "primes": list(chain.primes),
            "T_orders": [len(t) for t in chain.T],
            "K_orders": [len(k) for k in chain.K],
            "block_system_sizes": [b.num_blocks for b in chain.blocks],
            **chain.report,
            "ok": chain.ok,
        },
        "sylow_decomposition": verify_sylow_decomposition(GB),
        "chain_vs_sylow_products": verify_chain_matches_sylow_products(GB, chain),
        "multipermutation": verify_multipermutation_property(S, args.cap_group),
        "abelian_sylow_retractability":
            verify_abelian_sylow_retractability(S, args.cap_group),
        "lambda_on_generators": verify_lambda_on_generators(GB),
    }
    verdicts = [
        report["kernel_chain"]["ok"],
        report["sylow_decomposition"]["ok"],
        report["chain_vs_sylow_products"]["ok"],
        report["multipermutation"]["ok"],
        report["abelian_sylow_retractability"]["ok"],
        report["lambda_on_generators"]["ok"],
    ]
    report["ok"] = all(verdicts)
    _emit(report, args.format)
    return EXIT_OK if report["ok"] else EXIT_VERDICT


def cmd_enumerate(args) -> int:
    import os

    from ybrace.census import census_report, enumerate_solutions

    try:
        entries = enumerate_solutions(
            args.size,
            indecomposable_only=args.indecomposable,
            allow_large=args.allow_large,
        )
    except ValueError as e:
        _emit({"error": str(e)}, args.format)
        return EXIT_PRECONDITION
    report = census_report(entries)
    report["entries"] = [
        {
            "indecomposable": e.indecomposable,
            "mp_level": e.mp_level,
            "simple": e.simple,
            "group_order": e.group_order,
        }
        for e in entries
    ]
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for i, e in enumerate(entries):
            write_solution(
                e.solution(),
                os.path.join(args.out, f"size{args.size}_class{i:03d}.txt"),
                f"class {i} of size {args.size}",
            )
        report["written"] = len(entries)
    _emit(report, args.format)
    return EXIT_OK


def cmd_simple_check(args) -> int:
    try:
        S = read_solution(args.path)
    except ParseError as e:
        _emit({"parse_error": str(e)}, args.format)
        return EXIT_PRECONDITION
    except InvalidSolution:
        _emit({"valid": False}, args.format)
        return EXIT_INVALID
    if S.n > CONGRUENCE_SIZE_CAP:
        _emit({"error": f"congruence search capped at n <= {CONGRUENCE_SIZE_CAP}"},
              args.format)
        return EXIT_PRECONDITION
    simple = S.is_simple()
    _emit({"n": S.n, "simple": simple,
           "congruences": len(S.congruences())}, args.format)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument surface


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ybrace",
        description="Set-theoretic Yang-Baxter solutions and finite left braces.",
    )
    ap.add_argument("--seed", type=int, default=0, metavar="u64",
                    help="seed for sampled verification")
    ap.add_argument("--cap-group", type=int, default=DEFAULT_CLOSURE_CAP,
                    help="maximum permutation-group size to materialize")
    ap.add_argument("--format", choices=["json", "text"], default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a solution file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="solution and brace statistics")
    p.add_argument("path")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("construct", help="build a family solution from primes")
    p.add_argument("--primes", required=True, metavar="p1,p2,...")
    p.add_argument("-o", "--output", metavar="path")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("retract-tower", help="sizes of the iterated retracts")
    p.add_argument("path")
    p.set_defaults(func=cmd_retract_tower)

    p = sub.add_parser("verify-theorems",
                       help="run all structural verifiers on a solution")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify_theorems)

    p = sub.add_parser("enumerate", help="all classes of a given size")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--indecomposable", action="store_true")
    p.add_argument("--allow-large", action="store_true",
                   help="permit size 5 (slow)")
    p.add_argument("--out", metavar="dir")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("simple-check", help="exhaustive congruence search")
    p.add_argument("path")
    p.set_defaults(func=cmd_simple_check)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
