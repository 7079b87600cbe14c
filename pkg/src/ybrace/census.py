"""Exhaustive enumeration of solutions of a given size up to isomorphism.

Backtracking over the sigma rows with early pruning by the pairwise
permutation criterion and involutivity; classes are identified by the
lexicographically least sigma table over all point relabelings.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from ybrace.perm import Permutation, prime_divisors
from ybrace.solution import Solution

ENUMERATION_SIZE_CAP = 4  # n = 5 only behind an explicit opt-in


def canonical_table(table) -> tuple:
    """Lexicographically least relabeling of a sigma table.

    Relabeling by pi sends sigma_x to pi o sigma_{pi^-1(x)} o pi^-1.
    """
    n = len(table)
    best = None
    for pi in permutations(range(n)):
        inv = [0] * n
        for a, b in enumerate(pi):
            inv[b] = a
        cand = tuple(
            tuple(pi[table[inv[x]][inv[y]]] for y in range(n)) for x in range(n)
        )
        if best is None or cand < best:
            best = cand
    return best


def _pair_ok(rows, x, y, n):
    """The pairwise permutation criterion at (x, y), if fully determined:
    sigma_x sigma_{sigma_x^-1(y)} = sigma_y sigma_{sigma_y^-1(x)}.

    (Involutivity needs no check: with the second component of r defined
    through sigma it holds identically.)
    """
    sx, sy = rows[x], rows[y]
    a = sx.index(y)
    b = sy.index(x)
    if rows[a] is not None and rows[b] is not None:
        if any(sx[rows[a][z]] != sy[rows[b][z]] for z in range(n)):
            return False
    return True


def enumerate_tables(n: int):
    """All valid sigma tables of size n (not yet reduced by isomorphism)."""
    perms = [tuple(p) for p in permutations(range(n))]
    rows = [None] * n
    out = []

    def consistent(k):
        for x in range(k + 1):
            if not _pair_ok(rows, x, k, n) or not _pair_ok(rows, k, x, n):
                return False
        return True

    def rec(k):
        if k == n:
            try:
                out.append(Solution([Permutation(r, check=False) for r in rows]))
            except Exception:
                pass
            return
        for p in perms:
            rows[k] = p
            if consistent(k):
                rec(k + 1)
        rows[k] = None

    rec(0)
    return out


@dataclass(frozen=True)
class CensusEntry:
    table: tuple  # canonical sigma table
    size: int
    indecomposable: bool
    mp_level: object  # int or None
    simple: bool
    group_order: int

    def solution(self) -> Solution:
        return Solution([Permutation(r) for r in self.table])


def enumerate_solutions(n: int, indecomposable_only: bool = False,
                        allow_large: bool = False):
    """All isomorphism classes of solutions of size n, as census entries."""
    if n > ENUMERATION_SIZE_CAP and not (allow_large and n == 5):
        raise ValueError(
            f"enumeration supports n <= {ENUMERATION_SIZE_CAP} "
            "(n = 5 behind allow_large)"
        )
    seen = {}
    for S in enumerate_tables(n):
        key = canonical_table(tuple(s.images for s in S.sigma))
        if key in seen:
            continue
        C = Solution([Permutation(r) for r in key])
        if indecomposable_only and not C.is_indecomposable():
            seen[key] = None
            continue
        seen[key] = CensusEntry(
            table=key,
            size=n,
            indecomposable=C.is_indecomposable(),
            mp_level=C.mp_level(),
            simple=C.is_simple(),
            group_order=C.perm_group().order,
        )
    entries = [e for e in seen.values() if e is not None]
    entries.sort(key=lambda e: e.table)
    return entries


def census_report(entries) -> dict:
    """Aggregate statistics, including the multipermutation-level bound for
    square-free sizes (level <= number of prime factors on indecomposables)."""
    report = {
        "size": entries[0].size if entries else 0,
        "classes": len(entries),
        "indecomposable_classes": sum(1 for e in entries if e.indecomposable),
        "multipermutation_classes": sum(
            1 for e in entries if e.mp_level is not None
        ),
        "simple_classes": sum(1 for e in entries if e.simple),
    }
    if entries:
        n = entries[0].size
        fac = prime_divisors(n)
        squarefree = n > 1 and len(set(fac)) == len(fac) and (
            n == 1 or _prod(fac) == n
        )
        if squarefree:
            bound = len(fac)
            report["level_bound"] = bound
            report["level_bound_holds"] = all(
                e.mp_level is not None and e.mp_level <= bound
                for e in entries
                if e.indecomposable
            )
    return report


def _prod(values):
    out = 1
    for v in values:
        out *= v
    return out
