"""The inductive family of indecomposable multipermutation solutions.

For distinct primes p_1, ..., p_n this builds a solution of size p_1...p_n
and multipermutation level exactly n; each extension step glues a Z/(p)
coordinate onto the previous solution and its retract recovers that
solution.
"""

from __future__ import annotations

import numpy as np

from ybrace.perm import DEFAULT_CLOSURE_CAP, Permutation, prime_divisors
from ybrace.solution import Solution


def is_prime(p: int) -> bool:
    return p >= 2 and prime_divisors(p) == (p,)


def base_solution(p: int) -> Solution:
    """The cyclic indecomposable solution on p points: sigma_a(b) = b+1."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    shift = Permutation([(b + 1) % p for b in range(p)])
    return Solution([shift] * p)


def extend(S: Solution, p: int) -> Solution:
    """One inductive step: the solution on Z/(p) x X.

    Point (a, x) is encoded as a*|X| + x.  The new permutations are
    sigma_(a,x)(b, y) = (b + [x == sigma_x(y)], sigma_x(y)).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    m = S.n
    sigma = []
    for a in range(p):
        for x in range(m):
            images = np.empty(p * m, dtype=np.int64)
            for b in range(p):
                for y in range(m):
                    sy = int(S.smat[x, y])
                    bb = (b + (1 if x == sy else 0)) % p
                    images[b * m + y] = bb * m + sy
            sigma.append(Permutation(images))
    return Solution(sigma)


def construct(primes) -> Solution:
    """Iterated extension over the primes, in order."""
    primes = list(primes)
    if len(set(primes)) != len(primes):
        raise ValueError("primes must be pairwise distinct")
    for p in primes:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    if not primes:
        raise ValueError("need at least one prime")
    S = base_solution(primes[0])
    for p in primes[1:]:
        S = extend(S, p)
    return S


def expected_group_order(primes) -> int:
    """Closed form p_1 * p_2^(p_1) * ... * p_n^(p_1...p_{n-1})."""
    primes = list(primes)
    total = 1
    size = 1
    for p in primes:
        total *= p**size
        size *= p
    return total


def fiber_blocks(S: Solution, inner_size: int):
    """The Z/(p)-fiber partition of an extended solution.

    With the a*|X| + x encoding, the fiber over x is {x, x+|X|, ...}; this
    is exactly the retract partition of a family solution.
    """
    from ybrace.perm import BlockSystem

    n = S.n
    p = n // inner_size
    partition = tuple(
        tuple(b * inner_size + x for b in range(p)) for x in range(inner_size)
    )
    block_of = [0] * n
    for i, blk in enumerate(partition):
        for y in blk:
            block_of[y] = i
    return BlockSystem(partition, tuple(block_of))


def verify_family(primes, cap: int = DEFAULT_CLOSURE_CAP) -> dict:
    """Level-by-level checks of the construction's claimed properties.

    Checks, per level j: validity, indecomposability, the exact group order,
    Ret(X_j) isomorphic to X_{j-1}, the kernel/quotient shadow of the wreath
    decomposition, and finally the multipermutation level.
    """
    primes = list(primes)
    report = {"primes": primes, "levels": [], "ok": True}
    expected_order = expected_group_order(primes)
    if expected_order > cap:
        raise ValueError(f"expected group order {expected_order} exceeds cap {cap}")
    prev = None
    size = 1
    for j, p in enumerate(primes, start=1):
        S = base_solution(p) if prev is None else extend(prev, p)
        size *= p
        G = S.perm_group(cap)
        level = {
            "prime": p,
            "size": S.n,
            "valid": not S.validate(),
            "indecomposable": S.is_indecomposable(),
            "group_order": G.order,
            "group_order_expected": expected_group_order(primes[:j]),
        }
        level["group_order_ok"] = level["group_order"] == level["group_order_expected"]
        if prev is not None:
            ret, _ = S.retract()
            level["retract_size"] = ret.n
            level["retract_is_previous"] = ret.is_isomorphic(prev) is not None
            blocks = fiber_blocks(S, prev.n)
            K = G.kernel_of_block_action(blocks)
            kernel_expected = p ** prev.n
            level["kernel_order"] = len(K)
            level["kernel_order_ok"] = len(K) == kernel_expected
            orders = G.orders()[sorted(K)]
            level["kernel_elementary_abelian"] = bool(
                np.all((orders == 1) | (orders == p))
            ) and G._is_elementary_abelian(K, p)
            level["quotient_order_ok"] = (
                G.order // len(K) == prev.perm_group(cap).order
            )
        report["levels"].append(level)
        report["ok"] &= all(
            v for k, v in level.items() if k.endswith("_ok") or k in
            ("valid", "indecomposable")
        )
        prev = S
    report["mp_level"] = prev.mp_level()
    report["mp_level_ok"] = report["mp_level"] == len(primes)
    report["ok"] = bool(report["ok"] and report["mp_level_ok"])
    return report
