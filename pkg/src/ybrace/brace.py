"""Finite left braces as explicit multiplication/addition tables.

A left brace is (B, +, o) with (B,+) abelian, (B,o) a group, shared neutral
element, and a o (b+c) + a = a o b + a o c.  Everything here is dense-table
arithmetic; the implicit brace on the permutation group of a solution lives
in ``gbrace``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ybrace.perm import Permutation, factorize
from ybrace.solution import Solution

EXHAUSTIVE_TRIPLE_LIMIT = 64
SAMPLE_TRIPLES = 100_000
DENSE_SIZE_CAP = 2**16
DEFAULT_SEED = 0


@dataclass(frozen=True)
class NotGroup:
    operation: str
    reason: str


@dataclass(frozen=True)
class NotAbelian:
    pass


@dataclass(frozen=True)
class NeutralMismatch:
    mul_neutral: int
    add_neutral: int


@dataclass(frozen=True)
class BraceAxiomFail:
    a: int
    b: int
    c: int


class InvalidBrace(ValueError):
    def __init__(self, violations):
        super().__init__(f"not a left brace: {violations[:3]}")
        self.violations = violations


def _neutral(table: np.ndarray):
    m = table.shape[0]
    rng = np.arange(m)
    for e in range(m):
        if np.array_equal(table[e], rng) and np.array_equal(table[:, e], rng):
            return e
    return None


def _group_violations(table: np.ndarray, name: str, rng_sampler):
    m = table.shape[0]
    out = []
    idx = np.arange(m)
    if not (np.all(np.sort(table, axis=1) == idx) and np.all(np.sort(table, axis=0) == idx[:, None])):
        out.append(NotGroup(name, "rows/columns are not permutations"))
        return out
    e = _neutral(table)
    if e is None:
        out.append(NotGroup(name, "no two-sided neutral element"))
        return out
    if m <= EXHAUSTIVE_TRIPLE_LIMIT:
        left = table[table][:, :, :]
        right = np.take(table, table, axis=1)
        if not np.array_equal(left, right):
            out.append(NotGroup(name, "associativity fails"))
    else:
        a, b, c = rng_sampler()
        if not np.array_equal(table[table[a, b], c], table[a, table[b, c]]):
            out.append(NotGroup(name, "associativity fails (sampled)"))
    return out


class Brace:
    """A validated left brace given by dense m x m tables."""

    def __init__(self, mul, add, check: bool = True, seed: int = DEFAULT_SEED):
        self.mul = np.ascontiguousarray(mul, dtype=np.int32)
        self.add = np.ascontiguousarray(add, dtype=np.int32)
        self.m = self.mul.shape[0]
        if self.m > DENSE_SIZE_CAP:
            raise ValueError(f"dense brace capped at {DENSE_SIZE_CAP} elements")
        self.seed = seed
        if check:
            violations = self.validate()
            if violations:
                raise InvalidBrace(violations)
        self.zero = _neutral(self.mul)
        self.neg = np.argmax(self.add == self.zero, axis=1).astype(np.int32)
        self.inv = np.argmax(self.mul == self.zero, axis=1).astype(np.int32)
        self._lambda = None
        self._add_orders = None

    @classmethod
    def from_tables(cls, mul, add, seed: int = DEFAULT_SEED) -> "Brace":
        return cls(mul, add, check=True, seed=seed)

    # -- validation --------------------------------------------------------

    def _sample_triples(self):
        rng = np.random.default_rng(self.seed)
        return tuple(rng.integers(0, self.m, SAMPLE_TRIPLES) for _ in range(3))

    def validate(self):
        out = []
        m = self.m
        if self.mul.shape != (m, m) or self.add.shape != (m, m):
            return [NotGroup("shape", "tables must be square and equal-sized")]
        out += _group_violations(self.mul, "mul", self._sample_triples)
        out += _group_violations(self.add, "add", self._sample_triples)
        if out:
            return out
        if not np.array_equal(self.add, self.add.T):
            out.append(NotAbelian())
        e_mul = _neutral(self.mul)
        e_add = _neutral(self.add)
        if e_mul != e_add:
            out.append(NeutralMismatch(e_mul, e_add))
        if out:
            return out
        if m <= EXHAUSTIVE_TRIPLE_LIMIT:
            bc = self.add  # [b, c]
            t1 = np.take(self.mul, bc, axis=1)  # [a, b, c] = a o (b+c)
            left = self.add[t1, np.arange(m)[:, None, None]]
            right = self.add[self.mul[:, :, None], self.mul[:, None, :]]
            if not np.array_equal(left, right):
                bad = np.argwhere(left != right)[0]
                out.append(BraceAxiomFail(*(int(v) for v in bad)))
        else:
            a, b, c = self._sample_triples()
            left = self.add[self.mul[a, self.add[b, c]], a]
            right = self.add[self.mul[a, b], self.mul[a, c]]
            if not np.array_equal(left, right):
                i = int(np.flatnonzero(left != right)[0])
                out.append(BraceAxiomFail(int(a[i]), int(b[i]), int(c[i])))
        return out

    # -- basic operations --------------------------------------------------

    def lmb(self, a: int, b: int) -> int:
        """lambda_a(b) = -a + a o b."""
        return int(self.add[self.neg[a], self.mul[a, b]])

    def lambda_table(self) -> np.ndarray:
        if self._lambda is None:
            self._lambda = self.add[self.neg[:, None], self.mul]
        return self._lambda

    def is_trivial(self) -> bool:
        return np.array_equal(self.mul, self.add)

    # -- socle and ideals --------------------------------------------------

    def socle(self) -> frozenset:
        """{a : a o b = a + b for all b} == the lambda-fixed elements."""
        by_tables = frozenset(
            int(a) for a in np.flatnonzero(np.all(self.mul == self.add, axis=1))
        )
        lam = self.lambda_table()
        by_lambda = frozenset(
            int(a)
            for a in np.flatnonzero(np.all(lam == np.arange(self.m)[None, :], axis=1))
        )
        assert by_tables == by_lambda
        assert self.is_ideal(by_tables)
        return by_tables

    def _is_additive_subgroup(self, subset) -> bool:
        s = frozenset(int(x) for x in subset)
        if self.zero not in s:
            return False
        idx = sorted(s)
        closed = set(int(v) for v in self.add[np.ix_(idx, idx)].ravel())
        return closed <= s

    def is_left_ideal(self, subset) -> bool:
        s = frozenset(int(x) for x in subset)
        if not self._is_additive_subgroup(s):
            return False
        idx = sorted(s)
        lam = self.lambda_table()
        if not set(int(v) for v in lam[:, idx].ravel()) <= s:
            return False
        # consequence of the brace identities: a left ideal is closed under o
        closed = set(int(v) for v in self.mul[np.ix_(idx, idx)].ravel())
        assert closed <= s and set(int(self.inv[i]) for i in idx) <= s
        return True

    def is_ideal(self, subset) -> bool:
        s = frozenset(int(x) for x in subset)
        if not self.is_left_ideal(s):
            return False
        idx = sorted(s)
        for g in range(self.m):
            conj = self.mul[self.mul[g, idx], self.inv[g]]
            if not set(int(v) for v in conj) <= s:
                return False
        return True

    # -- additive torsion --------------------------------------------------

    def additive_orders(self) -> np.ndarray:
        if self._add_orders is None:
            orders = np.zeros(self.m, dtype=np.int64)
            cur = np.arange(self.m)
            base = np.arange(self.m)
            k = 1
            alive = np.flatnonzero(orders == 0)
            while alive.size:
                done = cur[alive] == self.zero
                orders[alive[done]] = k
                alive = alive[~done]
                cur[alive] = self.add[cur[alive], base[alive]]
                k += 1
            self._add_orders = orders
        return self._add_orders

    def sylow_additive(self, p: int) -> frozenset:
        """The p-torsion part of (B, +); always a left ideal."""
        orders = self.additive_orders()
        mask = np.array([_is_power_of(int(o), p) for o in orders])
        out = frozenset(int(i) for i in np.flatnonzero(mask))
        assert self.is_left_ideal(out)
        return out

    def hall_additive(self, primes) -> frozenset:
        primes = set(primes)
        orders = self.additive_orders()
        mask = np.array(
            [set(factorize(int(o))) <= primes for o in orders]
        )
        out = frozenset(int(i) for i in np.flatnonzero(mask))
        assert self.is_left_ideal(out)
        return out

    # -- quotients ---------------------------------------------------------

    def quotient(self, ideal):
        """The coset brace B/I with the projection map."""
        s = sorted(int(x) for x in ideal)
        if not self.is_ideal(s):
            raise ValueError("subset is not an ideal")
        coset_min = np.min(self.add[:, s], axis=1)
        reps = sorted(set(int(v) for v in coset_min))
        label = {r: i for i, r in enumerate(reps)}
        proj = np.array([label[int(coset_min[a])] for a in range(self.m)])
        k = len(reps)
        qmul = np.empty((k, k), dtype=np.int32)
        qadd = np.empty((k, k), dtype=np.int32)
        for i, a in enumerate(reps):
            qmul[i] = proj[self.mul[a, reps]]
            qadd[i] = proj[self.add[a, reps]]
        return Brace(qmul, qadd, seed=self.seed), proj

    # -- the associated solution ------------------------------------------

    def associated_solution(self) -> Solution:
        """The solution on B with sigma_a = lambda_a."""
        lam = self.lambda_table()
        return Solution([Permutation(row) for row in lam])

    # -- structural fingerprint (used by reports instead of isomorphism) ---

    def fingerprint(self) -> dict:
        add_orders = sorted(int(o) for o in self.additive_orders())
        mul_orders = {}
        for a in range(self.m):
            k = 1
            cur = a
            while cur != self.zero:
                cur = int(self.mul[cur, a])
                k += 1
            mul_orders[a] = k
        return {
            "order": self.m,
            "additive_order_profile": _profile(add_orders),
            "multiplicative_order_profile": _profile(sorted(mul_orders.values())),
            "socle_size": len(self.socle()),
        }


def _profile(values):
    out = {}
    for v in values:
        out[v] = out.get(v, 0) + 1
    return sorted(out.items())


def _is_power_of(o: int, p: int) -> bool:
    while o % p == 0:
        o //= p
    return o == 1


def trivial_brace(orders) -> Brace:
    """Product of cyclic groups with o == + (all lambda maps trivial)."""
    orders = list(orders)
    if not orders or any(o < 1 for o in orders):
        raise ValueError("need a nonempty list of positive cyclic orders")
    m = 1
    for o in orders:
        m *= o
    add = np.empty((m, m), dtype=np.int32)
    for a in range(m):
        for b in range(m):
            add[a, b] = _mixed_add(a, b, orders)
    return Brace(add.copy(), add)


def _mixed_add(a: int, b: int, orders) -> int:
    out = 0
    mult = 1
    for o in orders:
        d = (a % o + b % o) % o
        a //= o
        b //= o
        out += d * mult
        mult *= o
    return out


@dataclass(frozen=True)
class BraceAction:
    """A homomorphism from (actor, o) into the brace automorphisms of target."""

    actor: Brace
    target: Brace
    tables: tuple  # per actor element, an automorphism of target as an image tuple

    def __post_init__(self):
        object.__setattr__(
            self, "tables", tuple(tuple(int(v) for v in t) for t in self.tables)
        )
        if len(self.tables) != self.actor.m:
            raise ValueError("one automorphism table per actor element required")
        t = self.target
        for tab in self.tables:
            arr = np.asarray(tab)
            if sorted(tab) != list(range(t.m)):
                raise ValueError("action value is not a bijection")
            if not np.array_equal(arr[t.mul], t.mul[np.ix_(arr, arr)]):
                raise ValueError("action value does not preserve multiplication")
            if not np.array_equal(arr[t.add], t.add[np.ix_(arr, arr)]):
                raise ValueError("action value does not preserve addition")
        for a in range(self.actor.m):
            for b in range(self.actor.m):
                ab = int(self.actor.mul[a, b])
                composed = tuple(
                    self.tables[a][self.tables[b][x]] for x in range(t.m)
                )
                if composed != self.tables[ab]:
                    raise ValueError("action is not a homomorphism")

    def apply(self, a: int, x: int) -> int:
        return self.tables[a][x]


def semidirect(I: Brace, L: Brace, action: BraceAction) -> Brace:
    """Multiplicative semidirect product with componentwise addition.

    Element (a, b), a in I, b in L, is encoded as a * |L| + b.
    """
    if action.actor is not L or action.target is not I:
        raise ValueError("action must map L into the automorphisms of I")
    m = I.m * L.m
    mul = np.empty((m, m), dtype=np.int32)
    add = np.empty((m, m), dtype=np.int32)
    for a1 in range(I.m):
        for b1 in range(L.m):
            i = a1 * L.m + b1
            for a2 in range(I.m):
                for b2 in range(L.m):
                    j = a2 * L.m + b2
                    mul[i, j] = int(I.mul[a1, action.apply(b1, a2)]) * L.m + int(
                        L.mul[b1, b2]
                    )
                    add[i, j] = int(I.add[a1, a2]) * L.m + int(L.add[b1, b2])
    B = Brace.from_tables(mul, add)
    _check_semidirect_lambdas(B, I, L)
    return B


def _check_semidirect_lambdas(B: Brace, I: Brace, L: Brace):
    # embedded factors satisfy lambda_a(b) = b and lambda_b(a) = b a b^-1
    for a in range(I.m):
        ia = a * L.m
        for b in range(L.m):
            lb = b
            assert B.lmb(ia, lb) == lb
            conj = int(B.mul[B.mul[lb, ia], B.inv[lb]])
            assert B.lmb(lb, ia) == conj


def wreath(p: int, Q: Brace, action_perms) -> Brace:
    """Wreath product of the trivial brace Z/(p) by Q acting on a finite set.

    ``action_perms`` gives, per element of Q, the permutation of the set Y it
    acts by; the base is (Z/p)^Y with coordinates permuted by
    alpha(g)((a_y)) = (a_{g^-1(y)}).
    """
    perms = [q if isinstance(q, Permutation) else Permutation(q) for q in action_perms]
    if len(perms) != Q.m:
        raise ValueError("one permutation per element of Q required")
    y_size = perms[0].degree
    I = trivial_brace([p] * y_size)
    tables = []
    for g in perms:
        ginv = g.inverse()
        tab = []
        for idx in range(I.m):
            digits = _digits(idx, p, y_size)
            moved = [digits[ginv(y)] for y in range(y_size)]
            tab.append(_undigits(moved, p))
        tables.append(tuple(tab))
    act = BraceAction(Q, I, tuple(tables))
    return semidirect(I, Q, act)


def _digits(idx: int, p: int, k: int):
    out = []
    for _ in range(k):
        out.append(idx % p)
        idx //= p
    return out


def _undigits(digits, p: int) -> int:
    out = 0
    for d in reversed(digits):
        out = out * p + d
    return out
