"""Finite permutations and fully enumerated permutation groups.

Points are 0-based contiguous integers.  Groups are materialized by BFS
closure from their generators (deterministic order), which is what makes the
exhaustive theorem checks elsewhere possible.  Element sets of a group
(subgroups, kernels, orbits of subgroups) are represented as frozensets of
element indices into the group's BFS enumeration; use ``PermGroup.perm`` to
get the actual permutations back.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from ybrace import kernels
from ybrace.kernels import ClosureCapExceeded  # noqa: F401  (re-export)

DEFAULT_CLOSURE_CAP = 2**21


class DegreeMismatch(ValueError):
    pass


class Permutation:
    """A bijection of {0, ..., n-1}, stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images, check: bool = True):
        self.images = tuple(int(x) for x in images)
        if check and sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n), check=False)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition (self * other)(x) == self(other(x))."""
        if self.degree != other.degree:
            raise DegreeMismatch(f"degrees {self.degree} != {other.degree}")
        o = other.images
        s = self.images
        return Permutation((s[o[x]] for x in range(len(s))), check=False)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation(inv, check=False)

    def is_identity(self) -> bool:
        return all(i == x for x, i in enumerate(self.images))

    def cycle_type(self) -> tuple:
        seen = [False] * self.degree
        lengths = []
        for x in range(self.degree):
            if seen[x]:
                continue
            length = 0
            y = x
            while not seen[y]:
                seen[y] = True
                y = self.images[y]
                length += 1
            lengths.append(length)
        return tuple(sorted(lengths))

    def order(self) -> int:
        o = 1
        for length in set(self.cycle_type()):
            o = o // gcd(o, length) * length
        return o

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """(p o q)(x) = p(q(x))."""
    return p * q


@dataclass(frozen=True)
class BlockSystem:
    """A group-invariant partition of the point set."""

    partition: tuple  # tuple of tuples of points, each sorted, ordered by min
    block_of: tuple  # point -> block index

    @property
    def num_blocks(self) -> int:
        return len(self.partition)


def _rows_compose(rows: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Compose every row p of ``rows`` with q on the right: (p o q)."""
    return rows[:, q]


class PermGroup:
    """A finite permutation group with its full element set enumerated.

    Internal element order is BFS order (identity first); the public
    iteration order is lexicographic by image sequence.
    """

    def __init__(self, degree, generators, arr, parent, genidx):
        self.degree = degree
        self.generators = tuple(generators)
        self.arr = arr  # (order, degree) int32, BFS order
        self._parent = parent
        self._genidx = genidx
        self._index = {arr[i].tobytes(): i for i in range(arr.shape[0])}
        self.order = arr.shape[0]
        self._orders = None
        self._gen_arr = np.stack([np.array(g.images, dtype=np.int32) for g in generators]) if generators else np.zeros((0, degree), dtype=np.int32)

    # -- construction ------------------------------------------------------

    @staticmethod
    def close(gens, cap: int = DEFAULT_CLOSURE_CAP) -> "PermGroup":
        gens = list(gens)
        if not gens:
            raise ValueError("need at least one generator or an explicit degree")
        degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch("generators of unequal degree")
        uniq = []
        seen = set()
        for g in gens:
            if g.images not in seen and not g.is_identity():
                seen.add(g.images)
                uniq.append(g)
        if uniq:
            gmat = np.stack([np.array(g.images, dtype=np.int32) for g in uniq])
            arr, parent, genidx = kernels.bfs_closure(gmat, cap)
        else:
            arr = np.arange(degree, dtype=np.int32)[None, :]
            parent = np.array([-1], dtype=np.int64)
            genidx = np.array([-1], dtype=np.int64)
        return PermGroup(degree, uniq, arr, parent, genidx)

    @staticmethod
    def trivial(degree: int) -> "PermGroup":
        arr = np.arange(degree, dtype=np.int32)[None, :]
        return PermGroup(degree, [], arr, np.array([-1]), np.array([-1]))

    # -- element access ----------------------------------------------------

    def __len__(self) -> int:
        return self.order

    def perm(self, i: int) -> Permutation:
        return Permutation(self.arr[i], check=False)

    def index(self, p) -> int:
        if isinstance(p, Permutation):
            key = np.array(p.images, dtype=np.int32).tobytes()
        else:
            key = np.asarray(p, dtype=np.int32).tobytes()
        return self._index[key]

    def __contains__(self, p) -> bool:
        try:
            self.index(p)
            return True
        except KeyError:
            return False

    def sorted_indices(self) -> np.ndarray:
        """Element indices in lexicographic order of image sequences."""
        return np.lexsort(self.arr.T[::-1])

    def __iter__(self):
        for i in self.sorted_indices():
            yield self.perm(i)

    def elements(self):
        """All elements, lexicographically ordered."""
        return list(self)

    def compose_indices(self, i: int, j: int) -> int:
        return self._index[self.arr[i][self.arr[j]].tobytes()]

    def inverse_index(self, i: int) -> int:
        inv = np.empty(self.degree, dtype=np.int32)
        inv[self.arr[i]] = np.arange(self.degree, dtype=np.int32)
        return self._index[inv.tobytes()]

    def orders(self) -> np.ndarray:
        if self._orders is None:
            self._orders = kernels.element_orders(self.arr)
        return self._orders

    def word(self, i: int):
        """Generator word for element i from the BFS parent tree.

        Returns a list of generator indices; the element is the left-to-right
        product of the corresponding generators.
        """
        letters = []
        while i != 0:
            letters.append(int(self._genidx[i]))
            i = int(self._parent[i])
        return letters[::-1]

    # -- orbits and transitivity ------------------------------------------

    def orbit(self, x: int) -> frozenset:
        seen = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for g in self._gen_arr:
                z = int(g[y])
                if z not in seen:
                    seen.add(z)
                    stack.append(z)
        return frozenset(seen)

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    # -- subgroup machinery ------------------------------------------------

    def subgroup_closure(self, seeds) -> frozenset:
        """Closure of the given element indices under composition."""
        gens = []
        closed = {0}
        for s in sorted(set(int(i) for i in seeds)):
            if s not in closed:
                gens.append(s)
                closed = self._close_indices(gens)
        return frozenset(closed)

    def _close_indices(self, gen_indices) -> set:
        gen_rows = [self.arr[i] for i in gen_indices]
        closed = {0}
        frontier = [0]
        while frontier:
            rows = self.arr[frontier]
            next_frontier = []
            for g in gen_rows:
                prods = _rows_compose(rows, g)
                for t in range(prods.shape[0]):
                    idx = self._index[prods[t].tobytes()]
                    if idx not in closed:
                        closed.add(idx)
                        next_frontier.append(idx)
            frontier = next_frontier
        return closed

    def conjugate_rows(self, g_row: np.ndarray, rows: np.ndarray) -> np.ndarray:
        """g o h o g^-1 for every row h of ``rows``."""
        g_inv = np.empty(self.degree, dtype=np.int32)
        g_inv[g_row] = np.arange(self.degree, dtype=np.int32)
        return g_row[rows][:, g_inv]

    def normal_closure(self, seeds, size_cap: int | None = None) -> frozenset | None:
        """Smallest normal subgroup containing the seed elements.

        Returns None if ``size_cap`` is given and the closure grows past it.
        """
        gens = sorted(set(int(i) for i in seeds) - {0})
        if not gens:
            return frozenset({0})
        while True:
            closed = self._close_indices(gens)
            if size_cap is not None and len(closed) > size_cap:
                return None
            rows = self.arr[gens]
            new = []
            for g_row in self._gen_arr:
                conj = self.conjugate_rows(g_row, rows)
                for t in range(conj.shape[0]):
                    idx = self._index[conj[t].tobytes()]
                    if idx not in closed:
                        new.append(idx)
            if not new:
                return frozenset(closed)
            gens.extend(sorted(set(new)))

    def is_subgroup(self, H) -> bool:
        H = frozenset(H)
        return self.subgroup_closure(H) == H

    def is_normal(self, H) -> bool:
        H = frozenset(int(i) for i in H)
        if 0 not in H:
            return False
        if len(H) in (1, self.order):
            return True
        rows = self.arr[sorted(H)]
        for g_row in self._gen_arr:
            conj = self.conjugate_rows(g_row, rows)
            for t in range(conj.shape[0]):
                if self._index[conj[t].tobytes()] not in H:
                    return False
        return True

    def conjugacy_class(self, i: int) -> frozenset:
        seen = {int(i)}
        stack = [int(i)]
        while stack:
            j = stack.pop()
            row = self.arr[j][None, :]
            for g_row in self._gen_arr:
                c = int(self._index[self.conjugate_rows(g_row, row)[0].tobytes()])
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
        return frozenset(seen)

    def minimal_normal_subgroup(self) -> frozenset:
        """An inclusion-minimal nontrivial normal subgroup.

        Procedure: normal closures of one representative per conjugacy class
        of prime-order elements; a minimum-size closure is returned.  Ties
        are broken by smallest prime, then lexicographically smallest
        representative.  The caller asserts solvability; the result is
        checked to be elementary abelian and the check failing signals a
        non-solvable input.
        """
        if self.order == 1:
            raise ValueError("trivial group has no nontrivial normal subgroup")
        orders = self.orders()
        best = None  # (size, prime, rep_images, frozenset)
        for p in _prime_divisors(self.order):
            idxs = np.flatnonzero(orders == p)
            if idxs.size == 0:
                continue
            lex = idxs[np.lexsort(self.arr[idxs].T[::-1])]
            classified = set()
            for i in lex:
                i = int(i)
                if i in classified:
                    continue
                classified |= self.conjugacy_class(i)
                cap = None if best is None else best[0]
                closure = self.normal_closure([i], size_cap=cap)
                if closure is None:
                    continue
                key = (len(closure), p, tuple(self.arr[i]))
                if best is None or key < (best[0], best[1], best[2]):
                    best = (len(closure), p, tuple(self.arr[i]), closure)
        if best is None:
            raise ValueError("no prime-order elements found")
        N = best[3]
        if not self._is_elementary_abelian(N, best[1]):
            raise ValueError(
                "minimal normal candidate is not elementary abelian; input group "
                "does not look solvable"
            )
        return N

    def _is_elementary_abelian(self, H, p: int) -> bool:
        idxs = sorted(H)
        orders = self.orders()[idxs]
        if not np.all((orders == 1) | (orders == p)):
            return False
        rows = self.arr[idxs]
        # abelian iff every element commutes with a generating set
        gens = []
        closed = {0}
        for s in idxs:
            if s not in closed:
                gens.append(s)
                closed = self._close_indices(gens)
        for g in gens:
            g_row = self.arr[g]
            if not np.array_equal(_rows_compose(rows, g_row), g_row[rows]):
                return False
        return True

    # -- blocks ------------------------------------------------------------

    def orbits_as_blocks(self, H) -> BlockSystem:
        """Partition of the points into orbits of the (normal) subgroup H."""
        H = sorted(int(i) for i in H)
        if not self.is_normal(H):
            raise ValueError("H is not normal in G")
        sub = self.arr[H]
        block_of = [-1] * self.degree
        partition = []
        for x in range(self.degree):
            if block_of[x] >= 0:
                continue
            blk = sorted(set(int(v) for v in sub[:, x]))
            for y in blk:
                if block_of[y] >= 0:
                    raise AssertionError("subgroup orbits are not disjoint")
                block_of[y] = len(partition)
            partition.append(tuple(blk))
        bs = BlockSystem(tuple(partition), tuple(block_of))
        if self.is_transitive() and len({len(b) for b in bs.partition}) != 1:
            raise AssertionError("unequal block sizes under a transitive group")
        for g in self._gen_arr:
            for blk in bs.partition:
                if len({bs.block_of[int(g[y])] for y in blk}) != 1:
                    raise AssertionError("generator does not permute the blocks")
        return bs

    def kernel_of_block_action(self, blocks: BlockSystem) -> frozenset:
        """Elements fixing every block setwise; a normal subgroup."""
        bo = np.asarray(blocks.block_of, dtype=np.int64)
        mask = np.all(bo[self.arr] == bo[None, :], axis=1)
        return frozenset(int(i) for i in np.flatnonzero(mask))

    def block_action(self, blocks: BlockSystem, element_indices=None) -> np.ndarray:
        """Induced permutations of the blocks, one row per element."""
        reps = np.array([b[0] for b in blocks.partition], dtype=np.int64)
        bo = np.asarray(blocks.block_of, dtype=np.int32)
        rows = self.arr if element_indices is None else self.arr[sorted(element_indices)]
        return bo[rows[:, reps]]

    # -- Sylow-type subgroups ---------------------------------------------

    def p_elements_closed(self, p: int):
        """The p-power-order elements, if they form a (normal Sylow) subgroup.

        Returns the element-index set, or None when the p-elements are not
        closed under multiplication (no normal Sylow p-subgroup).
        """
        if self.order % p != 0:
            raise ValueError(f"{p} does not divide the group order {self.order}")
        orders = self.orders()
        mask = orders == 1
        q = p
        while q <= self.order:
            mask |= orders == q
            q *= p
        idxs = frozenset(int(i) for i in np.flatnonzero(mask))
        p_part = 1
        o = self.order
        while o % p == 0:
            o //= p
            p_part *= p
        if len(idxs) != p_part:
            return None
        if self.subgroup_closure(idxs) != idxs:
            return None
        assert self.is_normal(idxs)
        return idxs


def close_group(gens, cap: int = DEFAULT_CLOSURE_CAP) -> PermGroup:
    return PermGroup.close(gens, cap)


@lru_cache(maxsize=None)
def _prime_divisors(n: int) -> tuple:
    primes = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            primes.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        primes.append(n)
    return tuple(primes)


def prime_divisors(n: int) -> tuple:
    return _prime_divisors(n)


def factorize(n: int) -> dict:
    out = {}
    for p in _prime_divisors(n):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out[p] = e
    return out
