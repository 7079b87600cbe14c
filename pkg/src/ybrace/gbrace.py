"""The left-brace structure on the permutation group of a solution.

The permutation group G of a solution carries a unique left-brace structure
in which the additive class of sigma_x is the x-th unit vector.  Elements are
handled through integer coordinate vectors over X (plain numpy int64 arrays):
``lambda_of_vector`` collapses a vector to the permutation it acts by, and
every group element stores one representative vector, so addition of
permutations is vector addition followed by a collapse.

The second half of the module contains the structural verifiers: the chain of
block-action kernels for square-free degree, the Sylow-product decomposition
of the brace, its compatibility with the kernel chain, retractability from an
abelian normal Sylow subgroup, and the multipermutation property itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ybrace import kernels
from ybrace.brace import Brace
from ybrace.perm import (
    DEFAULT_CLOSURE_CAP,
    BlockSystem,
    PermGroup,
    Permutation,
    factorize,
    prime_divisors,
)
from ybrace.solution import Solution

EXHAUSTIVE_ELEMENT_LIMIT = 10_000
SAMPLE_PAIRS = 100_000
DENSE_QUOTIENT_CAP = 2**16
DEFAULT_SEED = 0


class TheoremViolation(AssertionError):
    """A structural property that must hold mathematically failed to verify."""


# ---------------------------------------------------------------------------
# words and vectors


def factor_word(G: PermGroup, g) -> list:
    """Express a group element as a word in the sigma generators.

    Letters are generator indices; the element is the left-to-right product.
    Words come from the BFS parent tree, hence are shortest in generator
    count and deterministic.  (Negative letters ~j, denoting the inverse of
    generator j, are accepted by ``word_to_vector`` but never produced here.)
    """
    i = g if isinstance(g, (int, np.integer)) else G.index(g)
    return G.word(int(i))


def word_to_vector(S: Solution, word, gen_points=None) -> np.ndarray:
    """Coordinate vector of a word's product, peeling letters left to right.

    vec(sigma_x o w)     = e_x + sigma_x . vec(w)
    vec(sigma_x^-1 o w)  = -e_{sigma_x^-1(x)} + sigma_x^-1 . vec(w)

    where a permutation acts on a vector by permuting coordinates.  Letters
    are generator indices into ``gen_points`` (default: the distinct-sigma
    points of S); a letter ~j means the inverse of generator j.
    """
    if gen_points is None:
        gen_points = S.distinct_sigma_points()
    v = np.zeros(S.n, dtype=np.int64)
    for letter in reversed(list(word)):
        letter = int(letter)
        if letter >= 0:
            x = gen_points[letter]
            v = v[S.sinv[x]]
            v[x] += 1
        else:
            x = gen_points[~letter]
            v = v[S.smat[x]]
            v[int(S.sinv[x, x])] -= 1
    return v


def diagonal_table(S: Solution) -> np.ndarray:
    """The table z -> x with sigma_x^-1(x) = z.

    Its existence (the diagonal map being a bijection) is a consequence of
    involutivity and non-degeneracy; asserted here rather than assumed.
    """
    d = S.sinv[np.arange(S.n), np.arange(S.n)]
    if len(set(d.tolist())) != S.n:
        raise TheoremViolation(
            "the diagonal map x -> sigma_x^-1(x) is not a bijection"
        )
    diag = np.empty(S.n, dtype=np.int64)
    diag[d] = np.arange(S.n)
    return diag


def lambda_of_vector(S: Solution, v) -> Permutation:
    """The permutation a vector acts by, via the l1-shrinking reduction."""
    v = np.asarray(v, dtype=np.int64)
    row = kernels.reduce_vectors(S.smat, S.sinv, diagonal_table(S), v[None, :])[0]
    return Permutation(row, check=False)


# ---------------------------------------------------------------------------
# the integer lattice of vectors acting trivially


def hnf(rows, n: int):
    """Row Hermite form (upper triangular, positive diagonal) of a full-rank
    integer row lattice.  Plain-int arithmetic; n is small here."""
    work = [
        [int(a) for a in r] for r in rows if any(int(a) != 0 for a in r)
    ]
    H = []
    for col in range(n):
        cand = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        if not cand:
            raise ValueError("lattice is not full rank")
        while len(cand) > 1:
            cand.sort(key=lambda r: abs(r[col]))
            piv = cand[0]
            nxt = [piv]
            for r in cand[1:]:
                q = r[col] // piv[col]
                rr = [a - q * b for a, b in zip(r, piv)]
                if rr[col] != 0:
                    nxt.append(rr)
                elif any(rr):
                    rest.append(rr)
            cand = nxt
        piv = cand[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        H.append(piv)
        work = rest
    return np.array(H, dtype=np.int64)


def lattice_contains(H: np.ndarray, vecs: np.ndarray) -> np.ndarray:
    """Membership of each row of ``vecs`` in the row lattice of H (batch)."""
    v = np.array(vecs, dtype=np.int64, copy=True)
    if v.ndim == 1:
        v = v[None, :]
    n = H.shape[0]
    ok = np.ones(v.shape[0], dtype=bool)
    for j in range(n):
        d = int(H[j, j])
        ok &= v[:, j] % d == 0
        q = v[:, j] // d
        v -= q[:, None] * H[j][None, :]
    ok &= np.all(v == 0, axis=1)
    return ok


# ---------------------------------------------------------------------------
# the brace on the permutation group


class GBrace:
    """The permutation group of a solution together with its brace structure.

    Elements are the group's BFS element indices.  ``rep`` holds one integer
    coordinate vector per element; addition is rep-vector addition followed
    by ``lambda_of_vector``, multiplication is composition.
    """

    def __init__(self, S: Solution, cap: int = DEFAULT_CLOSURE_CAP,
                 seed: int = DEFAULT_SEED, verify: bool = True):
        self.S = S
        self.G = S.perm_group(cap)
        self.seed = seed
        self.n = S.n
        self.diag = diagonal_table(S)
        self.gen_points = S.distinct_sigma_points()
        self._gen_point_of = self._match_generators()
        self._sylow_cache = {}
        self._socle_cache = None
        self.rep = self._build_reps()
        self.lattice = self._build_lattice()
        self.exponent = int(np.prod([p ** e for p, e in self._exp_factors.items()]))
        if verify:
            self._verify_reps()

    # -- construction ------------------------------------------------------

    def _match_generators(self):
        by_images = {self.S.sigma[x].images: x for x in self.gen_points}
        return [by_images[g.images] for g in self.G.generators]

    def _build_reps(self):
        """One coordinate vector per element, built along the BFS tree.

        rep(g o sigma_x) = rep(g) + e_{g(x)}: appending a generator on the
        right adds one unit coordinate, so every representative costs O(1).
        """
        G = self.G
        rep = np.zeros((G.order, self.n), dtype=np.int64)
        for i in range(1, G.order):
            p = int(G._parent[i])
            x = self._gen_point_of[int(G._genidx[i])]
            rep[i] = rep[p]
            rep[i, int(G.arr[p, x])] += 1
        return rep

    def _reduce(self, vecs) -> np.ndarray:
        """Permutation rows for a batch of coordinate vectors."""
        vecs = np.asarray(vecs, dtype=np.int64)
        if vecs.ndim == 1:
            vecs = vecs[None, :]
        return kernels.reduce_vectors(self.S.smat, self.S.sinv, self.diag, vecs)

    def lam_index(self, v) -> int:
        """Element index of the permutation a single vector acts by."""
        return self.G.index(self._reduce(v)[0])

    def lam_indices(self, vecs) -> np.ndarray:
        rows = self._reduce(vecs)
        return np.fromiter(
            (self.G.index(rows[t]) for t in range(rows.shape[0])),
            dtype=np.int64,
            count=rows.shape[0],
        )

    def _basis_order(self, x: int) -> int:
        """Additive order of the unit vector e_x."""
        v = np.zeros(self.n, dtype=np.int64)
        k = 0
        while True:
            v[x] += 1
            k += 1
            if k > self.G.order:
                raise TheoremViolation("additive order exceeds the group order")
            row = self._reduce(v)[0]
            if np.array_equal(row, np.arange(self.n, dtype=np.int32)):
                return k

    def _build_lattice(self):
        """Hermite form of the lattice of vectors acting trivially.

        Seeded with the pair relations (e_x + e_y) - rep(its permutation) and
        the basis orders N_x e_x; topped up with random relations until the
        lattice index matches the group order (it always bounds it above).
        """
        n = self.n
        rows = []
        eye = np.eye(n, dtype=np.int64)
        pair_vecs = []
        for x in range(n):
            for y in range(x, n):
                pair_vecs.append(eye[x] + eye[y])
        pair_vecs = np.stack(pair_vecs)
        idxs = self.lam_indices(pair_vecs)
        rows.extend(pair_vecs - self.rep[idxs])
        for x in range(n):
            rows.append(self._basis_order(x) * eye[x])
        H = hnf(rows, n)
        index = int(np.prod([int(H[j, j]) for j in range(n)]))
        rng = np.random.default_rng(self.seed)
        batches = 0
        while index != self.G.order:
            if batches >= 8:
                raise TheoremViolation(
                    "could not generate the trivial-action lattice"
                )
            g = rng.integers(0, self.G.order, 64)
            h = rng.integers(0, self.G.order, 64)
            sums = self.rep[g] + self.rep[h]
            idxs = self.lam_indices(sums)
            rows.extend(sums - self.rep[idxs])
            H = hnf(rows, n)
            index = int(np.prod([int(H[j, j]) for j in range(n)]))
            batches += 1
        # exponent of the additive group = lcm of the basis element orders
        basis_orders = [self._basis_order(x) for x in range(n)]
        self._exp_factors = factorize(int(np.lcm.reduce(basis_orders)))
        return H

    def _verify_reps(self):
        """lambda_of_vector(rep(g)) == g, exhaustively or sampled."""
        order = self.G.order
        if order <= EXHAUSTIVE_ELEMENT_LIMIT:
            picks = np.arange(order)
        else:
            rng = np.random.default_rng(self.seed)
            picks = rng.integers(0, order, SAMPLE_PAIRS)
        rows = self._reduce(self.rep[picks])
        if not np.array_equal(rows, self.G.arr[picks]):
            bad = int(picks[int(np.argmax(np.any(rows != self.G.arr[picks], axis=1)))])
            raise TheoremViolation(f"representative vector of element {bad} is wrong")

    # -- brace operations --------------------------------------------------

    def add(self, i: int, j: int) -> int:
        return self.lam_index(self.rep[i] + self.rep[j])

    def neg(self, i: int) -> int:
        return self.lam_index(-self.rep[i])

    def compose(self, i: int, j: int) -> int:
        return self.G.compose_indices(i, j)

    def lambda_g(self, i: int, j: int) -> int:
        """lambda_{g_i}(g_j): the additive automorphism attached to g_i.

        Acts on coordinate vectors by moving coordinate y to g_i(y).
        """
        return self.lam_index(self._permute_vec(i, self.rep[j]))

    def _permute_vec(self, i: int, v: np.ndarray) -> np.ndarray:
        ginv = np.empty(self.n, dtype=np.int64)
        ginv[self.G.arr[i]] = np.arange(self.n)
        return np.asarray(v)[..., ginv]

    def lambda_fixes(self, i: int, targets) -> np.ndarray:
        """Boolean mask: lambda_{g_i}(h) == h for each h in ``targets``."""
        targets = np.asarray(sorted(targets) if isinstance(targets, (set, frozenset)) else targets)
        vecs = self._permute_vec(i, self.rep[targets]) - self.rep[targets]
        return lattice_contains(self.lattice, vecs)

    # -- additive torsion via the lattice ----------------------------------

    def _torsion_mask(self, primes) -> np.ndarray:
        """Elements whose additive order is supported on ``primes``.

        g has additive order supported on primes iff the primes-part of the
        additive exponent annihilates it.
        """
        m = 1
        for p, e in self._exp_factors.items():
            if p in primes:
                m *= p**e
        return lattice_contains(self.lattice, m * self.rep)

    def sylow_additive(self, p: int) -> frozenset:
        if p in self._sylow_cache:
            return self._sylow_cache[p]
        out = frozenset(int(i) for i in np.flatnonzero(self._torsion_mask({p})))
        expected = 1
        o = self.G.order
        while o % p == 0:
            o //= p
            expected *= p
        if len(out) != expected:
            raise TheoremViolation(
                f"additive {p}-part has {len(out)} elements, expected {expected}"
            )
        self._sylow_cache[p] = out
        return out

    def hall_additive(self, primes) -> frozenset:
        return frozenset(
            int(i) for i in np.flatnonzero(self._torsion_mask(set(primes)))
        )

    # -- socle -------------------------------------------------------------

    def socle(self) -> frozenset:
        """{g : lambda_g = id} == {g : sigma_{g(x)} = sigma_x for all x}.

        Computed by the generator criterion, cross-checked against o == +.
        """
        if self._socle_cache is not None:
            return self._socle_cache
        cls = np.asarray(self.S.retract_congruence().class_of, dtype=np.int64)
        mask = np.all(cls[self.G.arr] == cls[None, :], axis=1)
        soc = frozenset(int(i) for i in np.flatnonzero(mask))
        self._crosscheck_socle(soc)
        self._socle_cache = soc
        return soc

    def _crosscheck_socle(self, soc):
        order = self.G.order
        if order <= EXHAUSTIVE_ELEMENT_LIMIT and len(soc) * order <= SAMPLE_PAIRS:
            gs = np.repeat(sorted(soc), order)
            bs = np.tile(np.arange(order), len(soc))
        else:
            rng = np.random.default_rng(self.seed)
            gs = rng.choice(sorted(soc), SAMPLE_PAIRS // 10)
            bs = rng.integers(0, order, SAMPLE_PAIRS // 10)
        # g in the socle iff g o b = g + b for all b
        prod_rows = self.G.arr[gs][np.arange(len(gs))[:, None], self.G.arr[bs]]
        prod_idx = np.fromiter(
            (self.G.index(prod_rows[t]) for t in range(len(gs))),
            dtype=np.int64, count=len(gs),
        )
        diffs = self.rep[gs] + self.rep[bs] - self.rep[prod_idx]
        if not np.all(lattice_contains(self.lattice, diffs)):
            raise TheoremViolation("socle criterion disagrees with o == +")

    # -- subgroup/ideal predicates ----------------------------------------

    def is_left_ideal(self, subset) -> bool:
        """Multiplicative subgroup closed under every lambda_g."""
        s = frozenset(int(i) for i in subset)
        if len(s) == self.G.order:
            return True
        if not self.G.is_subgroup(s):
            return False
        return self._lambda_invariant(s)

    def is_ideal(self, subset) -> bool:
        s = frozenset(int(i) for i in subset)
        return self.G.is_normal(s) and self.is_left_ideal(s)

    def _lambda_invariant(self, s) -> bool:
        """Invariance under lambda of the group generators (lambda is a
        homomorphism in g, so generators suffice)."""
        idxs = np.array(sorted(s))
        primes = set(factorize(len(s)))
        if len(s) > 1 and s == self.hall_additive(primes):
            # torsion parts are lambda-invariant; check membership directly
            m = 1
            for p, e in self._exp_factors.items():
                if p in primes:
                    m *= p**e
            for j in range(len(self.G.generators)):
                gi = self.G.index(self.G.generators[j])
                vecs = m * self._permute_vec(gi, self.rep[idxs])
                if not np.all(lattice_contains(self.lattice, vecs)):
                    return False
            return True
        for j in range(len(self.G.generators)):
            gi = self.G.index(self.G.generators[j])
            imgs = self.lam_indices(self._permute_vec(gi, self.rep[idxs]))
            if not set(int(v) for v in imgs) <= s:
                return False
        return True

    # -- quotients ---------------------------------------------------------

    def _subgroup_generators(self, s) -> list:
        gens = []
        closed = {0}
        for i in sorted(s):
            if i not in closed:
                gens.append(i)
                closed = self.G._close_indices(gens)
        return gens

    def coset_labels(self, ideal) -> np.ndarray:
        """Left-coset label per element (labels ordered by least element)."""
        s = frozenset(int(i) for i in ideal)
        gens = self._subgroup_generators(s)
        neighbor = np.empty((len(gens), self.G.order), dtype=np.int64)
        for t, h in enumerate(gens):
            prods = self.G.arr[:, self.G.arr[h]]
            neighbor[t] = [self.G._index[prods[i].tobytes()] for i in range(self.G.order)]
        label = np.full(self.G.order, -1, dtype=np.int64)
        nxt = 0
        for g in range(self.G.order):
            if label[g] >= 0:
                continue
            label[g] = nxt
            stack = [g]
            while stack:
                a = stack.pop()
                for t in range(len(gens)):
                    b = int(neighbor[t, a])
                    if label[b] < 0:
                        label[b] = nxt
                        stack.append(b)
            nxt += 1
        return label

    def quotient(self, ideal):
        """The quotient brace by an ideal, as a dense-table Brace.

        Returns (brace, label) with label mapping each element to its coset.
        """
        s = frozenset(int(i) for i in ideal)
        if not self.is_ideal(s):
            raise ValueError("subset is not an ideal")
        q = self.G.order // len(s)
        if q > DENSE_QUOTIENT_CAP:
            raise ValueError(f"quotient with {q} cosets exceeds the dense cap")
        label = self.coset_labels(s)
        reps = np.empty(q, dtype=np.int64)
        seen = np.zeros(q, dtype=bool)
        for g in range(self.G.order):
            c = int(label[g])
            if not seen[c]:
                seen[c] = True
                reps[c] = g
        mul = np.empty((q, q), dtype=np.int32)
        add = np.empty((q, q), dtype=np.int32)
        for a in range(q):
            ra = int(reps[a])
            prod_rows = self.G.arr[ra][self.G.arr[reps]]
            mul[a] = label[[self.G._index[prod_rows[t].tobytes()] for t in range(q)]]
            sums = self.rep[ra][None, :] + self.rep[reps]
            add[a] = label[self.lam_indices(sums)]
        return Brace.from_tables(mul, add, seed=self.seed), label

    def to_dense_brace(self) -> Brace:
        """Full mul/add tables; intended for small groups only."""
        if self.G.order > EXHAUSTIVE_ELEMENT_LIMIT:
            raise ValueError("group too large for dense tables")
        return self.quotient(frozenset({0}))[0]

    # -- set products ------------------------------------------------------

    def subgroup_product(self, A, B) -> frozenset:
        """The set product AB of two subgroups, with its size certified.

        |AB| = |A||B| / |A n B| holds for subgroups; the closure of A u B
        contains AB and has at least that size, so equality of the two sizes
        certifies that the product set is exactly the closure.
        """
        A = frozenset(int(i) for i in A)
        B = frozenset(int(i) for i in B)
        expected = len(A) * len(B) // len(A & B)
        if expected == self.G.order:
            # AB sits inside G with |AB| = |A||B|/|A n B| = |G| already
            return frozenset(range(self.G.order))
        C = self.G.subgroup_closure(A | B)
        if len(C) != expected:
            raise TheoremViolation(
                f"product of subgroups is not a subgroup ({len(C)} vs {expected})"
            )
        return C


# ---------------------------------------------------------------------------
# the chain of block-action kernels for square-free degree


@dataclass(frozen=True)
class IdealChain:
    """Normal-subgroup chain {1} <= T_1 <= K_1 <= ... <= T_n <= K_n = G.

    ``primes`` is the discovered prime ordering; T_i/K_{i-1} is the full
    p_i-part of K_i/K_{i-1}; K_i is the kernel of the action on the T_i-orbit
    blocks.  ``report`` carries the per-invariant verification verdicts.
    """

    primes: tuple
    T: tuple  # frozensets of element indices
    K: tuple
    blocks: tuple  # BlockSystem per level
    P: dict = field(default_factory=dict)  # prime -> Sylow element set (if known)
    report: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v for v in self.report.values() if isinstance(v, bool))


def _p_part(m: int, p: int) -> int:
    out = 1
    while m % p == 0:
        m //= p
        out *= p
    return out


def _chain_rec(G: PermGroup):
    """Recursive construction: (primes, T sets, K sets) for a transitive
    group of square-free degree, recursing through the induced block action."""
    m = G.degree
    ps = prime_divisors(m)
    if m == 1:
        return [], [], []
    if len(ps) == 1:
        p = m
        T1 = G.p_elements_closed(p)
        if T1 is None:
            raise TheoremViolation(
                f"no normal Sylow {p}-subgroup at prime degree {p}"
            )
        everything = frozenset(range(G.order))
        return [p], [T1], [everything]
    T = G.minimal_normal_subgroup()
    orders = G.orders()
    p = int(orders[sorted(T)[1] if sorted(T)[0] == 0 else sorted(T)[0]])
    blocks = G.orbits_as_blocks(T)
    if len(blocks.partition[0]) != p:
        raise TheoremViolation("minimal normal subgroup orbits have wrong size")
    K1 = G.kernel_of_block_action(blocks)
    k1 = np.array(sorted(K1))
    mask = np.array([_is_p_power(int(o), p) for o in orders[k1]])
    T1 = frozenset(int(i) for i in k1[mask])
    if len(T1) != _p_part(len(K1), p) or G.subgroup_closure(T1) != T1:
        raise TheoremViolation(
            f"{p}-elements of the block kernel do not form its Sylow part"
        )
    # induced group on the blocks
    bo = np.asarray(blocks.block_of, dtype=np.int32)
    reps = np.array([b[0] for b in blocks.partition], dtype=np.int64)
    gens = []
    for g in G._gen_arr:
        q = Permutation(bo[g[reps]])
        if not q.is_identity() and q not in gens:
            gens.append(q)
    H = PermGroup.close(gens) if gens else PermGroup.trivial(blocks.num_blocks)
    rows = bo[G.arr[:, reps]]
    psi = np.fromiter(
        (H._index[rows[i].tobytes()] for i in range(G.order)),
        dtype=np.int64,
        count=G.order,
    )
    primes2, T2, K2 = _chain_rec(H)

    def pull(sets):
        out = []
        for s in sets:
            mask = np.isin(psi, np.array(sorted(s)))
            out.append(frozenset(int(i) for i in np.flatnonzero(mask)))
        return out

    return [p] + primes2, [T1] + pull(T2), [K1] + pull(K2)


def _is_p_power(o: int, p: int) -> bool:
    while o % p == 0:
        o //= p
    return o == 1


def squarefree_chain(S: Solution, sylows=None,
                     cap: int = DEFAULT_CLOSURE_CAP) -> IdealChain:
    """The normal-subgroup chain of the permutation group, with its checks.

    Requires a valid indecomposable solution of square-free size.  ``sylows``
    may supply, per prime, a Sylow subgroup of the group (e.g. the additive
    Sylow parts) to enable the Sylow-factorization check of each T_i.
    """
    n = S.n
    fac = factorize(n)
    if any(e > 1 for e in fac.values()):
        raise ValueError(f"size {n} is not square-free")
    if not S.is_indecomposable():
        raise ValueError("solution is not indecomposable")
    G = S.perm_group(cap)
    if not G.is_transitive():
        raise ValueError("permutation group is not transitive")
    primes, T, K = _chain_rec(G)
    report = {}
    # inclusions and normality
    chain_sets = []
    for t, k in zip(T, K):
        chain_sets += [t, k]
    ok = True
    prev = frozenset({0})
    for s in chain_sets:
        ok &= prev <= s and G.is_normal(s)
        prev = s
    ok &= K[-1] == frozenset(range(G.order))
    report["chain_normal_and_nested"] = bool(ok)
    # block systems and their sizes; K_i as the kernel of the block action
    blocks = []
    ok_blocks = True
    ok_kernel = True
    ok_orbits = True
    prod = 1
    for i, p in enumerate(primes):
        bs = G.orbits_as_blocks(T[i])
        blocks.append(bs)
        prod *= p
        ok_blocks &= bs.num_blocks == n // prod
        ok_kernel &= G.kernel_of_block_action(bs) == K[i]
        # K_i-orbits coincide with T_i-orbits
        ok_orbits &= G.orbits_as_blocks(K[i]) == bs
    report["block_counts"] = bool(ok_blocks)
    report["kernel_of_block_action"] = bool(ok_kernel)
    report["orbit_match"] = bool(ok_orbits)
    # T_i/K_{i-1} is the full p_i-part of K_i/K_{i-1}
    ok_sylow = True
    orders = G.orders()
    for i, p in enumerate(primes):
        k_prev = 1 if i == 0 else len(K[i - 1])
        quotient_size = len(K[i]) // k_prev
        ok_sylow &= len(T[i]) // k_prev == _p_part(quotient_size, p)
        # elements of T_i are exactly the K_i-elements acting with p-power
        # order on the previous level's blocks
        if i == 0:
            induced = G.arr[sorted(K[i])]
        else:
            bo = np.asarray(blocks[i - 1].block_of, dtype=np.int32)
            reps = np.array([b[0] for b in blocks[i - 1].partition])
            induced = bo[G.arr[sorted(K[i])][:, reps]]
        iorders = kernels.element_orders(np.ascontiguousarray(induced))
        sel = np.array([_is_p_power(int(o), p) for o in iorders])
        ok_sylow &= frozenset(
            int(v) for v in np.array(sorted(K[i]))[sel]
        ) == T[i]
    report["sylow_in_quotient"] = bool(ok_sylow)
    # Sylow factorization T_i = (T_i n P_i) K_{i-1} when Sylows are known
    P = dict(sylows) if sylows else {}
    if P:
        ok_fac = True
        for i, p in enumerate(primes):
            if p not in P:
                continue
            A = T[i] & P[p]
            B = frozenset({0}) if i == 0 else K[i - 1]
            ok_fac &= len(A) * len(B) // len(A & B) == len(T[i])
        report["sylow_factorization"] = bool(ok_fac)
    return IdealChain(
        primes=tuple(primes),
        T=tuple(T),
        K=tuple(K),
        blocks=tuple(blocks),
        P=P,
        report=report,
    )


# ---------------------------------------------------------------------------
# structural verifiers


def verify_sylow_decomposition(GB: GBrace) -> dict:
    """Decomposition of the brace into its additive Sylow parts.

    Checks: (i) the socle is the full Hall part of the additive group for its
    prime set; (ii) the Sylow parts multiply out to the whole group; (iii)
    each Sylow part is a trivial brace over an elementary abelian group;
    (iv) a greedy prime ordering whose partial Sylow products are ideals,
    each quotient-socle-contained; (v) each partial product is the kernel of
    the block action on its own point orbits.
    """
    S, G = GB.S, GB.G
    primes = list(prime_divisors(S.n))
    report = {"primes": primes}
    P = {p: GB.sylow_additive(p) for p in primes}
    report["sylow_orders"] = {p: len(P[p]) for p in primes}
    soc = GB.socle()
    pi = list(prime_divisors(len(soc))) if len(soc) > 1 else []
    report["socle_order"] = len(soc)
    report["socle_primes"] = pi
    report["socle_is_hall"] = bool(pi) and GB.hall_additive(set(pi)) == soc
    prod_set = frozenset({0})
    for p in primes:
        prod_set = GB.subgroup_product(prod_set, P[p])
    report["sylow_product_is_group"] = len(prod_set) == G.order
    # each Sylow part: elementary abelian, and o coincides with +
    triv = {}
    rng = np.random.default_rng(GB.seed)
    for p in primes:
        idxs = np.array(sorted(P[p]))
        elementary = bool(
            np.all(lattice_contains(GB.lattice, p * GB.rep[idxs]))
        ) and bool(np.all(np.isin(G.orders()[idxs], [1, p])))
        if len(idxs) ** 2 <= SAMPLE_PAIRS:
            a = np.repeat(idxs, len(idxs))
            b = np.tile(idxs, len(idxs))
        else:
            a = rng.choice(idxs, SAMPLE_PAIRS)
            b = rng.choice(idxs, SAMPLE_PAIRS)
        prods = np.fromiter(
            (G.compose_indices(int(a[t]), int(b[t])) for t in range(len(a))),
            dtype=np.int64, count=len(a),
        )
        same = np.all(
            lattice_contains(GB.lattice, GB.rep[a] + GB.rep[b] - GB.rep[prods])
        )
        triv[p] = elementary and bool(same)
    report["sylow_trivial_brace"] = triv
    # greedy ordering with ideal partial products
    sigma_order = []
    partials = []
    remaining = list(primes)
    level = GB
    proj = None  # composed projection: G element -> current-level element
    ok_greedy = True
    while remaining:
        soc_cur = level.socle()
        if isinstance(level, GBrace):
            syl = {p: level.sylow_additive(p) for p in remaining}
        else:
            syl = {p: level.sylow_additive(p) for p in remaining}
        pick = None
        for p in remaining:
            if len(syl[p]) > 1 and syl[p] <= soc_cur:
                pick = p
                break
        if pick is None:
            ok_greedy = False
            report["greedy_stuck_at"] = list(remaining)
            break
        sigma_order.append(pick)
        remaining.remove(pick)
        if isinstance(level, GBrace):
            nxt, label = level.quotient(syl[pick])
            proj = label
        else:
            nxt, label = level.quotient(syl[pick])
            proj = label[proj]
        partials.append(
            frozenset(int(i) for i in np.flatnonzero(proj == proj[0]))
        )
        level = nxt
    report["sigma_order"] = sigma_order
    ideals_ok = ok_greedy and all(GB.is_ideal(s) for s in partials)
    report["partial_products_are_ideals"] = bool(ideals_ok)
    # partial products match cumulative Sylow products in the found order
    cum_ok = ok_greedy
    cum = frozenset({0})
    for p, part in zip(sigma_order, partials):
        cum = GB.subgroup_product(cum, P[p])
        cum_ok &= cum == part
    report["partials_match_sylow_products"] = bool(cum_ok)
    # (v): each partial product is the kernel of its own block action
    kernels_ok = ok_greedy
    for part in partials:
        bs = G.orbits_as_blocks(part)
        kernels_ok &= G.kernel_of_block_action(bs) == part
    report["partials_are_block_kernels"] = bool(kernels_ok)
    report["ok"] = bool(
        report["socle_is_hall"]
        and report["sylow_product_is_group"]
        and all(triv.values())
        and ideals_ok
        and cum_ok
        and kernels_ok
    )
    return report


def verify_chain_matches_sylow_products(GB: GBrace, chain: IdealChain) -> dict:
    """Each chain kernel equals the partial product of additive Sylow parts
    (in the chain's prime order), and lambda acts trivially on the tail.

    The lambda check is exhaustive for small groups, sampled above the
    threshold with a fixed seed.
    """
    G = GB.G
    q = list(chain.primes)
    P = {p: GB.sylow_additive(p) for p in q}
    report = {"primes": q}
    cum = frozenset({0})
    match_ok = True
    partials = []
    for i, p in enumerate(q):
        cum = GB.subgroup_product(cum, P[p])
        partials.append(cum)
        match_ok &= cum == chain.K[i]
        match_ok &= GB.is_ideal(cum)
    report["kernels_are_sylow_products"] = bool(match_ok)
    tails = []
    tail = frozenset({0})
    for p in reversed(q):
        tail = GB.subgroup_product(tail, P[p])
        tails.append(tail)
    tails.reverse()
    lam_ok = True
    pairs_checked = 0
    rng = np.random.default_rng(GB.seed)
    for i in range(len(q)):
        Ki = np.array(sorted(chain.K[i]))
        Ti = np.array(sorted(tails[i]))
        if len(Ki) * len(Ti) <= SAMPLE_PAIRS:
            gs = Ki
            per_g = Ti
            for g in gs:
                lam_ok &= bool(np.all(GB.lambda_fixes(int(g), per_g)))
                pairs_checked += len(per_g)
        else:
            picks = rng.choice(Ki, 128)
            for g in picks:
                hs = rng.choice(Ti, SAMPLE_PAIRS // 128 + 1)
                lam_ok &= bool(np.all(GB.lambda_fixes(int(g), hs)))
                pairs_checked += len(hs)
    report["lambda_trivial_on_tail"] = bool(lam_ok)
    report["lambda_pairs_checked"] = pairs_checked
    report["ok"] = bool(match_ok and lam_ok)
    return report


def verify_multipermutation_property(S: Solution,
                                     cap: int = DEFAULT_CLOSURE_CAP) -> dict:
    """Indecomposable square-free solutions are multipermutation solutions.

    Checks the level bound (number of prime factors), divisibility of the
    group order by the size, and non-simplicity for multi-prime sizes
    (exhaustively when the congruence search is feasible, else via a proper
    retract witness).
    """
    n = S.n
    fac = factorize(n)
    if any(e > 1 for e in fac.values()):
        raise ValueError(f"size {n} is not square-free")
    if not S.is_indecomposable():
        raise ValueError("solution is not indecomposable")
    report = {"size": n, "prime_count": len(fac)}
    mpl = S.mp_level()
    report["mp_level"] = mpl
    report["is_multipermutation"] = mpl is not None
    report["level_within_bound"] = mpl is not None and mpl <= len(fac)
    G = S.perm_group(cap)
    report["group_order"] = G.order
    report["size_divides_group_order"] = G.order % n == 0
    if len(fac) > 1:
        from ybrace.solution import CONGRUENCE_SIZE_CAP

        if n <= CONGRUENCE_SIZE_CAP:
            report["not_simple"] = not S.is_simple()
            report["not_simple_method"] = "congruence search"
        else:
            ret, _ = S.retract()
            report["not_simple"] = 1 < ret.n < n
            report["not_simple_method"] = "proper retract"
    else:
        report["not_simple"] = True
        report["not_simple_method"] = "single prime (vacuous)"
    report["ok"] = bool(
        report["is_multipermutation"]
        and report["level_within_bound"]
        and report["size_divides_group_order"]
        and report["not_simple"]
    )
    return report


def verify_abelian_sylow_retractability(S: Solution,
                                        cap: int = DEFAULT_CLOSURE_CAP) -> dict:
    """An abelian normal Sylow subgroup of the group forces retractability."""
    G = S.perm_group(cap)
    report = {"group_order": G.order, "findings": []}
    triggered = False
    implication_ok = True
    for p in prime_divisors(G.order):
        Pp = G.p_elements_closed(p)
        if Pp is None:
            report["findings"].append({"prime": p, "normal_sylow": False})
            continue
        idxs = sorted(Pp)
        rows = G.arr[idxs]
        gens = []
        closed = {0}
        for s in idxs:
            if s not in closed:
                gens.append(s)
                closed = G._close_indices(gens)
        abelian = all(
            np.array_equal(rows[:, G.arr[g]], G.arr[g][rows]) for g in gens
        )
        finding = {"prime": p, "normal_sylow": True, "abelian": bool(abelian)}
        if abelian:
            triggered = True
            ret, _ = S.retract()
            finding["retract_size"] = ret.n
            implication_ok &= ret.n < S.n or S.n <= 1
        report["findings"].append(finding)
    report["triggered"] = triggered
    report["ok"] = bool(implication_ok)
    return report


def verify_lambda_on_generators(GB: GBrace) -> dict:
    """lambda_g(sigma_y) = sigma_{g(y)}, with lambda computed from the brace
    operations (-g) + (g o h) rather than by coordinate permutation."""
    G, S = GB.G, GB.S
    if G.order * S.n > SAMPLE_PAIRS:
        rng = np.random.default_rng(GB.seed)
        gs = rng.integers(0, G.order, 2048)
    else:
        gs = np.arange(G.order)
    checked = 0
    ok = True
    for g in gs:
        g = int(g)
        ng = GB.neg(g)
        for y in range(S.n):
            h = G.index(S.sigma[y])
            lhs = GB.add(ng, GB.compose(g, h))
            rhs = G.index(S.sigma[int(G.arr[g, y])])
            ok &= lhs == rhs
            checked += 1
    return {"pairs_checked": checked, "ok": bool(ok)}


def verify_additive_lambda_sums(S: Solution, kmax: int = 3,
                                cap: int = DEFAULT_CLOSURE_CAP) -> dict:
    """The permutation of a sum of unit vectors equals the brace sum of the
    corresponding sigma permutations, for all tuples up to length kmax."""
    GB = GBrace(S, cap)
    n = S.n
    eye = np.eye(n, dtype=np.int64)
    ok = True
    checked = 0
    from itertools import product

    for k in range(1, kmax + 1):
        for tup in product(range(n), repeat=k):
            v = eye[list(tup)].sum(axis=0)
            lhs = GB.lam_index(v)
            rhs = GB.G.index(S.sigma[tup[0]])
            for x in tup[1:]:
                rhs = GB.add(rhs, GB.G.index(S.sigma[x]))
            ok &= lhs == rhs
            checked += 1
    return {"tuples_checked": checked, "ok": bool(ok)}
