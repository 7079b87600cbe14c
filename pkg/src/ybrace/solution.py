"""Finite involutive non-degenerate set-theoretic solutions (X, r).

A solution is stored as its table of permutations sigma_x; the second
component gamma, the map r itself, the permutation group, retracts and
congruences are all derived.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ybrace.perm import DEFAULT_CLOSURE_CAP, PermGroup, Permutation

CONGRUENCE_SIZE_CAP = 12


@dataclass(frozen=True)
class NonBijectiveGamma:
    y: int


@dataclass(frozen=True)
class YBEFail:
    x: int
    y: int


@dataclass(frozen=True)
class InvolutivityFail:
    x: int
    y: int


class InvalidSolution(ValueError):
    def __init__(self, violations):
        super().__init__(f"not a solution: {violations[:3]}")
        self.violations = violations


@dataclass(frozen=True)
class Congruence:
    """A partition of X whose quotient sigma-table is well-defined."""

    classes: tuple  # tuple of tuples of points, ordered by min element
    class_of: tuple

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def is_discrete(self) -> bool:
        return all(len(c) == 1 for c in self.classes)

    def is_total(self) -> bool:
        return self.num_classes == 1


class Solution:
    """X = {0,...,n-1} with r(x, y) = (sigma_x(y), gamma_y(x))."""

    def __init__(self, sigma, check: bool = True):
        self.sigma = tuple(
            s if isinstance(s, Permutation) else Permutation(s) for s in sigma
        )
        self.n = len(self.sigma)
        for s in self.sigma:
            if s.degree != self.n:
                raise ValueError("sigma permutations must have degree |X|")
        self.smat = np.stack(
            [np.array(s.images, dtype=np.int32) for s in self.sigma]
        ) if self.n else np.zeros((0, 0), dtype=np.int32)
        self.sinv = np.empty_like(self.smat)
        for x in range(self.n):
            self.sinv[x][self.smat[x]] = np.arange(self.n, dtype=np.int32)
        self._group = None
        self._congruences = None
        if check:
            violations = self.validate()
            if violations:
                raise InvalidSolution(violations)

    # -- validation --------------------------------------------------------

    def validate(self):
        """All structural violations (empty list iff this is a solution)."""
        out = []
        n = self.n
        for y in range(n):
            imgs = self.sinv[self.smat[:, y], np.arange(n)]
            if len(set(imgs.tolist())) != n:
                out.append(NonBijectiveGamma(y))
        for x in range(n):
            for y in range(n):
                left = self.smat[x][self.smat[self.sinv[x, y]]]
                right = self.smat[y][self.smat[self.sinv[y, x]]]
                if not np.array_equal(left, right):
                    out.append(YBEFail(x, y))
        for x in range(n):
            for y in range(n):
                if self.r(*self.r(x, y)) != (x, y):
                    out.append(InvolutivityFail(x, y))
        return out

    # -- derived maps ------------------------------------------------------

    def gamma(self, y: int) -> Permutation:
        """gamma_y(x) = sigma^-1_{sigma_x(y)}(x)."""
        n = self.n
        return Permutation(
            (int(self.sinv[self.smat[x, y], x]) for x in range(n)), check=False
        )

    def r(self, x: int, y: int):
        a = int(self.smat[x, y])
        return a, int(self.sinv[a, x])

    # -- the permutation group --------------------------------------------

    def distinct_sigma_points(self):
        """First point carrying each distinct sigma, in point order."""
        seen = {}
        for x in range(self.n):
            key = self.sigma[x].images
            if key not in seen:
                seen[key] = x
        return list(seen.values())

    def perm_group(self, cap: int = DEFAULT_CLOSURE_CAP) -> PermGroup:
        if self._group is None or self._group.order > cap:
            gens = [self.sigma[x] for x in self.distinct_sigma_points()]
            if all(g.is_identity() for g in gens):
                self._group = PermGroup.trivial(self.n)
            else:
                self._group = PermGroup.close(gens, cap)
        return self._group

    def is_indecomposable(self) -> bool:
        if self.n == 0:
            return False
        seen = {0}
        stack = [0]
        while stack:
            y = stack.pop()
            for x in self.distinct_sigma_points():
                for z in (int(self.smat[x, y]), int(self.sinv[x, y])):
                    if z not in seen:
                        seen.add(z)
                        stack.append(z)
        return len(seen) == self.n

    # -- retract and multipermutation level --------------------------------

    def retract_congruence(self) -> Congruence:
        classes = {}
        for x in range(self.n):
            classes.setdefault(self.sigma[x].images, []).append(x)
        parts = sorted((tuple(v) for v in classes.values()), key=lambda c: c[0])
        class_of = [0] * self.n
        for i, c in enumerate(parts):
            for x in c:
                class_of[x] = i
        return Congruence(tuple(parts), tuple(class_of))

    def retract(self):
        """Quotient by sigma_x == sigma_y, with the projection hom."""
        return self.quotient(self.retract_congruence())

    def mp_level(self):
        """Least k with |Ret^k| == 1; None if the tower stabilizes above 1.

        A one-point solution has level 0 by convention.
        """
        current = self
        level = 0
        while current.n > 1:
            nxt, _ = current.retract()
            if nxt.n == current.n:
                return None
            current = nxt
            level += 1
        return level

    def retract_tower_sizes(self):
        sizes = [self.n]
        current = self
        while current.n > 1:
            nxt, _ = current.retract()
            if nxt.n == current.n:
                break
            current = nxt
            sizes.append(current.n)
        return sizes

    # -- congruences and quotients ----------------------------------------

    def _congruence_table(self, class_of):
        """Quotient sigma table if the partition is a congruence, else None."""
        co = np.asarray(class_of, dtype=np.int32)
        B = co[self.smat]
        reps = []
        k = int(co.max()) + 1 if self.n else 0
        for c in range(k):
            reps.append(int(np.flatnonzero(co == c)[0]))
        reps = np.asarray(reps, dtype=np.int64)
        T = B[np.ix_(reps, reps)]
        if not np.array_equal(B, T[co][:, co]):
            return None
        for row in T:
            if len(set(row.tolist())) != k:
                return None
        return T

    def congruences(self, size_cap: int = CONGRUENCE_SIZE_CAP):
        """All congruences, by exhaustive set-partition enumeration."""
        if self.n > size_cap:
            raise ValueError(
                f"congruence enumeration capped at |X| <= {size_cap} (got {self.n})"
            )
        if self._congruences is not None:
            return self._congruences
        found = []
        rgs = [0] * self.n

        def emit():
            k = max(rgs) + 1 if self.n else 0
            if self._congruence_table(rgs) is None:
                return
            parts = [[] for _ in range(k)]
            for x, c in enumerate(rgs):
                parts[c].append(x)
            found.append(
                Congruence(tuple(tuple(p) for p in parts), tuple(rgs))
            )

        def rec(i, m):
            if i == self.n:
                emit()
                return
            for c in range(m + 1):
                rgs[i] = c
                rec(i + 1, max(m, c + 1))

        if self.n == 0:
            found.append(Congruence((), ()))
        else:
            rec(1, 1) if self.n > 1 else rec(0, 0)
        found.sort(key=lambda C: (C.num_classes, C.classes))
        self._congruences = found
        return found

    def quotient(self, C: Congruence):
        T = self._congruence_table(C.class_of)
        if T is None:
            raise ValueError("partition is not a congruence")
        q = Solution([Permutation(row) for row in T])
        hom = SolutionHom(self, q, C.class_of)
        return q, hom

    def is_simple(self) -> bool:
        if self.n <= 1:
            return False
        cs = self.congruences()
        return all(c.is_discrete() or c.is_total() for c in cs)

    # -- isomorphism -------------------------------------------------------

    def _point_profile(self):
        ret = self.retract_congruence()
        return [
            (self.sigma[x].cycle_type(), len(ret.classes[ret.class_of[x]]))
            for x in range(self.n)
        ]

    def is_isomorphic(self, other: "Solution"):
        """A point bijection satisfying the homomorphism law, or None."""
        if self.n != other.n:
            return None
        prof1 = self._point_profile()
        prof2 = other._point_profile()
        if sorted(prof1) != sorted(prof2):
            return None
        n = self.n
        order = sorted(range(n), key=lambda x: (prof1[x], x))

        def extend(f, used, pos):
            while pos < n and f[order[pos]] is not None:
                pos += 1
            if pos == n:
                return tuple(f)
            x = order[pos]
            for t in range(n):
                if t in used or prof2[t] != prof1[x]:
                    continue
                g = list(f)
                g[x] = t
                u = used | {t}
                if self._propagate(other, g, u):
                    res = extend(g, u, pos + 1)
                    if res is not None:
                        return res
            return None

        return extend([None] * n, set(), 0)

    def _propagate(self, other, f, used):
        """Close a partial map under the hom law; False on contradiction."""
        changed = True
        while changed:
            changed = False
            for x in range(self.n):
                if f[x] is None:
                    continue
                for y in range(self.n):
                    if f[y] is None:
                        continue
                    t = int(self.smat[x, y])
                    img = int(other.smat[f[x], f[y]])
                    if f[t] is None:
                        if img in used:
                            return False
                        f[t] = img
                        used.add(img)
                        changed = True
                    elif f[t] != img:
                        return False
        return True

    # -- misc --------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Solution) and self.sigma == other.sigma

    def __hash__(self):
        return hash(tuple(s.images for s in self.sigma))

    def __repr__(self):
        return f"Solution(n={self.n})"


@dataclass(frozen=True)
class SolutionHom:
    """A map of solutions f with f(sigma_x(y)) = sigma'_{f(x)}(f(y))."""

    source: Solution
    target: Solution
    mapping: tuple

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(int(v) for v in self.mapping))
        if len(self.mapping) != self.source.n:
            raise ValueError("mapping length must equal source size")
        f = self.mapping
        for x in range(self.source.n):
            for y in range(self.source.n):
                if f[self.source.smat[x, y]] != self.target.smat[f[x], f[y]]:
                    raise ValueError(f"homomorphism law fails at ({x}, {y})")

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def is_bijective(self) -> bool:
        return len(set(self.mapping)) == self.target.n == self.source.n


def trivial_solution(n: int) -> Solution:
    return Solution([Permutation.identity(n)] * n)
