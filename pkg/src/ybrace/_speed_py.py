"""Pure-Python/numpy fallback for the compiled kernels in ``_speed.pyx``.

Same contracts as the compiled module; used when the extension is not built
or when YBRACE_PURE=1 is set.
"""

import numpy as np

BACKEND = "pure"


class ClosureCapExceeded(Exception):
    """Raised when a BFS closure grows past the configured cap."""

    def __init__(self, partial_count):
        super().__init__(f"group closure exceeded cap (partial count {partial_count})")
        self.partial_count = partial_count


def bfs_closure(gens, cap):
    """Enumerate the group generated by ``gens`` by breadth-first search.

    gens: int32 array of shape (k, n), one permutation per row, no duplicates.
    Returns (elements, parent, genidx): elements[0] is the identity and
    elements[parent[i]] composed with gens[genidx[i]] (on the right) gives
    elements[i].  BFS order is deterministic: frontier in discovery order,
    generators in the given order.
    """
    gens = np.ascontiguousarray(gens, dtype=np.int32)
    k, n = gens.shape
    ident = np.arange(n, dtype=np.int32)
    elems = [ident]
    parent = [-1]
    genidx = [-1]
    index = {ident.tobytes(): 0}
    frontier = [0]
    while frontier:
        rows = np.stack([elems[i] for i in frontier])
        next_frontier = []
        for j in range(k):
            prods = rows[:, gens[j]]
            for t, src in enumerate(frontier):
                key = prods[t].tobytes()
                if key not in index:
                    if len(elems) >= cap:
                        raise ClosureCapExceeded(len(elems))
                    index[key] = len(elems)
                    elems.append(prods[t].copy())
                    parent.append(src)
                    genidx.append(j)
                    next_frontier.append(index[key])
        frontier = next_frontier
    return (
        np.stack(elems).astype(np.int32),
        np.asarray(parent, dtype=np.int64),
        np.asarray(genidx, dtype=np.int64),
    )


def element_orders(arr):
    """Orders of the permutations in ``arr`` (one per row)."""
    arr = np.asarray(arr, dtype=np.int32)
    m, n = arr.shape
    orders = np.zeros(m, dtype=np.int64)
    ident = np.arange(n, dtype=np.int32)
    alive = np.arange(m)
    power = arr.copy()
    step = 1
    # Landau bound on the order of a degree-n permutation is generous; the
    # active set shrinks to nothing long before the guard trips.
    guard = 4 * n * n + 16
    while alive.size:
        done = np.all(power == ident, axis=1)
        orders[alive[done]] = step
        alive = alive[~done]
        power = power[~done]
        if alive.size:
            base = arr[alive]
            power = np.take_along_axis(base, power, axis=1)
            step += 1
            if step > guard:
                raise RuntimeError("element order exceeded Landau guard")
    return orders


def reduce_vectors(sigma, sigma_inv, diag, vecs):
    """Map integer coordinate vectors to the permutations they act by.

    sigma[x] is the permutation attached to point x (as an image row),
    sigma_inv its inverse, and diag[z] the unique x with sigma_inv[x][x]==z.
    vecs is an int64 array (k, n); the result is an int32 array (k, n) of
    permutations.  Each reduction step lowers the l1-norm by exactly 1.
    """
    sigma = np.asarray(sigma, dtype=np.int32)
    sigma_inv = np.asarray(sigma_inv, dtype=np.int32)
    diag = np.asarray(diag, dtype=np.int64)
    vecs = np.asarray(vecs, dtype=np.int64)
    k, n = vecs.shape
    out = np.empty((k, n), dtype=np.int32)
    ident = np.arange(n, dtype=np.int32)
    for i in range(k):
        v = vecs[i].copy()
        acc = ident.copy()
        budget = int(np.abs(v).sum())
        while True:
            pos = np.flatnonzero(v > 0)
            if pos.size:
                x = int(pos[0])
                acc = acc[sigma[x]]
                v[x] -= 1
                v = v[sigma[x]]
            else:
                neg = np.flatnonzero(v < 0)
                if not neg.size:
                    break
                z = int(neg[0])
                x = int(diag[z])
                acc = acc[sigma_inv[x]]
                v[z] += 1
                v = v[sigma_inv[x]]
            budget -= 1
            if budget < 0:
                raise RuntimeError("vector reduction failed to shrink")
        out[i] = acc
    return out
