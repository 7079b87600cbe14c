# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: BFS group closure, permutation orders, vector reduction.

The pure fallback in ``_speed_py`` implements identical contracts; keep the
two in sync.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "compiled"

from ybrace._speed_py import ClosureCapExceeded


def bfs_closure(gens, long cap):
    cdef cnp.ndarray[cnp.int32_t, ndim=2] g = np.ascontiguousarray(gens, dtype=np.int32)
    cdef long k = g.shape[0]
    cdef long n = g.shape[1]
    cdef long alloc = 1024
    cdef cnp.ndarray[cnp.int32_t, ndim=2] elems = np.empty((alloc, n), dtype=np.int32)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] parent = np.empty(alloc, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] genidx = np.empty(alloc, dtype=np.int64)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] buf = np.empty(n, dtype=np.int32)
    cdef long count = 1, head = 0, j, x, src
    cdef dict index = {}
    cdef bytes key
    cdef cnp.int32_t[:, :] ev
    cdef cnp.int32_t[:] bv = buf

    for x in range(n):
        elems[0, x] = <cnp.int32_t> x
    parent[0] = -1
    genidx[0] = -1
    index[elems[0].tobytes()] = 0

    while head < count:
        src = head
        head += 1
        for j in range(k):
            ev = elems
            for x in range(n):
                bv[x] = ev[src, g[j, x]]
            key = buf.tobytes()
            if key not in index:
                if count >= cap:
                    raise ClosureCapExceeded(count)
                if count >= alloc:
                    alloc = alloc * 2
                    elems = np.resize(elems, (alloc, n))
                    parent = np.resize(parent, alloc)
                    genidx = np.resize(genidx, alloc)
                index[key] = count
                elems[count] = buf
                parent[count] = src
                genidx[count] = j
                count += 1
    return elems[:count].copy(), parent[:count].copy(), genidx[:count].copy()


def element_orders(arr):
    cdef cnp.ndarray[cnp.int32_t, ndim=2] a = np.ascontiguousarray(arr, dtype=np.int32)
    cdef long m = a.shape[0]
    cdef long n = a.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] orders = np.empty(m, dtype=np.int64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] seen = np.zeros(n, dtype=np.uint8)
    cdef long i, x, y, length, o, g, t
    for i in range(m):
        for x in range(n):
            seen[x] = 0
        o = 1
        for x in range(n):
            if seen[x]:
                continue
            length = 0
            y = x
            while not seen[y]:
                seen[y] = 1
                y = a[i, y]
                length += 1
            # o = lcm(o, length)
            g = o
            t = length
            while t:
                g, t = t, g % t
            o = o // g * length
        orders[i] = o
    return orders


def reduce_vectors(sigma, sigma_inv, diag, vecs):
    cdef cnp.ndarray[cnp.int32_t, ndim=2] s = np.ascontiguousarray(sigma, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=2] si = np.ascontiguousarray(sigma_inv, dtype=np.int32)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] d = np.ascontiguousarray(diag, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] vs = np.ascontiguousarray(vecs, dtype=np.int64)
    cdef long k = vs.shape[0]
    cdef long n = vs.shape[1]
    cdef cnp.ndarray[cnp.int32_t, ndim=2] out = np.empty((k, n), dtype=np.int32)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] v = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] w = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] acc = np.empty(n, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] tmp = np.empty(n, dtype=np.int32)
    cdef long i, x, y, z, budget
    cdef bint found
    for i in range(k):
        budget = 0
        for x in range(n):
            v[x] = vs[i, x]
            acc[x] = <cnp.int32_t> x
            budget += v[x] if v[x] >= 0 else -v[x]
        while True:
            found = False
            for x in range(n):
                if v[x] > 0:
                    found = True
                    break
            if found:
                for y in range(n):
                    tmp[y] = acc[s[x, y]]
                acc[:] = tmp
                v[x] -= 1
                for y in range(n):
                    w[y] = v[s[x, y]]
                v[:] = w
            else:
                for z in range(n):
                    if v[z] < 0:
                        found = True
                        break
                if not found:
                    break
                x = d[z]
                for y in range(n):
                    tmp[y] = acc[si[x, y]]
                acc[:] = tmp
                v[z] += 1
                for y in range(n):
                    w[y] = v[si[x, y]]
                v[:] = w
            budget -= 1
            if budget < 0:
                raise RuntimeError("vector reduction failed to shrink")
        out[i] = acc
    return out
