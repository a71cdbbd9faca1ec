# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; the contract is identical to ``_pure``."""
import numpy as np

from libc.stdint cimport int32_t, int64_t
from libc.stdlib cimport malloc, free


def longest_earlier_suffix(const unsigned char[::1] codes, int sigma):
    cdef Py_ssize_t n = codes.shape[0]
    cdef Py_ssize_t cap = 2 * n + 2
    out_L = np.zeros(n + 1, dtype=np.int64)
    out_E = np.zeros(n + 1, dtype=np.int64)
    cdef int64_t[::1] L = out_L
    cdef int64_t[::1] E = out_E
    cdef int32_t* nxt = <int32_t*> malloc(cap * sigma * sizeof(int32_t))
    cdef int32_t* link = <int32_t*> malloc(cap * sizeof(int32_t))
    cdef int64_t* length = <int64_t*> malloc(cap * sizeof(int64_t))
    cdef int64_t* first = <int64_t*> malloc(cap * sizeof(int64_t))
    if nxt == NULL or link == NULL or length == NULL or first == NULL:
        free(nxt); free(link); free(length); free(first)
        raise MemoryError()
    cdef Py_ssize_t i, m
    cdef int32_t size = 1, last = 0, cur, p, q, clone, s
    cdef int c
    try:
        for i in range(sigma):
            nxt[i] = -1
        link[0] = -1
        length[0] = 0
        first[0] = 0
        for m in range(1, n + 1):
            c = codes[m - 1]
            if c >= sigma:
                raise ValueError("symbol outside alphabet")
            cur = size
            size += 1
            length[cur] = m
            first[cur] = m
            link[cur] = 0
            for i in range(sigma):
                nxt[cur * sigma + i] = -1
            p = last
            while p != -1 and nxt[p * sigma + c] == -1:
                nxt[p * sigma + c] = cur
                p = link[p]
            if p != -1:
                q = nxt[p * sigma + c]
                if length[p] + 1 == length[q]:
                    link[cur] = q
                else:
                    clone = size
                    size += 1
                    length[clone] = length[p] + 1
                    first[clone] = first[q]
                    link[clone] = link[q]
                    for i in range(sigma):
                        nxt[clone * sigma + i] = nxt[q * sigma + i]
                    while p != -1 and nxt[p * sigma + c] == q:
                        nxt[p * sigma + c] = clone
                        p = link[p]
                    link[q] = clone
                    link[cur] = clone
            last = cur
            s = link[cur]
            L[m] = length[s]
            E[m] = first[s] if length[s] else 0
    finally:
        free(nxt); free(link); free(length); free(first)
    return out_L, out_E


def z_array(const unsigned char[::1] codes):
    cdef Py_ssize_t n = codes.shape[0]
    out = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] z = out
    cdef Py_ssize_t k, lo = 0, hi = 0, zk
    if n:
        z[0] = n
    for k in range(1, n):
        zk = 0
        if k < hi:
            zk = hi - k
            if z[k - lo] < zk:
                zk = z[k - lo]
        while k + zk < n and codes[zk] == codes[k + zk]:
            zk += 1
        z[k] = zk
        if k + zk > hi:
            lo = k
            hi = k + zk
    return out
