"""Pure-Python kernels; same contract as the compiled ``_core`` module."""
from __future__ import annotations

import numpy as np


def longest_earlier_suffix(codes: bytes, sigma: int):
    """Online suffix automaton pass over ``codes``.

    Returns ``(L, E)`` as int64 arrays of length ``n + 1``.  ``L[m]`` is the
    length of the longest suffix of ``codes[:m]`` that also ends at some
    position ``< m``; ``E[m]`` is the first (1-based) end position of that
    suffix, 0 when ``L[m] == 0``.
    """
    n = len(codes)
    L = [0] * (n + 1)
    E = [0] * (n + 1)
    link = [-1]
    length = [0]
    first = [0]
    nxt: list[dict[int, int]] = [{}]
    last = 0
    for m in range(1, n + 1):
        c = codes[m - 1]
        cur = len(length)
        length.append(m)
        first.append(m)
        link.append(0)
        nxt.append({})
        p = last
        while p != -1 and c not in nxt[p]:
            nxt[p][c] = cur
            p = link[p]
        if p != -1:
            q = nxt[p][c]
            if length[p] + 1 == length[q]:
                link[cur] = q
            else:
                clone = len(length)
                length.append(length[p] + 1)
                first.append(first[q])
                link.append(link[q])
                nxt.append(dict(nxt[q]))
                while p != -1 and nxt[p].get(c) == q:
                    nxt[p][c] = clone
                    p = link[p]
                link[q] = clone
                link[cur] = clone
        last = cur
        s = link[cur]
        L[m] = length[s]
        E[m] = first[s] if length[s] else 0
    return np.array(L, dtype=np.int64), np.array(E, dtype=np.int64)


def z_array(codes: bytes):
    """Z[k] = length of the longest common prefix of codes and codes[k:]; Z[0] = n."""
    n = len(codes)
    z = [0] * n
    if n:
        z[0] = n
    lo = hi = 0
    for k in range(1, n):
        if k < hi:
            z[k] = min(hi - k, z[k - lo])
        while k + z[k] < n and codes[z[k]] == codes[k + z[k]]:
            z[k] += 1
        if k + z[k] > hi:
            lo, hi = k, k + z[k]
    return np.array(z, dtype=np.int64)
