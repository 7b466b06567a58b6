"""Compiled kernels for the quadratic periodicity sweeps.

Everything here works on 0-indexed int64 arrays and knows nothing
about oracles or charging; callers translate to 1-indexed intervals.
The minimal period of a string equals its length minus the length of
its longest proper border, so one border (prefix-function) row per
start position yields the minimal periods of all substrings with that
start in amortized linear time.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _grow(buf, need):
    if need <= buf.shape[0]:
        return buf
    out = np.empty(max(need, buf.shape[0] * 2), dtype=buf.dtype)
    out[: buf.shape[0]] = buf
    return out


@njit(cache=True)
def periodic_intervals(arr, d):
    """All runs and all d-short runs of arr (0-indexed, inclusive ends).

    Returns (run_start, run_end, run_period,
             short_start, short_end, short_period, short_gap).

    A run is a maximal interval whose length is at least twice its
    minimal period; a d-short run has minimal period P, length
    P + (P - g) with 0 < g <= d, and the same one-position maximality
    (both extensions strictly increase the minimal period).  Pass d=0
    to skip short-run collection.
    """
    n = arr.shape[0]
    row = np.zeros(n + 2, dtype=np.int64)  # row[L] = minper(arr[s:s+L])

    rs = np.empty(16, dtype=np.int64)
    re = np.empty(16, dtype=np.int64)
    rp = np.empty(16, dtype=np.int64)
    nr = 0
    ss = np.empty(16, dtype=np.int64)
    se = np.empty(16, dtype=np.int64)
    sp = np.empty(16, dtype=np.int64)
    sg = np.empty(16, dtype=np.int64)
    ns = 0

    # pending candidates start at s+1 and await the left-maximality
    # check against the next row computed (start s)
    pe = np.empty(n + 2, dtype=np.int64)
    pp = np.empty(n + 2, dtype=np.int64)
    pk = np.empty(n + 2, dtype=np.int64)  # 0 = run, g >= 1 = short with gap g
    npend = 0

    pi = np.zeros(n + 1, dtype=np.int64)

    for s in range(n - 1, -1, -1):
        m = n - s
        # border array of arr[s:s+m]
        k = 0
        pi[0] = 0
        for q in range(1, m):
            c = arr[s + q]
            while k > 0 and arr[s + k] != c:
                k = pi[k - 1]
            if arr[s + k] == c:
                k += 1
            pi[q] = k
        for L in range(1, m + 1):
            row[L] = L - pi[L - 1]

        # left-maximality of candidates starting at s+1: the extended
        # interval (s, e) has length e-s+1 and must have a larger minper
        for t in range(npend):
            e = pe[t]
            P = pp[t]
            if row[e - s + 1] > P:
                if pk[t] == 0:
                    rs = _grow(rs, nr + 1)
                    re = _grow(re, nr + 1)
                    rp = _grow(rp, nr + 1)
                    rs[nr] = s + 1
                    re[nr] = e
                    rp[nr] = P
                    nr += 1
                else:
                    ss = _grow(ss, ns + 1)
                    se = _grow(se, ns + 1)
                    sp = _grow(sp, ns + 1)
                    sg = _grow(sg, ns + 1)
                    ss[ns] = s + 1
                    se[ns] = e
                    sp[ns] = P
                    sg[ns] = pk[t]
                    ns += 1
        npend = 0

        # collect right-maximal candidates starting at s
        for L in range(1, m + 1):
            P = row[L]
            if L < m and row[L + 1] <= P:
                continue
            if L >= 2 * P:
                pe[npend] = s + L - 1
                pp[npend] = P
                pk[npend] = 0
                npend += 1
            elif d > 0 and L > P:
                g = 2 * P - L
                if 1 <= g <= d:
                    pe[npend] = s + L - 1
                    pp[npend] = P
                    pk[npend] = g
                    npend += 1

        if s == 0:
            # no left extension exists; pending candidates are final
            for t in range(npend):
                if pk[t] == 0:
                    rs = _grow(rs, nr + 1)
                    re = _grow(re, nr + 1)
                    rp = _grow(rp, nr + 1)
                    rs[nr] = 0
                    re[nr] = pe[t]
                    rp[nr] = pp[t]
                    nr += 1
                else:
                    ss = _grow(ss, ns + 1)
                    se = _grow(se, ns + 1)
                    sp = _grow(sp, ns + 1)
                    sg = _grow(sg, ns + 1)
                    ss[ns] = 0
                    se[ns] = pe[t]
                    sp[ns] = pp[t]
                    sg[ns] = pk[t]
                    ns += 1

    return rs[:nr], re[:nr], rp[:nr], ss[:ns], se[:ns], sp[:ns], sg[:ns]


@njit(cache=True)
def extend_and_minper(arr, a, b, period, lo, hi):
    """Grow [a,b] (0-indexed) keeping arr[x] == arr[x+period] agreement
    inside [lo,hi], then return (a', b', minimal period of arr[a'..b'])."""
    while a > lo and arr[a - 1] == arr[a - 1 + period]:
        a -= 1
    while b < hi and arr[b + 1] == arr[b + 1 - period]:
        b += 1
    m = b - a + 1
    pi = np.zeros(m, dtype=np.int64)
    k = 0
    for q in range(1, m):
        c = arr[a + q]
        while k > 0 and arr[a + k] != c:
            k = pi[k - 1]
        if arr[a + k] == c:
            k += 1
        pi[q] = k
    return a, b, m - pi[m - 1]


@njit(cache=True)
def minimal_period_fast(arr):
    """Minimal period of the whole array (length minus longest border)."""
    m = arr.shape[0]
    pi = np.zeros(m, dtype=np.int64)
    k = 0
    for q in range(1, m):
        c = arr[q]
        while k > 0 and arr[k] != c:
            k = pi[k - 1]
        if arr[k] == c:
            k += 1
        pi[q] = k
    return m - pi[m - 1]
