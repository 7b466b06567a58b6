"""Periodic interval analysis for integer label sequences.

The run search compresses blocks of the input into integer labels and
then needs the full periodic structure of that label sequence: all runs
(maximal intervals of exponent >= 2) and all gapped repetitions of the
form xyx with 0 < |y| <= d whose one-position extensions break the
minimal period.  Labels carry equality information only, so everything
here is plain RAM work on a numpy array; no symbol comparisons of the
original string are involved.

Small sequences go through the quadratic brute-force kernel.  Longer
ones use a two-phase scheme that stays near-linear on typical inputs:

* phase one checks every shift q <= 2d with vectorized agreement
  scans, which is exhaustive for minimal periods up to 2d;
* phase two looks for larger minimal periods.  Any such interval
  consists of positions whose labels occur at least twice, with at
  most d+1 positions between consecutive such occurrences, so it lies
  inside one "active segment".  Segments whose own minimal period is
  at most 2d cannot contain them and are skipped; the rest are handed
  to the brute-force kernel.

Pathologically repetitive sequences can drive phase two quadratic; the
comparison budget of the caller is unaffected because no oracle is
consulted here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels

BRUTE_FORCE_LIMIT = 512


@dataclass(frozen=True, order=True)
class PeriodicInterval:
    """A run (gap == 0) or gapped repetition xyx (gap == |y|) of a sequence.

    Positions are 0-indexed and inclusive.  ``period`` is the exact
    minimal period; for gapped intervals it equals |x| + gap.
    """

    start: int
    end: int
    period: int
    gap: int = 0

    @property
    def length(self) -> int:
        return self.end - self.start + 1

    @property
    def is_short(self) -> bool:
        return self.gap > 0

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.length, self.period)


def _as_label_array(arr) -> np.ndarray:
    out = np.ascontiguousarray(arr, dtype=np.int64)
    if out.ndim != 1:
        raise ValueError("label sequence must be one-dimensional")
    return out


def _intervals_brute(arr: np.ndarray, d: int) -> list[PeriodicInterval]:
    rs, re, rp, ss, se, sp, sg = _kernels.periodic_intervals(arr, d)
    out = [PeriodicInterval(int(a), int(b), int(p)) for a, b, p in zip(rs, re, rp)]
    out += [
        PeriodicInterval(int(a), int(b), int(p), int(g))
        for a, b, p, g in zip(ss, se, sp, sg)
    ]
    return sorted(out)


def _agreement_stretches(agree: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Start/end (inclusive) indices of maximal True stretches."""
    padded = np.zeros(agree.size + 2, dtype=np.int8)
    padded[1:-1] = agree
    edges = np.flatnonzero(np.diff(padded))
    return edges[0::2], edges[1::2] - 1


def _intervals_phased(arr: np.ndarray, d: int) -> list[PeriodicInterval]:
    m = arr.size
    q_cap = min(2 * d, m - 1)
    runs: dict[tuple[int, int], int] = {}
    shorts: list[PeriodicInterval] = []

    for q in range(1, q_cap + 1):
        starts, ends = _agreement_stretches(arr[:-q] == arr[q:])
        for a, e in zip(starts, ends):
            stretch = e - a + 1
            if stretch >= q:
                key = (int(a), int(e + q))
                prev = runs.get(key)
                if prev is None or q < prev:
                    runs[key] = q
            elif stretch >= max(q - d, 1):
                # xyx candidate; the shift must be the exact minimal
                # period, otherwise the structure belongs to a smaller
                # shift and is picked up there.
                seg = arr[a : e + q + 1]
                if int(_kernels.minimal_period_fast(seg)) == q:
                    shorts.append(
                        PeriodicInterval(int(a), int(e + q), q, q - stretch)
                    )

    out = [PeriodicInterval(a, b, q) for (a, b), q in runs.items()]
    out.extend(shorts)

    if q_cap < m - 1:
        out.extend(_large_period_intervals(arr, d, q_cap))
    return sorted(out)


def _large_period_intervals(
    arr: np.ndarray, d: int, q_cap: int
) -> list[PeriodicInterval]:
    """Intervals with minimal period above ``q_cap`` via active segments."""
    _, ids = np.unique(arr, return_inverse=True)
    active = np.bincount(ids)[ids] >= 2
    positions = np.flatnonzero(active)
    if positions.size == 0:
        return []

    breaks = np.flatnonzero(np.diff(positions) > d + 1)
    seg_starts = positions[np.r_[0, breaks + 1]]
    seg_ends = positions[np.r_[breaks, positions.size - 1]]

    min_len = 2 * (q_cap + 1) - d
    out: list[PeriodicInterval] = []
    for a, b in zip(seg_starts, seg_ends):
        a, b = int(a), int(b)
        if b - a + 1 < min_len:
            continue
        seg = np.ascontiguousarray(arr[a : b + 1])
        if int(_kernels.minimal_period_fast(seg)) <= q_cap:
            # The whole segment repeats with a small period, so every
            # long-enough subinterval inherits it; nothing above q_cap
            # can be minimal here.
            continue
        for iv in _intervals_brute(seg, d):
            if iv.period <= q_cap:
                continue
            gs, ge = a + iv.start, a + iv.end
            # Maximality inside the segment is maximality in the whole
            # sequence: an agreeing neighbour would be active and glued
            # into the same segment.
            assert gs == 0 or arr[gs - 1] != arr[gs - 1 + iv.period]
            assert ge == arr.size - 1 or arr[ge + 1] != arr[ge + 1 - iv.period]
            out.append(PeriodicInterval(gs, ge, iv.period, iv.gap))
    return out


def find_periodic_intervals(arr, d: int, method: str = "auto") -> list[PeriodicInterval]:
    """All runs and d-gapped repetitions of an integer sequence.

    ``method`` selects the implementation ("brute", "phased", or
    "auto", which switches on length); results are identical.
    """
    if d < 1:
        raise ValueError("gap bound d must be at least 1")
    data = _as_label_array(arr)
    if data.size < 2:
        return []
    if method == "brute" or (method == "auto" and data.size <= BRUTE_FORCE_LIMIT):
        return _intervals_brute(data, d)
    if method not in ("auto", "phased"):
        raise ValueError(f"unknown method: {method!r}")
    return _intervals_phased(data, d)
