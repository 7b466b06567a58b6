"""Shared test plumbing: hypothesis profile and naive reference oracles.

The naive helpers below are the independent route of every dual-route
check: they restate the definitions directly (try each period, check
each substring) and share no code with the package internals.
"""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def naive_minimal_period(s: str) -> int:
    n = len(s)
    for p in range(1, n):
        if all(s[i] == s[i + p] for i in range(n - p)):
            return p
    return n


def naive_runs(s: str) -> set[tuple[int, int, int]]:
    """All (start, end, minper) runs, 1-indexed, straight from the definition."""
    n = len(s)
    out = set()
    for i in range(n):
        for j in range(i + 1, n):
            sub = s[i : j + 1]
            p = naive_minimal_period(sub)
            if len(sub) < 2 * p:
                continue
            if i > 0 and naive_minimal_period(s[i - 1 : j + 1]) <= p:
                continue
            if j < n - 1 and naive_minimal_period(s[i : j + 2]) <= p:
                continue
            out.add((i + 1, j + 1, p))
    return out


def naive_short_runs(s: str, d: int) -> set[tuple[int, int, int, int]]:
    """All (start, end, minper, gap) d-short runs, 1-indexed."""
    n = len(s)
    out = set()
    for i in range(n):
        for j in range(i + 1, n):
            sub = s[i : j + 1]
            length = len(sub)
            p = naive_minimal_period(sub)
            gap = 2 * p - length
            if not (p < length < 2 * p and 1 <= gap <= d):
                continue
            if i > 0 and naive_minimal_period(s[i - 1 : j + 1]) <= p:
                continue
            if j < n - 1 and naive_minimal_period(s[i : j + 2]) <= p:
                continue
            out.add((i + 1, j + 1, p, gap))
    return out


def naive_lz_lengths(s: str) -> list[int]:
    """Greedy factorization: each factor is the longest prefix of the
    remainder that occurs starting at or before the current boundary."""
    n = len(s)
    if n == 0:
        return []
    lengths = [1]
    j = 1  # parsed prefix length
    while j < n:
        best = 1
        for start in range(j):  # 0-indexed occurrence start, <= j-1
            length = 0
            while (
                j + length < n
                and start + length < n
                and s[start + length] == s[j + length]
            ):
                length += 1
            best = max(best, length)
        best = min(best, n - j) or 1
        lengths.append(max(best, 1))
        j += max(best, 1)
    return lengths


def run_exponent_sum(runs, min_period=1, min_exp=2) -> Fraction:
    total = Fraction(0)
    for start, end, p in runs:
        e = Fraction(end - start + 1, p)
        if p >= min_period and e >= min_exp:
            total += e
    return total


@pytest.fixture(scope="session")
def warm_kernels():
    """Force numba compilation once so timing-sensitive tests stay honest."""
    from runlab import find_runs_bruteforce, find_short_runs_bruteforce

    find_runs_bruteforce("aabaabab")
    find_short_runs_bruteforce("aabaabab", 2)
    return True
