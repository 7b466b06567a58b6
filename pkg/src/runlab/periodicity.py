"""Ground-truth periodicity structure by exhaustive scanning.

This module is the trusted side of every dual-route check in the
package: small, direct definitions with no comparison budget to honor
and no cleverness shared with the instrumented search.  Exponents are
exact rationals (length over period), never floats.

Definitions used throughout:

* period p of w: 0 < p < |w| and w[i] = w[i+p] wherever both sides
  exist; minimal_period(w) is the smallest such p, or |w| when no
  proper period exists.
* run: substring w[i..j] whose exponent (length / minimal period) is
  at least 2, such that extending by one position on either side, when
  defined, strictly increases the minimal period.
* d-short run: substring of the form x y x with minimal period
  P = |xy|, 0 < |y| <= d (so its length is P + (P - |y|), strictly
  between P and 2P), maximal in the same one-position sense.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from . import _kernels
from .symbols import SymbolString, as_symbols

BRUTE_FORCE_MAX_N = 5000


@dataclass(frozen=True, order=True)
class RunInterval:
    """Maximal repetition w[start..end] with its minimal period."""

    start: int
    end: int
    period: int

    @property
    def length(self) -> int:
        return self.end - self.start + 1

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.length, self.period)

    def to_json(self) -> str:
        return json.dumps(
            {
                "start": self.start,
                "end": self.end,
                "period": self.period,
                "exp_num": self.length,
                "exp_den": self.period,
            }
        )


@dataclass(frozen=True, order=True)
class ShortRunInterval:
    """Maximal x y x repetition: period = |xy| (the minimal period),
    gap = |y|.  Length is period + (period - gap)."""

    start: int
    end: int
    period: int
    gap: int

    @property
    def length(self) -> int:
        return self.end - self.start + 1


def runs_to_json_lines(runs: Iterable[RunInterval]) -> str:
    ordered = sorted(runs, key=lambda r: (r.start, r.end))
    return "\n".join(r.to_json() for r in ordered) + ("\n" if ordered else "")


def runs_from_json_lines(text: str) -> set[RunInterval]:
    out = set()
    for line in text.splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        run = RunInterval(rec["start"], rec["end"], rec["period"])
        if rec["exp_num"] != run.length or rec["exp_den"] != run.period:
            raise ValueError(f"inconsistent exponent fields in {line!r}")
        out.add(run)
    return out


def encode_symbols(w: SymbolString) -> np.ndarray:
    """Equality-preserving int64 encoding (periods only need equality)."""
    syms = w.symbols
    if syms and all(isinstance(s, str) and len(s) == 1 for s in syms):
        return np.array([ord(s) for s in syms], dtype=np.int64)
    if syms and all(isinstance(s, (int, np.integer)) for s in syms):
        return np.array(syms, dtype=np.int64)
    ids: dict = {}
    return np.array([ids.setdefault(s, len(ids)) for s in syms], dtype=np.int64)


def minimal_period(w: SymbolString | str) -> int:
    """Smallest period of w by the naive scan; |w| when none exists."""
    w = as_symbols(w)
    n = w.n
    if n == 0:
        raise ValueError("minimal period of the empty string is undefined")
    syms = w.symbols
    for p in range(1, n):
        if all(syms[i] == syms[i + p] for i in range(n - p)):
            return p
    return n


def _guard_length(n: int) -> None:
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute-force guard: n={n} exceeds {BRUTE_FORCE_MAX_N}")


def find_runs_bruteforce(w: SymbolString | str) -> set[RunInterval]:
    """All runs of w, 1-indexed, by checking every substring."""
    w = as_symbols(w)
    _guard_length(w.n)
    if w.n < 2:
        return set()
    arr = encode_symbols(w)
    rs, re, rp, _, _, _, _ = _kernels.periodic_intervals(arr, 0)
    return {
        RunInterval(int(a) + 1, int(b) + 1, int(p))
        for a, b, p in zip(rs, re, rp)
    }


def find_short_runs_bruteforce(w: SymbolString | str, d: int) -> set[ShortRunInterval]:
    """All d-short runs of w, 1-indexed, by checking every substring."""
    w = as_symbols(w)
    if d < 1:
        raise ValueError(f"short-run gap bound d must be >= 1, got {d}")
    _guard_length(w.n)
    if w.n < 2:
        return set()
    arr = encode_symbols(w)
    _, _, _, ss, se, sp, sg = _kernels.periodic_intervals(arr, d)
    return {
        ShortRunInterval(int(a) + 1, int(b) + 1, int(p), int(g))
        for a, b, p, g in zip(ss, se, sp, sg)
    }


def check_runs_count(w: SymbolString | str) -> bool:
    """Number of runs is strictly below |w| (combinatorial bound)."""
    w = as_symbols(w)
    return len(find_runs_bruteforce(w)) < w.n


def exponent_sum(runs: Iterable[RunInterval], min_period: int = 1,
                 min_exponent: Fraction | int = 2) -> Fraction:
    """Exact sum of exponents over runs filtered by period and exponent."""
    total = Fraction(0)
    for r in runs:
        if r.period >= min_period and r.exponent >= min_exponent:
            total += r.exponent
    return total


def cubic_exponent_sum(w: SymbolString | str, p: int) -> Fraction:
    """Sum of exponents of runs with exponent >= 3 and period >= p.

    The combinatorial bound 12n/p for this sum only holds for p >= 2,
    hence the precondition.
    """
    if p < 2:
        raise ValueError(f"cubic exponent sum requires p >= 2, got {p}")
    w = as_symbols(w)
    return exponent_sum(find_runs_bruteforce(w), min_period=p, min_exponent=3)


def _is_period(w: SymbolString, p: int) -> bool:
    syms = w.symbols
    return 0 < p < w.n and all(syms[i] == syms[i + p] for i in range(w.n - p))


def fine_wilf_check(w: SymbolString | str, p: int, q: int) -> bool:
    """Whether gcd(p, q) is also a period of w.

    p and q must already be periods of w (contract violation
    otherwise).  The periodicity interaction lemma promises a True
    answer whenever p + q - gcd(p, q) <= |w|; callers asserting that
    implication should verify the premise themselves.
    """
    w = as_symbols(w)
    if not _is_period(w, p):
        raise ValueError(f"p={p} is not a period of the given string")
    if not _is_period(w, q):
        raise ValueError(f"q={q} is not a period of the given string")
    g = math.gcd(p, q)
    syms = w.symbols
    return all(syms[i] == syms[i + g] for i in range(w.n - g))


def gen_kolpakov_word(k: int) -> SymbolString:
    """The binary word (01)^k (10)^k over symbols '0' < '1'.

    These words carry many runs of large minimal period: for any
    p < 2k there are at least k - p//2 runs whose minimal period is
    at least p, which makes the family a stress test for any claim
    that large-period runs are rare.
    """
    if k < 1:
        raise ValueError(f"kolpakov word needs k >= 1, got {k}")
    return SymbolString.from_text("01" * k + "10" * k)


def all_periods(w: SymbolString | str) -> list[int]:
    """Every proper period of w (helper for premise sampling in tests)."""
    w = as_symbols(w)
    return [p for p in range(1, w.n) if _is_period(w, p)]
