"""Run discovery under a linear budget of charged inequality comparisons.

The search finds every run of (a range of) the input while keeping the
number of charged inequality outcomes proportional to the range length.
Discovery never inspects letters directly: all letter information flows
through a :class:`~runlab.oracle.ComparisonOracle`, so which intervals
come out as runs is a function of the comparison transcript alone.

The pipeline, for a range of length W and a current period p:

1. split the range into blocks of length p and compare each block with
   its d successors, recording the first mismatch offset from either
   end and the sign at the first mismatch (at most 2*d*ceil(W/p)
   charged inequalities).  Positions past the range end act as one
   virtual letter smaller than everything, mismatching for free.
   Agreement stretches of the table yield every run with a period
   q*p, q <= d, directly;
2. label each block by its mismatch signature; equal labels mean the
   block pair relation to the next d-1 blocks looks identical.  No
   comparisons are needed;
3. every remaining run of the input corresponds to a run or d-gapped
   repetition of the label sequence.  Factors of small exponent fence
   a window that only needs O(d) fixed-period sweeps (skip scans of
   at most 2*ceil(W'/p') charged inequalities each);
4. cubic label factors with minimal period q < d need no comparisons
   at all: the window is either already covered by stage 1 or fenced by a
   strictly monotone chain of known inequalities (checked for free
   from cached outcomes when verification is enabled);
5. cubic label factors with q >= d recurse on their window with
   period p*q.  With d = 48 the recursion shrinks geometrically: the
   block counts of the children sum to less than half the parent's.

Candidates from all stages are then extended to maximality, measured
for their exact minimal period, and filtered.  This assembly phase is
plain bookkeeping on the raw letters, outside the comparison account:
the staged comparisons above already pin down which intervals are
runs, so assembly charges nothing (asserted by counter snapshot).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from . import _kernels
from .derived import find_periodic_intervals
from .oracle import ComparisonOracle, Transcript
from .periodicity import RunInterval, encode_symbols
from .symbols import SymbolString, as_symbols

DEFAULT_LOOKAHEAD = 48
MAX_RECURSION_DEPTH = 64


class CandidateSource(Enum):
    """Which stage produced a candidate interval."""

    SHIFT_TABLE = "shift-table"
    FACTOR_SCAN = "factor-scan"
    RECURSION = "recursion"


class ChainKind(Enum):
    """Why a small-period cubic label factor needs no comparisons."""

    ALL_PERIODIC = "all-periodic"
    ORDER_CHAIN = "order-chain"


@dataclass(frozen=True)
class CandidateRun:
    """A periodic interval reported by one search stage.

    ``start``/``end`` are 1-indexed inclusive positions of the original
    string; ``period`` is the (not necessarily minimal) period the
    stage established.
    """

    start: int
    end: int
    period: int
    source: CandidateSource


@dataclass(frozen=True)
class BudgetRecord:
    """Charged inequalities of one stage call against its hard bound."""

    stage: str
    lo: int
    hi: int
    period: int
    charged: int
    bound: int

    @property
    def within(self) -> bool:
        return self.charged <= self.bound


@dataclass(frozen=True)
class DecayRecord:
    """Recursion mass spawned by one node of the search tree.

    ``total`` is the sum of (factor length + d + 1) / q over the cubic
    label factors that recursed; with d = 48 it must stay below half of
    ``block_count``, which forces geometric decay of total work.
    """

    lo: int
    hi: int
    period: int
    block_count: int
    total: Fraction
    limit: Fraction | None


@dataclass
class BlockTable:
    """Mismatch structure of length-p blocks against their d successors.

    Arrays are (block_count+1) x (lookahead+1), 1-indexed on both axes.
    ``first_mismatch[i][j]`` is the smallest offset k in 1..p where
    block i and block i+j disagree (-1 when they agree fully or block
    i+j starts past the range), ``mismatch_sign`` the comparison sign
    at that offset, and ``last_mismatch`` the smallest disagreeing
    offset from the block end (0-based).
    """

    lo: int
    hi: int
    period: int
    lookahead: int
    block_count: int
    first_mismatch: np.ndarray
    mismatch_sign: np.ndarray
    last_mismatch: np.ndarray


@dataclass
class RunSearchReport:
    """Everything observable about one search call."""

    n: int
    lo: int
    hi: int
    base_period: int
    lookahead: int
    runs: list[RunInterval] = field(default_factory=list)
    transcript: Transcript | None = None
    charged_eq: int = 0
    charged_ineq: int = 0
    free_hits: int = 0
    budget: list[BudgetRecord] = field(default_factory=list)
    decay: list[DecayRecord] = field(default_factory=list)
    max_depth: int = 0
    table_calls: int = 0
    scan_calls: int = 0
    chain_all_periodic: int = 0
    chain_order: int = 0
    candidate_counts: dict[CandidateSource, int] = field(default_factory=dict)
    verify_chains: bool = False

    @property
    def charged_total(self) -> int:
        return self.charged_eq + self.charged_ineq

    @property
    def budget_ok(self) -> bool:
        return all(rec.within for rec in self.budget)


def _record_budget(
    report: RunSearchReport | None,
    stage: str,
    lo: int,
    hi: int,
    period: int,
    charged: int,
    bound: int,
) -> None:
    if charged > bound:
        raise RuntimeError(
            f"{stage} on [{lo},{hi}] period {period} charged {charged} > bound {bound}"
        )
    if report is not None:
        report.budget.append(BudgetRecord(stage, lo, hi, period, charged, bound))


def compute_block_table(
    oracle: ComparisonOracle,
    lo: int,
    hi: int,
    period: int,
    lookahead: int,
    report: RunSearchReport | None = None,
) -> BlockTable:
    """Compare each block with its ``lookahead`` successors.

    Charges at most 2 * lookahead * block_count inequalities: one per
    direction per block pair.
    """
    p, d = period, lookahead
    width = hi - lo + 1
    nb = -(-width // p)
    first = np.full((nb + 1, d + 1), -1, dtype=np.int32)
    sign = np.zeros((nb + 1, d + 1), dtype=np.int8)
    last = np.full((nb + 1, d + 1), -1, dtype=np.int32)
    cmp = oracle.compare_code
    before = oracle.transcript.charged_ineq

    for i in range(1, nb + 1):
        jmax = min(d, nb - i)
        if jmax < 1:
            continue
        row_first = first[i]
        row_sign = sign[i]
        row_last = last[i]
        head = lo - 1 + (i - 1) * p  # position before block i
        tail = head + p  # last position of block i
        for j in range(1, jmax + 1):
            off = j * p
            in_range = min(p, hi - head - off)
            mm = -1
            ss = 0
            for k in range(1, in_range + 1):
                c = cmp(head + k, head + k + off)
                if c:
                    mm = k
                    ss = c
                    break
            if mm < 0 and in_range < p:
                # partner runs past the range: virtual letters lose
                mm = max(in_range, 0) + 1
                ss = 1
            if mm < 0:
                continue
            row_first[j] = mm
            row_sign[j] = ss
            if p == 1 or mm == p:
                row_last[j] = 0
                continue
            for k in range(p):
                v = tail - k + off
                if v > hi or cmp(tail - k, v):
                    row_last[j] = k
                    break

    charged = oracle.transcript.charged_ineq - before
    _record_budget(report, "block-table", lo, hi, p, charged, 2 * d * nb)
    if report is not None:
        report.table_calls += 1
    return BlockTable(lo, hi, p, d, nb, first, sign, last)


def shift_run_candidates(table: BlockTable) -> list[CandidateRun]:
    """Runs with period q*p for q <= lookahead, read off the table.

    Within one block, positions strictly between the two recorded
    mismatch offsets are unresolved, but they are fenced by mismatches
    on both sides and the fenced span is shorter than any period under
    consideration, so treating them as disagreements loses nothing.
    No comparisons are made.
    """
    p = table.period
    nb = table.block_count
    width = table.hi - table.lo + 1
    base = table.lo - 1
    out: list[CandidateRun] = []
    for q in range(1, table.lookahead + 1):
        span = q * p
        domain = width - span
        if domain < span:
            break
        col_first = table.first_mismatch[1 : nb - q + 1, q]
        col_last = table.last_mismatch[1 : nb - q + 1, q]
        idx = np.flatnonzero(col_first != -1)
        if idx.size:
            blocked_from = idx * p + col_first[idx]
            blocked_to = (idx + 1) * p - col_last[idx]
            seg_start = np.concatenate(([1], blocked_to + 1))
            seg_end = np.minimum(np.concatenate((blocked_from - 1, [domain])), domain)
        else:
            seg_start = np.array([1])
            seg_end = np.array([domain])
        keep = seg_end - seg_start + 1 >= span
        for a, e in zip(seg_start[keep], seg_end[keep]):
            out.append(
                CandidateRun(
                    base + int(a), base + int(e) + span, span, CandidateSource.SHIFT_TABLE
                )
            )
    return out


def block_signature_letters(table: BlockTable) -> np.ndarray:
    """Label blocks by their mismatch signatures (no comparisons).

    Two blocks get equal labels iff for every j in 1..lookahead-1 their
    first-mismatch offsets against the j-th successor coincide and the
    mismatch signs coincide (fully agreeing and out-of-range pairs both
    count as offset -1).
    """
    nb = table.block_count
    d = table.lookahead
    letters = np.empty(nb, dtype=np.int64)
    if nb == 0:
        return letters
    key = table.first_mismatch[1:, 1:d].astype(np.int64) * 4
    key += table.mismatch_sign[1:, 1:d]
    key = np.ascontiguousarray(key)
    seen: dict[bytes, int] = {}
    for i in range(nb):
        letters[i] = seen.setdefault(key[i].tobytes(), len(seen))
    return letters


def find_p_periodic_runs(
    oracle: ComparisonOracle,
    lo: int,
    hi: int,
    period: int,
    report: RunSearchReport | None = None,
) -> list[CandidateRun]:
    """Maximal intervals of [lo, hi] with the given period and exponent >= 2.

    Skip scan charging at most 2 * ceil(W / period) inequalities: on a
    mismatch the forward pass jumps a full period ahead and a backward
    pass walks down until the previous known mismatch.  Unresolved
    positions are fenced by mismatches, hence never inside a reported
    interval, whose bounds are therefore exact within [lo, hi].
    """
    n = oracle.transcript.n
    if not (1 <= lo <= hi <= n):
        raise ValueError(f"range [{lo},{hi}] invalid for length {n}")
    width = hi - lo + 1
    if width < 2 * period:
        raise ValueError(f"range of length {width} cannot hold period {period} runs")

    cmp = oracle.compare_code
    base = lo - 1
    end = width - period
    known: dict[int, int] = {}
    before = oracle.transcript.charged_ineq

    x = 1
    while x <= end:
        c = known.get(x)
        if c is None:
            c = cmp(base + x, base + x + period)
            known[x] = c
        if c == 0:
            x += 1
            continue
        y = min(x + period - 1, end)
        while y > x:
            cy = known.get(y)
            if cy is None:
                cy = cmp(base + y, base + y + period)
                known[y] = cy
            if cy:
                break
            y -= 1
        x += period

    charged = oracle.transcript.charged_ineq - before
    _record_budget(report, "periodic-scan", lo, hi, period, charged, 2 * (-(-width // period)))
    if report is not None:
        report.scan_calls += 1

    out: list[CandidateRun] = []
    run_a = run_e = None
    for x in sorted(known):
        if known[x] == 0 and run_a is not None and x == run_e + 1:
            run_e = x
            continue
        if run_a is not None and run_e - run_a + 1 >= period:
            out.append(
                CandidateRun(
                    base + run_a, base + run_e + period, period, CandidateSource.FACTOR_SCAN
                )
            )
        run_a = run_e = x if known[x] == 0 else None
    if run_a is not None and run_e - run_a + 1 >= period:
        out.append(
            CandidateRun(base + run_a, base + run_e + period, period, CandidateSource.FACTOR_SCAN)
        )
    return out


def classify_small_period_factor(
    table: BlockTable, k1: int, k2: int, q: int
) -> tuple[ChainKind, int]:
    """Why a cubic label factor with period q < lookahead is already done.

    Returns the kind and, for an order chain, the 1-indexed block k in
    [k1, k1+q-1] whose recorded mismatch anchors the chain (0 for the
    all-periodic case).  Reads only the table: zero comparisons.
    """
    for k in range(k1, k1 + q):
        if table.first_mismatch[k][q] != -1:
            return ChainKind.ORDER_CHAIN, k
    return ChainKind.ALL_PERIODIC, 0


def verify_order_chain(
    oracle: ComparisonOracle, table: BlockTable, k1: int, k2: int, q: int
) -> int:
    """Check the monotone chain of a small-period cubic factor for free.

    The chain links positions s, s+pq, s+2pq, ... whose pairwise
    comparisons all happened while building the table, so every link is
    answerable from cached outcomes without charging.  Returns the
    number of links checked; raises if any link has the wrong sign.
    """
    kind, k = classify_small_period_factor(table, k1, k2, q)
    if kind is ChainKind.ALL_PERIODIC:
        return 0
    p = table.period
    expected = int(table.mismatch_sign[k][q])
    s = table.lo - 1 + (k - 1) * p + int(table.first_mismatch[k][q])
    step = p * q
    vmax = min(table.hi, table.lo - 1 + (k2 + q) * p)
    checked = 0
    u = s
    while u + step <= vmax and k + (checked + 1) * q <= k2:
        seen = oracle.peek(u, u + step)
        if seen is not None:
            if seen.code != expected:
                raise RuntimeError(
                    f"order chain broken at {u}: {seen.code} != {expected}"
                )
            checked += 1
        u += step
    return checked


def _factor_window(lo: int, hi: int, p: int, d: int, k1: int, k2: int) -> tuple[int, int]:
    """Range that contains every run corresponding to label factor [k1, k2]."""
    return max(lo, lo + (k1 - 2) * p), min(hi, lo - 1 + (k2 + d) * p)


def _search(
    oracle: ComparisonOracle,
    lo: int,
    hi: int,
    p: int,
    d: int,
    report: RunSearchReport,
    depth: int,
) -> list[CandidateRun]:
    if depth > MAX_RECURSION_DEPTH:
        raise RuntimeError("recursion failed to decay")
    report.max_depth = max(report.max_depth, depth)
    width = hi - lo + 1
    if width < 2 * p:
        return []

    table = compute_block_table(oracle, lo, hi, p, d, report)
    tr = oracle.transcript
    snapshot = (tr.charged_eq, tr.charged_ineq)
    cands = shift_run_candidates(table)
    letters = block_signature_letters(table)
    factors = find_periodic_intervals(letters, d)
    if (tr.charged_eq, tr.charged_ineq) != snapshot:
        raise RuntimeError("label analysis must not touch the oracle")

    decay_total = Fraction(0)
    recursed = False
    for f in factors:
        k1, k2 = f.start + 1, f.end + 1
        q = f.period
        if f.is_short or f.length < 3 * q:
            wlo, whi = _factor_window(lo, hi, p, d, k1, k2)
            sweeps = (whi - wlo + 1) // (2 * p * q)
            for r in range(1, sweeps + 1):
                cands += find_p_periodic_runs(oracle, wlo, whi, r * p * q, report)
        elif q < d:
            kind, _ = classify_small_period_factor(table, k1, k2, q)
            if kind is ChainKind.ALL_PERIODIC:
                report.chain_all_periodic += 1
            else:
                report.chain_order += 1
            if report.verify_chains:
                ineq_before = tr.charged_ineq
                verify_order_chain(oracle, table, k1, k2, q)
                if tr.charged_ineq != ineq_before:
                    raise RuntimeError("chain verification must be free")
        else:
            wlo, whi = _factor_window(lo, hi, p, d, k1, k2)
            decay_total += Fraction(k2 - k1 + 1 + d + 1, q)
            recursed = True
            for c in _search(oracle, wlo, whi, p * q, d, report, depth + 1):
                cands.append(
                    CandidateRun(c.start, c.end, c.period, CandidateSource.RECURSION)
                )

    if recursed:
        limit = Fraction(table.block_count, 2) if d == DEFAULT_LOOKAHEAD else None
        report.decay.append(
            DecayRecord(lo, hi, p, table.block_count, decay_total, limit)
        )
        if limit is not None and decay_total >= limit:
            raise RuntimeError(
                f"recursion mass {decay_total} exceeds {limit} on [{lo},{hi}]"
            )
    return cands


def _assemble_runs(
    arr: np.ndarray,
    lo: int,
    hi: int,
    p: int,
    cands: list[CandidateRun],
    report: RunSearchReport,
) -> list[RunInterval]:
    """Extend candidates to maximality, settle minimal periods, filter.

    A candidate interval with period P extends while its neighbour
    matches the letter one period inside; the extended interval is a
    genuine run because P is a multiple of the minimal period here.
    The final filter keeps runs admitting a period that is a multiple
    of p, i.e. 2 * lcm(p, minimal period) fits inside.

    Works on the raw letter codes, never the oracle: by this point the
    charged comparisons already determine every run, so assembly is
    kept outside the comparison account by construction.
    """
    seen: set[tuple[int, int, int]] = set()
    results: dict[tuple[int, int], RunInterval] = {}
    for c in cands:
        key = (c.start, c.end, c.period)
        if key in seen:
            continue
        seen.add(key)
        a0, b0, shortest = _kernels.extend_and_minper(
            arr, c.start - 1, c.end - 1, c.period, lo - 1, hi - 1
        )
        a, b = int(a0) + 1, int(b0) + 1
        if (a, b) not in results and 2 * math.lcm(p, int(shortest)) <= b - a + 1:
            results[(a, b)] = RunInterval(a, b, int(shortest))
        report.candidate_counts[c.source] = report.candidate_counts.get(c.source, 0) + 1
    return sorted(results.values())


def run_search(
    text: SymbolString | str | None = None,
    lo: int | None = None,
    hi: int | None = None,
    p: int = 1,
    d: int = DEFAULT_LOOKAHEAD,
    *,
    oracle: ComparisonOracle | None = None,
    record_entries: bool = False,
    verify_chains: bool = False,
) -> RunSearchReport:
    """Find all runs of t[lo..hi] admitting a period multiple of p.

    Returns a full report: the runs plus transcript counters, per-stage
    budget records, recursion decay records, and depth.  Pass
    ``record_entries=True`` to keep the comparison list itself (memory
    grows with the charged and free comparison count).
    """
    if oracle is None:
        if text is None:
            raise ValueError("need a string or an oracle")
        oracle = ComparisonOracle(as_symbols(text), record_entries=record_entries)
    s = oracle.string
    n = s.n
    lo = 1 if lo is None else lo
    hi = n if hi is None else hi
    if n > 0 and not (1 <= lo <= hi <= n):
        raise ValueError(f"range [{lo},{hi}] invalid for length {n}")
    if p < 1:
        raise ValueError("period must be positive")
    if d < 2:
        raise ValueError("lookahead must be at least 2")

    report = RunSearchReport(n=n, lo=lo, hi=hi, base_period=p, lookahead=d)
    report.verify_chains = verify_chains
    if n > 0 and hi - lo + 1 >= 2 * p:
        cands = _search(oracle, lo, hi, p, d, report, 0)
        tr = oracle.transcript
        before = (tr.charged_eq, tr.charged_ineq, tr.free_hits)
        report.runs = _assemble_runs(encode_symbols(s), lo, hi, p, cands, report)
        if (tr.charged_eq, tr.charged_ineq, tr.free_hits) != before:
            raise RuntimeError("assembly moved a transcript counter")
    tr = oracle.transcript
    report.transcript = tr
    report.charged_eq = tr.charged_eq
    report.charged_ineq = tr.charged_ineq
    report.free_hits = tr.free_hits
    return report


def find_all_p_runs(
    text: SymbolString | str,
    lo: int,
    hi: int,
    p: int,
    d: int = DEFAULT_LOOKAHEAD,
) -> list[RunInterval]:
    """All runs of t[lo..hi] that have a period multiple of p (maximality
    and minimal periods relative to the range)."""
    return run_search(text, lo, hi, p, d).runs


def find_all_runs(text: SymbolString | str, d: int = DEFAULT_LOOKAHEAD) -> list[RunInterval]:
    """All runs of the string, via the budgeted search."""
    return run_search(text, d=d).runs
