"""Greedy Lempel-Ziv factorization and the hard instance family.

The factorization splits t into t1 t2 ... tz where t1 = t[1] and each
later factor is the longest prefix of the unparsed remainder that also
occurs starting at or before the current boundary (the occurrence may
overlap the factor itself, so "aaaa" parses as a|aaa).  Equivalence of
factorizations means equal factor-length vectors.

The adversarial family interleaves a fixed dictionary over the even
letters with query letters; each query can be answered only by enough
comparisons to tell apart sigma/2 - 1 candidate letters, which is what
drives the comparison lower bound reproduced by the harness.  The
floor k * log3(sigma/2 - 1) states that bound for an instance with k
queries: a ternary-outcome comparison tree distinguishing
(sigma/2 - 1)^k inputs needs that depth.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field

from .oracle import ComparisonOracle, Transcript
from .symbols import SymbolString, alphabet, as_symbols


def lz_factorize(w: SymbolString | str) -> list[int]:
    """Greedy factor lengths of w (sum equals |w|; empty input -> [])."""
    w = as_symbols(w)
    n = w.n
    if n == 0:
        return []
    syms = w.symbols
    if all(isinstance(s, str) and len(s) == 1 for s in syms):
        return _factorize_text("".join(syms))
    return _factorize_generic(syms)


def _factorize_text(s: str) -> list[int]:
    n = len(s)
    lengths = [1]
    j = 1
    while j < n:
        limit = n - j
        # does some occurrence of s[j:j+L] start before the boundary?
        good = 1 if s.find(s[j : j + 1]) < j else 0
        if good:
            # exponential probe then binary refine; earliest occurrence
            # index is monotone in L, so the predicate is monotone too
            hi = 1
            while hi < limit and s.find(s[j : j + 2 * hi]) < j:
                hi *= 2
            lo = max(good, hi // 2)
            hi = min(2 * hi, limit)
            while lo < hi:
                mid = (lo + hi + 1) // 2
                if s.find(s[j : j + mid]) < j:
                    lo = mid
                else:
                    hi = mid - 1
            good = lo
        lengths.append(max(good, 1))
        j += max(good, 1)
    return lengths


def _factorize_generic(syms: tuple) -> list[int]:
    n = len(syms)
    lengths = [1]
    j = 1
    while j < n:
        best = 0
        for start in range(j):
            length = 0
            while j + length < n and syms[start + length] == syms[j + length]:
                length += 1
            if length > best:
                best = length
        lengths.append(max(best, 1))
        j += max(best, 1)
    return lengths


def lz_equivalent(a: list[int], b: list[int]) -> bool:
    """Factorizations are equivalent iff their length vectors are equal."""
    return list(a) == list(b)


def lz_factorize_instrumented(oracle: ComparisonOracle) -> tuple[list[int], Transcript]:
    """Greedy factorization through the comparison oracle.

    Matching tries every candidate start and extends while equal; with
    memoization the repeated probes are mostly free, and the charged
    total stays an honest upper bound on the information used.
    """
    n = oracle.string.n
    cmp_code = oracle.compare_code
    lengths: list[int] = []
    if n > 0:
        lengths.append(1)
    j = 1
    while j < n:
        remaining = n - j
        best = 0
        for start in range(1, j + 1):
            length = 0
            while length < remaining and cmp_code(start + length, j + 1 + length) == 0:
                length += 1
            if length > best:
                best = length
                if best == remaining:
                    break
        step = max(best, 1)
        lengths.append(step)
        j += step
    return lengths, oracle.transcript


def lengths_to_csv(lengths: list[int]) -> str:
    return ",".join(str(x) for x in lengths)


def lengths_from_csv(text: str) -> list[int]:
    text = text.strip()
    return [int(x) for x in text.split(",")] if text else []


# -- adversarial family ------------------------------------------------


@dataclass(frozen=True)
class AdversarialInstance:
    """Dictionary-plus-queries instance of total length n.

    text = s t where s = s1 s2 is the dictionary (|s| = 1.5 sigma):
    s1 lists the odd letters a1 a3 ... a_{sigma-1}, s2 interleaves the
    top letter with the even letters and ends a_sigma a_sigma.  The
    tail t carries k query letters, each preceded by a_sigma, and ends
    a_sigma a_sigma.  Query letters are even and in 2..sigma-2.
    """

    text: SymbolString
    sigma: int
    queries: tuple[int, ...]
    query_positions: tuple[int, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return self.text.n

    @property
    def k(self) -> int:
        return len(self.queries)

    @property
    def dictionary_length(self) -> int:
        return 3 * self.sigma // 2

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "sigma": self.sigma,
                "queries": list(self.queries),
                "text": self.text.text,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "AdversarialInstance":
        rec = json.loads(text)
        inst = gen_adversarial(rec["n"], rec["sigma"], queries=rec["queries"])
        if inst.text.text != rec["text"]:
            raise ValueError("adversarial record text does not match its parameters")
        return inst


def query_count(n: int, sigma: int) -> int:
    """k = (n - 1.5 sigma - 2) / 2, validating shape constraints."""
    if n % 2 or sigma % 2:
        raise ValueError(f"n and sigma must be even, got n={n} sigma={sigma}")
    if not 2 < sigma < n / 2:
        raise ValueError(f"need 2 < sigma < n/2, got n={n} sigma={sigma}")
    num = 2 * n - 3 * sigma - 4
    if num % 4:
        raise ValueError(
            f"no instance with n={n} sigma={sigma}: query count (n - 1.5*sigma - 2)/2 "
            "is not an integer"
        )
    k = num // 4
    if k < 1:
        raise ValueError(f"n={n} sigma={sigma} leaves no room for queries")
    return k


def gen_adversarial(
    n: int,
    sigma: int,
    queries: list[int] | tuple[int, ...] | None = None,
    seed: int = 0,
) -> AdversarialInstance:
    """Build the instance; queries drawn uniformly from the even letters
    2..sigma-2 with the given seed when not supplied explicitly."""
    k = query_count(n, sigma)
    letters = alphabet(sigma)

    def a(i: int) -> str:
        return letters[i - 1]

    if queries is None:
        rng = random.Random(seed)
        queries = tuple(2 * rng.randint(1, sigma // 2 - 1) for _ in range(k))
    else:
        queries = tuple(queries)
        if len(queries) != k:
            raise ValueError(f"expected {k} queries for n={n} sigma={sigma}, got {len(queries)}")
        for q in queries:
            if q % 2 or not 2 <= q <= sigma - 2:
                raise ValueError(f"query letters must be even in 2..{sigma - 2}, got {q}")

    s1 = "".join(a(i) for i in range(1, sigma, 2))
    s2 = "".join(a(sigma) + a(e) for e in range(2, sigma - 1, 2)) + a(sigma) * 2
    tail = "".join(a(sigma) + a(q) for q in queries) + a(sigma) * 2
    text = s1 + s2 + tail
    assert len(text) == n
    dict_len = len(s1) + len(s2)
    positions = tuple(dict_len + 2 * j for j in range(1, k + 1))
    return AdversarialInstance(
        text=SymbolString.from_text(text),
        sigma=sigma,
        queries=queries,
        query_positions=positions,
    )


def perturb_adversarial(inst: AdversarialInstance, which: int) -> SymbolString:
    """Copy of the text with query ordinal ``which`` (1-indexed) replaced
    by the odd letter just below it; this always changes the parse."""
    if not 1 <= which <= inst.k:
        raise ValueError(f"query ordinal {which} out of range 1..{inst.k}")
    letters = alphabet(inst.sigma)
    pos = inst.query_positions[which - 1]
    lowered = letters[inst.queries[which - 1] - 2]  # a_{i_j - 1}, 0-indexed
    chars = list(inst.text.text)
    chars[pos - 1] = lowered
    return SymbolString.from_text("".join(chars))


def lower_bound_floor(n: int, sigma: int) -> float:
    """k * log3(sigma/2 - 1): comparisons any correct parser must charge
    on some instance with these parameters."""
    k = query_count(n, sigma)
    return k * math.log(sigma / 2 - 1, 3)
