"""Instrumented symbol comparisons with memoized charging.

The cost model charges a comparison of two input positions only when
its outcome cannot be deduced from what earlier comparisons already
revealed:

* positions known equal (via the union-find of equality classes)
  resolve to EQUAL free of charge;
* an inequality between two equality classes is charged once and then
  cached under the ordered pair of class representatives, so repeats
  are free;
* a charged EQUAL merges two classes, hence at most n-1 equality
  comparisons are ever charged on a string of length n.

Deliberately absent: transitive closure of order facts.  Knowing
a < b and b < c does NOT make a-vs-c free; only exact class-pair
repeats are.  This keeps the account an upper bound on the information
actually extracted, never an optimistic estimate.

A transcript records every resolved comparison in order.  Two equal
transcripts identify the same root-to-leaf path of the implied
decision tree, which is what the leaf-determinism checks exploit.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Any, NamedTuple

from .symbols import SymbolString, alphabet

CONSISTENT_MAX_N = 12
CONSISTENT_MAX_SIGMA = 4


class Outcome(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    @property
    def code(self) -> int:
        return self.value

    @classmethod
    def from_code(cls, code: int) -> "Outcome":
        return _BY_CODE[code]


_BY_CODE = {-1: Outcome.LESS, 0: Outcome.EQUAL, 1: Outcome.GREATER}


def sign_of(a: Any, b: Any) -> int:
    """-1, 0 or 1 as a is less than, equal to, or greater than b."""
    if a == b:
        return 0
    return -1 if a < b else 1


class ComparisonEntry(NamedTuple):
    i: int
    j: int
    outcome: Outcome
    charged: bool


@dataclass(slots=True)
class Transcript:
    """Ordered record of resolved comparisons plus charge counters.

    charged_eq + charged_ineq is the total charge; free_hits counts
    memoized resolutions.  Entry recording can be switched off for
    large corpora where only the counters matter; the counters are
    always maintained.
    """

    n: int
    entries: list[ComparisonEntry] = field(default_factory=list)
    charged_eq: int = 0
    charged_ineq: int = 0
    free_hits: int = 0

    @property
    def charged_total(self) -> int:
        return self.charged_eq + self.charged_ineq

    def key(self) -> tuple[tuple[int, int, int], ...]:
        """Hashable identity of the decision path (charge flags omitted:
        they are a function of the path for a deterministic client)."""
        return tuple((e.i, e.j, e.outcome.code) for e in self.entries)

    def to_text(self) -> str:
        lines = [f"n={self.n} charged_eq={self.charged_eq} charged_ineq={self.charged_ineq}"]
        for e in self.entries:
            flag = "CHARGED" if e.charged else "FREE"
            lines.append(f"{e.i} {e.j} {e.outcome.name} {flag}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Transcript":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = dict(part.split("=", 1) for part in lines[0].split())
        t = cls(n=int(head["n"]))
        t.charged_eq = int(head["charged_eq"])
        t.charged_ineq = int(head["charged_ineq"])
        for ln in lines[1:]:
            i, j, name, flag = ln.split()
            t.entries.append(ComparisonEntry(int(i), int(j), Outcome[name], flag == "CHARGED"))
        t.free_hits = sum(1 for e in t.entries if not e.charged)
        return t


class ComparisonOracle:
    """Comparison access to a SymbolString under the charging rules.

    All knowledge (classes, inequality cache, transcript) is global to
    the oracle instance, so nested searches over sub-ranges of the same
    string share one account, as the cost analysis requires.
    """

    def __init__(self, string: SymbolString, record_entries: bool = True):
        self.string = string
        self.record_entries = record_entries
        n = string.n
        self.transcript = Transcript(n=n)
        # position 0 unused: keep everything 1-indexed
        self._sym: list[Any] = [None] + list(string.symbols)
        self._parent = list(range(n + 1))
        self._size = [1] * (n + 1)
        # inequality cache: (ra, rb) with ra < rb -> sign of sym(ra) vs sym(rb)
        self._ineq: dict[tuple[int, int], int] = {}
        # adjacency: root -> set of roots it has cached inequalities with;
        # kept exact across unions so no cached fact is ever lost
        self._adj: dict[int, set[int]] = {}

    # -- public API ---------------------------------------------------

    def compare(self, i: int, j: int) -> Outcome:
        """Compare positions i and j (1-indexed), charging per the rules."""
        return _BY_CODE[self.compare_code(i, j)]

    def compare_code(self, i: int, j: int) -> int:
        """compare() returning the raw -1/0/1 code (hot path)."""
        n = self.transcript.n
        if not (1 <= i <= n and 1 <= j <= n):
            raise IndexError(f"compare({i},{j}) out of range 1..{n}")
        parent = self._parent
        x = i
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        ri = x
        x = j
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        rj = x
        t = self.transcript
        if ri == rj:
            code = 0
            charged = False
            t.free_hits += 1
        else:
            key = (ri, rj) if ri < rj else (rj, ri)
            hit = self._ineq.get(key)
            if hit is not None:
                code = hit if ri < rj else -hit
                charged = False
                t.free_hits += 1
            else:
                a = self._sym[i]
                b = self._sym[j]
                charged = True
                if a == b:
                    code = 0
                    t.charged_eq += 1
                    self._union(ri, rj)
                else:
                    code = -1 if a < b else 1
                    t.charged_ineq += 1
                    self._ineq[key] = code if ri < rj else -code
                    self._adj.setdefault(ri, set()).add(rj)
                    self._adj.setdefault(rj, set()).add(ri)
        if self.record_entries:
            t.entries.append(ComparisonEntry(i, j, _BY_CODE[code], charged))
        return code

    def peek(self, i: int, j: int) -> Outcome | None:
        """Outcome if already deducible, else None.  Never charges,
        never touches the transcript (used by zero-comparison checks)."""
        ri = self._find(i)
        rj = self._find(j)
        if ri == rj:
            return Outcome.EQUAL
        key = (ri, rj) if ri < rj else (rj, ri)
        hit = self._ineq.get(key)
        if hit is None:
            return None
        code = hit if ri < rj else -hit
        return _BY_CODE[code]

    # -- internals ----------------------------------------------------

    def _find(self, x: int) -> int:
        parent = self._parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def _union(self, ra: int, rb: int) -> None:
        # ra, rb are distinct roots whose symbols just compared equal
        if self._size[ra] < self._size[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        self._size[ra] += self._size[rb]
        lost = self._adj.pop(rb, None)
        if not lost:
            return
        # re-key rb's cached inequalities to the surviving root ra
        ineq = self._ineq
        adj = self._adj
        kept = adj.setdefault(ra, set())
        for o in lost:
            okey = (rb, o) if rb < o else (o, rb)
            val = ineq.pop(okey)
            if o == ra:
                raise RuntimeError("equality charged between classes cached unequal")
            nval = val if ((rb < o) == (ra < o)) else -val
            nkey = (ra, o) if ra < o else (o, ra)
            prev = ineq.get(nkey)
            if prev is None:
                ineq[nkey] = nval
                kept.add(o)
            elif prev != nval:
                raise RuntimeError("inconsistent inequality cache during merge")
            other = adj[o]
            other.discard(rb)
            other.add(ra)


def consistent_strings(transcript: Transcript, n: int, sigma: int) -> set[SymbolString]:
    """All length-n strings over the first sigma symbols whose letters
    satisfy every recorded outcome.  Exponential enumeration; guarded.

    For a deterministic comparison-driven client this is exactly the
    set of inputs that would replay the transcript, i.e. reach the
    same leaf.
    """
    if n > CONSISTENT_MAX_N or sigma > CONSISTENT_MAX_SIGMA:
        raise ValueError(
            f"consistent_strings guard: need n <= {CONSISTENT_MAX_N} and "
            f"sigma <= {CONSISTENT_MAX_SIGMA}, got n={n} sigma={sigma}"
        )
    checks = [(e.i - 1, e.j - 1, e.outcome.code) for e in transcript.entries]
    for i, j, _ in checks:
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError("transcript references positions outside 1..n")
    out: set[SymbolString] = set()
    for tup in itertools.product(alphabet(sigma), repeat=n):
        if all(sign_of(tup[i], tup[j]) == code for i, j, code in checks):
            out.add(SymbolString(tup))
    return out
