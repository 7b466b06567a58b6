"""Symbol strings over a totally ordered alphabet.

Positions are 1-indexed everywhere in this package: the classical
periodicity literature counts from 1 and keeping the same convention
makes every interval formula directly comparable with pen-and-paper
derivations.  A SymbolString is immutable; symbols may be characters
or any other hashable, mutually orderable values (the derived strings
built by the run-finding pipeline use plain ints).

The canonical materialized alphabet orders symbols by Unicode code
point starting at "a", so byte-oriented inputs (files read by the CLI)
and generated corpora agree on what "smaller symbol" means.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator

ALPHABET_BASE = ord("a")


def alphabet(sigma: int) -> str:
    """First sigma symbols of the ordered symbol universe."""
    if sigma < 1:
        raise ValueError(f"alphabet size must be >= 1, got {sigma}")
    return "".join(chr(ALPHABET_BASE + i) for i in range(sigma))


@dataclass(frozen=True)
class SymbolString:
    """Immutable 1-indexed string of symbols.

    ``sigma`` is the number of distinct symbols actually present, not
    the size of the universe the string was drawn from.
    """

    symbols: tuple[Any, ...]
    _sigma: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_sigma", len(set(self.symbols)))

    @classmethod
    def from_text(cls, text: str) -> "SymbolString":
        return cls(tuple(text))

    @property
    def n(self) -> int:
        return len(self.symbols)

    @property
    def sigma(self) -> int:
        return self._sigma

    @property
    def text(self) -> str:
        """Render as str; only valid when all symbols are single chars."""
        return "".join(self.symbols)

    def at(self, i: int) -> Any:
        """Symbol at 1-indexed position i."""
        if not 1 <= i <= len(self.symbols):
            raise IndexError(f"position {i} out of range 1..{len(self.symbols)}")
        return self.symbols[i - 1]

    def substring(self, i: int, j: int) -> "SymbolString":
        """Substring spanning positions i..j inclusive, 1-indexed."""
        if not (1 <= i and i <= j + 1 and j <= len(self.symbols)):
            raise IndexError(f"bad substring bounds ({i},{j}) for n={len(self.symbols)}")
        return SymbolString(self.symbols[i - 1 : j])

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[Any]:
        return iter(self.symbols)


def as_symbols(value: "SymbolString | str") -> SymbolString:
    """Coerce a plain str (or pass through a SymbolString)."""
    if isinstance(value, SymbolString):
        return value
    return SymbolString.from_text(value)
