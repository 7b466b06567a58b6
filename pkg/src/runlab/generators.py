"""Seeded corpus generators behind a single experiment config.

Every generator is a pure function of (generator, n, sigma, p, seed),
so corpora are bit-reproducible.  Randomness comes from
:class:`random.Random` (Mersenne Twister), which Python guarantees to
be stable across platforms for a fixed seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .lz import gen_adversarial
from .periodicity import gen_kolpakov_word
from .symbols import alphabet

GENERATOR_NAMES = (
    "random",
    "fibonacci",
    "thue-morse",
    "power",
    "kolpakov",
    "lz-adversary",
)


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment cell: which corpus to build and how."""

    generator: str
    n: int
    sigma: int = 2
    d: int = 48
    p: int = 1
    seed: int = 0
    repeats: int = 1

    def __post_init__(self) -> None:
        if self.generator not in GENERATOR_NAMES:
            raise ValueError(
                f"unknown generator {self.generator!r}; "
                f"choose from {', '.join(GENERATOR_NAMES)}"
            )
        if self.n < 1:
            raise ValueError(f"length must be >= 1, got {self.n}")
        if self.sigma < 1:
            raise ValueError(f"alphabet size must be >= 1, got {self.sigma}")
        if self.d < 2:
            raise ValueError(f"depth must be >= 2, got {self.d}")
        if self.p < 1:
            raise ValueError(f"base period must be >= 1, got {self.p}")
        if self.repeats < 1:
            raise ValueError(f"repeats must be >= 1, got {self.repeats}")


def random_string(n: int, sigma: int, seed: int) -> str:
    """Uniform iid letters over the first sigma symbols."""
    rng = random.Random(seed)
    letters = alphabet(sigma)
    return "".join(rng.choice(letters) for _ in range(n))


def fibonacci_string(n: int) -> str:
    """Length-n prefix of the fibonacci word (a -> ab, b -> a)."""
    s = "a"
    while len(s) < n:
        s = s.replace("a", "a\x00").replace("b", "a").replace("\x00", "b")
    return s[:n]


def thue_morse_string(n: int) -> str:
    """Length-n prefix of the Thue-Morse word over {a, b}."""
    return "".join("ab"[bin(i).count("1") & 1] for i in range(n))


def power_string(n: int, sigma: int, p: int, seed: int, base: str | None = None) -> str:
    """base repeated to length n; base defaults to a seeded random
    string of length p (the vehicle for recursion-forcing w^e corpora)."""
    if base is None:
        base = random_string(p, sigma, seed)
    if not base:
        raise ValueError("power generator needs a non-empty base")
    reps = -(-n // len(base))
    return (base * reps)[:n]


def kolpakov_string(n: int) -> str:
    """(01)^k (10)^k with k = n // 4 (length 4k, n rounded down)."""
    k = n // 4
    if k < 1:
        raise ValueError(f"kolpakov family needs n >= 4, got {n}")
    return gen_kolpakov_word(k).text


def make_string(config: ExperimentConfig, base: str | None = None) -> str:
    """Instantiate the configured corpus string."""
    g = config.generator
    if g == "random":
        return random_string(config.n, config.sigma, config.seed)
    if g == "fibonacci":
        return fibonacci_string(config.n)
    if g == "thue-morse":
        return thue_morse_string(config.n)
    if g == "power":
        return power_string(config.n, config.sigma, config.p, config.seed, base)
    if g == "kolpakov":
        return kolpakov_string(config.n)
    return gen_adversarial(config.n, config.sigma, seed=config.seed).text.text
