"""Envelope words E_{i,m}, their total order, and the envelope of a factor."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .sequences import SequenceCache, block_A, block_B, require_factor
from .words import complement, find_occurrences, strip_last

__all__ = [
    "EnvelopeError",
    "EnvelopeWord",
    "EnvelopeExtension",
    "envelope_word",
    "envelope_rank",
    "from_rank",
    "envelopes",
    "env",
    "env_extension",
    "separator_word",
    "interleave",
    "inner_envelope",
]

# env gives up past ceil(log2(|w|+1)) + ENV_SLACK orders
ENV_SLACK = 8


class EnvelopeError(RuntimeError):
    """An envelope computation contradicted its structural guarantees."""


@dataclass(frozen=True)
class EnvelopeWord:
    kind: int
    order: int
    word: str

    @property
    def rank(self) -> int:
        return envelope_rank(self)

    @property
    def label(self) -> str:
        return f"E_{{{self.kind},{self.order}}}"

    def __len__(self) -> int:
        return len(self.word)


@dataclass(frozen=True)
class EnvelopeExtension:
    """The factorization ``envelope.word == mu1 + factor + mu2``."""

    envelope: EnvelopeWord
    mu1: str
    mu2: str
    factor: str

    def to_dict(self) -> dict:
        return {
            "kind": self.envelope.kind,
            "m": self.envelope.order,
            "word": self.envelope.word,
            "mu1": self.mu1,
            "mu2": self.mu2,
        }


def envelope_word(kind: int, m: int) -> EnvelopeWord:
    """E_{1,m} = A_m minus its last letter; E_{2,m} = B_m B_{m-1} minus its last letter."""
    if kind not in (1, 2):
        raise ValueError(f"kind must be 1 or 2, got {kind}")
    if m < 1:
        raise ValueError(f"envelope order must be >= 1, got {m}")
    if kind == 1:
        w = strip_last(block_A(m))
    else:
        w = strip_last(block_B(m) + block_B(m - 1))
    return EnvelopeWord(kind, m, w)


def envelope_rank(e: EnvelopeWord) -> int:
    return 2 * (e.order - 1) + e.kind - 1


def from_rank(r: int) -> EnvelopeWord:
    if r < 0:
        raise ValueError(f"rank must be >= 0, got {r}")
    return envelope_word(r % 2 + 1, r // 2 + 1)


def envelopes(max_order: int) -> Iterator[EnvelopeWord]:
    """E_{1,1}, E_{2,1}, E_{1,2}, ... up to and including order ``max_order``."""
    for r in range(2 * max_order):
        yield from_rank(r)


def env(factor: str, cache: SequenceCache | None = None) -> EnvelopeWord:
    """The least envelope word containing ``factor``."""
    require_factor(factor, cache)
    limit = math.ceil(math.log2(len(factor) + 1)) + ENV_SLACK
    for e in envelopes(limit):
        if factor in e.word:
            return e
    raise EnvelopeError(f"no envelope of order <= {limit} contains {factor!r}")


def env_extension(factor: str, cache: SequenceCache | None = None) -> EnvelopeExtension:
    e = env(factor, cache)
    hits = find_occurrences(factor, e.word)
    if len(hits) != 1:
        raise EnvelopeError(f"{factor!r} occurs {len(hits)} times in {e.label}, expected exactly once")
    i = hits[0] - 1
    return EnvelopeExtension(e, e.word[:i], e.word[i + len(factor):], factor)


def separator_word(target_kind: int, m: int, n: int) -> str:
    """Letters x_1..x_h with E_{target_kind,m} = E_{1,n} x_1 E_{1,n} ... x_h E_{1,n}."""
    if not 1 <= n < m:
        raise ValueError(f"need 1 <= n < m, got n={n}, m={m}")
    w = envelope_word(target_kind, m - n).word
    return complement(w) if n % 2 else w


def interleave(block: str, separators: str) -> str:
    return block + "".join(x + block for x in separators)


def inner_envelope(factor: str, cache: SequenceCache | None = None) -> EnvelopeWord | None:
    """The envelope word forced inside ``factor`` by the order of its envelope.

    E_{1,m-2} when Env is E_{1,m}, E_{1,m-1} when Env is E_{2,m}; ``None``
    for m <= 2.
    """
    e = env(factor, cache)
    if e.order <= 2:
        return None
    inner = envelope_word(1, e.order - 2 if e.kind == 1 else e.order - 1)
    if inner.word not in factor:
        raise EnvelopeError(f"{inner.label} is not a factor of {factor!r} although Env is {e.label}")
    return inner
