"""Occurrences and return words of factors of D.

Two routes lead to the same decomposition. :func:`decompose` scans D for the
occurrences of a factor and codes what it finds. :func:`predicted_decomposition`
never looks at D: it conjugates the closed-form return words of the factor's
envelope by the left extension ``mu1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .envelope import EnvelopeExtension, env_extension
from .sequences import CapError, SequenceCache, block_A, block_B, default_cache, require_factor, theta_prefix
from .words import scan_occurrences, strip_prefix

__all__ = [
    "ClassificationMismatch",
    "OccurrenceStream",
    "ReturnDecomposition",
    "SLOTS",
    "occurrences",
    "return_words",
    "decompose",
    "predicted_decomposition",
    "predicted_positions",
    "envelope_return_word",
    "envelope_r0",
    "coded_block",
]

# code letter -> index p of the return word that defines it
SLOTS = {1: {"a": 1, "b": 2}, 2: {"a": 1, "b": 2, "c": 4}}
CLASSIFICATION = {1: "Theta1", 2: "Theta2"}


class ClassificationMismatch(RuntimeError):
    """A scanned return-word sequence did not code to the expected Theta prefix."""

    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class OccurrenceStream:
    factor: str
    positions: tuple[int, ...]
    next_position: int
    window: int

    def to_dict(self) -> dict:
        return {"factor": self.factor, "positions": list(self.positions)}


@dataclass(frozen=True)
class ReturnDecomposition:
    factor: str
    r0: str
    returns: tuple[str, ...]
    coded: str
    classification: str
    alphabet_map: dict[str, str] = field(hash=False)
    partial: bool = False

    @property
    def kind(self) -> int:
        return 1 if self.classification == "Theta1" else 2

    def to_dict(self) -> dict:
        return {
            "factor": self.factor,
            "r0": self.r0,
            "returns": list(self.returns),
            "coded": self.coded,
            "classification": self.classification,
            "alphabet_map": dict(self.alphabet_map),
            "partial": self.partial,
        }


def occurrences(factor: str, count: int, cache: SequenceCache | None = None) -> OccurrenceStream:
    """First ``count`` starting positions of ``factor`` in D.

    The prefix is doubled until ``count + 1`` occurrences are visible, the
    extra one bounding the last return word.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    cache = default_cache() if cache is None else cache
    require_factor(factor, cache)
    n = max(1024, 64 * len(factor))
    while True:
        n = min(n, cache.max_length)
        hits = scan_occurrences(factor, cache.prefix(n), limit=count + 1)
        if len(hits) == count + 1:
            return OccurrenceStream(factor, tuple(hits[:-1]), hits[-1], n)
        if n >= cache.max_length:
            raise CapError(
                f"only {len(hits)} occurrences of {factor!r} in a prefix of length {n}; "
                f"needed {count + 1}"
            )
        n *= 2


def return_words(factor: str, count: int, cache: SequenceCache | None = None) -> tuple[str, list[str]]:
    """``(r0, [r_1, ..., r_count])`` read off D."""
    cache = default_cache() if cache is None else cache
    stream = occurrences(factor, count, cache)
    bounds = list(stream.positions) + [stream.next_position]
    d = cache.prefix(stream.next_position)
    r0 = d[:bounds[0] - 1]
    return r0, [d[bounds[p] - 1:bounds[p + 1] - 1] for p in range(count)]


def decompose(factor: str, count: int, cache: SequenceCache | None = None) -> ReturnDecomposition:
    """Scan, code and classify the return words of ``factor``.

    Code letters are assigned by slot (a = r_1, b = r_2, c = r_4), so the
    coding is directly comparable with the Theta prefix of the envelope's kind.
    Raises :class:`ClassificationMismatch` when it is not.
    """
    ext = env_extension(factor, cache)
    kind = ext.envelope.kind
    r0, rets = return_words(factor, count, cache)
    slots = {letter: rets[p - 1] for letter, p in SLOTS[kind].items() if p <= count}
    lookup: dict[str, str] = {}
    for letter, w in slots.items():
        if w in lookup:
            raise ClassificationMismatch(
                f"slots {lookup[w]} and {letter} of {factor!r} share the return word {w!r}",
                {"factor": factor, "slots": slots},
            )
        lookup[w] = letter
    coded = "".join(lookup.get(w, "?") for w in rets)
    expected = theta_prefix(kind, count)
    if coded != expected:
        p = next(i for i, (x, y) in enumerate(zip(coded, expected)) if x != y)
        raise ClassificationMismatch(
            f"return words of {factor!r} code to {coded[:p + 1]!r}..., "
            f"expected {CLASSIFICATION[kind]} prefix {expected[:p + 1]!r}",
            {"factor": factor, "p": p + 1, "return_word": rets[p], "coded": coded, "expected": expected},
        )
    return ReturnDecomposition(
        factor, r0, tuple(rets), coded, CLASSIFICATION[kind], slots, len(slots) < len(SLOTS[kind])
    )


def envelope_return_word(kind: int, m: int, letter: str) -> str:
    """Closed-form return word of E_{kind,m} coded by ``letter``."""
    if kind == 1:
        return {"a": block_A(m), "b": block_A(m - 1)}[letter]
    return {
        "a": block_A(m - 1),
        "b": block_A(m - 1) + block_A(m) + block_B(m + 1),
        "c": block_B(m) + block_B(m - 1),
    }[letter]


def envelope_r0(kind: int, m: int) -> str:
    return "" if kind == 1 else block_A(m)


def _conjugate(mu1: str, w: str) -> str:
    return strip_prefix(mu1, w + mu1)


def predicted_decomposition(factor: str, count: int, cache: SequenceCache | None = None) -> ReturnDecomposition:
    """The decomposition implied by the envelope extension, without scanning D."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    ext: EnvelopeExtension = env_extension(factor, cache)
    kind, m, mu1 = ext.envelope.kind, ext.envelope.order, ext.mu1
    coded = theta_prefix(kind, count)
    words = {letter: _conjugate(mu1, envelope_return_word(kind, m, letter)) for letter in SLOTS[kind]}
    slots = {letter: words[letter] for letter, p in SLOTS[kind].items() if p <= count}
    return ReturnDecomposition(
        factor,
        envelope_r0(kind, m) + mu1,
        tuple(words[c] for c in coded),
        coded,
        CLASSIFICATION[kind],
        slots,
        len(slots) < len(SLOTS[kind]),
    )


def predicted_lengths(kind: int, m: int) -> dict[str, int]:
    """|r_p| by code letter, from the closed forms."""
    h = 1 << (m - 1)
    if kind == 1:
        return {"a": 2 * h, "b": h}
    return {"a": h, "b": 7 * h, "c": 3 * h}


def predicted_positions(factor: str, count: int, cache: SequenceCache | None = None) -> list[int]:
    """L(factor, p) for p = 1..count as partial sums of closed-form lengths."""
    ext = env_extension(factor, cache)
    kind, m = ext.envelope.kind, ext.envelope.order
    lengths = predicted_lengths(kind, m)
    pos = len(ext.mu1) + (0 if kind == 1 else 1 << m) + 1
    out = []
    for letter in theta_prefix(kind, count):
        out.append(pos)
        pos += lengths[letter]
    return out


def coded_block(kind: int, m: int, n: int) -> tuple[str, str]:
    """The blocks (A_n, B_n) written over the alphabet built from E_{kind,m}, expanded to letters.

    Kind 1 gives (A_{m+n}, B_{m+n}); kind 2 gives the conjugates of
    A_{m+n+2} and B_{m+n+2} by A_m.
    """
    if kind not in (1, 2):
        raise ValueError(f"kind must be 1 or 2, got {kind}")
    if m < 1 or n < 0:
        raise ValueError(f"need m >= 1 and n >= 0, got m={m}, n={n}")
    if kind == 1:
        return block_A(m + n), block_B(m + n)
    a = block_A(m)
    return _conjugate(a, block_A(m + n + 2)), _conjugate(a, block_B(m + n + 2))
