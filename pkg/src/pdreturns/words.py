"""Word algebra over the alphabet {a, b, c}.

Words are plain Python strings. Positions handed across the public API are
1-indexed and inclusive, so ``factor(w, i, j)`` is ``w[i-1:j]``.
"""

from __future__ import annotations

from enum import Enum

__all__ = [
    "Letter",
    "WordError",
    "BASE_ALPHABET",
    "FULL_ALPHABET",
    "check_word",
    "concat",
    "mirror",
    "is_palindrome",
    "complement",
    "strip_last",
    "strip_prefix",
    "factor",
    "find_occurrences",
    "scan_occurrences",
]


class Letter(str, Enum):
    A = "a"
    B = "b"
    C = "c"


BASE_ALPHABET = frozenset("ab")
FULL_ALPHABET = frozenset("abc")

_SWAP = str.maketrans("ab", "ba")


class WordError(ValueError):
    """Raised when a word violates an operation's precondition."""


def check_word(w: str, alphabet: frozenset[str] = FULL_ALPHABET) -> str:
    bad = set(w) - alphabet
    if bad:
        raise WordError(f"letters {''.join(sorted(bad))!r} not in {''.join(sorted(alphabet))!r}")
    return w


def concat(*words: str) -> str:
    return "".join(words)


def mirror(w: str) -> str:
    return w[::-1]


def is_palindrome(w: str) -> bool:
    return w == w[::-1]


def complement(w: str) -> str:
    """Swap a and b letterwise."""
    check_word(w, BASE_ALPHABET)
    return w.translate(_SWAP)


def strip_last(w: str) -> str:
    """Return ``w`` with its last letter removed (right-multiplication by its inverse)."""
    if not w:
        raise WordError("cannot strip the last letter of the empty word")
    return w[:-1]


def strip_prefix(p: str, w: str) -> str:
    """Return ``u`` such that ``p + u == w``."""
    if not w.startswith(p):
        raise WordError(f"{p!r} is not a prefix of {w!r}")
    return w[len(p):]


def factor(w: str, i: int, j: int) -> str:
    """The block ``w[i..j]`` in 1-indexed inclusive notation; empty when j = i - 1."""
    if i < 1 or j > len(w) or j < i - 1:
        raise WordError(f"[{i},{j}] is not a valid range for a word of length {len(w)}")
    return w[i - 1:j]


def find_occurrences(pattern: str, text: str) -> list[int]:
    """Every 1-indexed start of ``pattern`` in ``text``, overlaps included.

    Plain quadratic scan: every position is compared directly. This is the
    reference the faster :func:`scan_occurrences` is checked against.
    """
    if not pattern:
        raise WordError("pattern must be nonempty")
    k = len(pattern)
    return [i + 1 for i in range(len(text) - k + 1) if text[i:i + k] == pattern]


def scan_occurrences(pattern: str, text: str, limit: int | None = None, start: int = 1) -> list[int]:
    """Same contract as :func:`find_occurrences`, using ``str.find`` hops.

    Stops after ``limit`` hits when given; ``start`` is the first 1-indexed
    position considered.
    """
    if not pattern:
        raise WordError("pattern must be nonempty")
    out: list[int] = []
    i = text.find(pattern, start - 1)
    while i != -1:
        out.append(i + 1)
        if limit is not None and len(out) >= limit:
            break
        i = text.find(pattern, i + 1)
    return out
