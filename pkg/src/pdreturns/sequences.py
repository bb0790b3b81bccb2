"""The period-doubling word and the two coded sequences built on it.

``sigma`` generates the period-doubling word D as its fixed point from ``a``.
``tau1`` and ``tau2`` recode D into Theta1 and Theta2, the only two shapes a
return-word sequence of a factor of D can take.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping

from .words import BASE_ALPHABET, WordError, check_word

__all__ = [
    "Morphism",
    "SIGMA",
    "TAU1",
    "TAU2",
    "CapError",
    "SequenceCache",
    "DEFAULT_MAX_LENGTH",
    "MAX_ORDER",
    "apply_morphism",
    "block_A",
    "block_B",
    "delta",
    "pd_prefix",
    "theta_prefix",
    "product_prefix",
    "default_cache",
    "NotAFactorError",
    "membership",
    "require_factor",
]

DEFAULT_MAX_LENGTH = 2**26
MAX_ORDER = 30


class CapError(RuntimeError):
    """A request exceeded a configured length or order cap."""


@dataclass(frozen=True)
class Morphism:
    images: Mapping[str, str]
    name: str = ""

    def __post_init__(self) -> None:
        if any(not v for v in self.images.values()):
            raise ValueError("morphisms in scope are non-erasing")
        object.__setattr__(self, "images", MappingProxyType(dict(self.images)))
        object.__setattr__(self, "_table", str.maketrans(dict(self.images)))
        widths = {len(v) for v in self.images.values()}
        columns = None
        if len(widths) == 1 and all(v.isascii() for v in self.images.values()):
            k = widths.pop()
            # uniform morphism: column j of the image is a letter-to-letter map
            columns = tuple(
                bytes.maketrans(
                    "".join(self.images).encode(), "".join(v[j] for v in self.images.values()).encode()
                )
                for j in range(k)
            )
        object.__setattr__(self, "_columns", columns)

    def __call__(self, w: str) -> str:
        return apply_morphism(self, w)


SIGMA = Morphism({"a": "ab", "b": "aa"}, "sigma")
TAU1 = Morphism({"a": "a", "b": "bb"}, "tau1")
TAU2 = Morphism({"a": "ab", "b": "acac"}, "tau2")


def apply_morphism(m: Morphism, w: str) -> str:
    missing = set(w) - set(m.images)
    if missing:
        raise WordError(f"{m.name or 'morphism'} has no image for {''.join(sorted(missing))!r}")
    columns = m._columns  # type: ignore[attr-defined]
    if columns is None:
        return w.translate(m._table)  # type: ignore[attr-defined]
    src = w.encode("ascii")
    k = len(columns)
    out = bytearray(k * len(src))
    for j, table in enumerate(columns):
        out[j::k] = src.translate(table)
    return out.decode("ascii")


def _check_order(m: int) -> None:
    if m < 0:
        raise ValueError(f"order must be >= 0, got {m}")
    if m > MAX_ORDER:
        raise CapError(f"order {m} exceeds cap {MAX_ORDER}")


@lru_cache(maxsize=None)
def _blocks(m: int) -> tuple[str, str]:
    # Built from the recursion alone so that blocks never depend on a cache.
    if m == 0:
        return "a", "b"
    a, b = _blocks(m - 1)
    return a + b, a + a


def block_A(m: int) -> str:
    """sigma^m(a), a word of length 2^m."""
    _check_order(m)
    return _blocks(m)[0]


def block_B(m: int) -> str:
    """sigma^m(b), a word of length 2^m."""
    _check_order(m)
    return _blocks(m)[1]


def delta(m: int) -> str:
    """Last letter of block_A(m): ``a`` for even m, ``b`` for odd m."""
    if m < 0:
        raise ValueError(f"order must be >= 0, got {m}")
    return "a" if m % 2 == 0 else "b"


@dataclass
class SequenceCache:
    """Lazily grown prefix of D.

    The buffer only ever grows by appending ``sigma`` of its second half, so
    letters already present are never rewritten. Growth is serialized by a
    lock; readers slice the current immutable string.
    """

    max_length: int = DEFAULT_MAX_LENGTH
    buffer: str = "ab"
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    @classmethod
    def from_prefix(cls, prefix: str, max_length: int = DEFAULT_MAX_LENGTH) -> "SequenceCache":
        """Seed a cache with a given prefix (taken on trust; used for fault injection)."""
        if len(prefix) < 2 or len(prefix) % 2:
            raise ValueError("seed prefix must have even length >= 2")
        return cls(max_length=max_length, buffer=prefix)

    def __getstate__(self) -> dict:
        return {"max_length": self.max_length, "buffer": self.buffer}

    def __setstate__(self, state: dict) -> None:
        self.max_length = state["max_length"]
        self.buffer = state["buffer"]
        self._lock = threading.Lock()

    def prefix(self, n: int) -> str:
        if n < 0:
            raise ValueError(f"length must be >= 0, got {n}")
        if n > self.max_length:
            raise CapError(f"prefix length {n} exceeds cap {self.max_length}")
        if n > len(self.buffer):
            with self._lock:
                buf = self.buffer
                while len(buf) < n:
                    buf = buf + apply_morphism(SIGMA, buf[len(buf) // 2:])
                self.buffer = buf
        return self.buffer[:n]

    def __len__(self) -> int:
        return len(self.buffer)


_default = SequenceCache()


def default_cache() -> SequenceCache:
    return _default


def pd_prefix(n: int, cache: SequenceCache | None = None) -> str:
    """The length-n prefix of D."""
    return (_default if cache is None else cache).prefix(n)


def theta_prefix(kind: int, n: int, cache: SequenceCache | None = None) -> str:
    """First n letters of Theta1 = tau1(D) (kind 1) or Theta2 = tau2(D) (kind 2)."""
    if kind not in (1, 2):
        raise ValueError(f"kind must be 1 or 2, got {kind}")
    # every letter of D maps to at least one letter, so n letters of D suffice
    d = pd_prefix(n, cache)
    return apply_morphism(TAU1 if kind == 1 else TAU2, d)[:n]


def product_prefix(n: int) -> str:
    """Length-n prefix of D from the product form a * B_0 * B_1 * ...

    Independent of :class:`SequenceCache`; used as a cross-check.
    """
    parts = ["a"]
    total, j = 1, 0
    while total < n:
        parts.append(block_B(j))
        total += 1 << j
        j += 1
    return "".join(parts)[:n]


class NotAFactorError(WordError):
    """The word does not occur in D."""


def membership(w: str, cache: SequenceCache | None = None) -> tuple[bool, int]:
    """Decide whether ``w`` occurs in D by scanning a stabilized prefix.

    The window starts at max(1024, 64|w|) and doubles until two consecutive
    windows agree. Presence is final once seen; absence is a cutoff, and the
    window length that decided it is returned alongside the answer.
    """
    if not w:
        return True, 0
    if set(w) - {"a", "b"}:
        return False, 0
    cache = _default if cache is None else cache
    n = max(1024, 64 * len(w))
    seen = w in cache.prefix(min(n, cache.max_length))
    while True:
        if n >= cache.max_length:
            return seen, cache.max_length
        n2 = min(2 * n, cache.max_length)
        now = w in cache.prefix(n2)
        if now == seen:
            return now, n2
        seen, n = now, n2


def require_factor(w: str, cache: SequenceCache | None = None) -> str:
    if not w:
        raise WordError("factor must be nonempty")
    check_word(w, BASE_ALPHABET)
    present, window = membership(w, cache)
    if not present:
        raise NotAFactorError(f"{w!r} is not a factor of D (no occurrence in a prefix of length {window})")
    return w
