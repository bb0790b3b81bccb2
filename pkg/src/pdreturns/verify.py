"""Executable checks of the structural statements about D and its return words.

Every check produces a :class:`CheckResult`; a failing check carries a
concrete counterexample (words and positions) that can be re-checked by hand.
Suites never stop at the first failure.
"""

from __future__ import annotations

import json
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

from . import envelope as envmod
from .envelope import env_extension, envelope_word, inner_envelope, interleave, separator_word
from .returns import (
    SLOTS,
    ClassificationMismatch,
    decompose,
    envelope_r0,
    envelope_return_word,
    occurrences,
    predicted_decomposition,
    predicted_lengths,
    predicted_positions,
    return_words,
    coded_block,
)
from .sequences import (
    SIGMA,
    SequenceCache,
    apply_morphism,
    block_A,
    block_B,
    default_cache,
    delta,
    product_prefix,
    theta_prefix,
)
from .words import find_occurrences, is_palindrome, strip_last

__all__ = [
    "CheckResult",
    "VerificationReport",
    "enumerate_factors",
    "verify_theorem_envelope",
    "verify_extension",
    "verify_general",
    "verify_structure",
    "sweep",
]

DEFAULT_LEN_MAX = 32
DEFAULT_COUNT = 64
DEFAULT_M_MAX = 12


@dataclass
class CheckResult:
    check_id: str
    params: dict
    status: str
    counterexample: dict | None = None
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self, timing: bool = True) -> dict:
        d = asdict(self)
        if not timing:
            d.pop("elapsed")
        return d


@dataclass
class VerificationReport:
    results: list[CheckResult]
    config: dict = field(default_factory=dict)

    @property
    def totals(self) -> dict[str, int]:
        n_pass = sum(r.passed for r in self.results)
        return {"pass": n_pass, "fail": len(self.results) - n_pass}

    @property
    def ok(self) -> bool:
        return self.totals["fail"] == 0

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "config": self.config,
            "results": [r.to_dict(timing) for r in self.results],
            "totals": self.totals,
        }

    def to_json(self, timing: bool = True, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(timing), indent=indent)


def _run(check_id: str, params: dict, fn: Callable[[], dict | None]) -> CheckResult:
    """Run ``fn``; it returns None on success or a counterexample dict."""
    t0 = time.perf_counter()
    try:
        witness = fn()
    except ClassificationMismatch as exc:
        witness = {"error": str(exc), **exc.witness}
    except Exception as exc:  # failure is data
        witness = {"error": f"{type(exc).__name__}: {exc}"}
    status = "pass" if witness is None else "fail"
    return CheckResult(check_id, params, status, witness, time.perf_counter() - t0)


def _first_diff(xs: Iterable, ys: Iterable) -> dict | None:
    xs, ys = list(xs), list(ys)
    for i, (x, y) in enumerate(zip(xs, ys)):
        if x != y:
            return {"index": i + 1, "got": x, "expected": y}
    if len(xs) != len(ys):
        return {"index": min(len(xs), len(ys)) + 1, "got_len": len(xs), "expected_len": len(ys)}
    return None


def enumerate_factors(len_max: int, cache: SequenceCache | None = None) -> list[str]:
    """Every distinct factor of D of length 1..len_max, shortest first then lexicographic.

    Windows are collected from a prefix that doubles until the set stops changing.
    """
    cache = default_cache() if cache is None else cache
    if len_max < 1:
        return []

    def collect(n: int) -> set[str]:
        d = cache.prefix(n)
        return {d[i:i + k] for k in range(1, len_max + 1) for i in range(len(d) - k + 1)}

    n = min(64 * len_max, cache.max_length)
    seen = collect(n)
    while n < cache.max_length:
        n = min(2 * n, cache.max_length)
        now = collect(n)
        if now == seen:
            break
        seen = now
    return sorted(seen, key=lambda w: (len(w), w))


# ---------------------------------------------------------------- envelope words


def _first_positions(kind: int, m: int) -> list[int]:
    if kind == 1:
        return [1, 2**m + 1, 3 * 2 ** (m - 1) + 1]
    return [2**m + 1, 3 * 2 ** (m - 1) + 1, 5 * 2**m + 1, 11 * 2 ** (m - 1) + 1, 7 * 2**m + 1]


def verify_theorem_envelope(
    kind: int, m_max: int, count: int, cache: SequenceCache | None = None
) -> list[CheckResult]:
    """Return-word sequences of E_{kind,m}, 1 <= m <= m_max, against the Theta prefix."""
    thm = "thm-2.1" if kind == 1 else "thm-2.2"
    cor = "cor-2.1" if kind == 1 else "cor-2.2"
    out = []
    for m in range(1, m_max + 1):
        params = {"kind": kind, "m": m, "P": count}
        e = envelope_word(kind, m).word
        scanned: dict = {}

        def scan() -> dict:
            if not scanned:
                scanned["pos"] = list(occurrences(e, count, cache).positions)
                scanned["r0"], scanned["returns"] = return_words(e, count, cache)
            return scanned

        def theorem() -> dict | None:
            s = scan()
            coded = theta_prefix(kind, count)
            expected = [envelope_return_word(kind, m, c) for c in coded]
            diff = _first_diff(s["returns"], expected)
            if diff:
                return {"envelope": e, **diff}
            firsts = _first_positions(kind, m)[:count]
            diff = _first_diff(s["pos"][:len(firsts)], firsts)
            if diff:
                return {"envelope": e, "positions": s["pos"][:len(firsts)], **diff}
            if s["r0"] != envelope_r0(kind, m):
                return {"envelope": e, "r0": s["r0"], "expected": envelope_r0(kind, m)}
            return None

        def lengths() -> dict | None:
            s = scan()
            h = 2 ** (m - 1)
            want = {0: 0 if kind == 1 else 2 * h}
            want.update({1: 2 * h, 2: h} if kind == 1 else {1: h, 2: 7 * h, 4: 3 * h})
            for p, n in want.items():
                if p > count:
                    continue
                got = len(s["r0"]) if p == 0 else len(s["returns"][p - 1])
                if got != n:
                    return {"envelope": e, "p": p, "length": got, "expected": n}
            return None

        out.append(_run(thm, params, theorem))
        out.append(_run(cor, params, lengths))
    return out


# ------------------------------------------------------------- general factors


def _factor_checks(
    factor: str, count: int, cache: SequenceCache | None, which: frozenset[str]
) -> list[CheckResult]:
    params = {"factor": factor, "P": count}
    out = []

    def weak() -> dict | None:
        e = envmod.env(factor, cache)
        hits = find_occurrences(factor, e.word)
        if len(hits) != 1:
            return {"factor": factor, "envelope": e.word, "kind": e.kind, "m": e.order, "positions": hits}
        return None

    def strong() -> dict | None:
        ext = env_extension(factor, cache)
        mine = occurrences(factor, count, cache).positions
        theirs = occurrences(ext.envelope.word, count, cache).positions
        diff = _first_diff(mine, [q + len(ext.mu1) for q in theirs])
        return {"factor": factor, "envelope": ext.envelope.word, "mu1": ext.mu1, **diff} if diff else None

    def inside() -> dict | None:
        inner_envelope(factor, cache)
        return None

    def classify() -> dict | None:
        dec = decompose(factor, count, cache)
        kind = env_extension(factor, cache).envelope.kind
        if dec.kind != kind:
            return {"factor": factor, "classification": dec.classification, "env_kind": kind}
        distinct = len(set(dec.returns))
        want = len(SLOTS[kind]) if count >= max(SLOTS[kind].values()) else None
        if want is not None and distinct != want:
            return {"factor": factor, "distinct_return_words": distinct, "expected": want}
        return None

    def conjugation() -> dict | None:
        got = decompose(factor, count, cache)
        want = predicted_decomposition(factor, count, cache)
        for name in ("r0", "returns", "coded", "classification", "alphabet_map", "partial"):
            a, b = getattr(got, name), getattr(want, name)
            if a != b:
                diff = _first_diff(a, b) if name == "returns" else {"got": a, "expected": b}
                return {"factor": factor, "field": name, **diff}
        diff = _first_diff(occurrences(factor, count, cache).positions, predicted_positions(factor, count, cache))
        return {"factor": factor, "field": "positions", **diff} if diff else None

    def lengths() -> dict | None:
        ext = env_extension(factor, cache)
        kind, m = ext.envelope.kind, ext.envelope.order
        r0, rets = return_words(factor, count, cache)
        want_r0 = len(ext.mu1) + (0 if kind == 1 else 2**m)
        if len(r0) != want_r0:
            return {"factor": factor, "p": 0, "length": len(r0), "expected": want_r0}
        table = predicted_lengths(kind, m)
        for letter, p in SLOTS[kind].items():
            if p <= count and len(rets[p - 1]) != table[letter]:
                return {"factor": factor, "p": p, "length": len(rets[p - 1]), "expected": table[letter]}
        return None

    checks = [
        ("thm-3.1", weak),
        ("thm-3.7", strong),
        ("prop-3.6", inside),
        ("thm-4", classify),
        ("prop-p3.7", conjugation),
        ("cor-c3.2", lengths),
    ]
    for check_id, fn in checks:
        if check_id in which:
            out.append(_run(check_id, params, fn))
    return out


_EXTENSION = frozenset({"thm-3.1", "thm-3.7", "prop-3.6"})
_GENERAL = frozenset({"thm-4", "prop-p3.7", "cor-c3.2"})


def _factor_job(args: tuple) -> list[CheckResult]:
    return _factor_checks(*args)


def _sweep_factors(
    factors: list[str], count: int, cache: SequenceCache | None, which: frozenset[str], jobs: int = 1
) -> list[CheckResult]:
    tasks = [(f, count, cache, which) for f in factors]
    if jobs <= 1 or len(tasks) < 2:
        chunks = map(_factor_job, tasks)
        return [r for chunk in chunks for r in chunk]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        chunks = pool.map(_factor_job, tasks, chunksize=max(1, len(tasks) // (4 * jobs)))
        return [r for chunk in chunks for r in chunk]


def verify_extension(len_max: int, count: int, cache: SequenceCache | None = None, jobs: int = 1) -> list[CheckResult]:
    """Unique occurrence in the envelope, and L(w,p) = L(Env(w),p) + |mu1|, for every factor up to len_max."""
    return _sweep_factors(enumerate_factors(len_max, cache), count, cache, _EXTENSION, jobs)


def verify_general(len_max: int, count: int, cache: SequenceCache | None = None, jobs: int = 1) -> list[CheckResult]:
    """Scanned decomposition against the conjugated envelope prediction, for every factor up to len_max."""
    return _sweep_factors(enumerate_factors(len_max, cache), count, cache, _GENERAL, jobs)


# ------------------------------------------------------------------- structure


def _count(pattern: str, text: str) -> int:
    return len(re.findall(f"(?={re.escape(pattern)})", text))


def _context_check(d: str, pattern: str, before: str, after: str) -> dict | None:
    """Every occurrence of ``pattern`` in ``d`` with room around it sits between ``before`` and ``after``.

    Holds iff the occurrences of ``pattern`` inside the trimmed window and of
    ``before + pattern + after`` in ``d`` are equinumerous.
    """
    lb, lp, la = len(before), len(pattern), len(after)
    inner = d[lb:len(d) - la]
    total = _count(pattern, inner)
    if total == 0:
        return {"pattern": pattern, "error": "no occurrence with room on both sides"}
    if _count(before + pattern + after, d) == total:
        return None
    for hit in re.finditer(f"(?={re.escape(pattern)})", inner):
        lo = hit.start()
        left, right = d[lo:lo + lb], d[lo + lb + lp:lo + lb + lp + la]
        if left != before or right != after:
            return {
                "pattern": pattern,
                "position": lo + lb + 1,
                "left": left,
                "right": right,
                "expected_left": before,
                "expected_right": after,
            }
    return {"pattern": pattern, "error": "occurrence counts disagree"}


def _e1(n: int) -> str:
    return envelope_word(1, n).word


def verify_structure(m_max: int = DEFAULT_M_MAX, cache: SequenceCache | None = None) -> list[CheckResult]:
    """Identities, lemmas and properties about blocks, envelope words and D itself."""
    cache = default_cache() if cache is None else cache
    out: list[CheckResult] = []
    m_ident = min(20, m_max + 8)
    m_occ = min(14, m_max + 2)
    m_env = min(18, m_max + 6)
    m_pal = min(12, m_max)
    m_small = min(8, m_max)
    m_ctx = min(10, m_max)
    m_sep = min(10, m_max)
    ctx_len = 2**16

    def fixed_point() -> dict | None:
        n = 2**15
        half, full = cache.prefix(n), cache.prefix(2 * n)
        return _first_diff(apply_morphism(SIGMA, half), full)

    def product_form() -> dict | None:
        n = 2**m_ident
        return _first_diff(cache.prefix(n), product_prefix(n))

    def block_identities() -> dict | None:
        for m in range(m_ident + 1):
            a, b = block_A(m), block_B(m)
            if len(a) != 2**m or len(b) != 2**m:
                return {"m": m, "identity": "length"}
            if m < m_ident and (block_A(m + 1) != a + b or block_B(m + 1) != a + a):
                return {"m": m, "identity": "recursion"}
            if strip_last(a) != strip_last(b):
                return {"m": m, "identity": "A_m minus last == B_m minus last", "A": a[-8:], "B": b[-8:]}
            if a != "a" + "".join(block_B(j) for j in range(m)):
                return {"m": m, "identity": "product form"}
            if a[-1] != delta(m) or b[-1] != delta(m + 1):
                return {"m": m, "identity": "last letters", "A_last": a[-1], "B_last": b[-1]}
        return None

    def power_free() -> dict | None:
        for name, w in (("D", cache.prefix(2**18)), ("Theta1", theta_prefix(1, 2**17, cache))):
            for x in "ab":
                i = w.find(x * 4)
                if i != -1:
                    return {"sequence": name, "position": i + 1, "power": x * 4}
        return None

    def lemma_2_1() -> dict | None:
        for m in range(m_occ + 1):
            a, b = block_A(m), block_B(m)
            for text, want in ((a + a, [1, 2**m + 1]), (a + b + a, [1, 2 ** (m + 1) + 1])):
                got = find_occurrences(a, text)
                if got != want:
                    return {"m": m, "text_length": len(text), "positions": got, "expected": want}
        return None

    def lemma_2_3() -> dict | None:
        for m in range(m_occ + 1):
            a, b = block_A(m), block_B(m)
            cases = [(a + b, [2**m + 1])]
            if m >= 1:
                cases += [
                    (b + a + b, [1, 2 ** (m - 1) + 1, 2 ** (m + 1) + 1]),
                    (b + a + a + a + b, [1, 2 ** (m - 1) + 1, 2 ** (m + 2) + 1]),
                ]
            for text, want in cases:
                got = find_occurrences(b, text)
                if got != want:
                    return {"m": m, "text_length": len(text), "positions": got, "expected": want}
        return None

    def lemma_2_2_2_4() -> dict | None:
        for m in range(1, m_pal + 1):
            for n in range(0, min(6, m_ident - m - 2) + 1):
                a_n, b_n = block_A(n), block_B(n)
                one = {"a": block_A(m), "b": block_B(m)}
                if coded_block(1, m, n) != (a_n.translate(str.maketrans(one)), b_n.translate(str.maketrans(one))):
                    return {"kind": 1, "m": m, "n": n}
                r1, r2, r4 = (envelope_return_word(2, m, c) for c in "abc")
                two = {"a": r1 + r2, "b": r1 + r4 + r1 + r4}
                if coded_block(2, m, n) != (a_n.translate(str.maketrans(two)), b_n.translate(str.maketrans(two))):
                    return {"kind": 2, "m": m, "n": n}
        return None

    def prop_3_1() -> dict | None:
        for m in range(1, m_env):
            e, d = _e1(m), delta(m)
            if envelope_word(1, m + 1).word != e + d + e:
                return {"m": m, "kind": 1}
            if envelope_word(2, m + 1).word != e + d + e + d + e:
                return {"m": m, "kind": 2}
        return None

    def cor_3_1() -> dict | None:
        for m in range(1, m_env + 1):
            for k in (1, 2):
                if not is_palindrome(envelope_word(k, m).word):
                    return {"kind": k, "m": m}
        return None

    def lemma_3_2() -> dict | None:
        for m in range(2, m_env + 1):
            e = _e1(m)
            if not (e.startswith("ab") and e.endswith("a")):
                return {"m": m, "start": e[:2], "end": e[-1]}
        return None

    def props_3_2_3_3() -> dict | None:
        for k in (1, 2):
            for m in range(2, m_sep + 1):
                for n in range(1, m):
                    sep = separator_word(k, m, n)
                    if interleave(_e1(n), sep) != envelope_word(k, m).word:
                        return {"kind": k, "m": m, "n": n, "separator": sep}
        return None

    def pal_prefixes(w: str, proper: bool) -> set[str]:
        top = len(w) - 1 if proper else len(w)
        return {w[:i] for i in range(1, top + 1) if is_palindrome(w[:i])}

    def prop_3_4() -> dict | None:
        for m in range(1, m_pal + 1):
            e = _e1(m)
            want = {_e1(n) for n in range(1, m + 1)}
            pre, suf = pal_prefixes(e, False), {p[::-1] for p in pal_prefixes(e[::-1], False)}
            if pre != want or suf != want:
                return {"m": m, "extra": sorted((pre | suf) - want), "missing": sorted(want - (pre & suf))}
        return None

    def prop_3_5() -> dict | None:
        for m in range(1, m_pal + 1):
            e = envelope_word(2, m).word
            allowed = {_e1(n) for n in range(1, m + 1)}
            found = pal_prefixes(e, True) | {p[::-1] for p in pal_prefixes(e[::-1], True)}
            if not found <= allowed:
                return {"m": m, "extra": sorted(found - allowed)}
        return None

    def lemma_l1_3() -> dict | None:
        for n in range(1, m_small + 1):
            for k in range(1, m_small + 1):
                for m in range(1, m_small + 1):
                    pal = is_palindrome(_e1(n) + delta(m) + _e1(k))
                    want = n == k or (abs(n - k) == 1 and m % 2 == min(n, k) % 2)
                    if pal != want:
                        return {"n": n, "k": k, "m": m, "palindrome": pal, "predicted": want}
        return None

    def lemma_l1_4() -> dict | None:
        for m in range(2, m_small + 1):
            for n in range(1, m):
                for k in range(1, m):
                    d = delta(m)
                    pal = is_palindrome(_e1(n) + d + _e1(m) + d + _e1(k))
                    if pal != (n == k):
                        return {"n": n, "k": k, "m": m, "palindrome": pal}
        return None

    def context(lemma: str) -> Callable[[], dict | None]:
        def run() -> dict | None:
            d = cache.prefix(ctx_len)
            lo = 2 if lemma == "3.7" else 3
            for m in range(lo, m_ctx + 1):
                if lemma == "3.4":
                    pat, before, after = delta(m) + _e1(m - 2) + delta(m - 1), _e1(m - 2), _e1(m - 1)
                elif lemma == "3.5":
                    pat = delta(m - 1) + _e1(m - 2) + delta(m - 1)
                    before = strip_last(block_A(m - 2) + block_A(m - 3))
                    after = strip_last(block_B(m - 3) + block_A(m - 2))
                elif lemma == "3.6":
                    pat, before, after = delta(m - 1) + _e1(m - 2) + delta(m), _e1(m - 1), _e1(m - 2)
                else:
                    pat, before, after = delta(m - 1) + _e1(m - 1) + delta(m - 1), _e1(m - 1), _e1(m - 1)
                w = _context_check(d, pat, before, after)
                if w:
                    return {"m": m, **w}
            return None

        return run

    checks: list[tuple[str, dict, Callable[[], dict | None]]] = [
        ("ident-fixed-point", {"n": 2**15}, fixed_point),
        ("ident-product", {"n": 2**m_ident}, product_form),
        ("ident-blocks", {"m_max": m_ident}, block_identities),
        ("ident-power-free", {"n": 2**18}, power_free),
        ("lem-2.1", {"m_max": m_occ}, lemma_2_1),
        ("lem-2.2-2.4", {"m_max": m_pal}, lemma_2_2_2_4),
        ("lem-2.3", {"m_max": m_occ}, lemma_2_3),
        ("prop-3.1", {"m_max": m_env}, prop_3_1),
        ("cor-3.1", {"m_max": m_env}, cor_3_1),
        ("lem-3.2", {"m_max": m_env}, lemma_3_2),
        ("prop-3.2-3.3", {"m_max": m_sep}, props_3_2_3_3),
        ("prop-3.4", {"m_max": m_pal}, prop_3_4),
        ("prop-3.5", {"m_max": m_pal}, prop_3_5),
        ("lem-l1.3", {"max": m_small}, lemma_l1_3),
        ("lem-l1.4", {"max": m_small}, lemma_l1_4),
        ("lem-3.4", {"m_max": m_ctx, "n": ctx_len}, context("3.4")),
        ("lem-3.5", {"m_max": m_ctx, "n": ctx_len}, context("3.5")),
        ("lem-3.6", {"m_max": m_ctx, "n": ctx_len}, context("3.6")),
        ("lem-3.7", {"m_max": m_ctx, "n": ctx_len}, context("3.7")),
    ]
    for check_id, params, fn in checks:
        out.append(_run(check_id, params, fn))
    return out


# ----------------------------------------------------------------------- sweep


def sweep(
    len_max: int = DEFAULT_LEN_MAX,
    count: int = DEFAULT_COUNT,
    parallelism: int = 1,
    m_max: int = DEFAULT_M_MAX,
    cache: SequenceCache | None = None,
) -> VerificationReport:
    """Run every suite and assemble one report.

    Report content does not depend on ``parallelism``: factor checks are merged
    back in (factor, check_id) order.
    """
    results: list[CheckResult] = []
    results += verify_theorem_envelope(1, m_max, count, cache)
    results += verify_theorem_envelope(2, m_max, count, cache)
    factors = enumerate_factors(len_max, cache)
    results += _sweep_factors(factors, count, cache, _EXTENSION | _GENERAL, parallelism)
    results += verify_structure(m_max, cache)
    config = {"len_max": len_max, "count": count, "m_max": m_max, "factors": len(factors)}
    return VerificationReport(results, config)
