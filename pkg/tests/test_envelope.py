import pytest
from hypothesis import given, settings, strategies as st

from pdreturns.envelope import (
    EnvelopeError,
    EnvelopeWord,
    env,
    env_extension,
    envelope_rank,
    envelope_word,
    envelopes,
    from_rank,
    inner_envelope,
    interleave,
    separator_word,
)
from pdreturns.sequences import NotAFactorError, delta
from pdreturns.words import WordError, is_palindrome

from conftest import naive_positions, oracle_pd


def oracle_envelope(kind, m):
    if kind == 1:
        return oracle_pd(2**m - 1)
    b = lambda k: "b" if k == 0 else oracle_pd(2 ** (k - 1)) * 2
    return (b(m) + b(m - 1))[:-1]


def oracle_env(w):
    for m in range(1, 20):
        for kind in (1, 2):
            if w in oracle_envelope(kind, m):
                return kind, m


@pytest.mark.parametrize("kind, m, expected", [(1, 2, "aba"), (2, 1, "aa"), (2, 2, "ababa")])
def test_envelope_word(kind, m, expected):
    assert envelope_word(kind, m).word == expected


def test_envelope_word_errors():
    with pytest.raises(ValueError):
        envelope_word(1, 0)
    with pytest.raises(ValueError):
        envelope_word(3, 2)


def test_envelope_word_invariants():
    for m in range(1, 19):
        e1, e2 = envelope_word(1, m).word, envelope_word(2, m).word
        assert len(e1) == 2**m - 1
        assert len(e2) == 3 * 2 ** (m - 1) - 1
        assert is_palindrome(e1) and is_palindrome(e2)
        if m <= 12:
            assert e1 == oracle_envelope(1, m)
            assert e2 == oracle_envelope(2, m)


@pytest.mark.parametrize("kind, m, rank", [(1, 1, 0), (2, 1, 1), (1, 2, 2), (2, 2, 3), (1, 7, 12)])
def test_envelope_rank(kind, m, rank):
    e = envelope_word(kind, m)
    assert envelope_rank(e) == rank == e.rank
    assert from_rank(rank) == e


def test_rank_order_monotone_in_length():
    es = list(envelopes(10))
    assert [e.rank for e in es] == list(range(20))
    assert all(len(x) < len(y) for x, y in zip(es, es[1:]))


@pytest.mark.parametrize("w, kind, m", [("a", 1, 1), ("aa", 2, 1), ("b", 1, 2)])
def test_env(w, kind, m):
    e = env(w)
    assert (e.kind, e.order) == (kind, m)


def test_env_errors():
    with pytest.raises(WordError):
        env("")
    with pytest.raises(NotAFactorError):
        env("bb")
    with pytest.raises(WordError):
        env("abc")


@pytest.mark.parametrize(
    "w, m, mu1, mu2", [("b", 2, "a", "a"), ("aba", 2, "", ""), ("ab", 2, "", "a")]
)
def test_env_extension(w, m, mu1, mu2):
    ext = env_extension(w)
    assert (ext.envelope.kind, ext.envelope.order, ext.mu1, ext.mu2) == (1, m, mu1, mu2)
    assert ext.mu1 + w + ext.mu2 == ext.envelope.word


@pytest.mark.parametrize(
    "kind, m, n, expected", [(1, 3, 1, "bab"), (2, 3, 1, "babab"), (1, 3, 2, "a")]
)
def test_separator_word(kind, m, n, expected):
    assert separator_word(kind, m, n) == expected


def test_separator_word_errors():
    with pytest.raises(ValueError):
        separator_word(1, 3, 3)


def test_separator_reconstruction():
    for kind in (1, 2):
        for m in range(2, 11):
            for n in range(1, m):
                assert interleave(envelope_word(1, n).word, separator_word(kind, m, n)) == envelope_word(kind, m).word


def test_inner_envelope():
    assert inner_envelope("abaaaba") == envelope_word(1, 1)
    assert inner_envelope("b") is None
    assert inner_envelope("ababa") is None
    # Env = E_{2,3}: E_{1,2} must sit inside
    w = envelope_word(2, 3).word
    assert inner_envelope(w) == envelope_word(1, 2)


def test_property_3_1():
    for m in range(1, 18):
        e, d = envelope_word(1, m).word, delta(m)
        assert envelope_word(1, m + 1).word == e + d + e
        assert envelope_word(2, m + 1).word == e + d + e + d + e


def test_separator_words():
    for m in range(2, 19):
        e = envelope_word(1, m).word
        assert e[:2] == "ab" and e[-1] == "a"


def _pal_prefixes(w, proper=False):
    top = len(w) - 1 if proper else len(w)
    return {w[:i] for i in range(1, top + 1) if is_palindrome(w[:i])}


def test_properties_3_4_and_3_5():
    for m in range(1, 13):
        e1 = envelope_word(1, m).word
        want = {envelope_word(1, n).word for n in range(1, m + 1)}
        assert _pal_prefixes(e1) == want
        assert {p[::-1] for p in _pal_prefixes(e1[::-1])} == want
        e2 = envelope_word(2, m).word
        assert _pal_prefixes(e2, True) <= want
        assert {p[::-1] for p in _pal_prefixes(e2[::-1], True)} <= want


def test_lemma_l1_3():
    e = lambda n: envelope_word(1, n).word
    for n in range(1, 9):
        for k in range(1, 9):
            for m in range(1, 9):
                pal = is_palindrome(e(n) + delta(m) + e(k))
                assert pal == (n == k or (abs(n - k) == 1 and m % 2 == min(n, k) % 2))


def test_lemma_l1_4():
    e = lambda n: envelope_word(1, n).word
    for m in range(2, 9):
        for n in range(1, m):
            for k in range(1, m):
                d = delta(m)
                assert is_palindrome(e(n) + d + e(m) + d + e(k)) == (n == k)


@pytest.fixture(scope="module")
def factors_upto_12():
    d = oracle_pd(1 << 12)
    return sorted({d[i:i + k] for k in range(1, 13) for i in range(len(d) - k + 1)})


def test_env_matches_oracle_and_unique_occurrence(factors_upto_12):
    for w in factors_upto_12:
        e = env(w)
        assert (e.kind, e.order) == oracle_env(w)
        assert len(naive_positions(w, e.word)) == 1
        ext = env_extension(w)
        assert ext.mu1 + w + ext.mu2 == e.word


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 60000), st.integers(1, 32))
def test_weak_extension_random_factors(start, length):
    w = oracle_pd(start + length)[start:]
    e = env(w)
    assert len(naive_positions(w, e.word)) == 1
    if e.order > 2:
        assert inner_envelope(w).word in w


def test_envelope_error_is_runtime():
    assert issubclass(EnvelopeError, RuntimeError)
    assert isinstance(envelope_word(1, 1), EnvelopeWord)
