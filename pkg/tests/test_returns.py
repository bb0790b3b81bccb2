import pytest
from hypothesis import given, settings, strategies as st

from pdreturns.envelope import env_extension, envelope_word
from pdreturns.returns import (
    ClassificationMismatch,
    coded_block,
    decompose,
    envelope_return_word,
    occurrences,
    predicted_decomposition,
    predicted_positions,
    return_words,
)
from pdreturns.sequences import (
    CapError,
    NotAFactorError,
    SequenceCache,
    apply_morphism,
    Morphism,
    block_A,
    block_B,
    pd_prefix,
    theta_prefix,
)
from pdreturns.words import find_occurrences

from conftest import naive_positions, oracle_pd


@pytest.mark.parametrize(
    "w, count, expected",
    [("aba", 3, [1, 5, 7]), ("aa", 5, [3, 4, 11, 12, 15]), ("a", 3, [1, 3, 4])],
)
def test_occurrences(w, count, expected):
    assert list(occurrences(w, count).positions) == expected


def test_occurrences_errors():
    with pytest.raises(NotAFactorError):
        occurrences("abb", 1)
    with pytest.raises(ValueError):
        occurrences("a", 0)
    with pytest.raises(CapError, match="prefix of length 64"):
        occurrences("abaaaba", 40, SequenceCache(max_length=64))


@pytest.mark.parametrize(
    "w, count, r0, rets",
    [
        ("aba", 2, "", ["abaa", "ab"]),
        ("aa", 4, "ab", ["a", "aababab", "a", "aab"]),
        ("b", 2, "a", ["baaa", "ba"]),
    ],
)
def test_return_words_and_prediction(w, count, r0, rets):
    assert return_words(w, count) == (r0, rets)
    pred = predicted_decomposition(w, count)
    assert pred.r0 == r0 and list(pred.returns) == rets


@pytest.mark.parametrize(
    "w, count, coded, classification",
    [("aba", 5, "abbaa", "Theta1"), ("aa", 6, "abacac", "Theta2"), ("a", 4, "abba", "Theta1")],
)
def test_decompose(w, count, coded, classification):
    dec = decompose(w, count)
    assert dec.coded == coded
    assert dec.classification == classification
    assert dec.coded == theta_prefix(dec.kind, count)
    assert [dec.alphabet_map[c] for c in dec.coded] == list(dec.returns)


def test_decompose_partial_alphabet():
    dec = decompose("aa", 2)
    assert dec.partial and set(dec.alphabet_map) == {"a", "b"}
    assert not decompose("aa", 4).partial


def test_decompose_detects_corrupted_sequence():
    d = list(pd_prefix(4096))
    d[9] = "a" if d[9] == "b" else "b"
    cache = SequenceCache.from_prefix("".join(d))
    with pytest.raises(ClassificationMismatch) as info:
        decompose("aba", 16, cache)
    assert info.value.witness["factor"] == "aba"


@pytest.mark.parametrize("w, count, expected", [("aba", 3, [1, 5, 7]), ("aa", 5, [3, 4, 11, 12, 15]), ("b", 2, [2, 6])])
def test_predicted_positions(w, count, expected):
    assert predicted_positions(w, count) == expected


def test_coded_block_examples():
    assert coded_block(1, 1, 1)[0] == "abaa"
    assert coded_block(2, 1, 0)[0] == "aaababab"
    assert coded_block(1, 2, 0)[0] == "abaa"
    with pytest.raises(ValueError):
        coded_block(2, 0, 1)


def test_coded_block_is_block_over_return_alphabet():
    for m in range(1, 7):
        one = Morphism({"a": block_A(m), "b": block_B(m)})
        r1, r2, r4 = (envelope_return_word(2, m, c) for c in "abc")
        two = Morphism({"a": r1 + r2, "b": r1 + r4 + r1 + r4})
        for n in range(6):
            assert coded_block(1, m, n) == (apply_morphism(one, block_A(n)), apply_morphism(one, block_B(n)))
            assert coded_block(2, m, n) == (apply_morphism(two, block_A(n)), apply_morphism(two, block_B(n)))


def test_envelope_return_word_identities():
    for m in range(15):
        a, b = block_A(m), block_B(m)
        assert find_occurrences(a, a + a) == [1, 2**m + 1]
        assert find_occurrences(a, a + b + a) == [1, 2 ** (m + 1) + 1]
        assert find_occurrences(b, a + b) == [2**m + 1]
        if m >= 1:
            assert find_occurrences(b, b + a + b) == [1, 2 ** (m - 1) + 1, 2 ** (m + 1) + 1]
            assert find_occurrences(b, b + a + a + a + b) == [1, 2 ** (m - 1) + 1, 2 ** (m + 2) + 1]


def test_envelope_return_words_theorems():
    d = oracle_pd(1 << 14)
    for kind, top in ((1, 7), (2, 6)):
        for m in range(1, top + 1):
            e = envelope_word(kind, m).word
            pos = naive_positions(e, d)[:33]
            rets = [d[pos[p] - 1:pos[p + 1] - 1] for p in range(32)]
            assert rets == [envelope_return_word(kind, m, c) for c in theta_prefix(kind, 32)]


@pytest.fixture(scope="module")
def short_factors():
    d = oracle_pd(1 << 12)
    return sorted({d[i:i + k] for k in range(1, 11) for i in range(len(d) - k + 1)})


def test_oracle_equivalence_short_factors(short_factors, oracle_d):
    for w in short_factors:
        got = decompose(w, 32)
        assert got == predicted_decomposition(w, 32)
        brute = naive_positions(w, oracle_d[:8192])[:32]
        assert list(occurrences(w, 32).positions) == brute == predicted_positions(w, 32)
        # reconstruction of D from r0 r1 ... rP followed by w
        end = brute[-1]
        assert (got.r0 + "".join(got.returns[:-1]) + w) == oracle_d[:end - 1 + len(w)]
        assert len(set(got.returns)) == (2 if got.kind == 1 else 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 20000), st.integers(1, 32))
def test_strong_extension_random_factors(start, length):
    w = oracle_pd(start + length)[start:]
    ext = env_extension(w)
    mine = occurrences(w, 64).positions
    theirs = occurrences(ext.envelope.word, 64).positions
    assert list(mine) == [q + len(ext.mu1) for q in theirs]
    assert decompose(w, 64) == predicted_decomposition(w, 64)
