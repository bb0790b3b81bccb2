"""Return words and envelope words of the period-doubling sequence."""

from .envelope import (
    EnvelopeExtension,
    EnvelopeWord,
    env,
    env_extension,
    envelope_rank,
    envelope_word,
    inner_envelope,
    separator_word,
)
from .returns import (
    ClassificationMismatch,
    OccurrenceStream,
    ReturnDecomposition,
    coded_block,
    decompose,
    occurrences,
    predicted_decomposition,
    predicted_positions,
    return_words,
)
from .sequences import (
    SIGMA,
    TAU1,
    TAU2,
    CapError,
    Morphism,
    NotAFactorError,
    SequenceCache,
    apply_morphism,
    block_A,
    block_B,
    delta,
    pd_prefix,
    theta_prefix,
)
from .verify import CheckResult, VerificationReport, sweep
from .words import (
    Letter,
    WordError,
    complement,
    concat,
    find_occurrences,
    is_palindrome,
    mirror,
    strip_last,
    strip_prefix,
)

__version__ = "0.1.0"
