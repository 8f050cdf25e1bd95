"""fec-forge: build and score factual error correction training data.

The pipeline masks correct claims, has a corruptor backend inject factual
errors, filters the resulting synthetic pairs, and emits corrector
training data; SARI and ROUGE-2 scoring closes the loop. Model inference
is delegated to HTTP backends (or deterministic in-process mocks).
"""

from fec_forge._speed import KERNEL_BACKEND, levenshtein
from fec_forge.backends import (
    BackendEndpoint,
    HttpClassifyBackend,
    HttpGenerateBackend,
    MockClassifyBackend,
    MockGenerateBackend,
    VerdictDistribution,
    mock_corrupt,
)
from fec_forge.corpus import (
    ClaimRecord,
    CorpusStats,
    Evidence,
    corpus_stats,
    load_corpus,
    write_corpus,
)
from fec_forge.corruption import (
    GenerationConfig,
    SyntheticPair,
    build_model_input,
    corrupt_batch,
    emit_corrector_training_data,
    emit_corruptor_training_data,
)
from fec_forge.errors import (
    BackendError,
    ConfigError,
    CorpusError,
    FecForgeError,
    ProtocolError,
)
from fec_forge.filtering import FilterConfig, FilterOutcome, apply_filters, lf_score
from fec_forge.masking import (
    Granularity,
    MaskConfig,
    MaskedClaim,
    Strategy,
    heuristic_mask,
    random_mask,
    render_masked,
    tokenize_words,
)
from fec_forge.metrics import (
    EditScoreReport,
    EvalInstance,
    SariScore,
    evaluate_run,
    rouge2,
    sari,
)
from fec_forge.prompts import Exemplar, build_fec_prompt, default_exemplars

__version__ = "0.1.0"
