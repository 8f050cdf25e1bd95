"""Masking strategies for claims: random spans or evidence-absent words.

Two strategies are supported. Random masking hides a fixed fraction of the
claim's tokens (seeded, reproducible). Heuristic masking hides every claim
token that does not occur in the evidence, under a light normalization
(case-insensitive, surrounding punctuation ignored). Masked tokens render
as "#" placeholders, either one per word or one per subword piece, with an
option to merge adjacent placeholders into a single "#".
"""

from __future__ import annotations

import hashlib
import math
import random
import unicodedata
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Iterable, Sequence

from fec_forge.corpus import Evidence

MASK_TOKEN = "#"


class Strategy(str, Enum):
    RANDOM = "random"
    HEURISTIC = "heuristic"


class Granularity(str, Enum):
    WORD = "word"
    SUBWORD = "subword"


@dataclass(frozen=True)
class MaskConfig:
    """How a claim gets masked; `ratio` and `seed` apply to RANDOM only."""

    strategy: Strategy
    ratio: float = 0.30
    granularity: Granularity = Granularity.WORD
    merge_adjacent: bool = False
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.ratio <= 1:
            raise ValueError(f"mask ratio must be in (0, 1], got {self.ratio}")


@dataclass(frozen=True)
class MaskedClaim:
    """A tokenized claim plus the positions chosen for masking."""

    original_tokens: tuple[str, ...]
    masked_indices: tuple[int, ...]
    config: MaskConfig

    def __post_init__(self):
        object.__setattr__(self, "original_tokens", tuple(self.original_tokens))
        indices = tuple(sorted(set(self.masked_indices)))
        object.__setattr__(self, "masked_indices", indices)
        n = len(self.original_tokens)
        if indices and not (0 <= indices[0] and indices[-1] < n):
            raise ValueError(f"masked index out of range for {n} tokens: {indices}")


def tokenize_words(claim: str) -> list[str]:
    """Split on Unicode whitespace; punctuation stays attached to its word."""
    tokens = claim.split()
    if not tokens:
        raise ValueError("cannot tokenize an empty claim")
    return tokens


def normalize_token(token: str) -> str:
    """Lowercase and strip leading/trailing punctuation (Unicode category P)."""
    start, end = 0, len(token)
    while start < end and unicodedata.category(token[start]).startswith("P"):
        start += 1
    while end > start and unicodedata.category(token[end - 1]).startswith("P"):
        end -= 1
    return token[start:end].lower()


def evidence_vocabulary(evidence: Iterable[Evidence]) -> set[str]:
    """Normalized tokens of all evidence sentences and page titles."""
    vocab: set[str] = set()
    for ev in evidence:
        for text in (ev.page_title, ev.sentence):
            vocab.update(normalize_token(tok) for tok in text.split())
    return vocab


def mask_count(ratio: float, n_tokens: int) -> int:
    """max(1, round-half-up(ratio * n)); at least one slot is always masked."""
    return min(n_tokens, max(1, math.floor(ratio * n_tokens + 0.5)))


def random_mask(tokens: Sequence[str], config: MaskConfig) -> MaskedClaim:
    """Mask a seeded random sample of positions, without replacement."""
    if config.strategy is not Strategy.RANDOM:
        raise ValueError("random_mask requires a RANDOM strategy config")
    if not tokens:
        raise ValueError("cannot mask an empty token list")
    count = mask_count(config.ratio, len(tokens))
    rng = random.Random(config.seed)
    indices = tuple(sorted(rng.sample(range(len(tokens)), count)))
    return MaskedClaim(tuple(tokens), indices, config)


def heuristic_mask(
    tokens: Sequence[str],
    evidence: Iterable[Evidence],
    config: MaskConfig | None = None,
) -> MaskedClaim:
    """Mask every token whose normalized form is absent from the evidence.

    May mask nothing (claim fully covered by evidence) or everything
    (empty evidence). A literal "#" token always stays masked, so re-masking
    an already-masked rendering never unmasks anything.
    """
    if not tokens:
        raise ValueError("cannot mask an empty token list")
    if config is None:
        config = MaskConfig(strategy=Strategy.HEURISTIC)
    vocab = evidence_vocabulary(evidence)
    indices = tuple(
        i
        for i, tok in enumerate(tokens)
        if tok == MASK_TOKEN or normalize_token(tok) not in vocab
    )
    return MaskedClaim(tuple(tokens), indices, config)


def default_subword_splitter(word: str) -> list[str]:
    """Suffix-based stand-in splitter for tests and offline runs.

    Real subword inventories live in the backend's tokenizer; this one just
    peels one common English suffix so SUBWORD rendering has >1 piece to
    work with.
    """
    suffixes = ("ly", "ing", "ed", "est", "er", "ness", "ful", "less")
    for suffix in suffixes:
        if word.lower().endswith(suffix) and len(word) > len(suffix) + 2:
            return [word[: -len(suffix)], word[-len(suffix):]]
    return [word]


def render_masked(
    mc: MaskedClaim,
    granularity: Granularity,
    merge_adjacent: bool,
    subword_splitter: Callable[[str], list[str]] | None = None,
) -> str:
    """Emit the claim with masked units replaced by "#" tokens.

    WORD granularity yields one "#" per masked word; SUBWORD yields one per
    subword piece of each masked word (a splitter must be supplied).
    merge_adjacent collapses each maximal run of "#" into a single "#".
    """
    if granularity is Granularity.SUBWORD and subword_splitter is None:
        raise ValueError("SUBWORD granularity requires a subword splitter")
    masked = set(mc.masked_indices)
    pieces: list[str] = []
    for i, tok in enumerate(mc.original_tokens):
        if i not in masked:
            pieces.append(tok)
        elif granularity is Granularity.WORD:
            pieces.append(MASK_TOKEN)
        else:
            pieces.extend(MASK_TOKEN for _ in range(len(subword_splitter(tok)) or 1))
    if merge_adjacent:
        collapsed: list[str] = []
        for piece in pieces:
            if piece == MASK_TOKEN and collapsed and collapsed[-1] == MASK_TOKEN:
                continue
            collapsed.append(piece)
        pieces = collapsed
    return " ".join(pieces)


def mask_claim(
    claim: str,
    evidence: Iterable[Evidence],
    config: MaskConfig,
    seed: int | None = None,
) -> MaskedClaim:
    """Tokenize and mask one claim with the configured strategy.

    `seed` overrides config.seed for RANDOM masking (used for per-record
    seed derivation in batch runs).
    """
    tokens = tokenize_words(claim)
    if config.strategy is Strategy.RANDOM:
        if seed is not None:
            config = replace(config, seed=seed)
        return random_mask(tokens, config)
    return heuristic_mask(tokens, evidence, config)


def derive_seed(global_seed: int, record_id: str) -> int:
    """Per-record seed: global seed XOR a stable 64-bit hash of the id.

    Keeps parallel and chunked runs order-independent.
    """
    digest = hashlib.blake2b(record_id.encode("utf-8"), digest_size=8).digest()
    return (global_seed ^ int.from_bytes(digest, "little")) & 0xFFFFFFFFFFFFFFFF
