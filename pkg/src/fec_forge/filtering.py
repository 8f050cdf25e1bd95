"""Three-stage filter cascade over synthetic pairs.

Stage 1 drops pairs whose generated claim is byte-identical to the correct
claim. Stage 2 drops pairs whose character edit-distance ratio

    lf = levenshtein(correct, generated) / len(correct)

exceeds t_l. Stage 3 asks a fact-verification classifier for a 3-way
verdict and drops pairs whose NOTENOUGHINFO probability exceeds t_c.
Threshold comparisons are strict, so boundary values pass. Stage 3 only
ever sees stage-2 survivors, which keeps classifier traffic down.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Sequence

from fec_forge._speed import levenshtein
from fec_forge.backends import VerdictDistribution
from fec_forge.corruption import SyntheticPair

__all__ = [
    "FilterConfig",
    "FilterOutcome",
    "VerdictDistribution",
    "apply_filters",
    "levenshtein",
    "lf_score",
    "classify_claim",
]

STAGE_KEPT = "kept"
STAGE_EXACT = "exact"
STAGE_LF = "lf"
STAGE_FVC = "fvc"


@dataclass(frozen=True)
class FilterConfig:
    """Thresholds and the classifier backend (None disables stage 3)."""

    t_l: float = 0.3
    t_c: float = 0.2
    classifier: object | None = None
    max_in_flight: int = 4

    def __post_init__(self):
        if self.t_l < 0:
            raise ValueError("t_l must be >= 0")
        if not 0 <= self.t_c <= 1:
            raise ValueError("t_c must be in [0, 1]")


@dataclass
class FilterOutcome:
    """Partition of the input pairs; counts always sum to the input size."""

    kept: list[SyntheticPair]
    rejected_exact: int
    rejected_lf: int
    rejected_fvc: int
    scores: list[dict]  # one entry per input pair, in input order

    @property
    def input_count(self) -> int:
        return len(self.kept) + self.rejected_exact + self.rejected_lf + self.rejected_fvc

    def audit_report(self, cfg: FilterConfig) -> dict:
        return {
            "input": self.input_count,
            "kept": len(self.kept),
            "rejected_exact": self.rejected_exact,
            "rejected_lf": self.rejected_lf,
            "rejected_fvc": self.rejected_fvc,
            "t_l": cfg.t_l,
            "t_c": cfg.t_c,
        }


def lf_score(correct: str, generated: str) -> float:
    """Character edit distance between the claims, relative to the correct one.

    The denominator counts every character of the correct claim, spaces
    included, to match the character-level distance in the numerator.
    """
    if not correct:
        raise ValueError("correct claim must be non-empty")
    return levenshtein(correct, generated) / len(correct)


def classify_claim(claim: str, evidence: Sequence[str], backend) -> VerdictDistribution:
    """Ask a classifier backend for the 3-way verdict distribution."""
    if not claim:
        raise ValueError("cannot classify an empty claim")
    return backend.classify(claim, list(evidence))


def apply_filters(pairs: Sequence[SyntheticPair], cfg: FilterConfig) -> FilterOutcome:
    """Run the cascade over all pairs and annotate survivors with scores.

    A classifier failure aborts the whole run: a partially classified
    output would bias the resulting dataset.
    """
    scores: list[dict] = []
    stage2_survivors: list[int] = []
    for idx, pair in enumerate(pairs):
        entry: dict = {"record_id": pair.record_id, "stage": STAGE_KEPT,
                       "lf_ratio": None, "p_nei": None}
        scores.append(entry)
        if pair.generated_claim == pair.correct_claim:
            entry["stage"] = STAGE_EXACT
            continue
        ratio = lf_score(pair.correct_claim, pair.generated_claim)
        entry["lf_ratio"] = ratio
        if ratio > cfg.t_l:
            entry["stage"] = STAGE_LF
            continue
        stage2_survivors.append(idx)

    if cfg.classifier is not None and stage2_survivors:
        workers = max(1, min(cfg.max_in_flight, len(stage2_survivors)))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            verdicts = list(
                pool.map(
                    lambda idx: classify_claim(
                        pairs[idx].generated_claim,
                        [ev.as_line() for ev in pairs[idx].evidence],
                        cfg.classifier,
                    ),
                    stage2_survivors,
                )
            )
        for idx, verdict in zip(stage2_survivors, verdicts):
            scores[idx]["p_nei"] = verdict.p_nei
            if verdict.p_nei > cfg.t_c:
                scores[idx]["stage"] = STAGE_FVC

    kept: list[SyntheticPair] = []
    counts = {STAGE_EXACT: 0, STAGE_LF: 0, STAGE_FVC: 0}
    for pair, entry in zip(pairs, scores):
        if entry["stage"] == STAGE_KEPT:
            kept.append(
                replace(
                    pair,
                    filter_scores={
                        "lf_ratio": entry["lf_ratio"],
                        "p_nei": entry["p_nei"],
                    },
                )
            )
        else:
            counts[entry["stage"]] += 1

    outcome = FilterOutcome(
        kept=kept,
        rejected_exact=counts[STAGE_EXACT],
        rejected_lf=counts[STAGE_LF],
        rejected_fvc=counts[STAGE_FVC],
        scores=scores,
    )
    assert outcome.input_count == len(pairs)
    return outcome
