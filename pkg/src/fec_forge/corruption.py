"""Serialize claims for the corruptor, drive generation, emit training data.

Model inputs follow one template: the (masked) claim, then the top-k
evidence items, separated by a configurable separator token:

    <claim> </s> <page1>; <sentence1> </s> <page2>; <sentence2>

The claim is always kept whole; when the input exceeds the source-length
budget, evidence is truncated from the right. Training files are JSONL
with one {"input": ..., "target": ...} object per line.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from fec_forge.corpus import ClaimRecord, Evidence
from fec_forge.errors import FecForgeError
from fec_forge.masking import (
    MASK_TOKEN,
    MaskConfig,
    Strategy,
    derive_seed,
    mask_claim,
    render_masked,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GenerationConfig:
    """Decoding and serialization settings for corruptor/corrector backends.

    Length budgets are counted in whitespace tokens by default ("words");
    switch `length_unit` to "chars" if a backend needs character budgets.
    Either way the unit is an approximation of the backend tokenizer's own
    subword count.
    """

    beam_size: int = 5
    max_source_length: int = 512
    max_target_length: int = 256
    top_k_evidence: int = 2
    separator: str = "</s>"
    length_unit: str = "words"

    def __post_init__(self):
        if self.beam_size < 1:
            raise ValueError("beam_size must be >= 1")
        if self.top_k_evidence < 1:
            raise ValueError("top_k_evidence must be >= 1")
        if self.length_unit not in ("words", "chars"):
            raise ValueError(f"unknown length unit {self.length_unit!r}")


@dataclass(frozen=True)
class SyntheticPair:
    """A correct claim and the false claim generated from it."""

    record_id: str
    correct_claim: str
    masked_claim: str
    generated_claim: str
    evidence: tuple[Evidence, ...]
    filter_scores: dict | None = None

    def __post_init__(self):
        object.__setattr__(self, "evidence", tuple(self.evidence))
        if not self.generated_claim:
            raise ValueError(f"pair {self.record_id!r}: generated claim is empty")


def pair_to_json(pair: SyntheticPair) -> dict:
    return {
        "record_id": pair.record_id,
        "correct_claim": pair.correct_claim,
        "masked_claim": pair.masked_claim,
        "generated_claim": pair.generated_claim,
        "evidence": [
            {"page": ev.page_title, "sentence": ev.sentence} for ev in pair.evidence
        ],
        "filter_scores": pair.filter_scores,
    }


def pair_from_json(obj: dict) -> SyntheticPair:
    return SyntheticPair(
        record_id=str(obj["record_id"]),
        correct_claim=obj["correct_claim"],
        masked_claim=obj["masked_claim"],
        generated_claim=obj["generated_claim"],
        evidence=tuple(
            Evidence(page_title=ev["page"], sentence=ev["sentence"])
            for ev in obj["evidence"]
        ),
        filter_scores=obj.get("filter_scores"),
    )


def iter_pairs(path: str | Path) -> Iterator[SyntheticPair]:
    with Path(path).open("r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                yield pair_from_json(json.loads(line))


def load_pairs(path: str | Path) -> list[SyntheticPair]:
    return list(iter_pairs(path))


def write_pairs(pairs: Iterable[SyntheticPair], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for pair in pairs:
            fh.write(json.dumps(pair_to_json(pair), ensure_ascii=False))
            fh.write("\n")


def _units(text: str, unit: str) -> int:
    return len(text.split()) if unit == "words" else len(text)


def build_model_input(
    masked_claim: str, evidence: Sequence[Evidence], cfg: GenerationConfig
) -> str:
    """Join the claim with its top-k evidence under the source-length budget.

    The claim is emitted verbatim and is always a prefix of the result;
    evidence is truncated from the right first. Raises ValueError when the
    claim alone exceeds the budget.
    """
    if not masked_claim:
        raise ValueError("masked claim is empty")
    budget = cfg.max_source_length - _units(masked_claim, cfg.length_unit)
    if budget < 0:
        raise ValueError(
            f"masked claim alone exceeds max_source_length "
            f"({cfg.max_source_length} {cfg.length_unit})"
        )
    suffix = "".join(
        f" {cfg.separator} {ev.as_line()}" for ev in evidence[: cfg.top_k_evidence]
    )
    if cfg.length_unit == "words":
        tokens = suffix.split()[:budget]
        suffix = (" " + " ".join(tokens)) if tokens else ""
    else:
        suffix = suffix[:budget]
    return masked_claim + suffix


@dataclass
class EmitSummary:
    """Outcome counts for a training-data emission or a corruption run."""

    written: int = 0
    failed: int = 0
    nothing_masked: int = 0
    failures: list = None

    def __post_init__(self):
        if self.failures is None:
            self.failures = []

    def as_dict(self) -> dict:
        return {
            "written": self.written,
            "failed": self.failed,
            "nothing_masked": self.nothing_masked,
        }


def _mask_and_serialize(
    record: ClaimRecord,
    mask_cfg: MaskConfig,
    gen_cfg: GenerationConfig,
    subword_splitter=None,
) -> str:
    seed = derive_seed(mask_cfg.seed, record.id)
    mc = mask_claim(record.claim, record.evidence, mask_cfg, seed=seed)
    masked = render_masked(
        mc, mask_cfg.granularity, mask_cfg.merge_adjacent, subword_splitter
    )
    return build_model_input(masked, record.evidence, gen_cfg)


def emit_corruptor_training_data(
    records: Iterable[ClaimRecord],
    mask_cfg: MaskConfig,
    gen_cfg: GenerationConfig,
    path: str | Path,
    subword_splitter=None,
    enforce_heuristic: bool = True,
) -> EmitSummary:
    """Write (masked false claim + evidence, original false claim) pairs.

    Records must be REFUTED: the corruptor learns to reconstruct false
    claims, which is what teaches it to inject errors. Heuristic masking is
    the training default; pass enforce_heuristic=False to experiment with
    other strategies.
    """
    if enforce_heuristic and mask_cfg.strategy is not Strategy.HEURISTIC:
        raise ValueError(
            "corruptor training data uses heuristic masking; "
            "pass enforce_heuristic=False to override"
        )
    summary = EmitSummary()
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for record in records:
            if record.label != "REFUTED":
                raise ValueError(
                    f"record {record.id!r}: corruptor training data expects "
                    f"REFUTED records, got {record.label}"
                )
            try:
                model_input = _mask_and_serialize(
                    record, mask_cfg, gen_cfg, subword_splitter
                )
            except (FecForgeError, ValueError) as exc:
                summary.failed += 1
                summary.failures.append((record.id, str(exc)))
                logger.warning("record %s skipped: %s", record.id, exc)
                continue
            if MASK_TOKEN not in model_input.split():
                summary.nothing_masked += 1
            fh.write(
                json.dumps(
                    {"input": model_input, "target": record.claim},
                    ensure_ascii=False,
                )
            )
            fh.write("\n")
            summary.written += 1
    return summary


def corrupt_batch(
    records: Sequence[ClaimRecord],
    mask_cfg: MaskConfig,
    gen_cfg: GenerationConfig,
    backend,
    parallelism: int = 1,
    subword_splitter=None,
) -> tuple[list[SyntheticPair], EmitSummary]:
    """Mask SUPPORTED claims, generate false claims, return pairs in input order.

    `backend` is anything with generate(inputs, num_beams, max_new_tokens);
    requests are dispatched concurrently in batches, bounded by the
    endpoint's max_in_flight, and reassembled into input order. Records
    that fail masking or come back empty are skipped and counted.
    """
    for record in records:
        if record.label != "SUPPORTED":
            raise ValueError(
                f"record {record.id!r}: corruption expects SUPPORTED records, "
                f"got {record.label}"
            )
    summary = EmitSummary()

    inputs: list[str] = []
    masked: list[str] = []
    live: list[ClaimRecord] = []
    for record in records:
        try:
            seed = derive_seed(mask_cfg.seed, record.id)
            mc = mask_claim(record.claim, record.evidence, mask_cfg, seed=seed)
            masked_str = render_masked(
                mc, mask_cfg.granularity, mask_cfg.merge_adjacent, subword_splitter
            )
            inputs.append(build_model_input(masked_str, record.evidence, gen_cfg))
            masked.append(masked_str)
            live.append(record)
        except (FecForgeError, ValueError) as exc:
            summary.failed += 1
            summary.failures.append((record.id, str(exc)))
            logger.warning("record %s skipped: %s", record.id, exc)

    endpoint = getattr(backend, "endpoint", None)
    batch_size = endpoint.batch_size if endpoint is not None else 32
    workers = max(1, parallelism)
    if endpoint is not None:
        workers = min(workers, endpoint.max_in_flight)

    batches = [
        (start, inputs[start : start + batch_size])
        for start in range(0, len(inputs), batch_size)
    ]
    outputs: list[str | None] = [None] * len(inputs)
    if batches:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                (start, pool.submit(
                    backend.generate, batch, gen_cfg.beam_size, gen_cfg.max_target_length
                ))
                for start, batch in batches
            ]
            for start, future in futures:
                result = future.result()
                outputs[start : start + len(result)] = result

    pairs: list[SyntheticPair] = []
    for record, masked_str, generated in zip(live, masked, outputs):
        if not generated:
            summary.failed += 1
            summary.failures.append((record.id, "backend returned empty output"))
            continue
        pairs.append(
            SyntheticPair(
                record_id=record.id,
                correct_claim=record.claim,
                masked_claim=masked_str,
                generated_claim=generated,
                evidence=record.evidence,
            )
        )
        summary.written += 1
    return pairs, summary


def emit_corrector_training_data(
    pairs: Iterable[SyntheticPair],
    gen_cfg: GenerationConfig,
    path: str | Path,
) -> EmitSummary:
    """Write (generated false claim + evidence, correct claim) pairs.

    Input pairs should already have passed filtering. Loss and optimizer
    settings are the training backend's concern; only the data is emitted.
    """
    summary = EmitSummary()
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for pair in pairs:
            try:
                model_input = build_model_input(
                    pair.generated_claim, pair.evidence, gen_cfg
                )
            except (FecForgeError, ValueError) as exc:
                summary.failed += 1
                summary.failures.append((pair.record_id, str(exc)))
                logger.warning("pair %s skipped: %s", pair.record_id, exc)
                continue
            fh.write(
                json.dumps(
                    {"input": model_input, "target": pair.correct_claim},
                    ensure_ascii=False,
                )
            )
            fh.write("\n")
            summary.written += 1
    return summary
