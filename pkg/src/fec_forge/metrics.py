"""Edit-aware scoring of revised claims: SARI (Keep/Delete/Add/Final) and ROUGE-2.

SARI compares, per n-gram order 1..4, which n-grams of the source were
kept, deleted, or newly added by the prediction, judged against the
references. Keep and Add are F-measures, Delete is a precision, each
averaged over the four orders; the Final score is the plain mean of the
three components. Degenerate ratios (0/0) count as 1, so a prediction
identical to a matching reference scores 100. ROUGE-2 is the clipped
bigram-overlap F-measure. Corpus scores are macro-averages over instances,
reported on a 0-100 scale.

All texts are lowercased and split on whitespace before scoring, the same
tokenization the masker uses. Reproduce published numbers by feeding texts
preprocessed the same way.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from fec_forge.corpus import ClaimRecord


def metric_tokens(text: str) -> list[str]:
    """Lowercase + whitespace tokenization shared by SARI and ROUGE-2."""
    return text.lower().split()


def ngram_list(tokens: Sequence[str], n: int) -> list[tuple[str, ...]]:
    return [tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1)]


@dataclass(frozen=True)
class SariScore:
    """Component and final SARI scores, each in [0, 100]."""

    keep: float
    delete: float
    add: float

    @property
    def final(self) -> float:
        return (self.keep + self.delete + self.add) / 3

    def as_dict(self) -> dict:
        return {
            "keep": self.keep,
            "delete": self.delete,
            "add": self.add,
            "final": self.final,
        }


@dataclass(frozen=True)
class EvalInstance:
    """One scoring unit: input text, revised text, and gold references."""

    source: str
    prediction: str
    references: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "references", tuple(self.references))
        if not self.references:
            raise ValueError("references must be non-empty")


def _sari_ngram(s_grams, c_grams, r_gram_lists) -> tuple[float, float, float]:
    """Keep/Delete/Add statistics for one n-gram order.

    Multiset arithmetic over source (s), prediction (c), and references
    (r); source and prediction counts are replicated by the number of
    references so single-reference and multi-reference inputs share one
    code path. Empty denominators count as a perfect ratio.
    """
    numref = len(r_gram_lists)
    r_counter = Counter(g for grams in r_gram_lists for g in grams)
    s_counter = Counter(s_grams)
    c_counter = Counter(c_grams)
    s_rep = Counter({g: c * numref for g, c in s_counter.items()})
    c_rep = Counter({g: c * numref for g, c in c_counter.items()})

    # Keep: n-grams present in both source and prediction, credited when
    # the references retain them too. Precision per distinct n-gram,
    # recall over reference-retained mass.
    keep_rep = s_rep & c_rep
    keep_good = keep_rep & r_counter
    keep_all = s_rep & r_counter
    keep_p = (
        sum(keep_good[g] / keep_rep[g] for g in keep_good) / len(keep_rep)
        if keep_rep
        else 1.0
    )
    keep_r = (
        sum(keep_good.values()) / sum(keep_all.values()) if keep_all else 1.0
    )
    keep = _f1(keep_p, keep_r)

    # Delete: source n-grams the prediction dropped, credited when the
    # references dropped them as well. Scored as precision only.
    del_rep = s_rep - c_rep
    del_good = del_rep - r_counter
    delete = (
        sum(del_good[g] / del_rep[g] for g in del_good) / len(del_rep)
        if del_rep
        else 1.0
    )

    # Add: n-grams the prediction introduced, credited when some reference
    # contains them.
    add_c = set(c_counter) - set(s_counter)
    add_good = add_c & set(r_counter)
    add_all = set(r_counter) - set(s_counter)
    add_p = len(add_good) / len(add_c) if add_c else 1.0
    add_r = len(add_good) / len(add_all) if add_all else 1.0
    add = _f1(add_p, add_r)

    return keep, delete, add


def _f1(precision: float, recall: float) -> float:
    if precision > 0 or recall > 0:
        return 2 * precision * recall / (precision + recall)
    return 0.0


def sari_instance(
    source_tokens: Sequence[str],
    prediction_tokens: Sequence[str],
    reference_token_lists: Sequence[Sequence[str]],
) -> tuple[float, float, float]:
    """Per-instance Keep/Delete/Add on a 0-1 scale, averaged over n = 1..4."""
    keeps, deletes, adds = [], [], []
    for n in range(1, 5):
        k, d, a = _sari_ngram(
            ngram_list(source_tokens, n),
            ngram_list(prediction_tokens, n),
            [ngram_list(ref, n) for ref in reference_token_lists],
        )
        keeps.append(k)
        deletes.append(d)
        adds.append(a)
    return sum(keeps) / 4, sum(deletes) / 4, sum(adds) / 4


def sari(instances: Sequence[EvalInstance]) -> SariScore:
    """Corpus SARI: macro-average of instance scores, scaled to 0-100."""
    if not instances:
        raise ValueError("cannot score an empty instance list")
    keep_total = delete_total = add_total = 0.0
    for inst in instances:
        k, d, a = sari_instance(
            metric_tokens(inst.source),
            metric_tokens(inst.prediction),
            [metric_tokens(ref) for ref in inst.references],
        )
        keep_total += k
        delete_total += d
        add_total += a
    n = len(instances)
    return SariScore(
        keep=100 * keep_total / n,
        delete=100 * delete_total / n,
        add=100 * add_total / n,
    )


def rouge2_pair(prediction_tokens: Sequence[str], reference_tokens: Sequence[str]) -> float:
    """Clipped bigram-overlap F-measure for one prediction/reference pair."""
    pred_bigrams = Counter(ngram_list(prediction_tokens, 2))
    ref_bigrams = Counter(ngram_list(reference_tokens, 2))
    overlap = sum(min(count, pred_bigrams[g]) for g, count in ref_bigrams.items())
    precision = overlap / max(sum(pred_bigrams.values()), 1)
    recall = overlap / max(sum(ref_bigrams.values()), 1)
    return _f1(precision, recall)


def rouge2(predictions: Sequence[str], references: Sequence[str]) -> float:
    """Corpus ROUGE-2: mean pair score, scaled to 0-100."""
    if not predictions or not references:
        raise ValueError("cannot score empty prediction or reference lists")
    if len(predictions) != len(references):
        raise ValueError(
            f"{len(predictions)} predictions but {len(references)} references"
        )
    total = sum(
        rouge2_pair(metric_tokens(pred), metric_tokens(ref))
        for pred, ref in zip(predictions, references)
    )
    return 100 * total / len(predictions)


@dataclass
class EditScoreReport:
    """SARI + ROUGE-2 over a prediction run, with a per-label breakdown."""

    sari: SariScore
    rouge2: float
    count: int
    by_label: dict[str, dict] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "sari": self.sari.as_dict(),
            "rouge2": self.rouge2,
            "count": self.count,
            "by_label": self.by_label,
        }


def evaluate_run(
    records: Sequence[ClaimRecord], predictions: dict[str, str]
) -> EditScoreReport:
    """Score a prediction map against a test corpus.

    REFUTED records are scored against their gold correction, SUPPORTED
    records against the claim itself (the model should leave them alone).
    Every record needs a prediction; REFUTED records need a gold correction.
    """
    if not records:
        raise ValueError("cannot evaluate an empty record set")
    instances: list[EvalInstance] = []
    labels: list[str] = []
    for record in records:
        if record.id not in predictions:
            raise ValueError(f"record {record.id!r}: no prediction supplied")
        if record.label == "REFUTED":
            if record.gold_correction is None:
                raise ValueError(
                    f"record {record.id!r}: REFUTED test record has no gold correction"
                )
            reference = record.gold_correction
        else:
            reference = record.claim
        instances.append(
            EvalInstance(
                source=record.claim,
                prediction=predictions[record.id],
                references=(reference,),
            )
        )
        labels.append(record.label)

    def score(selected: list[EvalInstance]) -> tuple[SariScore, float]:
        return (
            sari(selected),
            rouge2(
                [inst.prediction for inst in selected],
                [inst.references[0] for inst in selected],
            ),
        )

    overall_sari, overall_rouge = score(instances)
    by_label: dict[str, dict] = {}
    for label in sorted(set(labels)):
        subset = [inst for inst, lab in zip(instances, labels) if lab == label]
        label_sari, label_rouge = score(subset)
        by_label[label] = {
            "sari": label_sari.as_dict(),
            "rouge2": label_rouge,
            "count": len(subset),
        }
    return EditScoreReport(
        sari=overall_sari,
        rouge2=overall_rouge,
        count=len(instances),
        by_label=by_label,
    )


def load_predictions(path: str | Path) -> dict[str, str]:
    """Read a predictions file: JSONL of {"id": str, "prediction": str}."""
    predictions: dict[str, str] = {}
    with Path(path).open("r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            obj = json.loads(line)
            try:
                predictions[str(obj["id"])] = obj["prediction"]
            except (KeyError, TypeError):
                raise ValueError(
                    f"{path}: line {line_no} must be {{'id', 'prediction'}}"
                ) from None
    return predictions
