"""Claim/evidence corpora in JSON Lines form: load, validate, write, count.

One line per record:

    {"id": str, "claim": str, "label": "SUPPORTED"|"REFUTED",
     "evidence": [{"page": str, "sentence": str}, ...], "gold": str|null}

UTF-8, LF line endings. Text is stored as-is; no Unicode normalization
happens at ingestion.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from fec_forge.errors import CorpusError

logger = logging.getLogger(__name__)

LABELS = ("SUPPORTED", "REFUTED")


@dataclass(frozen=True)
class Evidence:
    """One retrieved or gold evidence sentence with its page title."""

    page_title: str
    sentence: str

    def __post_init__(self):
        if not self.sentence.strip():
            raise CorpusError("evidence sentence is empty")

    def as_line(self) -> str:
        """Render as the "title; sentence" form used in model inputs and prompts."""
        return f"{self.page_title}; {self.sentence}"


@dataclass(frozen=True)
class ClaimRecord:
    """One corpus row: a claim, its verdict label, and its evidence."""

    id: str
    claim: str
    label: str
    evidence: tuple[Evidence, ...]
    gold_correction: str | None = None

    def __post_init__(self):
        if not self.claim.strip():
            raise CorpusError(f"record {self.id!r}: claim is empty")
        if self.label not in LABELS:
            raise CorpusError(f"record {self.id!r}: unknown label {self.label!r}")
        if not self.evidence:
            raise CorpusError(f"record {self.id!r}: evidence list is empty")
        if self.gold_correction is not None and not self.gold_correction.strip():
            raise CorpusError(f"record {self.id!r}: gold correction is empty")
        object.__setattr__(self, "evidence", tuple(self.evidence))


@dataclass
class CorpusStats:
    """Per-label record counts for one corpus (or split)."""

    by_label: dict[str, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.by_label.values())

    def as_dict(self) -> dict:
        out = {label: self.by_label.get(label, 0) for label in LABELS}
        out["total"] = self.total
        return out


def record_from_json(obj: dict, where: str = "record") -> ClaimRecord:
    """Build a validated ClaimRecord from one decoded JSONL object."""
    try:
        evidence = tuple(
            Evidence(page_title=ev["page"], sentence=ev["sentence"])
            for ev in obj["evidence"]
        )
        return ClaimRecord(
            id=str(obj["id"]),
            claim=obj["claim"],
            label=obj["label"],
            evidence=evidence,
            gold_correction=obj.get("gold"),
        )
    except KeyError as exc:
        raise CorpusError(f"{where}: missing field {exc.args[0]!r}") from None
    except TypeError as exc:
        raise CorpusError(f"{where}: malformed record ({exc})") from None
    except CorpusError as exc:
        raise CorpusError(f"{where}: {exc}") from None


def record_to_json(record: ClaimRecord) -> dict:
    """Inverse of record_from_json; field order is stable."""
    return {
        "id": record.id,
        "claim": record.claim,
        "label": record.label,
        "evidence": [
            {"page": ev.page_title, "sentence": ev.sentence} for ev in record.evidence
        ],
        "gold": record.gold_correction,
    }


def iter_corpus(
    path: str | Path,
    strict: bool = True,
    errors: list[tuple[int, str]] | None = None,
) -> Iterator[ClaimRecord]:
    """Stream records from a JSONL file in file order.

    In strict mode any malformed line or invariant violation raises
    CorpusError naming the line number. In lenient mode bad lines are
    skipped, logged, and appended to ``errors`` when a list is supplied.
    """
    path = Path(path)
    if not path.exists():
        raise CorpusError(f"corpus file not found: {path}")
    skipped = 0
    seen_ids: set[str] = set()
    with path.open("r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise CorpusError(f"line {line_no}: malformed JSON ({exc.msg})")
                if not isinstance(obj, dict):
                    raise CorpusError(f"line {line_no}: expected a JSON object")
                record = record_from_json(obj, where=f"line {line_no}")
                if record.id in seen_ids:
                    raise CorpusError(f"line {line_no}: duplicate id {record.id!r}")
                seen_ids.add(record.id)
                yield record
            except CorpusError as exc:
                if strict:
                    raise CorpusError(f"{path}: {exc}") from None
                skipped += 1
                if errors is not None:
                    errors.append((line_no, str(exc)))
    if skipped:
        logger.warning("%s: skipped %d invalid line(s)", path, skipped)


def load_corpus(
    path: str | Path,
    strict: bool = True,
    errors: list[tuple[int, str]] | None = None,
) -> list[ClaimRecord]:
    """Load a whole corpus into memory, preserving file order."""
    return list(iter_corpus(path, strict=strict, errors=errors))


def write_corpus(records: Iterable[ClaimRecord], path: str | Path) -> None:
    """Write records as one JSON object per line (UTF-8, LF)."""
    path = Path(path)
    seen_ids: set[str] = set()
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for record in records:
            if record.id in seen_ids:
                raise CorpusError(f"duplicate id {record.id!r}")
            seen_ids.add(record.id)
            fh.write(json.dumps(record_to_json(record), ensure_ascii=False))
            fh.write("\n")


def corpus_stats(records: Iterable[ClaimRecord]) -> CorpusStats:
    """Exact per-label counts; total always equals the record count."""
    stats = CorpusStats()
    for record in records:
        stats.by_label[record.label] = stats.by_label.get(record.label, 0) + 1
    return stats
