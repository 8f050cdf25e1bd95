import sys
from pathlib import Path

import pytest

from fec_forge.corpus import ClaimRecord, Evidence

TESTS_DIR = Path(__file__).resolve().parent
FIXTURES = TESTS_DIR / "fixtures"

# Make tests/oracles importable as a plain directory of modules.
sys.path.insert(0, str(TESTS_DIR / "oracles"))


def make_record(
    rid="r1",
    claim="The Lion King is about lions.",
    label="SUPPORTED",
    evidence=(("The Lion King", "The story takes place in a kingdom of lions ."),),
    gold=None,
):
    return ClaimRecord(
        id=rid,
        claim=claim,
        label=label,
        evidence=tuple(Evidence(page_title=p, sentence=s) for p, s in evidence),
        gold_correction=gold,
    )


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def sample_records():
    return [
        make_record("s1", "Gorillaz is a British virtual band.", "SUPPORTED",
                    (("Gorillaz", "Gorillaz are an English virtual band ."),)),
        make_record("s2", "Indiana Jones is fictional.", "SUPPORTED",
                    (("Indiana Jones", "Indiana Jones is a fictional character ."),)),
        make_record("s3", "Akshay Kumar works in Hindi cinema.", "SUPPORTED",
                    (("Akshay Kumar", "A leading actor of Hindi cinema ."),)),
        make_record("r1", "Indiana Jones is real.", "REFUTED",
                    (("Indiana Jones", "Indiana Jones is a fictional character ."),),
                    gold="Indiana Jones is fictional."),
        make_record("r2", "Gorillaz is a German live band.", "REFUTED",
                    (("Gorillaz", "Gorillaz are an English virtual band ."),),
                    gold="Gorillaz is a British virtual band."),
    ]


@pytest.fixture
def toy_corpus_path():
    return FIXTURES / "toy_corpus.jsonl"
