"""8-shot prompt construction for LLM-based claim correction.

The exemplar texts are fixed; evidence sentences keep their original
tokenized spacing (spaces before punctuation, `` '' quoting) rather than
being cleaned up, since prompt fidelity matters more than cosmetics. The
built prompt ends with an unfinished "Original claim: " line for the model
to complete.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from fec_forge.corpus import Evidence


@dataclass(frozen=True)
class Exemplar:
    """One worked correction: evidence lines, the false claim, the fix."""

    evidence_lines: tuple[str, ...]
    mutated_claim: str
    original_claim: str

    def __post_init__(self):
        object.__setattr__(self, "evidence_lines", tuple(self.evidence_lines))
        if not self.evidence_lines or not self.mutated_claim or not self.original_claim:
            raise ValueError("exemplar fields must be non-empty")


_DEFAULT_EXEMPLARS = (
    Exemplar(
        evidence_lines=(
            "The Lion King; The story takes place in a kingdom of lions in Africa "
            "and was influenced by William Shakespeare 's Hamlet .",
            "The Lion King; The Lion King tells the story of Simba , a young lion "
            "who is to succeed his father , Mufasa , as King of the Pride Lands ; "
            "however , after Simba 's uncle Scar murders Mufasa , Simba is "
            "manipulated into thinking he was responsible and flees into exile .",
        ),
        mutated_claim="The Lion King has nothing to do with lions.",
        original_claim="The Lion King is about lions.",
    ),
    Exemplar(
        evidence_lines=(
            "Indiana Jones; Henry Walton `` Indiana '' Jones Jr. ( also shortened "
            "to Indy ) is a fictional character and the protagonist of the Indiana "
            "Jones franchise .",
            "Indiana Jones; George Lucas created the character in homage to the "
            "action heroes of 1930s film serials .",
        ),
        mutated_claim="Indiana Jones is real.",
        original_claim="Indiana Jones is fictional.",
    ),
    Exemplar(
        evidence_lines=(
            "Scott Eastwood; Scott Eastwood ( born Scott Clinton Reeves ; March 21 "
            ", 1986 ) is an American actor , model , and professional skydiver .",
            "Scott Eastwood; He has also been the model for the fragrance Cool "
            "Water by Davidoff .",
        ),
        mutated_claim="Scott Eastwood was incapable of working as a model.",
        original_claim="Scott Eastwood worked as a model.",
    ),
    Exemplar(
        evidence_lines=(
            "Akshay Kumar; Kumar is also a producer and martial artist who has "
            "appeared in over a hundred Hindi films .",
            "Akshay Kumar; Having done so , he has established himself as a "
            "leading contemporary actor of Hindi cinema .",
        ),
        mutated_claim="Akshay Kumar does not work in Hindi cinema.",
        original_claim="Akshay Kumar works in Hindi cinema.",
    ),
    Exemplar(
        evidence_lines=(
            "Gorillaz; Gorillaz are an English virtual band created in 1998 by "
            "musician Damon Albarn and artist Jamie Hewlett .",
            "Virtual band; In music , a virtual band ( also called a virtual group "
            ", cartoon group , or cartoon band ) is any group whose members are "
            "not corporeal musicians , but animated characters .",
        ),
        mutated_claim="Gorillaz is a German live band.",
        original_claim="Gorillaz is a British virtual band.",
    ),
    Exemplar(
        evidence_lines=(
            "Grant Gustin; Thomas Grant Gustin ( born January 14 , 1990 ) is an "
            "American actor , singer , and dancer .",
            "Grant Gustin; He is known for his role as Barry Allen / the Flash ( "
            "based on the DC Comics character of the same name ) on the CW series "
            "The Flash and Arrow , both in the Arrowverse television franchise , "
            "and his role as Sebastian Smythe on the Fox series Glee .",
        ),
        mutated_claim="Grant Gustin is only a writer.",
        original_claim="Grant Gustin is a singer.",
    ),
    Exemplar(
        evidence_lines=(
            "RB Leipzig; RasenBallsport Leipzig e.V. , commonly known as RB "
            "Leipzig , is a German association football club based in Leipzig , "
            "Saxony .",
            "Football in Germany; Football is the most popular sport in Germany .",
        ),
        mutated_claim="RB Leipzig plays the least popular German sport.",
        original_claim="RB Leipzig plays the most popular German sport.",
    ),
    Exemplar(
        evidence_lines=(
            "One World Trade Center; One World Trade Center ( also known as 1 "
            "World Trade Center , 1 WTC or Freedom Tower ) is the main building of "
            "the rebuilt World Trade Center complex in Lower Manhattan , New York "
            "City .",
            "World Trade Center (2001–present); The original World Trade Center "
            "featured the landmark Twin Towers , which opened in 1973 , and were "
            "the tallest buildings in the world at their completion .",
        ),
        mutated_claim="One World Trade Center opened in 1876.",
        original_claim="One World Trade Center opened in 2014.",
    ),
)


def default_exemplars() -> list[Exemplar]:
    """The eight built-in exemplars, in their fixed order."""
    return list(_DEFAULT_EXEMPLARS)


def _block(evidence_lines: Sequence[str], mutated_claim: str) -> str:
    lines = [f"Evidence: {evidence_lines[0]}"]
    lines.extend(evidence_lines[1:])
    lines.append(f"Mutated claim: {mutated_claim}")
    return "\n".join(lines)


def build_fec_prompt(
    exemplars: Sequence[Exemplar],
    evidence: Sequence[Evidence],
    mutated_claim: str,
) -> str:
    """Assemble the few-shot prompt, ending with an open "Original claim: " line.

    Exemplars appear in list order, one blank line between blocks. Query
    evidence renders as one "page; sentence" line each.
    """
    if not exemplars:
        raise ValueError("at least one exemplar is required")
    if not mutated_claim.strip():
        raise ValueError("mutated claim must be non-empty")
    if not evidence:
        raise ValueError("query evidence must be non-empty")
    blocks = [
        _block(ex.evidence_lines, ex.mutated_claim)
        + f"\nOriginal claim: {ex.original_claim}"
        for ex in exemplars
    ]
    query_lines = [ev.as_line() for ev in evidence]
    blocks.append(_block(query_lines, mutated_claim) + "\nOriginal claim: ")
    return "\n\n".join(blocks)
