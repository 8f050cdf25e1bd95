"""Generation and classification engines: deterministic stubs or HF checkpoints.

The stub engines let the whole protocol run with no model weights, which
is what the integration tests (and any client's CI) want. The checkpoint
engines import transformers/torch lazily so STUB-mode servers stay light.
"""

from __future__ import annotations

from fec_model_server.config import STUB, ServerConfig

LABELS = ("SUPPORTED", "REFUTED", "NEI")


class StubGenerator:
    """Echoes each input with every "#" token replaced by "STUB"."""

    def generate(self, inputs: list[str], num_beams: int, max_new_tokens: int) -> list[str]:
        del num_beams, max_new_tokens
        return [
            " ".join("STUB" if tok == "#" else tok for tok in text.split())
            for text in inputs
        ]


class StubClassifier:
    """Fixed uniform verdict distribution."""

    def classify(self, claim: str, evidence: list[str]) -> dict[str, float]:
        del claim, evidence
        return {"SUPPORTED": 1 / 3, "REFUTED": 1 / 3, "NEI": 1 / 3}


class CheckpointGenerator:
    """Beam-search generation with a seq2seq checkpoint."""

    def __init__(self, checkpoint: str, device: str = "cpu"):
        from transformers import AutoModelForSeq2SeqLM, AutoTokenizer

        self.tokenizer = AutoTokenizer.from_pretrained(checkpoint)
        self.model = AutoModelForSeq2SeqLM.from_pretrained(checkpoint).to(device)
        self.model.eval()
        self.device = device

    def generate(self, inputs: list[str], num_beams: int, max_new_tokens: int) -> list[str]:
        import torch

        encoded = self.tokenizer(
            inputs, return_tensors="pt", padding=True, truncation=True
        ).to(self.device)
        with torch.no_grad():
            output_ids = self.model.generate(
                **encoded, num_beams=num_beams, max_new_tokens=max_new_tokens
            )
        return self.tokenizer.batch_decode(output_ids, skip_special_tokens=True)


class CheckpointClassifier:
    """3-way sequence classification with softmax probabilities.

    Output heads are mapped onto SUPPORTED/REFUTED/NEI via the checkpoint's
    id2label when its names are recognizable, positionally otherwise.
    """

    def __init__(self, checkpoint: str, device: str = "cpu"):
        from transformers import AutoModelForSequenceClassification, AutoTokenizer

        self.tokenizer = AutoTokenizer.from_pretrained(checkpoint)
        self.model = AutoModelForSequenceClassification.from_pretrained(checkpoint)
        self.model = self.model.to(device)
        self.model.eval()
        self.device = device
        self.label_order = self._label_order(self.model.config.id2label)

    @staticmethod
    def _label_order(id2label: dict) -> list[str]:
        aliases = {
            "SUPPORTED": "SUPPORTED", "SUPPORTS": "SUPPORTED",
            "REFUTED": "REFUTED", "REFUTES": "REFUTED",
            "NEI": "NEI", "NOTENOUGHINFO": "NEI", "NOT ENOUGH INFO": "NEI",
        }
        mapped = []
        for idx in sorted(id2label):
            name = aliases.get(str(id2label[idx]).upper().replace("_", " ").strip())
            if name is None:
                return list(LABELS)  # unrecognized head names: positional
            mapped.append(name)
        if sorted(mapped) != sorted(LABELS):
            return list(LABELS)
        return mapped

    def classify(self, claim: str, evidence: list[str]) -> dict[str, float]:
        import torch

        text = claim + " " + self.tokenizer.sep_token + " " + " ".join(evidence)
        encoded = self.tokenizer(
            text, return_tensors="pt", truncation=True
        ).to(self.device)
        with torch.no_grad():
            logits = self.model(**encoded).logits[0]
        probs = torch.softmax(logits, dim=-1).tolist()
        return dict(zip(self.label_order, probs))


def build_engines(config: ServerConfig):
    generator = (
        StubGenerator()
        if config.generator == STUB
        else CheckpointGenerator(config.generator, config.device)
    )
    classifier = (
        StubClassifier()
        if config.classifier == STUB
        else CheckpointClassifier(config.classifier, config.device)
    )
    return generator, classifier
