"""Model backends: HTTP clients for /generate and /classify, plus mocks.

Wire protocol (JSON bodies, UTF-8):

    POST {base_url}/generate
        {"inputs": [str, ...], "num_beams": int, "max_new_tokens": int}
        -> {"outputs": [str, ...]}   # outputs[i] corresponds to inputs[i]

    POST {base_url}/classify
        {"claim": str, "evidence": [str, ...]}
        -> {"probs": {"SUPPORTED": float, "REFUTED": float, "NEI": float}}

A non-200 status, a length mismatch between inputs and outputs, or a
probability vector that does not sum to 1 is a protocol error. Transient
transport failures are retried with exponential backoff; after the retry
budget the run aborts rather than silently biasing the emitted dataset.

The mock backends are deterministic, in-process stand-ins so the whole
pipeline can run offline and reproducibly.
"""

from __future__ import annotations

import hashlib
import random
import time
from dataclasses import dataclass

import requests

from fec_forge.errors import BackendError, ProtocolError

NEI_ALIASES = ("NEI", "NOTENOUGHINFO")

# Fillers the mock corruptor draws from: dates, numbers, negations, and
# entity-like words, so mock output looks like injected factual errors.
MOCK_LEXICON = (
    "1723", "1876", "1923", "1984", "2014", "2031",
    "January", "October", "Monday",
    "three", "seven", "twelve", "forty", "301", "99",
    "not", "never", "no", "barely", "allegedly",
    "Berlin", "Canada", "Shakespeare", "Napoleon", "Atlantis",
    "Microsoft", "Everest", "jazz", "cricket", "opera",
)


def stable_hash(text: str) -> int:
    """Stable 64-bit hash of a string (process-independent)."""
    digest = hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


@dataclass(frozen=True)
class BackendEndpoint:
    """Where a backend lives and how hard we may push it."""

    base_url: str
    timeout: float = 30.0
    max_in_flight: int = 4
    retries: int = 3
    backoff: float = 0.5
    batch_size: int = 16

    def __post_init__(self):
        if self.max_in_flight < 1:
            raise ValueError("max_in_flight must be >= 1")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")


@dataclass(frozen=True)
class VerdictDistribution:
    """3-way fact-verification probabilities."""

    p_supported: float
    p_refuted: float
    p_nei: float

    def __post_init__(self):
        probs = (self.p_supported, self.p_refuted, self.p_nei)
        if any(p < 0 or p > 1 for p in probs):
            raise ProtocolError(f"probabilities outside [0, 1]: {probs}")
        total = sum(probs)
        if abs(total - 1.0) > 1e-6:
            raise ProtocolError(f"probabilities sum to {total}, expected 1")


def _post_json(endpoint: BackendEndpoint, path: str, payload: dict) -> dict:
    """POST with retries and exponential backoff; protocol errors never retry."""
    url = endpoint.base_url.rstrip("/") + path
    last_error: Exception | None = None
    for attempt in range(endpoint.retries):
        if attempt:
            time.sleep(endpoint.backoff * 2 ** (attempt - 1))
        try:
            response = requests.post(url, json=payload, timeout=endpoint.timeout)
        except requests.RequestException as exc:
            last_error = exc
            continue
        if response.status_code >= 500:
            last_error = BackendError(f"{url}: server error {response.status_code}")
            continue
        if response.status_code != 200:
            raise ProtocolError(f"{url}: unexpected status {response.status_code}")
        try:
            return response.json()
        except ValueError:
            raise ProtocolError(f"{url}: response body is not JSON") from None
    raise BackendError(
        f"{url}: unreachable after {endpoint.retries} attempts ({last_error})"
    )


class HttpGenerateBackend:
    """Client for the /generate side of the protocol."""

    def __init__(self, endpoint: BackendEndpoint):
        self.endpoint = endpoint

    def generate(self, inputs: list[str], num_beams: int, max_new_tokens: int) -> list[str]:
        if not inputs:
            return []
        body = {
            "inputs": list(inputs),
            "num_beams": num_beams,
            "max_new_tokens": max_new_tokens,
        }
        data = _post_json(self.endpoint, "/generate", body)
        outputs = data.get("outputs")
        if not isinstance(outputs, list) or not all(isinstance(o, str) for o in outputs):
            raise ProtocolError(f"{self.endpoint.base_url}: bad /generate response schema")
        if len(outputs) != len(inputs):
            raise ProtocolError(
                f"{self.endpoint.base_url}: {len(inputs)} inputs but "
                f"{len(outputs)} outputs"
            )
        return outputs


class HttpClassifyBackend:
    """Client for the /classify side of the protocol."""

    def __init__(self, endpoint: BackendEndpoint):
        self.endpoint = endpoint

    def classify(self, claim: str, evidence: list[str]) -> VerdictDistribution:
        if not claim:
            raise ValueError("cannot classify an empty claim")
        data = _post_json(
            self.endpoint, "/classify", {"claim": claim, "evidence": list(evidence)}
        )
        probs = data.get("probs")
        if not isinstance(probs, dict):
            raise ProtocolError(f"{self.endpoint.base_url}: bad /classify response schema")
        try:
            p_nei = next(float(probs[k]) for k in NEI_ALIASES if k in probs)
            return VerdictDistribution(
                p_supported=float(probs["SUPPORTED"]),
                p_refuted=float(probs["REFUTED"]),
                p_nei=p_nei,
            )
        except (KeyError, StopIteration):
            raise ProtocolError(
                f"{self.endpoint.base_url}: probs must carry SUPPORTED, REFUTED "
                f"and NEI keys, got {sorted(probs)}"
            ) from None


def mock_corrupt(masked_claim: str, seed: int) -> str:
    """Deterministic offline stand-in for a trained corruptor.

    Replaces each "#" token with a word from the mock lexicon. Output never
    contains "#" and never equals the input when at least one mask is present.
    """
    rng = random.Random(seed)
    tokens = [
        rng.choice(MOCK_LEXICON) if tok == "#" else tok
        for tok in masked_claim.split()
    ]
    return " ".join(tokens)


class MockGenerateBackend:
    """Fills mask slots in the claim part of each model input, deterministically.

    The per-input seed mixes the global seed with a hash of the input string,
    so results do not depend on batching or completion order.
    """

    def __init__(self, seed: int, separator: str = "</s>"):
        self.seed = seed
        self.separator = separator

    def generate(self, inputs: list[str], num_beams: int, max_new_tokens: int) -> list[str]:
        del num_beams, max_new_tokens  # accepted for interface parity
        outputs = []
        for text in inputs:
            claim = text.split(f" {self.separator} ")[0]
            outputs.append(mock_corrupt(claim, self.seed ^ stable_hash(claim)))
        return outputs


class MockClassifyBackend:
    """Deterministic pseudo-probabilities from a seeded hash of the inputs."""

    def __init__(self, seed: int = 0):
        self.seed = seed

    def classify(self, claim: str, evidence: list[str]) -> VerdictDistribution:
        if not claim:
            raise ValueError("cannot classify an empty claim")
        key = claim + "\x1f" + "\x1e".join(evidence)
        rng = random.Random(self.seed ^ stable_hash(key))
        raw = [rng.random() + 1e-9 for _ in range(3)]
        total = sum(raw)
        p_s, p_r, p_n = (value / total for value in raw)
        # Close the rounding gap so the sum is exactly 1.
        return VerdictDistribution(p_s, p_r, 1.0 - p_s - p_r)
