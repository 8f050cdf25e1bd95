"""Server configuration."""

from __future__ import annotations

from dataclasses import dataclass

STUB = "STUB"


@dataclass(frozen=True)
class ServerConfig:
    """Which checkpoints to serve and how.

    `generator` and `classifier` are model checkpoint ids (anything the HF
    hub or a local path resolves) or the literal "STUB" for the
    deterministic no-weights mode.
    """

    generator: str = STUB
    classifier: str = STUB
    device: str = "cpu"
    port: int = 8400
    max_batch_size: int = 16

    def __post_init__(self):
        if not 1 <= self.port <= 65535:
            raise ValueError(f"port out of range: {self.port}")
        if self.max_batch_size < 1:
            raise ValueError("max_batch_size must be >= 1")
