"""Kernel selection: compiled extension when built, pure Python otherwise.

``levenshtein`` is the only hot loop in the pipeline (it runs once per
synthetic pair during filtering). Both implementations share one contract
and are cross-checked in the test suite; ``KERNEL_BACKEND`` reports which
one is active.
"""

try:
    from fec_forge._speed._levenshtein import levenshtein

    KERNEL_BACKEND = "cython"
except ImportError:  # extension not built on this platform
    from fec_forge._speed._pure import levenshtein

    KERNEL_BACKEND = "pure-python"

__all__ = ["levenshtein", "KERNEL_BACKEND"]
