"""Pure-Python edit-distance kernel (fallback when the extension is absent)."""


def levenshtein(a: str, b: str) -> int:
    """Character-level Levenshtein distance over Unicode scalar values.

    Two-row dynamic programme; O(len(a)*len(b)) time, O(min) memory.
    """
    if a == b:
        return 0
    # Keep the inner row as short as possible.
    if len(b) > len(a):
        a, b = b, a
    if not b:
        return len(a)

    previous = list(range(len(b) + 1))
    current = [0] * (len(b) + 1)
    for i, ca in enumerate(a, start=1):
        current[0] = i
        for j, cb in enumerate(b, start=1):
            cost = 0 if ca == cb else 1
            current[j] = min(
                previous[j] + 1,       # deletion
                current[j - 1] + 1,    # insertion
                previous[j - 1] + cost # substitution / match
            )
        previous, current = current, previous
    return previous[len(b)]
