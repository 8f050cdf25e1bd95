# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled edit-distance kernel.

Same contract as fec_forge._speed._pure.levenshtein: character-level
Levenshtein distance over Unicode scalar values. Strings are decoded to
UTF-32 so the DP loop runs over fixed-width code points without touching
the Python API.
"""

from libc.stdlib cimport free, malloc


def levenshtein(str a, str b):
    if a == b:
        return 0
    if len(b) > len(a):
        a, b = b, a
    if len(b) == 0:
        return len(a)

    # Native byte order, no BOM; surrogatepass keeps parity with the pure
    # kernel on strings containing lone surrogates.
    cdef bytes a_raw = a.encode("utf-32-le", "surrogatepass")
    cdef bytes b_raw = b.encode("utf-32-le", "surrogatepass")
    cdef const unsigned int[::1] av = memoryview(a_raw).cast("I")
    cdef const unsigned int[::1] bv = memoryview(b_raw).cast("I")
    cdef Py_ssize_t m = av.shape[0]
    cdef Py_ssize_t n = bv.shape[0]

    cdef Py_ssize_t* row = <Py_ssize_t*> malloc((n + 1) * sizeof(Py_ssize_t))
    if row == NULL:
        raise MemoryError()

    cdef Py_ssize_t i, j, above, diag, cur, best
    cdef unsigned int ca
    try:
        with nogil:
            for j in range(n + 1):
                row[j] = j
            for i in range(1, m + 1):
                ca = av[i - 1]
                diag = row[0]      # value of (i-1, j-1)
                row[0] = i
                for j in range(1, n + 1):
                    above = row[j]
                    cur = diag + (0 if ca == bv[j - 1] else 1)
                    best = above + 1
                    if row[j - 1] + 1 < best:
                        best = row[j - 1] + 1
                    if cur < best:
                        best = cur
                    row[j] = best
                    diag = above
            best = row[n]
        return best
    finally:
        free(row)
