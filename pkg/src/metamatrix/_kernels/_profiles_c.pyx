# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled descent-count kernel for crystallographic root matrices."""

def count_profiles_batch(
    long long[:, ::1] prefix,
    long long[:, ::1] prefix_inv,
    long long[:, :, ::1] tails,
    long long[:, :, ::1] tails_inv,
    long long[:, ::1] out,
):
    """Same contract as the numpy fallback; see _profiles_py."""
    cdef Py_ssize_t B = tails.shape[0]
    cdef Py_ssize_t n = prefix.shape[0]
    cdef Py_ssize_t b, i, j, k, left, right
    cdef long long acc
    cdef bint colpos

    with nogil:
        for b in range(B):
            right = 0
            for j in range(n):
                colpos = True
                for i in range(n):
                    acc = 0
                    for k in range(n):
                        acc += prefix[i, k] * tails[b, k, j]
                    if acc < 0:
                        colpos = False
                        break
                if colpos:
                    right += 1
            left = 0
            for j in range(n):
                colpos = True
                for i in range(n):
                    acc = 0
                    for k in range(n):
                        acc += tails_inv[b, i, k] * prefix_inv[k, j]
                    if acc < 0:
                        colpos = False
                        break
                if colpos:
                    left += 1
            out[left, right] += 1
