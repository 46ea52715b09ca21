"""Pure-numpy fallback for the descent-count kernel."""

from __future__ import annotations

import numpy as np


def count_profiles_batch(
    prefix: np.ndarray,
    prefix_inv: np.ndarray,
    tails: np.ndarray,
    tails_inv: np.ndarray,
    out: np.ndarray,
) -> None:
    """Accumulate ascent-count statistics for prefix * tails[b].

    prefix, prefix_inv: (n, n) int64 matrices w and w^{-1}.
    tails, tails_inv:   (B, n, n) int64 stacks of t and t^{-1}.
    out:                (n+1, n+1) int64, out[l, r] += #elements with l left
                        and r right ascents, where the element is w * t.
    """
    n = prefix.shape[0]
    prod = np.einsum("ij,bjk->bik", prefix, tails)
    prod_inv = np.einsum("bij,jk->bik", tails_inv, prefix_inv)
    right = (prod >= 0).all(axis=1).sum(axis=1)
    left = (prod_inv >= 0).all(axis=1).sum(axis=1)
    flat = np.bincount(left * (n + 1) + right, minlength=(n + 1) * (n + 1))
    out += flat.reshape(n + 1, n + 1)
