"""Brute force ground truth for small codes.

Enumerates the entire codebook; its only virtue is obviousness.  A budget
guard keeps it from being pointed at anything large by accident.
"""

import numpy as np

from .codec import encode
from .errors import BudgetExceeded

DEFAULT_BUDGET = 2**20


def _codebook(code, budget):
    """(messages, codewords) arrays for the whole code, cached on the code."""
    q = code.curve.field.q
    total = q**code.k
    if total > budget:
        raise BudgetExceeded(f"q^k = {q}^{code.k} = {total} above budget {budget}")
    cb = code._cache.get("codebook")
    if cb is None:
        ctx = code.curve.field
        msgs = np.zeros((total, code.k), dtype=np.int64)
        idx = np.arange(total)
        for i in range(code.k):
            msgs[:, i] = idx % q
            idx //= q
        G = code.generator_matrix()
        words = np.zeros((total, code.n), dtype=np.int64)
        for i in range(code.k):
            words = ctx.add_arr(words, ctx.mul_arr(msgs[:, i : i + 1], G[i][None, :]))
        cb = (msgs, words)
        code._cache["codebook"] = cb
    return cb


def exhaustive_list(code, received, tau, budget=DEFAULT_BUDGET):
    """Every codeword within distance tau, ordered like a DecodeResult."""
    _, words = _codebook(code, budget)
    rec = np.asarray(received, dtype=np.int64)
    dists = np.count_nonzero(words != rec[None, :], axis=1)
    hit = np.nonzero(dists <= tau)[0]
    pairs = [(int(dists[i]), [int(v) for v in words[i]]) for i in hit]
    pairs.sort(key=lambda t: (t[0], t[1]))
    return [w for _, w in pairs]


def true_minimum_distance(code, budget=DEFAULT_BUDGET):
    """Minimum weight over nonzero codewords, by enumeration."""
    _, words = _codebook(code, budget)
    weights = np.count_nonzero(words, axis=1)
    weights = weights[weights > 0]
    return int(weights.min())
