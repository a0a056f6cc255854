"""Independent reference implementations used to check the library.

Written for clarity, not speed: numpy vectors for cosine, a full DP table for
LCS, and direct scans for the ranking metrics.
"""

from __future__ import annotations

import itertools

import numpy as np


def cosine_oracle(a: dict, b: dict) -> float:
    vocab = sorted(set(a) | set(b))
    if not vocab:
        return 0.0
    va = np.array([a.get(t, 0) for t in vocab], dtype=float)
    vb = np.array([b.get(t, 0) for t in vocab], dtype=float)
    na, nb = np.linalg.norm(va), np.linalg.norm(vb)
    if na == 0 or nb == 0:
        return 0.0
    return float(va @ vb / (na * nb))


def lcs_oracle(a, b) -> int:
    table = np.zeros((len(a) + 1, len(b) + 1), dtype=int)
    for i in range(1, len(a) + 1):
        for j in range(1, len(b) + 1):
            if a[i - 1] == b[j - 1]:
                table[i, j] = table[i - 1, j - 1] + 1
            else:
                table[i, j] = max(table[i - 1, j], table[i, j - 1])
    return int(table[-1, -1])


def lcs_exhaustive(a, b) -> int:
    """Longest subsequence of ``a`` that is also a subsequence of ``b`` (exponential; len(a) <= 10)."""

    def is_subseq(sub, seq):
        it = iter(seq)
        return all(tok in it for tok in sub)

    for size in range(len(a), 0, -1):
        for idx in itertools.combinations(range(len(a)), size):
            if is_subseq([a[i] for i in idx], b):
                return size
    return 0


def doi_oracle(n: int, position: int) -> float:
    # Evenly spaced ladder from 1 down to 1/n.
    return np.linspace(1.0, 1.0 / n, n)[position - 1] if n > 1 else 1.0


def precision_oracle(ranked, relevant, k):
    top = ranked[:k]
    if not top:
        return 0.0
    hits = 0
    for u in top:
        if u in relevant:
            hits += 1
    return hits / len(top)


def ffp_oracle(ranked, relevant, k):
    top = ranked[:k]
    misses = [i + 1 for i in range(len(top)) if top[i] not in relevant]
    return misses[0] if misses else k + 1


def rr_oracle(ranked, relevant):
    ranks = [i + 1 for i in range(len(ranked)) if ranked[i] in relevant]
    return 1.0 / min(ranks) if ranks else 0.0


def mrr_oracle(runs, truth, k):
    if not runs:
        return 0.0
    return sum(rr_oracle(r[:k], truth[cid]) for cid, r in runs) / len(runs)
