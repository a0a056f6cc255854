"""Ranking evaluation: precision, first false positive, reciprocal rank, recall.

Ranked lists are sequences of canonical URLs (or anything with a ``url``
attribute); relevance is binary.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import asdict, dataclass, field

logger = logging.getLogger(__name__)

__all__ = [
    "GroundTruth",
    "EvalReport",
    "MASKS",
    "precision_at_k",
    "first_false_positive",
    "reciprocal_rank",
    "evaluate",
    "ablation",
    "render_ablation_tsv",
]

GroundTruth = Mapping[str, frozenset[str]]

# Score-aspect subsets in the order they are switched on.
MASKS: dict[str, tuple[str, ...]] = {
    "content": ("w_cnt",),
    "content+context": ("w_cnt", "w_cxt"),
    "content+context+popularity": ("w_cnt", "w_cxt", "w_pop"),
    "all": ("w_cnt", "w_cxt", "w_pop", "w_sec"),
}
_FUSION = ("w_cnt", "w_cxt", "w_pop", "w_sec")


def _urls(ranked: Iterable) -> list[str]:
    return [r if isinstance(r, str) else r.url for r in ranked]


def precision_at_k(ranked: Sequence, relevant: Iterable[str], k: int) -> float:
    if k < 1:
        raise ValueError("k must be >= 1")
    top = _urls(ranked)[:k]
    if not top:
        return 0.0
    rel = set(relevant)
    return sum(1 for u in top if u in rel) / len(top)


def first_false_positive(ranked: Sequence, relevant: Iterable[str], k: int) -> int:
    """Rank of the first irrelevant result in the top ``k``; ``k + 1`` if there is none."""
    if k < 1:
        raise ValueError("k must be >= 1")
    rel = set(relevant)
    for i, u in enumerate(_urls(ranked)[:k], start=1):
        if u not in rel:
            return i
    return k + 1


def reciprocal_rank(ranked: Sequence, relevant: Iterable[str]) -> float:
    rel = set(relevant)
    for i, u in enumerate(_urls(ranked), start=1):
        if u in rel:
            return 1.0 / i
    return 0.0


@dataclass
class EvalReport:
    k: int
    mp: float
    mffp: float
    mrr: float
    tef: int
    recall: float
    cases: int
    rows: list[dict] = field(default_factory=list)

    def summary(self) -> dict:
        return {"k": self.k, "MP": self.mp, "MFFP": self.mffp, "MRR": self.mrr,
                "TEF": self.tef, "cases": self.cases, "Recall": self.recall}

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    def to_tsv(self) -> str:
        lines = ["metric\tvalue",
                 f"Mean Precision (MP)\t{self.mp:.4f}",
                 f"MFFP\t{self.mffp:.4f}",
                 f"MRR\t{self.mrr:.4f}",
                 f"TEF\t{self.tef}({self.cases})",
                 f"Recall (R)\t{self.recall:.2f}%"]
        return "\n".join(lines) + "\n"


def evaluate(cases: Mapping[str, Sequence] | Sequence[tuple[str, Sequence]],
             truth: GroundTruth, k: int) -> EvalReport:
    """Aggregate the four metrics over all cases at cutoff ``k``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    items = list(cases.items()) if isinstance(cases, Mapping) else list(cases)
    rows = []
    for case_id, ranked in items:
        if case_id not in truth:
            raise KeyError(f"case {case_id!r} has no ground truth")
        rel = truth[case_id]
        urls = _urls(ranked)
        top = urls[:k]
        rr = reciprocal_rank(top, rel)
        hit_ranks = [i for i, u in enumerate(top, start=1) if u in rel]
        rows.append({
            "id": case_id,
            "precision": precision_at_k(urls, rel, k),
            "ffp": first_false_positive(urls, rel, k),
            "rr": rr,
            "solved": bool(hit_ranks),
            "first_relevant": hit_ranks[0] if hit_ranks else None,
        })
    n = len(rows)
    if n == 0:
        return EvalReport(k=k, mp=0.0, mffp=0.0, mrr=0.0, tef=0, recall=0.0, cases=0)
    tef = sum(r["solved"] for r in rows)
    return EvalReport(
        k=k,
        mp=sum(r["precision"] for r in rows) / n,
        mffp=sum(r["ffp"] for r in rows) / n,
        mrr=sum(r["rr"] for r in rows) / n,
        tef=tef,
        recall=100.0 * tef / n,
        cases=n,
        rows=rows,
    )


def mask_weights(weights, mask: Iterable[str]):
    """Zero every fusion weight not named in ``mask``."""
    keep = set(mask)
    return weights.override({name: 0.0 for name in _FUSION if name not in keep})


def ablation(
    rank_case: Callable[[str, object], Sequence],
    case_ids: Sequence[str],
    truth: GroundTruth,
    weights,
    masks: Mapping[str, Iterable[str]] = MASKS,
    ks: Sequence[int] = (10, 20, 30),
) -> dict[str, dict[int, EvalReport]]:
    """Evaluate each weight mask at each cutoff.

    ``rank_case(case_id, weights)`` returns the ranked list for a case, or
    ``None`` when the case has no corpus; such cases are excluded with a
    warning.
    """
    table: dict[str, dict[int, EvalReport]] = {}
    depth = max(ks)
    for name, mask in masks.items():
        w = mask_weights(weights, mask)
        runs = []
        for cid in case_ids:
            ranked = rank_case(cid, w)
            if ranked is None:
                logger.warning("case %s excluded: empty corpus", cid)
                continue
            runs.append((cid, _urls(ranked)[:depth]))
        table[name] = {k: evaluate(runs, truth, k) for k in ks}
    return table


def render_ablation_tsv(table: Mapping[str, Mapping[int, EvalReport]]) -> str:
    """Tab-separated table: one block of MP/TEF/Recall rows per score combination."""
    ks = sorted({k for row in table.values() for k in row})
    out = ["combination\tmetric\t" + "\t".join(f"top{k}" for k in ks)]
    for name, reports in table.items():
        out.append(f"{name}\tMP\t" + "\t".join(f"{reports[k].mp:.4f}" for k in ks))
        out.append(f"{name}\tMRR\t" + "\t".join(f"{reports[k].mrr:.4f}" for k in ks))
        out.append(f"{name}\tTEF\t" + "\t".join(f"{reports[k].tef}" for k in ks))
        out.append(f"{name}\tRecall\t" + "\t".join(f"{reports[k].recall:.2f}%" for k in ks))
    return "\n".join(out) + "\n"
