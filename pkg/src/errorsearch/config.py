"""Settings loading.

Precedence, lowest to highest: the packaged defaults, the JSON file named by
``path`` or the ``ERRORSEARCH_CONFIG`` environment variable, then explicit
overrides (per request or per command-line flag).
"""

from __future__ import annotations

import copy
import json
import os
from collections.abc import Mapping
from dataclasses import dataclass, field
from importlib import resources

from .corpus import ProviderConfidenceTable
from .scoring import RankingWeights

CONFIG_ENV = "ERRORSEARCH_CONFIG"

__all__ = ["CONFIG_ENV", "Settings", "default_config", "load_settings", "load_weights"]


def default_config() -> dict:
    text = resources.files("errorsearch").joinpath("data/default_config.json").read_text("utf-8")
    return json.loads(text)


def _deep_merge(base: dict, extra: Mapping) -> dict:
    out = copy.deepcopy(base)
    for key, value in extra.items():
        if isinstance(value, Mapping) and isinstance(out.get(key), dict):
            out[key] = _deep_merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


@dataclass(frozen=True)
class Settings:
    confidences: ProviderConfidenceTable
    providers: tuple[str, ...]
    limits: Mapping[str, int] = field(default_factory=dict)
    timeout_seconds: float = 10.0
    user_agent: str = "errorsearch/0.1"
    top_k: int = 30
    weights: RankingWeights = field(default_factory=RankingWeights)

    def limit_for(self, provider: str) -> int:
        return int(self.limits.get(provider, self.top_k))

    @classmethod
    def from_dict(cls, data: Mapping) -> Settings:
        prov = data.get("providers", {})
        return cls(
            confidences=ProviderConfidenceTable.from_config(prov.get("confidence", {})),
            providers=tuple(prov.get("enabled", ())),
            limits={k: int(v) for k, v in prov.get("limits", {}).items()},
            timeout_seconds=float(data.get("timeout_seconds", 10.0)),
            user_agent=str(data.get("user_agent", "errorsearch/0.1")),
            top_k=int(data.get("top_k", 30)),
            weights=RankingWeights(**data.get("weights", {})),
        )


def load_settings(path: str | os.PathLike | None = None, overrides: Mapping | None = None) -> Settings:
    data = default_config()
    if path is None:
        path = os.environ.get(CONFIG_ENV) or None
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            data = _deep_merge(data, json.load(fh))
    if overrides:
        data = _deep_merge(data, overrides)
    return Settings.from_dict(data)


def load_weights(path: str | os.PathLike, base: RankingWeights | None = None) -> RankingWeights:
    """Read weights from JSON, either flat or under a ``weights`` key."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if "weights" in data and isinstance(data["weights"], Mapping):
        data = data["weights"]
    return (base or RankingWeights()).override(data)
