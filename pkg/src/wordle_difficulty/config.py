"""Run configuration shared by the CLI and the experiment scripts."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DataError


@dataclass
class RunConfig:
    seed: int = 0
    reps: int = 10000
    alpha: float = 0.01
    k: int = 4
    m: int = 4
    threads: int | None = None
    format: str = "csv"
    smoothing: float = 0.0
    allow_oov: bool = False
    cluster_method: str = "hierarchical"
    cluster_linkage: str = "ward"

    def __post_init__(self):
        if self.reps < 1:
            raise DataError("reps must be positive")
        if self.alpha < 0:
            raise DataError("alpha must be non-negative")
        if self.k < 2:
            raise DataError("k must be at least 2")
        if not 1 <= self.m <= 10:
            raise DataError("m must be in 1..10")
        if self.threads is not None and self.threads < 1:
            raise DataError("threads must be positive")
        if self.format not in ("csv", "json"):
            raise DataError(f"unknown format {self.format!r}")
        if self.smoothing < 0:
            raise DataError("smoothing must be non-negative")
        if self.cluster_method not in ("hierarchical", "kmeans"):
            raise DataError(f"unknown cluster method {self.cluster_method!r}")
        if self.cluster_linkage not in ("ward", "average"):
            raise DataError(f"unknown linkage {self.cluster_linkage!r}")
