"""Ensemble statistics: node-specific and network-level triad Z-scores.

Every ensemble instance is an independent randomization of the original graph
seeded by ``(seed, instance_index)``.  Counts are accumulated as exact integers
(sum, sum of squares, min, max), so results are identical for any worker count
or scheduling order.

A Z-score is *degenerate* when all instances gave the same count (zero
spread).  If the original count equals that value the score is reported as 0;
otherwise it is undefined, stored as NaN and flagged with its sign.
"""

from __future__ import annotations

import logging
import warnings
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .catalog import N_NSP, N_REGULAR, ffl_regular_class, orbit_map
from .census import census
from .graph import DirectedGraph
from .randomizer import RandomizationWarning, SwitchBudget, randomize_with_stats

__all__ = [
    "DEGENERATE",
    "OK",
    "UNDEFINED_NEG",
    "UNDEFINED_POS",
    "ConfigError",
    "EnsembleConfig",
    "EnsembleResult",
    "MomentAccumulator",
    "ZProfileSet",
    "histogram",
    "map_to_regular",
    "network_profile",
    "run_ensemble",
    "run_nospam3",
    "significance_profile",
    "z_scores",
]

log = logging.getLogger(__name__)

OK, DEGENERATE, UNDEFINED_POS, UNDEFINED_NEG = 0, 1, 2, 3
FLAG_NAMES = {OK: "", DEGENERATE: "degenerate", UNDEFINED_POS: "+undefined", UNDEFINED_NEG: "-undefined"}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class EnsembleConfig:
    instances: int = 1000
    budget: SwitchBudget = field(default_factory=SwitchBudget)
    seed: int = 0
    workers: int = 1
    max_attempt_factor: float = 1000.0

    def __post_init__(self):
        if self.instances < 2:
            raise ConfigError("at least 2 randomized instances are needed for a standard deviation")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if not self.max_attempt_factor > 0:
            raise ConfigError("max_attempt_factor must be positive")
        if self.seed < 0 or self.seed >= 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if self.instances < 100:
            log.warning("only %d randomized instances; Z-scores will be noisy", self.instances)


class MomentAccumulator:
    """Running integer moments of per-instance count arrays."""

    def __init__(self, shape):
        self.sum = np.zeros(shape, dtype=np.int64)
        self.sum_sq = np.zeros(shape, dtype=np.int64)
        self.min = np.full(shape, np.iinfo(np.int64).max, dtype=np.int64)
        self.max = np.full(shape, np.iinfo(np.int64).min, dtype=np.int64)
        self.instances_seen = 0

    def add(self, counts: np.ndarray) -> None:
        self.sum += counts
        self.sum_sq += counts * counts
        np.minimum(self.min, counts, out=self.min)
        np.maximum(self.max, counts, out=self.max)
        self.instances_seen += 1

    def merge(self, other: "MomentAccumulator") -> "MomentAccumulator":
        self.sum += other.sum
        self.sum_sq += other.sum_sq
        np.minimum(self.min, other.min, out=self.min)
        np.maximum(self.max, other.max, out=self.max)
        self.instances_seen += other.instances_seen
        return self

    @property
    def mean(self) -> np.ndarray:
        return self.sum / self.instances_seen

    @property
    def variance(self) -> np.ndarray:
        """Sample variance (``I - 1`` denominator); exactly 0 where all instances agree."""
        n = self.instances_seen
        if n < 2:
            raise ValueError("variance needs at least two instances")
        s = self.sum.astype(np.float64)
        var = (self.sum_sq.astype(np.float64) - s * s / n) / (n - 1)
        var = np.maximum(var, 0.0)
        var[self.min == self.max] = 0.0
        return var

    @property
    def std(self) -> np.ndarray:
        return np.sqrt(self.variance)

    @property
    def constant(self) -> np.ndarray:
        return self.min == self.max


def z_scores(original: np.ndarray, acc: MomentAccumulator) -> tuple[np.ndarray, np.ndarray]:
    """Elementwise ``(original - mean) / std`` with degeneracy flags."""
    const = acc.constant
    mean = acc.mean
    std = acc.std
    diff = original - mean
    z = np.zeros(original.shape, dtype=np.float64)
    ok = ~const
    z[ok] = diff[ok] / std[ok]
    flags = np.full(original.shape, OK, dtype=np.int8)
    # a constant ensemble has mean == min exactly, so compare integers
    same = original == acc.min
    flags[const & same] = DEGENERATE
    flags[const & ~same & (original > acc.min)] = UNDEFINED_POS
    flags[const & ~same & (original < acc.min)] = UNDEFINED_NEG
    z[const & ~same] = np.nan
    return z, flags


def map_to_regular(node_z: np.ndarray, node_flags: np.ndarray | None = None):
    """Average ego-class Z-scores over the classes belonging to each regular class.

    Undefined (NaN) entries are skipped; a mapped value is NaN only when every
    contributing entry is undefined.  Returns ``(mapped, flagged)`` where
    ``flagged`` marks mapped entries with at least one flagged contributor.
    """
    om = orbit_map()
    node_z = np.atleast_2d(node_z)
    mapped = np.empty((node_z.shape[0], N_REGULAR))
    flagged = np.zeros((node_z.shape[0], N_REGULAR), dtype=bool)
    for r in range(1, N_REGULAR + 1):
        cols = [i - 1 for i in om.inverse[r]]
        block = node_z[:, cols]
        defined = ~np.isnan(block)
        n_def = defined.sum(axis=1)
        total = np.where(defined, block, 0.0).sum(axis=1)
        with np.errstate(invalid="ignore", divide="ignore"):
            mapped[:, r - 1] = np.where(n_def > 0, total / np.maximum(n_def, 1), np.nan)
        if node_flags is not None:
            flagged[:, r - 1] = (np.atleast_2d(node_flags)[:, cols] != OK).any(axis=1)
    return mapped, flagged


def significance_profile(z: np.ndarray) -> tuple[np.ndarray, bool]:
    """Unit-normalize a Z vector over its defined entries; ``(sp, defined)``."""
    defined = ~np.isnan(z)
    norm = float(np.sqrt(np.sum(z[defined] ** 2)))
    if norm == 0.0:
        return np.full(z.shape, np.nan), False
    return z / norm, True


def _row_normalize(node_z: np.ndarray) -> np.ndarray:
    sq = np.where(np.isnan(node_z), 0.0, node_z) ** 2
    norm = np.sqrt(sq.sum(axis=1, keepdims=True))
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(norm > 0, node_z / np.where(norm > 0, norm, 1.0), node_z)


@dataclass
class EnsembleResult:
    original_nodes: np.ndarray
    original_regular: np.ndarray
    nodes: MomentAccumulator
    regular: MomentAccumulator
    switches: int = 0
    attempts: int = 0
    short_instances: int = 0  # instances that stopped below the switch budget


def _run_chunk(g: DirectedGraph, cfg: EnsembleConfig, indices: list[int]):
    nodes = MomentAccumulator((g.n_nodes, N_NSP))
    regular = MomentAccumulator(N_REGULAR)
    switches = attempts = short = 0
    for k in indices:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RandomizationWarning)
            rg, stats = randomize_with_stats(
                g, cfg.budget, cfg.seed, k, cfg.max_attempt_factor
            )
        switches += stats["switches"]
        attempts += stats["attempts"]
        short += stats["switches"] < stats["target"]
        node_counts, reg_counts = census(rg)
        nodes.add(node_counts)
        regular.add(reg_counts)
    return nodes, regular, switches, attempts, short


def _chunks(n: int, parts: int) -> list[list[int]]:
    bounds = np.linspace(0, n, parts + 1).round().astype(int)
    return [list(range(bounds[i], bounds[i + 1])) for i in range(parts) if bounds[i] < bounds[i + 1]]


def run_ensemble(
    g: DirectedGraph,
    cfg: EnsembleConfig,
    progress: Callable[[int, int], None] | None = None,
) -> EnsembleResult:
    """Census of ``g`` plus accumulated censuses of ``cfg.instances`` randomizations."""
    orig_nodes, orig_reg = census(g)
    result = EnsembleResult(
        orig_nodes, orig_reg, MomentAccumulator((g.n_nodes, N_NSP)), MomentAccumulator(N_REGULAR)
    )

    def absorb(part):
        nodes, regular, sw, att, short = part
        result.nodes.merge(nodes)
        result.regular.merge(regular)
        result.switches += sw
        result.attempts += att
        result.short_instances += short
        if progress is not None:
            progress(result.nodes.instances_seen, cfg.instances)

    if cfg.workers == 1:
        for k in range(cfg.instances):
            absorb(_run_chunk(g, cfg, [k]))
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [
                pool.submit(_run_chunk, g, cfg, chunk)
                for chunk in _chunks(cfg.instances, cfg.workers * 4)
            ]
            for fut in as_completed(futures):
                absorb(fut.result())

    if result.short_instances:
        log.warning(
            "%d of %d instances hit the attempt cap before reaching the switch budget",
            result.short_instances,
            cfg.instances,
        )
    return result


@dataclass
class ZProfileSet:
    node_z: np.ndarray  # N x 30
    node_flags: np.ndarray  # N x 30, int8 flag codes
    node_z_normalized: np.ndarray  # N x 30, each row scaled to unit length
    node_mapped: np.ndarray  # N x 13
    node_mapped_flagged: np.ndarray  # N x 13, bool
    network_z: np.ndarray  # 13
    network_flags: np.ndarray  # 13
    network_sp: np.ndarray  # 13
    sp_defined: bool
    ffl_score: np.ndarray  # N
    ensemble: EnsembleResult

    @property
    def all_degenerate(self) -> bool:
        return bool(np.all(self.node_flags != OK) and np.all(self.network_flags != OK))


def profiles_from_ensemble(ens: EnsembleResult) -> ZProfileSet:
    node_z, node_flags = z_scores(ens.original_nodes, ens.nodes)
    mapped, mapped_flagged = map_to_regular(node_z, node_flags)
    net_z, net_flags = z_scores(ens.original_regular, ens.regular)
    sp, sp_defined = significance_profile(net_z)
    ffl = mapped[:, ffl_regular_class() - 1].copy()
    return ZProfileSet(
        node_z=node_z,
        node_flags=node_flags,
        node_z_normalized=_row_normalize(node_z),
        node_mapped=mapped,
        node_mapped_flagged=mapped_flagged,
        network_z=net_z,
        network_flags=net_flags,
        network_sp=sp,
        sp_defined=sp_defined,
        ffl_score=ffl,
        ensemble=ens,
    )


def run_nospam3(
    g: DirectedGraph,
    cfg: EnsembleConfig | None = None,
    progress: Callable[[int, int], None] | None = None,
) -> ZProfileSet:
    """Node-specific triad Z-scores for every node of ``g``.

    Network-level Z-scores and the significance profile are computed from the
    regular censuses of the same ensemble instances, never from the node scores.
    """
    return profiles_from_ensemble(run_ensemble(g, cfg or EnsembleConfig(), progress))


def network_profile(g: DirectedGraph, cfg: EnsembleConfig | None = None) -> tuple[np.ndarray, np.ndarray]:
    prof = run_nospam3(g, cfg)
    return prof.network_z, prof.network_sp


def histogram(scores, bins: int = 10) -> tuple[np.ndarray, np.ndarray]:
    """Equal-width histogram over ``[min, max]`` of the finite scores.

    Intervals are right-open except the last.  Constant input is binned over
    ``[x - 0.5, x + 0.5]``.
    """
    if bins < 1:
        raise ValueError("bins must be >= 1")
    scores = np.asarray(scores, dtype=np.float64).ravel()
    scores = scores[np.isfinite(scores)]
    if scores.size == 0:
        raise ValueError("no finite scores to bin")
    counts, edges = np.histogram(scores, bins=bins)
    return edges, counts
