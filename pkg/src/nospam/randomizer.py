"""Degree- and reciprocity-preserving edge switching.

Two unidirectional arcs ``a->b, c->d`` become ``a->d, c->b``; two bidirectional
dyads ``{a,b}, {c,d}`` become ``{a,d}, {c,b}``.  A switch is applied only if the
four endpoints are distinct and neither new endpoint pair is already adjacent
in either direction, so every node keeps its in- and out-degree and the
numbers of unidirectional and bidirectional dyads never change.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .graph import DirectedGraph

__all__ = [
    "RandomizationWarning",
    "SwitchBudget",
    "EdgeSwitcher",
    "instance_rng",
    "randomize",
    "switch_is_legal",
]

log = logging.getLogger(__name__)

_BATCH = 4096


class RandomizationWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class SwitchBudget:
    switches_per_edge: float = 5.0

    def __post_init__(self):
        if not self.switches_per_edge > 0:
            raise ValueError("switches_per_edge must be positive")

    def total(self, n_arcs: int) -> int:
        return max(1, math.ceil(self.switches_per_edge * n_arcs))


def instance_rng(seed: int, instance_index: int = 0) -> np.random.Generator:
    """Independent generator for one ensemble slot."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(instance_index,)))


def switch_is_legal(g: DirectedGraph, e1: tuple[int, int], e2: tuple[int, int]) -> bool:
    """Whether switching ``e1 = (a, b)`` with ``e2 = (c, d)`` into ``(a, d), (c, b)`` is allowed."""
    a, b = e1
    c, d = e2
    if len({a, b, c, d}) < 4:
        return False
    return not (g.has_arc(a, d) or g.has_arc(d, a) or g.has_arc(c, b) or g.has_arc(b, c))


class EdgeSwitcher:
    """Mutable working copy of a graph for repeated switching."""

    def __init__(self, g: DirectedGraph):
        self.n_nodes = g.n_nodes
        self.labels = g.labels
        self.uni = [list(e) for e in g.uni_dyads]
        self.bi = [list(e) for e in g.bi_dyads]
        self._n = max(g.n_nodes, 1)
        # unordered adjacency; arc direction is recovered from the dyad lists
        self.adjacent = {self._pair(a, b) for a, b in g.arcs}
        self.switches = 0
        self.attempts = 0

    def _pair(self, a: int, b: int) -> int:
        return a * self._n + b if a < b else b * self._n + a

    def can_switch(self) -> bool:
        return len(self.uni) >= 2 or len(self.bi) >= 2

    def try_switch(self, bidirectional: bool, i: int, j: int, flip: bool = False) -> bool:
        """Attempt one switch between entries ``i`` and ``j`` of a dyad list.

        ``flip`` reverses the stored orientation of the second bidirectional
        dyad, selecting the other of its two possible rewirings.
        """
        dyads = self.bi if bidirectional else self.uni
        e1, e2 = dyads[i], dyads[j]
        a, b = e1
        c, d = (e2[1], e2[0]) if flip and bidirectional else e2
        if a == c or a == d or b == c or b == d:
            return False
        ad, cb = self._pair(a, d), self._pair(c, b)
        if ad in self.adjacent or cb in self.adjacent:
            return False
        adj = self.adjacent
        adj.discard(self._pair(a, b))
        adj.discard(self._pair(c, d))
        adj.add(ad)
        adj.add(cb)
        e1[1] = d
        e2[0], e2[1] = c, b
        return True

    def run(self, total: int, rng: np.random.Generator, max_attempts: int) -> int:
        n_uni, n_bi = len(self.uni), len(self.bi)
        n_links = n_uni + 2 * n_bi
        done = 0
        while done < total and self.attempts < max_attempts:
            draws = rng.random((_BATCH, 3))
            for x, y, z in draws.tolist():
                if done >= total or self.attempts >= max_attempts:
                    break
                self.attempts += 1
                # first link uniformly over all arcs; partner from the same dyad class
                k = int(x * n_links)
                if k < n_uni:
                    if n_uni < 2:
                        continue
                    ok = self.try_switch(False, k, int(y * n_uni))
                else:
                    if n_bi < 2:
                        continue
                    ok = self.try_switch(True, (k - n_uni) >> 1, int(y * n_bi), z < 0.5)
                if ok:
                    done += 1
        self.switches += done
        return done

    def to_graph(self) -> DirectedGraph:
        src = [a for a, _ in self.uni]
        dst = [b for _, b in self.uni]
        for a, b in self.bi:
            src += [a, b]
            dst += [b, a]
        return DirectedGraph(self.n_nodes, src, dst, self.labels)


def randomize(
    g: DirectedGraph,
    budget: SwitchBudget | None = None,
    seed: int = 0,
    instance_index: int = 0,
    max_attempt_factor: float = 1000.0,
    rng: np.random.Generator | None = None,
) -> DirectedGraph:
    """Return a randomized copy of ``g`` after ``budget.total(E)`` successful switches.

    The result is fully determined by ``(g, budget, seed, instance_index)``
    unless an explicit ``rng`` is given.  Graphs admitting no switch partner are
    returned unchanged, and runs that exhaust ``max_attempt_factor * total``
    attempts stop early; both cases emit a :class:`RandomizationWarning`.
    """
    graph, _ = randomize_with_stats(g, budget, seed, instance_index, max_attempt_factor, rng)
    return graph


def randomize_with_stats(
    g: DirectedGraph,
    budget: SwitchBudget | None = None,
    seed: int = 0,
    instance_index: int = 0,
    max_attempt_factor: float = 1000.0,
    rng: np.random.Generator | None = None,
) -> tuple[DirectedGraph, dict]:
    budget = budget or SwitchBudget()
    total = budget.total(g.n_arcs)
    switcher = EdgeSwitcher(g)
    stats = {"target": total, "switches": 0, "attempts": 0}
    if not switcher.can_switch():
        warnings.warn(
            "fewer than two dyads of each kind; graph returned unchanged",
            RandomizationWarning,
            stacklevel=3,
        )
        return g, stats
    if rng is None:
        rng = instance_rng(seed, instance_index)
    max_attempts = max(1, int(max_attempt_factor * total))
    switcher.run(total, rng, max_attempts)
    stats.update(switches=switcher.switches, attempts=switcher.attempts)
    if switcher.switches < total:
        warnings.warn(
            f"attempt cap reached after {switcher.switches}/{total} switches",
            RandomizationWarning,
            stacklevel=3,
        )
    return switcher.to_graph(), stats
