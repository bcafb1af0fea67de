"""Directed simple graphs and edge-list ingestion."""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import IO, Iterable, Sequence

import numpy as np

__all__ = [
    "DirectedGraph",
    "EdgeListError",
    "LoadOptions",
    "LoadReport",
    "dyad_partition",
    "has_arc",
    "load_edge_list",
    "neighbors_union",
    "write_edge_list",
    "write_label_map",
]

_SPLIT = re.compile(r"[\s,]+")
_COMMENT_PREFIXES = ("#", "%")


class EdgeListError(ValueError):
    """Raised for unreadable or empty edge lists."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class LoadOptions:
    # Alon-lab style files carry a third "interaction type" column.
    allow_extra_columns: bool = False
    encoding: str = "utf-8"


@dataclass
class LoadReport:
    lines_read: int = 0
    arcs_read: int = 0
    self_loops_dropped: int = 0
    duplicates_dropped: int = 0


class DirectedGraph:
    """Immutable simple digraph on dense node indices ``0..n-1``.

    Arcs are stored as two parallel integer arrays sorted by ``(src, dst)``.
    Adjacency and dyad views are derived lazily and cached.
    """

    def __init__(
        self,
        n_nodes: int,
        src: Sequence[int] | np.ndarray,
        dst: Sequence[int] | np.ndarray,
        labels: Sequence[str] | None = None,
    ):
        src = np.asarray(src, dtype=np.int64).ravel()
        dst = np.asarray(dst, dtype=np.int64).ravel()
        if src.shape != dst.shape:
            raise ValueError("src and dst must have equal length")
        if n_nodes < 0:
            raise ValueError("n_nodes must be non-negative")
        if src.size and (min(src.min(), dst.min()) < 0 or max(src.max(), dst.max()) >= n_nodes):
            raise ValueError("arc endpoint out of range")
        if np.any(src == dst):
            raise ValueError("self-loops are not allowed")
        key = src * max(n_nodes, 1) + dst
        order = np.argsort(key, kind="stable")
        key = key[order]
        if key.size > 1 and np.any(key[1:] == key[:-1]):
            raise ValueError("duplicate arcs are not allowed")
        self.n_nodes = int(n_nodes)
        self.src = src[order]
        self.dst = dst[order]
        self.src.flags.writeable = False
        self.dst.flags.writeable = False
        if labels is None:
            labels = [str(i) for i in range(n_nodes)]
        if len(labels) != n_nodes:
            raise ValueError("labels must have one entry per node")
        self.labels = list(labels)

    @classmethod
    def from_arcs(cls, n_nodes: int, arcs: Iterable[tuple[int, int]], labels=None) -> "DirectedGraph":
        arcs = list(arcs)
        src = [a for a, _ in arcs]
        dst = [b for _, b in arcs]
        return cls(n_nodes, src, dst, labels)

    def __repr__(self) -> str:
        return f"DirectedGraph(n_nodes={self.n_nodes}, n_arcs={self.n_arcs})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return (
            self.n_nodes == other.n_nodes
            and np.array_equal(self.src, other.src)
            and np.array_equal(self.dst, other.dst)
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def n_arcs(self) -> int:
        return int(self.src.size)

    @cached_property
    def arcs(self) -> frozenset[tuple[int, int]]:
        return frozenset(zip(self.src.tolist(), self.dst.tolist()))

    @cached_property
    def _arc_keys(self) -> np.ndarray:
        return self.src * max(self.n_nodes, 1) + self.dst

    def out_degree(self) -> np.ndarray:
        return np.bincount(self.src, minlength=self.n_nodes)

    def in_degree(self) -> np.ndarray:
        return np.bincount(self.dst, minlength=self.n_nodes)

    @cached_property
    def out_adjacency(self) -> list[np.ndarray]:
        bounds = np.searchsorted(self.src, np.arange(self.n_nodes + 1))
        return [self.dst[bounds[i] : bounds[i + 1]] for i in range(self.n_nodes)]

    @cached_property
    def in_adjacency(self) -> list[np.ndarray]:
        order = np.lexsort((self.src, self.dst))
        s, d = self.src[order], self.dst[order]
        bounds = np.searchsorted(d, np.arange(self.n_nodes + 1))
        return [s[bounds[i] : bounds[i + 1]] for i in range(self.n_nodes)]

    @cached_property
    def undirected_csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(indptr, neighbors, direction)`` over the underlying undirected graph.

        ``direction`` has bit 1 set when ``node -> neighbor`` is an arc and
        bit 2 set when ``neighbor -> node`` is an arc. Neighbor lists are sorted.
        """
        n = self.n_nodes
        node = np.concatenate([self.src, self.dst])
        nbr = np.concatenate([self.dst, self.src])
        bits = np.concatenate(
            [np.ones(self.n_arcs, dtype=np.int8), np.full(self.n_arcs, 2, dtype=np.int8)]
        )
        order = np.lexsort((nbr, node))
        node, nbr, bits = node[order], nbr[order], bits[order]
        if node.size:
            start = np.ones(node.size, dtype=bool)
            start[1:] = (node[1:] != node[:-1]) | (nbr[1:] != nbr[:-1])
            idx = np.flatnonzero(start)
            bits = np.bitwise_or.reduceat(bits, idx).astype(np.int8)
            node, nbr = node[idx], nbr[idx]
        indptr = np.searchsorted(node, np.arange(n + 1)).astype(np.int64)
        return indptr, nbr.astype(np.int64), bits

    @cached_property
    def _dyads(self) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
        keys = self._arc_keys
        rev = self.dst * max(self.n_nodes, 1) + self.src
        reciprocal = np.isin(rev, keys, assume_unique=True)
        uni = list(zip(self.src[~reciprocal].tolist(), self.dst[~reciprocal].tolist()))
        lower = reciprocal & (self.src < self.dst)
        bi = list(zip(self.src[lower].tolist(), self.dst[lower].tolist()))
        return uni, bi

    @property
    def uni_dyads(self) -> list[tuple[int, int]]:
        return list(self._dyads[0])

    @property
    def bi_dyads(self) -> list[tuple[int, int]]:
        return list(self._dyads[1])

    def has_arc(self, u: int, v: int) -> bool:
        self._check_node(u)
        self._check_node(v)
        key = u * max(self.n_nodes, 1) + v
        i = np.searchsorted(self._arc_keys, key)
        return bool(i < self._arc_keys.size and self._arc_keys[i] == key)

    def neighbors(self, u: int) -> np.ndarray:
        """Nodes adjacent to ``u`` in either direction."""
        self._check_node(u)
        indptr, nbrs, _ = self.undirected_csr
        return nbrs[indptr[u] : indptr[u + 1]]

    def neighbors_union(self, u: int, v: int) -> set[int]:
        found = set(self.neighbors(u).tolist()) | set(self.neighbors(v).tolist())
        found.discard(u)
        found.discard(v)
        return found

    def max_degree(self) -> int:
        indptr = self.undirected_csr[0]
        return int(np.diff(indptr).max()) if self.n_nodes else 0

    def _check_node(self, u: int) -> None:
        if not 0 <= u < self.n_nodes:
            raise IndexError(f"node {u} out of range for graph with {self.n_nodes} nodes")


def has_arc(g: DirectedGraph, u: int, v: int) -> bool:
    return g.has_arc(u, v)


def neighbors_union(g: DirectedGraph, u: int, v: int) -> set[int]:
    """All nodes adjacent to ``u`` or ``v`` (either direction), excluding ``u`` and ``v``."""
    return g.neighbors_union(u, v)


def dyad_partition(g: DirectedGraph) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Split arcs into unidirectional ``(u, v)`` pairs and bidirectional ``u < v`` pairs.

    Both lists follow the graph's sorted arc order, so sampling from them is
    reproducible for a fixed seed.
    """
    return g.uni_dyads, g.bi_dyads


def load_edge_list(
    source: str | Path | IO, options: LoadOptions | None = None
) -> tuple[DirectedGraph, LoadReport]:
    """Read a whitespace- or comma-separated ``src dst`` edge list.

    ``source`` may be a path or a binary/text stream. Labels are mapped to dense
    indices in order of first appearance; self-loops and repeated arcs are dropped
    and counted in the returned report.
    """
    options = options or LoadOptions()
    if isinstance(source, (str, Path)):
        with open(source, "rb") as fh:
            return load_edge_list(fh, options)

    report = LoadReport()
    index: dict[str, int] = {}
    seen: set[tuple[int, int]] = set()
    arcs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(source, start=1):
        line = raw.decode(options.encoding) if isinstance(raw, bytes) else raw
        line = line.strip()
        if not line or line.startswith(_COMMENT_PREFIXES):
            continue
        report.lines_read += 1
        tokens = [t for t in _SPLIT.split(line) if t]
        if len(tokens) != 2 and not (options.allow_extra_columns and len(tokens) > 2):
            raise EdgeListError(f"expected 2 tokens, got {len(tokens)}: {line!r}", lineno)
        a, b = tokens[0], tokens[1]
        ia = index.setdefault(a, len(index))
        ib = index.setdefault(b, len(index))
        report.arcs_read += 1
        if ia == ib:
            report.self_loops_dropped += 1
            continue
        if (ia, ib) in seen:
            report.duplicates_dropped += 1
            continue
        seen.add((ia, ib))
        arcs.append((ia, ib))

    if report.lines_read == 0:
        raise EdgeListError("edge list is empty")
    if not arcs:
        raise EdgeListError("no arcs left after dropping self-loops and duplicates")
    labels = list(index)
    return DirectedGraph.from_arcs(len(labels), arcs, labels), report


def write_edge_list(g: DirectedGraph, dest: str | Path | IO, use_labels: bool = True) -> None:
    lines = []
    for a, b in zip(g.src.tolist(), g.dst.tolist()):
        if use_labels:
            lines.append(f"{g.labels[a]} {g.labels[b]}\n")
        else:
            lines.append(f"{a} {b}\n")
    text = "".join(lines)
    if isinstance(dest, (str, Path)):
        Path(dest).write_text(text, encoding="utf-8")
    else:
        dest.write(text if isinstance(dest, io.TextIOBase) else text.encode("utf-8"))


def write_label_map(g: DirectedGraph, dest: str | Path) -> None:
    with open(dest, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["label", "index"])
        for i, label in enumerate(g.labels):
            writer.writerow([label, i])
