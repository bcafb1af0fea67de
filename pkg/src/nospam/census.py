"""Node-specific and regular triad census.

The fast path walks every adjacent node pair ``(u, v)`` with ``u < v`` and every
third node ``w`` adjacent to either of them, so each connected triad is visited
in ``O(E * k_max)`` total work.  A triad ``{u, v, w}`` is counted from pair
``(u, v)`` iff ``v < w``, or ``u < w < v`` and ``w`` is not adjacent to ``u``;
this visits every connected triad exactly once.
"""

from __future__ import annotations

import itertools

import numpy as np
from numba import njit

from .catalog import N_NSP, N_REGULAR, catalog, classify_nsp_at, classify_regular
from .graph import DirectedGraph

__all__ = [
    "ORACLE_MAX_NODES",
    "census",
    "nsp_census",
    "nsp_census_oracle",
    "regular_census",
    "regular_census_oracle",
    "triad_code",
]

ORACLE_MAX_NODES = 300


@njit(cache=True, nogil=True)
def _census_kernel(n, indptr, nbrs, bits, nsp_table, reg_table, node_counts, reg_counts):
    stamp_u = np.full(n, -1, dtype=np.int64)
    stamp_v = np.full(n, -1, dtype=np.int64)
    dir_u = np.zeros(n, dtype=np.int64)
    dir_v = np.zeros(n, dtype=np.int64)
    token = 0
    for u in range(n):
        for p in range(indptr[u], indptr[u + 1]):
            v = nbrs[p]
            if v <= u:
                continue
            buv = bits[p]
            token += 1
            for q in range(indptr[u], indptr[u + 1]):
                stamp_u[nbrs[q]] = token
                dir_u[nbrs[q]] = bits[q]
            for q in range(indptr[v], indptr[v + 1]):
                stamp_v[nbrs[q]] = token
                dir_v[nbrs[q]] = bits[q]
            base = (buv & 1) | ((buv >> 1) & 1) << 1
            # third nodes adjacent to u: counted iff w > v
            for q in range(indptr[u], indptr[u + 1]):
                w = nbrs[q]
                if w <= v:
                    continue
                du = bits[q]
                dv = dir_v[w] if stamp_v[w] == token else 0
                code = base | (du & 1) << 2 | ((du >> 1) & 1) << 3 | (dv & 1) << 4 | ((dv >> 1) & 1) << 5
                node_counts[u, nsp_table[code, 0]] += 1
                node_counts[v, nsp_table[code, 1]] += 1
                node_counts[w, nsp_table[code, 2]] += 1
                reg_counts[reg_table[code]] += 1
            # third nodes adjacent to v only: counted iff w > u
            for q in range(indptr[v], indptr[v + 1]):
                w = nbrs[q]
                if w <= u or w == v or stamp_u[w] == token:
                    continue
                dv = bits[q]
                code = base | (dv & 1) << 4 | ((dv >> 1) & 1) << 5
                node_counts[u, nsp_table[code, 0]] += 1
                node_counts[v, nsp_table[code, 1]] += 1
                node_counts[w, nsp_table[code, 2]] += 1
                reg_counts[reg_table[code]] += 1


def census(g: DirectedGraph) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(node_counts, regular_counts)`` from a single enumeration pass.

    ``node_counts[a, i-1]`` is the number of connected triads containing node
    ``a`` in which ``a`` sits in ego class ``i``; ``regular_counts[r-1]`` is the
    number of connected triads of regular class ``r``.
    """
    cat = catalog()
    indptr, nbrs, bits = g.undirected_csr
    node_counts = np.zeros((g.n_nodes, N_NSP), dtype=np.int64)
    reg_counts = np.zeros(N_REGULAR, dtype=np.int64)
    if g.n_arcs:
        _census_kernel(
            g.n_nodes,
            indptr,
            nbrs,
            bits.astype(np.int64),
            cat.nsp_by_position,
            cat.regular_by_code,
            node_counts,
            reg_counts,
        )
    return node_counts, reg_counts


def nsp_census(g: DirectedGraph) -> np.ndarray:
    """``N x 30`` matrix of ego-class occurrence counts."""
    return census(g)[0]


def regular_census(g: DirectedGraph) -> np.ndarray:
    """Counts of the 13 connected regular triad classes."""
    return census(g)[1]


def triad_code(g: DirectedGraph, a: int, b: int, c: int) -> int:
    """Code of the triad induced by ``(a, b, c)`` as local nodes ``(0, 1, 2)``."""
    local = (a, b, c)
    code = 0
    for k, (x, y) in enumerate(((0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1))):
        if g.has_arc(local[x], local[y]):
            code |= 1 << k
    return code


def _check_oracle_size(g: DirectedGraph, max_nodes: int) -> None:
    if g.n_nodes > max_nodes:
        raise ValueError(f"oracle census limited to {max_nodes} nodes, graph has {g.n_nodes}")


def nsp_census_oracle(g: DirectedGraph, max_nodes: int = ORACLE_MAX_NODES) -> np.ndarray:
    """Exhaustive ``O(N^3)`` reference for :func:`nsp_census`."""
    _check_oracle_size(g, max_nodes)
    counts = np.zeros((g.n_nodes, N_NSP), dtype=np.int64)
    for a, b, c in itertools.combinations(range(g.n_nodes), 3):
        code = triad_code(g, a, b, c)
        if not classify_regular(code):
            continue
        for pos, node in enumerate((a, b, c)):
            counts[node, classify_nsp_at(code, pos) - 1] += 1
    return counts


def regular_census_oracle(g: DirectedGraph, max_nodes: int = ORACLE_MAX_NODES) -> np.ndarray:
    _check_oracle_size(g, max_nodes)
    counts = np.zeros(N_REGULAR, dtype=np.int64)
    for a, b, c in itertools.combinations(range(g.n_nodes), 3):
        r = classify_regular(triad_code(g, a, b, c))
        if r:
            counts[r - 1] += 1
    return counts
