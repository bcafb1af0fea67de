"""CSV/JSON writers for census and profile results."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .catalog import N_NSP, N_REGULAR, catalog, nsp_label, regular_label
from .profiler import FLAG_NAMES, ZProfileSet, histogram

__all__ = ["write_census", "write_profiles"]

NSP_HEADERS = [nsp_label(i) for i in range(1, N_NSP + 1)]


def _regular_headers() -> list[str]:
    order = catalog().regular_motif_order
    return [f"{regular_label(r)}_m{order[r]}" for r in range(1, N_REGULAR + 1)]


def _fmt(x) -> str:
    # repr round-trips float64 exactly; empty cell for undefined values
    if isinstance(x, (np.integer, int)):
        return str(int(x))
    x = float(x)
    return "" if np.isnan(x) else repr(x)


def _json_num(x):
    x = float(x)
    return None if np.isnan(x) else x


def _write_rows(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _node_matrix(path: Path, labels, header, matrix, flags=None) -> None:
    full_header = ["node"] + header
    if flags is not None:
        full_header += [f"flag_{h}" for h in header]
    rows = []
    for a, label in enumerate(labels):
        row = [label] + [_fmt(x) for x in matrix[a]]
        if flags is not None:
            row += [FLAG_NAMES[int(f)] if f.dtype.kind == "i" else ("flagged" if f else "") for f in flags[a]]
        rows.append(row)
    _write_rows(path, full_header, rows)


def write_census(out_dir: Path, labels, node_counts: np.ndarray, regular_counts: np.ndarray) -> list[str]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    _node_matrix(out_dir / "census.csv", labels, NSP_HEADERS, node_counts)
    _write_rows(
        out_dir / "regular_census.csv",
        ["class", "count"],
        [[h, int(c)] for h, c in zip(_regular_headers(), regular_counts)],
    )
    return ["census.csv", "regular_census.csv"]


def write_profiles(out_dir: Path, labels, prof: ZProfileSet, bins: int = 20) -> list[str]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    reg_headers = _regular_headers()
    ens = prof.ensemble

    _node_matrix(out_dir / "node_z.csv", labels, NSP_HEADERS, prof.node_z, prof.node_flags)
    _node_matrix(out_dir / "node_z_normalized.csv", labels, NSP_HEADERS, prof.node_z_normalized, prof.node_flags)
    _node_matrix(out_dir / "node_mapped.csv", labels, reg_headers, prof.node_mapped, prof.node_mapped_flagged)
    _node_matrix(out_dir / "node_original_counts.csv", labels, NSP_HEADERS, ens.original_nodes)
    _node_matrix(out_dir / "node_rand_mean.csv", labels, NSP_HEADERS, ens.nodes.mean)
    _node_matrix(out_dir / "node_rand_std.csv", labels, NSP_HEADERS, ens.nodes.std)
    _write_rows(
        out_dir / "ffl_score.csv",
        ["node", "ffl_score"],
        [[label, _fmt(s)] for label, s in zip(labels, prof.ffl_score)],
    )
    # node attribute table for external graph drawing tools
    _write_rows(
        out_dir / "node_attributes.csv",
        ["Id", "Label", "ffl_score", "ffl_magnitude", "ffl_sign"],
        [
            [a, label, _fmt(s), _fmt(abs(s)), "" if np.isnan(s) else ("+" if s >= 0 else "-")]
            for a, (label, s) in enumerate(zip(labels, prof.ffl_score))
        ],
    )
    net_mean, net_std = ens.regular.mean, ens.regular.std
    _write_rows(
        out_dir / "network_profile.csv",
        ["class", "original", "rand_mean", "rand_std", "z", "sp", "flag"],
        [
            [
                reg_headers[r],
                int(ens.original_regular[r]),
                _fmt(net_mean[r]),
                _fmt(net_std[r]),
                _fmt(prof.network_z[r]),
                _fmt(prof.network_sp[r]),
                FLAG_NAMES[int(prof.network_flags[r])],
            ]
            for r in range(N_REGULAR)
        ],
    )
    files = [
        "node_z.csv",
        "node_z_normalized.csv",
        "node_mapped.csv",
        "node_original_counts.csv",
        "node_rand_mean.csv",
        "node_rand_std.csv",
        "ffl_score.csv",
        "node_attributes.csv",
        "network_profile.csv",
    ]
    hist = None
    try:
        edges, counts = histogram(prof.ffl_score, bins)
    except ValueError:
        pass
    else:
        _write_rows(
            out_dir / "ffl_histogram.csv",
            ["bin_left", "bin_right", "count"],
            [[_fmt(edges[k]), _fmt(edges[k + 1]), int(counts[k])] for k in range(len(counts))],
        )
        files.append("ffl_histogram.csv")
        hist = {"edges": [float(e) for e in edges], "counts": [int(c) for c in counts]}

    doc = {
        "nodes": list(labels),
        "nsp_classes": NSP_HEADERS,
        "regular_classes": reg_headers,
        "node_z": [[_json_num(x) for x in row] for row in prof.node_z],
        "node_flags": [[FLAG_NAMES[int(f)] for f in row] for row in prof.node_flags],
        "node_mapped": [[_json_num(x) for x in row] for row in prof.node_mapped],
        "ffl_score": [_json_num(x) for x in prof.ffl_score],
        "network_z": [_json_num(x) for x in prof.network_z],
        "network_flags": [FLAG_NAMES[int(f)] for f in prof.network_flags],
        "network_sp": [_json_num(x) for x in prof.network_sp],
        "sp_defined": prof.sp_defined,
        "all_degenerate": prof.all_degenerate,
        "ffl_histogram": hist,
    }
    (out_dir / "profiles.json").write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")
    files.append("profiles.json")
    return files
