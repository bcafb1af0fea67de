"""Normalize downloaded network files into the data directory used by the slow tests.

Point each name at a local file or a URL you trust:

    python3 scripts/prepare_datasets.py ecoli=/path/to/coliInterNoAutoRegVec.txt \
        yeast=/path/to/yeastInter_st.txt french=... spanish=...

Each source is parsed with the package loader (extra columns such as the
interaction sign are dropped, self-loops and duplicates removed) and written as
``<data-dir>/<name>.txt`` with string labels preserved.
"""

import argparse
import io
import sys
import urllib.request
from pathlib import Path

from nospam.graph import EdgeListError, LoadOptions, load_edge_list, write_edge_list

# node and edge counts as published, for a sanity check only
PUBLISHED = {
    "ecoli": (423, 519),
    "yeast": (688, 1079),
}


def _open(source):
    if source.startswith(("http://", "https://")):
        with urllib.request.urlopen(source, timeout=60) as resp:
            return io.StringIO(resp.read().decode("utf-8", errors="replace"))
    return open(source, encoding="utf-8", errors="replace")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("sources", nargs="+", metavar="NAME=SOURCE")
    ap.add_argument("--data-dir", type=Path, default=Path(__file__).resolve().parent.parent / "data")
    args = ap.parse_args(argv)
    args.data_dir.mkdir(parents=True, exist_ok=True)
    status = 0
    for item in args.sources:
        name, sep, source = item.partition("=")
        if not sep:
            ap.error(f"expected NAME=SOURCE, got {item!r}")
        try:
            with _open(source) as fh:
                g, report = load_edge_list(fh, LoadOptions(allow_extra_columns=True))
        except (OSError, EdgeListError) as exc:
            print(f"{name}: {exc}", file=sys.stderr)
            status = 1
            continue
        write_edge_list(g, args.data_dir / f"{name}.txt")
        line = f"{name}: {g.n_nodes} nodes, {g.n_arcs} arcs"
        line += f" ({report.self_loops_dropped} self-loops, {report.duplicates_dropped} duplicates dropped)"
        if name in PUBLISHED:
            line += " published %d nodes, %d edges" % PUBLISHED[name]
        print(line)
    return status


if __name__ == "__main__":
    sys.exit(main())
