"""Full node-specific profile of a transcription network.

Expects ``data/ecoli.txt`` (or another name given on the command line); see
``scripts/prepare_datasets.py``. Writes the usual run directory under
``runs/<name>`` and prints the nodes carrying most of the FFL signal.

Run: python3 demos/04_transcription_network.py [name] [instances]
"""

import os
import sys
from pathlib import Path

import numpy as np

from nospam.catalog import ffl_regular_class
from nospam.graph import LoadOptions, load_edge_list
from nospam.output import write_profiles
from nospam.profiler import EnsembleConfig, histogram, run_nospam3

name = sys.argv[1] if len(sys.argv) > 1 else "ecoli"
instances = int(sys.argv[2]) if len(sys.argv) > 2 else 1000
data_dir = Path(os.environ.get("NOSPAM_DATA_DIR", Path(__file__).resolve().parent.parent / "data"))
path = data_dir / f"{name}.txt"
if not path.exists():
    sys.exit(f"{path} not found; see scripts/prepare_datasets.py")

g, report = load_edge_list(path, LoadOptions(allow_extra_columns=True))
print(f"{name}: {g.n_nodes} nodes, {g.n_arcs} arcs")

cfg = EnsembleConfig(instances=instances, seed=1, workers=os.cpu_count() or 1)
prof = run_nospam3(g, cfg, progress=lambda d, t: print(f"\r{d}/{t}", end="", file=sys.stderr))
print(file=sys.stderr)

print(f"network FFL Z = {prof.network_z[ffl_regular_class() - 1]:.2f}")
scores = prof.ffl_score
order = np.argsort(-np.nan_to_num(scores, nan=-np.inf))
print("top FFL contributors:")
for v in order[:10]:
    print(f"  {g.labels[v]:20s} {scores[v]:8.2f}")

finite = scores[np.isfinite(scores)]
edges, counts = histogram(finite, bins=20)
print("\nffl_score histogram")
for lo, hi, c in zip(edges[:-1], edges[1:], counts):
    print(f"  [{lo:7.2f}, {hi:7.2f}) {'#' * int(np.ceil(60 * c / counts.max()))} {c}")

out = Path("runs") / name
out.mkdir(parents=True, exist_ok=True)
write_profiles(out, g.labels, prof)
print(f"\nwrote {out}/")
