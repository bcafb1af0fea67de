"""Node-specific triad census of a small regulatory toy network.

Two feed-forward loops share the driver ``A``; ``D`` also sits in a 3-cycle.

Run: python3 demos/02_ffl_census.py
"""

import io

import numpy as np

from nospam.catalog import ffl_nsp_classes, nsp_label, regular_label
from nospam.census import census
from nospam.graph import load_edge_list

EDGES = """\
# regulator target
A B
A C
B C
A D
D C
D E
E F
F D
"""

g, report = load_edge_list(io.StringIO(EDGES))
node_counts, reg_counts = census(g)
print(f"{g.n_nodes} nodes, {g.n_arcs} arcs\n")

print("regular census")
for r in np.flatnonzero(reg_counts):
    print(f"  {regular_label(r + 1):12s} {reg_counts[r]}")

print("\nper node")
for v, label in enumerate(g.labels):
    hits = [f"{nsp_label(i + 1)}x{node_counts[v, i]}" for i in np.flatnonzero(node_counts[v])]
    print(f"  {label}: {' '.join(hits) or '-'}")

roles = ffl_nsp_classes()
print("\nFFL roles")
for role, i in roles.items():
    who = [g.labels[v] for v in np.flatnonzero(node_counts[:, i - 1])]
    print(f"  {role:12s} {', '.join(who)}")
