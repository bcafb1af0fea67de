"""Walk through the triad classes: 13 connected shapes, 30 ego-rooted ones.

Run: python3 demos/01_catalog_tour.py
"""

from nospam.catalog import (
    N_NSP,
    catalog,
    code_to_arcs,
    ffl_nsp_classes,
    ffl_regular_class,
    nsp_label,
    orbit_map,
    regular_label,
)

cat = catalog()
om = orbit_map()

print(f"{len(cat.all_regular_canonical)} isomorphism classes of 3-node digraphs, 13 connected")
print(f"{N_NSP} classes once node 0 is singled out\n")

for r in sorted(om.inverse):
    members = om.inverse[r]
    print(f"{regular_label(r):12s} -> {len(members)} ego class(es): {', '.join(nsp_label(i) for i in members)}")

print("\nfeed-forward loop:", regular_label(ffl_regular_class()))
for role, i in ffl_nsp_classes().items():
    code = cat.nsp_canonical[i - 1]
    print(f"  {role:12s} {nsp_label(i):16s} ego=0, arcs {code_to_arcs(code)}")
