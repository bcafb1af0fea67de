"""Isomorphism classes of directed triads, with and without a distinguished node.

A triad on local nodes ``0, 1, 2`` is encoded as a 6-bit :data:`TriadCode` with
bit ``k`` set when arc ``ARC_ORDER[k]`` is present.  Regular classes are orbits of
codes under all six node permutations; node-specific ("ego") classes keep local
node 0 fixed and only allow swapping nodes 1 and 2.

Class identifiers are assigned by sorting the canonical (minimal) codes, so
they do not depend on any figure layout.  Everything here is derived by brute
force at import time; nothing is hand-entered except the published aliases.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "ARC_ORDER",
    "DISCONNECTED",
    "N_NSP",
    "N_REGULAR",
    "Catalog",
    "OrbitMap",
    "catalog",
    "classify_nsp",
    "classify_regular",
    "code_from_arcs",
    "code_to_arcs",
    "dump_catalog",
    "ffl_nsp_classes",
    "ffl_regular_class",
    "is_connected",
    "orbit_map",
    "alias_table",
    "permute_code",
]

ARC_ORDER: tuple[tuple[int, int], ...] = ((0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1))
_BIT = {arc: k for k, arc in enumerate(ARC_ORDER)}

N_REGULAR = 13
N_NSP = 30
DISCONNECTED = 0  # class ids are 1-based

# Representative arc sets for the standard MAN triad labels (Holland & Leinhardt).
MAN_EXAMPLES: dict[str, tuple[tuple[int, int], ...]] = {
    "003": (),
    "012": ((0, 1),),
    "102": ((0, 1), (1, 0)),
    "021D": ((0, 1), (0, 2)),
    "021U": ((1, 0), (2, 0)),
    "021C": ((0, 1), (1, 2)),
    "111D": ((0, 1), (1, 0), (2, 0)),
    "111U": ((0, 1), (1, 0), (0, 2)),
    "030T": ((0, 1), (0, 2), (1, 2)),
    "030C": ((0, 1), (1, 2), (2, 0)),
    "201": ((0, 1), (1, 0), (0, 2), (2, 0)),
    "120D": ((0, 1), (0, 2), (1, 2), (2, 1)),
    "120U": ((1, 0), (2, 0), (1, 2), (2, 1)),
    "120C": ((0, 1), (1, 2), (0, 2), (2, 0)),
    "210": ((0, 1), (1, 2), (2, 1), (0, 2), (2, 0)),
    "300": ARC_ORDER,
}

# mfinder/FANMOD triad ids in the customary motif-figure order.  An id is the
# 3x3 adjacency matrix read row-major as a 9-bit binary number.  The
# feed-forward loop (38) is 5th and the 3-cycle (98) is 9th in this order.
MFINDER_ORDER = (6, 12, 14, 36, 38, 46, 74, 78, 98, 102, 108, 110, 238)

# Conventional pattern numbers for node-specific classes; the numbering is known
# only as a set, keyed by the regular class label.
_NSP_ALIAS_SETS = {"030T": (14, 16, 23), "021C": (1, 5, 10)}

FFL_ROLE_NAMES = {0: "driver", 1: "intermediate", 2: "target"}


def code_from_arcs(arcs) -> int:
    code = 0
    for arc in arcs:
        code |= 1 << _BIT[tuple(arc)]
    return code


def code_to_arcs(code: int) -> list[tuple[int, int]]:
    return [arc for k, arc in enumerate(ARC_ORDER) if code >> k & 1]


def permute_code(code: int, perm) -> int:
    """Relabel local node ``i`` as ``perm[i]``."""
    return code_from_arcs((perm[a], perm[b]) for a, b in code_to_arcs(code))


def is_connected(code: int) -> bool:
    pairs = {frozenset(arc) for arc in code_to_arcs(code)}
    return len(pairs) >= 2


def mfinder_id(code: int) -> int:
    return sum(1 << (8 - (3 * a + b)) for a, b in code_to_arcs(code))


def _canonical_regular(code: int) -> int:
    return min(permute_code(code, p) for p in itertools.permutations(range(3)))


def _canonical_nsp(code: int) -> int:
    return min(code, permute_code(code, (0, 2, 1)))


@dataclass(frozen=True)
class OrbitMap:
    forward: dict[int, int]
    inverse: dict[int, tuple[int, ...]]
    # number of node slots of the regular triad occupied by each ego class
    orbit_size: dict[int, int]


@dataclass(frozen=True)
class Catalog:
    regular_canonical: tuple[int, ...]  # index r-1 -> canonical code
    nsp_canonical: tuple[int, ...]  # index i-1 -> canonical code
    regular_of_code: tuple[int, ...]  # 64 entries, 0 for disconnected
    nsp_of_code: tuple[int, ...]  # 64 entries, ego = local node 0
    all_regular_canonical: tuple[int, ...]  # 16 classes incl. disconnected
    orbits: OrbitMap
    regular_names: dict[int, str]
    regular_motif_order: dict[int, int]
    nsp_aliases: dict[int, tuple[int, ...]]

    @property
    def nsp_by_position(self) -> np.ndarray:
        """``(64, 3)`` table: zero-based ego class of each local node, or -1."""
        return _nsp_by_position()

    @property
    def regular_by_code(self) -> np.ndarray:
        """``(64,)`` table of zero-based regular class per code, or -1."""
        return np.asarray(self.regular_of_code, dtype=np.int64) - 1


@lru_cache(maxsize=1)
def catalog() -> Catalog:
    codes = range(64)
    all_reg = sorted({_canonical_regular(c) for c in codes})
    reg_canon = [c for c in all_reg if is_connected(c)]
    nsp_canon = sorted({_canonical_nsp(c) for c in codes if is_connected(c)})
    reg_id = {c: i + 1 for i, c in enumerate(reg_canon)}
    nsp_id = {c: i + 1 for i, c in enumerate(nsp_canon)}
    regular_of_code = tuple(reg_id.get(_canonical_regular(c), DISCONNECTED) for c in codes)
    nsp_of_code = tuple(nsp_id.get(_canonical_nsp(c), DISCONNECTED) for c in codes)

    forward = {nsp_id[c]: regular_of_code[c] for c in nsp_canon}
    inverse = {r: tuple(sorted(i for i, rr in forward.items() if rr == r)) for r in range(1, N_REGULAR + 1)}
    orbit_size = {}
    for i, c in zip(range(1, N_NSP + 1), nsp_canon):
        # count node slots of the canonical regular triad that land in class i
        rc = reg_canon[forward[i] - 1]
        orbit_size[i] = sum(nsp_of_code[_rotate_ego(rc, pos)] == i for pos in range(3))

    names = {}
    for name, arcs in MAN_EXAMPLES.items():
        r = regular_of_code[code_from_arcs(arcs)]
        if r:
            names[r] = name
    motif_order = {}
    by_mfinder = {mfinder_id(c): c for c in codes}
    for pos, mid in enumerate(MFINDER_ORDER, start=1):
        motif_order[regular_of_code[by_mfinder[mid]]] = pos

    aliases = {}
    for name, numbers in _NSP_ALIAS_SETS.items():
        r = regular_of_code[code_from_arcs(MAN_EXAMPLES[name])]
        for i in inverse[r]:
            aliases[i] = numbers

    return Catalog(
        regular_canonical=tuple(reg_canon),
        nsp_canonical=tuple(nsp_canon),
        regular_of_code=regular_of_code,
        nsp_of_code=nsp_of_code,
        all_regular_canonical=tuple(all_reg),
        orbits=OrbitMap(forward, inverse, orbit_size),
        regular_names=names,
        regular_motif_order=motif_order,
        nsp_aliases=aliases,
    )


def _rotate_ego(code: int, position: int) -> int:
    """Relabel so that local node ``position`` becomes the ego (local node 0)."""
    if position == 0:
        return code
    if position == 1:
        return permute_code(code, (1, 0, 2))
    return permute_code(code, (2, 1, 0))


@lru_cache(maxsize=1)
def _nsp_by_position() -> np.ndarray:
    cat = catalog()
    table = np.full((64, 3), -1, dtype=np.int64)
    for code in range(64):
        for pos in range(3):
            table[code, pos] = cat.nsp_of_code[_rotate_ego(code, pos)] - 1
    table.flags.writeable = False
    return table


def classify_regular(code: int) -> int:
    """Regular class id in ``1..13``, or :data:`DISCONNECTED` (0)."""
    if not 0 <= code < 64:
        raise ValueError(f"triad code out of range: {code}")
    return catalog().regular_of_code[code]


def classify_nsp(code: int) -> int:
    """Ego class id in ``1..30`` with local node 0 as ego, or :data:`DISCONNECTED`."""
    if not 0 <= code < 64:
        raise ValueError(f"triad code out of range: {code}")
    return catalog().nsp_of_code[code]


def classify_nsp_at(code: int, position: int) -> int:
    return classify_nsp(_rotate_ego(code, position))


def orbit_map() -> OrbitMap:
    return catalog().orbits


def alias_table() -> dict[int, tuple[int, ...]]:
    """Conventional pattern numbers for the ego classes where they are known.

    Only set-level aliases are known: the three feed-forward-loop classes carry
    ``(14, 16, 23)`` and the three chain (021C) classes ``(1, 5, 10)``.
    Classes without a known number are absent.
    """
    return dict(catalog().nsp_aliases)


def ffl_regular_class() -> int:
    return classify_regular(code_from_arcs(MAN_EXAMPLES["030T"]))


def ffl_nsp_classes() -> dict[str, int]:
    """Ego class id for the driver, intermediate and target node of a feed-forward loop."""
    code = code_from_arcs(MAN_EXAMPLES["030T"])  # 0 -> 1, 0 -> 2, 1 -> 2
    return {role: classify_nsp_at(code, pos) for pos, role in FFL_ROLE_NAMES.items()}


def regular_label(r: int) -> str:
    cat = catalog()
    return f"reg{r:02d}_{cat.regular_names[r]}"


def nsp_label(i: int) -> str:
    alias = catalog().nsp_aliases.get(i)
    base = f"nsp{i:02d}"
    return f"{base}[{'/'.join(map(str, alias))}]" if alias else base


def _sketch(code: int) -> str:
    """Adjacency matrix rows joined by '/', e.g. ``011/000/010``."""
    rows = []
    for a in range(3):
        rows.append("".join("1" if a != b and code >> _BIT[(a, b)] & 1 else "0" for b in range(3)))
    return "/".join(rows)


def catalog_records() -> tuple[list[dict], list[dict]]:
    cat = catalog()
    om = cat.orbits
    regular = []
    for r, code in enumerate(cat.regular_canonical, start=1):
        regular.append(
            {
                "class_id": r,
                "label": regular_label(r),
                "man": cat.regular_names[r],
                "canonical_code": code,
                "mfinder_id": min(mfinder_id(c) for c in range(64) if cat.regular_of_code[c] == r),
                "motif_order_position": cat.regular_motif_order[r],
                "nsp_classes": list(om.inverse[r]),
                "adjacency": _sketch(code),
            }
        )
    nsp = []
    for i, code in enumerate(cat.nsp_canonical, start=1):
        alias = cat.nsp_aliases.get(i)
        nsp.append(
            {
                "class_id": i,
                "label": nsp_label(i),
                "canonical_code": code,
                "regular_class": om.forward[i],
                "regular_man": cat.regular_names[om.forward[i]],
                "orbit_size": om.orbit_size[i],
                "alias": list(alias) if alias else None,
                "adjacency": _sketch(code),
            }
        )
    return nsp, regular


def dump_catalog(fmt: str = "csv") -> dict[str, str]:
    """Render the catalog as ``{filename: text}``; ``fmt`` is ``"csv"`` or ``"json"``."""
    nsp, regular = catalog_records()
    if fmt == "json":
        text = json.dumps({"node_specific": nsp, "regular": regular}, indent=2, sort_keys=True)
        return {"catalog.json": text + "\n"}
    if fmt != "csv":
        raise ValueError(f"unknown catalog format {fmt!r}")
    out = {}
    for name, rows in (("catalog_nsp.csv", nsp), ("catalog_regular.csv", regular)):
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            row = dict(row)
            for key, val in row.items():
                if isinstance(val, list):
                    row[key] = "|".join(map(str, val))
                elif val is None:
                    row[key] = ""
            writer.writerow(row)
        out[name] = buf.getvalue()
    return out
