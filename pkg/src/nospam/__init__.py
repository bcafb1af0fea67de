"""Node-specific triad pattern mining for directed networks."""

__version__ = "0.1.0"

from .catalog import (
    catalog,
    classify_nsp,
    classify_regular,
    ffl_nsp_classes,
    ffl_regular_class,
    orbit_map,
    alias_table,
)
from .census import census, nsp_census, nsp_census_oracle, regular_census
from .graph import DirectedGraph, LoadOptions, dyad_partition, load_edge_list
from .profiler import EnsembleConfig, histogram, map_to_regular, network_profile, run_nospam3
from .randomizer import SwitchBudget, randomize, switch_is_legal
