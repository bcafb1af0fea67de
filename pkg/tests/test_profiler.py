import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nospam.catalog import N_NSP, N_REGULAR, ffl_nsp_classes, ffl_regular_class, orbit_map
from nospam.census import census
from nospam.graph import DirectedGraph
from nospam.profiler import (
    DEGENERATE,
    OK,
    UNDEFINED_NEG,
    UNDEFINED_POS,
    ConfigError,
    EnsembleConfig,
    MomentAccumulator,
    histogram,
    map_to_regular,
    network_profile,
    run_ensemble,
    run_nospam3,
    significance_profile,
    z_scores,
)
from nospam.randomizer import EdgeSwitcher

from .conftest import gnm_digraph


def reachable_graphs(g):
    """All graphs reachable from ``g`` by legal switches (breadth-first)."""
    seen = {g.arcs: g}
    frontier = [g]
    while frontier:
        nxt = []
        for h in frontier:
            for bidirectional, dyads in ((False, h.uni_dyads), (True, h.bi_dyads)):
                for i in range(len(dyads)):
                    for j in range(len(dyads)):
                        for flip in (False, True):
                            sw = EdgeSwitcher(h)
                            if sw.try_switch(bidirectional, i, j, flip):
                                k = sw.to_graph()
                                if k.arcs not in seen:
                                    seen[k.arcs] = k
                                    nxt.append(k)
        frontier = nxt
    return list(seen.values())


def test_moments_match_enumeration():
    g = DirectedGraph.from_arcs(6, [(0, 1), (1, 2), (3, 4), (4, 5), (2, 3), (0, 5), (5, 0)])
    states = reachable_graphs(g)
    assert len(states) > 2
    stacked = np.stack([census(h)[0] for h in states])
    acc = MomentAccumulator((g.n_nodes, N_NSP))
    for counts in stacked:
        acc.add(counts)
    assert acc.instances_seen == len(states)
    np.testing.assert_allclose(acc.mean, stacked.mean(axis=0), rtol=0, atol=1e-12)
    np.testing.assert_allclose(acc.std, stacked.std(axis=0, ddof=1), rtol=0, atol=1e-12)


def test_sample_standard_deviation():
    acc = MomentAccumulator(1)
    for x in (1, 2, 3, 6):
        acc.add(np.array([x]))
    assert acc.mean[0] == 3.0
    assert acc.variance[0] == pytest.approx(14 / 3, abs=1e-12)
    z, flags = z_scores(np.array([10]), acc)
    assert z[0] == pytest.approx(7 / math.sqrt(14 / 3), abs=1e-12)
    assert flags[0] == OK


def test_cauchy_schwarz_and_merge():
    rng = np.random.default_rng(0)
    data = rng.integers(0, 50, size=(40, 6, N_NSP))
    whole = MomentAccumulator((6, N_NSP))
    parts = [MomentAccumulator((6, N_NSP)) for _ in range(3)]
    for k, counts in enumerate(data):
        whole.add(counts)
        parts[k % 3].add(counts)
    merged = parts[2].merge(parts[0]).merge(parts[1])
    for name in ("sum", "sum_sq", "min", "max"):
        assert np.array_equal(getattr(whole, name), getattr(merged, name))
    n = whole.instances_seen
    assert np.all(whole.sum_sq >= whole.sum.astype(float) ** 2 / n * (1 - 1e-9))


def test_degenerate_flags():
    acc = MomentAccumulator(4)
    for _ in range(3):
        acc.add(np.array([2, 2, 2, 0]))
    z, flags = z_scores(np.array([2, 5, 1, 0]), acc)
    assert flags.tolist() == [DEGENERATE, UNDEFINED_POS, UNDEFINED_NEG, DEGENERATE]
    assert z[0] == 0 and z[3] == 0
    assert np.isnan(z[1]) and np.isnan(z[2])
    single = MomentAccumulator(4)
    single.add(np.array([1, 1, 1, 1]))
    with pytest.raises(ValueError):
        single.variance


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_z_antisymmetry(seed):
    rng = np.random.default_rng(seed)
    samples = rng.integers(0, 20, size=(12, 5))
    original = rng.integers(0, 20, size=5)
    acc = MomentAccumulator(5)
    mirrored = MomentAccumulator(5)
    for s in samples:
        acc.add(s)
        mirrored.add(-s)
    z, _ = z_scores(original, acc)
    zm, _ = z_scores(-original, mirrored)
    np.testing.assert_array_equal(zm, -z)


def test_map_to_regular():
    om = orbit_map()
    zeros = np.zeros((2, N_NSP))
    assert not map_to_regular(zeros)[0].any()
    z = np.arange(N_NSP, dtype=float)[None, :]
    mapped, _ = map_to_regular(z)
    for r in range(1, N_REGULAR + 1):
        members = om.inverse[r]
        assert mapped[0, r - 1] == pytest.approx(np.mean([z[0, i - 1] for i in members]))
        if len(members) == 1:
            assert mapped[0, r - 1] == z[0, members[0] - 1]
    ffl = ffl_regular_class()
    assert len(om.inverse[ffl]) == 3
    # undefined entries are skipped; all-undefined gives NaN
    z2 = np.zeros((1, N_NSP))
    roles = sorted(ffl_nsp_classes().values())
    z2[0, roles[0] - 1] = np.nan
    z2[0, roles[1] - 1] = 3.0
    flags = np.zeros((1, N_NSP), dtype=np.int8)
    flags[0, roles[0] - 1] = UNDEFINED_POS
    mapped, flagged = map_to_regular(z2, flags)
    assert mapped[0, ffl - 1] == 1.5
    assert flagged[0, ffl - 1] and flagged.sum() == 1
    z2[0, [i - 1 for i in roles]] = np.nan
    assert np.isnan(map_to_regular(z2)[0][0, ffl - 1])


def test_significance_profile():
    sp, ok = significance_profile(np.array([3.0, 4.0, 0.0]))
    assert ok and sp.tolist() == [0.6, 0.8, 0.0]
    sp, ok = significance_profile(np.array([3.0, np.nan, 4.0]))
    assert ok and np.nansum(sp**2) == pytest.approx(1.0, abs=1e-9)
    sp, ok = significance_profile(np.zeros(13))
    assert not ok and np.isnan(sp).all()


def test_histogram_examples():
    edges, counts = histogram(np.zeros(7), bins=10)
    assert counts.sum() == 7 and (counts > 0).sum() == 1
    edges, counts = histogram([0, 0, 0, 10], bins=2)
    assert counts.tolist() == [3, 1]
    assert edges.tolist() == [0.0, 5.0, 10.0]
    # right-open bins, last bin closed
    edges, counts = histogram([0, 5, 10], bins=2)
    assert counts.tolist() == [1, 2]
    with pytest.raises(ValueError):
        histogram([], bins=3)
    with pytest.raises(ValueError):
        histogram([1.0], bins=0)


def test_config_validation():
    with pytest.raises(ConfigError):
        EnsembleConfig(instances=1)
    with pytest.raises(ConfigError):
        EnsembleConfig(workers=0)
    with pytest.raises(ConfigError):
        EnsembleConfig(seed=-1)
    cfg = EnsembleConfig()
    assert cfg.instances == 1000 and cfg.budget.switches_per_edge == 5


def test_cycle_all_degenerate(cycle3):
    prof = run_nospam3(cycle3, EnsembleConfig(instances=3, seed=1, max_attempt_factor=5))
    assert (prof.node_flags == DEGENERATE).all()
    assert not prof.node_z.any()
    assert (prof.network_flags == DEGENERATE).all()
    assert not prof.sp_defined and prof.all_degenerate


def test_ffl_toy_flags(ffl):
    prof = run_nospam3(ffl, EnsembleConfig(instances=2, seed=1, max_attempt_factor=5))
    assert prof.all_degenerate
    assert not np.isnan(prof.ffl_score).any()


def test_profile_consistency():
    g = gnm_digraph(40, 160, 7)
    cfg = EnsembleConfig(instances=30, seed=3)
    ens = run_ensemble(g, cfg)
    om = orbit_map()
    # ego-forgetting identity holds on accumulated sums across the shared ensemble
    for r in range(1, N_REGULAR + 1):
        cols = [i - 1 for i in om.inverse[r]]
        assert ens.nodes.sum[:, cols].sum() == 3 * ens.regular.sum[r - 1]
    prof = run_nospam3(g, cfg)
    np.testing.assert_array_equal(prof.ffl_score, prof.node_mapped[:, ffl_regular_class() - 1])
    if prof.sp_defined:
        assert np.nansum(prof.network_sp**2) == pytest.approx(1.0, abs=1e-9)
    nz, sp = network_profile(g, cfg)
    np.testing.assert_array_equal(nz, prof.network_z)
    rows = np.nansum(prof.node_z_normalized**2, axis=1)
    assert np.all((np.abs(rows - 1) < 1e-9) | (rows == 0))


def test_seed_regression():
    g = gnm_digraph(30, 120, 0)
    prof = run_nospam3(g, EnsembleConfig(instances=20, seed=42))
    again = run_nospam3(g, EnsembleConfig(instances=20, seed=42))
    np.testing.assert_array_equal(prof.node_z, again.node_z)
    other = run_nospam3(g, EnsembleConfig(instances=20, seed=43))
    assert not np.array_equal(np.nan_to_num(prof.node_z), np.nan_to_num(other.node_z))


def test_parallel_matches_sequential():
    g = gnm_digraph(40, 200, 5)
    a = run_ensemble(g, EnsembleConfig(instances=12, seed=9, workers=1))
    b = run_ensemble(g, EnsembleConfig(instances=12, seed=9, workers=3))
    for name in ("sum", "sum_sq", "min", "max"):
        assert np.array_equal(getattr(a.nodes, name), getattr(b.nodes, name))
        assert np.array_equal(getattr(a.regular, name), getattr(b.regular, name))


def test_progress_callback():
    g = gnm_digraph(20, 60, 1)
    calls = []
    run_ensemble(g, EnsembleConfig(instances=4, seed=0), lambda d, t: calls.append((d, t)))
    assert calls == [(1, 4), (2, 4), (3, 4), (4, 4)]
