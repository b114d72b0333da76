"""Acceptance gate: ten criteria, one recorded pass/fail line each.

Monte Carlo criteria run at fixed seeds so the suite is deterministic;
frequency assertions use the stated tolerances.  CSV artifacts for the
campaign criteria are persisted under results/.
"""

import math
import time
from fractions import Fraction as F
from itertools import combinations
from pathlib import Path

import numpy as np
import pytest

from fracmatch import (
    ExperimentConfig, HostModel, Hypergraph,
    check_prop3_hypothesis, experiment_implication_sweep, experiment_kout_pfm,
    experiment_stopping_time, has_perfect_fractional_matching,
    independence_number, nu_star, per_vertex_uniformity_check, run_process,
    sample_kout, tau_star, cover_shape,
)
from fracmatch.experiments import derive_seed

from conftest import record_acceptance
from oracles import oracle_alpha, oracle_nu_star, oracle_tau_star

RESULTS = Path(__file__).resolve().parent.parent / "results"


def _random_edge_set(rng, n, r, mmax=30):
    pool = list(combinations(range(n), r))
    m = int(rng.integers(0, min(len(pool), mmax) + 1))
    idx = sorted(rng.choice(len(pool), size=m, replace=False)) if m else []
    return Hypergraph(n, r, [pool[i] for i in idx])


def test_duality_exact_on_random_instances():
    rng = np.random.default_rng(1001)
    t0 = time.perf_counter()
    for _ in range(200):
        r = int(rng.integers(2, 4))
        n = int(rng.integers(r, 13))
        h = _random_edge_set(rng, n, r)
        assert nu_star(h)[0] == tau_star(h)[0]
    elapsed = time.perf_counter() - t0
    assert elapsed < 60
    record_acceptance(
        f"PASS 1: nu* = tau* exactly on 200 random instances "
        f"(r in 2..3, n <= 12) in {elapsed:.1f}s")


@pytest.fixture(scope="module")
def sweep_r3():
    cfg = ExperimentConfig("implication", n=8, r=3, trials=500, seed=42,
                           out=RESULTS / "implication_r3.csv")
    RESULTS.mkdir(exist_ok=True)
    t0 = time.perf_counter()
    result = experiment_implication_sweep(cfg)
    return result, time.perf_counter() - t0


def test_strict_hypothesis_implies_perfection(sweep_r3):
    result, elapsed = sweep_r3
    assert elapsed < 300
    passed = int(result.summary["passed_strict"])
    assert passed >= 10         # the pool must exercise real passers
    record_acceptance(
        f"PASS 2: strict expansion check implied nu* = n/r on all "
        f"{passed} passing instances out of 500 (r=3, n=8) in {elapsed:.1f}s")


def test_nonstrict_hypothesis_implies_unique_uniform_cover(sweep_r3):
    result, _ = sweep_r3
    passed = int(result.summary["passed_nonstrict"])
    assert passed >= 10
    record_acceptance(
        f"PASS 3: non-strict check implied a unique uniform minimum cover "
        f"on all {passed} passing instances out of 500")


def test_graph_equivalence_on_random_graphs():
    cfg = ExperimentConfig("implication", n=10, r=2, trials=500, seed=43,
                           out=RESULTS / "implication_r2.csv")
    RESULTS.mkdir(exist_ok=True)
    result = experiment_implication_sweep(cfg)
    assert int(result.summary["instances"]) == 500
    record_acceptance(
        "PASS 4: neighborhood condition agreed with perfection in both "
        "directions on 500 random graphs (n=10)")


def test_partite_hypothesis_implies_perfection_and_block_constancy():
    RESULTS.mkdir(exist_ok=True)
    total = passed = 0
    for r, b, seed in ((2, 4, 44), (3, 3, 45)):
        cfg = ExperimentConfig("implication", n=b, r=r, host="partite",
                               trials=100, seed=seed,
                               out=RESULTS / f"implication_partite_r{r}.csv")
        result = experiment_implication_sweep(cfg)
        total += 100
        passed += int(result.summary["passed_partite"])
    assert passed >= 10
    record_acceptance(
        f"PASS 5: block expansion check implied PFM + block-constant covers "
        f"on all {passed} passing instances out of {total} partite instances")


def test_perfect_matching_passes_none_of_the_checks():
    h = Hypergraph(3, 3, [(0, 1, 2)])
    assert has_perfect_fractional_matching(h)
    rep = check_prop3_hypothesis(h, strict=True)
    assert not rep.verdict
    assert rep.witness == ((0,), (1,))
    record_acceptance(
        "PASS 6: single-edge instance has a PFM yet fails the strict check "
        "with witness X={0}, Y={1}")


def test_fixed_exact_values():
    k3 = Hypergraph(3, 2, [(0, 1), (0, 2), (1, 2)])
    p3 = Hypergraph(3, 2, [(0, 1), (1, 2)])
    k4 = Hypergraph.complete(4, 2)
    k2 = Hypergraph(2, 2, [(0, 1)])
    fano = Hypergraph(7, 3, [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5),
                             (1, 4, 6), (2, 3, 6), (2, 4, 5)])
    assert nu_star(k3)[0] == F(3, 2) == oracle_nu_star(k3)
    assert nu_star(p3)[0] == F(1) == oracle_nu_star(p3)
    assert nu_star(fano)[0] == F(7, 3) == oracle_nu_star(fano)
    assert independence_number(fano).alpha == 4 == oracle_alpha(fano)
    assert cover_shape(k4).is_unique_uniform
    assert oracle_tau_star(k4) == F(2)
    assert not cover_shape(k2).is_unique_uniform
    record_acceptance(
        "PASS 7: fixed values match independent enumeration "
        "(K3=3/2, P3=1, Fano=7/3 with alpha=4, K4 unique uniform, K2 not)")


def test_sampler_uniform_deterministic_no_isolated():
    host = HostModel("complete", 5, 2)
    check = per_vertex_uniformity_check(host, 1, 40_000, seed=2024)
    chi2_bound = check.dof + 5 * math.sqrt(2 * check.dof)
    assert check.max_abs_z < 5.0
    assert check.chi2 < chi2_bound
    a = sample_kout(host, 1, 3).union
    b = sample_kout(host, 1, 3).union
    assert a == b
    big = HostModel("complete", 30, 3)
    for seed in range(3):
        assert sample_kout(big, 1, seed).union.isolated_vertices() == ()
    record_acceptance(
        f"PASS 8: k-out selections uniform at 5 sigma over 40000 trials "
        f"(chi2 {check.chi2:.1f}, max |z| {check.max_abs_z:.2f}), "
        f"deterministic, never isolated")


def test_stopping_time_campaign():
    RESULTS.mkdir(exist_ok=True)
    t0 = time.perf_counter()
    cfg30 = ExperimentConfig("stopping", n=30, r=3, trials=200, seed=0,
                             out=RESULTS / "stopping_n30.csv")
    res30 = experiment_stopping_time(cfg30)
    elapsed30 = time.perf_counter() - t0
    assert elapsed30 < 600

    for t in range(200):
        seed = derive_seed(0, t)
        trace = run_process(30, 3, seed)
        assert trace.T >= 10
        before, _ = nu_star(trace.hypergraph(trace.T - 1))
        assert before < 10      # the last isolated vertex caps nu*

    freqs = [float(res30.summary["pfm_at_T_frequency"])]
    for n, pos in ((15, 0), (60, 2)):
        cfg = ExperimentConfig("stopping", n=n, r=3, trials=200, seed=0,
                               out=RESULTS / f"stopping_n{n}.csv")
        res = experiment_stopping_time(cfg)
        freqs.insert(pos, float(res.summary["pfm_at_T_frequency"]))
    assert freqs[1] >= freqs[0] - 0.05
    assert freqs[2] >= freqs[1] - 0.05
    record_acceptance(
        f"PASS 9: stopping-time runs (200 trials each) in {elapsed30:.0f}s at "
        f"n=30; T >= 10 and nu*(H_(T-1)) < 10 in every trial; PFM-at-T "
        f"frequency {freqs[0]:.3f} -> {freqs[1]:.3f} -> {freqs[2]:.3f} "
        f"non-decreasing within 0.05 across n = 15, 30, 60")


def test_kout_sweep_monotone_trend():
    RESULTS.mkdir(exist_ok=True)
    cfg = ExperimentConfig("kout-pfm", n=60, r=3, k_range=(1, 30), trials=50,
                           seed=0, out=RESULTS / "kout_sweep_n60.csv")
    result = experiment_kout_pfm(cfg)
    freq = {k: float(result.summary[f"pfm_frequency_k={k}"])
            for k in range(1, 31)}
    assert freq[30] > freq[1]
    first_full = min((k for k in range(1, 31) if freq[k] == 1.0), default=None)
    assert first_full is not None
    record_acceptance(
        f"PASS 10: k-out PFM frequency rose from {freq[1]:.2f} (k=1) to "
        f"{freq[30]:.2f} (k=30), reaching 1.0 at k={first_full} "
        f"(n=60, 50 trials per k)")
