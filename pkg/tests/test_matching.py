from fractions import Fraction as F

import numpy as np
import pytest

from fracmatch import (
    Hypergraph, InputError, cover_shape, has_perfect_fractional_matching,
    nu_star, tau_star,
)
from fracmatch.matching import cover_to_text, matching_to_text

from oracles import oracle_nu_star, oracle_tau_star, scipy_nu_star, verify_pinch


def random_instance(rng, max_n=8):
    r = int(rng.integers(2, 4))
    n = int(rng.integers(r, max_n + 1))
    from itertools import combinations
    pool = list(combinations(range(n), r))
    m = int(rng.integers(0, min(len(pool), 14) + 1))
    idx = sorted(rng.choice(len(pool), size=m, replace=False)) if m else []
    return Hypergraph(n, r, [pool[i] for i in idx])


class TestFixedValues:
    def test_triangle(self, triangle):
        value, fm = nu_star(triangle)
        assert value == F(3, 2)
        assert value == oracle_nu_star(triangle)
        assert fm.is_feasible(triangle)

    def test_path(self, path3):
        value, _ = nu_star(path3)
        assert value == F(1) == oracle_nu_star(path3)

    def test_fano(self, fano):
        value, fm = nu_star(fano)
        assert value == F(7, 3) == oracle_nu_star(fano)
        tau, fc = tau_star(fano)
        assert tau == F(7, 3)
        # uniform 1/3 on lines and on points is a matching/cover pinch
        assert verify_pinch(fano, [F(1, 3)] * 7, [F(1, 3)] * 7, F(7, 3))

    def test_k4(self, k4):
        assert nu_star(k4)[0] == F(2) == oracle_nu_star(k4)

    def test_empty_edge_set(self):
        h = Hypergraph(4, 2, [])
        assert nu_star(h)[0] == 0
        assert tau_star(h)[0] == 0
        assert not has_perfect_fractional_matching(h)

    def test_single_edge_perfect(self, single_edge3):
        assert nu_star(single_edge3)[0] == F(1)
        assert has_perfect_fractional_matching(single_edge3)


class TestDuality:
    def test_fixed_instances(self, triangle, path3, fano, k4, k22):
        for h in (triangle, path3, fano, k4, k22):
            assert nu_star(h)[0] == tau_star(h)[0]

    def test_random_instances(self):
        rng = np.random.default_rng(81)
        for _ in range(60):
            h = random_instance(rng)
            nu, fm = nu_star(h)
            tau, fc = tau_star(h)
            assert nu == tau
            assert fm.is_feasible(h) and fc.is_feasible(h)
            if len(h.edges) <= 6:
                assert nu == oracle_tau_star(h)

    def test_float_tracks_exact(self):
        rng = np.random.default_rng(82)
        for _ in range(40):
            h = random_instance(rng)
            nu_e, _ = nu_star(h)
            nu_f, _ = nu_star(h, "float")
            assert nu_f == pytest.approx(float(nu_e), abs=1e-7)

    def test_scipy_reference(self):
        rng = np.random.default_rng(83)
        for _ in range(30):
            h = random_instance(rng)
            ref = scipy_nu_star(h)
            if ref is None:
                continue
            assert float(nu_star(h)[0]) == pytest.approx(ref, abs=1e-7)


class TestPerfection:
    def test_perfect_iff_loads_all_one(self, fano):
        value, fm = nu_star(fano)
        assert has_perfect_fractional_matching(fano)
        assert all(fm.vertex_load(fano, v) == 1 for v in range(7))

    def test_not_perfect(self, path3):
        assert not has_perfect_fractional_matching(path3)

    def test_float_mode(self, fano, path3):
        assert has_perfect_fractional_matching(fano, "float")
        assert not has_perfect_fractional_matching(path3, "float")

    def test_bad_mode(self, fano):
        with pytest.raises(InputError):
            nu_star(fano, "approximate")


class TestCoverShape:
    def test_k4_unique_uniform(self, k4):
        shape = cover_shape(k4)
        assert shape.tau == F(2)
        assert shape.is_unique_uniform
        assert all(lo == hi == F(1, 2) for lo, hi in shape.ranges)

    def test_k2_not_unique(self, k2):
        shape = cover_shape(k2)
        assert shape.tau == F(1)
        assert not shape.is_unique_uniform
        assert shape.ranges[0] == (F(0), F(1))

    def test_fano_unique_uniform(self, fano):
        shape = cover_shape(fano)
        assert shape.is_unique_uniform
        assert all(lo == hi == F(1, 3) for lo, hi in shape.ranges)

    def test_k22_block_constant_not_unique(self, k22):
        shape = cover_shape(k22)
        assert shape.tau == F(2)
        assert not shape.is_unique_uniform
        assert shape.is_block_constant

    def test_block_constant_none_without_partition(self, k4):
        assert cover_shape(k4).is_block_constant is None

    def test_path_shape(self, path3):
        # w0+w1>=1, w1+w2>=1 at total 1 force w=(0,1,0)
        shape = cover_shape(path3)
        assert shape.tau == F(1)
        assert shape.ranges[1] == (F(1), F(1))
        assert shape.ranges[0] == (F(0), F(0))

    def test_float_mode_rejected(self, k4):
        with pytest.raises(InputError):
            cover_shape(k4, mode="float")


class TestSerialization:
    def test_matching_text(self, triangle):
        value, fm = nu_star(triangle)
        text = matching_to_text(value, fm)
        lines = text.splitlines()
        assert lines[0] == "nu_star 3/2"
        assert len(lines) == 4

    def test_cover_text(self, k4):
        tau, fc = tau_star(k4)
        text = cover_to_text(tau, fc)
        assert text.splitlines()[0] == "tau_star 2"
        assert "1/2" in text
