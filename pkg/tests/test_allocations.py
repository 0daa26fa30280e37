from itertools import product
from math import comb, fsum

import numpy as np
import pytest
from hypothesis import given, strategies as st

from scenariorisk import AllocationSpec, DomainError, MultiIndex, PsiSpec, Scheme, Theorem1Choice, psi_eval_many
from scenariorisk.allocations import (
    check_feasibility, lambda_at, region_function, region_grid, scalar_band_function, theorem1_interval,
    theorem1_upper_ends,
)


def all_indices(H):
    return [MultiIndex(h) for h in product(*(range(x + 1) for x in H))]


def exhaustive_g(alloc, k, v):
    """The region function summed entry by entry over 0 <= h <= H."""
    t = 1.0 - np.asarray(v, dtype=float)
    terms = []
    for h in all_indices(alloc.H):
        lam = lambda_at(alloc, h)
        if lam == 0.0:
            continue
        if not MultiIndex(tuple(k)).leq(h):
            continue
        term = lam
        for hi, ni, ki, ti in zip(h, alloc.N, k, t):
            term *= comb(hi, ki) / comb(ni, ki) * ti ** (hi - ni)
        terms.append(term)
    return fsum(terms)


small_shapes = st.lists(st.tuples(st.integers(1, 5), st.integers(0, 3)), min_size=1, max_size=3)


class TestSchemes:
    @pytest.mark.parametrize("scheme", [Scheme.UNIFORM, Scheme.AXIAL, Scheme.DIAGONAL])
    @given(shape=small_shapes, beta=st.floats(1e-4, 0.5))
    def test_weights_sum_to_one_minus_beta(self, scheme, shape, beta):
        N = [n for n, _ in shape]
        H = [n + extra for n, extra in shape]
        alloc = AllocationSpec.from_name(scheme, N, H, beta)
        weights = [lambda_at(alloc, h) for h in all_indices(alloc.H)]
        assert fsum(weights) == pytest.approx(1.0 - beta, abs=1e-12)
        assert lambda_at(alloc, alloc.N) == 1.0
        assert all(w <= 0.0 for h, w in zip(all_indices(alloc.H), weights) if h != alloc.N)
        assert check_feasibility(alloc).ok

    def test_uniform_matches_exhaustive_sum(self):
        alloc = AllocationSpec.uniform((3, 3), (4, 4), 0.1)
        assert alloc.support_size == 24
        k = MultiIndex.of(1, 1)
        assert region_function(alloc, k, [0.2, 0.3]) == pytest.approx(exhaustive_g(alloc, k, [0.2, 0.3]), rel=1e-12)

    def test_axial_as_custom_is_feasible(self):
        axial = AllocationSpec.axial((3, 4), (6, 8), 0.05)
        entries = {h: lambda_at(axial, h) for h in all_indices(axial.H) if lambda_at(axial, h) != 0.0}
        custom = AllocationSpec.custom((3, 4), (6, 8), 0.05, entries)
        report = check_feasibility(custom)
        assert report.ok, report.violations
        assert abs(report.deviation) <= 1e-12

        k = MultiIndex.of(1, 2)
        points = np.array([[0.1, 0.2], [0.05, 0.4], [0.3, 0.0]])
        expected = [exhaustive_g(axial, k, p) for p in points]
        np.testing.assert_allclose(region_function(axial, k, points), expected, rtol=1e-11)
        np.testing.assert_allclose(region_function(custom, k, points), expected, rtol=1e-11)

    def test_custom_violations_are_reported(self):
        beta = 0.1
        positive = AllocationSpec.custom((2,), (2,), beta, {(2,): 1.0, (1,): 0.1, (0,): -0.1 - beta})
        report = check_feasibility(positive)
        assert not report.ok
        assert any("positive" in v for v in report.violations)

        too_big = AllocationSpec.custom((2,), (2,), beta, {(2,): 1.2, (0,): -0.2 - beta})
        assert any("exceeds 1" in v for v in check_feasibility(too_big).violations)

        wrong_total = AllocationSpec.custom((2,), (2,), beta, {(2,): 1.0, (0,): -0.01})
        assert any("sum" in v for v in check_feasibility(wrong_total).violations)

    def test_invalid_specs(self):
        with pytest.raises(DomainError):
            AllocationSpec.uniform((3, 3), (2, 4), 0.1)
        with pytest.raises(DomainError):
            AllocationSpec.from_name("custom", (3,), (3,), 0.1)
        with pytest.raises(DomainError):
            AllocationSpec.custom((3,), (3,), 0.1, {(4,): -0.1})
        with pytest.raises(ValueError):
            AllocationSpec.from_name("spiral", (3,), (3,), 0.1)


class TestRegionFunction:
    @given(
        st.lists(st.tuples(st.integers(1, 30), st.integers(0, 10)), min_size=1, max_size=4),
        st.floats(1e-6, 0.3), st.data(),
    )
    def test_diagonal_is_psi_of_the_product(self, shape, beta, data):
        N = MultiIndex(tuple(n for n, _ in shape))
        H = MultiIndex(tuple(n + e for n, e in shape))
        k = MultiIndex(tuple(data.draw(st.integers(0, n)) for n in N))
        v = np.asarray(data.draw(st.lists(st.floats(0.0, 0.9), min_size=len(N), max_size=len(N))))
        alloc = AllocationSpec.diagonal(N, H, beta)
        expected = psi_eval_many(PsiSpec(k, N, H, beta), np.prod(1.0 - v))
        assert region_function(alloc, k, v) == pytest.approx(float(expected), rel=1e-10, abs=1e-12)

    @pytest.mark.parametrize("scheme", [Scheme.UNIFORM, Scheme.AXIAL, Scheme.DIAGONAL])
    def test_grid_agrees_with_pointwise(self, scheme):
        alloc = AllocationSpec.from_name(scheme, (20, 30), (25, 30), 0.01)
        k = MultiIndex.of(2, 3)
        axes = [np.linspace(0.0, 0.6, 13), np.linspace(0.0, 0.5, 11)]
        grid = region_grid(alloc, k, axes)
        mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, 2)
        np.testing.assert_allclose(grid.reshape(-1), region_function(alloc, k, mesh), rtol=1e-10, atol=1e-12)

    @pytest.mark.parametrize("scheme", [Scheme.UNIFORM, Scheme.AXIAL, Scheme.DIAGONAL])
    def test_single_criterion_reduces_to_interval(self, scheme):
        N, k, beta = 100, 10, 1e-3
        eps_hi = theorem1_interval(N, k, beta).eps_hi
        alloc = AllocationSpec.from_name(scheme, (N,), (N,), beta)
        assert region_function(alloc, (k,), [eps_hi - 1e-6]) >= 0
        assert region_function(alloc, (k,), [eps_hi + 1e-6]) < 0

    def test_domain_errors(self):
        alloc = AllocationSpec.uniform((5, 5), (5, 5), 0.1)
        with pytest.raises(DomainError):
            region_function(alloc, (6, 0), [0.1, 0.1])
        with pytest.raises(DomainError):
            region_function(alloc, (1, 1), [1.2, 0.1])
        with pytest.raises(DomainError):
            region_function(alloc, (1, 1), [1.0, 0.1])
        assert region_function(alloc, (5, 1), [1.0, 0.1]) == pytest.approx(
            exhaustive_g(alloc, MultiIndex.of(5, 1), [1.0, 0.1]), rel=1e-12)


class TestTheorem1:
    def test_reference_value(self):
        assert theorem1_interval(1000, 100, 1e-5).eps_hi == pytest.approx(0.158, abs=2e-3)

    def test_full_complexity_is_vacuous(self):
        interval = theorem1_interval(40, 40, 0.01)
        assert (interval.eps_lo, interval.eps_hi) == (0.0, 1.0)
        assert theorem1_interval(40, 40, 0.01, Theorem1Choice.THREE_BAND).eps_hi == 1.0

    @given(st.integers(5, 300), st.data())
    def test_monotone_in_beta_and_k(self, N, data):
        k = data.draw(st.integers(0, N - 1))
        b1, b2 = sorted(data.draw(st.lists(st.floats(1e-8, 0.5), min_size=2, max_size=2)))
        for choice in Theorem1Choice:
            loose = theorem1_interval(N, k, b1, choice)
            tight = theorem1_interval(N, k, b2, choice)
            assert tight.eps_hi <= loose.eps_hi + 1e-9
            assert tight.eps_lo >= loose.eps_lo - 1e-9
            assert theorem1_interval(N, k + 1, b1, choice).eps_hi >= loose.eps_hi - 1e-9

    def test_three_band_dense_scan(self):
        N, k, beta = 50, 5, 0.05
        interval = theorem1_interval(N, k, beta, Theorem1Choice.THREE_BAND)
        ts = np.linspace(0.0, 1.0, 2 * 10**5 + 1)[1:]
        f = np.ones_like(ts)
        for j in range(1, N - k + 1):
            f -= beta / (2 * N) * comb(N - j, k) / comb(N, k) * ts ** (-float(j))
        for j in range(1, 3 * N + 1):
            f -= beta / (6 * N) * comb(N + j, k) / comb(N, k) * ts ** j
        inside = ts[f >= 0]
        spacing = ts[1] - ts[0]
        assert interval.eps_hi == pytest.approx(1.0 - inside[0], abs=2 * spacing)
        assert interval.eps_lo == pytest.approx(1.0 - inside[-1], abs=2 * spacing)
        assert 0.0 < interval.eps_lo < k / N < interval.eps_hi

    def test_band_function_matches_interval_ends(self):
        interval = theorem1_interval(200, 12, 1e-4, Theorem1Choice.THREE_BAND)
        f = interval.function()
        assert f(1.0 - interval.eps_hi) == pytest.approx(0.0, abs=1e-6)
        assert f(1.0 - (interval.eps_lo + interval.eps_hi) / 2) > 0

    def test_band_function_validation(self):
        with pytest.raises(DomainError):
            scalar_band_function(10, 11, 10, -0.1, 0.0)
        with pytest.raises(DomainError):
            scalar_band_function(10, 1, 10, 0.1, 0.0)

    @pytest.mark.parametrize("choice", list(Theorem1Choice))
    @pytest.mark.parametrize("N, k_max, beta", [(1000, 100, 1e-5), (1000, 100, 1e-8), (60, 60, 0.05), (7, 20, 0.3)])
    def test_batched_upper_ends_match_scalar(self, N, k_max, beta, choice):
        ends = theorem1_upper_ends(N, k_max, beta, choice)
        assert ends.shape == (min(k_max, N) + 1,)
        for k in {0, 1, min(k_max, N) // 2, min(k_max, N) - 1, min(k_max, N)}:
            assert ends[k] == pytest.approx(theorem1_interval(N, k, beta, choice).eps_hi, abs=1e-8)
        assert np.all(np.diff(ends) >= -1e-9)

    def test_batched_upper_ends_validation(self):
        with pytest.raises(DomainError):
            theorem1_upper_ends(0, 3, 0.1)
        with pytest.raises(DomainError):
            theorem1_upper_ends(10, 3, 1.5)
