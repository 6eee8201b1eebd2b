"""Combinatorial side: counts, spectral identities, exact search."""

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from b2gbounds import (
    BudgetError,
    CosineSeries,
    IntSet,
    ValidationError,
    d_identity_residual,
    diff_profile,
    enumerate_b2g,
    exhaustive_f,
    f_table,
    greedy_lower,
    is_b2g,
    s_comb,
    s_dft,
    sdft_inequality_scan,
)

from conftest import make_series


def brute_b2g(elems, g):
    """Reference predicate straight from the definition."""
    counts = {}
    elems = list(elems)
    for i, a in enumerate(elems):
        for b in elems[i:]:
            counts[a + b] = counts.get(a + b, 0) + 1
    return all(v <= g for v in counts.values())


def test_intset_validation():
    with pytest.raises(ValidationError):
        IntSet(elems=(3, 1), n=5)
    with pytest.raises(ValidationError):
        IntSet(elems=(1, 1), n=5)
    with pytest.raises(ValidationError):
        IntSet(elems=(0, 6), n=5)
    with pytest.raises(ValidationError):
        IntSet(elems=(0,), n=-1)
    assert IntSet(elems=(), n=0).size == 0


def test_is_b2g_known_cases():
    assert is_b2g(IntSet((0, 1, 3), 3), 1)
    assert not is_b2g(IntSet((0, 1, 2, 3), 3), 1)  # 0+3 = 1+2
    assert is_b2g(IntSet((0, 1, 2, 3), 3), 2)
    assert not is_b2g(IntSet((0, 1, 2, 3, 4), 4), 2)  # 0+4 = 1+3 = 2+2
    with pytest.raises(ValidationError):
        is_b2g(IntSet((0, 1), 1), 0)


def test_diff_profile_explicit():
    profile = diff_profile(IntSet((0, 1, 3), 3)).counts
    assert profile == {0: 3, 1: 1, -1: 1, 2: 1, -2: 1, 3: 1, -3: 1}
    assert s_comb(IntSet((0, 1, 3), 3)) == 6


def test_s_dft_explicit_values():
    # ambient N matters: the +-N residues fold together on the 2N grid
    assert s_dft(IntSet((0, 1, 3), 3)) == pytest.approx(8.0, abs=1e-9)
    assert s_dft(IntSet((0, 1, 3), 5)) == pytest.approx(6.0, abs=1e-9)
    with pytest.raises(ValidationError):
        s_dft(IntSet((), 0))


def test_wraparound_identity(rng):
    for _ in range(200):
        n = int(rng.integers(1, 28))
        mask = rng.random(n + 1) < 0.5
        elems = tuple(int(i) for i in range(n + 1) if mask[i])
        a = IntSet(elems, n)
        d_n = diff_profile(a).counts.get(n, 0)
        assert s_dft(a) == pytest.approx(s_comb(a) + 2 * d_n * d_n, abs=1e-9)


def test_identity_residual_small(rng):
    from b2gbounds import eval_w

    for _ in range(100):
        n = int(rng.integers(1, 25))
        mask = rng.random(n + 1) < 0.5
        a = IntSet(tuple(int(i) for i in range(n + 1) if mask[i]), n)
        series = make_series(rng, k_max=6, fmax=12.0)
        lhs = sum(
            count * eval_w(series, diff / n)
            for diff, count in diff_profile(a).counts.items()
        )
        assert d_identity_residual(a, series) < 1e-9 * (1.0 + abs(lhs))
    with pytest.raises(ValidationError):
        d_identity_residual(IntSet((), 0), make_series(rng))


def test_enumeration_matches_powerset():
    for g in (1, 2):
        for n in (0, 1, 4, 7, 10):
            expected = set()
            universe = range(n + 1)
            for k in range(n + 2):
                for combo in combinations(universe, k):
                    if brute_b2g(combo, g):
                        expected.add(combo)
            got = set(enumerate_b2g(g, n))
            assert got == expected, (g, n)


def test_exhaustive_small_cases():
    assert exhaustive_f(1, 7) == (4, IntSet((0, 1, 3, 7), 7))
    size, wit = exhaustive_f(1, 3)
    assert size == 3 and wit.elems == (0, 1, 3)
    assert exhaustive_f(1, 0)[0] == 1
    assert exhaustive_f(2, 1)[0] == 2


def test_exhaustive_matches_enumeration_oracle():
    for g in (1, 2):
        for n in (1, 3, 6, 9, 11):
            sets = [s for s in enumerate_b2g(g, n)]
            best_size = max(len(s) for s in sets)
            lex_first = min(s for s in sets if len(s) == best_size)
            size, wit = exhaustive_f(g, n)
            assert size == best_size, (g, n)
            assert wit.elems == lex_first, (g, n)


def test_known_sidon_values():
    # perfect difference rulers: F(1, N) along classical milestones
    for n, f in [(3, 3), (6, 4), (11, 5), (17, 6), (25, 7)]:
        assert exhaustive_f(1, n)[0] == f


def test_threaded_matches_sequential():
    for g in (1, 2):
        for n in (8, 13, 17):
            seq = exhaustive_f(g, n, threads=1)
            par = exhaustive_f(g, n, threads=4)
            assert seq == par, (g, n)


def test_budget_error_carries_lower_bound():
    with pytest.raises(BudgetError) as info:
        exhaustive_f(2, 14, budget=50)
    err = info.value
    assert err.nodes > 50
    assert err.size == err.witness.size >= 1
    assert is_b2g(err.witness, 2)
    assert "NOT exact" in str(err)


def test_budget_large_enough_is_silent():
    size, _ = exhaustive_f(1, 8, budget=10**7)
    assert size == 4


def test_greedy_is_valid_and_dominated():
    for g in (1, 2):
        for n in (5, 9, 12):
            lower = greedy_lower(g, n)
            assert is_b2g(lower, g)
            assert lower.size <= exhaustive_f(g, n)[0]
    # greedy g=1 from 0 reproduces the classical greedy non-averaging prefix
    assert greedy_lower(1, 20).elems == (0, 1, 3, 7, 12, 20)


def test_f_table_shape_and_monotonicity():
    rows = f_table([1, 2], 10)
    assert len(rows) == 22
    by_g = {1: [], 2: []}
    for g, n, size, wit in rows:
        by_g[g].append(size)
        assert IntSet(wit, n).size == size
    for g, sizes in by_g.items():
        assert all(a <= b for a, b in zip(sizes, sizes[1:])), (g, sizes)
    for f1, f2 in zip(by_g[1], by_g[2]):
        assert f1 <= f2


def test_inequality_scan_small():
    report = sdft_inequality_scan(1, 8)
    assert report.violations == 0
    assert report.max_ratio <= 1.0 + 1e-12
    expected = sum(len(list(enumerate_b2g(1, n))) for n in range(1, 9))
    assert report.checked == expected


subset_strategy = st.lists(
    st.integers(min_value=0, max_value=24), min_size=0, max_size=12, unique=True
)


@settings(max_examples=150, deadline=None)
@given(elems=subset_strategy, g=st.integers(min_value=1, max_value=3))
def test_b2g_is_monotone_in_g_and_subsets(elems, g):
    elems = tuple(sorted(elems))
    a = IntSet(elems, 24)
    if is_b2g(a, g):
        assert is_b2g(a, g + 1)
        if elems:
            smaller = IntSet(elems[:-1], 24)
            assert is_b2g(smaller, g)
    assert is_b2g(a, g) == brute_b2g(elems, g)


@settings(max_examples=100, deadline=None)
@given(elems=st.lists(st.integers(min_value=0, max_value=15), min_size=1, max_size=10, unique=True))
def test_sdft_dominates_scomb(elems):
    a = IntSet(tuple(sorted(elems)), 15)
    assert s_dft(a) >= s_comb(a) - 1e-9
