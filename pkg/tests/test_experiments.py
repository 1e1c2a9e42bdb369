import xml.etree.ElementTree as ET
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nsize.errors import PreconditionError, ResourceError
from nsize.experiments import (
    central_mass, histogram_csv, histogram_svg, random_subset_trial, s_table, s_table_csv,
    subset_histogram, superexp_boundary_count, trials_csv, trials_text,
)
from nsize.setmodel import SUPEREXP, mask
from tests.oracles import pascal_row, superexp_block_sum, superexp_member


@pytest.mark.parametrize("n", [2, 10, 100, 1000])
def test_histogram_matches_pascal(n):
    rows = subset_histogram(n)
    assert [r.count for r in rows] == pascal_row(n)
    assert sum(r.count for r in rows) == 2**n
    assert max(rows, key=lambda r: r.count).k == n // 2


def test_histogram_details():
    rows = subset_histogram(10)
    assert rows[5].count == 252 and rows[5].relative == Fraction(252, 1024)
    assert central_mass(subset_histogram(1000), Fraction(1, 20)) > Fraction(99, 100)
    lines = histogram_csv(rows).splitlines()
    assert lines[0] == "k,count,fraction_num,fraction_den,relative_decimal"
    assert lines[6] == "5,252,1,2,0.24609375"


@pytest.mark.parametrize("n,exc", [(3, PreconditionError), (0, PreconditionError), (100002, ResourceError)])
def test_histogram_preconditions(n, exc):
    with pytest.raises(exc):
        subset_histogram(n)


def test_concentration_grows_with_n():
    r = Fraction(1, 20)
    masses = [central_mass(subset_histogram(n), r) for n in (20, 100, 400, 1000)]
    assert masses == sorted(masses)


def test_svg_is_well_formed():
    root = ET.fromstring(histogram_svg(subset_histogram(100)))
    assert root.tag.endswith("svg")
    assert len([c for c in root if c.tag.endswith("rect")]) == 101


def test_s_table_against_brute_force():
    prefix = np.cumsum(mask(SUPEREXP, 2**16))
    for row in s_table(4):
        assert row.n == 2 ** (2**row.k)
        assert row.f == prefix[row.n] == sum(superexp_member(m) for m in range(1, row.n + 1))
    for row in s_table(7):
        assert row.f == superexp_block_sum(row.k) == superexp_boundary_count(row.k)
    assert s_table_csv(s_table(2)).splitlines() == [
        "k,n,f,ratio_num,ratio_den,ratio_decimal", "1,4,2,1,2,0.5", "2,16,2,1,8,0.125"]
    for bad in (0, 8):
        with pytest.raises(PreconditionError):
            s_table(bad)


def test_trials_deterministic_and_independent_of_workers():
    a = random_subset_trial(10_000, 8, 7)
    b = random_subset_trial(10_000, 8, 7, workers=4)
    assert a == b
    assert random_subset_trial(10_000, 3, 7).counts == a.counts[:3]
    assert random_subset_trial(10_000, 8, 8) != a
    assert trials_csv(a) == trials_csv(b)
    assert trials_text(a).startswith("generator PCG64 seed 7 N 10000 trials 8")


def test_single_bit_trial():
    s = random_subset_trial(1, 1, 0)
    assert s.counts in ((0,), (1,)) and s.max_deviation == Fraction(1, 2)


@pytest.mark.parametrize("N,trials,exc", [
    (10, 0, PreconditionError), (0, 5, PreconditionError), (10**6, 1001, ResourceError)])
def test_trial_preconditions(N, trials, exc):
    with pytest.raises(exc):
        random_subset_trial(N, trials, 1)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 300), st.integers(0, 2**32))
def test_counts_are_in_range(N, seed):
    s = random_subset_trial(N, 2, seed)
    assert all(0 <= c <= N for c in s.counts)
