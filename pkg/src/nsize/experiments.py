"""Binomial subset histograms, the 𝕊 boundary table and random-subset trials.

Random bits come from numpy's PCG64 generator. Each trial draws from its own
child stream, spawned from ``SeedSequence(seed)``, so a trial's outcome does not
depend on how many trials run or in which order they finish.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import log10

import numpy as np

from .density import decimal_text
from .errors import PreconditionError, ResourceError
from .setmodel import SuperExp

HIST_MAX_N = 10**5
S_TABLE_MAX_K = 7
TRIAL_BUDGET = 10**9
GENERATOR = "PCG64"

# ---------------------------------------------------------------------------
# histogram
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HistogramRow:
    n: int
    k: int
    count: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.k, self.n)

    @property
    def relative(self) -> Fraction:
        return Fraction(self.count, 2**self.n)


def subset_histogram(n: int) -> list[HistogramRow]:
    """Number of k-element subsets of {1..n}, for k = 0..n."""
    if n < 2 or n % 2:
        raise PreconditionError("n must be an even integer >= 2")
    if n > HIST_MAX_N:
        raise ResourceError(f"histogram size {n} exceeds {HIST_MAX_N}")
    rows, c = [], 1
    for k in range(n + 1):
        rows.append(HistogramRow(n, k, c))
        c = c * (n - k) // (k + 1)
    return rows


def central_mass(rows: list[HistogramRow], radius: Fraction) -> Fraction:
    """Exact share of subsets whose density k/n is within ``radius`` of 1/2."""
    half = Fraction(1, 2)
    inside = sum(r.count for r in rows if abs(r.fraction - half) <= radius)
    return Fraction(inside, 2 ** rows[0].n)


HIST_HEADER = ("k", "count", "fraction_num", "fraction_den", "relative_decimal")


def histogram_csv(rows: list[HistogramRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HIST_HEADER)
    for r in rows:
        f = r.fraction
        w.writerow((r.k, r.count, f.numerator, f.denominator, decimal_text(r.relative)))
    return buf.getvalue()


def histogram_text(rows: list[HistogramRow]) -> str:
    return "".join(f"k={r.k} count={r.count} k/n={r.fraction} share={decimal_text(r.relative)}\n"
                   for r in rows)


def _log10_int(x: int) -> float:
    if x <= 0:
        return 0.0
    shift = max(x.bit_length() - 60, 0)
    return log10(x >> shift) + shift * log10(2)


def histogram_svg(rows: list[HistogramRow], width: int = 640, height: int = 360) -> str:
    """Self-contained SVG bar chart of log10(count) against k/n."""
    margin = 40
    logs = [_log10_int(r.count) for r in rows]
    top = max(logs) or 1.0
    bw = (width - 2 * margin) / len(rows)
    bars = []
    for r, lg in zip(rows, logs):
        h = (height - 2 * margin) * lg / top
        x = margin + r.k * bw
        y = height - margin - h
        bars.append(f'<rect x="{x:.3f}" y="{y:.3f}" width="{max(bw, 0.5):.3f}" '
                    f'height="{h:.3f}" fill="#4a6fa5"/>')
    n = rows[0].n
    axis = (f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
            f'y2="{height - margin}" stroke="black"/>')
    labels = (
        f'<text x="{margin}" y="{height - margin / 3:.1f}" font-size="12">0</text>'
        f'<text x="{width / 2:.1f}" y="{height - margin / 3:.1f}" font-size="12" '
        f'text-anchor="middle">1/2</text>'
        f'<text x="{width - margin}" y="{height - margin / 3:.1f}" font-size="12" '
        f'text-anchor="end">1</text>'
        f'<text x="{width / 2:.1f}" y="{margin / 2:.1f}" font-size="14" text-anchor="middle">'
        f'subsets of {{1..{n}}} by density k/n (log10 count, peak {top:.2f})</text>'
    )
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">' + "".join(bars) + axis + labels + "</svg>\n")


# ---------------------------------------------------------------------------
# 𝕊 boundary table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class STableRow:
    k: int
    n: int
    f: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.f, self.n)


def superexp_boundary_count(k: int) -> int:
    """f(2^(2^k)) as the alternating block sum; the last included block ends at k or k-1."""
    top = k if k % 2 else k - 1
    return sum((-1) ** (l + 1) * 2 ** (2**l) for l in range(top + 1))


def s_table(k_max: int) -> list[STableRow]:
    if k_max < 1:
        raise PreconditionError("k_max must be >= 1")
    if k_max > S_TABLE_MAX_K:
        raise PreconditionError(f"k_max must be <= {S_TABLE_MAX_K}")
    sch = SuperExp()
    return [STableRow(k, sch.boundary(k), superexp_boundary_count(k)) for k in range(1, k_max + 1)]


S_TABLE_HEADER = ("k", "n", "f", "ratio_num", "ratio_den", "ratio_decimal")


def s_table_csv(rows: list[STableRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(S_TABLE_HEADER)
    for r in rows:
        q = r.ratio
        w.writerow((r.k, r.n, r.f, q.numerator, q.denominator, decimal_text(q)))
    return buf.getvalue()


def s_table_text(rows: list[STableRow]) -> str:
    return "".join(f"k={r.k} n={r.n} f={r.f} f/n={decimal_text(r.ratio)}\n" for r in rows)


# ---------------------------------------------------------------------------
# random subsets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrialStats:
    N: int
    trials: int
    seed: int
    counts: tuple[int, ...]

    @property
    def deviations(self) -> list[Fraction]:
        half = Fraction(1, 2)
        return [abs(Fraction(c, self.N) - half) for c in self.counts]

    @property
    def max_deviation(self) -> Fraction:
        return max(self.deviations)


_CHUNK_WORDS = 1 << 16


def _count_ones(N: int, seq: np.random.SeedSequence) -> int:
    """Number of ones among N fair bits drawn from one PCG64 stream."""
    rng = np.random.Generator(np.random.PCG64(seq))
    words, rem = divmod(N, 64)
    ones = 0
    while words:
        w = min(words, _CHUNK_WORDS)
        block = rng.integers(0, 2**64, size=w, dtype=np.uint64, endpoint=False)
        ones += int(np.bitwise_count(block).sum())
        words -= w
    if rem:
        last = int(rng.integers(0, 2**64, dtype=np.uint64, endpoint=False))
        ones += bin(last & ((1 << rem) - 1)).count("1")
    return ones


def random_subset_trial(N: int, trials: int, seed: int, workers: int = 1) -> TrialStats:
    """For each trial, the density of N independent fair bits."""
    if N < 1:
        raise PreconditionError("N must be >= 1")
    if trials < 1:
        raise PreconditionError("trials must be >= 1")
    if N * trials > TRIAL_BUDGET:
        raise ResourceError(f"N * trials = {N * trials} exceeds {TRIAL_BUDGET}")
    children = np.random.SeedSequence(seed).spawn(trials)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            counts = list(pool.map(lambda s: _count_ones(N, s), children))
    else:
        counts = [_count_ones(N, s) for s in children]
    return TrialStats(N, trials, seed, tuple(counts))


TRIALS_HEADER = ("trial", "deviation_decimal")


def trials_csv(stats: TrialStats) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRIALS_HEADER)
    for i, d in enumerate(stats.deviations):
        w.writerow((i, decimal_text(d)))
    return buf.getvalue()


def trials_text(stats: TrialStats) -> str:
    head = (f"generator {GENERATOR} seed {stats.seed} N {stats.N} trials {stats.trials} "
            f"max_deviation {decimal_text(stats.max_deviation)}\n")
    return head + "".join(f"trial={i} deviation={decimal_text(d)}\n"
                          for i, d in enumerate(stats.deviations))
