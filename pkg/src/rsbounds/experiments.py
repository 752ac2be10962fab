"""Empirical reproduction of the extremal tail family, its limiting ratios,
and the constrained root sampling on the unit 3-sphere.

The critical pair m_k = (5 4^k + 1)/3, n_k = (8 4^k + 1)/3 spans 4^k terms.
The tail satisfies the exact one-step recursion

    V_{k+1}(z) = (1 + z) V_k(z^4) + (z^2 - z^3) V_k(-z^4)
                 + z^{m_{k+1}} + z^{n_{k+1}}

with V_0(z) = z^2, which evaluates any V_k at a single point in O(k) work;
direct coefficient summation is the oracle for small k.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .norms import Enclosure, L_norm_sq, sup_norm_sq
from .sequence import Segment, coeff, coeff_range, segment_sum_pm1


def critical_pair(k: int) -> tuple[int, int]:
    if k < 0:
        raise ValueError("k must be non-negative")
    return (5 * 4 ** k + 1) // 3, (8 * 4 ** k + 1) // 3


@dataclass(frozen=True)
class ExtremalPair:
    """Exact critical index pair; n - m = 4^k."""

    k: int

    @property
    def m(self) -> int:
        return critical_pair(self.k)[0]

    @property
    def n(self) -> int:
        return critical_pair(self.k)[1]

    @property
    def segment(self) -> Segment:
        return Segment(self.m, self.n)

    def check_invariants(self) -> bool:
        m, n = self.m, self.n
        ok = 3 * m == 5 * 4 ** self.k + 1 and 3 * n == 8 * 4 ** self.k + 1
        ok = ok and n - m == 4 ** self.k
        if self.k > 0:
            pm, pn = critical_pair(self.k - 1)
            ok = ok and m == 4 * pm - 1 and n == 4 * pn - 1
        return ok and coeff(m) == 1 and coeff(n) == -1


def extremal_values(k: int) -> tuple[int, int]:
    """Exact (V_k(1), V_k(-1)) by integer summation; asserts the closed
    forms 3 * 2^k - 2 and -2^k + 2."""
    if not 0 <= k <= 20:
        raise ValueError("supported range is 0 <= k <= 20")
    pair = ExtremalPair(k)
    at_one, at_minus_one = segment_sum_pm1(pair.segment)
    if at_one != 3 * 2 ** k - 2 or at_minus_one != -(2 ** k) + 2:
        raise AssertionError(
            f"extremal values ({at_one}, {at_minus_one}) disagree with the "
            f"closed forms at k={k}")
    return at_one, at_minus_one


def tail_point(k: int, z: complex) -> complex:
    """V_k(z) via the one-step recursion; O(k) arithmetic.

    Phases z^{m_j} are computed by complex exponentiation, which keeps
    roughly 1e-9 phase accuracy up to k around 14; use tail_point_root for
    exact phase reduction at any k.
    """
    ws = [z]
    for _ in range(k):
        ws.append(ws[-1] ** 4)
    a = b = ws[k] ** 2          # V_0 at +-w is w^2 either way
    for j in range(1, k + 1):
        y = ws[k - j]
        m, n = critical_pair(j)
        pm, pn = y ** m, y ** n
        # m and n are odd for every level, so (-y)^m = -y^m, (-y)^n = -y^n.
        a, b = ((1 + y) * a + (y * y - y ** 3) * b + pm + pn,
                (1 - y) * a + (y * y + y ** 3) * b - pm - pn)
    return a


def tail_point_root(k: int, j: int, N: int) -> complex:
    """V_k at z = exp(2*pi*i*j/N) with exact integer phase reduction."""
    def unit(q: int) -> complex:
        return cmath.exp(2j * cmath.pi * (q % N) / N)

    a = b = unit(2 * j * 4 ** k)
    for lvl in range(1, k + 1):
        q = j * 4 ** (k - lvl)               # y = exp(2 pi i q / N)
        y = unit(q)
        m, n = critical_pair(lvl)
        pm, pn = unit(q * m), unit(q * n)
        a, b = ((1 + y) * a + (y * y - y ** 3) * b + pm + pn,
                (1 - y) * a + (y * y + y ** 3) * b - pm - pn)
    return a


@dataclass(frozen=True)
class MontgomeryReport:
    k: int
    point_ratio: float            # |V_k(exp(3 pi i/4))|^2 / 4^k
    exceeds_nine: bool
    grid_sup_ratio: float | None  # sup-norm-squared enclosure hi / 4^k
    grid_sup_ratio_lo: float | None
    N: int | None
    limit: float = 5.0 + 7.0 / math.sqrt(2.0)


def montgomery_counterexample(k: int, N: int | None = None,
                              max_len: int = 1 << 24) -> MontgomeryReport:
    """Ratio of the squared tail at exp(3*pi*i/4) to its length, plus the
    grid sup-norm ratio when the segment fits the requested grid."""
    if not 0 <= k <= 40:
        raise ValueError("supported range is 0 <= k <= 40")
    # exp(3 pi i / 4) is the N = 8, j = 3 grid root: exact phases.
    val = tail_point_root(k, 3, 8)
    point_ratio = abs(val) ** 2 / 4 ** k
    grid_hi = grid_lo = None
    if N is not None:
        length = 4 ** k
        if length > max_len or N < 4 * length:
            raise ValueError(
                f"grid sup for k={k} needs N >= {4 * length} and "
                f"length <= {max_len}")
        enc = sup_norm_sq(ExtremalPair(k).segment, N)
        grid_hi = enc.hi / 4 ** k
        grid_lo = enc.lo / 4 ** k
    return MontgomeryReport(k=k, point_ratio=point_ratio,
                            exceeds_nine=point_ratio > 9.0,
                            grid_sup_ratio=grid_hi, grid_sup_ratio_lo=grid_lo,
                            N=N)


def L_ratio_lower(k: int, N: int) -> tuple[float, float]:
    """(lower enclosure of the squared L-norm of the critical tail divided
    by 4^k, closed-form floor 10 - 16 2^-k + 8 4^-k).

    For 4^k > N the coefficients are folded mod N, which evaluates the tail
    exactly on the N-grid and still yields a valid lower enclosure.
    """
    pair = ExtremalPair(k)
    length = pair.n - pair.m
    at_one, at_minus_one = segment_sum_pm1(pair.segment)
    exact_pair = float(at_one * at_one + at_minus_one * at_minus_one)
    if length <= N:
        enc = L_norm_sq(pair.segment, N)
        lo = enc.lo
    else:
        folded = np.zeros(N)
        offset = pair.m % N
        chunk = 1 << 22
        for start in range(pair.m, pair.n, chunk):
            stop = min(start + chunk, pair.n)
            a = coeff_range(Segment(start, stop)).astype(np.float64)
            pos = (offset + (start - pair.m)) % N
            idx = np.arange(pos, pos + (stop - start)) % N
            np.add.at(folded, idx, a)
        R = np.abs(np.fft.rfft(folded)) ** 2
        from .evaluate import abs_sq_slack
        lo = float(np.max(R + R[::-1])) - 2.0 * abs_sq_slack(length, N)
    # The exact integer evaluation at z = +-1 is itself a rigorous lower
    # bound and recovers the closed-form floor without grid slack.
    lo = max(lo, exact_pair)
    floor = 10.0 - 16.0 * 2.0 ** -k + 8.0 * 4.0 ** -k
    return lo / 4 ** k, floor


@dataclass(frozen=True)
class DenseLimitRow:
    k: int
    ratio: Enclosure      # sup-norm enclosure of the doubled range / 2^{k/2}
    target: Enclosure     # L-norm enclosure of the base range


def dense_limit_empirical(m: int, n: int, k_max: int,
                          N: int | None = None) -> list[DenseLimitRow]:
    """Ratios r_k = sup-norm of the 2^k-fold index-doubled range over
    2^{k/2}, against the L-norm target of the base range.

    r_k <= target holds for every k (the sup-norm is dominated by the
    L-norm, which scales exactly); the approach to the target is empirical.
    """
    if not 0 <= m < n:
        raise ValueError("need 0 <= m < n")
    # 16x oversampling keeps the off-grid correction below 2 percent.
    base_N = N if N is not None else 1 << max(6, (16 * (n - m) - 1).bit_length())
    target = L_norm_sq(Segment(m, n), base_N).sqrt()
    rows = []
    for k in range(k_max + 1):
        mm, nn = m << k, n << k
        grid = N if N is not None else 1 << max(6, (16 * (nn - mm) - 1).bit_length())
        enc = sup_norm_sq(Segment(mm, nn), grid).sqrt().scale(2.0 ** (-k / 2.0))
        rows.append(DenseLimitRow(k=k, ratio=enc, target=target))
    return rows


@dataclass(frozen=True)
class SphereSampleReport:
    k: int
    count: int
    min_distance: float
    parseval_max_err: float


def sphere_sampler(k: int, z: complex, target: tuple[complex, complex],
                   count: int, seed: int = 0) -> SphereSampleReport:
    """Sample solutions of w^{2^k} = z uniformly at random, map each through
    the normalized pair (P_k(w), Q_k(w)) / 2^{(k+1)/2} on the unit 3-sphere,
    and report the minimum chordal distance to the target direction.

    Empirical density probe only: the report never hard-fails, matching the
    positive-probability nature of the limit statement it illustrates.
    """
    from .evaluate import eval_PQ

    if count < 1:
        raise ValueError("count must be positive")
    order = 1 << k
    if count > order:
        raise ValueError(f"at most 2^{k} distinct roots exist")
    rng = np.random.default_rng(seed)
    if order <= 1 << 22:
        picks = rng.choice(order, size=count, replace=False)
    else:
        picks = rng.integers(0, order, size=count)
    theta = cmath.phase(z)
    scale = 2.0 ** (-(k + 1) / 2.0)
    best = math.inf
    parseval_err = 0.0
    alpha, beta = target
    for el in picks:
        w = cmath.exp(1j * (theta + 2.0 * math.pi * float(el)) / order)
        p, q = eval_PQ(k, w)
        ph, qh = p * scale, q * scale
        parseval_err = max(parseval_err,
                           abs(abs(ph) ** 2 + abs(qh) ** 2 - 1.0))
        dist = math.sqrt(abs(ph - alpha) ** 2 + abs(qh - beta) ** 2)
        best = min(best, dist)
    return SphereSampleReport(k=k, count=count, min_distance=best,
                              parseval_max_err=parseval_err)


def random_sphere_target(rng: np.random.Generator) -> tuple[complex, complex]:
    """Uniform direction on the unit 3-sphere in C^2."""
    v = rng.normal(size=4)
    v /= np.linalg.norm(v)
    return complex(v[0], v[1]), complex(v[2], v[3])
