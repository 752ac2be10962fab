"""Certified interval coverage for the one-dimensional bound on f(x), plus
the direct small-scale norm checks and the brute-force sweep of the
sqrt(6n-2) - 1 sup-norm bound.

Certification rule.  At a dyadic center x = u / 2^k with upper enclosure
f_hi of f(x) and target T, the continuity estimate at dyadic anchors gives

    f(y) <= (sqrt(f(x)) + sqrt(f(|y - x|)))^2     for |y - x| <= 2^{-k-1},

and f(d) is bounded by scaling the piecewise envelope

    B0(v) = 6v on [1, 4/3],  8 on [4/3, 25/16],  9 on [25/16, 2]

into the octave containing d: B(d) = 2^{-t} B0(2^t d) with 2^t d in [1, 2],
taking the smaller value where two octaves meet.  B is nondecreasing, so the
certified radius is the largest r <= 2^{-k-1} with

    sqrt(f_hi) + sqrt(B(r)) <= sqrt(T - margin).

All comparisons are carried out in exact rational arithmetic: with rational
q and beta, sqrt(q) + sqrt(beta) <= sqrt(T') iff q + beta <= T' and
4 q beta <= (T' - q - beta)^2.  The binding constraint records which piece
of B0 (or the half-step cap) limited the radius.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .dyadic import DyadicPoint
from .norms import Enclosure, L_norm_sq, f_dyadic, sup_norm_sq
from .sequence import Segment, segment_sum_pm1

BINDING_LINEAR = 'case-6x'
BINDING_EIGHT = 'case-8'
BINDING_NINE = 'case-9'
BINDING_HALFSTEP = 'half-step'

# Margin policy: every certified inequality must hold with slack at least
# MARGIN_FACTOR times the enclosure width of the f value used.
MARGIN_FACTOR = 2.0

# Dyadic refinement of the case-6x radius (absolute resolution 2^-_RADIUS_BITS).
_RADIUS_BITS = 48


@dataclass(frozen=True)
class CertRecord1D:
    center: DyadicPoint
    k: int
    f_lo: float
    f_hi: float
    target: float
    radius: Fraction
    binding: str
    status: str          # 'certified' | 'failed'

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        x = self.center.fraction
        return (x - self.radius, x + self.radius)

    def to_dict(self) -> dict:
        lo, hi = self.interval
        return {
            'center_binary': self.center.to_binary(),
            'center': float(self.center),
            'k': self.k,
            'f_lo': self.f_lo,
            'f_hi': self.f_hi,
            'target': self.target,
            'radius': float(self.radius),
            'interval': [float(lo), float(hi)],
            'interval_exact': [[lo.numerator, lo.denominator],
                               [hi.numerator, hi.denominator]],
            'binding': self.binding,
            'status': self.status,
        }


@dataclass
class CoverageReport:
    interval: tuple[Fraction, Fraction]
    target: float
    records: list[CertRecord1D]
    covered: bool
    gap_at: Fraction | None = None

    def to_dict(self) -> dict:
        a, b = self.interval
        return {
            'interval': [float(a), float(b)],
            'interval_exact': [[a.numerator, a.denominator],
                               [b.numerator, b.denominator]],
            'target': self.target,
            'covered': self.covered,
            'gap_at': None if self.gap_at is None else float(self.gap_at),
            'records': [r.to_dict() for r in self.records],
        }


def _sqrt_sum_le(q: Fraction, beta: Fraction, t: Fraction) -> bool:
    """Exact test of sqrt(q) + sqrt(beta) <= sqrt(t) for rationals >= 0."""
    if q + beta > t:
        return False
    rest = t - q - beta
    return 4 * q * beta <= rest * rest


def envelope_at(d: Fraction) -> Fraction:
    """Scaled piecewise envelope B(d) for 0 < d <= 1, minimal across the two
    octave representations at dyadic boundary points."""
    if d <= 0 or d > 1:
        raise ValueError("envelope is defined on (0, 1]")
    t = 0
    while d < Fraction(1, 1 << t):
        t += 1
    # Now 2^-t <= d <= 2^{1-t}; v = 2^t d in [1, 2].
    v = d * (1 << t)
    if v <= Fraction(4, 3):
        val = 6 * d
    elif v <= Fraction(25, 16):
        val = Fraction(8, 1 << t)
    else:
        val = Fraction(9, 1 << t)
    if v == 1:
        # The same point is the top of the octave below, whose 9-piece
        # gives the smaller (still valid) bound.
        val = min(val, Fraction(9, 2 << t))
    return val


def max_radius(center: DyadicPoint, target: float, N: int,
               margin_factor: float = MARGIN_FACTOR) -> CertRecord1D:
    """Largest certified radius around a dyadic center for f <= target."""
    enc = f_dyadic(center, N)
    k = center.k
    q = Fraction(enc.hi)
    t_eff = Fraction(target) - Fraction(margin_factor * enc.width)

    def ok(beta: Fraction) -> bool:
        return _sqrt_sum_le(q, beta, t_eff)

    def record(radius: Fraction, binding: str, status: str) -> CertRecord1D:
        return CertRecord1D(center=center, k=k, f_lo=enc.lo, f_hi=enc.hi,
                            target=target, radius=radius, binding=binding,
                            status=status)

    if not ok(Fraction(0)):
        return record(Fraction(0), '', 'failed')

    half = Fraction(1, 1 << (k + 1))
    if ok(envelope_at(half)):
        return record(half, BINDING_HALFSTEP, 'certified')

    for t in range(k + 2, k + 2 + 64):
        if ok(Fraction(9, 1 << t)):
            # Whole octave [2^-t, 2^{1-t}] admissible; capped by its 9-piece.
            return record(Fraction(2, 1 << t), BINDING_NINE, 'certified')
        if ok(Fraction(8, 1 << t)):
            return record(Fraction(25, 16 << t), BINDING_EIGHT, 'certified')
        if ok(Fraction(6, 1 << t)):
            # Invert the 6x piece: largest dyadic r in [2^-t, 4/3 2^-t)
            # with 6r admissible, at resolution 2^-_RADIUS_BITS.
            shift = _RADIUS_BITS - t
            lo_num = 1 << shift                       # r = 2^-t works
            hi_num = (4 << shift) // 3                # 4/3 2^-t fails
            while hi_num - lo_num > 1:
                mid = (lo_num + hi_num) // 2
                if ok(6 * Fraction(mid, 1 << _RADIUS_BITS)):
                    lo_num = mid
                else:
                    hi_num = mid
            return record(Fraction(lo_num, 1 << _RADIUS_BITS),
                          BINDING_LINEAR, 'certified')
    return record(Fraction(0), '', 'failed')


def certify_cover(interval: tuple[Fraction, Fraction], target: float,
                  centers: list[DyadicPoint], N: int,
                  margin_factor: float = MARGIN_FACTOR) -> CoverageReport:
    """Certify f <= target on [a, b] by the union of certified intervals
    around the given centers; the coverage sweep is exact rational."""
    a, b = Fraction(interval[0]), Fraction(interval[1])
    records = [max_radius(c, target, N, margin_factor) for c in centers]
    spans = sorted((r.interval for r in records if r.status == 'certified'),
                   key=lambda iv: iv[0])
    reach = a
    gap = None
    for lo, hi in spans:
        if lo > reach:
            break
        reach = max(reach, hi)
        if reach >= b:
            break
    covered = reach >= b
    if not covered:
        gap = reach
    return CoverageReport(interval=(a, b), target=target, records=records,
                          covered=covered, gap_at=gap)


def load_centers(source) -> list[DyadicPoint]:
    """Center list from a plain-text table, one binary dyadic string per
    line; '#' starts a comment."""
    points = []
    for raw in source:
        line = raw.split('#', 1)[0].strip()
        if line:
            points.append(DyadicPoint.from_binary(line))
    return points


def builtin_centers(table: int) -> list[DyadicPoint]:
    name = f"table{table}_centers.txt"
    text = resources.files('rsbounds.data').joinpath(name).read_text()
    return load_centers(text.splitlines())


@dataclass(frozen=True)
class SmallRangeRecord:
    """One (k, n) pair of the direct small-scale norm check.

    ok_L is the strict squared-L-norm comparison from the stated claim;
    ok_sup is the sup-norm fallback that the surrounding induction actually
    needs, as a non-refutation grid check (the bound holds with equality at
    sharpness points, witnessed exactly by value_at_one).
    """

    k: int
    n: int
    bound: float
    L_enc: Enclosure
    sup_enc: Enclosure
    value_at_one: int
    ok_L: bool
    ok_sup: bool

    @property
    def ok(self) -> bool:
        return self.ok_L or self.ok_sup

    def to_dict(self) -> dict:
        return {
            'k': self.k, 'n': self.n, 'bound': self.bound,
            'L_lo': self.L_enc.lo, 'L_hi': self.L_enc.hi,
            'sup_lo': self.sup_enc.lo, 'sup_hi': self.sup_enc.hi,
            'value_at_one': self.value_at_one,
            'ok_L': self.ok_L, 'ok_sup': self.ok_sup, 'ok': self.ok,
        }


def _auto_grid(n: int) -> int:
    return 1 << max(8, (8 * n - 1).bit_length())


_REFINE_CAP = 1 << 22


def check_smallk_L(kind: str, N: int | None = None
                   ) -> tuple[list[SmallRangeRecord], bool]:
    """Direct norm checks below the scales where the generic estimates take
    over.

    kind 'midrange': k <= 12, 11/8 2^k <= n <= 25/16 2^k, claimed strict
    bound 2^{(k+3)/2} - 1 on the L-norm.  kind 'upper': k <= 6,
    25/16 2^k <= n <= 2^{k+1}, claimed strict bound sqrt(6n-2) - 1.

    The strict L comparison refines the grid until the enclosure clears or
    refutes the bound.  The sup-norm fallback is a non-refutation check (a
    one-sided grid comparison): the bound is attained with equality at the
    sharpness points, so no finite enclosure can certify it strictly there.
    Both results are computed and reported for every pair; neither is
    silently preferred.
    """
    if kind == 'midrange':
        pairs = [(k, n) for k in range(13)
                 for n in range(math.ceil(11 * (1 << k) / 8),
                                math.floor(25 * (1 << k) / 16) + 1)]
        bound_of = lambda k, n: 2.0 ** ((k + 3) / 2) - 1.0
    elif kind == 'upper':
        pairs = [(k, n) for k in range(7)
                 for n in range(math.ceil(25 * (1 << k) / 16), (1 << (k + 1)) + 1)]
        bound_of = lambda k, n: math.sqrt(6 * n - 2) - 1.0
    else:
        raise ValueError(f"unknown kind {kind!r}")

    records = []
    for k, n in pairs:
        grid = N if N is not None else _auto_grid(n)
        bound = bound_of(k, n)
        bound_sq = bound * bound
        while True:
            L_enc = L_norm_sq(Segment(0, n), grid)
            decided = L_enc.hi < bound_sq or L_enc.lo >= bound_sq
            if decided or N is not None or grid >= _REFINE_CAP:
                break
            grid *= 2
        sup_enc = sup_norm_sq(Segment(0, n), grid)
        at_one, _ = segment_sum_pm1(Segment(0, n))
        ok_L = L_enc.hi < bound_sq
        ok_sup = sup_enc.lo <= bound_sq * (1.0 + 1e-12)
        records.append(SmallRangeRecord(k=k, n=n, bound=bound, L_enc=L_enc,
                                        sup_enc=sup_enc, value_at_one=at_one,
                                        ok_L=ok_L, ok_sup=ok_sup))
    return records, all(r.ok for r in records)


@dataclass
class BruteForceReport:
    n_max: int
    N: int
    worst_ratio: float
    worst_n: int
    failures: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def brute_onedim(n_max: int, N: int,
                 ratio_tol: float = 1e-6) -> BruteForceReport:
    """Sweep the sqrt(6n-2) - 1 sup-norm bound for every 1 <= n <= n_max.

    Each n is checked against the grid evaluation (grid maximum plus the
    floating-point slack): a genuine violation of the bound at a grid point
    would be detected.  The bound is attained with equality at
    n = (2 4^k + 1)/3 and the grid contains the maximizer z = 1, so the
    reported worst ratio (sqrt(grid max) + 1)^2 / (6n - 2) reaches exactly 1
    there and stays strictly below 1 elsewhere; ratio_tol covers only the
    floating-point slack.  Certified off-grid control comes from the
    interval coverage of the scaled bound, not from this sweep.
    """
    from .evaluate import abs_sq_slack, half_spectrum

    import numpy as np

    worst, worst_n = 0.0, 0
    failures = []
    for n in range(1, n_max + 1):
        R = half_spectrum(Segment(0, n), N)
        M = float(np.max(np.abs(R) ** 2)) + abs_sq_slack(n, N)
        ratio = (math.sqrt(M) + 1.0) ** 2 / (6 * n - 2)
        if ratio > worst:
            worst, worst_n = ratio, n
        if ratio > 1.0 + ratio_tol:
            failures.append(n)
    return BruteForceReport(n_max=n_max, N=N, worst_ratio=worst,
                            worst_n=worst_n, failures=failures)


def coverage_to_json(report: CoverageReport, **meta) -> str:
    payload = dict(meta)
    payload['coverage'] = report.to_dict()
    return json.dumps(payload, indent=2, sort_keys=True)
