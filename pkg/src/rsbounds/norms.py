"""Rigorous enclosures of squared sup-norms, squared L-norms, and the
derived functions f(x), f(x, y), g(r, s) on unit-circle grids.

Off-grid gap.  For a non-negative trigonometric polynomial F of degree D
sampled at the N-th roots of unity (N > pi*D), the stationary-point argument
with Bernstein's inequality gives

    sup F <= M / (1 - D^2 pi^2 / (2 N^2)),    M = grid maximum:

at the maximizer t* the nearest grid point t_j has |t_j - t*| <= pi/N, and
F(t_j) >= F(t*) - (1/2)(pi/N)^2 sup|F''| >= F(t*)(1 - (1/2) D^2 (pi/N)^2).

The same bound covers the g objective, which is a supremum of the family of
non-negative trigonometric polynomials A(t) + 2 Re(e^{i phi} H(e^{it})) of
degree <= r + s over phases phi; each family member is dominated pointwise
by the objective, so the grid maximum of the objective bounds every member.

Floating-point slack from evaluate.eps_fp widens every enclosure on both
sides; no directed rounding is attempted.
"""

from __future__ import annotations

import math
import threading
from collections import OrderedDict
from dataclasses import dataclass

import numpy as np

from .dyadic import DyadicPoint
from .evaluate import abs_sq_slack, eps_fp, half_spectrum
from .sequence import Segment

DEFAULT_GRID_LOG2 = 20       # desk-scale default
FULL_GRID_LOG2 = 24          # full-fidelity reproduction grid


@dataclass(frozen=True)
class Enclosure:
    """Interval [lo, hi] guaranteed to contain the true quantity."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def overlaps(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def scale(self, factor: float) -> "Enclosure":
        if factor < 0:
            raise ValueError("scale factor must be non-negative")
        return Enclosure(self.lo * factor, self.hi * factor)

    def sqrt(self) -> "Enclosure":
        return Enclosure(math.sqrt(max(self.lo, 0.0)), math.sqrt(max(self.hi, 0.0)))


def _grid_gap(degree: int, N: int) -> float:
    """Relative off-grid correction delta = D^2 pi^2 / (2 N^2)."""
    if degree <= 0:
        return 0.0
    delta = 0.5 * degree * degree * (math.pi / N) ** 2
    if delta >= 0.5:
        raise ValueError(
            f"grid size {N} too small for trigonometric degree {degree}")
    return delta


def _enclose_grid_sup(M: float, degree: int, N: int, slack: float) -> Enclosure:
    delta = _grid_gap(degree, N)
    lo = max(M - slack, 0.0)
    hi = (M + slack) / (1.0 - delta)
    return Enclosure(lo, hi)


def _require_resolution(length: int, N: int) -> None:
    if N < 4 * length:
        raise ValueError(f"grid size {N} below 4 * segment length {length}")


def sup_norm_sq(seg: Segment, N: int) -> Enclosure:
    """Enclosure of the squared sup-norm of the segment on the unit circle."""
    if seg.length == 0:
        return Enclosure(0.0, 0.0)
    _require_resolution(seg.length, N)
    R = half_spectrum(seg, N)
    F = np.abs(R) ** 2
    M = float(np.max(F))
    return _enclose_grid_sup(M, seg.length - 1, N, abs_sq_slack(seg.length, N))


def L_norm_sq(seg: Segment, N: int) -> Enclosure:
    """Enclosure of sup over the circle of |P(z)|^2 + |P(-z)|^2."""
    if seg.length == 0:
        return Enclosure(0.0, 0.0)
    _require_resolution(seg.length, N)
    R = half_spectrum(seg, N)
    F = np.abs(R) ** 2
    M = float(np.max(F + F[::-1]))
    return _enclose_grid_sup(M, seg.length - 1, N,
                             2.0 * abs_sq_slack(seg.length, N))


def f_dyadic(x: DyadicPoint, N: int) -> Enclosure:
    """Enclosure of f(x) = 2^{-k} * (squared L-norm of the prefix 2^k x),
    taken at the canonical (minimal) scale k."""
    if x.u == 0:
        return Enclosure(0.0, 0.0)
    return L_norm_sq(Segment(0, x.u), N).scale(0.5 ** x.k)


def f2_dyadic(x: DyadicPoint, y: DyadicPoint, N: int) -> Enclosure:
    """Enclosure of f(x, y), the squared L-norm of the scaled range [x, y)."""
    if x.fraction > y.fraction:
        raise ValueError(f"need x <= y, got {x} > {y}")
    k = max(x.k, y.k)
    m = x.scaled_numerator(k)
    n = y.scaled_numerator(k)
    if m == n:
        return Enclosure(0.0, 0.0)
    return L_norm_sq(Segment(m, n), N).scale(0.5 ** k)


# Corner evaluation during square certification hits the same prefix
# spectra repeatedly; a bounded LRU keyed by (n, N) removes the duplicate
# transforms.  Entries are read-only.
_PREFIX_CACHE: OrderedDict[tuple[int, int], np.ndarray] = OrderedDict()
_PREFIX_CACHE_LOCK = threading.Lock()
_PREFIX_CACHE_MAX_BYTES = 256 << 20


def _prefix_half_spectrum(n: int, N: int) -> np.ndarray:
    key = (n, N)
    with _PREFIX_CACHE_LOCK:
        if key in _PREFIX_CACHE:
            _PREFIX_CACHE.move_to_end(key)
            return _PREFIX_CACHE[key]
    val = half_spectrum(Segment(0, n), N)
    if val.nbytes <= _PREFIX_CACHE_MAX_BYTES // 4:
        with _PREFIX_CACHE_LOCK:
            _PREFIX_CACHE[key] = val
            total = sum(v.nbytes for v in _PREFIX_CACHE.values())
            while total > _PREFIX_CACHE_MAX_BYTES and len(_PREFIX_CACHE) > 1:
                _, old = _PREFIX_CACHE.popitem(last=False)
                total -= old.nbytes
    return val


def g_int(r: int, s: int, N: int) -> Enclosure:
    """Enclosure of g(r, s) through the alpha-free objective

        |P_{<r}(z)|^2 + |P_{<r}(-z)|^2 + |P_{<s}(z)|^2 + |P_{<s}(-z)|^2
            + 2 |P_{<s}(z) P_{<r}(-z) - P_{<s}(-z) P_{<r}(z)|

    maximized over the N-grid with antipodal index pairing.
    """
    if r < 0 or s < 0:
        raise ValueError("g_int needs non-negative integer arguments")
    if r == 0 and s == 0:
        return Enclosure(0.0, 0.0)
    if r == 0 or s == 0:
        # One factor is the empty sum: the objective collapses to the
        # squared L-norm of the other prefix.
        return L_norm_sq(Segment(0, max(r, s)), N)
    _require_resolution(max(r, s), N)
    Rr = _prefix_half_spectrum(r, N) if r else None
    Rs = _prefix_half_spectrum(s, N) if s else None
    # half_spectrum[j] = conj(P(z_j)); antipode P(-z_j) = conj(spec[N/2-j]).
    G = np.zeros(N // 2 + 1)
    if Rr is not None:
        Fr = np.abs(Rr) ** 2
        G += Fr + Fr[::-1]
    if Rs is not None:
        Fs = np.abs(Rs) ** 2
        G += Fs + Fs[::-1]
    if Rr is not None and Rs is not None:
        # P_s(z_j) = conj(Rs[j]) and P_r(-z_j) = Rr[N/2 - j], so the cross
        # term P_s(z) P_r(-z) - P_s(-z) P_r(z) mixes conjugated and
        # reversed spectra; its modulus is j <-> N/2 - j symmetric.
        H = np.conj(Rs) * Rr[::-1] - Rs[::-1] * np.conj(Rr)
        G += 2.0 * np.abs(H)
    M = float(np.max(G))
    er, es = eps_fp(r, N), eps_fp(s, N)
    slack = 2.0 * (abs_sq_slack(r, N) + abs_sq_slack(s, N))
    slack += 2.0 * (s * er + r * es + er * es)
    return _enclose_grid_sup(M, r + s, N, slack)


def g_dyadic(x: DyadicPoint, y: DyadicPoint, N: int) -> Enclosure:
    """Enclosure of g(x, y) = 2^{-k} g(2^k x, 2^k y) at the common minimal
    scale k."""
    k = max(x.k, y.k)
    return g_int(x.scaled_numerator(k), y.scaled_numerator(k), N).scale(0.5 ** k)
