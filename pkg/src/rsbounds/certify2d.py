"""Recursive dyadic-square certification of the two-variable bounds:
g(x, y) <= min(10(x+y), 40) on [0, 4]^2 and f(x, y) <= 10(y - x) on the
reduced parameter region, by corner evaluation plus the continuity bound.

A square of side 2^-k at scale k is split into its four children; each child
is certified from the adjacent parent corner (x, y) (so 2^k x and 2^k y are
integers and every child point is within 2^{-k-1} per axis) via

    sqrt(value_hi(x, y)) + 3 * 2^{-k/2} <= sqrt(target_min(child)),

where target_min is the exact rational infimum of the target over the child.
Children that fail are subdivided; at side 2^-max_scale they are marked bad.
Corner evaluations are memoized on the canonical dyadic key and may be
computed by a thread pool; results are independent of thread count.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .dyadic import DyadicPoint
from .norms import f2_dyadic, g_dyadic

STATUS_CERTIFIED = 'certified'
STATUS_BAD = 'bad'
STATUS_SUBDIVIDED = 'subdivided'

DEFAULT_MAX_SCALE = 6


@dataclass(frozen=True)
class DyadicSquare:
    """[r/2^k, (r+1)/2^k] x [s/2^k, (s+1)/2^k]."""

    r: int
    s: int
    k: int

    def __post_init__(self):
        if self.k < 0 or self.r < 0 or self.s < 0:
            raise ValueError("dyadic square requires non-negative r, s, k")

    @property
    def x0(self) -> Fraction:
        return Fraction(self.r, 1 << self.k)

    @property
    def x1(self) -> Fraction:
        return Fraction(self.r + 1, 1 << self.k)

    @property
    def y0(self) -> Fraction:
        return Fraction(self.s, 1 << self.k)

    @property
    def y1(self) -> Fraction:
        return Fraction(self.s + 1, 1 << self.k)

    @property
    def side(self) -> Fraction:
        return Fraction(1, 1 << self.k)

    def children(self) -> list[tuple["DyadicSquare", tuple[int, int]]]:
        """Four scale-(k+1) children, each with the adjacent parent corner
        (as integer coordinates at scale k)."""
        out = []
        for dr in (0, 1):
            for ds in (0, 1):
                child = DyadicSquare(2 * self.r + dr, 2 * self.s + ds,
                                     self.k + 1)
                out.append((child, (self.r + dr, self.s + ds)))
        return out

    def contained_in(self, x0, y0, x1, y1) -> bool:
        return (self.x0 >= x0 and self.x1 <= x1
                and self.y0 >= y0 and self.y1 <= y1)


@dataclass(frozen=True)
class SquareRecord:
    square: DyadicSquare
    status: str
    corner: tuple[Fraction, Fraction] | None = None
    corner_hi: float | None = None
    target_min: Fraction | None = None

    def to_dict(self) -> dict:
        d = {'k': self.square.k, 'r': self.square.r, 's': self.square.s,
             'status': self.status}
        if self.corner is not None:
            d['corner'] = [float(self.corner[0]), float(self.corner[1])]
            d['corner_hi'] = self.corner_hi
            d['target_min'] = float(self.target_min)
        return d


@dataclass
class CertTree:
    roots: list[DyadicSquare]
    N: int
    max_scale: int
    kind: str
    records: list[SquareRecord] = field(default_factory=list)
    corner_evals: int = 0

    def by_status(self, status: str) -> list[SquareRecord]:
        return [r for r in self.records if r.status == status]

    @property
    def bad(self) -> list[SquareRecord]:
        return self.by_status(STATUS_BAD)

    @property
    def certified(self) -> list[SquareRecord]:
        return self.by_status(STATUS_CERTIFIED)

    @property
    def subdivided(self) -> list[SquareRecord]:
        return self.by_status(STATUS_SUBDIVIDED)

    def area_accounting(self) -> tuple[Fraction, Fraction]:
        """(covered leaf area, root area): equal when the tree is complete."""
        leaf = sum((r.square.side ** 2 for r in self.records
                    if r.status in (STATUS_CERTIFIED, STATUS_BAD)),
                   Fraction(0))
        root = sum((sq.side ** 2 for sq in self.roots), Fraction(0))
        return leaf, root

    def canonical(self) -> None:
        self.records.sort(key=lambda r: (r.square.k, r.square.r, r.square.s))

    def to_json(self, **meta) -> str:
        self.canonical()
        payload = dict(meta)
        payload.update({
            'kind': self.kind,
            'N': self.N,
            'max_scale': self.max_scale,
            'roots': [[sq.r, sq.s, sq.k] for sq in self.roots],
            'summary': {
                'certified': len(self.certified),
                'subdivided': len(self.subdivided),
                'bad': len(self.bad),
                'corner_evals': self.corner_evals,
            },
            'records': [r.to_dict() for r in self.records],
        })
        return json.dumps(payload, indent=2, sort_keys=True)

    def to_csv(self) -> str:
        """Square outcomes, one row per square: k, r, s, status."""
        self.canonical()
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(['k', 'r', 's', 'status'])
        for rec in self.records:
            w.writerow([rec.square.k, rec.square.r, rec.square.s, rec.status])
        return buf.getvalue()


class _CornerCache:
    """Memoized corner evaluations keyed by the canonical dyadic pair."""

    def __init__(self, fn):
        self._fn = fn
        self._vals: dict[tuple[DyadicPoint, DyadicPoint], float] = {}

    @staticmethod
    def key(cx: int, cy: int, k: int) -> tuple[DyadicPoint, DyadicPoint]:
        return (DyadicPoint(cx, k), DyadicPoint(cy, k))

    def get(self, key) -> float:
        return self._vals[key]

    def ensure(self, keys, threads: int) -> None:
        missing = sorted(set(k for k in keys if k not in self._vals),
                         key=lambda p: (p[0].u, p[0].k, p[1].u, p[1].k))
        if not missing:
            return
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                vals = list(pool.map(self._fn, missing))
        else:
            vals = [self._fn(k) for k in missing]
        self._vals.update(zip(missing, vals))

    def __len__(self) -> int:
        return len(self._vals)


def _certified(corner_hi: float, k: int, t_min: Fraction) -> bool:
    """Exact test of sqrt(corner_hi) + 3 * 2^{-k/2} <= sqrt(t_min)."""
    g = Fraction(corner_hi)
    rest = t_min - g - Fraction(9, 1 << k)
    if rest < 0:
        return False
    return 36 * g * Fraction(1, 1 << k) <= rest * rest


def _run(roots: list[DyadicSquare], corner_fn, target_min_fn, N: int,
         max_scale: int, kind: str, threads: int = 1) -> CertTree:
    """Level-synchronous subdivision; deterministic for any thread count."""
    tree = CertTree(roots=list(roots), N=N, max_scale=max_scale, kind=kind)
    cache = _CornerCache(corner_fn)
    frontier = sorted(roots, key=lambda sq: (sq.k, sq.r, sq.s))
    while frontier:
        tasks = []
        for sq in frontier:
            tree.records.append(SquareRecord(sq, STATUS_SUBDIVIDED))
            for child, (cx, cy) in sq.children():
                tasks.append((sq.k, child, cache.key(cx, cy, sq.k)))
        cache.ensure((key for _, _, key in tasks), threads)
        next_frontier = []
        for k, child, key in tasks:
            hi = cache.get(key)
            t_min = target_min_fn(child)
            corner = (key[0].fraction, key[1].fraction)
            if _certified(hi, k, t_min):
                tree.records.append(SquareRecord(child, STATUS_CERTIFIED,
                                                 corner, hi, t_min))
            elif child.k >= max_scale:
                tree.records.append(SquareRecord(child, STATUS_BAD,
                                                 corner, hi, t_min))
            else:
                next_frontier.append(child)
        frontier = next_frontier
    tree.corner_evals = len(cache)
    tree.canonical()
    return tree


def _g_target_min(child: DyadicSquare) -> Fraction:
    """Infimum of min(10(x+y), 40) over the child (at its lower-left corner)."""
    return min(10 * (child.x0 + child.y0), Fraction(40))


def _g_corner_fn(N: int):
    def fn(key: tuple[DyadicPoint, DyadicPoint]) -> float:
        return g_dyadic(key[0], key[1], N).hi
    return fn


def certify_square_g(sq: DyadicSquare, N: int,
                     max_scale: int = DEFAULT_MAX_SCALE,
                     threads: int = 1) -> CertTree:
    """Certify g(x, y) <= min(10(x+y), 40) on one dyadic square in [0, 4]^2."""
    if not sq.contained_in(0, 0, 4, 4):
        raise ValueError(f"square {sq} not contained in [0, 4]^2")
    return _run([sq], _g_corner_fn(N), _g_target_min, N, max_scale,
                kind='g-bound', threads=threads)


def certify_g_full(N: int, max_scale: int = DEFAULT_MAX_SCALE,
                   threads: int = 1) -> CertTree:
    """Certify the g bound over the whole of [0, 4]^2 (16 unit roots)."""
    roots = [DyadicSquare(r, s, 0) for r in range(4) for s in range(4)]
    return _run(roots, _g_corner_fn(N), _g_target_min, N, max_scale,
                kind='g-bound', threads=threads)


def square_interior_meets_B(sq: DyadicSquare) -> bool:
    """Exact test: does the open square meet the interior of the region
    B = ([0,2] x [0,4]) minus ([0,1] x [0,2]) minus ([0,2] x [0,1])?"""
    x0, x1 = max(sq.x0, Fraction(0)), min(sq.x1, Fraction(2))
    y0, y1 = max(sq.y0, Fraction(0)), min(sq.y1, Fraction(4))
    if x0 >= x1 or y0 >= y1:
        return False
    # Some open point must avoid both removed boxes: need y > 1 available,
    # and either x > 1 or y > 2 available.
    return y1 > 1 and (x1 > 1 or y1 > 2)


RED_REGION = (Fraction(1), Fraction(2), Fraction(3, 2), Fraction(3))
# (x0, y0, x1, y1) of the analytically handled region [1, 3/2] x [2, 3].


def check_exclusion_region(tree: CertTree) -> tuple[bool, list[SquareRecord]]:
    """Every bad square meeting the interior of B must lie (as a closed set)
    inside the analytically handled region [1, 3/2] x [2, 3]."""
    x0, y0, x1, y1 = RED_REGION
    violations = [rec for rec in tree.bad
                  if square_interior_meets_B(rec.square)
                  and not rec.square.contained_in(x0, y0, x1, y1)]
    return not violations, violations


F2_ROOTS = [(0, 2), (0, 3), (1, 3)]
# Unit squares of ([0,2] x [2,4]) minus the analytic region [1,2] x [2,3].


def _f2_target_min(child: DyadicSquare) -> Fraction:
    """Infimum of 10(y - x) over the child (at its lower-right corner)."""
    return 10 * (child.y0 - child.x1)


def _f2_corner_fn(N: int):
    def fn(key: tuple[DyadicPoint, DyadicPoint]) -> float:
        return f2_dyadic(key[0], key[1], N).hi
    return fn


def certify_f2(N: int, max_scale: int = DEFAULT_MAX_SCALE,
               threads: int = 1) -> tuple[CertTree, bool]:
    """Certify f(x, y) <= 10(y - x) on ([0,2] x [2,4]) minus [1,2] x [2,3].

    The analytic region is excluded at the root level (region boundaries are
    integers), so the run is sound iff no bad squares remain at all.
    """
    roots = [DyadicSquare(r, s, 0) for r, s in F2_ROOTS]
    tree = _run(roots, _f2_corner_fn(N), _f2_target_min, N, max_scale,
                kind='f2-bound', threads=threads)
    return tree, not tree.bad


def reflection_reduction_check(k: int, samples: int, N: int,
                               seed: int = 0) -> bool:
    """Sampled check of the mirror identity used to halve the 2-D parameter
    space: the L enclosures of [m, n) and [2^{k+2}-n, 2^{k+2}-m) overlap for
    2^{k+1} <= m <= n <= 2^{k+2}."""
    import numpy as np

    from .norms import L_norm_sq
    from .sequence import Segment

    rng = np.random.default_rng(seed)
    top = 1 << (k + 2)
    for _ in range(samples):
        m = int(rng.integers(1 << (k + 1), top + 1))
        n = int(rng.integers(m, top + 1))
        a = L_norm_sq(Segment(m, n), N)
        b = L_norm_sq(Segment(top - n, top - m), N)
        if not a.overlaps(b):
            return False
    return True
