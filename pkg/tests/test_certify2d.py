import json
from fractions import Fraction

import pytest

from rsbounds.certify2d import (CertTree, DyadicSquare, SquareRecord,
                                STATUS_BAD, certify_f2, certify_square_g,
                                check_exclusion_region,
                                reflection_reduction_check,
                                square_interior_meets_B)
from rsbounds.dyadic import DyadicPoint
from rsbounds.norms import g_dyadic, f2_dyadic


def test_square_geometry():
    sq = DyadicSquare(5, 12, 3)
    assert sq.x0 == Fraction(5, 8) and sq.x1 == Fraction(6, 8)
    assert sq.side == Fraction(1, 8)
    kids = sq.children()
    assert len(kids) == 4
    child, corner = kids[0]
    assert child == DyadicSquare(10, 24, 4) and corner == (5, 12)
    child, corner = kids[3]
    assert child == DyadicSquare(11, 25, 4) and corner == (6, 13)
    with pytest.raises(ValueError):
        DyadicSquare(-1, 0, 0)


def test_children_satisfy_corner_distance():
    sq = DyadicSquare(3, 2, 2)
    for child, (cx, cy) in sq.children():
        x = Fraction(cx, 1 << sq.k)
        y = Fraction(cy, 1 << sq.k)
        half = Fraction(1, 1 << (sq.k + 1))
        assert max(abs(child.x0 - x), abs(child.x1 - x)) <= half
        assert max(abs(child.y0 - y), abs(child.y1 - y)) <= half


def test_certify_square_g_outside_domain():
    with pytest.raises(ValueError):
        certify_square_g(DyadicSquare(4, 0, 0), 1 << 12)


def test_near_origin_corner_forces_subdivision():
    # g(0, 1) = 2 and sqrt(2) + 3 > sqrt(10): the child of [0,1]x[1,2]
    # adjacent to (0, 1) cannot certify at scale 0
    tree = certify_square_g(DyadicSquare(0, 1, 0), 1 << 12, max_scale=2)
    child = [r for r in tree.records
             if r.square == DyadicSquare(0, 2, 1)]
    assert child and child[0].status == 'subdivided'
    assert g_dyadic(DyadicPoint(0, 0), DyadicPoint(1, 0), 1 << 12).contains(2.0)


def test_single_square_regression_3_3():
    # frozen from the first validated run at this resolution
    tree = certify_square_g(DyadicSquare(3, 3, 0), 1 << 14, max_scale=3)
    counts = (len(tree.certified), len(tree.subdivided), len(tree.bad))
    assert counts == (7, 20, 54)
    leaf, root = tree.area_accounting()
    assert leaf == root == 1


def test_f2_certifies_clean_at_moderate_grid():
    tree, ok = certify_f2(1 << 16, max_scale=6)
    assert ok and not tree.bad
    leaf, root = tree.area_accounting()
    assert leaf == root == 3


def test_f2_corner_values():
    N = 1 << 14
    assert f2_dyadic(DyadicPoint(0, 0), DyadicPoint(4, 0), N).contains(8.0)
    assert f2_dyadic(DyadicPoint(2, 0), DyadicPoint(2, 0), N).hi == 0.0


def test_determinism_across_threads_and_runs():
    a = certify_square_g(DyadicSquare(1, 2, 0), 1 << 13, max_scale=4)
    b = certify_square_g(DyadicSquare(1, 2, 0), 1 << 13, max_scale=4,
                         threads=4)
    assert a.to_csv() == b.to_csv()
    assert json.loads(a.to_json()) == json.loads(b.to_json())


def test_certified_squares_survive_grid_doubling():
    from rsbounds.certify2d import _certified

    tree = certify_square_g(DyadicSquare(1, 2, 0), 1 << 13, max_scale=4)
    sample = tree.certified[::7][:12]
    for rec in sample:
        x = DyadicPoint.from_fraction(rec.corner[0])
        y = DyadicPoint.from_fraction(rec.corner[1])
        hi2 = g_dyadic(x, y, 1 << 14).hi
        assert _certified(hi2, rec.square.k - 1, rec.target_min)


def test_square_interior_meets_B():
    # inside B proper
    assert square_interior_meets_B(DyadicSquare(80, 160, 6))
    # deep inside the lower notch
    assert not square_interior_meets_B(DyadicSquare(10, 10, 6))
    # inside [0,1] x [0,2] notch
    assert not square_interior_meets_B(DyadicSquare(0, 100, 6))
    # x beyond 2: outside B
    assert not square_interior_meets_B(DyadicSquare(160, 100, 6))
    # the strip x in (1, 2), y in (1, 2) belongs to B
    assert square_interior_meets_B(DyadicSquare(70, 70, 6))


def _tree_with_bad(square: DyadicSquare) -> CertTree:
    tree = CertTree(roots=[DyadicSquare(0, 0, 0)], N=1 << 12, max_scale=6,
                    kind='g-bound')
    tree.records.append(SquareRecord(square, STATUS_BAD))
    return tree


def test_exclusion_region_examples():
    # bad square near the critical point: inside the analytic region
    ok, viol = check_exclusion_region(_tree_with_bad(DyadicSquare(80, 160, 6)))
    assert ok and not viol
    # hypothetical bad square at (0.5, 3.0): inside B, outside the region
    ok, viol = check_exclusion_region(_tree_with_bad(DyadicSquare(32, 192, 6)))
    assert not ok and len(viol) == 1
    # empty bad set
    tree = CertTree(roots=[], N=1 << 12, max_scale=6, kind='g-bound')
    ok, viol = check_exclusion_region(tree)
    assert ok and not viol


def test_reflection_reduction():
    assert reflection_reduction_check(1, 12, 1 << 10, seed=5)
    assert reflection_reduction_check(3, 12, 1 << 12, seed=6)


def test_reflection_full_blocks():
    from rsbounds.norms import L_norm_sq
    from rsbounds.sequence import Segment

    for k in (1, 2, 3):
        top = 1 << (k + 2)
        a = L_norm_sq(Segment(1 << (k + 1), top), 1 << 12)
        b = L_norm_sq(Segment(0, 1 << (k + 1)), 1 << 12)
        assert a.contains(float(top)) and b.contains(float(top))


def test_csv_and_json_schema():
    tree = certify_square_g(DyadicSquare(0, 3, 0), 1 << 12, max_scale=2)
    lines = tree.to_csv().strip().splitlines()
    assert lines[0] == 'k,r,s,status'
    assert len(lines) == len(tree.records) + 1
    doc = json.loads(tree.to_json(run='unit'))
    assert doc['kind'] == 'g-bound' and doc['run'] == 'unit'
    assert {r['status'] for r in doc['records']} <= {
        'certified', 'subdivided', 'bad'}
