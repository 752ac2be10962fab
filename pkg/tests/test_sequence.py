import numpy as np
import numpy.testing as npt
import pytest

from rsbounds.sequence import (CapacityError, Segment, block_decompose,
                               coeff, coeff_range, coeff_range_oracle,
                               partial_sum_pm1, pq_coeffs,
                               reconstruct_coefficients, segment_sum_pm1)


def test_coeff_examples():
    assert coeff(0) == 1
    # binary 11 has one adjacent pair; recurrence: a_3 = (-1)^1 a_1 = -1
    assert coeff(3) == -1
    # binary 1011 has exactly one adjacent pair
    assert coeff(11) == -1


def test_coeff_matches_recurrence_oracle():
    n = 1 << 20
    oracle = coeff_range_oracle(n)
    fast = coeff_range(Segment(0, n))
    npt.assert_array_equal(fast, oracle)


def test_coeff_range_examples():
    assert list(coeff_range(Segment(0, 8))) == [1, 1, 1, -1, 1, 1, -1, 1]
    assert list(coeff_range(Segment(2, 3))) == [1]
    assert coeff_range(Segment(0, 0)).size == 0


def test_coeff_range_offsets_match_scalar():
    rng = np.random.default_rng(11)
    for _ in range(20):
        m = int(rng.integers(0, 1 << 40))
        vals = coeff_range(Segment(m, m + 17))
        assert all(int(vals[i]) == coeff(m + i) for i in range(17))


def test_coeff_range_capacity():
    with pytest.raises(CapacityError):
        coeff_range(Segment(0, 1 << 30), max_range=1 << 20)


def test_segment_validation():
    with pytest.raises(ValueError):
        Segment(5, 4)
    with pytest.raises(ValueError):
        Segment(-1, 4)


def test_block_decompose_examples():
    b, = block_decompose(Segment(0, 4)).blocks
    assert (b.offset, b.t, b.kind, b.sign) == (0, 2, 'P', 1)
    b, = block_decompose(Segment(4, 8)).blocks
    assert (b.offset, b.t, b.kind, b.sign) == (4, 2, 'Q', 1)
    b, = block_decompose(Segment(3, 4)).blocks
    assert b.offset == 3 and b.t == 0 and b.sign * 1 == coeff(3) == -1


def test_blocks_reconstruct_coefficients():
    rng = np.random.default_rng(5)
    segs = [Segment(0, 0), Segment(0, 1), Segment(0, 4), Segment(4, 8),
            Segment(3, 4), Segment(7, 11), Segment(5, 77)]
    segs += [Segment(int(m), int(m) + int(l))
             for m, l in zip(rng.integers(0, 4096, 25),
                             rng.integers(0, 2048, 25))]
    for seg in segs:
        dec = block_decompose(seg)
        assert dec.total_length() == seg.length
        npt.assert_array_equal(reconstruct_coefficients(dec),
                               coeff_range(seg))


def test_blocks_are_aligned():
    for seg in [Segment(13, 1000), Segment(129, 1000), Segment(1, 2)]:
        for b in block_decompose(seg).blocks:
            assert b.offset % (1 << b.t) == 0
            assert b.kind == ('P' if (b.offset >> b.t) % 2 == 0 else 'Q')


def test_pq_coeffs_doubling():
    p3, q3 = pq_coeffs(3)
    p4, q4 = pq_coeffs(4)
    npt.assert_array_equal(p4[:8], p3)
    npt.assert_array_equal(p4[8:], q3)
    npt.assert_array_equal(q4[8:], -q3)
    npt.assert_array_equal(p3, coeff_range(Segment(0, 8)))


def test_partial_sums_match_cumsum():
    n = 4096
    a = coeff_range(Segment(0, n)).astype(np.int64)
    s = np.cumsum(a)
    t = np.cumsum(a * np.where(np.arange(n) % 2, -1, 1))
    for i in range(1, n + 1):
        assert partial_sum_pm1(i) == (int(s[i - 1]), int(t[i - 1]))


def test_segment_sums():
    # critical pair k=1: the tail [7, 11) evaluates to 4 at z=1, 0 at z=-1
    assert segment_sum_pm1(Segment(7, 11)) == (4, 0)
    assert segment_sum_pm1(Segment(0, 11)) == (7, 1)
