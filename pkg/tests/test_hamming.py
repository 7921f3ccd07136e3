import math
import random

import pytest

from nrcodes.hamming import (
    KrawtchoukTable,
    complement,
    covers,
    distance,
    from_string,
    krawtchouk,
    sphere,
    support,
    to_string,
    weight,
    weight_masks,
)
from oracles import brute_sphere


def test_weight_examples():
    assert weight(0) == 0
    assert weight((1 << 8) - 1) == 8  # the weight-8 prefix word in 24 coords
    assert weight((1 << 15) - 1) == 15


def test_distance_examples():
    v = 0b1011001
    assert distance(v, v) == 0
    assert distance(v, complement(v, 7)) == 7
    assert distance((1 << 8) - 1, 0) == 8


def test_distance_is_weight_of_sum_and_triangle():
    rng = random.Random(1)
    for _ in range(300):
        m = rng.randrange(1, 25)
        u, v, w = (rng.randrange(1 << m) for _ in range(3))
        assert distance(u, v) == weight(u ^ v)
        assert distance(u, w) <= distance(u, v) + distance(v, w)


def test_complement_involution():
    rng = random.Random(2)
    for _ in range(100):
        m = rng.randrange(1, 25)
        v = rng.randrange(1 << m)
        assert complement(complement(v, m), m) == v
        assert weight(v) + weight(complement(v, m)) == m


def test_covers():
    assert covers(0, 0b10110)
    v = 0b01101
    assert covers(v, v)
    assert not covers(0b011, 0b101)  # support {1,2} vs {1,3}


def test_support():
    assert support(0b1011) == (1, 2, 4)
    assert support(0) == ()


def test_sphere_counts():
    assert len(list(sphere(0, 4, 16))) == 1820
    assert list(sphere(0b1010, 0, 8)) == [0b1010]
    pts = list(sphere(0, 3, 15))
    assert len(pts) == 455
    assert all(weight(p) == 3 for p in pts)


def test_sphere_is_sorted_and_distinct():
    pts = list(sphere(0b110101, 3, 9))
    assert pts == sorted(set(pts))


@pytest.mark.parametrize("m", [4, 6, 9, 12])
def test_sphere_matches_brute_filter(m):
    rng = random.Random(m)
    center = rng.randrange(1 << m)
    for k in range(m + 1):
        assert list(sphere(center, k, m)) == brute_sphere(center, k, m)


@pytest.mark.parametrize("m", [5, 10, 12])
def test_spheres_partition_vertex_space(m):
    total = sum(len(list(sphere(0b1 if m > 1 else 0, k, m))) for k in range(m + 1))
    assert total == 1 << m


def test_sphere_range_errors():
    with pytest.raises(ValueError):
        list(sphere(0, 5, 4))
    with pytest.raises(ValueError):
        list(sphere(0, -1, 4))


def test_weight_masks_gosper():
    masks = list(weight_masks(6, 2))
    assert masks == sorted(masks)
    assert len(masks) == 15
    assert all(m.bit_count() == 2 for m in masks)


def test_krawtchouk_values():
    assert all(krawtchouk(10, 0, x) == 1 for x in range(11))
    assert krawtchouk(16, 1, 6) == 16 - 2 * 6
    # j-sum at m=16, k=2, x=8 expands to C(8,2) - 8*8 + C(8,2)
    assert krawtchouk(16, 2, 8) == 28 - 64 + 28 == -8


def test_krawtchouk_at_zero_is_binomial():
    for m in (5, 12, 16):
        for k in range(m + 1):
            assert krawtchouk(m, k, 0) == math.comb(m, k)


def test_krawtchouk_reflection_symmetry_exhaustive():
    for m in range(1, 17):
        for k in range(m + 1):
            for x in range(m + 1):
                assert krawtchouk(m, k, m - x) == (-1) ** k * krawtchouk(m, k, x)


def test_krawtchouk_table():
    table = KrawtchoukTable(16)
    assert table(2, 8) == -8
    assert all(table(0, x) == 1 for x in range(17))
    with pytest.raises(ValueError):
        krawtchouk(8, 9, 0)
    with pytest.raises(ValueError):
        krawtchouk(8, 0, 9)


def test_text_form_round_trip():
    s = "1011001000110100"
    v, m = from_string(s)
    assert m == 16
    assert to_string(v, m) == s
    assert to_string(1, 4) == "1000"  # coordinate 1 is leftmost
    with pytest.raises(ValueError):
        from_string("01x0")
