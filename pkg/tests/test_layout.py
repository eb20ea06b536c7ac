import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bitprobe5.layout import (
    BlockId,
    addresses,
    block_at,
    block_elements,
    block_index,
    block_of,
    derive_params,
    dotted_line_of,
    element_at,
    get_layout,
    iter_blocks,
    locate,
    table_sizes,
)

P64 = derive_params(64, 2, 4, 2)


@st.composite
def small_params(draw, max_n=6):
    x, z, t = (draw(st.integers(1, 4)) for _ in range(3))
    n = draw(st.integers(1, max_n))
    sb = x * x * z * t
    m = draw(st.integers((n - 1) * sb + 1, n * sb))
    return derive_params(m, x, z, t)


def test_derive_params_examples():
    assert (P64.n, P64.superblock_size) == (2, 32)
    p1 = derive_params(1)
    assert (p1.x, p1.z, p1.t, p1.n) == (1, 1, 1, 1)
    big = derive_params(2**30)
    assert (big.x, big.t, big.z) == (32, 32, 1024)


def test_derive_params_clamps():
    p = derive_params(0, 0, -3, 0)
    assert (p.m, p.x, p.z, p.t, p.n) == (1, 1, 1, 1, 1)


@given(st.integers(1, 10**7))
def test_derive_params_invariants(m):
    p = derive_params(m)
    assert min(p.x, p.z, p.t) >= 1
    assert p.n == -(-m // (p.x * p.x * p.z * p.t))
    assert p.universe_size >= m > p.universe_size - p.superblock_size


def test_locate_examples():
    c = locate(P64, 0)
    assert (c.superblock, c.grid, c.col, c.row, c.super_offset) == (1, 0, 0, 0, 0)
    c = locate(P64, 37)
    assert (c.superblock, c.super_offset, c.grid, c.row, c.col) == (2, 5, 0, 1, 1)


def test_locate_out_of_range():
    with pytest.raises(IndexError):
        locate(P64, 64)
    with pytest.raises(IndexError):
        locate(P64, -1)


@given(small_params(), st.data())
def test_locate_inverse(params, data):
    e = data.draw(st.integers(0, params.universe_size - 1))
    c = locate(params, e)
    assert e == (c.superblock - 1) * params.superblock_size + c.super_offset
    assert e == element_at(params, c.superblock, c.grid, c.col, c.row)
    assert c.grid_x == c.grid % params.x and c.grid_y == c.grid // params.x


def test_block_examples():
    assert block_of(P64, 0).key == 0
    assert block_of(P64, 37) == BlockId(2, 0, -1)
    p = derive_params(32, 2, 4, 2)
    keys = {a - 1 * b for a in range(4) for b in range(2)}
    assert keys == {-1, 0, 1, 2, 3}
    assert {block_of(p, e).key for e in range(8)} == keys


def test_dotted_line_examples():
    assert dotted_line_of(P64, BlockId(1, 0, 0)).key == 0
    assert dotted_line_of(P64, BlockId(2, 1, -1)).key == 3


def _brute_sizes(params):
    """Count key slots and dotted-line slots from coordinate ranges."""
    size_t = size_t0 = 0
    for i in range(1, params.n + 1):
        keys = range(0 - i * (params.t - 1), params.z)
        size_t += params.x * params.x * len(keys)
        lines = range(0 - i * (params.x * params.t - 1), params.x * params.z)
        size_t0 += params.t * len(lines)
    return size_t, size_t0, params.superblock_size


def test_table_sizes_examples():
    assert tuple(table_sizes(P64)) == (44, 50, 32)
    assert tuple(table_sizes(P64)) == _brute_sizes(P64)
    assert tuple(table_sizes(derive_params(1))) == (1, 1, 1)


@given(small_params())
def test_table_sizes_match_enumeration(params):
    assert tuple(table_sizes(params)) == _brute_sizes(params)
    assert table_sizes(params).size_t1 == params.x**2 * params.z * params.t


def test_addresses_example():
    assert tuple(addresses(P64, 0)) == (1, 6, 0)


def test_t1_superimposed():
    for e in range(32):
        assert addresses(P64, e).t1_bit == addresses(P64, e + 32).t1_bit


def test_block_hits_distinct_t0_offsets():
    for blk in iter_blocks(P64):
        els = block_elements(P64, blk)
        t0 = {addresses(P64, e).t0_bit for e in els}
        assert len(t0) == len(els)
        if len(els) == P64.t:
            assert len({b % P64.t for b in t0}) == P64.t


@settings(max_examples=40)
@given(small_params())
def test_addressing_injectivity(params):
    seen_t, seen_t0, seen_t1 = {}, {}, {}
    for e in range(params.universe_size):
        c = locate(params, e)
        blk = block_of(params, e)
        line = dotted_line_of(params, blk)
        a = addresses(params, e)
        assert seen_t.setdefault(a.t_bit, blk) == blk
        assert seen_t0.setdefault(a.t0_bit, (line, c.row)) == (line, c.row)
        assert seen_t1.setdefault(a.t1_bit, c.super_offset) == c.super_offset
        assert a.t_bit == block_index(params, blk)
        assert block_at(params, a.t_bit) == blk
    sizes = table_sizes(params)
    assert max(seen_t) < sizes.size_t and max(seen_t0) < sizes.size_t0


@settings(max_examples=40)
@given(small_params())
def test_blocks_partition_universe(params):
    covered = []
    for blk in iter_blocks(params):
        els = block_elements(params, blk)
        assert len(els) <= params.t
        for e in els:
            assert block_of(params, e) == blk
        covered.extend(els)
    assert sorted(covered) == list(range(params.universe_size))


@settings(max_examples=40)
@given(small_params())
def test_block_count_law(params):
    for i in range(1, params.n + 1):
        slots = params.keys_per_grid(i)
        base = (i - 1) * params.superblock_size
        for g in range(params.x * params.x):
            keys = {block_of(params, base + g * params.grid_size + p).key for p in range(params.grid_size)}
            assert keys <= set(range(-i * (params.t - 1), params.z))
            # every key slot is a nonempty line once the run i fits in a row
            if i <= params.z:
                assert len(keys) == slots


@settings(max_examples=40)
@given(small_params())
def test_dotted_line_nesting(params):
    line_of_block = {}
    per_grid_line = set()
    for e in range(params.universe_size):
        blk = block_of(params, e)
        line = dotted_line_of(params, blk)
        c = locate(params, e)
        A = c.grid_x * params.z + c.col
        B = c.grid_y * params.t + c.row
        assert line.key == A - c.superblock * B
        assert line_of_block.setdefault(blk, line) == line
        per_grid_line.add((blk.grid, line, blk))
    pairs = {(g, line) for g, line, _ in per_grid_line}
    assert len(pairs) == len(per_grid_line)
    for i in range(1, params.n + 1):
        keys = {ln.key for ln in line_of_block.values() if ln.superblock == i}
        assert len(keys) <= params.lines_per_superblock(i)
        if i <= params.x * params.z:
            assert len(keys) == params.lines_per_superblock(i)


def test_t1_intersection_exhaustive_small():
    rng = random.Random(5)
    for _ in range(20):
        x, z, t = rng.randint(1, 3), rng.randint(1, 4), rng.randint(1, 4)
        params = derive_params(rng.randint(1, 5) * x * x * z * t, x, z, t)
        blocks = [set(addresses(params, e).t1_bit for e in block_elements(params, b)) for b in iter_blocks(params)]
        for a, b in itertools.combinations(blocks, 2):
            assert len(a & b) <= 1


def test_layout_matches_arithmetic():
    params = derive_params(1000, 3, 5, 2)
    lay = get_layout(params)
    for e in range(params.universe_size):
        assert lay.addresses(e) == addresses(params, e)
        assert lay.superblock[e] == locate(params, e).superblock
