"""Geometry and addressing for the five-element two-probe scheme.

The universe is cut into ``n`` superblocks of ``x*x*z*t`` elements. Each
superblock is an ``x`` by ``x`` array of grids, each grid having ``z``
columns and ``t`` rows. In superblock ``i`` (1-based) a block is the set of
grid points with equal key ``a - i*b``; a dotted line is the set of points
of the whole superblock with equal key ``A - i*B`` in global coordinates.

Three tables are addressed:

* ``T``  one bit per block key,
* ``T0`` ``t`` bits per dotted line (indexed by the row inside a grid),
* ``T1`` one bit per position inside a superblock, shared by all superblocks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple, Optional

import numpy as np

# Above this padded universe size the Layout skips its lookup arrays and
# falls back to arithmetic addressing.
PRECOMPUTE_LIMIT = 1 << 22


@dataclass(frozen=True)
class SchemeParams:
    m: int
    x: int
    z: int
    t: int
    n: int

    def __post_init__(self) -> None:
        for name in ("m", "x", "z", "t", "n"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1, got {getattr(self, name)}")
        expected = -(-self.m // self.superblock_size)
        if self.n != expected:
            raise ValueError(f"n must be ceil(m / x^2 z t) = {expected}, got {self.n}")

    @property
    def superblock_size(self) -> int:
        return self.x * self.x * self.z * self.t

    @property
    def grid_size(self) -> int:
        return self.z * self.t

    @property
    def universe_size(self) -> int:
        """Padded universe size ``n * x^2 z t``."""
        return self.n * self.superblock_size

    def keys_per_grid(self, i: int) -> int:
        return self.z + i * (self.t - 1)

    def lines_per_superblock(self, i: int) -> int:
        return self.x * self.z + i * (self.x * self.t - 1)


def derive_params(
    m: int, x: Optional[int] = None, z: Optional[int] = None, t: Optional[int] = None
) -> SchemeParams:
    """Pick ``x = t = m^(1/6)`` and ``z = m^(1/3)`` (rounded), unless overridden.

    Every value is clamped to at least 1.
    """
    m = max(1, int(m))
    if x is None:
        x = round(m ** (1 / 6))
    if t is None:
        t = round(m ** (1 / 6))
    if z is None:
        z = round(m ** (1 / 3))
    x, z, t = max(1, int(x)), max(1, int(z)), max(1, int(t))
    n = -(-m // (x * x * z * t))
    return SchemeParams(m=m, x=x, z=z, t=t, n=n)


@dataclass(frozen=True)
class ElementCoords:
    superblock: int
    grid: int
    grid_x: int
    grid_y: int
    col: int
    row: int
    super_offset: int


@dataclass(frozen=True, order=True)
class BlockId:
    superblock: int
    grid: int
    key: int


@dataclass(frozen=True, order=True)
class DottedLineId:
    superblock: int
    key: int


class Addresses(NamedTuple):
    t_bit: int
    t0_bit: int
    t1_bit: int


class TableSizes(NamedTuple):
    size_t: int
    size_t0: int
    size_t1: int

    @property
    def total(self) -> int:
        return self.size_t + self.size_t0 + self.size_t1


def _check_element(params: SchemeParams, e: int) -> None:
    if not 0 <= e < params.universe_size:
        raise IndexError(f"element {e} outside [0, {params.universe_size})")


def locate(params: SchemeParams, e: int) -> ElementCoords:
    _check_element(params, e)
    sb = params.superblock_size
    r = e % sb
    g, p = divmod(r, params.grid_size)
    b, a = divmod(p, params.z)
    return ElementCoords(
        superblock=1 + e // sb,
        grid=g,
        grid_x=g % params.x,
        grid_y=g // params.x,
        col=a,
        row=b,
        super_offset=r,
    )


def element_at(params: SchemeParams, superblock: int, grid: int, col: int, row: int) -> int:
    """Inverse of :func:`locate`."""
    return (
        (superblock - 1) * params.superblock_size
        + grid * params.grid_size
        + row * params.z
        + col
    )


def block_of(params: SchemeParams, e: int) -> BlockId:
    c = locate(params, e)
    return BlockId(c.superblock, c.grid, c.col - c.superblock * c.row)


def dotted_line_of(params: SchemeParams, blk: BlockId) -> DottedLineId:
    i = blk.superblock
    gx, gy = blk.grid % params.x, blk.grid // params.x
    return DottedLineId(i, gx * params.z - i * gy * params.t + blk.key)


def block_base(params: SchemeParams, i: int) -> int:
    """Number of T bits used by superblocks ``1 .. i-1``."""
    j = i - 1
    return params.x * params.x * (j * params.z + (params.t - 1) * j * i // 2)


def line_base(params: SchemeParams, i: int) -> int:
    """Number of dotted lines in superblocks ``1 .. i-1``."""
    j = i - 1
    return j * params.x * params.z + (params.x * params.t - 1) * j * i // 2


def table_sizes(params: SchemeParams) -> TableSizes:
    end = params.n + 1
    return TableSizes(
        size_t=block_base(params, end),
        size_t0=line_base(params, end) * params.t,
        size_t1=params.superblock_size,
    )


def block_index(params: SchemeParams, blk: BlockId) -> int:
    """Position of a block's bit in T; doubles as a compact block id."""
    i = blk.superblock
    return (
        block_base(params, i)
        + blk.grid * params.keys_per_grid(i)
        + blk.key
        + i * (params.t - 1)
    )


def block_at(params: SchemeParams, index: int) -> BlockId:
    """Inverse of :func:`block_index`."""
    if not 0 <= index < table_sizes(params).size_t:
        raise IndexError(f"block index {index} out of range")
    i = 1
    while block_base(params, i + 1) <= index:
        i += 1
    g, slot = divmod(index - block_base(params, i), params.keys_per_grid(i))
    return BlockId(i, g, slot - i * (params.t - 1))


def block_elements(params: SchemeParams, blk: BlockId) -> list[int]:
    """Elements of the padded universe lying on ``blk``, ordered by row."""
    i = blk.superblock
    out = []
    for b in range(params.t):
        a = blk.key + i * b
        if 0 <= a < params.z:
            out.append(element_at(params, i, blk.grid, a, b))
    return out


def iter_blocks(params: SchemeParams) -> Iterator[BlockId]:
    """Every key slot of every grid, in T order (some slots may be empty lines)."""
    for i in range(1, params.n + 1):
        lo = -i * (params.t - 1)
        for g in range(params.x * params.x):
            for k in range(lo, params.z):
                yield BlockId(i, g, k)


def addresses(params: SchemeParams, e: int) -> Addresses:
    c = locate(params, e)
    i = c.superblock
    k = c.col - i * c.row
    line = c.grid_x * params.z - i * c.grid_y * params.t + k
    t_bit = block_base(params, i) + c.grid * params.keys_per_grid(i) + k + i * (params.t - 1)
    slot = line_base(params, i) + line + i * (params.x * params.t - 1)
    return Addresses(t_bit, slot * params.t + c.row, c.super_offset)


class Layout:
    """Lookup arrays for every element of a (small) universe.

    ``t_bit``, ``t0_bit``, ``t1_bit`` and ``superblock`` are plain lists over
    the padded universe. The ``*_sharers`` lists group the *real* elements
    (``e < m``) by T0 and T1 position; padded elements are never queried, so
    they never need protecting.
    """

    def __init__(self, params: SchemeParams) -> None:
        self.params = params
        self.sizes = table_sizes(params)
        self.m = params.m
        self.precomputed = params.universe_size <= PRECOMPUTE_LIMIT
        if not self.precomputed:
            return

        p = params
        e = np.arange(p.universe_size, dtype=np.int64)
        i = e // p.superblock_size + 1
        r = e % p.superblock_size
        g = r // p.grid_size
        b = (r % p.grid_size) // p.z
        a = r % p.z
        k = a - i * b
        gx, gy = g % p.x, g // p.x
        line = gx * p.z - i * gy * p.t + k
        j = i - 1
        bbase = p.x * p.x * (j * p.z + (p.t - 1) * j * i // 2)
        lbase = j * p.x * p.z + (p.x * p.t - 1) * j * i // 2
        t_bit = bbase + g * (p.z + i * (p.t - 1)) + k + i * (p.t - 1)
        t0_bit = (lbase + line + i * (p.x * p.t - 1)) * p.t + b

        self.t_bit: list[int] = t_bit.tolist()
        self.t0_bit: list[int] = t0_bit.tolist()
        self.t1_bit: list[int] = r.tolist()
        self.superblock: list[int] = i.tolist()

        real = self.m
        t0_sharers: list[list[int]] = [[] for _ in range(self.sizes.size_t0)]
        t1_sharers: list[list[int]] = [[] for _ in range(self.sizes.size_t1)]
        block_members: dict[int, list[int]] = {}
        for el in range(real):
            t0_sharers[self.t0_bit[el]].append(el)
            t1_sharers[self.t1_bit[el]].append(el)
            block_members.setdefault(self.t_bit[el], []).append(el)
        self.t0_sharers = t0_sharers
        self.t1_sharers = t1_sharers
        self.block_members = block_members
        # nonempty blocks (holding at least one real element) per superblock
        self.superblock_blocks: dict[int, list[int]] = {}
        for blk in sorted(block_members):
            sb = self.superblock[block_members[blk][0]]
            self.superblock_blocks.setdefault(sb, []).append(blk)

    def addresses(self, e: int) -> Addresses:
        if self.precomputed and 0 <= e < len(self.t_bit):
            return Addresses(self.t_bit[e], self.t0_bit[e], self.t1_bit[e])
        return addresses(self.params, e)

    def block_id(self, index: int) -> BlockId:
        return block_at(self.params, index)


@lru_cache(maxsize=64)
def get_layout(params: SchemeParams) -> Layout:
    return Layout(params)


def space_exponent(m_lo: int, bits_lo: int, m_hi: int, bits_hi: int) -> float:
    """Empirical exponent ``log(bits_hi / bits_lo) / log(m_hi / m_lo)``."""
    return math.log(bits_hi / bits_lo) / math.log(m_hi / m_lo)
