"""The three bit tables and their on-disk format.

File layout (all integers little-endian)::

    magic   4 bytes   b"BP5\\0"
    version u16       1
    m x z t n         5 x u64
    tables            bits of T, then T0, then T1, concatenated and packed
                      LSB-first into ceil(total / 8) bytes, zero padded
    count   u64       number of stored elements (informational only)
    set     count x u64

In memory each table is a ``bytearray`` holding one 0/1 byte per bit so
probes are plain indexing.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional

import numpy as np

from .layout import SchemeParams, table_sizes

if TYPE_CHECKING:
    from .storage import BlockAssignment

MAGIC = b"BP5\0"
VERSION = 1
_HEADER = struct.Struct("<4sH5Q")
_U64 = struct.Struct("<Q")


class FormatError(ValueError):
    """Raised for malformed serialized structures."""


@dataclass
class DataStructure:
    params: SchemeParams
    table_t: bytearray
    table_t0: bytearray
    table_t1: bytearray
    stored_set: tuple[int, ...] = ()
    assignment: Optional["BlockAssignment"] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        sizes = table_sizes(self.params)
        got = (len(self.table_t), len(self.table_t0), len(self.table_t1))
        if got != tuple(sizes):
            raise ValueError(f"table lengths {got} do not match {tuple(sizes)}")

    def clear(self) -> None:
        for table in (self.table_t, self.table_t0, self.table_t1):
            table[:] = bytes(len(table))
        self.stored_set = ()
        self.assignment = None


def new_empty(params: SchemeParams) -> DataStructure:
    sizes = table_sizes(params)
    return DataStructure(
        params,
        bytearray(sizes.size_t),
        bytearray(sizes.size_t0),
        bytearray(sizes.size_t1),
    )


def space_used(ds: DataStructure) -> int:
    return table_sizes(ds.params).total


def serialize(ds: DataStructure) -> bytes:
    p = ds.params
    bits = np.frombuffer(bytes(ds.table_t + ds.table_t0 + ds.table_t1), dtype=np.uint8)
    packed = np.packbits(bits, bitorder="little").tobytes()
    parts = [_HEADER.pack(MAGIC, VERSION, p.m, p.x, p.z, p.t, p.n), packed]
    parts.append(_U64.pack(len(ds.stored_set)))
    parts.extend(_U64.pack(e) for e in ds.stored_set)
    return b"".join(parts)


def deserialize(data: bytes) -> DataStructure:
    if len(data) < _HEADER.size:
        raise FormatError("truncated header")
    magic, version, m, x, z, t, n = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}")
    if version != VERSION:
        raise FormatError(f"unsupported version {version}")
    try:
        params = SchemeParams(m=m, x=x, z=z, t=t, n=n)
    except ValueError as exc:
        raise FormatError(f"inconsistent header: {exc}") from None

    sizes = table_sizes(params)
    total = sizes.total
    offset = _HEADER.size
    nbytes = (total + 7) // 8
    if len(data) < offset + nbytes + _U64.size:
        raise FormatError("truncated table data")
    packed = np.frombuffer(data, dtype=np.uint8, count=nbytes, offset=offset)
    bits = np.unpackbits(packed, bitorder="little")
    if bits[total:].any():
        raise FormatError("nonzero padding bits")
    offset += nbytes

    (count,) = _U64.unpack_from(data, offset)
    offset += _U64.size
    if len(data) != offset + count * _U64.size:
        raise FormatError("stored-set length mismatch")
    stored = tuple(_U64.unpack_from(data, offset + j * _U64.size)[0] for j in range(count))

    raw = bits[:total].tobytes()
    a, b = sizes.size_t, sizes.size_t + sizes.size_t0
    return DataStructure(
        params,
        bytearray(raw[:a]),
        bytearray(raw[a:b]),
        bytearray(raw[b:]),
        stored_set=stored,
    )


def save(ds: DataStructure, path: str) -> None:
    with open(path, "wb") as fh:
        fh.write(serialize(ds))


def load(path: str) -> DataStructure:
    with open(path, "rb") as fh:
        return deserialize(fh.read())
