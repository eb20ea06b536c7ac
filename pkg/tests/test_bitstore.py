import random
import struct

import pytest

from bitprobe5.bitstore import (
    MAGIC,
    FormatError,
    deserialize,
    load,
    new_empty,
    save,
    serialize,
    space_used,
)
from bitprobe5.layout import derive_params
from bitprobe5.query import query
from bitprobe5.storage import store

P64 = derive_params(64, 2, 4, 2)


def test_new_empty_sizes():
    ds = new_empty(derive_params(1))
    assert (len(ds.table_t), len(ds.table_t0), len(ds.table_t1)) == (1, 1, 1)
    assert space_used(ds) == 3
    ds = new_empty(P64)
    assert space_used(ds) == 126 == len(ds.table_t) + len(ds.table_t0) + len(ds.table_t1)
    assert not any(ds.table_t + ds.table_t0 + ds.table_t1)
    assert ds.stored_set == ()
    assert not any(query(ds, e) for e in range(64))


def test_header_fields():
    data = serialize(new_empty(P64))
    magic, version, m, x, z, t, n = struct.unpack_from("<4sH5Q", data)
    assert (magic, version) == (MAGIC, 1)
    assert (m, x, z, t, n) == (64, 2, 4, 2, 2)
    # 126 bits -> 16 bytes of tables, then an empty stored set
    assert len(data) == 46 + 16 + 8


def test_bit_order_is_lsb_first():
    ds = new_empty(P64)
    ds.table_t[0] = 1
    ds.table_t[9] = 1
    ds.table_t1[31] = 1  # global bit 125
    data = serialize(ds)
    tables = data[46:62]
    assert tables[0] == 0b00000001
    assert tables[1] == 0b00000010
    assert tables[15] == 0b00100000


def test_round_trip_random_structures():
    rng = random.Random(7)
    for _ in range(30):
        x, z, t = rng.randint(1, 4), rng.randint(1, 4), rng.randint(1, 4)
        params = derive_params(rng.randint(1, 300), x, z, t)
        ds = store(new_empty(params), rng.sample(range(params.m), min(params.m, rng.randint(0, 5))))
        back = deserialize(serialize(ds))
        assert back == ds
        assert serialize(back) == serialize(ds)


def test_save_load(tmp_path):
    ds = store(new_empty(P64), [0, 1, 2, 3, 37])
    path = tmp_path / "s.bp5"
    save(ds, str(path))
    assert load(str(path)) == ds


@pytest.mark.parametrize("cut", [0, 10, 46, 50, 61, 62, 69])
def test_truncated_stream(cut):
    data = serialize(store(new_empty(P64), [5]))
    with pytest.raises(FormatError):
        deserialize(data[:cut])


def test_bad_magic_and_version():
    data = bytearray(serialize(new_empty(P64)))
    bad = bytes(b"XXXX" + data[4:])
    with pytest.raises(FormatError, match="magic"):
        deserialize(bad)
    data[4] = 9
    with pytest.raises(FormatError, match="version"):
        deserialize(bytes(data))


def test_inconsistent_header():
    data = bytearray(serialize(new_empty(P64)))
    struct.pack_into("<Q", data, 6 + 4 * 8, 3)  # n = 3
    with pytest.raises(FormatError):
        deserialize(bytes(data))


def test_trailing_garbage_rejected():
    data = serialize(new_empty(P64))
    with pytest.raises(FormatError):
        deserialize(data + b"\0")


def test_table_length_validated():
    ds = new_empty(P64)
    with pytest.raises(ValueError):
        type(ds)(P64, bytearray(3), ds.table_t0, ds.table_t1)
