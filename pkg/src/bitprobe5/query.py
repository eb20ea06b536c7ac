"""Two adaptive bitprobes: one into T, then one into T0 or T1."""

from __future__ import annotations

from dataclasses import dataclass

from .bitstore import DataStructure
from .layout import get_layout


class ProbeCounter:
    """Counts bit reads made by :func:`query_traced`. Plain :func:`query` is not counted."""

    def __init__(self) -> None:
        self.reads = 0

    def reset(self) -> None:
        self.reads = 0


probe_counter = ProbeCounter()


@dataclass(frozen=True)
class Probe:
    table: str
    index: int
    value: int


@dataclass(frozen=True)
class ProbeTrace:
    first: Probe
    second: Probe
    answer: bool

    @property
    def probes(self) -> tuple[Probe, Probe]:
        return (self.first, self.second)


def _check(ds: DataStructure, e: int) -> None:
    if not 0 <= e < ds.params.m:
        raise IndexError(f"element {e} outside [0, {ds.params.m})")


def query(ds: DataStructure, e: int) -> bool:
    _check(ds, e)
    lay = get_layout(ds.params)
    t_bit, t0_bit, t1_bit = lay.addresses(e)
    if ds.table_t[t_bit]:
        return ds.table_t1[t1_bit] == 1
    return ds.table_t0[t0_bit] == 1


def _read(table: bytearray, index: int) -> int:
    probe_counter.reads += 1
    return table[index]


def query_traced(ds: DataStructure, e: int) -> ProbeTrace:
    _check(ds, e)
    lay = get_layout(ds.params)
    t_bit, t0_bit, t1_bit = lay.addresses(e)
    first = Probe("T", t_bit, _read(ds.table_t, t_bit))
    if first.value:
        second = Probe("T1", t1_bit, _read(ds.table_t1, t1_bit))
    else:
        second = Probe("T0", t0_bit, _read(ds.table_t0, t0_bit))
    return ProbeTrace(first, second, second.value == 1)


def errors(ds: DataStructure, members) -> list[tuple[int, bool, bool]]:
    """Every element whose answer disagrees with membership, as (e, expected, got)."""
    s = set(members)
    lay = get_layout(ds.params)
    t, t0, t1 = ds.table_t, ds.table_t0, ds.table_t1
    tb, t0b, t1b = lay.t_bit, lay.t0_bit, lay.t1_bit
    out = []
    for e in range(ds.params.m):
        got = (t1[t1b[e]] if t[tb[e]] else t0[t0b[e]]) == 1
        if got != (e in s):
            out.append((e, e in s, got))
    return out
