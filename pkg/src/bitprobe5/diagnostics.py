"""Universes, 2-universes and good/bad elements of an abstract two-probe scheme.

An abstract scheme assigns every element a block of the first table (A) and a
set in each of the two second-probe tables (B, C). The quantities here are
computed literally from the set definitions so they can be checked against
any scheme, including the geometric one via :func:`to_abstract`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .layout import SchemeParams, get_layout


@dataclass(frozen=True)
class AbstractScheme:
    m: int
    size_a: int
    size_b: int
    size_c: int
    map_a: tuple[int, ...]
    map_b: tuple[int, ...]
    map_c: tuple[int, ...]

    def __post_init__(self) -> None:
        for name, size in (("map_a", self.size_a), ("map_b", self.size_b), ("map_c", self.size_c)):
            values = getattr(self, name)
            if len(values) != self.m:
                raise ValueError(f"{name} has {len(values)} entries, expected {self.m}")
            if any(not 0 <= v < size for v in values):
                raise ValueError(f"{name} has a value outside [0, {size})")

    @classmethod
    def from_maps(cls, map_a: Sequence[int], map_b: Sequence[int], map_c: Sequence[int]) -> "AbstractScheme":
        """Build a scheme with table sizes just large enough for the maps."""
        m = len(map_a)
        sizes = [max(mp, default=-1) + 1 for mp in (map_a, map_b, map_c)]
        return cls(m, *sizes, tuple(map_a), tuple(map_b), tuple(map_c))

    @cached_property
    def blocks(self) -> list[frozenset[int]]:
        return _groups(self.map_a, self.size_a)

    @cached_property
    def sets_b(self) -> list[frozenset[int]]:
        return _groups(self.map_b, self.size_b)

    @cached_property
    def sets_c(self) -> list[frozenset[int]]:
        return _groups(self.map_c, self.size_c)

    def block(self, e: int) -> frozenset[int]:
        return self.blocks[self.map_a[e]]

    def set_b(self, e: int) -> frozenset[int]:
        return self.sets_b[self.map_b[e]]

    def set_c(self, e: int) -> frozenset[int]:
        return self.sets_c[self.map_c[e]]


def _groups(mapping: Sequence[int], size: int) -> list[frozenset[int]]:
    out: list[list[int]] = [[] for _ in range(size)]
    for e, v in enumerate(mapping):
        out[v].append(e)
    return [frozenset(g) for g in out]


def swap_bc(sch: AbstractScheme) -> AbstractScheme:
    return AbstractScheme(sch.m, sch.size_a, sch.size_c, sch.size_b, sch.map_a, sch.map_c, sch.map_b)


def _check(sch: AbstractScheme, e: int) -> None:
    if not 0 <= e < sch.m:
        raise IndexError(f"element {e} outside [0, {sch.m})")


def universe_b(sch: AbstractScheme, e: int) -> frozenset[int]:
    """Union over the other members f of e's B-set of A(f) minus f."""
    _check(sch, e)
    out: set[int] = set()
    for f in sch.set_b(e):
        if f != e:
            out |= sch.block(f) - {f}
    return frozenset(out)


def universe_c(sch: AbstractScheme, e: int) -> frozenset[int]:
    _check(sch, e)
    out: set[int] = set()
    for f in sch.set_c(e):
        if f != e:
            out |= sch.block(f) - {f}
    return frozenset(out)


def universe2_b(sch: AbstractScheme, e: int) -> frozenset[int]:
    """Union over f in the B-universe of e of C(f) minus f."""
    out: set[int] = set()
    for f in universe_b(sch, e):
        out |= sch.set_c(f) - {f}
    return frozenset(out)


def universe2_c(sch: AbstractScheme, e: int) -> frozenset[int]:
    out: set[int] = set()
    for f in universe_c(sch, e):
        out |= sch.set_b(f) - {f}
    return frozenset(out)


SHARED_SET = "shared-set"
TOO_LARGE = "size>2s"


@dataclass(frozen=True)
class UniverseReport:
    element: int
    u_b: frozenset[int]
    u_c: frozenset[int]
    u2_b: frozenset[int]
    u2_c: frozenset[int]
    reasons_b: tuple[str, ...] = field(default=())
    reasons_c: tuple[str, ...] = field(default=())

    @property
    def bad_b(self) -> bool:
        return bool(self.reasons_b)

    @property
    def bad_c(self) -> bool:
        return bool(self.reasons_c)


def _shares_set(elements: frozenset[int], mapping: Sequence[int]) -> bool:
    seen = set()
    for f in elements:
        if mapping[f] in seen:
            return True
        seen.add(mapping[f])
    return False


def classify_element(sch: AbstractScheme, e: int, s: int) -> UniverseReport:
    """Good/bad status of ``e`` w.r.t. B and C, with ``s`` setting the ``2s`` threshold.

    B-side: bad if two elements of the B-universe share a C-set, or the
    B 2-universe has more than ``2s`` elements. C-side mirrors it.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    ub, uc = universe_b(sch, e), universe_c(sch, e)
    u2b, u2c = universe2_b(sch, e), universe2_c(sch, e)
    reasons_b = []
    if _shares_set(ub, sch.map_c):
        reasons_b.append(SHARED_SET)
    if len(u2b) > 2 * s:
        reasons_b.append(TOO_LARGE)
    reasons_c = []
    if _shares_set(uc, sch.map_b):
        reasons_c.append(SHARED_SET)
    if len(u2c) > 2 * s:
        reasons_c.append(TOO_LARGE)
    return UniverseReport(e, ub, uc, u2b, u2c, tuple(reasons_b), tuple(reasons_c))


def cleanliness(sch: AbstractScheme) -> list[tuple[str, int]]:
    """Dirty sets: ``("B", j)`` or ``("C", j)`` whenever a set holds two elements of one block."""
    dirty = []
    for table, sets in (("B", sch.sets_b), ("C", sch.sets_c)):
        for j, members in enumerate(sets):
            blocks = [sch.map_a[f] for f in members]
            if len(blocks) != len(set(blocks)):
                dirty.append((table, j))
    return dirty


def sum_u2b(sch: AbstractScheme) -> tuple[int, float]:
    """Total B 2-universe size and its ratio to ``m^4 / size_b^3``."""
    total = sum(len(universe2_b(sch, e)) for e in range(sch.m))
    scale = sch.m**4 / sch.size_b**3
    return total, total / scale


def to_abstract(params: SchemeParams) -> AbstractScheme:
    """View the geometric scheme as blocks (T bits), B-sets (T0 bits) and C-sets (T1 bits)."""
    lay = get_layout(params)
    m = params.m
    return AbstractScheme(
        m,
        lay.sizes.size_t,
        lay.sizes.size_t0,
        lay.sizes.size_t1,
        tuple(lay.t_bit[:m]),
        tuple(lay.t0_bit[:m]),
        tuple(lay.t1_bit[:m]),
    )


def parse_abstract(text: str) -> AbstractScheme:
    """Parse ``m sA sB sC`` followed by ``m`` lines of ``a b c``."""
    tokens = text.split()
    if len(tokens) < 4:
        raise ValueError("missing header 'm sA sB sC'")
    try:
        nums = [int(tok) for tok in tokens]
    except ValueError as exc:
        raise ValueError(f"non-integer token: {exc}") from None
    m, sa, sb, sc = nums[:4]
    body = nums[4:]
    if len(body) != 3 * m:
        raise ValueError(f"expected {3 * m} map values, got {len(body)}")
    return AbstractScheme(m, sa, sb, sc, tuple(body[0::3]), tuple(body[1::3]), tuple(body[2::3]))


def format_abstract(sch: AbstractScheme) -> str:
    lines = [f"{sch.m} {sch.size_a} {sch.size_b} {sch.size_c}"]
    lines += [f"{a} {b} {c}" for a, b, c in zip(sch.map_a, sch.map_b, sch.map_c)]
    return "\n".join(lines) + "\n"
