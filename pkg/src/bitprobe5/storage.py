"""Storage scheme: decide each block's second table and write the bits.

A block sent to ``T1`` gets a 1 in ``T`` and its members are read from
``T1``; a block sent to ``T0`` gets a 0 and is read from ``T0``. Members set
their second-probe bit to 1, everything else stays 0. The only way a query
can then go wrong is a non-member reading a 1 written by a member at the same
position of the same second table. :func:`build_clauses` lists exactly those
situations and :func:`solve_assignment` avoids them with 2-SAT.

Subsets whose superblock distribution is ``[5]``, ``[4, 1]`` or
``[1, 1, 1, 1, 1]`` also have a hand-made assignment
(:func:`literal_assignment`).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, NamedTuple, Optional, Sequence

from . import twosat
from .bitstore import DataStructure
from .layout import BlockId, Layout, SchemeParams, get_layout

log = logging.getLogger(__name__)

MAX_SET_SIZE = 5

CASE_BY_PARTITION: dict[tuple[int, ...], int] = {
    (5,): 1,
    (4, 1): 2,
    (1, 1, 1, 1, 1): 3,
    (3, 2): 4,
    (3, 1, 1): 5,
    (2, 2, 1): 6,
    (2, 1, 1, 1): 7,
}


def case_number(partition: tuple[int, ...]) -> Optional[int]:
    """Case of a superblock distribution (sizes in descending order).

    Smaller sets reuse the five-element case whose argument covers them:
    one superblock is Case 1, a cluster plus one lone element is Case 2,
    all singletons is Case 3, the empty set is 0. Anything else is None.
    """
    if partition in CASE_BY_PARTITION:
        return CASE_BY_PARTITION[partition]
    if not partition:
        return 0
    if len(partition) == 1:
        return 1
    if all(c == 1 for c in partition):
        return 3
    if len(partition) == 2 and partition[1] == 1:
        return 2
    return None


LITERAL_CASES = frozenset({0, 1, 2, 3})


class Table(IntEnum):
    T0 = 0
    T1 = 1


class ConflictClause(NamedTuple):
    """``block_a`` and ``block_b`` must not both be sent to ``forbidden``.

    Blocks are referred to by their bit position in ``T``.
    """

    block_a: int
    block_b: int
    forbidden: Table


@dataclass(frozen=True)
class CaseLabel:
    partition: tuple[int, ...]
    case: Optional[int]
    # distinct dotted lines among member blocks, per superblock in partition order
    dotted_lines: tuple[int, ...] = ()
    # unordered pairs of member blocks sharing a T1 bit that only one of them sets
    t1_conflicts: int = 0


@dataclass
class BlockAssignment:
    tables: dict[int, Table] = field(default_factory=dict)
    source: str = "solver"

    def table_of(self, block: int) -> Table:
        return self.tables.get(block, Table.T0)

    def satisfies(self, clauses: Iterable[ConflictClause]) -> bool:
        return all(
            not (self.table_of(c.block_a) == c.forbidden and self.table_of(c.block_b) == c.forbidden)
            for c in clauses
        )


class Unsatisfiable(RuntimeError):
    def __init__(self, params: SchemeParams, members: Sequence[int], clauses: Sequence[ConflictClause]):
        super().__init__(f"no block assignment for S={sorted(members)} under {params}")
        self.params = params
        self.members = tuple(sorted(members))
        self.clauses = list(clauses)


def _normalize(params: SchemeParams, members: Iterable[int]) -> frozenset[int]:
    s = frozenset(members)
    if len(s) > MAX_SET_SIZE:
        raise ValueError(f"at most {MAX_SET_SIZE} elements can be stored, got {len(s)}")
    for e in s:
        if not 0 <= e < params.m:
            raise IndexError(f"element {e} outside [0, {params.m})")
    return s


def classify(params: SchemeParams, members: Iterable[int]) -> CaseLabel:
    s = _normalize(params, members)
    lay = get_layout(params)
    by_sb: dict[int, list[int]] = {}
    for e in sorted(s):
        by_sb.setdefault(lay.superblock[e], []).append(e)
    groups = sorted(by_sb.items(), key=lambda kv: (-len(kv[1]), kv[0]))
    partition = tuple(len(g) for _, g in groups)

    t = params.t
    dotted = tuple(len({lay.t0_bit[e] // t for e in g}) for _, g in groups)

    member_blocks = {lay.t_bit[e] for e in s}
    pairs = set()
    for e in s:
        be = lay.t_bit[e]
        for f in lay.t1_sharers[lay.t1_bit[e]]:
            bf = lay.t_bit[f]
            if f not in s and bf in member_blocks:
                pairs.add((min(be, bf), max(be, bf)))

    return CaseLabel(partition, case_number(partition), dotted, len(pairs))


def build_clauses(params: SchemeParams, members: Iterable[int]) -> list[ConflictClause]:
    s = _normalize(params, members)
    return _clauses(get_layout(params), s)


def _clauses(lay: Layout, s: frozenset[int]) -> list[ConflictClause]:
    t_bit = lay.t_bit
    out = []
    for e in sorted(s):
        be = t_bit[e]
        for f in lay.t1_sharers[lay.t1_bit[e]]:
            if f not in s:
                out.append(ConflictClause(be, t_bit[f], Table.T1))
        for f in lay.t0_sharers[lay.t0_bit[e]]:
            if f not in s and t_bit[f] != be:
                out.append(ConflictClause(be, t_bit[f], Table.T0))
    return out


def relevant_blocks(params: SchemeParams, members: Iterable[int], clauses: Iterable[ConflictClause]) -> list[int]:
    lay = get_layout(params)
    blocks = {lay.t_bit[e] for e in members}
    for c in clauses:
        blocks.add(c.block_a)
        blocks.add(c.block_b)
    return sorted(blocks)


def solve_assignment(
    clauses: Sequence[ConflictClause], blocks: Sequence[int], *, exhaustive: bool = False
) -> Optional[BlockAssignment]:
    """Satisfying assignment preferring T0, or None when there is none.

    Blocks are decided in ascending order, each set to T0 whenever some
    completion still exists, so the result is the lexicographically smallest
    solution. ``exhaustive=True`` finds the same answer by brute force.
    """
    order = sorted(set(blocks))
    var = {b: v for v, b in enumerate(order)}
    cnf = []
    for c in clauses:
        a, b = var[c.block_a], var[c.block_b]
        if c.forbidden is Table.T1:
            cnf.append((twosat.negative(a), twosat.negative(b)))
        else:
            cnf.append((twosat.pos(a), twosat.pos(b)))
    solver = twosat.solve_exhaustive if exhaustive else twosat.solve
    values = solver(len(order), cnf)
    if values is None:
        return None
    return BlockAssignment({b: Table.T1 for b, v in zip(order, values) if v}, source="solver")


def literal_assignment(
    params: SchemeParams, members: Iterable[int], label: Optional[CaseLabel] = None
) -> Optional[BlockAssignment]:
    """Hand-made assignment for the empty set and Cases 1, 2, 3.

    Returns None for other distributions, and for a Case 2 instance in which
    a block holding one of the clustered elements conflicts with the lone
    element's block.
    """
    s = _normalize(params, members)
    if label is None:
        label = classify(params, s)
    lay = get_layout(params)
    t_bit = lay.t_bit
    member_blocks = {t_bit[e] for e in s}

    if label.case == 0:
        return BlockAssignment(source="literal")
    if label.case == 1:
        return BlockAssignment({b: Table.T1 for b in member_blocks}, source="literal")
    if label.case == 3:
        tables = {
            b: Table.T1
            for blocks in lay.superblock_blocks.values()
            for b in blocks
            if b not in member_blocks
        }
        return BlockAssignment(tables, source="literal")
    if label.case == 2:
        count: dict[int, int] = {}
        for e in s:
            count[lay.superblock[e]] = count.get(lay.superblock[e], 0) + 1
        lone = next(e for e in s if count[lay.superblock[e]] == 1)
        cluster_sb = next(sb for sb, c in count.items() if c > 1)
        lone_block = t_bit[lone]
        conflicting = set()
        for f in lay.block_members[lone_block]:
            for g in lay.t1_sharers[lay.t1_bit[f]]:
                if lay.superblock[g] == cluster_sb and (f in s) != (g in s):
                    conflicting.add(t_bit[g])
        if conflicting & member_blocks:
            return None
        tables = {b: Table.T1 for b in lay.superblock_blocks[cluster_sb] if b not in conflicting}
        tables[lone_block] = Table.T1
        return BlockAssignment(tables, source="literal")
    return None


def write_bits(ds: DataStructure, assignment: BlockAssignment, members: Iterable[int]) -> DataStructure:
    lay = get_layout(ds.params)
    ds.clear()
    s = tuple(sorted(members))
    table_t = ds.table_t
    for b, tab in assignment.tables.items():
        if tab is Table.T1:
            table_t[b] = 1
    for e in s:
        if assignment.table_of(lay.t_bit[e]) is Table.T1:
            ds.table_t1[lay.t1_bit[e]] = 1
        else:
            ds.table_t0[lay.t0_bit[e]] = 1
    ds.stored_set = s
    ds.assignment = assignment
    return ds


def solver_assignment(params: SchemeParams, members: Iterable[int]) -> BlockAssignment:
    s = _normalize(params, members)
    clauses = _clauses(get_layout(params), s)
    blocks = relevant_blocks(params, s, clauses)
    asg = solve_assignment(clauses, blocks)
    if asg is None:
        log.error("unsatisfiable instance: params=%s S=%s clauses=%s", params, sorted(s), clauses)
        raise Unsatisfiable(params, s, clauses)
    return asg


def store_literal(ds: DataStructure, members: Iterable[int]) -> DataStructure:
    """Store using the hand-made case assignment; only for Cases 0 to 3.

    The Case 2 instances that :func:`literal_assignment` declines are handed
    to the solver.
    """
    s = _normalize(ds.params, members)
    label = classify(ds.params, s)
    if label.case not in LITERAL_CASES:
        raise ValueError(f"no literal assignment for partition {label.partition}")
    asg = literal_assignment(ds.params, s)
    if asg is None:
        asg = solver_assignment(ds.params, s)
    return write_bits(ds, asg, s)


def store(ds: DataStructure, members: Iterable[int], *, force_solver: bool = False) -> DataStructure:
    """Overwrite ``ds`` so that it stores ``members``. Raises Unsatisfiable."""
    s = _normalize(ds.params, members)
    asg = None
    if not force_solver:
        asg = literal_assignment(ds.params, s)
    if asg is None:
        asg = solver_assignment(ds.params, s)
    return write_bits(ds, asg, s)


def block_ids(params: SchemeParams, blocks: Iterable[int]) -> list[BlockId]:
    lay = get_layout(params)
    return [lay.block_id(b) for b in blocks]
