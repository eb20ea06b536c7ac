"""Correctness sweeps and space measurements."""

from __future__ import annotations

import itertools
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .bitstore import new_empty
from .layout import SchemeParams, derive_params, table_sizes
from .query import errors
from .storage import (
    MAX_SET_SIZE,
    Unsatisfiable,
    build_clauses,
    classify,
    literal_assignment,
    solver_assignment,
    write_bits,
)

CHUNK = 4096


@dataclass(frozen=True)
class VerifyConfig:
    m: int
    x: Optional[int] = None
    z: Optional[int] = None
    t: Optional[int] = None
    mode: str = "exhaustive"
    max_subset_size: int = MAX_SET_SIZE
    min_subset_size: int = 0
    sample_count: int = 1000
    seed: int = 0
    parallelism: int = 1
    # also run the solver on literal-case subsets and compare
    cross_check: bool = False

    def __post_init__(self) -> None:
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not 0 <= self.min_subset_size <= self.max_subset_size <= MAX_SET_SIZE:
            raise ValueError("need 0 <= min_subset_size <= max_subset_size <= 5")
        if self.mode == "random" and self.sample_count < 1:
            raise ValueError("sample_count must be >= 1 in random mode")
        if self.parallelism < 1:
            raise ValueError("parallelism must be >= 1")

    @property
    def params(self) -> SchemeParams:
        return derive_params(self.m, self.x, self.z, self.t)


@dataclass(frozen=True)
class Failure:
    subset: tuple[int, ...]
    element: Optional[int]
    expected: Optional[bool]
    got: Optional[bool]
    partition: tuple[int, ...]
    case: Optional[int]
    reason: str = "wrong answer"


@dataclass
class VerifyReport:
    subsets_tested: int = 0
    queries_issued: int = 0
    failures: list[Failure] = field(default_factory=list)
    case_histogram: Counter = field(default_factory=Counter)
    unsatisfiable: int = 0
    literal_checked: int = 0
    literal_mismatches: int = 0
    wall_time: float = 0.0

    @property
    def success(self) -> bool:
        return not self.failures

    def merge(self, other: "VerifyReport") -> None:
        self.subsets_tested += other.subsets_tested
        self.queries_issued += other.queries_issued
        self.failures.extend(other.failures)
        self.case_histogram.update(other.case_histogram)
        self.unsatisfiable += other.unsatisfiable
        self.literal_checked += other.literal_checked
        self.literal_mismatches += other.literal_mismatches

    def lines(self) -> list[str]:
        out = [
            f"subsets_tested={self.subsets_tested}",
            f"queries_issued={self.queries_issued}",
            f"failures={len(self.failures)}",
            f"unsatisfiable={self.unsatisfiable}",
            f"literal_checked={self.literal_checked}",
            f"literal_mismatches={self.literal_mismatches}",
            f"wall_time={self.wall_time:.3f}",
        ]
        for (partition, case), count in sorted(self.case_histogram.items(), key=lambda kv: kv[0][0]):
            name = "+".join(map(str, partition)) or "empty"
            out.append(f"case partition={name} case={case} count={count}")
        for f in self.failures[:20]:
            out.append(
                f"failure subset={','.join(map(str, f.subset))} element={f.element} "
                f"expected={f.expected} got={f.got} case={f.case} reason={f.reason!r}"
            )
        return out


def exhaustive_subsets(m: int, lo: int, hi: int) -> Iterator[tuple[int, ...]]:
    for k in range(lo, min(hi, m) + 1):
        yield from itertools.combinations(range(m), k)


def random_subsets(m: int, lo: int, hi: int, count: int, seed: int) -> Iterator[tuple[int, ...]]:
    """Size uniform in ``[lo, hi]``, then a uniform subset of that size."""
    rng = random.Random(seed)
    universe = range(m)
    for _ in range(count):
        k = min(rng.randint(lo, hi), m)
        yield tuple(sorted(rng.sample(universe, k)))


def check_subsets(params: SchemeParams, subsets: Sequence[tuple[int, ...]], cross_check: bool = False) -> VerifyReport:
    """Store and fully query each subset; a worker's unit of work."""
    ds = new_empty(params)
    report = VerifyReport()
    for subset in subsets:
        label = classify(params, subset)
        report.subsets_tested += 1
        report.case_histogram[(label.partition, label.case)] += 1

        def fail(element, expected, got, reason="wrong answer"):
            report.failures.append(Failure(subset, element, expected, got, label.partition, label.case, reason))

        literal = literal_assignment(params, subset, label)
        try:
            asg = literal if literal is not None else solver_assignment(params, subset)
        except Unsatisfiable:
            report.unsatisfiable += 1
            fail(None, None, None, "unsatisfiable")
            continue
        write_bits(ds, asg, subset)
        report.queries_issued += params.m
        wrong = errors(ds, subset)
        for e, expected, got in wrong:
            fail(e, expected, got)

        if cross_check and literal is not None:
            report.literal_checked += 1
            if not literal.satisfies(build_clauses(params, subset)):
                report.literal_mismatches += 1
                fail(None, None, None, "literal assignment violates a clause")
            try:
                write_bits(ds, solver_assignment(params, subset), subset)
            except Unsatisfiable:
                report.unsatisfiable += 1
                fail(None, None, None, "unsatisfiable")
                continue
            report.queries_issued += params.m
            if bool(errors(ds, subset)) != bool(wrong):
                report.literal_mismatches += 1
                fail(None, None, None, "literal and solver verdicts differ")
    return report


def _chunks(items: Iterable[tuple[int, ...]], size: int) -> Iterator[list[tuple[int, ...]]]:
    it = iter(items)
    while chunk := list(itertools.islice(it, size)):
        yield chunk


def verify(cfg: VerifyConfig) -> VerifyReport:
    params = cfg.params
    start = time.perf_counter()
    if cfg.mode == "exhaustive":
        subsets = exhaustive_subsets(params.m, cfg.min_subset_size, cfg.max_subset_size)
    else:
        subsets = random_subsets(params.m, cfg.min_subset_size, cfg.max_subset_size, cfg.sample_count, cfg.seed)

    report = VerifyReport()
    if cfg.parallelism == 1:
        for chunk in _chunks(subsets, CHUNK):
            report.merge(check_subsets(params, chunk, cfg.cross_check))
    else:
        with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
            chunks = _chunks(subsets, CHUNK)
            for part in pool.map(
                check_subsets, itertools.repeat(params), chunks, itertools.repeat(cfg.cross_check)
            ):
                report.merge(part)
    report.wall_time = time.perf_counter() - start
    return report


@dataclass(frozen=True)
class SpaceRow:
    m: int
    bits: int
    ratio: float


def space_sweep(m_list: Sequence[int]) -> list[SpaceRow]:
    """Exact space under default parameters, normalised by ``m^(5/6)``."""
    if not m_list:
        raise ValueError("m_list must not be empty")
    rows = []
    for m in m_list:
        params = derive_params(m)
        bits = table_sizes(params).total
        rows.append(SpaceRow(m, bits, bits / m ** (5 / 6)))
    return rows

