import itertools
import random

from hypothesis import given
from hypothesis import strategies as st

from bitprobe5 import twosat


def brute(num_vars, clauses):
    """All satisfying assignments, in lexicographic order."""
    out = []
    for bits in itertools.product((False, True), repeat=num_vars):
        ok = all(
            (bits[a >> 1] != bool(a & 1)) or (bits[b >> 1] != bool(b & 1)) for a, b in clauses
        )
        if ok:
            out.append(list(bits))
    return out


clause_sets = st.integers(1, 8).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.tuples(st.integers(0, 2 * n - 1), st.integers(0, 2 * n - 1)), max_size=20),
    )
)


@given(clause_sets)
def test_solve_matches_brute_force(case):
    n, clauses = case
    sols = brute(n, clauses)
    got = twosat.solve(n, clauses)
    assert twosat.satisfiable(n, clauses) == bool(sols)
    if sols:
        assert got == sols[0]
        assert twosat.solve_exhaustive(n, clauses) == sols[0]
    else:
        assert got is None
        assert twosat.solve_exhaustive(n, clauses) is None


def test_odd_cycle_is_unsatisfiable():
    # three variables pairwise forced to differ
    clauses = []
    for a, b in [(0, 1), (1, 2), (0, 2)]:
        clauses += [(twosat.pos(a), twosat.pos(b)), (twosat.negative(a), twosat.negative(b))]
    assert twosat.solve(3, clauses) is None
    assert not brute(3, clauses)


def test_deep_chain_no_recursion_limit():
    n = 20000
    clauses = [(twosat.negative(v), twosat.pos(v + 1)) for v in range(n - 1)]
    clauses.append((twosat.pos(0), twosat.pos(0)))
    sol = twosat.solve(n, clauses)
    assert sol is not None and all(sol)


def test_scc_components():
    adj = [[1], [2], [0], [4], []]
    comp = twosat.strongly_connected_components(adj)
    assert comp[0] == comp[1] == comp[2]
    assert len({comp[0], comp[3], comp[4]}) == 3


def test_random_agreement_many():
    rng = random.Random(11)
    for _ in range(500):
        n = rng.randint(1, 10)
        clauses = [(rng.randrange(2 * n), rng.randrange(2 * n)) for _ in range(rng.randint(0, 3 * n))]
        sols = brute(n, clauses)
        assert twosat.solve(n, clauses) == (sols[0] if sols else None)
