"""Small 2-SAT solver over the implication graph.

Literals are ints: ``2*v`` means variable ``v`` is true, ``2*v + 1`` means
it is false. A clause is a pair of literals, at least one of which must hold.
"""

from __future__ import annotations

from itertools import product
from typing import Optional, Sequence


def neg(lit: int) -> int:
    return lit ^ 1


def pos(v: int) -> int:
    return 2 * v


def negative(v: int) -> int:
    return 2 * v + 1


def implication_graph(num_vars: int, clauses: Sequence[tuple[int, int]]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(2 * num_vars)]
    for a, b in clauses:
        adj[a ^ 1].append(b)
        adj[b ^ 1].append(a)
    return adj


def strongly_connected_components(adj: list[list[int]]) -> list[int]:
    """Iterative Tarjan. Returns a component id per node."""
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            node, it = work[-1]
            edges = adj[node]
            if it < len(edges):
                work[-1] = (node, it + 1)
                nxt = edges[it]
                if index[nxt] == -1:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack[nxt] = True
                    work.append((nxt, 0))
                elif on_stack[nxt] and index[nxt] < low[node]:
                    low[node] = index[nxt]
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[node] < low[parent]:
                    low[parent] = low[node]
            if low[node] == index[node]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == node:
                        break
                ncomp += 1
    return comp


def satisfiable(num_vars: int, clauses: Sequence[tuple[int, int]]) -> bool:
    comp = strongly_connected_components(implication_graph(num_vars, clauses))
    return all(comp[2 * v] != comp[2 * v + 1] for v in range(num_vars))


def solve(num_vars: int, clauses: Sequence[tuple[int, int]]) -> Optional[list[bool]]:
    """Lexicographically smallest satisfying assignment (False < True), or None.

    Satisfiability is decided by SCCs; the assignment is then built greedily
    by trying each variable false and unit-propagating. For 2-SAT a
    conflict-free propagation never destroys satisfiability, so the greedy
    pass cannot get stuck.
    """
    adj = implication_graph(num_vars, clauses)
    comp = strongly_connected_components(adj)
    if any(comp[2 * v] == comp[2 * v + 1] for v in range(num_vars)):
        return None

    value: list[Optional[bool]] = [None] * num_vars

    def propagate(start: int) -> Optional[list[int]]:
        touched = []
        todo = [start]
        while todo:
            lit = todo.pop()
            v, want = lit >> 1, not (lit & 1)
            cur = value[v]
            if cur is None:
                value[v] = want
                touched.append(v)
                todo.extend(adj[lit])
            elif cur != want:
                for u in touched:
                    value[u] = None
                return None
        return touched

    for v in range(num_vars):
        if value[v] is not None:
            continue
        if propagate(negative(v)) is None and propagate(pos(v)) is None:
            raise AssertionError("2-SAT propagation failed on a satisfiable formula")
    return [bool(b) for b in value]


def solve_exhaustive(num_vars: int, clauses: Sequence[tuple[int, int]]) -> Optional[list[bool]]:
    """Brute force over all assignments in lexicographic order."""
    if num_vars > 20:
        raise ValueError("exhaustive search limited to 20 variables")

    def holds(lit: int, assign: tuple[bool, ...]) -> bool:
        return assign[lit >> 1] != bool(lit & 1)

    for assign in product((False, True), repeat=num_vars):
        if all(holds(a, assign) or holds(b, assign) for a, b in clauses):
            return list(assign)
    return None
