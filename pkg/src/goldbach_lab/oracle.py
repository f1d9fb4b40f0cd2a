"""Independent brute-force implementations for validating the fast paths.

Everything here is deliberately written against different machinery than the
modules it checks: Hamiltonicity by plain backtracking over neighbor sets,
all-pairs distances through scipy's compiled shortest-path routines, induced
cycles by recursive enumeration over Python sets.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _cc
from scipy.sparse.csgraph import shortest_path

from .errors import BudgetExhaustedError, DomainError
from .graphs import EvenGraph
from .hamilton import HamCertificate, verify_certificate


@dataclass(frozen=True)
class OracleBudget:
    max_nodes: int = 10_000_000
    max_seconds: float | None = None

    def __post_init__(self):
        if self.max_nodes <= 0:
            raise DomainError("node budget must be positive")
        if self.max_seconds is not None and self.max_seconds <= 0:
            raise DomainError("time budget must be positive")


class SearchOutcome(Enum):
    """Distinguishes a completed unsuccessful search from an aborted one."""

    NONE = "none"
    BUDGET_EXHAUSTED = "budget-exhausted"


def _two_coloring(graph: EvenGraph):
    """Color classes via BFS; None if an odd cycle exists."""
    count = graph.vertex_count
    color = [-1] * count
    offsets, neighbors = graph.offsets, graph.neighbors
    for s in range(count):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in neighbors[offsets[u]:offsets[u + 1]]:
                w = int(w)
                if color[w] < 0:
                    color[w] = color[u] ^ 1
                    stack.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def brute_ham_cycle(graph: EvenGraph, budget: OracleBudget | None = None):
    """Exhaustive backtracking search for a closed Hamiltonian cycle.

    Returns a verified certificate, SearchOutcome.NONE after a provably
    exhaustive search, or SearchOutcome.BUDGET_EXHAUSTED.  A bipartite graph
    with unequal sides is settled by the parity obstruction without search.
    """
    budget = budget or OracleBudget()
    count = graph.vertex_count
    if count < 3:
        return SearchOutcome.NONE
    degrees = graph.degrees()
    if (degrees < 2).any():
        return SearchOutcome.NONE
    coloring = _two_coloring(graph)
    if coloring is not None:
        if 2 * sum(coloring) != count:
            return SearchOutcome.NONE
    adj = [set(int(w) for w in graph.neighbors[graph.offsets[u]:graph.offsets[u + 1]])
           for u in range(count)]
    deadline = None if budget.max_seconds is None else time.monotonic() + budget.max_seconds
    nodes = 0
    path = [0]
    used = [False] * count
    used[0] = True

    def extend() -> bool | None:
        nonlocal nodes
        nodes += 1
        if nodes > budget.max_nodes:
            return None
        if deadline is not None and nodes % 4096 == 0 and time.monotonic() > deadline:
            return None
        u = path[-1]
        if len(path) == count:
            return 0 in adj[u]
        # low-degree candidates first: fail fast on forced vertices
        for w in sorted((w for w in adj[u] if not used[w]),
                        key=lambda w: len(adj[w])):
            used[w] = True
            path.append(w)
            sub = extend()
            if sub:
                return True
            path.pop()
            used[w] = False
            if sub is None:
                return None
        return False

    result = extend()
    if result is None:
        return SearchOutcome.BUDGET_EXHAUSTED
    if not result:
        return SearchOutcome.NONE
    sequence = tuple(int(graph.vertices[i]) for i in path)
    cert = HamCertificate(graph.spec, sequence, closed=True)
    return verify_certificate(graph, cert)


def _as_csr(graph: EvenGraph) -> csr_matrix:
    data = np.ones(len(graph.neighbors), dtype=np.int8)
    return csr_matrix((data, graph.neighbors, graph.offsets),
                      shape=(graph.vertex_count, graph.vertex_count))


def brute_all_pairs(graph: EvenGraph) -> np.ndarray:
    """Full distance matrix (float, inf for unreachable) via scipy."""
    if graph.vertex_count > 2000:
        raise DomainError("all-pairs oracle is limited to 2000 vertices")
    if graph.vertex_count == 0:
        return np.zeros((0, 0))
    return shortest_path(_as_csr(graph), method="D", unweighted=True,
                         directed=False)


def oracle_component_count(graph: EvenGraph) -> int:
    if graph.vertex_count == 0:
        return 0
    count, _ = _cc(_as_csr(graph), directed=False)
    return int(count)


def _canonical_cycle(cycle: tuple[int, ...]) -> tuple[int, ...]:
    """Rotate to the smallest vertex, orient toward the smaller second one."""
    k = cycle.index(min(cycle))
    rotated = cycle[k:] + cycle[:k]
    if len(rotated) > 2 and rotated[-1] < rotated[1]:
        rotated = (rotated[0],) + rotated[:0:-1]
    return rotated


def brute_induced_cycles(graph: EvenGraph, length: int,
                         budget: OracleBudget | None = None) -> list[tuple[int, ...]]:
    """All induced cycles of exactly ``length``, canonicalized and sorted."""
    if length < 3:
        raise DomainError("cycles have length at least 3")
    if length > 10:
        raise DomainError("induced-cycle oracle is limited to length 10")
    if graph.vertex_count > 60:
        raise DomainError("induced-cycle oracle is limited to 60 vertices")
    budget = budget or OracleBudget()
    count = graph.vertex_count
    adj = [set(int(w) for w in graph.neighbors[graph.offsets[u]:graph.offsets[u + 1]])
           for u in range(count)]
    hits: set[tuple[int, ...]] = set()
    nodes = 0

    def search(start, path, banned_inner):
        # banned_inner: neighbors of path[1:-1]; start's own neighborhood is
        # excluded separately so the closing vertex may use it
        nonlocal nodes
        nodes += 1
        if nodes > budget.max_nodes:
            raise BudgetExhaustedError("induced-cycle oracle budget exceeded")
        tail = path[-1]
        k = len(path)
        if k == length:
            if start in adj[tail]:
                hits.add(_canonical_cycle(tuple(path)))
            return
        for w in adj[tail]:
            if w <= start or w in path or w in banned_inner:
                continue
            if 2 <= k <= length - 2 and w in adj[start]:
                continue
            search(start, path + [w],
                   banned_inner if tail == start else banned_inner | adj[tail])

    for start in range(count):
        search(start, [start], set())
    ordered = sorted(tuple(int(graph.vertices[i]) for i in cyc) for cyc in hits)
    return ordered
