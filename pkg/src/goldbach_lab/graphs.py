"""Materialization of finite odd-even graphs.

Vertices are the even integers {2, 4, ..., 2n} (plus 0 for Goldbach graphs);
a and b are adjacent iff (a+b)/2 and |a-b|/2 are both odd and both admissible
in the graph's odd set.  Graphs are stored in compressed sparse adjacency
form (offset array + flat sorted neighbor array) keyed by vertex position;
all public interfaces speak vertex values, never indices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, DomainError, GraphMismatchError
from .oddsets import (
    KIND_GOLDBACH,
    KIND_INTERSECTION,
    KIND_NEAR_GOLDBACH,
    KIND_PMM,
    OddSetSpec,
)

#: Largest n build_graph accepts unless the caller raises the cap.
DEFAULT_MAX_N = 100_000


@dataclass(frozen=True)
class GraphSpec:
    """A graph family member: odd set + size n (+ vertex 0 for Goldbach)."""

    odd_set: OddSetSpec
    n: int
    include_zero: bool = False

    def __post_init__(self):
        if self.n != self.odd_set.n:
            raise DomainError(
                f"graph n={self.n} disagrees with odd set n={self.odd_set.n}"
            )
        if self.include_zero and self.odd_set.kind != KIND_GOLDBACH:
            raise DomainError("vertex 0 is only part of Goldbach graphs")

    @property
    def kind_label(self) -> str:
        o = self.odd_set
        if o.kind == KIND_PMM:
            return f"pmm{o.primes[0]}"
        if o.kind == KIND_INTERSECTION:
            if o.primes == (3, 5):
                return "g35"
            return "intersect:" + ",".join(str(p) for p in o.primes)
        return o.kind

    def vertex_values(self) -> np.ndarray:
        start = 0 if self.include_zero else 2
        return np.arange(start, 2 * self.n + 1, 2, dtype=np.int64)


def pmm(p: int, n: int) -> GraphSpec:
    return GraphSpec(OddSetSpec.prime_multiple_missing(p, n), n)


def intersection(ps, n: int) -> GraphSpec:
    return GraphSpec(OddSetSpec.prime_intersection(ps, n), n)


def near_goldbach(n: int) -> GraphSpec:
    return GraphSpec(OddSetSpec.near_goldbach(n), n)


def goldbach(n: int) -> GraphSpec:
    return GraphSpec(OddSetSpec.goldbach(n), n, include_zero=True)


def explicit(members, n: int) -> GraphSpec:
    return GraphSpec(OddSetSpec.explicit(members, n), n)


def spec_from_kind(kind: str, n: int) -> GraphSpec:
    """Resolve a stable kind string (pmm3, g35, intersect:3,5,7, ...) to a spec."""
    kind = kind.strip().lower()
    if kind.startswith("pmm"):
        return pmm(int(kind[3:]), n)
    if kind == "g35":
        return intersection((3, 5), n)
    if kind.startswith("intersect:"):
        ps = tuple(int(tok) for tok in kind.split(":", 1)[1].split(","))
        return intersection(ps, n)
    if kind in ("near-goldbach", "near_goldbach"):
        return near_goldbach(n)
    if kind == "goldbach":
        return goldbach(n)
    raise DomainError(f"unknown graph kind {kind!r}")


class EvenGraph:
    """An immutable odd-even graph with compressed sorted adjacency."""

    def __init__(self, spec: GraphSpec, vertices: np.ndarray, offsets: np.ndarray,
                 neighbors: np.ndarray):
        self.spec = spec
        self.vertices = vertices
        self.offsets = offsets
        self.neighbors = neighbors
        self.edge_count = int(len(neighbors) // 2)
        self._index = {int(v): i for i, v in enumerate(vertices)}
        for arr in (vertices, offsets, neighbors):
            arr.setflags(write=False)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def index_of(self, v: int) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise DomainError(f"{v} is not a vertex of this graph") from None

    def neighbors_of(self, v: int) -> np.ndarray:
        i = self.index_of(v)
        return self.vertices[self.neighbors[self.offsets[i]:self.offsets[i + 1]]]

    def degree_of(self, v: int) -> int:
        i = self.index_of(v)
        return int(self.offsets[i + 1] - self.offsets[i])

    def has_edge(self, a: int, b: int) -> bool:
        ia, ib = self.index_of(a), self.index_of(b)
        row = self.neighbors[self.offsets[ia]:self.offsets[ia + 1]]
        pos = np.searchsorted(row, ib)
        return pos < len(row) and row[pos] == ib

    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def edge_values(self) -> np.ndarray:
        """Edges as an (E, 2) array of vertex values with u < v, sorted."""
        src = np.repeat(np.arange(self.vertex_count), self.degrees())
        mask = src < self.neighbors
        return np.column_stack(
            (self.vertices[src[mask]], self.vertices[self.neighbors[mask]])
        )

    def partite_sets(self) -> tuple[np.ndarray, np.ndarray]:
        """(X, Y) with X the vertices congruent 0 and Y those congruent 2 mod 4."""
        x_mask = self.vertices % 4 == 0
        return self.vertices[x_mask], self.vertices[~x_mask]

    def adjacency_matrix(self) -> np.ndarray:
        """Dense boolean adjacency in vertex order (index-aligned)."""
        m = np.zeros((self.vertex_count, self.vertex_count), dtype=bool)
        src = np.repeat(np.arange(self.vertex_count), self.degrees())
        m[src, self.neighbors] = True
        return m

    def __repr__(self):
        return (f"EvenGraph({self.spec.kind_label}, n={self.spec.n}, "
                f"vertices={self.vertex_count}, edges={self.edge_count})")


def is_adjacent(a: int, b: int, spec: GraphSpec) -> bool:
    """Adjacency predicate: both half-sum and half-difference admissible."""
    lo = 0 if spec.include_zero else 2
    for v in (a, b):
        if v < lo or v > 2 * spec.n or v % 2 != 0:
            raise DomainError(f"{v} is not a vertex of this graph family at n={spec.n}")
    if a == b:
        raise DomainError("adjacency is defined for distinct vertices")
    s = (a + b) // 2
    d = abs(a - b) // 2
    if s % 2 == 0:  # halves share parity, one check suffices
        return False
    return spec.odd_set.contains(s) and spec.odd_set.contains(d)


def _csr_from_dense_rows(spec: GraphSpec, vertices: np.ndarray,
                         table: np.ndarray, chunk: int) -> EvenGraph:
    count = len(vertices)
    row_lists = []
    degrees = np.zeros(count, dtype=np.int64)
    for lo in range(0, count, chunk):
        hi = min(lo + chunk, count)
        block = vertices[lo:hi, None]
        s = (block + vertices[None, :]) >> 1
        d = np.abs(block - vertices[None, :]) >> 1
        mask = table[s] & table[d]
        rows, cols = np.nonzero(mask)
        degrees[lo:hi] = np.bincount(rows, minlength=hi - lo)
        row_lists.append(cols.astype(np.int64))
    offsets = np.zeros(count + 1, dtype=np.int64)
    np.cumsum(degrees, out=offsets[1:])
    neighbors = np.concatenate(row_lists) if row_lists else np.zeros(0, np.int64)
    return EvenGraph(spec, vertices, offsets, neighbors)


def build_graph(spec: GraphSpec, max_n: int = DEFAULT_MAX_N) -> EvenGraph:
    """Materialize the graph by pairwise predicate evaluation (chunked O(n^2))."""
    if spec.n > max_n:
        raise CapacityError(f"n={spec.n} exceeds the configured maximum {max_n}")
    vertices = spec.vertex_values()
    table = spec.odd_set.membership_table()
    # table[odd y] is membership; even indices are False, so the parity and
    # diagonal (d == 0) cases fall out without special-casing.
    chunk = max(1, 8_000_000 // max(len(vertices), 1))
    return _csr_from_dense_rows(spec, vertices, table, chunk)


def _combined_odd_set(g: EvenGraph, h: EvenGraph) -> OddSetSpec:
    o1, o2 = g.spec.odd_set, h.spec.odd_set
    n = o1.n
    if o1 == o2:
        return o1
    if o1.kind in (KIND_PMM, KIND_INTERSECTION) and o2.kind in (KIND_PMM, KIND_INTERSECTION):
        return OddSetSpec.prime_intersection(sorted(set(o1.primes) | set(o2.primes)), n)
    members = [y for y in range(1, 2 * n, 2) if o1.contains(y) and o2.contains(y)]
    return OddSetSpec.explicit(members, n)


def intersect_graphs(g: EvenGraph, h: EvenGraph) -> EvenGraph:
    """Edge-set intersection of two graphs over the same vertex set."""
    if not np.array_equal(g.vertices, h.vertices):
        raise GraphMismatchError("graphs have different vertex sets")
    count = g.vertex_count
    key_g = np.repeat(np.arange(count, dtype=np.int64), g.degrees()) * count + g.neighbors
    key_h = np.repeat(np.arange(count, dtype=np.int64), h.degrees()) * count + h.neighbors
    common = np.intersect1d(key_g, key_h, assume_unique=True)
    src, dst = np.divmod(common, count)
    degrees = np.bincount(src, minlength=count)
    offsets = np.zeros(count + 1, dtype=np.int64)
    np.cumsum(degrees, out=offsets[1:])
    spec = GraphSpec(_combined_odd_set(g, h), g.spec.n, g.spec.include_zero)
    return EvenGraph(spec, g.vertices.copy(), offsets, dst)


def graphs_equal(g: EvenGraph, h: EvenGraph) -> bool:
    return (np.array_equal(g.vertices, h.vertices)
            and np.array_equal(g.offsets, h.offsets)
            and np.array_equal(g.neighbors, h.neighbors))


def restrict_to_prefix(g: EvenGraph, m: int) -> EvenGraph:
    """Induced subgraph on the vertices <= 2m, re-labelled as a size-m graph."""
    keep = g.vertices <= 2 * m
    count = int(keep.sum())
    src = np.repeat(np.arange(g.vertex_count), g.degrees())
    mask = keep[src] & keep[g.neighbors]
    src, dst = src[mask], g.neighbors[mask]
    degrees = np.bincount(src, minlength=g.vertex_count)[:count]
    offsets = np.zeros(count + 1, dtype=np.int64)
    np.cumsum(degrees, out=offsets[1:])
    sub_spec = GraphSpec(
        _with_n(g.spec.odd_set, m), m, g.spec.include_zero
    )
    return EvenGraph(sub_spec, g.vertices[keep].copy(), offsets, dst)


def _with_n(odd_set: OddSetSpec, m: int) -> OddSetSpec:
    if odd_set.kind == KIND_PMM:
        return OddSetSpec.prime_multiple_missing(odd_set.primes[0], m)
    if odd_set.kind == KIND_INTERSECTION:
        return OddSetSpec.prime_intersection(odd_set.primes, m)
    if odd_set.kind == KIND_GOLDBACH:
        return OddSetSpec.goldbach(m)
    if odd_set.kind == KIND_NEAR_GOLDBACH:
        return OddSetSpec.near_goldbach(m)
    members = [y for y in odd_set.members if y <= 2 * m - 1]
    return OddSetSpec.explicit(members, m)


def verify_induced(kind: str, m: int, n: int) -> bool:
    """Does the restriction of the size-n graph to vertices <= 2m equal the
    size-m graph edge-for-edge?"""
    if not 1 <= m < n:
        raise DomainError(f"need 1 <= m < n, got m={m}, n={n}")
    big = build_graph(spec_from_kind(kind, n))
    small = build_graph(spec_from_kind(kind, m))
    return graphs_equal(restrict_to_prefix(big, m), small)


def iter_prefix_graphs(kind: str, n_hi: int, n_lo: int = 1):
    """Yield (n, graph) for n_lo <= n <= n_hi from one top-level build.

    Membership in every odd set here depends on the queried value alone, so
    the size-n graph is the induced subgraph of the size-n_hi graph on the
    vertices <= 2n; with edges sorted by larger endpoint each restriction is
    an array prefix.  Batch ranges of graphs come out far cheaper than n_hi
    separate pairwise builds.
    """
    full = build_graph(spec_from_kind(kind, n_hi))
    include_zero = full.spec.include_zero
    shift = 0 if include_zero else 1
    edges = full.edge_values()
    if len(edges):
        order = np.argsort(edges[:, 1], kind="stable")
        eu = edges[order, 0] // 2 - shift
        ev = edges[order, 1] // 2 - shift
        tops = edges[order, 1]
    else:
        eu = ev = tops = np.zeros(0, dtype=np.int64)
    for n in range(n_lo, n_hi + 1):
        hi = int(np.searchsorted(tops, 2 * n, side="right"))
        count = n + (1 if include_zero else 0)
        src = np.concatenate([eu[:hi], ev[:hi]])
        dst = np.concatenate([ev[:hi], eu[:hi]])
        sorter = np.lexsort((dst, src))
        src, dst = src[sorter], dst[sorter]
        offsets = np.zeros(count + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=count), out=offsets[1:])
        spec = GraphSpec(_with_n(full.spec.odd_set, n), n, include_zero)
        yield n, EvenGraph(spec, spec.vertex_values(), offsets, dst)
