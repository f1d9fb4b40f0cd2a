"""Structure decompositions, biadjacency layouts, girth, induced cycles.

Each graph family splits into an independent set (the multiples of the
dropped prime) plus arithmetic-progression paths; the decompositions here are
built from residue arithmetic alone and are validated against independently
built graphs by exact adjacency-matrix reconstruction (``validate_*``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExhaustedError, DomainError, LayoutError
from .graphs import EvenGraph
from .metrics import INFINITY
from .oddsets import KIND_INTERSECTION, KIND_PMM, eta, is_odd_prime


# ---------------------------------------------------------------------------
# Decompositions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class G3Decomposition:
    """Independent set (v1: 0 mod 12, v2: 6 mod 12) plus one path."""

    v1: tuple[int, ...]
    v2: tuple[int, ...]
    path: tuple[int, ...]


@dataclass(frozen=True)
class G5Decomposition:
    """Independent set a (0 mod 20-ish X side) and f, plus two paths.

    Blocks follow the residue classes mod 5 inside each partite class:
    a, d, e sit in X (0 mod 4), f, b, c in Y (2 mod 4); d/b hold residues
    1 and 4, e/c hold residues 2 and 3.  path_bd runs over b+d, path_ce
    over c+e.
    """

    a: tuple[int, ...]
    d: tuple[int, ...]
    e: tuple[int, ...]
    f: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...]
    path_bd: tuple[int, ...]
    path_ce: tuple[int, ...]


@dataclass(frozen=True)
class G35Decomposition:
    """Independent set plus the initial 10-vertex path and 5-vertex strips.

    ``strips`` hold ascending vertex lists ordered by first element; a strip
    faces v1 when its smallest vertex is congruent 2 mod 4 (those vertices
    attach to multiples of 12), otherwise it faces v2.
    """

    v1: tuple[int, ...]
    v2: tuple[int, ...]
    initial_path: tuple[int, ...]
    strips: tuple[tuple[int, ...], ...]
    strip_kinds: tuple[str, ...]


@dataclass(frozen=True)
class GeneralizedDecomposition:
    """Multiples of p as the independent set, (p-1)/2 residue-pair paths."""

    p: int
    indep_x: tuple[int, ...]
    indep_y: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]


def _vertices(n: int) -> list[int]:
    return list(range(2, 2 * n + 1, 2))


def _residue_paths(p: int, verts) -> list[tuple[int, ...]]:
    """For each residue pair {r, p-r}: the two even classes mod 2p summing to
    2p, walked descending along the lower class then ascending the upper."""
    paths = []
    for r in range(1, (p - 1) // 2 + 1):
        evens = [c for c in range(2, 2 * p, 2) if c % p in (r, p - r)]
        c_lo, c_hi = min(evens), max(evens)
        lo = [v for v in verts if v % (2 * p) == c_lo]
        hi = [v for v in verts if v % (2 * p) == c_hi]
        paths.append(tuple(lo[::-1] + hi))
    return paths


def generalized_decomposition(p: int, n: int) -> GeneralizedDecomposition:
    if not is_odd_prime(p):
        raise DomainError(f"p must be an odd prime, got {p}")
    verts = _vertices(n)
    indep = [v for v in verts if v % p == 0]
    indep_x = tuple(v for v in indep if v % 4 == 0)
    indep_y = tuple(v for v in indep if v % 4 == 2)
    return GeneralizedDecomposition(p, indep_x, indep_y,
                                    tuple(_residue_paths(p, verts)))


def decompose_g3(n: int) -> G3Decomposition:
    dec = generalized_decomposition(3, n)
    return G3Decomposition(dec.indep_x, dec.indep_y, dec.paths[0])


def decompose_g5(n: int) -> G5Decomposition:
    dec = generalized_decomposition(5, n)
    path_bd, path_ce = dec.paths
    verts = _vertices(n)
    x = [v for v in verts if v % 4 == 0]
    y = [v for v in verts if v % 4 == 2]
    blocks = {
        "a": tuple(v for v in x if v % 5 == 0),
        "d": tuple(v for v in x if v % 5 in (1, 4)),
        "e": tuple(v for v in x if v % 5 in (2, 3)),
        "f": tuple(v for v in y if v % 5 == 0),
        "b": tuple(v for v in y if v % 5 in (1, 4)),
        "c": tuple(v for v in y if v % 5 in (2, 3)),
    }
    return G5Decomposition(path_bd=path_bd, path_ce=path_ce, **blocks)


#: The fixed initial path; every member graph of the 3,5 family induces it.
INITIAL_PATH = (32, 26, 20, 14, 8, 2, 4, 10, 16, 22)


def decompose_g35(n: int) -> G35Decomposition:
    if n < 13:
        raise DomainError(
            "the 3,5 intersection coincides with the multiples-of-3-missing "
            f"graph for n <= 12; decompose_g3 covers n={n}")
    base = decompose_g3(n)
    path = base.path
    # split the single path wherever the half-sum is a non-trivial multiple
    # of 5, i.e. between x, y with x+y divisible by 10 and larger than 10
    segments = []
    current = [path[0]]
    for x, y in zip(path, path[1:]):
        if (x + y) % 10 == 0 and x + y > 10:
            segments.append(tuple(current))
            current = [y]
        else:
            current.append(y)
    segments.append(tuple(current))
    initial = next(seg for seg in segments if 2 in seg)
    strips = sorted((tuple(sorted(seg)) for seg in segments if 2 not in seg),
                    key=lambda s: s[0])
    kinds = tuple("v1" if s[0] % 4 == 2 else "v2" for s in strips)
    return G35Decomposition(base.v1, base.v2, initial, tuple(strips), kinds)


# ---------------------------------------------------------------------------
# Neighbor profiles inside the 3,5 intersection
# ---------------------------------------------------------------------------

#: Neighbors of an independent vertex inside the initial path, keyed by
#: (side, last digit); the difference-10 exception is applied on top.
_P0_PROFILE = {
    ("v1", 2): (26, 14, 10), ("v1", 8): (26, 14, 10),
    ("v1", 4): (2, 10, 22), ("v1", 6): (2, 10, 22),
    ("v1", 0): (26, 14, 2, 22),
    ("v2", 2): (20, 4, 16), ("v2", 8): (20, 4, 16),
    ("v2", 4): (32, 20, 8), ("v2", 6): (32, 20, 8),
    ("v2", 0): (32, 8, 4, 16),
}

#: 1-based positions inside a 5-vertex strip, keyed by (side, facing, digit).
_STRIP_PROFILE = {
    ("v1", "v1", 2): (3,), ("v1", "v1", 8): (3,),
    ("v1", "v1", 4): (1, 3, 5), ("v1", "v1", 6): (1, 3, 5),
    ("v1", "v1", 0): (1, 5),
    ("v1", "v2", 2): (2, 4), ("v1", "v2", 8): (2, 4),
    ("v1", "v2", 4): (), ("v1", "v2", 6): (),
    ("v1", "v2", 0): (2, 4),
    ("v2", "v1", 2): (2, 4), ("v2", "v1", 8): (2, 4),
    ("v2", "v1", 4): (), ("v2", "v1", 6): (),
    ("v2", "v1", 0): (2, 4),
    ("v2", "v2", 2): (3,), ("v2", "v2", 8): (3,),
    ("v2", "v2", 4): (1, 3, 5), ("v2", "v2", 6): (1, 3, 5),
    ("v2", "v2", 0): (1, 5),
}


def strip_profile(x: int, target) -> frozenset[int]:
    """Neighbor set of an independent vertex x inside one path segment.

    ``target`` is the vertex tuple of the initial path or of one strip.  The
    base profile depends only on x's side (multiple of 12 vs 6 mod 12) and
    its last digit; on top of it, a segment member whose distance from x is
    exactly 10 is adjacent unless it is a multiple of 5, and a member whose
    sum with x is exactly 10 is always adjacent (both cases halve to the
    trivial multiple 5 on one side, leaving the other side to decide).
    """
    if x % 6 != 0:
        raise DomainError(f"{x} is not in the independent set")
    side = "v1" if x % 12 == 0 else "v2"
    digit = x % 10
    target = tuple(target)
    if 2 in target:  # initial path
        base = set(_P0_PROFILE[(side, digit)]) & set(target)
    else:
        ordered = tuple(sorted(target))
        facing = "v1" if ordered[0] % 4 == 2 else "v2"
        positions = _STRIP_PROFILE[(side, facing, digit)]
        base = {ordered[pos - 1] for pos in positions if pos <= len(ordered)}
    exception = {y for y in target if abs(x - y) == 10 and y % 5 != 0}
    exception |= {y for y in target if x + y == 10}
    return frozenset(base | exception)


# ---------------------------------------------------------------------------
# Decomposition validation by exact matrix reconstruction
# ---------------------------------------------------------------------------

def _expected_from_blocks(graph: EvenGraph, complete_pairs, path_tuples):
    count = graph.vertex_count
    expected = np.zeros((count, count), dtype=bool)
    idx = graph.index_of
    for block_a, block_b in complete_pairs:
        ia = [idx(v) for v in block_a]
        ib = [idx(v) for v in block_b]
        if ia and ib:
            expected[np.ix_(ia, ib)] = True
            expected[np.ix_(ib, ia)] = True
    for path in path_tuples:
        for u, w in zip(path, path[1:]):
            expected[idx(u), idx(w)] = True
            expected[idx(w), idx(u)] = True
    return expected


def _matrix_mismatches(graph: EvenGraph, expected) -> list[str]:
    actual = graph.adjacency_matrix()
    bad = np.argwhere(actual != expected)
    out = []
    for i, j in bad[:8]:
        if i < j:
            u, w = int(graph.vertices[i]), int(graph.vertices[j])
            kind = "unexpected edge" if actual[i, j] else "missing edge"
            out.append(f"{kind} {u}~{w}")
    return out


def validate_generalized(graph: EvenGraph, dec: GeneralizedDecomposition) -> list[str]:
    """Empty list iff the decomposition reproduces the graph exactly."""
    problems = []
    verts = [int(v) for v in graph.vertices]
    members = list(dec.indep_x) + list(dec.indep_y) + [
        v for path in dec.paths for v in path]
    if sorted(members) != sorted(verts):
        problems.append("decomposition does not partition the vertex set")
        return problems
    if len(dec.paths) != eta(dec.p):
        problems.append(
            f"expected {eta(dec.p)} paths, decomposition has {len(dec.paths)}")
    complete = []
    for r, path in enumerate(dec.paths):
        px = [v for v in path if v % 4 == 0]
        py = [v for v in path if v % 4 == 2]
        complete.append((px, dec.indep_y))
        complete.append((py, dec.indep_x))
        for q in range(r + 1, len(dec.paths)):
            other = dec.paths[q]
            complete.append((px, [v for v in other if v % 4 == 2]))
            complete.append((py, [v for v in other if v % 4 == 0]))
    expected = _expected_from_blocks(graph, complete, dec.paths)
    problems.extend(_matrix_mismatches(graph, expected))
    return problems


def validate_g3(graph: EvenGraph, dec: G3Decomposition) -> list[str]:
    gen = GeneralizedDecomposition(3, dec.v1, dec.v2, (dec.path,))
    return validate_generalized(graph, gen)


def validate_g5(graph: EvenGraph, dec: G5Decomposition) -> list[str]:
    problems = []
    if tuple(sorted(dec.path_bd)) != tuple(sorted(dec.b + dec.d)):
        problems.append("path_bd does not cover blocks b and d")
    if tuple(sorted(dec.path_ce)) != tuple(sorted(dec.c + dec.e)):
        problems.append("path_ce does not cover blocks c and e")
    gen = GeneralizedDecomposition(5, dec.a, dec.f, (dec.path_bd, dec.path_ce))
    problems.extend(validate_generalized(graph, gen))
    return problems


def validate_g35(graph: EvenGraph, dec: G35Decomposition) -> list[str]:
    problems = []
    segments = (dec.initial_path,) + dec.strips
    members = list(dec.v1) + list(dec.v2) + [v for seg in segments for v in seg]
    if sorted(members) != sorted(int(v) for v in graph.vertices):
        return ["decomposition does not partition the vertex set"]
    for strip, kind in zip(dec.strips, dec.strip_kinds):
        if len(strip) > 5:
            problems.append(f"strip {strip} longer than 5")
        if strip[0] % 30 not in (8, 28):
            problems.append(f"strip start {strip[0]} not 38+30k or 28+30k")
        expect_kind = "v1" if strip[0] % 4 == 2 else "v2"
        if kind != expect_kind:
            problems.append(f"strip {strip} labelled {kind}, expected {expect_kind}")
    full = [s for s in dec.strips if len(s) == 5]
    partial = [s for s in dec.strips if len(s) < 5]
    if len(partial) > 2:
        problems.append(f"{len(partial)} partial strips, at most 2 expected")
    del full
    complete = []
    paths = []
    idxable = set(int(v) for v in graph.vertices)
    for seg in segments:
        paths.append(seg)
    for x in list(dec.v1) + list(dec.v2):
        for seg in segments:
            for y in strip_profile(x, seg):
                if y in idxable:
                    complete.append(((x,), (y,)))
    expected = _expected_from_blocks(graph, complete, paths)
    problems.extend(_matrix_mismatches(graph, expected))
    return problems


# ---------------------------------------------------------------------------
# Biadjacency layouts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BiadjacencyLayout:
    """Row/column vertex orders, the 0/1 matrix, and labelled block spans."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    matrix: np.ndarray
    row_blocks: tuple[tuple[str, int, int], ...]
    col_blocks: tuple[tuple[str, int, int], ...]
    rule: str

    def block(self, row_label: str, col_label: str) -> np.ndarray:
        r = next(b for b in self.row_blocks if b[0] == row_label)
        c = next(b for b in self.col_blocks if b[0] == col_label)
        return self.matrix[r[1]:r[2], c[1]:c[2]]


def _blocked(groups):
    order = []
    blocks = []
    for label, members in groups:
        blocks.append((label, len(order), len(order) + len(members)))
        order.extend(members)
    return tuple(order), tuple(blocks)


def _layout_orders(graph: EvenGraph):
    spec = graph.spec.odd_set
    verts = [int(v) for v in graph.vertices]
    x = [v for v in verts if v % 4 == 0]
    y = [v for v in verts if v % 4 == 2]
    if spec.kind == KIND_PMM and spec.primes == (3,):
        rows = _blocked([
            ("Y0", [v for v in y if v % 3 == 0]),
            ("Y1", [v for v in y if v % 3 == 1][::-1]),
            ("Y2", [v for v in y if v % 3 == 2]),
        ])
        cols = _blocked([
            ("X0", [v for v in x if v % 3 == 0]),
            ("X1", [v for v in x if v % 3 == 1][::-1]),
            ("X2", [v for v in x if v % 3 == 2]),
        ])
        return rows, cols, "paper-3"
    if spec.kind == KIND_PMM and spec.primes == (5,):
        dec = decompose_g5(graph.spec.n)
        rev_bd = dec.path_bd[::-1]
        rows = _blocked([
            ("F", list(dec.f)),
            ("B", [v for v in rev_bd if v % 4 == 2]),
            ("C", [v for v in dec.path_ce if v % 4 == 2]),
        ])
        cols = _blocked([
            ("A", list(dec.a)),
            ("D", [v for v in rev_bd if v % 4 == 0]),
            ("E", [v for v in dec.path_ce if v % 4 == 0]),
        ])
        return rows, cols, "paper-5"
    return None


def biadjacency(graph: EvenGraph, order: str = "auto") -> BiadjacencyLayout:
    """Biadjacency matrix of a bipartite graph in a canonical vertex order.

    ``order`` is "paper" (the block layout, only defined for the single-prime
    families 3 and 5), "natural" (both sides ascending), or "auto" (block
    layout when defined, else natural).
    """
    if 0 in graph._index:
        raise LayoutError("biadjacency is undefined with vertex 0 present")
    special = _layout_orders(graph)
    if order == "paper" and special is None:
        raise LayoutError(
            f"no block layout rule for kind {graph.spec.kind_label!r}")
    if order == "natural" or special is None:
        verts = [int(v) for v in graph.vertices]
        rows = _blocked([("Y", [v for v in verts if v % 4 == 2])])
        cols = _blocked([("X", [v for v in verts if v % 4 == 0])])
        rule = "natural"
    else:
        rows, cols, rule = special
    (row_order, row_blocks), (col_order, col_blocks) = rows, cols
    matrix = np.zeros((len(row_order), len(col_order)), dtype=np.int8)
    for i, u in enumerate(row_order):
        for j, w in enumerate(col_order):
            matrix[i, j] = 1 if graph.has_edge(u, w) else 0
    return BiadjacencyLayout(row_order, col_order, matrix,
                             row_blocks, col_blocks, rule)


def is_path_matrix(block: np.ndarray) -> bool:
    """Positional check: the 1-entries encode a path under the given order.

    Accepts the two interleavings that arise from walking the path and
    sending alternate vertices to rows and columns: row i covered by columns
    {i-1, i} or by columns {i, i+1} (clipped at the boundary).
    """
    block = np.asarray(block)
    r, c = block.shape
    if abs(r - c) > 1:
        return False
    if block.sum() != r + c - 1:
        return False
    for offset in (0, -1):
        want = np.zeros_like(block)
        for i in range(r):
            for j in (i + offset, i + offset + 1):
                if 0 <= j < c:
                    want[i, j] = 1
        if int(want.sum()) == r + c - 1 and np.array_equal(block != 0, want != 0):
            return True
    return False


# ---------------------------------------------------------------------------
# Girth and induced cycles
# ---------------------------------------------------------------------------

def _bipartite_by_halves(graph: EvenGraph) -> bool:
    edges = graph.edge_values()
    if len(edges) == 0:
        return True
    return bool((((edges[:, 0] % 4) // 2) != ((edges[:, 1] % 4) // 2)).all())


def shortest_cycle(graph: EvenGraph):
    """(length, witness vertex tuple) of a shortest cycle; (inf, None) if acyclic."""
    count = graph.vertex_count
    if graph.edge_count < 3:
        return INFINITY, None
    lower = 4 if _bipartite_by_halves(graph) else 3
    offsets, neighbors = graph.offsets, graph.neighbors
    best = INFINITY
    witness = None
    for s in range(count):
        dist = np.full(count, -1, dtype=np.int64)
        parent = np.full(count, -1, dtype=np.int64)
        dist[s] = 0
        queue = [s]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            if 2 * dist[u] >= best - 1:
                break  # deeper candidates through this root cannot improve
            for w in neighbors[offsets[u]:offsets[u + 1]]:
                w = int(w)
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    cand, cyc = _cycle_through(u, w, parent, dist)
                    if cand < best:
                        best, witness = cand, cyc
                        if best == lower:
                            return int(best), _values(graph, witness)
        if best == lower:
            break
    if witness is None:
        return INFINITY, None
    return int(best), _values(graph, witness)


def _cycle_through(u, w, parent, dist):
    """Close the non-tree edge (u, w) through the common BFS ancestor."""
    pu, pw = [u], [w]
    a, b = u, w
    while dist[a] > dist[b]:
        a = parent[a]
        pu.append(a)
    while dist[b] > dist[a]:
        b = parent[b]
        pw.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        pu.append(a)
        pw.append(b)
    cycle = pu + pw[-2::-1]
    return len(cycle), cycle


def _values(graph, idx_cycle):
    return tuple(int(graph.vertices[i]) for i in idx_cycle)


def girth(graph: EvenGraph):
    """Length of a shortest cycle; inf for forests."""
    return shortest_cycle(graph)[0]


def _adjacency_masks(graph: EvenGraph) -> list[int]:
    masks = [0] * graph.vertex_count
    offsets, neighbors = graph.offsets, graph.neighbors
    for u in range(graph.vertex_count):
        m = 0
        for w in neighbors[offsets[u]:offsets[u + 1]]:
            m |= 1 << int(w)
        masks[u] = m
    return masks


def find_induced_cycle(graph: EvenGraph, length: int,
                       node_budget: int = 10_000_000):
    """One induced cycle of exactly ``length`` as a vertex tuple, or None.

    Depth-first search over chord-free paths with bitmask pruning: the next
    vertex must neighbor the path tail and nothing earlier on the path,
    except that the final vertex must also close back to the start.  Cycles
    are canonicalized by smallest start vertex, so all members are > start.
    """
    if length < 3:
        raise DomainError("cycles have length at least 3")
    count = graph.vertex_count
    if count < length:
        return None
    masks = _adjacency_masks(graph)
    budget = node_budget

    def dfs(start, path, used, f_all, f_inner):
        # f_all: neighbors of path[:-1]; f_inner: neighbors of path[1:-1]
        nonlocal budget
        budget -= 1
        if budget < 0:
            raise BudgetExhaustedError(
                f"induced-cycle search exceeded {node_budget} expansions")
        tail = path[-1]
        above = -(1 << (start + 1))
        if len(path) == length - 1:
            candidates = masks[tail] & masks[start] & ~f_inner & ~used & above
            if candidates:
                return path + [candidates.bit_length() - 1]
            return None
        candidates = masks[tail] & ~f_all & ~used & above
        while candidates:
            low = candidates & -candidates
            v = low.bit_length() - 1
            result = dfs(start, path + [v], used | low,
                         f_all | masks[tail],
                         f_inner if tail == start else f_inner | masks[tail])
            if result is not None:
                return result
            candidates ^= low
        return None

    for start in range(count):
        hit = dfs(start, [start], 1 << start, 0, 0)
        if hit is not None:
            return _values(graph, hit)
    return None


def induced_cycle_census(graph: EvenGraph, max_len: int,
                         node_budget: int = 10_000_000) -> frozenset[int]:
    """Exact set of lengths l <= max_len with an induced l-cycle present."""
    if max_len < 4 or max_len % 2 != 0:
        raise DomainError("max_len must be even and at least 4")
    found = set()
    lengths = list(range(4, max_len + 1, 2))
    if not _bipartite_by_halves(graph):
        lengths = list(range(3, max_len + 1))
    for length in lengths:
        if find_induced_cycle(graph, length, node_budget) is not None:
            found.add(length)
    return frozenset(found)


# ---------------------------------------------------------------------------
# Small-shape recognition (degree sequence + explicit edge predicates)
# ---------------------------------------------------------------------------

def complete_bipartite_defect(graph: EvenGraph):
    """(|X|, |Y|, missing cross edges) against the full bipartite graph."""
    x, y = graph.partite_sets()
    missing = [(int(u), int(w)) for u in x for w in y if not graph.has_edge(u, w)]
    return len(x), len(y), missing


def small_shape_label(graph: EvenGraph) -> str | None:
    """Recognize tiny standard shapes; None if no label applies."""
    count, edges = graph.vertex_count, graph.edge_count
    if count == 1:
        return "K1"
    degrees = sorted(int(d) for d in graph.degrees())
    from .metrics import is_connected
    connected = is_connected(graph)
    if connected and edges == count - 1 and degrees[-1] <= 2:
        return f"P{count}"
    if connected and edges == count and degrees == [2] * count:
        return f"C{count}"
    sx, sy, missing = complete_bipartite_defect(graph)
    lo, hi = sorted((sx, sy))
    if not missing:
        return f"K{lo},{hi}"
    if len(missing) == 1:
        return f"K{lo},{hi} minus one edge"
    if len(missing) == 2 and len({v for e in missing for v in e}) == 4:
        return f"K{lo},{hi} minus two disjoint edges"
    return None
