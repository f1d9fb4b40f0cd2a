"""Connectivity, distances, eccentricities, diameter.

The all-sources kernel expands every vertex's reach ball one level per round
using a thresholded float32 matrix product (exact: entries are 0/1-count sums
well inside float32's integer range before each re-threshold).  This is a
level-synchronous breadth-first search run from all sources simultaneously;
output is bit-identical regardless of BLAS thread count.  Single-source
queries use an ordinary queue-based search over the compressed adjacency.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .graphs import EvenGraph

INFINITY = math.inf

#: Hard stop for the all-sources kernel; no graph here needs anywhere near it.
_MAX_LEVELS = 64


@dataclass
class DistanceReport:
    """BFS distances from one source vertex; unreachable entries are inf."""

    source: int
    distances: dict[int, float]
    eccentricity: float


def _single_source_levels(graph: EvenGraph, source: int) -> np.ndarray:
    """Distance (in hops) from source to every vertex index; -1 unreachable."""
    start = graph.index_of(source)
    dist = np.full(graph.vertex_count, -1, dtype=np.int64)
    dist[start] = 0
    queue = deque([start])
    offsets, neighbors = graph.offsets, graph.neighbors
    while queue:
        u = queue.popleft()
        du = dist[u]
        for w in neighbors[offsets[u]:offsets[u + 1]]:
            if dist[w] < 0:
                dist[w] = du + 1
                queue.append(int(w))
    return dist


def distance_report(graph: EvenGraph, source: int) -> DistanceReport:
    levels = _single_source_levels(graph, source)
    distances = {
        int(v): (float(d) if d >= 0 else INFINITY)
        for v, d in zip(graph.vertices, levels)
    }
    ecc = INFINITY if (levels < 0).any() else float(levels.max())
    return DistanceReport(source, distances, ecc)


def distance(graph: EvenGraph, u: int, v: int):
    """Shortest-path length between u and v (inf if unreachable)."""
    iv = graph.index_of(v)
    levels = _single_source_levels(graph, u)
    return int(levels[iv]) if levels[iv] >= 0 else INFINITY


def _matrix_eccentricities(m: np.ndarray) -> np.ndarray:
    """Per-row fill level of R <- (R @ M) > 0 from R = M (M closed adjacency)."""
    count = len(m)
    ecc = np.full(count, INFINITY)
    reach = m
    full = reach.all(axis=1)
    ecc[full] = 1.0
    pending = ~full
    level = 1
    while pending.any() and level < _MAX_LEVELS:
        level += 1
        grown = (reach @ m > 0.0).astype(np.float32)
        full = grown.all(axis=1)
        ecc[full & pending] = float(level)
        pending &= ~full
        if np.array_equal(grown, reach):
            break  # reach sets stable: remaining rows are disconnected
        reach = grown
    return ecc


def _twin_classes(graph: EvenGraph):
    """Group vertices of one partite side by identical open neighborhoods.

    Twins are never adjacent (a twin edge would be a self-loop), a neighbor
    of one twin neighbors them all, and two members of a class with nonzero
    degree sit at distance exactly 2 through any shared neighbor; distances
    between distinct classes therefore transfer to their members unchanged.
    """
    offsets, neighbors = graph.offsets, graph.neighbors
    ids = {}
    class_of = np.empty(graph.vertex_count, dtype=np.int64)
    reps = []
    for u in range(graph.vertex_count):
        side = int(graph.vertices[u]) % 4 // 2
        key = (side, neighbors[offsets[u]:offsets[u + 1]].tobytes())
        cid = ids.get(key)
        if cid is None:
            cid = len(reps)
            ids[key] = cid
            reps.append(u)
        class_of[u] = cid
    return np.asarray(reps), class_of


def _bipartite_fill_levels(cross: np.ndarray):
    """Exact reach fill levels over a bipartite adjacency block.

    ``cross`` is the X-by-Y 0/1 matrix.  Maintains the odd-distance relation
    X->Y and the even-distance relations X->X and Y->Y and advances each by
    alternating products; entries stay exact 0/1 counts in float32.  Returns
    (ecc_x, ecc_y): per-row maxima over both target sides, inf where a side
    is never covered (disconnected).
    """
    nx, ny = cross.shape
    rx = np.eye(nx, dtype=np.float32)
    sy = np.eye(ny, dtype=np.float32)
    ry = cross.astype(np.float32)
    rx_fill = np.full(nx, INFINITY)
    sy_fill = np.full(ny, INFINITY)
    ry_row_fill = np.full(nx, INFINITY)
    ry_col_fill = np.full(ny, INFINITY)

    def note(levels, mask, level):
        fresh = mask & np.isinf(levels)
        levels[fresh] = float(level)

    note(rx_fill, rx.all(axis=1), 0)
    note(sy_fill, sy.all(axis=1), 0)
    note(ry_row_fill, ry.all(axis=1), 1)
    note(ry_col_fill, ry.all(axis=0), 1)
    level = 1
    while level < _MAX_LEVELS:
        rx_new = ((ry @ cross.T) > 0).astype(np.float32)
        np.maximum(rx_new, rx, out=rx_new)
        sy_new = ((ry.T @ cross) > 0).astype(np.float32)
        np.maximum(sy_new, sy, out=sy_new)
        note(rx_fill, rx_new.all(axis=1), level + 1)
        note(sy_fill, sy_new.all(axis=1), level + 1)
        ry_new = ((rx_new @ cross) > 0).astype(np.float32)
        np.maximum(ry_new, ry, out=ry_new)
        note(ry_row_fill, ry_new.all(axis=1), level + 2)
        note(ry_col_fill, ry_new.all(axis=0), level + 2)
        done = (np.isfinite(rx_fill).all() and np.isfinite(sy_fill).all()
                and np.isfinite(ry_row_fill).all()
                and np.isfinite(ry_col_fill).all())
        stable = (np.array_equal(rx_new, rx) and np.array_equal(sy_new, sy)
                  and np.array_equal(ry_new, ry))
        rx, sy, ry = rx_new, sy_new, ry_new
        level += 2
        if done or stable:
            break
    if ny == 0:
        ecc_x = rx_fill
    else:
        ecc_x = np.maximum(rx_fill, ry_row_fill)
    if nx == 0:
        ecc_y = sy_fill
    else:
        ecc_y = np.maximum(sy_fill, ry_col_fill)
    return ecc_x, ecc_y


def eccentricities(graph: EvenGraph, compress: bool = True) -> np.ndarray:
    """Exact eccentricity of every vertex (inf where the graph is disconnected).

    Default path: collapse twin classes per partite side, then run the
    bipartite level kernel on the cross-adjacency block (every graph here is
    bipartite across the halves mod 4).  ``compress=False`` runs a plain
    dense square kernel instead and exists for cross-validation.
    """
    count = graph.vertex_count
    ecc = np.full(count, INFINITY)
    if count == 0:
        return ecc
    if count == 1:
        ecc[0] = 0.0
        return ecc
    if not compress:
        m = graph.adjacency_matrix().astype(np.float32)
        np.fill_diagonal(m, 1.0)
        return _matrix_eccentricities(m)
    reps, class_of = _twin_classes(graph)
    sides = (graph.vertices[reps] % 4) // 2  # 0: X classes, 1: Y classes
    x_classes = np.flatnonzero(sides == 0)
    y_classes = np.flatnonzero(sides == 1)
    x_pos = {int(c): i for i, c in enumerate(x_classes)}
    y_pos = {int(c): i for i, c in enumerate(y_classes)}
    cross = np.zeros((len(x_classes), len(y_classes)), dtype=np.float32)
    offsets, neighbors = graph.offsets, graph.neighbors
    for i, ci in enumerate(x_classes):
        rep = reps[ci]
        for cj in np.unique(class_of[neighbors[offsets[rep]:offsets[rep + 1]]]):
            cross[i, y_pos[int(cj)]] = 1.0
    ecc_x, ecc_y = _bipartite_fill_levels(cross)
    class_ecc = np.empty(len(reps))
    class_ecc[x_classes] = ecc_x
    class_ecc[y_classes] = ecc_y
    sizes = np.bincount(class_of, minlength=len(reps))
    degrees = graph.degrees()
    ecc = class_ecc[class_of]
    shared = (sizes[class_of] > 1) & (degrees > 0)
    ecc[shared] = np.maximum(ecc[shared], 2.0)
    lonely_twin = (sizes[class_of] > 1) & (degrees == 0)
    ecc[lonely_twin] = INFINITY
    return ecc


def diameter(graph: EvenGraph):
    """Max eccentricity; inf for disconnected graphs, 0 for a single vertex."""
    if graph.vertex_count == 0:
        raise DomainError("diameter of an empty graph is undefined")
    ecc = eccentricities(graph)
    top = ecc.max()
    return int(top) if math.isfinite(top) else INFINITY


def connected_components(graph: EvenGraph) -> list[list[int]]:
    """Maximal connected vertex sets, ordered by smallest member."""
    count = graph.vertex_count
    seen = np.zeros(count, dtype=bool)
    components = []
    offsets, neighbors = graph.offsets, graph.neighbors
    for start in range(count):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        members = []
        while stack:
            u = stack.pop()
            members.append(u)
            for w in neighbors[offsets[u]:offsets[u + 1]]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(int(w))
        components.append(sorted(int(graph.vertices[i]) for i in members))
    components.sort(key=lambda comp: comp[0])
    return components


def is_connected(graph: EvenGraph) -> bool:
    if graph.vertex_count <= 1:
        return True
    levels = _single_source_levels(graph, int(graph.vertices[0]))
    return not (levels < 0).any()
