"""Weighted directed word network and its structural statistics.

The graph is immutable after construction and stored in CSR form in both
directions, with rows sorted by neighbour id. That keeps every traversal
deterministic, makes weight lookup a binary search, and lets the heavier
routines (components, percolation scans, diameter) run on flat arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Literal, Sequence

import numpy as np

from .errors import ValidationError


@dataclass(frozen=True, eq=False)
class WeightedDigraph:
    """Directed graph with at most one weighted edge per ordered node pair.

    Node ids are dense indices into `words`. Every weight lies in (0, 1].
    `in_*` arrays mirror `out_*` exactly (same edge multiset, transposed).
    """

    words: tuple[str, ...]
    out_ptr: np.ndarray
    out_dst: np.ndarray
    out_wt: np.ndarray
    in_ptr: np.ndarray
    in_src: np.ndarray
    in_wt: np.ndarray

    @classmethod
    def from_edges(
        cls,
        words: Sequence[str],
        edges: Iterable[tuple[int, int, float]],
    ) -> "WeightedDigraph":
        """Build a graph from (source id, target id, weight) triples."""
        triples = list(edges)
        if triples:
            src = np.asarray([e[0] for e in triples], dtype=np.int64)
            dst = np.asarray([e[1] for e in triples], dtype=np.int64)
            wt = np.asarray([e[2] for e in triples], dtype=np.float64)
        else:
            src = np.empty(0, dtype=np.int64)
            dst = np.empty(0, dtype=np.int64)
            wt = np.empty(0, dtype=np.float64)
        return cls._from_arrays(tuple(words), src, dst, wt)

    @classmethod
    def _from_arrays(
        cls,
        words: tuple[str, ...],
        src: np.ndarray,
        dst: np.ndarray,
        wt: np.ndarray,
    ) -> "WeightedDigraph":
        n = len(words)
        if len(set(words)) != n:
            raise ValidationError("word labels must be unique")
        if src.size:
            if src.min() < 0 or src.max() >= n or dst.min() < 0 or dst.max() >= n:
                raise IndexError("edge endpoint outside 0..node_count-1")
            if wt.min() <= 0.0 or wt.max() > 1.0:
                raise ValidationError("edge weights must lie in (0, 1]")
        order = np.lexsort((dst, src))
        src, dst, wt = src[order], dst[order], wt[order]
        if src.size > 1:
            dup = (src[1:] == src[:-1]) & (dst[1:] == dst[:-1])
            if dup.any():
                k = int(np.flatnonzero(dup)[0])
                raise ValidationError(
                    f"duplicate directed edge {words[src[k]]!r} -> {words[dst[k]]!r}"
                )
        out_ptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=out_ptr[1:])
        rev = np.lexsort((src, dst))
        in_src, in_dst, in_wt = src[rev], dst[rev], wt[rev]
        in_ptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(in_dst, minlength=n), out=in_ptr[1:])
        return cls(words, out_ptr, dst, wt, in_ptr, in_src, in_wt)

    @property
    def node_count(self) -> int:
        return len(self.words)

    @property
    def edge_count(self) -> int:
        return int(self.out_dst.size)

    @cached_property
    def _word_ids(self) -> dict[str, int]:
        return {w: i for i, w in enumerate(self.words)}

    def index_of(self, word: str) -> int | None:
        return self._word_ids.get(word)

    def _check_id(self, v: int) -> None:
        if not 0 <= v < self.node_count:
            raise IndexError(f"node id {v} outside 0..{self.node_count - 1}")

    def out_degree(self, v: int) -> int:
        """Number of distinct out-neighbours of v."""
        self._check_id(v)
        return int(self.out_ptr[v + 1] - self.out_ptr[v])

    def in_degree(self, v: int) -> int:
        self._check_id(v)
        return int(self.in_ptr[v + 1] - self.in_ptr[v])

    def out_edges(self, v: int) -> list[tuple[int, float]]:
        """(target id, weight) pairs of v, sorted by target id."""
        self._check_id(v)
        lo, hi = int(self.out_ptr[v]), int(self.out_ptr[v + 1])
        return list(zip(self.out_dst[lo:hi].tolist(), self.out_wt[lo:hi].tolist()))

    def in_edges(self, v: int) -> list[tuple[int, float]]:
        """(source id, weight) pairs into v, sorted by source id."""
        self._check_id(v)
        lo, hi = int(self.in_ptr[v]), int(self.in_ptr[v + 1])
        return list(zip(self.in_src[lo:hi].tolist(), self.in_wt[lo:hi].tolist()))

    def weight(self, s: int, t: int) -> float:
        """Weight of the edge s -> t, or 0.0 when the edge is absent."""
        self._check_id(s)
        self._check_id(t)
        lo, hi = int(self.out_ptr[s]), int(self.out_ptr[s + 1])
        k = lo + int(np.searchsorted(self.out_dst[lo:hi], t))
        if k < hi and self.out_dst[k] == t:
            return float(self.out_wt[k])
        return 0.0

    def edges(self) -> Iterator[tuple[int, int, float]]:
        """All (source, target, weight) triples in source-major order."""
        for v in range(self.node_count):
            lo, hi = int(self.out_ptr[v]), int(self.out_ptr[v + 1])
            for k in range(lo, hi):
                yield v, int(self.out_dst[k]), float(self.out_wt[k])

    def same_edges(self, other: "WeightedDigraph") -> bool:
        """True when both graphs hold the identical labelled edge multiset."""
        return (
            self.words == other.words
            and np.array_equal(self.out_ptr, other.out_ptr)
            and np.array_equal(self.out_dst, other.out_dst)
            and np.array_equal(self.out_wt, other.out_wt)
        )


@dataclass(frozen=True)
class GraphStats:
    node_count: int
    mean_degree: float
    diameter: int
    transitivity: float
    scc_fraction: float


def degree_histogram(
    g: WeightedDigraph, direction: Literal["in", "out"]
) -> list[tuple[int, int]]:
    """(degree, node count) pairs for the chosen direction, sorted by degree.

    Counts sum to node_count; degrees with no nodes are omitted.
    """
    if direction == "out":
        deg = np.diff(g.out_ptr)
    elif direction == "in":
        deg = np.diff(g.in_ptr)
    else:
        raise ValidationError(f"direction must be 'in' or 'out', got {direction!r}")
    vals, counts = np.unique(deg, return_counts=True)
    return [(int(d), int(c)) for d, c in zip(vals, counts)]


def weight_cdf(g: WeightedDigraph) -> list[tuple[float, float]]:
    """(w, fraction of edges with weight <= w) over the distinct weights."""
    if g.edge_count == 0:
        raise ValidationError("weight_cdf of a graph with no edges")
    vals, counts = np.unique(g.out_wt, return_counts=True)
    frac = np.cumsum(counts) / g.edge_count
    return [(float(w), float(f)) for w, f in zip(vals, frac)]


def filter_edges(g: WeightedDigraph, min_w: float, max_w: float) -> WeightedDigraph:
    """Keep exactly the edges with min_w <= w <= max_w. Node set unchanged."""
    if not (0.0 <= min_w <= max_w <= 1.0):
        raise ValidationError(f"need 0 <= min_w <= max_w <= 1, got [{min_w}, {max_w}]")
    keep = (g.out_wt >= min_w) & (g.out_wt <= max_w)
    src = np.repeat(np.arange(g.node_count, dtype=np.int64), np.diff(g.out_ptr))
    return WeightedDigraph._from_arrays(
        g.words, src[keep], g.out_dst[keep], g.out_wt[keep]
    )


def strongly_connected_components(g: WeightedDigraph) -> list[set[int]]:
    """Partition node ids into maximal mutually-reachable sets (Tarjan).

    Iterative so that deep chains cannot hit the recursion limit.
    """
    n = g.node_count
    ptr = g.out_ptr.tolist()
    dst = g.out_dst.tolist()
    index = [-1] * n
    low = [0] * n
    on_stack = bytearray(n)
    stack: list[int] = []
    comps: list[set[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, ptr[root])]
        while work:
            v, ei = work[-1]
            if index[v] == -1:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = 1
            advanced = False
            end = ptr[v + 1]
            while ei < end:
                w = dst[ei]
                ei += 1
                if index[w] == -1:
                    work[-1] = (v, ei)
                    work.append((w, ptr[w]))
                    advanced = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack[w] = 0
                    comp.add(w)
                    if w == v:
                        break
                comps.append(comp)
            elif work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
    return comps


def percolation_curve(
    g: WeightedDigraph, cutoffs: Sequence[float]
) -> list[tuple[float, float]]:
    """Largest-SCC fraction after dropping every edge with weight < cutoff."""
    if g.node_count == 0:
        raise ValidationError("percolation_curve of an empty graph")
    cuts = list(cutoffs)
    if any(not 0.0 <= c <= 1.0 for c in cuts):
        raise ValidationError("cutoffs must lie in [0, 1]")
    if any(b < a for a, b in zip(cuts, cuts[1:])):
        raise ValidationError("cutoffs must be sorted ascending")
    out = []
    for cut in cuts:
        sub = filter_edges(g, cut, 1.0)
        comps = strongly_connected_components(sub)
        out.append((float(cut), max(len(c) for c in comps) / g.node_count))
    return out


def global_stats(g: WeightedDigraph) -> GraphStats:
    """Node count, mean out-degree, undirected diameter and transitivity,
    and the largest-SCC fraction."""
    n = g.node_count
    if n == 0:
        raise ValidationError("global_stats of an empty graph")
    comps = strongly_connected_components(g)
    und_ptr, und_dst = _undirected_projection(g)
    return GraphStats(
        node_count=n,
        mean_degree=g.edge_count / n,
        diameter=_projection_diameter(und_ptr, und_dst, n),
        transitivity=_projection_transitivity(und_ptr, und_dst, n),
        scc_fraction=max(len(c) for c in comps) / n,
    )


def degree_tail_slope(
    hist: Sequence[tuple[int, int]], k_min: int = 50
) -> float:
    """Log-log least-squares slope of the histogram tail (degrees >= k_min)."""
    pts = [(k, c) for k, c in hist if k >= k_min and c > 0]
    if len(pts) < 2:
        raise ValidationError(f"fewer than 2 histogram points with degree >= {k_min}")
    from .stats import linear_fit

    xs = [np.log(float(k)) for k, _ in pts]
    ys = [np.log(float(c)) for _, c in pts]
    slope, _ = linear_fit(xs, ys)
    return slope


def _undirected_projection(g: WeightedDigraph) -> tuple[np.ndarray, np.ndarray]:
    """Unweighted symmetric adjacency (CSR) ignoring direction and self-loops."""
    n = g.node_count
    src = np.repeat(np.arange(n, dtype=np.int64), np.diff(g.out_ptr))
    dst = g.out_dst
    keep = src != dst
    lo = np.minimum(src[keep], dst[keep])
    hi = np.maximum(src[keep], dst[keep])
    pairs = np.unique(lo * np.int64(n) + hi)
    lo = pairs // n
    hi = pairs % n
    all_src = np.concatenate([lo, hi])
    all_dst = np.concatenate([hi, lo])
    order = np.lexsort((all_dst, all_src))
    all_src, all_dst = all_src[order], all_dst[order]
    ptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(all_src, minlength=n), out=ptr[1:])
    return ptr, all_dst


def _bfs_levels(ptr: np.ndarray, dst: np.ndarray, source: int, n: int) -> np.ndarray:
    """Unweighted BFS distances from source; -1 marks unreachable nodes."""
    dist = np.full(n, -1, dtype=np.int64)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    level = 0
    while frontier.size:
        level += 1
        counts = ptr[frontier + 1] - ptr[frontier]
        total = int(counts.sum())
        if total == 0:
            break
        starts = np.repeat(ptr[frontier], counts)
        offsets = np.arange(total, dtype=np.int64)
        offsets -= np.repeat(np.cumsum(counts) - counts, counts)
        nbrs = dst[starts + offsets]
        nbrs = nbrs[dist[nbrs] < 0]
        if nbrs.size == 0:
            break
        frontier = np.unique(nbrs)
        dist[frontier] = level
    return dist


def _projection_diameter(ptr: np.ndarray, dst: np.ndarray, n: int) -> int:
    """Exact diameter of the largest connected component of the projection.

    iFUB: BFS levels from a hub give upper bounds 2*level; true eccentricities
    are computed level by level from the outside in until the lower bound
    certifies itself. On small-world graphs this needs few BFS passes.
    """
    visited = np.zeros(n, dtype=bool)
    best_nodes: np.ndarray | None = None
    for v in range(n):
        if visited[v]:
            continue
        d = _bfs_levels(ptr, dst, v, n)
        members = np.flatnonzero(d >= 0)
        visited[members] = True
        if best_nodes is None or members.size > best_nodes.size:
            best_nodes = members
    assert best_nodes is not None
    if best_nodes.size == 1:
        return 0
    deg = np.diff(ptr)
    hub = int(best_nodes[np.argmax(deg[best_nodes])])
    du = _bfs_levels(ptr, dst, hub, n)
    ecc_hub = int(du.max())
    a = int(np.argmax(du))
    da = _bfs_levels(ptr, dst, a, n)
    lb = max(ecc_hub, int(da.max()))
    b = int(np.argmax(da))
    db = _bfs_levels(ptr, dst, b, n)
    lb = max(lb, int(db.max()))
    level = ecc_hub
    while level > 0 and lb < 2 * level:
        for v in np.flatnonzero(du == level):
            ecc = int(_bfs_levels(ptr, dst, int(v), n).max())
            if ecc > lb:
                lb = ecc
        level -= 1
    return lb


def _projection_transitivity(ptr: np.ndarray, dst: np.ndarray, n: int) -> float:
    """Global clustering: (closed wedges) / (connected triples)."""
    deg = np.diff(ptr)
    triples = float((deg * (deg - 1) // 2).sum())
    if triples == 0:
        return 0.0
    closed = 0
    for u in range(n):
        row_u = dst[ptr[u] : ptr[u + 1]]
        uppers = row_u[row_u > u]
        for v in uppers:
            row_v = dst[ptr[v] : ptr[v + 1]]
            closed += int(np.intersect1d(row_u, row_v, assume_unique=True).size)
    return closed / triples
