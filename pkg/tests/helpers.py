"""Independent oracles the implementation is checked against.

Everything here recomputes results from first principles with data
structures unlike the package's (dense matrices, dicts, literal path
enumeration) so agreement is meaningful.
"""

from __future__ import annotations

import itertools
from collections import deque

import numpy as np


# ---------------------------------------------------------------- graphs


def random_digraph(
    rng: np.random.Generator,
    max_nodes: int = 10,
    p: float | None = None,
    min_nodes: int = 1,
):
    """(n, edges) with edges a list of (s, t, w), w in (0.01, 1]."""
    n = int(rng.integers(min_nodes, max_nodes + 1))
    prob = float(rng.uniform(0.1, 0.6)) if p is None else p
    edges = []
    for s in range(n):
        for t in range(n):
            if s != t and rng.random() < prob:
                edges.append((s, t, float(rng.uniform(0.01, 1.0))))
    return n, edges


def scale_rows(n: int, edges, max_row_sum: float):
    """Rescale weights so every row sums to at most max_row_sum."""
    sums = [0.0] * n
    for s, _, w in edges:
        sums[s] += w
    out = []
    for s, t, w in edges:
        f = max_row_sum / sums[s] if sums[s] > max_row_sum else 1.0
        out.append((s, t, w * f))
    return out


def dense_matrix(n: int, edges) -> np.ndarray:
    m = np.zeros((n, n))
    for s, t, w in edges:
        m[s, t] = w
    return m


# ------------------------------------------------- strongly connected sets


def closure_partition(n: int, edges) -> list[frozenset[int]]:
    """SCCs via boolean transitive closure (repeated matrix squaring)."""
    reach = np.eye(n, dtype=bool)
    for s, t, _ in edges:
        reach[s, t] = True
    while True:
        nxt = reach | (reach @ reach)
        if (nxt == reach).all():
            break
        reach = nxt
    mutual = reach & reach.T
    seen = set()
    comps = []
    for v in range(n):
        if v in seen:
            continue
        comp = frozenset(np.flatnonzero(mutual[v]).tolist())
        seen.update(comp)
        comps.append(comp)
    return comps


# ------------------------------------------ undirected projection answers


def undirected_adjacency(n: int, edges) -> list[set[int]]:
    adj = [set() for _ in range(n)]
    for s, t, _ in edges:
        if s != t:
            adj[s].add(t)
            adj[t].add(s)
    return adj


def brute_diameter(n: int, edges) -> int:
    """Longest shortest path in the largest undirected component (BFS from
    every node)."""
    adj = undirected_adjacency(n, edges)
    seen = [False] * n
    comps = []
    for v in range(n):
        if seen[v]:
            continue
        comp = [v]
        seen[v] = True
        q = deque([v])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    q.append(w)
        comps.append(comp)
    comp = max(comps, key=len)
    best = 0
    for src in comp:
        dist = {src: 0}
        q = deque([src])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    q.append(w)
        best = max(best, max(dist.values()))
    return best


def brute_transitivity(n: int, edges) -> float:
    adj = undirected_adjacency(n, edges)
    triangles = 0
    for a, b, c in itertools.combinations(range(n), 3):
        if b in adj[a] and c in adj[a] and c in adj[b]:
            triangles += 1
    triples = sum(len(adj[v]) * (len(adj[v]) - 1) // 2 for v in range(n))
    if triples == 0:
        return 0.0
    return 3.0 * triangles / triples


# ------------------------------------------------------ first passage


def fp_dense_solve(n: int, edges, s: int, r: int, lam: float) -> float:
    """Direct dense linear solve: chain sum = Wminus (I - lam Wminus)^-1."""
    wm = dense_matrix(n, edges)
    wm[r, :] = 0.0
    e = np.zeros(n)
    e[r] = 1.0
    y = np.linalg.solve(np.eye(n) - lam * wm, e)
    return float((wm @ y)[s])


def fp_path_sum(n: int, edges, s: int, r: int, lam: float, tol: float = 1e-12) -> float:
    """Brute-force path sum organised by length: term_k = lam^(k-1) times the
    total weight of k-step chains s -> r avoiding r internally. Truncated when
    the geometric tail bound (from the max row sum) drops below tol."""
    wm = dense_matrix(n, edges)
    wm[r, :] = 0.0
    rho = float(wm.sum(axis=1).max()) if n else 0.0
    if lam * rho >= 1.0:
        raise ValueError("path sum needs lam * max_row_sum < 1 for the tail bound")
    q = np.zeros(n)
    q[r] = 1.0
    total = 0.0
    coef = 1.0
    for k in range(1, 100_000):
        q = wm @ q
        total += coef * float(q[s])
        coef *= lam
        # remaining terms sum to <= coef * rho^(k+1) / (1 - lam*rho)
        bound = coef * rho ** (k + 1)
        if bound < tol * (1.0 - lam * rho):
            break
    return total


def fp_enumerate(n: int, edges, s: int, r: int, lam: float, max_len: int) -> float:
    """Literal DFS over every chain (repeats allowed) of at most max_len
    steps. Exponential; only for tiny graphs/short horizons."""
    rows: dict[int, list[tuple[int, float]]] = {}
    for a, b, w in edges:
        rows.setdefault(a, []).append((b, w))
    total = 0.0

    def walk(u: int, prod: float, used: int) -> None:
        nonlocal total
        for t, w in rows.get(u, []):
            if t == r:
                total += lam**used * prod * w
            elif used + 1 < max_len:
                walk(t, prod * w, used + 1)

    walk(s, 1.0, 0)
    return total


# ---------------------------------------------------- search reference


def activation_distribution(rows, active_ordered, excluded, tau, w_max):
    """Candidate ids (ascending) and their activation scores under the
    summed-incoming-weight law with the strong-link cutoff and threshold.

    rows: dict node -> list of (target, weight). Score accumulation order
    matches the engine: active nodes in the given order.
    """
    scores: dict[int, float] = {}
    for a in active_ordered:
        for t, w in rows.get(a, []):
            if w <= w_max:
                scores[t] = scores.get(t, 0.0) + w
    items = [
        (x, sc)
        for x, sc in sorted(scores.items())
        if x not in excluded and sc >= tau
    ]
    return items


def reference_run(rows, stimuli, response, tau, w_max, uniforms, t_max):
    """Dict-based re-implementation of one search run.

    Returns (kind, steps, trace) with kind in {"solved", "exhausted",
    "dead_end"}; trace lists the activated words in order.
    """
    excluded = set(stimuli)
    guess = None
    trace = []
    t = 0
    while t < t_max:
        order = list(stimuli) if guess is None else [*stimuli, guess]
        items = activation_distribution(rows, order, excluded, tau, w_max)
        if not items:
            return "dead_end", t, trace
        total = 0.0
        for _, sc in items:
            total += sc
        threshold = uniforms[t] * total
        acc = 0.0
        pick = items[-1][0]
        for x, sc in items:
            acc += sc
            if acc > threshold:
                pick = x
                break
        t += 1
        trace.append(pick)
        if pick == response:
            return "solved", t, trace
        excluded.add(pick)
        guess = pick
    return "exhausted", t_max, trace


def rows_from_graph(g) -> dict[int, list[tuple[int, float]]]:
    return {v: g.out_edges(v) for v in range(g.node_count)}
