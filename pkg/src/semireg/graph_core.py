"""Multigraph representation and the deterministic graph algorithms used by
the generators and the spectral experiments.

Conventions
-----------
A self-loop at ``v`` adds 1 to ``degree(v)`` and 1 to ``A[v, v]``.  This is
the walk-counting convention used when a semi-regular graph is padded with
loops until it becomes regular.  The Laplacian ignores loops entirely, so
padding never changes it.  Multi-edges count with their multiplicity in both
the adjacency matrix and the Laplacian.
"""

from __future__ import annotations

import csv
import io
import math
import os
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
import scipy.sparse as sps

from .errors import ParameterError, RewireError

__all__ = [
    "Multigraph",
    "UnionFind",
    "degree_sequence",
    "stub_degrees",
    "degree_histogram",
    "adjacency",
    "adjacency_sparse",
    "laplacian",
    "is_connected",
    "girth",
    "subdivide",
    "contract_degree2",
    "rewire_to_simple",
    "offending_edge_count",
    "closed_walk_counts",
    "add_loops",
    "read_edge_csv",
    "write_edge_csv",
    "cycle_graph",
    "from_edges",
]


def _as_edge_array(edges) -> np.ndarray:
    arr = np.asarray(edges, dtype=np.int64)
    if arr.size == 0:
        arr = arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ParameterError("edges must be an (m, 2) array of vertex pairs")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Multigraph:
    """Undirected multigraph on vertices ``0..n-1``.

    ``edges`` is an ``(m, 2)`` integer array; every row is one edge, rows may
    repeat (multi-edges) and a row ``(v, v)`` is a self-loop.  The array is
    read-only.  ``short_vertex`` is set by the RSR generator when an odd stub
    count forced it to drop one stub; it names the vertex left one short of
    its target degree.
    """

    n: int
    edges: np.ndarray
    short_vertex: int | None = field(default=None)

    def __post_init__(self):
        if self.n < 0:
            raise ParameterError("vertex count must be non-negative")
        arr = _as_edge_array(self.edges)
        if arr.size and (arr.min() < 0 or arr.max() >= self.n):
            raise ParameterError(f"edge endpoint outside [0, {self.n})")
        object.__setattr__(self, "edges", arr)

    @property
    def m(self) -> int:
        return int(self.edges.shape[0])

    @property
    def loop_count(self) -> int:
        return int(np.count_nonzero(self.edges[:, 0] == self.edges[:, 1]))

    def edge_list(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in self.edges]

    def __eq__(self, other):
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.edges, other.edges)

    def __hash__(self):
        return hash((self.n, self.edges.tobytes()))

    def __repr__(self):
        return f"Multigraph(n={self.n}, m={self.m})"


class UnionFind:
    """Disjoint-set forest with path halving and union by size."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.size = [1] * size
        self.components = size

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.components -= 1
        return True


def degree_sequence(g: Multigraph) -> np.ndarray:
    """Degrees with loops counted once."""
    deg = np.zeros(g.n, dtype=np.int64)
    u, v = g.edges[:, 0], g.edges[:, 1]
    np.add.at(deg, u, 1)
    nonloop = u != v
    np.add.at(deg, v[nonloop], 1)
    return deg


def stub_degrees(g: Multigraph) -> np.ndarray:
    """Edge endpoints per vertex, loops counted twice.

    This is the degree a configuration model assigns: a loop formed by
    pairing two stubs of the same vertex uses both stubs.  It coincides
    with :func:`degree_sequence` on loopless graphs.
    """
    deg = np.zeros(g.n, dtype=np.int64)
    np.add.at(deg, g.edges.ravel(), 1)
    return deg


def degree_histogram(g: Multigraph) -> dict[int, int]:
    """Map degree value -> number of vertices with that degree."""
    return {int(k): int(c) for k, c in sorted(Counter(degree_sequence(g).tolist()).items())}


def adjacency_sparse(g: Multigraph) -> sps.csr_matrix:
    u, v = g.edges[:, 0], g.edges[:, 1]
    nonloop = u != v
    rows = np.concatenate([u, v[nonloop]])
    cols = np.concatenate([v, u[nonloop]])
    data = np.ones(rows.shape[0], dtype=float)
    # coo -> csr sums duplicate entries, which gives multiplicities
    return sps.coo_matrix((data, (rows, cols)), shape=(g.n, g.n)).tocsr()


def adjacency(g: Multigraph) -> np.ndarray:
    """Dense adjacency: multiplicities off the diagonal, loop counts on it."""
    return adjacency_sparse(g).toarray()


def laplacian(g: Multigraph) -> np.ndarray:
    """Dense ``D - A`` over non-loop edges only."""
    u, v = g.edges[:, 0], g.edges[:, 1]
    keep = u != v
    u, v = u[keep], v[keep]
    L = np.zeros((g.n, g.n))
    np.add.at(L, (u, v), -1.0)
    np.add.at(L, (v, u), -1.0)
    np.add.at(L, (u, u), 1.0)
    np.add.at(L, (v, v), 1.0)
    return L


def is_connected(g: Multigraph) -> bool:
    if g.n <= 1:
        return True
    uf = UnionFind(g.n)
    for a, b in g.edges.tolist():
        uf.union(a, b)
        if uf.components == 1:
            return True
    return uf.components == 1


def _neighbor_lists(g: Multigraph) -> list[list[int]]:
    nbrs: list[list[int]] = [[] for _ in range(g.n)]
    for a, b in g.edges.tolist():
        if a != b:
            nbrs[a].append(b)
            nbrs[b].append(a)
    return nbrs


def girth(g: Multigraph) -> float:
    """Length of the shortest cycle.

    A loop is a cycle of length 1 and a repeated edge one of length 2.
    Returns ``math.inf`` for forests.
    """
    if g.loop_count:
        return 1
    pairs = Counter(tuple(sorted(e)) for e in g.edges.tolist())
    if any(c > 1 for c in pairs.values()):
        return 2
    nbrs = _neighbor_lists(g)
    best = math.inf
    dist = [-1] * g.n
    parent = [-1] * g.n
    for root in range(g.n):
        touched = [root]
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            # cycles closed from u have length >= 2*dist[u]
            if 2 * dist[u] >= best:
                break
            for w in nbrs[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    touched.append(w)
                    queue.append(w)
                elif w != parent[u]:
                    best = min(best, dist[u] + dist[w] + 1)
        for t in touched:
            dist[t] = -1
            parent[t] = -1
    return best


def subdivide(g: Multigraph) -> Multigraph:
    """Insert a new vertex in the middle of every edge.

    Edge ``i`` = (u, v) becomes (u, n+i), (n+i, v).  The result has
    ``n + m`` vertices and ``2m`` edges.
    """
    if g.loop_count:
        raise ParameterError("cannot subdivide a graph with self-loops")
    mids = np.arange(g.n, g.n + g.m, dtype=np.int64)
    first = np.column_stack([g.edges[:, 0], mids])
    second = np.column_stack([mids, g.edges[:, 1]])
    edges = np.empty((2 * g.m, 2), dtype=np.int64)
    edges[0::2] = first
    edges[1::2] = second
    return Multigraph(g.n + g.m, edges)


def contract_degree2(g: Multigraph) -> Multigraph:
    """Remove every degree-2 vertex, joining its two neighbours by an edge.

    Chains of degree-2 vertices are contracted one vertex at a time until no
    degree-2 vertex remains.  Surviving vertices keep their relative order.
    Raises :class:`ParameterError` if a degree-2 vertex ends up on a 2-cycle
    (both edges go to the same neighbour), which is what happens to a bare
    cycle.
    """
    if g.loop_count:
        raise ParameterError("contraction is undefined for graphs with self-loops")
    # edge id -> endpoints; vertex -> set of incident edge ids
    ends = {i: (a, b) for i, (a, b) in enumerate(g.edges.tolist())}
    incident: list[set[int]] = [set() for _ in range(g.n)]
    for i, (a, b) in ends.items():
        incident[a].add(i)
        incident[b].add(i)
    alive = [True] * g.n
    next_id = len(ends)
    stack = [v for v in range(g.n) if len(incident[v]) == 2]
    while stack:
        v = stack.pop()
        if not alive[v] or len(incident[v]) != 2:
            continue
        e1, e2 = sorted(incident[v])
        a = ends[e1][0] if ends[e1][1] == v else ends[e1][1]
        b = ends[e2][0] if ends[e2][1] == v else ends[e2][1]
        if a == b:
            raise ParameterError(f"degree-2 vertex {v} lies on a 2-cycle; cannot contract")
        for e, w in ((e1, a), (e2, b)):
            incident[w].discard(e)
            del ends[e]
        incident[v].clear()
        alive[v] = False
        ends[next_id] = (a, b) if a < b else (b, a)
        incident[a].add(next_id)
        incident[b].add(next_id)
        next_id += 1
        for w in (a, b):
            if len(incident[w]) == 2:
                stack.append(w)
    relabel = np.cumsum(alive) - 1
    kept = [ends[i] for i in sorted(ends)]
    new_edges = [(int(relabel[a]), int(relabel[b])) for a, b in kept]
    return Multigraph(int(sum(alive)), np.array(new_edges, dtype=np.int64).reshape(-1, 2))


def _key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a <= b else (b, a)


def _pair_badness(key: tuple[int, int], count: int) -> int:
    if key[0] == key[1]:
        return count
    return max(count - 1, 0)


def offending_edge_count(g: Multigraph) -> int:
    """Loops plus surplus copies of repeated edges."""
    counts = Counter(_key(a, b) for a, b in g.edges.tolist())
    return sum(_pair_badness(k, c) for k, c in counts.items())


def rewire_to_simple(
    g: Multigraph,
    rng: np.random.Generator,
    stall_limit: int = 50,
    bipartite: bool = False,
) -> Multigraph:
    """Remove loops and multi-edges by double-edge swaps.

    Repeatedly take an offending edge (a, b) and a uniformly chosen other edge
    (c, d) and replace them by (a, c), (b, d) or, with equal probability,
    (a, d), (b, c).  With ``bipartite=True`` every edge is read as
    (left, right) and only the side-preserving swap (a, d), (c, b) is used,
    so the bipartition survives.  Any swap is accepted until
    ``stall_limit`` consecutive swaps fail to lower the offending count;
    from then on swaps that would themselves introduce a loop or a repeated
    edge are rejected.  Stub degrees (:func:`stub_degrees`) and the edge
    count are preserved.

    Raises :class:`RewireError` after ``100 * m`` attempts.
    """
    edges = [tuple(e) for e in g.edges.tolist()]
    m = len(edges)
    counts = Counter(_key(a, b) for a, b in edges)
    bad = sum(_pair_badness(k, c) for k, c in counts.items())
    if bad == 0:
        return g
    if m < 2:
        raise RewireError("degree sequence not realizable or pathological")
    stall = 0
    for _ in range(100 * m):
        seen: set[tuple[int, int]] = set()
        offenders = []
        for i, (a, b) in enumerate(edges):
            k = _key(a, b)
            if a == b or k in seen:
                offenders.append(i)
            seen.add(k)
        i = offenders[int(rng.integers(len(offenders)))]
        j = int(rng.integers(m - 1))
        if j >= i:
            j += 1
        a, b = edges[i]
        c, d = edges[j]
        if bipartite:
            new1, new2 = (a, d), (c, b)
        else:
            if rng.random() < 0.5:
                c, d = d, c
            new1, new2 = (a, c), (b, d)
        old_keys = [_key(a, b), _key(*edges[j])]
        new_keys = [_key(*new1), _key(*new2)]
        touched = set(old_keys) | set(new_keys)
        before = sum(_pair_badness(k, counts[k]) for k in touched)
        trial = Counter({k: counts[k] for k in touched})
        for k in old_keys:
            trial[k] -= 1
        if stall >= stall_limit and any(
            k[0] == k[1] or trial[k] > 0 for k in new_keys
        ):
            stall += 1
            continue
        for k in new_keys:
            trial[k] += 1
        after = sum(_pair_badness(k, trial[k]) for k in touched)
        for k in touched:
            counts[k] = trial[k]
        edges[i], edges[j] = new1, new2
        bad += after - before
        stall = 0 if after < before else stall + 1
        if bad == 0:
            return Multigraph(g.n, np.array(edges, dtype=np.int64))
    raise RewireError(
        f"degree sequence not realizable or pathological: {bad} offending edges "
        f"remain after {100 * m} swap attempts"
    )


def add_loops(g: Multigraph, loops_per_vertex) -> Multigraph:
    """Append ``loops_per_vertex[v]`` self-loops at every vertex ``v``."""
    reps = np.asarray(loops_per_vertex, dtype=np.int64)
    if reps.shape != (g.n,) or (reps < 0).any():
        raise ParameterError("need one non-negative loop count per vertex")
    vs = np.repeat(np.arange(g.n, dtype=np.int64), reps)
    return Multigraph(g.n, np.vstack([g.edges, np.column_stack([vs, vs])]))


def closed_walk_counts(g: Multigraph, s_max: int, method: str = "power") -> np.ndarray:
    """Average closed-walk counts ``trace(A**s) / n`` for ``s = 0..s_max``.

    ``method="power"`` accumulates ``A**s`` by sparse-dense products;
    ``method="spectrum"`` uses the moment sums of the adjacency eigenvalues.
    """
    if s_max < 0:
        raise ParameterError("s_max must be non-negative")
    if g.n == 0:
        raise ParameterError("empty graph")
    out = np.empty(s_max + 1)
    out[0] = 1.0
    if method == "spectrum":
        lam = np.linalg.eigvalsh(adjacency(g))
        powers = np.ones_like(lam)
        for s in range(1, s_max + 1):
            powers = powers * lam
            out[s] = powers.sum() / g.n
        return out
    if method != "power":
        raise ParameterError(f"unknown method {method!r}")
    A = adjacency_sparse(g)
    M = np.eye(g.n)
    for s in range(1, s_max + 1):
        M = A @ M
        out[s] = np.trace(M) / g.n
    return out


def write_edge_csv(g: Multigraph, path_or_buf) -> None:
    """Write the ``u,v`` edge list (one row per edge, in storage order)."""
    close = False
    if isinstance(path_or_buf, (str, os.PathLike)):
        fh = open(path_or_buf, "w", newline="", encoding="utf-8")
        close = True
    else:
        fh = path_or_buf
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["u", "v"])
        writer.writerows(g.edges.tolist())
    finally:
        if close:
            fh.close()


def read_edge_csv(path_or_buf, n: int | None = None) -> Multigraph:
    """Read a ``u,v`` edge list.

    The format has no vertex-count field, so ``n`` defaults to one more than
    the largest endpoint; pass it explicitly when trailing vertices may be
    isolated.
    """
    if isinstance(path_or_buf, (str, os.PathLike)):
        with open(path_or_buf, newline="", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = path_or_buf.read()
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != ["u", "v"]:
        raise ParameterError("edge CSV must start with the header 'u,v'")
    rows = [(int(a), int(b)) for a, b in (r for r in reader if r)]
    edges = np.array(rows, dtype=np.int64).reshape(-1, 2)
    if n is None:
        n = int(edges.max()) + 1 if len(rows) else 0
    return Multigraph(n, edges)


def cycle_graph(n: int) -> Multigraph:
    """The cycle C_n (n >= 3)."""
    idx = np.arange(n, dtype=np.int64)
    return Multigraph(n, np.column_stack([idx, (idx + 1) % n]))


def from_edges(edges: Iterable[tuple[int, int]], n: int | None = None) -> Multigraph:
    arr = np.array(list(edges), dtype=np.int64).reshape(-1, 2)
    if n is None:
        n = int(arr.max()) + 1 if arr.size else 0
    return Multigraph(n, arr)
