"""Uniform random tree samplers and exact height/diameter statistics.

Labelled trees come from uniform Prufer sequences plus an independent uniform
root (uniform over the n^{n-1} rooted labelled trees); planar trees come from
a uniform Dyck path obtained by the cycle-lemma rotation of a random
arrangement of steps (uniform over the Catalan(n-1) rooted planar trees).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, NotATree
from . import _kernels


@dataclass(frozen=True)
class TreeStats:
    n_vertices: int
    height: int
    diameter: int

    def __post_init__(self):
        if self.n_vertices < 1:
            raise DomainError(f"need at least one vertex, got {self.n_vertices}")
        if not 0 <= self.height <= self.diameter <= 2 * self.height:
            raise DomainError(
                f"height/diameter violate the tree ordering: "
                f"h={self.height}, d={self.diameter}")
        if self.diameter > self.n_vertices - 1 and self.n_vertices > 1:
            raise DomainError(
                f"diameter {self.diameter} exceeds n-1 = {self.n_vertices - 1}")


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def sample_labelled_tree(n: int, seed) -> TreeStats:
    """Height and diameter of a uniform rooted labelled tree with n vertices."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if n == 1:
        return TreeStats(1, 0, 0)
    rng = _as_rng(seed)
    seq = rng.integers(0, n, size=max(n - 2, 0), dtype=np.int64)
    root = int(rng.integers(0, n))
    height, diameter = _kernels.labelled_tree_stats(seq, n, root)
    return TreeStats(n, int(height), int(diameter))


def sample_labelled_tree_structure(n: int, seed):
    """(edge set, root) of a uniform rooted labelled tree; edges are sorted
    tuples, canonical for outcome-counting tests."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    rng = _as_rng(seed)
    if n == 1:
        return frozenset(), int(rng.integers(0, 1))
    seq = rng.integers(0, n, size=max(n - 2, 0), dtype=np.int64)
    root = int(rng.integers(0, n))
    eu, ev = _kernels.decode_prufer(seq, n)
    edges = frozenset((min(int(a), int(b)), max(int(a), int(b))) for a, b in zip(eu, ev))
    return edges, root


def sample_planar_tree(n: int, seed) -> TreeStats:
    """Height and diameter of a uniform rooted planar tree with n vertices."""
    contour = sample_dyck_contour(n, seed)
    height, diameter = _kernels.contour_height_diameter(contour)
    return TreeStats(n, int(height), int(diameter))


def sample_dyck_contour(n: int, seed) -> np.ndarray:
    """Uniform contour process (Dyck path of length 2(n-1)) of a rooted
    planar tree with n vertices."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    rng = _as_rng(seed)
    m = n - 1
    steps = np.concatenate([np.ones(m, np.int64), -np.ones(m + 1, np.int64)])
    steps = rng.permutation(steps)
    return _kernels.dyck_contour(steps)


def contour_to_adjacency(contour: np.ndarray) -> list[list[int]]:
    """Rebuild the planar tree (vertex 0 = root) from its contour process."""
    n = (contour.shape[0] - 1) // 2 + 1
    adjacency: list[list[int]] = [[] for _ in range(n)]
    stack = [0]
    next_vertex = 1
    for t in range(1, contour.shape[0]):
        if contour[t] > contour[t - 1]:
            parent = stack[-1]
            adjacency[parent].append(next_vertex)
            adjacency[next_vertex].append(parent)
            stack.append(next_vertex)
            next_vertex += 1
        else:
            stack.pop()
    return adjacency


def tree_diameter_double_bfs(adjacency, root: int = 0):
    """Exact diameter by two farthest-vertex searches.

    Returns (diameter, (depth of the far endpoint, depth of the other)),
    depths measured from root.  The deeper endpoint of the returned pair
    always attains the tree height.  Raises NotATree if the edge count is not
    n-1 or the graph is disconnected."""
    n = len(adjacency)
    if n == 0:
        raise NotATree("empty adjacency")
    edge_count = sum(len(nb) for nb in adjacency)
    if edge_count != 2 * (n - 1):
        raise NotATree(f"edge count {edge_count // 2} != n-1 = {n - 1}")

    def bfs(source):
        depth = [-1] * n
        depth[source] = 0
        dq = deque([source])
        far, far_depth = source, 0
        while dq:
            u = dq.popleft()
            for v in adjacency[u]:
                if depth[v] == -1:
                    depth[v] = depth[u] + 1
                    if depth[v] > far_depth:
                        far, far_depth = v, depth[v]
                    dq.append(v)
        return depth, far

    depth_root, u = bfs(root)
    if min(depth_root) < 0:
        raise NotATree("adjacency is disconnected")
    depth_u, v = bfs(u)
    diameter = depth_u[v]
    return diameter, (depth_root[u], depth_root[v])


def all_pairs_diameter(adjacency) -> int:
    """Brute-force diameter by BFS from every vertex (test oracle)."""
    n = len(adjacency)
    best = 0
    for s in range(n):
        depth = [-1] * n
        depth[s] = 0
        dq = deque([s])
        while dq:
            u = dq.popleft()
            for v in adjacency[u]:
                if depth[v] == -1:
                    depth[v] = depth[u] + 1
                    dq.append(v)
        best = max(best, max(depth))
    return best


def labelled_tree_adjacency(n: int, seed) -> tuple[list[list[int]], int]:
    """(adjacency, root) of a uniform rooted labelled tree (test support)."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    rng = _as_rng(seed)
    if n == 1:
        return [[]], 0
    seq = rng.integers(0, n, size=max(n - 2, 0), dtype=np.int64)
    root = int(rng.integers(0, n))
    eu, ev = _kernels.decode_prufer(seq, n)
    adjacency: list[list[int]] = [[] for _ in range(n)]
    for a, b in zip(eu, ev):
        adjacency[int(a)].append(int(b))
        adjacency[int(b)].append(int(a))
    return adjacency, root
