"""JIT-compiled per-replicate kernels.

All randomness is generated by the callers with numpy Generators and passed
in as arrays, so results are identical with or without numba.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap


@njit(cache=True, nogil=True)
def decode_prufer(seq, n):
    """Edges (eu, ev) of the labelled tree on {0..n-1} encoded by seq.

    Linear-time decode: repeatedly attach the smallest-labelled leaf to the
    next sequence entry; the frontier pointer never revisits labels below it
    because a vertex that becomes a leaf below the frontier is consumed
    immediately."""
    eu = np.empty(n - 1, np.int64)
    ev = np.empty(n - 1, np.int64)
    degree = np.ones(n, np.int64)
    for i in range(seq.shape[0]):
        degree[seq[i]] += 1
    ptr = 0
    leaf = -1
    for i in range(seq.shape[0]):
        s = seq[i]
        if leaf == -1:
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
            ptr += 1
        eu[i] = leaf
        ev[i] = s
        degree[leaf] -= 1
        degree[s] -= 1
        if degree[s] == 1 and s < ptr:
            leaf = s
        else:
            leaf = -1
    if leaf == -1:
        while degree[ptr] != 1:
            ptr += 1
        leaf = ptr
    eu[n - 2] = leaf
    ev[n - 2] = n - 1
    return eu, ev


@njit(cache=True, nogil=True)
def adjacency_csr(eu, ev, n):
    """CSR adjacency (offsets, targets) of an undirected edge list."""
    deg = np.zeros(n + 1, np.int64)
    for i in range(eu.shape[0]):
        deg[eu[i] + 1] += 1
        deg[ev[i] + 1] += 1
    offsets = np.cumsum(deg)
    fill = offsets[:-1].copy()
    targets = np.empty(2 * eu.shape[0], np.int64)
    for i in range(eu.shape[0]):
        u, v = eu[i], ev[i]
        targets[fill[u]] = v
        fill[u] += 1
        targets[fill[v]] = u
        fill[v] += 1
    return offsets, targets


@njit(cache=True, nogil=True)
def bfs_depths(offsets, targets, n, source):
    """Depths from source; unreached vertices keep -1."""
    depth = np.full(n, -1, np.int64)
    queue = np.empty(n, np.int64)
    depth[source] = 0
    queue[0] = source
    head, tail = 0, 1
    while head < tail:
        u = queue[head]
        head += 1
        for j in range(offsets[u], offsets[u + 1]):
            v = targets[j]
            if depth[v] == -1:
                depth[v] = depth[u] + 1
                queue[tail] = v
                tail += 1
    return depth


@njit(cache=True, nogil=True)
def labelled_tree_stats(seq, n, root):
    """(height, diameter) of the labelled tree decoded from seq, rooted at root."""
    eu, ev = decode_prufer(seq, n)
    offsets, targets = adjacency_csr(eu, ev, n)
    depth_root = bfs_depths(offsets, targets, n, root)
    height = depth_root.max()
    far = np.argmax(depth_root)
    depth_far = bfs_depths(offsets, targets, n, far)
    diameter = depth_far.max()
    return height, diameter


@njit(cache=True, nogil=True)
def dyck_contour(steps):
    """Contour (length 2m+1) from a permuted array of m up-steps and m+1
    down-steps, by the cycle-lemma rotation at the first prefix-sum minimum."""
    L = steps.shape[0]
    # prefix sums P_i = sum of steps[:i]; find first argmin over i in [0, L-1]
    best = 0
    best_pos = 0
    p = 0
    for i in range(1, L):
        p += steps[i - 1]
        if p < best:
            best = p
            best_pos = i
    m = (L - 1) // 2
    contour = np.empty(2 * m + 1, np.int64)
    contour[0] = 0
    c = 0
    for t in range(2 * m):
        c += steps[(best_pos + t) % L]
        contour[t + 1] = c
    return contour


@njit(cache=True, nogil=True)
def contour_height_diameter(contour):
    """(height, diameter) of the planar tree with the given contour process.

    Graph distance between the vertices visited at times s < t is
    C_s + C_t - 2 min C on [s, t]; the diameter is realized by a pair whose
    deeper endpoint attains the height, so two outward scans from an argmax
    suffice."""
    n = contour.shape[0]
    gamma = contour[0]
    tstar = 0
    for t in range(n):
        if contour[t] > gamma:
            gamma = contour[t]
            tstar = t
    best = gamma  # distance from apex to the root vertex at time 0
    run_min = gamma
    for t in range(tstar + 1, n):
        if contour[t] < run_min:
            run_min = contour[t]
        cand = gamma + contour[t] - 2 * run_min
        if cand > best:
            best = cand
    run_min = gamma
    for t in range(tstar - 1, -1, -1):
        if contour[t] < run_min:
            run_min = contour[t]
        cand = gamma + contour[t] - 2 * run_min
        if cand > best:
            best = cand
    return gamma, best


@njit(cache=True, nogil=True)
def excursion_stats(gauss, buf):
    """(gamma, diameter) of the unit excursion built from N standard normals.

    Builds the Brownian bridge with step variance 1/N in buf (length N+1),
    rotates at the first argmin (Vervaat) without materializing the rotation,
    then scans outward from the argmax for the diameter."""
    N = gauss.shape[0]
    sigma = 1.0 / np.sqrt(N)
    acc = 0.0
    buf[0] = 0.0
    for k in range(N):
        acc += gauss[k] * sigma
        buf[k + 1] = acc
    total = buf[N]
    for k in range(1, N):
        buf[k] -= (k / N) * total
    buf[N] = 0.0
    imin = 0
    bmin = buf[0]
    for k in range(1, N):
        if buf[k] < bmin:
            bmin = buf[k]
            imin = k
    # rotated path e_k = buf[(imin + k) % N] - bmin, k = 0..N (e_0 = e_N = 0)
    gamma = 0.0
    kmax = 0
    for k in range(N):
        v = buf[(imin + k) % N] - bmin
        if v > gamma:
            gamma = v
            kmax = k
    best = gamma
    run_min = gamma
    for k in range(kmax + 1, N + 1):
        v = buf[(imin + k) % N] - bmin if k < N else 0.0
        if v < run_min:
            run_min = v
        cand = gamma + v - 2.0 * run_min
        if cand > best:
            best = cand
    run_min = gamma
    for k in range(kmax - 1, -1, -1):
        v = buf[(imin + k) % N] - bmin
        if v < run_min:
            run_min = v
        cand = gamma + v - 2.0 * run_min
        if cand > best:
            best = cand
    return gamma, best
