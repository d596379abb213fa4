"""Discretized normalized Brownian excursions and their tree functionals.

Paths are built as Gaussian-increment Brownian bridges rotated at their
argmin (Vervaat), which has the law of the normalized excursion on the grid.
The paper-normalized excursion is exactly sqrt(2) times the standard one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..errors import DomainError
from . import _kernels

_SQRT2 = math.sqrt(2.0)


class Normalization(Enum):
    STANDARD_ITO = "standard-ito"
    PAPER_SQRT2 = "paper-sqrt2"

    @property
    def factor(self) -> float:
        return _SQRT2 if self is Normalization.PAPER_SQRT2 else 1.0


@dataclass(frozen=True)
class SpinalRecord:
    """Subtree grafted on the apex-to-root spine: s is the distance from the
    apex to the graft point, gamma the subtree height."""

    s: float
    gamma: float


@dataclass(frozen=True)
class ExcursionPath:
    grid_size: int
    values: np.ndarray
    argmax_index: int
    normalization: Normalization

    def __post_init__(self):
        if self.grid_size < 2:
            raise DomainError(f"grid size must be >= 2, got {self.grid_size}")
        if self.values.shape != (self.grid_size + 1,):
            raise DomainError(
                f"values must have length N+1 = {self.grid_size + 1}, "
                f"got {self.values.shape}")
        if self.values[0] != 0.0 or self.values[-1] != 0.0:
            raise DomainError("excursion must start and end at 0")
        if np.any(self.values < 0.0):
            raise DomainError("excursion values must be nonnegative")
        if self.values[self.argmax_index] != self.values.max():
            raise DomainError("argmax_index does not point at the maximum")


def bridge_path(n_grid: int, rng: np.random.Generator) -> np.ndarray:
    """Standard Brownian bridge on {0, 1/N, ..., 1}; endpoints exactly 0."""
    gauss = rng.standard_normal(n_grid)
    walk = np.empty(n_grid + 1)
    walk[0] = 0.0
    np.cumsum(gauss / math.sqrt(n_grid), out=walk[1:])
    bridge = walk - (np.arange(n_grid + 1) / n_grid) * walk[-1]
    bridge[-1] = 0.0
    return bridge


def vervaat(bridge: np.ndarray) -> np.ndarray:
    """Rotate a bridge at its first argmin; the minimum lands exactly at
    index 0 and the result is a nonnegative excursion."""
    n_grid = bridge.shape[0] - 1
    imin = int(np.argmin(bridge[:n_grid]))
    out = np.empty_like(bridge)
    out[: n_grid - imin] = bridge[imin:n_grid]
    out[n_grid - imin : n_grid] = bridge[:imin]
    out -= bridge[imin]
    out[n_grid] = 0.0
    return out


def sample_excursion(n_grid: int, seed,
                     normalization: Normalization = Normalization.PAPER_SQRT2) -> ExcursionPath:
    """One excursion path on a uniform grid of n_grid steps, unit lifetime."""
    if n_grid < 2:
        raise DomainError(f"grid size must be >= 2, got {n_grid}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    values = vervaat(bridge_path(n_grid, rng))
    values *= normalization.factor
    return ExcursionPath(
        grid_size=n_grid,
        values=values,
        argmax_index=int(np.argmax(values)),
        normalization=normalization,
    )


def _side_records(vals: np.ndarray, gamma: float) -> list[SpinalRecord]:
    """Spinal records of one side of the path, read outward from the apex:
    one record per excursion of the path above its running minimum."""
    if vals.shape[0] < 2:
        return []
    run_min = np.minimum.accumulate(vals)
    above = vals > run_min
    records = []
    i = 1
    n = vals.shape[0]
    while i < n:
        if above[i]:
            j = i
            peak = vals[i]
            while j + 1 < n and above[j + 1]:
                j += 1
                if vals[j] > peak:
                    peak = vals[j]
            level = run_min[i]
            records.append(SpinalRecord(s=gamma - level, gamma=peak - level))
            i = j + 1
        else:
            i += 1
    return records


def excursion_height_diameter(path: ExcursionPath):
    """(gamma, diameter, spinal records) of the tree coded by the path.

    The diameter is the farthest distance from the apex; two linear scans of
    running minima outward from the argmax find it.  The records
    (s_j, gamma_j) describe the subtrees grafted along the apex-to-root
    spine, plus a degenerate record (gamma, 0) for the root itself, and the
    diameter is returned as max_j (s_j + gamma_j) so the spinal identity
    holds exactly on the grid."""
    vals = path.values
    imax = path.argmax_index
    gamma = float(vals[imax])
    spine = _side_records(vals[imax:], gamma) + _side_records(vals[imax::-1], gamma)
    spine.append(SpinalRecord(s=gamma, gamma=0.0))
    diameter = max(r.s + r.gamma for r in spine)
    return gamma, diameter, spine


def excursion_height_diameter_brute(path: ExcursionPath) -> tuple[float, float]:
    """Quadratic-scan oracle: max over all (s, t) of e_s + e_t - 2 min e."""
    vals = path.values
    n = vals.shape[0]
    gamma = float(np.max(vals))
    best = 0.0
    for s in range(n):
        run_min = vals[s]
        for t in range(s, n):
            if vals[t] < run_min:
                run_min = vals[t]
            cand = vals[s] + vals[t] - 2.0 * run_min
            if cand > best:
                best = cand
    return gamma, best


def excursion_batch_stats(n_grid: int, count: int, seed,
                          normalization: Normalization = Normalization.PAPER_SQRT2,
                          threads: int = 1):
    """(gammas, diameters) of `count` independent excursions.

    Each replicate consumes its own spawned substream, so results do not
    depend on the thread count."""
    if count < 1:
        raise DomainError(f"count must be positive, got {count}")
    children = np.random.SeedSequence(seed).spawn(count)
    gammas = np.empty(count)
    diams = np.empty(count)

    def work(lo, hi):
        buf = np.empty(n_grid + 1)
        for i in range(lo, hi):
            rng = np.random.default_rng(children[i])
            g, d = _kernels.excursion_stats(rng.standard_normal(n_grid), buf)
            gammas[i] = g
            diams[i] = d

    _run_chunks(work, count, threads)
    factor = normalization.factor
    return gammas * factor, diams * factor


def _run_chunks(work, count: int, threads: int):
    if threads <= 1:
        work(0, count)
        return
    from concurrent.futures import ThreadPoolExecutor

    chunk = max(1, count // (threads * 8))
    bounds = [(lo, min(lo + chunk, count)) for lo in range(0, count, chunk)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        list(pool.map(lambda b: work(*b), bounds))
