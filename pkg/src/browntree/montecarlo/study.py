"""Convergence studies: rescaled finite-model statistics against the limit
laws, quantified by the exact one-sample Kolmogorov-Smirnov statistic."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .. import laws
from ..errors import DomainError
from . import _kernels
from .excursion import Normalization, _run_chunks


class StudyFamily(Enum):
    LABELLED_TREE = "labelled"
    PLANAR_TREE = "planar"
    EXCURSION = "excursion"


@dataclass(frozen=True)
class GofReport:
    sample_count: int
    ks_statistic: float
    reference_law: str
    seed: int
    wall_time: float

    def __post_init__(self):
        if self.sample_count < 1:
            raise DomainError(f"sample_count must be positive, got {self.sample_count}")
        if not 0.0 <= self.ks_statistic <= 1.0:
            raise DomainError(f"KS statistic {self.ks_statistic} outside [0, 1]")

    def to_record(self) -> dict:
        return {
            "schema": 1,
            "sample_count": self.sample_count,
            "ks_statistic": self.ks_statistic,
            "reference_law": self.reference_law,
            "seed": self.seed,
            "wall_time": self.wall_time,
        }


def ks_statistic(samples: np.ndarray, law: laws.DistLaw) -> float:
    """Exact sup-distance between the empirical cdf and the law's cdf."""
    xs = np.sort(np.asarray(samples, dtype=float))
    m = xs.shape[0]
    if m == 0:
        raise DomainError("need at least one sample")
    cdf = law.cdf_grid(xs)
    i = np.arange(m)
    d_plus = np.max((i + 1) / m - cdf)
    d_minus = np.max(cdf - i / m)
    return float(max(d_plus, d_minus, 0.0))


def labelled_diameter_samples(n: int, replicates: int, seed: int,
                              threads: int = 1) -> np.ndarray:
    """Diameters of `replicates` uniform rooted labelled trees on n vertices."""
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    children = np.random.SeedSequence(seed).spawn(replicates)
    out = np.empty(replicates, np.int64)

    def work(lo, hi):
        for i in range(lo, hi):
            rng = np.random.default_rng(children[i])
            seq = rng.integers(0, n, size=n - 2, dtype=np.int64)
            rng.integers(0, n)  # root draw, kept for stream compatibility
            _, diam = _kernels.labelled_tree_stats(seq, n, 0)
            out[i] = diam

    _run_chunks(work, replicates, threads)
    return out


def planar_diameter_samples(n: int, replicates: int, seed: int,
                            threads: int = 1) -> np.ndarray:
    """Diameters of `replicates` uniform rooted planar trees on n vertices."""
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    children = np.random.SeedSequence(seed).spawn(replicates)
    out = np.empty(replicates, np.int64)
    m = n - 1
    base = np.concatenate([np.ones(m, np.int64), -np.ones(m + 1, np.int64)])

    def work(lo, hi):
        for i in range(lo, hi):
            rng = np.random.default_rng(children[i])
            contour = _kernels.dyck_contour(rng.permutation(base))
            _, diam = _kernels.contour_height_diameter(contour)
            out[i] = diam

    _run_chunks(work, replicates, threads)
    return out


def excursion_samples(n_grid: int, replicates: int, seed: int,
                      normalization: Normalization = Normalization.PAPER_SQRT2,
                      threads: int = 1):
    """(heights, diameters) of `replicates` discretized excursions."""
    from .excursion import excursion_batch_stats

    return excursion_batch_stats(n_grid, replicates, seed, normalization, threads)


def empirical_joint_survival(gammas: np.ndarray, diams: np.ndarray,
                             y: float, z: float) -> float:
    """Empirical P(D > y, Gamma > z) from paired excursion statistics."""
    return float(np.mean((diams > y) & (gammas > z)))


def convergence_study(family: StudyFamily, size: int, replicates: int,
                      seed: int, threads: int = 1) -> list[GofReport]:
    """KS reports of the rescaled statistics against the matching limit laws.

    Labelled trees: n^{-1/2} D_n against the Szekeres law.  Planar trees:
    n^{-1/2} D*_n against the diameter law.  Excursions (paper-normalized,
    size = grid resolution): one report each for the height and diameter."""
    start = time.perf_counter()
    if family is StudyFamily.LABELLED_TREE:
        diams = labelled_diameter_samples(size, replicates, seed, threads)
        law = laws.DistLaw(laws.LawKind.SZEKERES_DELTA)
        ks = ks_statistic(diams / math.sqrt(size), law)
        return [GofReport(replicates, ks, law.kind.value, seed,
                          time.perf_counter() - start)]
    if family is StudyFamily.PLANAR_TREE:
        diams = planar_diameter_samples(size, replicates, seed, threads)
        law = laws.DistLaw(laws.LawKind.DIAMETER_D)
        ks = ks_statistic(diams / math.sqrt(size), law)
        return [GofReport(replicates, ks, law.kind.value, seed,
                          time.perf_counter() - start)]
    if family is StudyFamily.EXCURSION:
        gammas, diams = excursion_samples(size, replicates, seed,
                                          Normalization.PAPER_SQRT2, threads)
        reports = []
        for values, kind in ((gammas, laws.LawKind.HEIGHT_GAMMA),
                             (diams, laws.LawKind.DIAMETER_D)):
            ks = ks_statistic(values, laws.DistLaw(kind))
            reports.append(GofReport(replicates, ks, kind.value, seed,
                                     time.perf_counter() - start))
        return reports
    raise DomainError(f"unknown study family {family!r}")
