"""Simulation side of the library: tree samplers, excursion paths, Bessel
hitting times and convergence studies."""

from .bessel import BesselCheck, bessel_hitting_check, hitting_transform
from .excursion import (
    ExcursionPath,
    Normalization,
    SpinalRecord,
    excursion_batch_stats,
    excursion_height_diameter,
    excursion_height_diameter_brute,
    sample_excursion,
)
from .study import (
    GofReport,
    StudyFamily,
    convergence_study,
    empirical_joint_survival,
    excursion_samples,
    ks_statistic,
    labelled_diameter_samples,
    planar_diameter_samples,
)
from .trees import (
    TreeStats,
    all_pairs_diameter,
    contour_to_adjacency,
    labelled_tree_adjacency,
    sample_dyck_contour,
    sample_labelled_tree,
    sample_labelled_tree_structure,
    sample_planar_tree,
    tree_diameter_double_bfs,
)

__all__ = [
    "BesselCheck",
    "bessel_hitting_check",
    "hitting_transform",
    "ExcursionPath",
    "Normalization",
    "SpinalRecord",
    "excursion_batch_stats",
    "excursion_height_diameter",
    "excursion_height_diameter_brute",
    "sample_excursion",
    "GofReport",
    "StudyFamily",
    "convergence_study",
    "empirical_joint_survival",
    "excursion_samples",
    "ks_statistic",
    "labelled_diameter_samples",
    "planar_diameter_samples",
    "TreeStats",
    "all_pairs_diameter",
    "contour_to_adjacency",
    "labelled_tree_adjacency",
    "sample_dyck_contour",
    "sample_labelled_tree",
    "sample_labelled_tree_structure",
    "sample_planar_tree",
    "tree_diameter_double_bfs",
]
