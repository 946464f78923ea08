"""Eigenvalue regions of doubly stochastic matrices.

Scans convex combinations of permutation matrices (reduced to one
representative per inequivalent pair class), tests eigenvalues against the
Perfect-Mirsky region, refines boundary crossings, and runs hull-spectrum
experiments for alternating groups.
"""

from .permgroup import (
    CycleType,
    PairCensus,
    PairClass,
    Permutation,
    all_cycle_types,
    canonical_cycle_form,
    centralizer_generators,
    classify_pair,
    compose,
    conjugacy_class,
    conjugate,
    conjugator_to_canonical,
    count_inequivalent_pairs,
    cycle_type,
    format_cycles,
    inequivalent_pairs,
    parse_cycles,
)
from .region import (
    RegionPM,
    boundary_segments,
    pm_contains,
    pm_contains_many,
    pm_contains_oracle,
    pm_signed_distance,
    pm_signed_distance_many,
)
from .search import (
    CrossingReport,
    NoCrossingError,
    RefinedInterval,
    hull_spectrum_scan,
    refine_crossing,
    scan_census,
    scan_tuples,
    track_eigenpath,
)
from .spectra import (
    ConvexCombo,
    DeflatedMatrix,
    EigenPoint,
    ScanConfig,
    combo_matrix,
    deflate,
    eigenvalues,
    scan_pair,
    scan_tuple,
)

__version__ = "0.1.0"
