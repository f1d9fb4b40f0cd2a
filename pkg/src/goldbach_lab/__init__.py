"""Odd-even graph families around the Goldbach conjecture.

Construction of prime-multiple-missing graphs, their intersections, and the
(near) Goldbach graphs; structure decompositions; closed-form Hamiltonian
cycle certificates; exact diameter computation; and the diameter-conjecture
sweep harness.
"""

from .errors import (
    BudgetExhaustedError,
    CapacityError,
    DomainError,
    FixtureParseError,
    GraphMismatchError,
    LayoutError,
)
from .graphs import (
    EvenGraph,
    GraphSpec,
    build_graph,
    goldbach,
    intersect_graphs,
    intersection,
    is_adjacent,
    near_goldbach,
    pmm,
    spec_from_kind,
    verify_induced,
)
from .hamilton import (
    HamCertificate,
    extend_g35_parts,
    ham_cycle,
    ham_cycle_g3,
    ham_cycle_g35,
    ham_cycle_g5,
    ham_path,
    verify_certificate,
)
from .metrics import (
    DistanceReport,
    INFINITY,
    connected_components,
    diameter,
    distance,
    distance_report,
    eccentricities,
)
from .oddsets import OddSetSpec, PrimeTable, eta, sieve_odd_primes

__all__ = [
    "BudgetExhaustedError",
    "CapacityError",
    "DistanceReport",
    "DomainError",
    "EvenGraph",
    "FixtureParseError",
    "GraphMismatchError",
    "GraphSpec",
    "HamCertificate",
    "INFINITY",
    "LayoutError",
    "OddSetSpec",
    "PrimeTable",
    "build_graph",
    "connected_components",
    "diameter",
    "distance",
    "distance_report",
    "eccentricities",
    "eta",
    "extend_g35_parts",
    "goldbach",
    "ham_cycle",
    "ham_cycle_g3",
    "ham_cycle_g35",
    "ham_cycle_g5",
    "ham_path",
    "intersect_graphs",
    "intersection",
    "is_adjacent",
    "near_goldbach",
    "pmm",
    "sieve_odd_primes",
    "spec_from_kind",
    "verify_certificate",
    "verify_induced",
]

__version__ = "0.1.0"
