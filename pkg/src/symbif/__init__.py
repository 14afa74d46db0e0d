"""Bifurcation certificates for symmetric elliptic systems.

The package decides and certifies global bifurcation of solution orbits for
elliptic systems with Neumann boundary conditions on rotation-invariant
domains.  It combines exact arithmetic in the Euler ring of SO(2)
(:mod:`symbif.euler`), Neumann spectra of balls via Bessel-derivative roots
(:mod:`symbif.spectral`), the spectral model of the linearized system
(:mod:`symbif.system`), verdicts and exact index elements
(:mod:`symbif.bifurcation`), slice-level gradient degrees
(:mod:`symbif.morse`) and a config-driven CLI (:mod:`symbif.cli`).
"""

from .bifurcation import (
    BIFURCATES,
    INCONCLUSIVE,
    NO_VERDICT,
    UNBOUNDED,
    BifurcationVerdict,
    GlobCheck,
    UnboundedReport,
    analyze,
    bif_a9,
    bif_difference,
    check_glob,
    check_glob_zero,
    enumerate_zero_sum_subsets,
    rabinowitz_excludes_bounded,
    unbounded_verdict,
)
from .errors import (
    ConvergenceError,
    DomainError,
    Error,
    InsufficientSpectrum,
    MissingClass,
    NonInjectiveTable,
    NotAMember,
    NotInvertible,
    PreconditionError,
    SchemaError,
    UnsupportedDomain,
    ValidationError,
)
from .euler import EulerSO2, SO2Rep, deg_minus_id, rep_equiv_mod_even_trivial
from .morse import (
    OrbitDatum,
    compare_orbit_degrees,
    degree_from_orbits,
    lift_degree,
    so2_class_map_to_euler,
)
from .spectral import (
    BallDomain,
    CustomDomain,
    DiskDomain,
    RepDescriptor,
    RootCache,
    SpectrumEntry,
    ball_rep_nontrivial,
    bessel_j,
    bessel_j_prime,
    disk_spectrum,
    load_custom_spectrum,
    neumann_radial_roots,
    radial_condition,
    radial_roots_up_to,
)
from .system import (
    KernelReps,
    LinearizationEigenvalue,
    SystemSpec,
    epsilon_gap,
    kernel_reps,
    lambda_membership,
    lambda_set,
    linearization_eigenvalues,
    system_spec_from_json,
)

__version__ = "0.1.0"
