"""Exact lattice, stability and counting computations for K3 orbifolds
given as symplectic quotients, and for their crepant resolutions."""

from .errors import K3OrbError, ShapeError, ConfigError
from .lattice import (
    NSLattice,
    RootSystemData,
    SingularPointData,
    MukaiVector,
    OrbifoldMukaiVector,
    cartan_matrix,
    root_system,
    mukai_pairing,
    mukai_vector_from_chern,
    root_pairing,
    d_m_squared,
    orbifold_pairing,
    euler_pairing,
    vector_divisors,
)
from .goettsche import product_power_series, hilb_euler_k3, series_crosscheck
from .configs import SurfaceConfig, load_config, dump_config, builtin_nikulin
from .transport import ResolvedLattice, HilbIndex, transport_vector, resolved_lattice, hilb_index
from .stability import (
    INFINITY,
    ALWAYS_EQUAL,
    NumericalClass,
    StabilityParams,
    CentralChargeValue,
    ThresholdSquared,
    twist_chern,
    slope_mu,
    central_charge,
    tilt_slope,
    discriminant_bar,
    bogomolov_bar_ok,
    discriminant_plain,
    bogomolov_ok,
    hodge_index_check,
    threshold_gieseker_from_tilt,
    threshold_tilt_from_gieseker,
    wall_k_squared,
    reduced_hilbert_poly,
    compare_reduced,
    phase_equal,
)
from .hall import (
    AlgebraHandle,
    EffectiveCone,
    PhaseMatcher,
    ReducedHilbertMatcher,
    TrivialMatcher,
    enumerate_decompositions,
    hall_exp,
    hall_log,
    matrix_algebra,
    scalar_algebra,
)
from .multiple_cover import (
    joyce_invariant,
    joyce_invariant_compactified,
    joyce_sign_extension,
)

__version__ = "0.1.0"
