"""Generalized power series with natural real-exponent support and their
Borel-Laplace resummation in the positive real direction.

The library works in the logarithmic chart w = log z, where disks become
half-planes H(r) = {Re w < r} and the origin becomes w = -inf.  It provides

* exact jet arithmetic for one- and several-variable generalized power
  series and mixed series (:mod:`.series`, :mod:`.mixed`),
* the regions of the chart with their membership predicates and the
  summability parameter tuples driving them (:mod:`.loggeom`),
* certified numerical log-Borel and log-Laplace transforms, ramified
  versions included (:mod:`.transforms`),
* Tougeron decompositions, Gevrey-estimate verification, and the
  multisummation pipeline (:mod:`.resummation`),
* the substitution calculus on jets (:mod:`.substitutions`),
* the ``.gps`` file format (:mod:`.gpsfile`) and the ``gps-resum`` CLI
  (:mod:`.cli`).
"""

from .exponents import (
    MERGE_TOL,
    ArithmeticSupport,
    ExponentKey,
    FiniteSupport,
    LogIntegerSupport,
    ScaledSupport,
    SumClosureSupport,
    SupportDescriptor,
)
from .gpsfile import GpsParseError, parse_gps, parse_gps_text, write_gps
from .loggeom import (
    LogBorelDisk,
    LogDisk,
    LogLine,
    LogRegion,
    LogSector,
    PolyDisk,
    PolySector,
    SummabilityParams,
    containment_check,
    contains,
    exp_polydisk_contains,
    rho_p,
)
from .mixed import MixedSeries
from .resummation import (
    DecompositionPiece,
    GevreyReport,
    MultisumOptions,
    MultisumResult,
    TougeronDecomposition,
    assemble_T,
    binet_constant,
    borel_param_update,
    coefficient_sum_bound,
    convergent_decomposition,
    decomposition_norm,
    estimate_log_radius,
    euler_series,
    gevrey1_model_decomposition,
    gevrey_check,
    monomial_decomposition,
    multisum,
    quasianalyticity_probe,
    telescoped,
)
from .series import (
    EvalResult,
    GenSeries,
    NormResult,
    TailBound,
    add,
    eval_logsum,
    formal_borel,
    formal_laplace,
    jets_equal,
    monomial_divide,
    mul,
    norm_r,
    split_by_monomials,
)
from .substitutions import (
    Identify,
    Infinitesimal,
    Permutation,
    Ramification,
    RegularBlowUp,
    SetZero,
    SingularBlowUp,
    Substitution,
    Translation,
    apply,
    induced_map,
    numeric_consistency,
    param_transport,
    weierstrass_divide,
    weierstrass_prepare,
)
from .transforms import (
    FlatCertificate,
    GrowthCertificate,
    LogFunction,
    QuadratureError,
    QuadratureResult,
    borel_sup_bound,
    borel_transform_function,
    integrate_segment,
    log_borel,
    log_borel_lambda,
    log_laplace,
    log_laplace_lambda,
    power_function,
    series_log_function,
)

__version__ = "0.1.0"
