"""Generalized-exponent (theta) sequence and function norms.

Norms of weighted sequences and grid-sampled functions at an exponent
e = Lambda(p)^Psi(p), direct checks of the classical inequalities with their
sharp constants, and a numerical search for Grothendieck factorizations of
small bilinear forms.
"""

from .errors import (
    ArgError,
    ConfigError,
    ConjugacyError,
    ConvergenceWarning,
    DomainError,
    InconsistencyError,
    NonUniformGridError,
    NormOverflowError,
    ParseError,
    PositivityError,
    RangeError,
    ShapeError,
    SizeError,
    TailError,
    ThetaNormsError,
    ZeroFunctionError,
    ZeroWeightError,
)
from .exponent import (
    INF,
    ThetaExponent,
    as_exponent,
    conjugate_exponent,
    parse_exponent_preset,
    parse_theta,
    theta_eval,
    validate_theta,
)
from .function_space import (
    DiscreteMeasureSpace,
    GridFunction,
    convolution_young,
    counting_measure_equiv,
    dual_norm_characterization,
    f_norm,
    fn_norm_limit,
    gamma_log_convexity,
    gamma_quadrature,
    holder_fn,
    inclusion_check,
    integral_minkowski,
    interpolation_check,
    minkowski_fn,
)
from .gt_weighting import (
    BilinearForm,
    FactorizationCertificate,
    find_gt_factorization,
    form_sup_norm,
    gt_bound_check,
    weights_from_form,
)
from .inequalities import (
    cosecant_partial_fraction,
    generalized_holder,
    hardy,
    hardy_power_family,
    hilbert,
    hilbert_kernel_bound,
    holder_seq,
    minkowski_seq,
    tangent_lemma_check,
)
from .report import InequalityReport
from .sequence_space import (
    PowerDecay,
    WeightedSequence,
    counterexample_sequence,
    diagonal_separator,
    dual_functional_norm,
    embedding_check,
    norm_limit_profile,
    random_direction_sup,
    rational_approximation,
    seq_norm,
)
from .suite import SuiteConfig, run_suite

__all__ = [
    "ArgError",
    "as_exponent",
    "BilinearForm",
    "ConfigError",
    "ConjugacyError",
    "conjugate_exponent",
    "ConvergenceWarning",
    "convolution_young",
    "cosecant_partial_fraction",
    "counterexample_sequence",
    "counting_measure_equiv",
    "diagonal_separator",
    "DiscreteMeasureSpace",
    "DomainError",
    "dual_functional_norm",
    "dual_norm_characterization",
    "embedding_check",
    "f_norm",
    "FactorizationCertificate",
    "find_gt_factorization",
    "fn_norm_limit",
    "form_sup_norm",
    "gamma_log_convexity",
    "gamma_quadrature",
    "generalized_holder",
    "GridFunction",
    "gt_bound_check",
    "hardy",
    "hardy_power_family",
    "hilbert",
    "hilbert_kernel_bound",
    "holder_fn",
    "holder_seq",
    "inclusion_check",
    "InconsistencyError",
    "InequalityReport",
    "INF",
    "integral_minkowski",
    "interpolation_check",
    "minkowski_fn",
    "minkowski_seq",
    "NonUniformGridError",
    "norm_limit_profile",
    "NormOverflowError",
    "parse_exponent_preset",
    "parse_theta",
    "ParseError",
    "PositivityError",
    "PowerDecay",
    "random_direction_sup",
    "RangeError",
    "rational_approximation",
    "run_suite",
    "seq_norm",
    "ShapeError",
    "SizeError",
    "SuiteConfig",
    "TailError",
    "tangent_lemma_check",
    "theta_eval",
    "ThetaExponent",
    "ThetaNormsError",
    "validate_theta",
    "WeightedSequence",
    "weights_from_form",
    "ZeroFunctionError",
    "ZeroWeightError",
]

__version__ = "0.1.0"
