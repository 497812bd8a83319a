"""Exact engine for twisted partial actions of finite-dimensional Hopf
algebras: partial crossed products, cleft extensions and gauge equivalence,
all verified over cyclotomic-rational scalars."""

__version__ = "0.1.0"

from .scalars import Cyclo, Rational, scalar_arith
from .linalg import ExactMatrix, Subspace, kernel, rank, solve_linear
from .groups import FiniteGroup, GroupCocycleTable, GroupSubset
from .algebra import (
    CoalgebraData,
    HopfAlgebraData,
    LinMap,
    StructuredAlgebra,
    Subalgebra,
    dual_hopf,
    iterated_comult,
    tensor_hopf,
    validate_hopf,
)
from .convolution import (
    ConvolutionElement,
    conv_unit,
    convolution_inverse_in_ideal,
    convolve,
)
from .constructors import (
    HopfPairing,
    ModuleAlgebraAction,
    cosemidirect_product,
    group_algebra,
    hopf_pairing,
    smash_product,
    truncated_torus,
)
from .partial_actions import (
    GlobalTwistedAction,
    GroupTwistedPartialAction,
    TwistedPartialAction,
    classify_cocycle,
    cocycle_twist_smash,
    group_dictionary_forward,
    group_dictionary_inverse,
    induce_partial,
    pairing_action,
    restrict_coaction,
    verify_symmetric,
    verify_twisted_partial,
)
from .crossed import (
    ComoduleAlgebra,
    CrossedProduct,
    build_crossed_product,
    coinvariants,
    comodule_structure,
    global_corner_embedding,
    verify_associativity,
)
from .cleft import (
    CleftData,
    build_cleft_maps,
    cleft_isomorphism,
    normalize_gamma_prime,
    reconstruct_action,
    verify_partially_cleft,
)
from .gauge import GaugePair, extract_gauge, gauge_isomorphism, verify_gauge
from .scenarios import MUTATION_CATALOG, ScenarioConfig, run_scenario
