"""Exact local commutative algebra: standard bases, initial ideals,
Artin-Rees numbers, multiplicity functions, and perturbation bounds.

Convention used throughout: monomial orders are Noetherian ("1 is smallest"),
and the initial monomial / initial form of an element is taken at the order-
*smallest* monomial, the natural choice for local rings and order filtrations.
Most general-purpose computer algebra systems use the opposite (largest-lead)
convention for global Groebner bases.
"""

__version__ = "0.1.0"

from .errors import (
    INFINITE,
    InternalCheckFailed,
    NormalConeError,
    NotFilterRegular,
    NotMPrimary,
    ResourceBudgetError,
    TruncationCapExceeded,
)
from .fields import QQ, PrimeField, RationalField, field_from_name
from .orders import MonomialOrder, deglex, degrevlex, lex, order_from_name, weighted
from .rings import Polynomial, RingContext
from .ideals import IdealHandle, ideal, maximal_ideal, zero_ideal
from .mora import standard_basis
from .adic import (
    AdicEngine,
    achilles_manaresi,
    artin_rees_number,
    hilbert_samuel,
    initial_ideal,
    multiplicity_hs,
    multiplicity_sequence,
)
from .perturb import (
    bound_main,
    bound_regular,
    bound_via_hilbert,
    certify_filter_regular,
    sample_perturbation,
    search_destabilizing,
    verify_invariance,
)
from .filtrations import (
    FiltrationSpec,
    adic_filtration,
    artin_rees_filtration,
    bound_filtration,
    filtration_from_order,
    initial_ideal_filtration,
    jet_pipeline,
    JetInstance,
    rees_delta,
    search_destabilizing_filtration,
    table_filtration,
)
from .dsl import parse_script, pretty_print, ScriptError
from .cli import bind_script, main, run_script

__all__ = [
    "INFINITE",
    "InternalCheckFailed",
    "NormalConeError",
    "NotFilterRegular",
    "NotMPrimary",
    "ResourceBudgetError",
    "TruncationCapExceeded",
    "QQ",
    "PrimeField",
    "RationalField",
    "field_from_name",
    "MonomialOrder",
    "deglex",
    "degrevlex",
    "lex",
    "weighted",
    "order_from_name",
    "Polynomial",
    "RingContext",
    "IdealHandle",
    "ideal",
    "maximal_ideal",
    "zero_ideal",
    "standard_basis",
    "AdicEngine",
    "achilles_manaresi",
    "artin_rees_number",
    "hilbert_samuel",
    "initial_ideal",
    "multiplicity_hs",
    "multiplicity_sequence",
    "bound_main",
    "bound_regular",
    "bound_via_hilbert",
    "certify_filter_regular",
    "sample_perturbation",
    "search_destabilizing",
    "verify_invariance",
    "FiltrationSpec",
    "adic_filtration",
    "artin_rees_filtration",
    "bound_filtration",
    "filtration_from_order",
    "initial_ideal_filtration",
    "jet_pipeline",
    "JetInstance",
    "rees_delta",
    "search_destabilizing_filtration",
    "table_filtration",
    "parse_script",
    "pretty_print",
    "ScriptError",
    "bind_script",
    "main",
    "run_script",
    "__version__",
]
