"""Non-deterministic matrices, multiple-conclusion Hilbert calculi and platypus.

The binary connective ``pl`` (platypus) may return either the conjunction or
the disjunction of its inputs.  This package decides consequence over finite
Nmatrices, searches analytic derivations, synthesizes calculi for two-valued
Nmatrices, builds strict products, and implements the polynomial
single-conclusion procedure and the 3-SAT reduction for ``pl``.
"""

from .axiomatizer import axiomatize_boolean
from .calculus import (
    Derivation,
    Rule,
    RuleSet,
    builtin_rules,
    check_derivation,
    check_soundness,
    decide_mc,
    format_derivation,
    format_rules,
    parse_rules,
    prove,
)
from .formula import (
    App,
    Formula,
    Signature,
    Var,
    format_formula,
    match_schema,
    parse_formula,
    subformulas,
    substitute,
    variables,
)
from .kernels import BACKEND
from .multifun import (
    MultiFunction,
    compose_liberal,
    compose_synchronized,
    decompose_platypus,
    platypus_mf,
    recompose,
)
from .nmatrix import (
    Nmatrix,
    Sequent,
    Valuation,
    build_Mn,
    builtin,
    entails,
    enumerate_valuations,
    format_matrix,
    formula_multifunction,
    is_deterministic,
    is_isomorphic,
    parse_matrix,
    parse_sequent,
    separates,
    strict_product,
)
from .sat import Cnf, parse_dimacs, sat_oracle, sat_to_sequent
from .sc import decide_sc, in_language_of, nf, phi_family, tower

__version__ = "0.1.0"

__all__ = [
    "Derivation",
    "Rule",
    "RuleSet",
    "builtin_rules",
    "check_derivation",
    "check_soundness",
    "decide_mc",
    "format_derivation",
    "format_rules",
    "parse_rules",
    "prove",
    "App",
    "Formula",
    "Signature",
    "Var",
    "format_formula",
    "match_schema",
    "parse_formula",
    "subformulas",
    "substitute",
    "variables",
    "MultiFunction",
    "compose_liberal",
    "compose_synchronized",
    "decompose_platypus",
    "platypus_mf",
    "recompose",
    "Nmatrix",
    "Sequent",
    "Valuation",
    "build_Mn",
    "builtin",
    "entails",
    "enumerate_valuations",
    "format_matrix",
    "formula_multifunction",
    "is_deterministic",
    "is_isomorphic",
    "parse_matrix",
    "parse_sequent",
    "separates",
    "strict_product",
    "axiomatize_boolean",
    "BACKEND",
    "Cnf",
    "parse_dimacs",
    "sat_oracle",
    "sat_to_sequent",
    "decide_sc",
    "in_language_of",
    "nf",
    "phi_family",
    "tower",
]
