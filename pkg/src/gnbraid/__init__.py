"""Braid invariants valued in G_n^3-type groups, with an exact word-problem solver for G_N^2."""

__version__ = "0.1.0"

from .core import (
    BraidLetter,
    BraidWord,
    DomainError,
    DoublePrimeGenerator,
    Family,
    Gn2Generator,
    GroupWord,
    PairLetter,
    PlainGenerator,
    PrimeGenerator,
    WordSyntaxError,
    canonicalize_prime,
    invert_word,
    parse_braid,
    parse_word,
)
from .maps import (
    FConvention,
    Phi,
    Z2Automorphism,
    c_prime,
    f_generator,
    g_elem,
    g_word,
    h,
    minimality_certificate,
    phi,
    project_plain,
    z2_reduce,
)
from .relators import (
    relators_double_prime,
    relators_gn2,
    relators_prime,
    relators_pure_braid,
)
from .solver import (
    BudgetExceeded,
    SolverBudget,
    equal,
    is_minimal,
    neighbors,
    parity_signature,
    reduce,
)

__all__ = [
    "BraidLetter",
    "BraidWord",
    "DomainError",
    "DoublePrimeGenerator",
    "Family",
    "Gn2Generator",
    "GroupWord",
    "PairLetter",
    "PlainGenerator",
    "PrimeGenerator",
    "WordSyntaxError",
    "canonicalize_prime",
    "invert_word",
    "parse_braid",
    "parse_word",
    "FConvention",
    "Phi",
    "Z2Automorphism",
    "c_prime",
    "f_generator",
    "g_elem",
    "g_word",
    "h",
    "minimality_certificate",
    "phi",
    "project_plain",
    "z2_reduce",
    "relators_double_prime",
    "relators_gn2",
    "relators_prime",
    "relators_pure_braid",
    "BudgetExceeded",
    "SolverBudget",
    "equal",
    "is_minimal",
    "neighbors",
    "parity_signature",
    "reduce",
    "__version__",
]
