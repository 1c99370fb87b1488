"""Base-alpha (golden ratio) BBP-type expansions: exact generation and rigorous evaluation."""

from .bignum import Enclosure, PrecisionSpec, eval_expansion, oracle_value, phi_digits
from .catalog import CatalogEntry, get_entry, list_catalog, zero_relation
from .exactfield import ALPHA, BETA, Q5Number, alpha_pow, beta_pow, fib_lucas
from .pseries import ConstantTag, PExpansion, TagKind, combine, is_scalar_multiple, rebase, stretch

__all__ = [
    "ALPHA",
    "BETA",
    "CatalogEntry",
    "ConstantTag",
    "Enclosure",
    "PExpansion",
    "PrecisionSpec",
    "Q5Number",
    "TagKind",
    "alpha_pow",
    "beta_pow",
    "combine",
    "eval_expansion",
    "fib_lucas",
    "get_entry",
    "is_scalar_multiple",
    "list_catalog",
    "oracle_value",
    "phi_digits",
    "rebase",
    "stretch",
    "zero_relation",
]

__version__ = "0.1.0"
