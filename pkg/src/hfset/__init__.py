"""Executable hereditarily finite set theory.

Canonical sets with decidable extensional equality, a carrier-relative
relational calculus, function evaluation and lambda abstraction, canonical
Booleans/naturals/integers/rationals, an obligation discharge engine for
well-formedness side conditions, and isomorphism machinery up to the
currying isomorphism.  The `hfset` command exposes a small expression DSL,
a REPL and a batch checker over the same operations.
"""

from . import bridges, canon, cli, funcs, iso, kernel, obligations, relcalc
from .errors import (
    BridgeError,
    DivisionByZero,
    HFSetError,
    LimitExceeded,
    NotAFunction,
    NotAMember,
    NotAnEmbedding,
    NotAPFunc,
    NotARelation,
    NotASubset,
    NotInDomain,
    NotInverse,
    ParseError,
    UnboundVar,
    ZeroDenominator,
)
from .kernel import (
    HFSet,
    bin_inter,
    bin_union,
    diff,
    empty,
    from_elements,
    inter_all,
    is_kpair,
    kpair,
    mem,
    parse_set,
    pi1,
    pi2,
    pow,
    prod,
    separation,
    serialize,
    set_compare,
    singleton,
    subset,
    union_all,
)

__version__ = "0.1.0"

__all__ = [
    "kernel", "relcalc", "funcs", "obligations", "canon", "iso", "bridges",
    "cli",
    "HFSet", "empty", "from_elements", "singleton", "mem", "subset",
    "set_compare", "bin_union", "bin_inter", "diff", "union_all", "inter_all",
    "separation", "pow", "prod", "kpair", "pi1", "pi2", "is_kpair",
    "serialize", "parse_set",
    "HFSetError", "LimitExceeded", "ParseError", "NotARelation", "NotASubset",
    "NotAFunction", "NotAPFunc", "NotInDomain", "NotAMember", "NotInverse",
    "NotAnEmbedding", "ZeroDenominator", "DivisionByZero", "UnboundVar",
    "BridgeError",
    "__version__",
]
