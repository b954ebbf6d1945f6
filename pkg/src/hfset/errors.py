"""Exception types shared across the library."""


class HFSetError(Exception):
    """Base class for all library errors."""


class LimitExceeded(HFSetError):
    """An enumeration (powerset, product, function space) would exceed the
    configured cardinality limit."""

    def __init__(self, what, size, limit):
        super().__init__(f"{what} would have {size} elements (limit {limit})")
        self.what = what
        self.size = size
        self.limit = limit


class ParseError(HFSetError):
    """Malformed input text; carries a 1-based position."""

    def __init__(self, message, line=1, column=1, expected=()):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column
        self.expected = tuple(expected)


class NotARelation(HFSetError):
    """A side condition `R subset of A x B` failed."""


class NotASubset(HFSetError):
    """A side condition `X subset of A` failed."""


class NotAFunction(HFSetError):
    """A totality side condition failed; `side` says which argument."""

    def __init__(self, side, message=""):
        super().__init__(message or f"{side} argument is not a total function")
        self.side = side


class NotAPFunc(HFSetError):
    """A functionality side condition failed."""


class NotInDomain(HFSetError):
    """Function applied outside its domain."""


class NotAMember(HFSetError):
    """An element was required to belong to a carrier and does not."""


class ZeroDenominator(HFSetError):
    """Rational constructed with denominator zero."""


class DivisionByZero(HFSetError):
    """Rational division or inverse by zero."""


class UnboundVar(HFSetError):
    """A symbolic term variable has no binding in the environment."""

    def __init__(self, name):
        super().__init__(f"unbound variable {name!r}")
        self.name = name


class NotInverse(HFSetError):
    """Two-sided inverse check failed; carries the failing side and a
    counterexample point."""

    def __init__(self, side, witness):
        super().__init__(f"{side} inverse law fails at {witness}")
        self.side = side
        self.witness = witness


class NotAnEmbedding(HFSetError):
    """An argument expected to be an injective total function is not."""

    def __init__(self, side, message=""):
        super().__init__(message or f"{side} argument is not an embedding")
        self.side = side


class BridgeError(HFSetError):
    """Decoding a set into a native value failed.

    kind is one of "not_numeral", "not_boolean", "not_tagged", "overflow";
    offending is the set that failed the check.
    """

    NOT_NUMERAL = "not_numeral"
    NOT_BOOLEAN = "not_boolean"
    NOT_TAGGED = "not_tagged"
    OVERFLOW = "overflow"

    def __init__(self, kind, offending, message=""):
        super().__init__(message or f"decode failed: {kind}")
        self.kind = kind
        self.offending = offending
