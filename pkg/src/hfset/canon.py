"""Canonical constructions: Booleans, von Neumann naturals, integers,
rationals, coproducts and options.

The quotient types of the source constructions are simulated by canonical
representatives with normalizing constructors: an integer is a pair of
naturals with at least one component zero, a rational is a reduced fraction
with positive denominator.  The respect-for-equivalence laws are checked in
the test suite, which is what certifies the simulation.

Arithmetic on naturals follows the primitive recursion schemes
(add n m = succ^n(m), sub n m = pred^m(n), mul n m = (+m)^n(0)) rather than
anything faster; results are only ever produced by iterating succ, pred and
the step functions.  Recursive calls are cached on interned identities,
which changes cost but not values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, TypeVar

from . import kernel
from .errors import DivisionByZero, NotAMember, ZeroDenominator
from .kernel import HFSet, kpair, mem

T = TypeVar("T")


# ---------------------------------------------------------------------------
# Booleans: false = {}, true = {{}}

@dataclass(frozen=True)
class ZFBool:
    """A set known to belong to {false, true}."""
    value: HFSet

    def __post_init__(self):
        v = kernel.numeral_value(self.value)
        if v not in (0, 1):
            raise NotAMember("not a member of the Boolean carrier")


FALSE = ZFBool(kernel.empty())
TRUE = ZFBool(kernel.singleton(kernel.empty()))

#: The two-element Boolean carrier {false, true}.
BOOLS = kernel.from_elements((FALSE.value, TRUE.value))


def bool_cases(p: ZFBool, on_false: T, on_true: T) -> T:
    """Case eliminator: selects by comparing the underlying set with {}."""
    return on_false if p.value is FALSE.value else on_true


def band(p: ZFBool, q: ZFBool) -> ZFBool:
    """Conjunction, as intersection of the underlying sets."""
    return ZFBool(kernel.bin_inter(p.value, q.value))


def bor(p: ZFBool, q: ZFBool) -> ZFBool:
    """Disjunction, as union of the underlying sets."""
    return ZFBool(kernel.bin_union(p.value, q.value))


def bnot(p: ZFBool) -> ZFBool:
    """Negation, by case analysis."""
    return bool_cases(p, TRUE, FALSE)


# ---------------------------------------------------------------------------
# Naturals: transitive sets totally ordered by membership

@dataclass(frozen=True)
class ZFNat:
    """A set carrying the von Neumann numeral invariant."""
    value: HFSet

    def __post_init__(self):
        if kernel.numeral_value(self.value) is None:
            raise NotAMember("not a von Neumann numeral")


def is_von_neumann(x: HFSet) -> bool:
    """Transitive and totally ordered by membership.

    Canonical interning detects exactly these sets at construction, so the
    check is a field read; the definitional check is kept in the tests as
    an independent oracle.
    """
    return kernel.numeral_value(x) is not None


_NAT_CACHE: dict = {}


def _nat(k: int) -> ZFNat:
    got = _NAT_CACHE.get(k)
    if got is None:
        got = _NAT_CACHE[k] = ZFNat(kernel._numeral_node(k))
    return got


def _val(n: ZFNat) -> int:
    return kernel.numeral_value(n.value)


def nat_zero() -> ZFNat:
    """0, the empty set."""
    return _nat(0)


def nat_succ(n: ZFNat) -> ZFNat:
    """n union {n}."""
    return ZFNat(kernel.insert(n.value, n.value))


def nat_rec(n: ZFNat, base: T, step: Callable[[ZFNat, T], T]) -> T:
    """Structural recursion: rec 0 = base, rec (succ k) = step k (rec k)."""
    acc = base
    for k in range(_val(n)):
        acc = step(_nat(k), acc)
    return acc


_ADD: dict = {}
_SUB: dict = {}
_MUL: dict = {}


def nat_pred(n: ZFNat) -> ZFNat:
    """Predecessor, with pred 0 = 0.

    This is the recursor with step (x, _) -> x; the step drops the
    recursive result, so the one-step unfolding pred(succ k) = k is its
    exact call-by-name evaluation (the eager recursor agrees, see tests,
    but costs O(n) per call).
    """
    v = _val(n)
    return n if v == 0 else _nat(v - 1)


def nat_add(n: ZFNat, m: ZFNat) -> ZFNat:
    """n + m, recursing on n with base m and step succ."""
    nv, mnode = _val(n), m.value
    mid = mnode.intern_id
    k = nv
    while k > 0 and (k, mid) not in _ADD:
        k -= 1
    acc = mnode if k == 0 else _ADD[(k, mid)]
    insert = kernel.insert
    while k < nv:
        acc = insert(acc, acc)  # succ on the raw node
        k += 1
    if k:
        _ADD[(nv, mid)] = acc
    return ZFNat(acc)


def nat_sub(n: ZFNat, m: ZFNat) -> ZFNat:
    """Truncated subtraction, recursing on m with base n and step pred."""
    nv, mv = _val(n), _val(m)
    if mv == 0:
        return n
    key = (nv, mv)
    got = _SUB.get(key)
    if got is None:
        acc = n
        for _ in range(mv):
            acc = nat_pred(acc)
        got = _SUB[key] = acc
    return got


def nat_mul(n: ZFNat, m: ZFNat) -> ZFNat:
    """n * m, recursing on n with base 0 and step (+ m)."""
    nv, mid = _val(n), m.value.intern_id
    k = nv
    while k > 0 and (k, mid) not in _MUL:
        k -= 1
    acc = _nat(0) if k == 0 else _MUL[(k, mid)]
    while k < nv:
        acc = nat_add(acc, m)
        k += 1
        _MUL[(k, mid)] = acc
    return acc


def _clear_arith_caches():
    """Drop the arithmetic memo tables (tests and memory hygiene)."""
    _ADD.clear()
    _SUB.clear()
    _MUL.clear()


def nat_lt(m: ZFNat, n: ZFNat) -> bool:
    """Strict order: membership of the underlying sets."""
    return mem(m.value, n.value)


def nat_le(m: ZFNat, n: ZFNat) -> bool:
    """m < n or m = n."""
    return nat_lt(m, n) or m.value is n.value


def nat_is_zero(n: ZFNat) -> bool:
    return _val(n) == 0


# ---------------------------------------------------------------------------
# Integers: differences of naturals, canonicalized so one side is zero

@dataclass(frozen=True)
class ZFInt:
    """Canonical representative (pos, neg) with pos = 0 or neg = 0."""
    pos: ZFNat
    neg: ZFNat

    def __post_init__(self):
        if _val(self.pos) != 0 and _val(self.neg) != 0:
            raise NotAMember("integer representative is not canonical")

    @property
    def value(self) -> HFSet:
        """The underlying set: the pair (pos, neg)."""
        return kpair(self.pos.value, self.neg.value)


def int_mk(a: ZFNat, b: ZFNat) -> ZFInt:
    """The integer a - b; truncated subtraction both ways canonicalizes."""
    # sub's base cases: x - 0 = x and 0 - x = 0, so such pairs are already
    # canonical and need no pred loops
    if _val(a) == 0 or _val(b) == 0:
        return ZFInt(a, b)
    return ZFInt(nat_sub(a, b), nat_sub(b, a))


def int_zero() -> ZFInt:
    return int_mk(_nat(0), _nat(0))


def int_one() -> ZFInt:
    return int_mk(_nat(1), _nat(0))


def int_add(x: ZFInt, y: ZFInt) -> ZFInt:
    """Componentwise addition, then canonicalize."""
    return int_mk(nat_add(x.pos, y.pos), nat_add(x.neg, y.neg))


def int_neg(x: ZFInt) -> ZFInt:
    """Opposite: flip the pair."""
    return ZFInt(x.neg, x.pos)


def int_sub(x: ZFInt, y: ZFInt) -> ZFInt:
    """Addition of the opposite."""
    return int_add(x, int_neg(y))


def int_mul(x: ZFInt, y: ZFInt) -> ZFInt:
    """(a,b) * (c,d) = (ac + bd, ad + bc)."""
    a, b = x.pos, x.neg
    c, d = y.pos, y.neg
    return int_mk(nat_add(nat_mul(a, c), nat_mul(b, d)),
                  nat_add(nat_mul(a, d), nat_mul(b, c)))


def int_lt(x: ZFInt, y: ZFInt) -> bool:
    """(a,b) < (c,d) iff a + d < b + c."""
    return nat_lt(nat_add(x.pos, y.neg), nat_add(x.neg, y.pos))


def int_is_zero(x: ZFInt) -> bool:
    return nat_is_zero(x.pos) and nat_is_zero(x.neg)


def int_abs(x: ZFInt) -> ZFNat:
    """|x| as a natural."""
    return x.pos if nat_is_zero(x.neg) else x.neg


def int_of_nat(n: ZFNat) -> ZFInt:
    return ZFInt(n, _nat(0))


# ---------------------------------------------------------------------------
# Rationals: reduced fractions with positive denominator

def _nat_divmod(a: ZFNat, b: ZFNat):
    """Quotient and remainder; b must be nonzero.

    Subtracts doubled chunks of b so the loop count stays logarithmic in
    the quotient; everything is still nat_add/nat_sub arithmetic.
    """
    q, r = _nat(0), a
    while nat_le(b, r):
        chunk, mult = b, _nat(1)
        while True:
            doubled = nat_add(chunk, chunk)
            if not nat_le(doubled, r):
                break
            chunk, mult = doubled, nat_add(mult, mult)
        r = nat_sub(r, chunk)
        q = nat_add(q, mult)
    return q, r


def _nat_mod(a: ZFNat, b: ZFNat) -> ZFNat:
    """Remainder only; cheaper than _nat_divmod when the quotient is big."""
    r = a
    while nat_le(b, r):
        chunk = b
        while True:
            doubled = nat_add(chunk, chunk)
            if not nat_le(doubled, r):
                break
            chunk = doubled
        r = nat_sub(r, chunk)
    return r


def _nat_gcd(a: ZFNat, b: ZFNat) -> ZFNat:
    while not nat_is_zero(b):
        a, b = b, _nat_mod(a, b)
    return a


@dataclass(frozen=True)
class ZFRat:
    """Reduced fraction num/den with den > 0."""
    num: ZFInt
    den: ZFInt

    def __post_init__(self):
        if not int_lt(int_zero(), self.den):
            raise NotAMember("denominator is not positive")
        # gcd(0, d) = d, so this also forces the canonical zero 0/1
        g = _nat_gcd(int_abs(self.num), int_abs(self.den))
        if _val(g) != 1:
            raise NotAMember("fraction is not reduced")

    @property
    def value(self) -> HFSet:
        """The underlying set: the pair (num, den)."""
        return kpair(self.num.value, self.den.value)


def rat_mk(num: ZFInt, den: ZFInt) -> ZFRat:
    """Normalize sign and reduce by the gcd of the absolute values."""
    if int_is_zero(den):
        raise ZeroDenominator("rational with denominator zero")
    if int_lt(den, int_zero()):
        num, den = int_neg(num), int_neg(den)
    if int_is_zero(num):
        return ZFRat(int_zero(), int_one())
    g = _nat_gcd(int_abs(num), int_abs(den))
    q_num, _ = _nat_divmod(int_abs(num), g)
    q_den, _ = _nat_divmod(int_abs(den), g)
    signed = int_of_nat(q_num) if nat_is_zero(num.neg) else int_neg(int_of_nat(q_num))
    return ZFRat(signed, int_of_nat(q_den))


def rat_zero() -> ZFRat:
    return rat_mk(int_zero(), int_one())


def rat_one() -> ZFRat:
    return rat_mk(int_one(), int_one())


def rat_add(p: ZFRat, q: ZFRat) -> ZFRat:
    """Cross formula (ad + cb) / bd, then reduce."""
    return rat_mk(int_add(int_mul(p.num, q.den), int_mul(q.num, p.den)),
                  int_mul(p.den, q.den))


def rat_neg(p: ZFRat) -> ZFRat:
    return ZFRat(int_neg(p.num), p.den)


def rat_sub(p: ZFRat, q: ZFRat) -> ZFRat:
    return rat_add(p, rat_neg(q))


def rat_mul(p: ZFRat, q: ZFRat) -> ZFRat:
    return rat_mk(int_mul(p.num, q.num), int_mul(p.den, q.den))


def rat_inv(p: ZFRat) -> ZFRat:
    """Reciprocal; zero has none."""
    if int_is_zero(p.num):
        raise DivisionByZero("inverse of zero")
    return rat_mk(p.den, p.num)


def rat_div(p: ZFRat, q: ZFRat) -> ZFRat:
    if int_is_zero(q.num):
        raise DivisionByZero("division by zero")
    return rat_mul(p, rat_inv(q))


# ---------------------------------------------------------------------------
# Coproducts and options: tagged Kuratowski pairs

@dataclass(frozen=True)
class SumElem:
    """An element of A + B: a pair (tag, payload) with a Boolean tag."""
    tag: ZFBool
    payload: HFSet

    @property
    def underlying(self) -> HFSet:
        return kpair(self.tag.value, self.payload)


#: Option elements are sum elements over {0} + A.
OptionElem = SumElem


def sum_set(A: HFSet, B: HFSet) -> HFSet:
    """({false} x A) union ({true} x B)."""
    return kernel.bin_union(
        kernel.prod(kernel.singleton(FALSE.value), A),
        kernel.prod(kernel.singleton(TRUE.value), B))


def inl(a: HFSet, A: HFSet, B: HFSet) -> SumElem:
    """Left injection; a must belong to A."""
    if not mem(a, A):
        raise NotAMember("inl: element outside the left carrier")
    return SumElem(FALSE, a)


def inr(b: HFSet, A: HFSet, B: HFSet) -> SumElem:
    """Right injection; b must belong to B."""
    if not mem(b, B):
        raise NotAMember("inr: element outside the right carrier")
    return SumElem(TRUE, b)


def sum_cases(s: SumElem, on_left: Callable[[HFSet], T],
              on_right: Callable[[HFSet], T]) -> T:
    """Dispatch on the tag."""
    return bool_cases(s.tag, on_left, on_right)(s.payload)


def option_set(A: HFSet) -> HFSet:
    """{0} + A."""
    return sum_set(kernel.singleton(kernel.empty()), A)


def opt_none(A: HFSet) -> OptionElem:
    """inl({})."""
    return inl(kernel.empty(), kernel.singleton(kernel.empty()), A)


def opt_some(a: HFSet, A: HFSet) -> OptionElem:
    """inr on the payload carrier."""
    return inr(a, kernel.singleton(kernel.empty()), A)


def option_cases(o: OptionElem, none_result: T,
                 on_some: Callable[[HFSet], T]) -> T:
    """Eliminator: the none branch is a plain value, some gets the payload."""
    return bool_cases(o.tag, lambda _: none_result, on_some)(o.payload)
