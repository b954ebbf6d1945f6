"""Encode/decode between canonical set constructions and native values.

Each encode/decode pair is mutually inverse on its stated domain, and
decoding is a homomorphism for the Boolean and arithmetic structure; both
facts are what make "prove it natively, transport it across" arguments
valid, and both are checked in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from . import canon, kernel
from .canon import FALSE, TRUE, SumElem, ZFBool, ZFInt, ZFNat
from .errors import BridgeError
from .kernel import HFSet, mem, unpair

#: Naturals above this refuse to decode unless the caller raises the bound.
DEFAULT_NAT_BOUND = 4096


def bool_encode(b: bool) -> ZFBool:
    """True to {{}}, False to {}."""
    return TRUE if b else FALSE


def bool_decode(p: Union[ZFBool, HFSet]) -> bool:
    """Inverse of bool_encode; raw sets are checked for membership in the
    Boolean carrier."""
    if isinstance(p, ZFBool):
        return p.value is TRUE.value
    if p is FALSE.value:
        return False
    if p is TRUE.value:
        return True
    raise BridgeError(BridgeError.NOT_BOOLEAN, p)


def nat_encode(n: int, bound: Optional[int] = None) -> ZFNat:
    """The numeral n, by iterated successor."""
    cap = DEFAULT_NAT_BOUND if bound is None else bound
    if n < 0 or n > cap:
        raise BridgeError(BridgeError.OVERFLOW, None,
                          f"natural {n} outside [0, {cap}]")
    cur = canon.nat_zero()
    for _ in range(n):
        cur = canon.nat_succ(cur)
    return cur


def nat_decode(x: Union[ZFNat, HFSet], bound: Optional[int] = None) -> int:
    """Cardinality of x once it passes the numeral check.

    Accepts raw sets, not just ZFNat, so parsed input can be decoded
    directly.
    """
    cap = DEFAULT_NAT_BOUND if bound is None else bound
    v = x.value if isinstance(x, ZFNat) else x
    n = kernel.numeral_value(v)
    if n is None:
        raise BridgeError(BridgeError.NOT_NUMERAL, v)
    if n > cap:
        raise BridgeError(BridgeError.OVERFLOW, v,
                          f"numeral {n} above decode bound {cap}")
    return n


def int_encode(k: int, bound: Optional[int] = None) -> ZFInt:
    """k >= 0 to (k, 0), k < 0 to (0, -k)."""
    if k >= 0:
        return canon.int_of_nat(nat_encode(k, bound))
    return canon.int_neg(canon.int_of_nat(nat_encode(-k, bound)))


def int_decode(z: ZFInt, bound: Optional[int] = None) -> int:
    """Signed difference of the components."""
    return nat_decode(z.pos, bound) - nat_decode(z.neg, bound)


@dataclass(frozen=True)
class Left:
    payload: HFSet


@dataclass(frozen=True)
class Right:
    payload: HFSet


def sum_decode(s: Union[SumElem, HFSet], A: HFSet, B: HFSet
               ) -> Union[Left, Right]:
    """Left(payload) when the tag is false, Right(payload) when true."""
    if isinstance(s, SumElem):
        tag, payload = s.tag.value, s.payload
    else:
        parts = unpair(s)
        if parts is None:
            raise BridgeError(BridgeError.NOT_TAGGED, s, "not a tagged pair")
        tag, payload = parts
    if tag is FALSE.value:
        if not mem(payload, A):
            raise BridgeError(BridgeError.NOT_TAGGED, payload,
                              "left payload outside the carrier")
        return Left(payload)
    if tag is TRUE.value:
        if not mem(payload, B):
            raise BridgeError(BridgeError.NOT_TAGGED, payload,
                              "right payload outside the carrier")
        return Right(payload)
    raise BridgeError(BridgeError.NOT_TAGGED, s, "tag is not a Boolean")


def option_decode(o: Union[SumElem, HFSet], A: HFSet) -> Optional[HFSet]:
    """None for the none injection, the payload for some."""
    got = sum_decode(o, kernel.singleton(kernel.empty()), A)
    return None if isinstance(got, Left) else got.payload
