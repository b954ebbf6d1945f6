"""Binary relations between explicit carriers.

A relation between A and B is any set R with R subset of A x B.  Carriers
are always passed explicitly: converse, domain, range and image are
carrier-relative notions, and inferring carriers from the pairs present in
R would silently change their meaning.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

from . import kernel
from .errors import NotAFunction, NotARelation, NotASubset
from .kernel import HFSet, kpair, mem, unpair


@dataclass(frozen=True)
class CarrierPair:
    """Source and destination carrier of a relation."""
    src: HFSet
    dst: HFSet


_IS_REL: dict = {}
_IS_PFUNC: dict = {}
_IS_FUNC: dict = {}


def _pairs(R: HFSet) -> Iterator[Tuple[HFSet, HFSet]]:
    """Decompose the members of R that are Kuratowski pairs."""
    for z in R:
        p = unpair(z)
        if p is not None:
            yield p


def identity(A: HFSet) -> HFSet:
    """The identity relation { (a,a) | a in A }."""
    return kernel.from_elements(kpair(a, a) for a in A)


def is_relation(R: HFSet, A: HFSet, B: HFSet) -> bool:
    """R subset of A x B, decided element by element."""
    key = (R.intern_id, A.intern_id, B.intern_id)
    hit = _IS_REL.get(key)
    if hit is None:
        hit = all(
            (p := unpair(z)) is not None and mem(p[0], A) and mem(p[1], B)
            for z in R
        )
        _IS_REL[key] = hit
    return hit


def is_pfunc(f: HFSet, A: HFSet, B: HFSet) -> bool:
    """Functional relation: no x relates to two distinct ys."""
    key = (f.intern_id, A.intern_id, B.intern_id)
    hit = _IS_PFUNC.get(key)
    if hit is None:
        hit = _decide_pfunc(f, A, B)
        _IS_PFUNC[key] = hit
    return hit


def _decide_pfunc(f, A, B):
    if not is_relation(f, A, B):
        return False
    seen: dict = {}
    for x, y in _pairs(f):
        prev = seen.setdefault(x.intern_id, y)
        if prev is not y:
            return False
    return True


def is_func(f: HFSet, A: HFSet, B: HFSet) -> bool:
    """Total function: functional relation whose domain is exactly A."""
    key = (f.intern_id, A.intern_id, B.intern_id)
    hit = _IS_FUNC.get(key)
    if hit is None:
        hit = is_pfunc(f, A, B) and len(
            {x.intern_id for x, _ in _pairs(f)}
        ) == kernel.card(A)
        _IS_FUNC[key] = hit
    return hit


def converse(R: HFSet, A: HFSet, B: HFSet) -> HFSet:
    """{ (b,a) | (a,b) in R }, defined for relations R subset of A x B."""
    if not is_relation(R, A, B):
        raise NotARelation("converse: not a relation between the carriers")
    return kernel.from_elements(kpair(y, x) for x, y in _pairs(R))


def compose(S: HFSet, R: HFSet, A: HFSet, B: HFSet, C: HFSet) -> HFSet:
    """{ (x,z) in A x C | exists y in B, (x,y) in R and (y,z) in S }.

    Deliberately unconditioned: junk members of R or S that are not pairs
    through A, B, C simply contribute nothing.
    """
    adj: dict = {}
    for x, y in _pairs(R):
        if mem(x, A) and mem(y, B):
            adj.setdefault(y.intern_id, []).append(x)
    out = {}
    for y, z in _pairs(S):
        if mem(z, C):
            for x in adj.get(y.intern_id, ()):
                p = kpair(x, z)
                out[p.intern_id] = p
    return kernel.from_elements(out.values())


def fcompose(g: HFSet, f: HFSet, A: HFSet, B: HFSet, C: HFSet) -> HFSet:
    """Composition restricted to total functions; raises NotAFunction with
    the offending side ("left" is f, applied first)."""
    if not is_func(f, A, B):
        raise NotAFunction("left")
    if not is_func(g, B, C):
        raise NotAFunction("right")
    return compose(g, f, A, B, C)


def domain(R: HFSet, A: HFSet, B: HFSet) -> HFSet:
    """{ x in A | exists y in B, (x,y) in R }."""
    if not is_relation(R, A, B):
        raise NotARelation("domain: not a relation between the carriers")
    return kernel.from_elements(x for x, _ in _pairs(R))


def range_(R: HFSet, A: HFSet, B: HFSet) -> HFSet:
    """{ y in B | exists x in Dom(R), (x,y) in R }."""
    if not is_relation(R, A, B):
        raise NotARelation("range: not a relation between the carriers")
    return kernel.from_elements(y for _, y in _pairs(R))


def image(R: HFSet, X: HFSet, A: HFSet, B: HFSet) -> HFSet:
    """{ y in B | exists x in X, (x,y) in R } for X subset of A."""
    if not is_relation(R, A, B):
        raise NotARelation("image: not a relation between the carriers")
    if not kernel.subset(X, A):
        raise NotASubset("image: X is not a subset of the source carrier")
    return kernel.from_elements(y for x, y in _pairs(R) if mem(x, X))


def is_injective(f: HFSet, A: HFSet, B: HFSet) -> bool:
    """Distinct points of A map to distinct points of B."""
    if not is_func(f, A, B):
        raise NotAFunction("argument")
    seen = set()
    for _, y in _pairs(f):
        if y.intern_id in seen:
            return False
        seen.add(y.intern_id)
    return True


def is_surjective(f: HFSet, A: HFSet, B: HFSet) -> bool:
    """Every point of B is hit."""
    if not is_func(f, A, B):
        raise NotAFunction("argument")
    return len({y.intern_id for _, y in _pairs(f)}) == kernel.card(B)


def is_bijective(f: HFSet, A: HFSet, B: HFSet) -> bool:
    """Injective and surjective."""
    return is_injective(f, A, B) and is_surjective(f, A, B)
