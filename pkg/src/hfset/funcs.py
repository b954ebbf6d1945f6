"""Function evaluation, lambda abstraction, and exponential objects.

A "host map" here is any deterministic Python callable from sets to sets;
lambda abstraction reifies such a callable as an explicit set of pairs over
given carriers.
"""

from __future__ import annotations

from itertools import product as _cartesian
from typing import Callable, Optional, Tuple

from . import kernel, relcalc
from .errors import LimitExceeded, NotAFunction, NotAPFunc, NotInDomain
from .kernel import HFSet, kpair, mem, unpair

HostMap = Callable[[HFSet], HFSet]

_FMAPS: dict = {}   # function set id -> {arg id: value}


def _fmap(f: HFSet) -> dict:
    m = _FMAPS.get(f.intern_id)
    if m is None:
        m = {}
        for z in f:
            p = unpair(z)
            if p is not None:
                m[p[0].intern_id] = p[1]
        _FMAPS[f.intern_id] = m
    return m


def fapply(f: HFSet, x: HFSet, A: HFSet, B: HFSet) -> HFSet:
    """The unique y with (x,y) in f.

    Functionality makes the witness unique, so a deterministic search
    replaces the choice principle with no semantic divergence.
    """
    if not relcalc.is_pfunc(f, A, B):
        raise NotAPFunc("fapply: first argument is not a partial function")
    y = _fmap(f).get(x.intern_id)
    if y is None:
        raise NotInDomain("fapply: argument outside the domain")
    return y


def lambda_(A: HFSet, B: HFSet, e: HostMap) -> HFSet:
    """{ (x, e(x)) | x in A, e(x) in B }.

    Points of A whose image falls outside B are silently absent, so the
    result is always a partial function from A to B and is total exactly
    when e maps A into B.
    """
    out = []
    for x in A:
        y = e(x)
        if mem(y, B):
            out.append(kpair(x, y))
    return kernel.from_elements(out)


def funs(A: HFSet, B: HFSet, limit: Optional[int] = None) -> HFSet:
    """The exponential object B^A as an explicit set of function sets.

    Enumerates assignments directly rather than filtering the powerset of
    A x B, which has the same extension at exponentially lower cost.
    """
    cap = kernel.DEFAULT_MAX_CARD if limit is None else limit
    na, nb = kernel.card(A), kernel.card(B)
    size = nb ** na
    if size > cap:
        raise LimitExceeded("function space", size, cap)
    xs = A.children
    members = []
    for choice in _cartesian(B.children, repeat=na):
        members.append(kernel.from_elements(
            kpair(x, y) for x, y in zip(xs, choice)))
    return kernel.from_elements(members)


def func_ext(f: HFSet, g: HFSet, A: HFSet, B: HFSet
             ) -> Tuple[bool, Optional[HFSet]]:
    """Pointwise equality of two total functions on A.

    Returns (True, None) when they agree everywhere, else (False, x) for
    the first point x of A (in canonical order) where they differ.
    """
    if not relcalc.is_func(f, A, B):
        raise NotAFunction("left")
    if not relcalc.is_func(g, A, B):
        raise NotAFunction("right")
    if f is g:
        return True, None
    fm, gm = _fmap(f), _fmap(g)
    for x in A:
        if fm[x.intern_id] is not gm[x.intern_id]:
            return False, x
    return True, None
