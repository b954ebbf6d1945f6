"""Embeddings, isomorphisms, Cantor-Schroeder-Bernstein, and currying.

Existence statements are reified as witness-producing operations: an
isomorphism is a pair of explicit function sets whose composites are the
identities, and every witness can be re-validated from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import funcs, kernel, relcalc
from .errors import NotAFunction, NotAnEmbedding, NotInverse
from .kernel import HFSet, kpair, mem, unpair


@dataclass(frozen=True)
class IsoWitness:
    """A certified isomorphism src ~ dst."""
    forward: HFSet
    backward: HFSet
    src: HFSet
    dst: HFSet

    def validate(self) -> bool:
        """Re-check the defining invariants from scratch."""
        if not relcalc.is_func(self.forward, self.src, self.dst):
            return False
        if not relcalc.is_func(self.backward, self.dst, self.src):
            return False
        left = relcalc.fcompose(self.backward, self.forward,
                                self.src, self.dst, self.src)
        right = relcalc.fcompose(self.forward, self.backward,
                                 self.dst, self.src, self.dst)
        return (left is relcalc.identity(self.src)
                and right is relcalc.identity(self.dst))


def iso_symm(w: IsoWitness) -> IsoWitness:
    """Swap the two legs."""
    return IsoWitness(w.backward, w.forward, w.dst, w.src)


def iso_trans(w1: IsoWitness, w2: IsoWitness) -> IsoWitness:
    """Compose witnesses; w1.dst must be w2.src."""
    if w1.dst is not w2.src:
        raise NotAFunction("middle", "witnesses do not share a carrier")
    return IsoWitness(
        relcalc.fcompose(w2.forward, w1.forward, w1.src, w1.dst, w2.dst),
        relcalc.fcompose(w1.backward, w2.backward, w2.dst, w2.src, w1.src),
        w1.src, w2.dst)


def check_embedding(f: HFSet, A: HFSet, B: HFSet) -> bool:
    """Injective total function from A to B."""
    return relcalc.is_func(f, A, B) and relcalc.is_injective(f, A, B)


def two_sided_inverse(f: HFSet, g: HFSet, A: HFSet, B: HFSet) -> IsoWitness:
    """Certify A ~ B from g o f = id_A and f o g = id_B.

    Raises NotInverse with the failing side and a counterexample point when
    one of the composite identities does not hold.
    """
    if not relcalc.is_func(f, A, B):
        raise NotAFunction("left")
    if not relcalc.is_func(g, B, A):
        raise NotAFunction("right")
    ok, x = funcs.func_ext(relcalc.fcompose(g, f, A, B, A),
                           relcalc.identity(A), A, A)
    if not ok:
        raise NotInverse("left", x)
    ok, y = funcs.func_ext(relcalc.fcompose(f, g, B, A, B),
                           relcalc.identity(B), B, B)
    if not ok:
        raise NotInverse("right", y)
    return IsoWitness(f, g, A, B)


def stable_set(f: HFSet, g: HFSet, A: HFSet, B: HFSet) -> HFSet:
    """Union of the iterated stable sets X0 = A \\ g[B], X_{n+1} = g[f[Xn]].

    Terminates in at most |A| rounds on finite carriers.
    """
    level = kernel.diff(A, relcalc.image(g, B, B, A))
    acc = level
    while True:
        level = relcalc.image(g, relcalc.image(f, level, A, B), B, A)
        grown = kernel.bin_union(acc, level)
        if grown is acc:
            return acc
        acc = grown


def csb(f: HFSet, g: HFSet, A: HFSet, B: HFSet) -> IsoWitness:
    """Bijection A ~ B from embeddings f : A -> B and g : B -> A.

    On the stable set the bijection follows f; elsewhere it inverts g,
    which is possible because everything outside the stable set lies in
    the range of g.
    """
    if not check_embedding(f, A, B):
        raise NotAnEmbedding("left")
    if not check_embedding(g, B, A):
        raise NotAnEmbedding("right")
    stable = stable_set(f, g, A, B)
    g_pre = {}
    for z in g:
        b, a = unpair(z)
        g_pre[a.intern_id] = b
    pairs = []
    for x in A:
        if mem(x, stable):
            pairs.append(kpair(x, funcs.fapply(f, x, A, B)))
        else:
            pairs.append(kpair(x, g_pre[x.intern_id]))
    h = kernel.from_elements(pairs)
    return IsoWitness(h, relcalc.converse(h, A, B), A, B)


def find_bijection(A: HFSet, B: HFSet) -> Optional[IsoWitness]:
    """Pair the carriers off in canonical order; None when sizes differ."""
    if kernel.card(A) != kernel.card(B):
        return None
    forward = kernel.from_elements(
        kpair(a, b) for a, b in zip(A.children, B.children))
    backward = kernel.from_elements(
        kpair(b, a) for a, b in zip(A.children, B.children))
    return IsoWitness(forward, backward, A, B)


# ---------------------------------------------------------------------------
# currying

def curry(A: HFSet, B: HFSet, C: HFSet,
          limit: Optional[int] = None) -> HFSet:
    """The function set sending f in C^(AxB) to a |-> (b |-> f(a,b))."""
    AxB = kernel.prod(A, B, limit)
    src = funcs.funs(AxB, C, limit)
    inner = funcs.funs(B, C, limit)
    dst = funcs.funs(A, inner, limit)

    def curried(f):
        return funcs.lambda_(A, inner, lambda a: funcs.lambda_(
            B, C, lambda b: funcs.fapply(f, kpair(a, b), AxB, C)))

    result = funcs.lambda_(src, dst, curried)
    return result


def uncurry(A: HFSet, B: HFSet, C: HFSet,
            limit: Optional[int] = None) -> HFSet:
    """The function set sending f in (C^B)^A to (a,b) |-> f(a)(b)."""
    AxB = kernel.prod(A, B, limit)
    dst = funcs.funs(AxB, C, limit)
    inner = funcs.funs(B, C, limit)
    src = funcs.funs(A, inner, limit)

    def uncurried(f):
        def at_pair(p):
            a, b = unpair(p)
            return funcs.fapply(funcs.fapply(f, a, A, inner), b, B, C)
        return funcs.lambda_(AxB, C, at_pair)

    return funcs.lambda_(src, dst, uncurried)


@dataclass(frozen=True)
class CurryIsoReport:
    """Outcome of replaying the currying isomorphism on concrete carriers.

    left_inv is "uncurry after curry is the identity on C^(AxB)";
    right_inv is the other composite; points is |C^(AxB)|.
    """
    left_inv: bool
    right_inv: bool
    witness: Optional[IsoWitness]
    points: int
    left_counterexample: Optional[HFSet] = None
    right_counterexample: Optional[HFSet] = None


def verify_curry_iso(A: HFSet, B: HFSet, C: HFSet,
                     limit: Optional[int] = None) -> CurryIsoReport:
    """Check both composite identities pointwise and build the witness."""
    AxB = kernel.prod(A, B, limit)
    src = funcs.funs(AxB, C, limit)
    dst = funcs.funs(A, funcs.funs(B, C, limit), limit)
    cur = curry(A, B, C, limit)
    unc = uncurry(A, B, C, limit)
    left_ok, left_x = funcs.func_ext(
        relcalc.fcompose(unc, cur, src, dst, src),
        relcalc.identity(src), src, src)
    right_ok, right_x = funcs.func_ext(
        relcalc.fcompose(cur, unc, dst, src, dst),
        relcalc.identity(dst), dst, dst)
    witness = None
    if left_ok and right_ok:
        witness = two_sided_inverse(cur, unc, src, dst)
    return CurryIsoReport(left_ok, right_ok, witness, kernel.card(src),
                          left_x, right_x)
