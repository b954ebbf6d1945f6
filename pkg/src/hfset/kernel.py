"""Canonical hereditarily finite sets.

Every set is interned: construction sorts and deduplicates the children, so
two sets with the same members are the *same object* and extensional
equality is pointer equality.  The total order used for sorting is the
recursive lexicographic order on the (sorted) child sequences, with shorter
prefixes first.

Von Neumann numerals (0 = {}, n+1 = n union {n}) get a compressed
representation: the node records the numeral value and its child sequence
(the numerals 0..n-1) is materialized lazily.  Without this, the child
arrays of a numeral chain up to N occupy Theta(N^2) memory and arithmetic
at the scales the test suite exercises is hopeless.  The compression is
invisible to callers: any construction whose children happen to be the
numerals 0..n-1 is routed to the same interned node.
"""

from __future__ import annotations

import threading
from functools import cmp_to_key
from itertools import islice
from typing import Callable, Iterable, Iterator, Optional

from .errors import LimitExceeded, ParseError

LT, EQ, GT = -1, 0, 1

#: Default ceiling for enumerated results (powerset, product, ...).
DEFAULT_MAX_CARD = 1 << 20


class HFSet:
    """A canonical hereditarily finite set.

    Instances are only created by the interning machinery in this module;
    identity (`is`, `==`) coincides with extensional equality.
    """

    __slots__ = ("_id", "_card", "_numeral", "_children", "_member_ids")

    def __init__(self, ident: int, card: int, numeral: Optional[int],
                 children: Optional[tuple]):
        self._id = ident
        self._card = card
        self._numeral = numeral
        self._children = children
        self._member_ids = None

    @property
    def intern_id(self) -> int:
        """Opaque interning handle; equal ids mean the same set."""
        return self._id

    @property
    def children(self) -> tuple:
        """The members, strictly increasing under `set_compare`."""
        if self._children is None:
            # numeral node: members are the numerals below it
            self._children = tuple(_NUMERALS[: self._numeral])
        return self._children

    def _iter_children(self) -> Iterator["HFSet"]:
        if self._children is not None:
            return iter(self._children)
        return islice(iter(_NUMERALS), self._numeral)

    def _ids(self) -> frozenset:
        ids = self._member_ids
        if ids is None:
            ids = self._member_ids = frozenset(c._id for c in self._iter_children())
        return ids

    def __len__(self) -> int:
        return self._card

    def __iter__(self) -> Iterator["HFSet"]:
        return self._iter_children()

    def __contains__(self, x) -> bool:
        return mem(x, self)

    def __bool__(self) -> bool:
        return self._card != 0

    # Identity-based __eq__/__hash__ (object defaults) are exactly right for
    # interned values; only the order relations need definitions.
    def __lt__(self, other):
        return set_compare(self, other) == LT

    def __le__(self, other):
        return set_compare(self, other) != GT

    def __gt__(self, other):
        return set_compare(self, other) == GT

    def __ge__(self, other):
        return set_compare(self, other) != LT

    def __repr__(self) -> str:
        if self._numeral is not None and self._numeral > 4:
            return f"<HFSet numeral {self._numeral}>"
        if self._card <= 10 and rank_below(self, 6):
            text = serialize(self)
            if len(text) <= 120:
                return f"<HFSet {text}>"
        return f"<HFSet id={self._id} card={self._card}>"


# ---------------------------------------------------------------------------
# interning

_LOCK = threading.RLock()
_TABLE: dict = {}            # child-id tuple -> node, non-numeral sets only
_NUMERALS: list = []         # numeral n at index n
_CMP: dict = {}              # (id, id) -> ordering
_PAIRS: dict = {}            # (id, id) -> kpair node
_PAIR_PARTS: dict = {}       # kpair node id -> (x, y)
_NEXT_ID = 0


def _new_node(card, numeral, children) -> HFSet:
    global _NEXT_ID
    node = HFSet(_NEXT_ID, card, numeral, children)
    _NEXT_ID += 1
    return node


def _numeral_node(k: int) -> HFSet:
    """The von Neumann numeral k, building the chain below it if needed."""
    if k < len(_NUMERALS):
        return _NUMERALS[k]
    with _LOCK:
        while len(_NUMERALS) <= k:
            _NUMERALS.append(_new_node(len(_NUMERALS), len(_NUMERALS), None))
    return _NUMERALS[k]


def _mk_sorted(children: tuple) -> HFSet:
    """Intern a strictly sorted, duplicate-free child tuple."""
    if all(c._numeral == i for i, c in enumerate(children)):
        return _numeral_node(len(children))
    key = tuple(c._id for c in children)
    node = _TABLE.get(key)
    if node is None:
        with _LOCK:
            node = _TABLE.get(key)
            if node is None:
                node = _new_node(len(children), None, children)
                _TABLE[key] = node
    return node


def numeral_value(x: HFSet) -> Optional[int]:
    """n when x is the von Neumann numeral n, else None.  O(1)."""
    return x._numeral


def intern_stats() -> dict:
    """Rough size of the interning tables (diagnostics only)."""
    return {"sets": len(_TABLE), "numerals": len(_NUMERALS),
            "compare_cache": len(_CMP), "pair_cache": len(_PAIRS)}


# ---------------------------------------------------------------------------
# order and membership

def set_compare(x: HFSet, y: HFSet) -> int:
    """Total order: LT, EQ or GT; EQ exactly when x and y are the same set.

    Lexicographic on the sorted child sequences, shorter prefix first.
    """
    if x is y:
        return EQ
    a, b = x._numeral, y._numeral
    if a is not None and b is not None:
        return LT if a < b else GT
    key = (x._id, y._id)
    cached = _CMP.get(key)
    if cached is not None:
        return cached
    result = None
    for cx, cy in zip(x._iter_children(), y._iter_children()):
        if cx is not cy:
            result = set_compare(cx, cy)
            break
    if result is None:
        # one child sequence is a prefix of the other
        result = LT if x._card < y._card else GT
    _CMP[key] = result
    _CMP[(y._id, x._id)] = -result
    return result


_SORT_KEY = cmp_to_key(set_compare)


def mem(x: HFSet, X: HFSet) -> bool:
    """Membership x in X."""
    k = X._numeral
    if k is not None:
        v = x._numeral
        return v is not None and v < k
    return x._id in X._ids()


def subset(x: HFSet, y: HFSet) -> bool:
    """x subset of y (every member of x is a member of y)."""
    a, b = x._numeral, y._numeral
    if a is not None and b is not None:
        return a <= b
    return all(mem(c, y) for c in x._iter_children())


def card(x: HFSet) -> int:
    """Number of members."""
    return x._card


def rank_below(x: HFSet, bound: int) -> bool:
    """True when the von Neumann rank of x is strictly below `bound`."""
    if x._numeral is not None:
        return x._numeral < bound
    if bound <= 0:
        return False
    return all(rank_below(c, bound - 1) for c in x._iter_children())


# ---------------------------------------------------------------------------
# constructors

def empty() -> HFSet:
    """The empty set."""
    return _numeral_node(0)


def from_elements(xs: Iterable[HFSet]) -> HFSet:
    """The set whose members are exactly the distinct elements of xs."""
    elems = sorted(xs, key=_SORT_KEY)
    out = []
    prev = None
    for e in elems:
        if e is not prev:
            out.append(e)
            prev = e
    return _mk_sorted(tuple(out))


def singleton(x: HFSet) -> HFSet:
    """{x}."""
    return _mk_sorted((x,))


def insert(x: HFSet, X: HFSet) -> HFSet:
    """X union {x}."""
    if x is X and X._numeral is not None:
        # n union {n} is the numeral n+1; this keeps successor chains O(1)
        return _numeral_node(X._numeral + 1)
    if mem(x, X):
        return X
    cs = X.children
    lo, hi = 0, len(cs)
    while lo < hi:
        mid = (lo + hi) // 2
        if set_compare(cs[mid], x) == LT:
            lo = mid + 1
        else:
            hi = mid
    return _mk_sorted(cs[:lo] + (x,) + cs[lo:])


def bin_union(x: HFSet, y: HFSet) -> HFSet:
    """x union y."""
    if x is y:
        return x
    a, b = x._numeral, y._numeral
    if a is not None and b is not None:
        return x if a >= b else y
    if x._card == 0:
        return y
    if y._card == 0:
        return x
    if y._card == 1:
        return insert(y.children[0], x)
    if x._card == 1:
        return insert(x.children[0], y)
    out = []
    it_x, it_y = x._iter_children(), y._iter_children()
    cx, cy = next(it_x, None), next(it_y, None)
    while cx is not None and cy is not None:
        c = set_compare(cx, cy)
        if c == LT:
            out.append(cx)
            cx = next(it_x, None)
        elif c == GT:
            out.append(cy)
            cy = next(it_y, None)
        else:
            out.append(cx)
            cx, cy = next(it_x, None), next(it_y, None)
    while cx is not None:
        out.append(cx)
        cx = next(it_x, None)
    while cy is not None:
        out.append(cy)
        cy = next(it_y, None)
    return _mk_sorted(tuple(out))


def bin_inter(x: HFSet, y: HFSet) -> HFSet:
    """x intersect y."""
    if x is y:
        return x
    a, b = x._numeral, y._numeral
    if a is not None and b is not None:
        return x if a <= b else y
    return _mk_sorted(tuple(c for c in x._iter_children() if mem(c, y)))


def diff(x: HFSet, y: HFSet) -> HFSet:
    """x minus y."""
    if x is y:
        return empty()
    a, b = x._numeral, y._numeral
    if a is not None and b is not None:
        if a <= b:
            return empty()
        return _mk_sorted(tuple(_NUMERALS[b:a]))
    return _mk_sorted(tuple(c for c in x._iter_children() if not mem(c, y)))


def union_all(X: HFSet) -> HFSet:
    """Big union of the members of X."""
    acc = empty()
    for c in X._iter_children():
        acc = bin_union(acc, c)
    return acc


def inter_all(X: HFSet) -> HFSet:
    """Big intersection of the members of X; empty X yields the empty set
    so the operator is total."""
    it = X._iter_children()
    acc = next(it, None)
    if acc is None:
        return empty()
    for c in it:
        acc = bin_inter(acc, c)
    return acc


def separation(X: HFSet, pred: Callable[[HFSet], bool]) -> HFSet:
    """{ x in X | pred(x) }."""
    return _mk_sorted(tuple(c for c in X._iter_children() if pred(c)))


def pow(X: HFSet, limit: Optional[int] = None) -> HFSet:
    """Powerset of X; refuses to enumerate more than `limit` subsets."""
    cap = DEFAULT_MAX_CARD if limit is None else limit
    n = X._card
    if n > 60 or (1 << n) > cap:
        raise LimitExceeded("powerset", f"2^{n}", cap)
    cs = X.children
    subsets = []
    for mask in range(1 << n):
        picked = tuple(cs[i] for i in range(n) if mask >> i & 1)
        subsets.append(_mk_sorted(picked))
    return from_elements(subsets)


# ---------------------------------------------------------------------------
# Kuratowski pairs

def kpair(x: HFSet, y: HFSet) -> HFSet:
    """The ordered pair {{x},{x,y}}."""
    key = (x._id, y._id)
    node = _PAIRS.get(key)
    if node is None:
        node = from_elements((singleton(x), from_elements((x, y))))
        _PAIRS[key] = node
        _PAIR_PARTS.setdefault(node._id, (x, y))
    return node


def unpair(z: HFSet):
    """(x, y) when z is the pair {{x},{x,y}}, else None."""
    got = _PAIR_PARTS.get(z._id)
    if got is not None:
        return got
    cs = z.children
    if len(cs) == 1:
        c = cs[0]
        if c._card == 1:
            x = c.children[0]
            got = (x, x)
    elif len(cs) == 2:
        # {x} and {x,y} can land in either slot of the canonical order
        c0, c1 = cs
        if c0._card == 1 and c1._card == 2:
            sing, dub = c0, c1
        elif c0._card == 2 and c1._card == 1:
            sing, dub = c1, c0
        else:
            sing = dub = None
        if sing is not None:
            x = sing.children[0]
            u, v = dub.children
            if u is x:
                got = (x, v)
            elif v is x:
                got = (x, u)
    if got is not None:
        _PAIR_PARTS[z._id] = got
        _PAIRS.setdefault((got[0]._id, got[1]._id), z)
    return got


def is_kpair(z: HFSet) -> bool:
    """True iff z = kpair(pi1(z), pi2(z))."""
    return unpair(z) is not None


def pi1(x: HFSet) -> HFSet:
    """First projection: union of the intersection of x.  Total; only
    meaningful when x is a pair."""
    return union_all(inter_all(x))


def pi2(x: HFSet) -> HFSet:
    """Second projection, by cases on union(x) minus inter(x).  Total."""
    d = diff(union_all(x), inter_all(x))
    if d._card == 0:
        return pi1(x)
    return union_all(d)


def prod(A: HFSet, B: HFSet, limit: Optional[int] = None) -> HFSet:
    """Cartesian product as a set of Kuratowski pairs."""
    cap = DEFAULT_MAX_CARD if limit is None else limit
    size = A._card * B._card
    if size > cap:
        raise LimitExceeded("product", size, cap)
    return from_elements(kpair(a, b) for a in A._iter_children()
                         for b in B._iter_children())


# ---------------------------------------------------------------------------
# foundation checker

def check_foundation(x: HFSet) -> bool:
    """Walk the structure and verify there is no membership cycle.

    Holds by construction (children are interned before parents), but the
    checker does not rely on that: it looks for a back edge in the actual
    membership graph.
    """
    WHITE, GREY, BLACK = 0, 1, 2
    color = {}
    stack = [(x, None)]
    while stack:
        node, it = stack.pop()
        if it is None:
            state = color.get(node._id, WHITE)
            if state == GREY:
                return False
            if state == BLACK:
                continue
            color[node._id] = GREY
            it = node._iter_children()
        descended = False
        for child in it:
            state = color.get(child._id, WHITE)
            if state == GREY:
                return False
            if state == WHITE:
                stack.append((node, it))
                stack.append((child, None))
                descended = True
                break
        if not descended:
            color[node._id] = BLACK
    return True


# ---------------------------------------------------------------------------
# text form

def serialize(x: HFSet) -> str:
    """Braces-and-commas text; children in set_compare order, no spaces."""
    out = []
    stack = [(False, x)]
    while stack:
        is_text, item = stack.pop()
        if is_text:
            out.append(item)
            continue
        out.append("{")
        stack.append((True, "}"))
        kids = item.children
        for i in range(len(kids) - 1, -1, -1):
            stack.append((False, kids[i]))
            if i:
                stack.append((True, ","))
    return "".join(out)


def parse_set(text: str) -> HFSet:
    """Parse the `{...}` literal grammar; inverse of serialize up to
    canonicalization (duplicates in the input collapse).  Whitespace is
    ignored.  Raises ParseError with a 1-based column on bad input."""
    n = len(text)
    pos = 0

    def skip_ws(p):
        while p < n and text[p] in " \t\r\n":
            p += 1
        return p

    def fail(msg, at, expected=()):
        raise ParseError(msg, 1, at + 1, expected)

    # iterative shift-reduce so hostile nesting cannot overflow the stack
    stack = []      # child lists of the currently open sets
    done = None     # most recently completed set
    while True:
        pos = skip_ws(pos)
        if done is None:
            if pos >= n:
                fail("unexpected end of input, expected '{'", pos, ("{",))
            if text[pos] != "{":
                fail(f"expected '{{', found {text[pos]!r}", pos, ("{",))
            stack.append([])
            pos = skip_ws(pos + 1)
            if pos < n and text[pos] == "}":
                pos += 1
                done = from_elements(stack.pop())
            continue
        if not stack:
            if pos != n:
                fail("trailing input after set", pos)
            return done
        stack[-1].append(done)
        done = None
        if pos >= n:
            fail("unexpected end of input, expected ',' or '}'", pos, (",", "}"))
        ch = text[pos]
        if ch == ",":
            pos += 1
        elif ch == "}":
            pos += 1
            done = from_elements(stack.pop())
        else:
            fail(f"expected ',' or '}}', found {ch!r}", pos, (",", "}"))
