"""Kernel tests: canonical form, order, pairs, text form, foundation."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hfset import kernel
from hfset.errors import LimitExceeded, ParseError
from hfset.kernel import (
    EQ, GT, LT, bin_inter, bin_union, check_foundation, diff, empty,
    from_elements, insert, inter_all, is_kpair, kpair, mem, parse_set, pi1,
    pi2, pow, prod, separation, serialize, set_compare, singleton, subset,
    union_all, unpair,
)

from conftest import carrier, hf_sets, random_hfset


E = empty()
S1 = singleton(E)          # {{}}
B = from_elements([E, S1])  # {{},{{}}}


def ref_compare(x, y):
    """Reference implementation of the order: plain recursion on the child
    tuples, no caches, no numeral shortcuts."""
    if x is y:
        return EQ
    for cx, cy in zip(x.children, y.children):
        if cx is not cy:
            return ref_compare(cx, cy)
    return LT if len(x.children) < len(y.children) else GT


# ---------------------------------------------------------------------------
# construction and membership

def test_empty_basics():
    assert serialize(E) == "{}"
    assert not mem(E, E)
    assert len(E) == 0


def test_subset_of_anything_for_empty(rng):
    for _ in range(50):
        X = random_hfset(rng, 4)
        assert subset(E, X)


def test_from_elements_dedups():
    assert from_elements([E, E, S1]) is B
    assert from_elements([]) is E
    assert from_elements([S1, E]) is B  # order of the input is irrelevant


def test_mem_examples():
    assert mem(E, S1)
    assert not mem(S1, S1)


def test_insert():
    assert insert(E, E) is S1
    assert insert(E, B) is B
    assert insert(B, B) is carrier(3)  # n u {n} on a numeral


def test_bin_ops_examples():
    assert bin_union(singleton(E), singleton(S1)) is B
    assert diff(B, singleton(E)) is singleton(S1)
    assert bin_inter(B, B) is B


def test_bin_ops_random_against_python_sets(rng):
    for _ in range(200):
        xs = [random_hfset(rng, 3) for _ in range(rng.randint(0, 5))]
        ys = [random_hfset(rng, 3) for _ in range(rng.randint(0, 5))]
        X, Y = from_elements(xs), from_elements(ys)
        sx, sy = set(X.children), set(Y.children)
        assert set(bin_union(X, Y).children) == sx | sy
        assert set(bin_inter(X, Y).children) == sx & sy
        assert set(diff(X, Y).children) == sx - sy


def test_union_inter_all():
    assert union_all(from_elements([singleton(E), singleton(S1)])) is B
    assert inter_all(E) is E  # totality convention
    assert inter_all(from_elements([B, singleton(E)])) is singleton(E)


def test_pow_examples():
    assert pow(E) is singleton(E)
    assert pow(singleton(E)) is B
    for n in range(11):
        assert len(pow(carrier(n))) == 2 ** n


def test_pow_limit():
    with pytest.raises(LimitExceeded):
        pow(carrier(8), limit=100)


def test_mem_pow_iff_subset(rng):
    for _ in range(100):
        X = random_hfset(rng, 3)
        x = random_hfset(rng, 3)
        assert mem(x, pow(X)) == subset(x, X)


def test_separation():
    X = from_elements([E, S1, B])
    assert separation(X, lambda _: True) is X
    assert separation(X, lambda _: False) is E
    assert separation(X, lambda z: len(z) == 0) is singleton(E)


# ---------------------------------------------------------------------------
# order

def test_set_compare_examples():
    assert set_compare(E, S1) == LT
    assert set_compare(S1, S1) == EQ
    assert set_compare(B, S1) == GT  # {{},{{}}} vs {{}}: first children differ


def test_set_compare_matches_reference(rng):
    sets = [random_hfset(rng, 4) for _ in range(60)] + [carrier(k) for k in range(8)]
    for x in sets:
        for y in sets:
            assert set_compare(x, y) == ref_compare(x, y)


def test_set_compare_total_order(rng):
    for _ in range(1000):
        x, y, z = (random_hfset(rng, 4) for _ in range(3))
        cxy, cyx = set_compare(x, y), set_compare(y, x)
        assert cxy == -cyx
        assert (cxy == EQ) == (x is y)
        if set_compare(x, y) != GT and set_compare(y, z) != GT:
            assert set_compare(x, z) != GT  # transitivity of <=


def test_sorting_consistent_with_children(rng):
    for _ in range(50):
        X = random_hfset(rng, 4)
        cs = X.children
        for a, b in zip(cs, cs[1:]):
            assert set_compare(a, b) == LT


# ---------------------------------------------------------------------------
# pairs and products

def test_kpair_collapse():
    assert kpair(E, E) is singleton(singleton(E))  # {{x}} when x = y


def test_kpair_expansion():
    # {{x},{x,y}} spelled out by hand
    expected = from_elements([singleton(E), from_elements([E, S1])])
    assert kpair(E, S1) is expected


def test_pi_projections_on_pairs(rng):
    assert pi1(kpair(E, S1)) is E
    assert pi2(kpair(E, S1)) is S1
    a = random_hfset(rng, 3)
    assert pi2(kpair(a, a)) is a  # degenerate branch
    for _ in range(1000):
        x, y = random_hfset(rng, 4), random_hfset(rng, 4)
        p = kpair(x, y)
        assert pi1(p) is x
        assert pi2(p) is y


def test_is_kpair_against_definition(rng):
    assert is_kpair(kpair(E, S1))
    assert not is_kpair(E)
    assert not is_kpair(S1)
    for _ in range(300):
        z = random_hfset(rng, 4)
        assert is_kpair(z) == (kpair(pi1(z), pi2(z)) is z)


def test_unpair_matches_projections(rng):
    for _ in range(300):
        z = random_hfset(rng, 4)
        parts = unpair(z)
        if parts is not None:
            assert parts == (pi1(z), pi2(z))


def test_prod_examples():
    assert prod(singleton(E), singleton(E)) is singleton(kpair(E, E))
    for na in range(4):
        for nb in range(4):
            assert len(prod(carrier(na), carrier(nb))) == na * nb


def test_pair_mem_prod_exhaustive():
    A, B4 = carrier(3), from_elements([S1, B, carrier(3)])
    P = prod(A, B4)
    pool = list(A.children) + list(B4.children) + [carrier(4)]
    for a in pool:
        for b in pool:
            assert mem(kpair(a, b), P) == (mem(a, A) and mem(b, B4))


def test_pair_eta_on_products():
    A, B4 = carrier(4), carrier(3)
    for z in prod(A, B4):
        assert kpair(pi1(z), pi2(z)) is z


def test_prod_limit():
    with pytest.raises(LimitExceeded):
        prod(carrier(40), carrier(40), limit=100)


# ---------------------------------------------------------------------------
# serialization

def test_serialize_bool_carrier():
    assert serialize(B) == "{{},{{}}}"


def test_parse_dedups():
    assert parse_set("{{},{}}") is singleton(E)


def test_parse_whitespace():
    assert parse_set(" { { } , { { } } } ") is B


def test_round_trip_random(rng):
    for _ in range(1000):
        x = random_hfset(rng, 5)
        assert parse_set(serialize(x)) is x


@pytest.mark.parametrize("text,col", [
    ("{,}", 2),
    ("", 1),
    ("{", 2),
    ("{}}", 3),
    ("x", 1),
    ("{} {}", 4),
])
def test_parse_errors_positions(text, col):
    with pytest.raises(ParseError) as exc:
        parse_set(text)
    assert exc.value.column == col


def test_parse_deep_nesting_no_crash():
    deep = "{" * 5000  # unterminated and very deep: must error, not crash
    with pytest.raises(ParseError):
        parse_set(deep)
    ok = "{" * 2000 + "}" * 2000
    x = parse_set(ok)
    assert serialize(x) == ok


# ---------------------------------------------------------------------------
# structural invariants

def test_extensionality_via_double_subset(rng):
    for _ in range(200):
        x, y = random_hfset(rng, 4), random_hfset(rng, 4)
        if subset(x, y) and subset(y, x):
            assert x is y


def test_foundation(rng):
    for _ in range(200):
        x = random_hfset(rng, 5)
        assert not mem(x, x)
        assert check_foundation(x)


def test_canonical_idempotence(rng):
    for _ in range(200):
        x = random_hfset(rng, 4)
        assert from_elements(x.children) is x


@settings(max_examples=200, deadline=None)
@given(hf_sets, hf_sets)
def test_union_commutes(x, y):
    assert bin_union(x, y) is bin_union(y, x)


@settings(max_examples=200, deadline=None)
@given(hf_sets, hf_sets, hf_sets)
def test_union_associates(x, y, z):
    assert bin_union(bin_union(x, y), z) is bin_union(x, bin_union(y, z))


# ---------------------------------------------------------------------------
# numeral compression must be invisible

def test_numeral_detection_routes_to_same_node():
    n3 = carrier(3)
    rebuilt = from_elements([carrier(2), carrier(0), carrier(1)])
    assert rebuilt is n3
    assert kernel.numeral_value(rebuilt) == 3


def test_numeral_children_are_lower_numerals():
    n5 = carrier(5)
    assert [kernel.numeral_value(c) for c in n5.children] == [0, 1, 2, 3, 4]


def test_numeral_setops_match_generic_rebuild(rng):
    for _ in range(50):
        a, b = rng.randint(0, 12), rng.randint(0, 12)
        na, nb = carrier(a), carrier(b)
        assert bin_union(na, nb) is from_elements(
            list(na.children) + list(nb.children))
        assert bin_inter(na, nb) is from_elements(
            [c for c in na.children if mem(c, nb)])
        assert diff(na, nb) is from_elements(
            [c for c in na.children if not mem(c, nb)])


def test_mixed_numeral_and_generic_sets(rng):
    n4 = carrier(4)
    mixed = from_elements([n4, kpair(E, S1), E])
    assert mem(n4, mixed)
    assert mem(E, mixed)
    assert not mem(carrier(5), mixed)
    assert parse_set(serialize(mixed)) is mixed
