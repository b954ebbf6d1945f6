"""Relational calculus: operators, deciders, algebraic laws."""

import random

import pytest

from hfset import kernel
from hfset.errors import NotAFunction, NotARelation, NotASubset
from hfset.kernel import empty, from_elements, kpair, mem, singleton
from hfset.relcalc import (
    compose, converse, domain, fcompose, identity, image, is_bijective,
    is_func, is_injective, is_pfunc, is_relation, is_surjective, range_,
)

from conftest import all_functions, all_relations, carrier, random_hfset,\
    random_injection

E = empty()
S1 = singleton(E)
B = from_elements([E, S1])   # the two-point carrier
BOT, TOP = E, S1


def rel(*pairs):
    return from_elements(kpair(a, b) for a, b in pairs)


# ---------------------------------------------------------------------------
# identity

def test_identity_examples():
    assert identity(E) is E
    assert identity(B) is rel((BOT, BOT), (TOP, TOP))


def test_identity_is_total_function():
    for n in range(5):
        A = carrier(n)
        assert is_func(identity(A), A, A)
        assert is_bijective(identity(A), A, A) or n == 0
    assert is_bijective(identity(carrier(0)), carrier(0), carrier(0))


# ---------------------------------------------------------------------------
# converse

def test_converse_examples():
    assert converse(rel((BOT, TOP)), B, B) is rel((TOP, BOT))
    A = carrier(3)
    assert converse(identity(A), A, A) is identity(A)


def test_converse_involution(rng):
    A, C = carrier(3), carrier(4)
    for _ in range(100):
        R = random_relation(rng, A, C)
        assert converse(converse(R, A, C), C, A) is R


def test_converse_requires_relation():
    with pytest.raises(NotARelation):
        converse(singleton(E), B, B)  # {} is not a pair


# ---------------------------------------------------------------------------
# composition

def test_compose_example():
    R = rel((BOT, TOP))
    S = rel((TOP, BOT))
    assert compose(S, R, B, B, B) is rel((BOT, BOT))


def test_compose_identity_neutral(rng):
    A, Bc = carrier(3), carrier(2)
    for _ in range(50):
        R = random_relation(rng, A, Bc)
        assert compose(identity(Bc), R, A, Bc, Bc) is R
        assert compose(R, identity(A), A, A, Bc) is R


def test_compose_on_garbage_is_defined():
    junk = from_elements([E, S1, B])  # not a relation at all
    out = compose(junk, junk, B, B, B)
    assert is_relation(out, B, B)  # still a subset of A x C
    assert out is E


def test_compose_ignores_pairs_outside_carriers():
    R = rel((BOT, carrier(5)))  # second component outside B
    assert compose(rel((carrier(5), TOP)), R, B, B, B) is E


def test_fcompose():
    idB = identity(B)
    assert fcompose(idB, idB, B, B, B) is idB
    neg = rel((BOT, TOP), (TOP, BOT))
    assert fcompose(neg, neg, B, B, B) is idB
    with pytest.raises(NotAFunction) as exc:
        fcompose(idB, rel((BOT, TOP)), B, B, B)  # partial left argument
    assert exc.value.side == "left"
    with pytest.raises(NotAFunction) as exc:
        fcompose(rel((BOT, TOP)), idB, B, B, B)
    assert exc.value.side == "right"


def test_fcompose_of_funcs_is_func(rng):
    A, Bc, C = carrier(3), carrier(4), carrier(3)
    for f in all_functions(A, Bc)[:20]:
        for g in all_functions(Bc, C)[:10]:
            assert is_func(fcompose(g, f, A, Bc, C), A, C)


# ---------------------------------------------------------------------------
# domain / range / image

def test_range_of_identity():
    for n in range(5):
        A = carrier(n)
        assert range_(identity(A), A, A) is A


def test_image_empty():
    A = carrier(3)
    R = rel((carrier(0), carrier(1)))
    assert image(R, E, A, A) is E


def test_domain_range_image_builders(rng):
    A, Bc = carrier(4), carrier(3)
    for _ in range(100):
        R = random_relation(rng, A, Bc)
        dom_expected = from_elements(
            a for a in A if any(mem(kpair(a, b), R) for b in Bc))
        rng_expected = from_elements(
            b for b in Bc if any(mem(kpair(a, b), R) for a in A))
        assert domain(R, A, Bc) is dom_expected
        assert range_(R, A, Bc) is rng_expected
        assert domain(R, A, Bc) is range_(converse(R, A, Bc), Bc, A)
        assert range_(R, A, Bc) is image(R, A, A, Bc)


def test_image_requires_subset():
    A = carrier(2)
    with pytest.raises(NotASubset):
        image(identity(A), carrier(3), A, A)


def test_image_of_converse_image_bijective_exhaustive():
    # f^-1[f[X]] = X for bijections, all X, |A| <= 5
    for n in range(6):
        A = carrier(n)
        perm = list(A.children)
        random.Random(n).shuffle(perm)
        f = from_elements(kpair(a, b) for a, b in zip(A.children, perm))
        assert is_bijective(f, A, A)
        fi = converse(f, A, A)
        for X in kernel.pow(A):
            assert image(fi, image(f, X, A, A), A, A) is X


def test_image_fusion(rng):
    A, Bc, C = carrier(3), carrier(3), carrier(3)
    for _ in range(60):
        R = random_relation(rng, A, Bc)
        S = random_relation(rng, Bc, C)
        for X in (E, singleton(carrier(0)), A):
            assert image(compose(S, R, A, Bc, C), X, A, C) is \
                image(S, image(R, X, A, Bc), Bc, C)


# ---------------------------------------------------------------------------
# deciders

def test_decider_examples():
    A = carrier(3)
    assert is_pfunc(identity(A), A, A)
    assert not is_func(rel((BOT, TOP)), B, B)   # TOP unmapped
    assert is_pfunc(rel((BOT, TOP)), B, B)


def test_decider_monotonicity(rng):
    A, Bc = carrier(3), carrier(3)
    for _ in range(200):
        R = random_relation(rng, A, Bc)
        if is_func(R, A, Bc):
            assert is_pfunc(R, A, Bc)
        if is_pfunc(R, A, Bc):
            assert is_relation(R, A, Bc)


def test_decider_on_non_relations(rng):
    for _ in range(100):
        x = random_hfset(rng, 3)
        A = carrier(3)
        if not is_relation(x, A, A):
            assert not is_pfunc(x, A, A)
            assert not is_func(x, A, A)


def test_injective_surjective():
    A = carrier(3)
    assert is_bijective(identity(A), A, A)
    const = from_elements(kpair(a, carrier(0)) for a in A)
    assert is_func(const, A, A)
    assert not is_injective(const, A, A)
    with pytest.raises(NotAFunction):
        is_injective(rel((BOT, TOP)), B, B)  # not total


def test_injective_total_same_size_is_surjective():
    # pigeonhole at |A| = |B| <= 4
    for n in range(5):
        A = carrier(n)
        for f in all_functions(A, A):
            if is_injective(f, A, A):
                assert is_surjective(f, A, A)


def test_empty_carriers_are_legal():
    assert is_relation(E, E, E)
    assert is_func(E, E, carrier(3))     # empty function is total on {}
    assert not is_func(E, carrier(1), E)
    assert domain(E, E, E) is E
    assert compose(E, E, E, E, E) is E
    assert converse(E, E, carrier(2)) is E


# ---------------------------------------------------------------------------
# algebra on exhaustive small spaces

def random_relation(rng, A, Bc):
    pairs = [kpair(a, b) for a in A for b in Bc]
    return from_elements(p for p in pairs if rng.random() < 0.4)


def test_associativity_exhaustive_size_2():
    A = carrier(2)
    rels = all_relations(A, A)
    for R in rels:
        for S in rels:
            for T in rels:
                lhs = compose(T, compose(S, R, A, A, A), A, A, A)
                rhs = compose(compose(T, S, A, A, A), R, A, A, A)
                assert lhs is rhs


def test_associativity_random_size_6(rng):
    A, Bc, C, D = carrier(6), carrier(5), carrier(4), carrier(6)
    for _ in range(100):
        R = random_relation(rng, A, Bc)
        S = random_relation(rng, Bc, C)
        T = random_relation(rng, C, D)
        lhs = compose(T, compose(S, R, A, Bc, C), A, C, D)
        rhs = compose(compose(T, S, Bc, C, D), R, A, Bc, D)
        assert lhs is rhs


def test_converse_of_composition(rng):
    A, Bc, C = carrier(3), carrier(3), carrier(3)
    for _ in range(100):
        R = random_relation(rng, A, Bc)
        S = random_relation(rng, Bc, C)
        lhs = converse(compose(S, R, A, Bc, C), A, C)
        rhs = compose(converse(R, A, Bc), converse(S, Bc, C), C, Bc, A)
        assert lhs is rhs
