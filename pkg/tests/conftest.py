"""Shared test helpers: random set generators and small enumerations."""

import random

import pytest
from hypothesis import strategies as st

from hfset import kernel


def random_hfset(rng: random.Random, rank: int, width: int = 3):
    """A random canonical set of von Neumann rank at most `rank`."""
    if rank <= 0 or rng.random() < 0.25:
        return kernel.empty()
    n = rng.randint(0, width)
    return kernel.from_elements(
        random_hfset(rng, rank - 1, width) for _ in range(n))


@pytest.fixture
def rng():
    return random.Random(0xAB5E7)


# hypothesis strategy for small canonical sets
hf_sets = st.recursive(
    st.just(kernel.empty()),
    lambda kids: st.lists(kids, max_size=4).map(kernel.from_elements),
    max_leaves=12,
)


def carrier(n: int):
    """A canonical n-element carrier (the numeral n)."""
    return kernel._numeral_node(n)


def all_relations(A, B):
    """Every subset of A x B, as a list."""
    pairs = [kernel.kpair(a, b) for a in A for b in B]
    out = []
    for mask in range(1 << len(pairs)):
        out.append(kernel.from_elements(
            p for i, p in enumerate(pairs) if mask >> i & 1))
    return out


def all_functions(A, B):
    """Every total function A -> B, as a list."""
    from itertools import product
    xs = A.children
    return [
        kernel.from_elements(kernel.kpair(x, y) for x, y in zip(xs, choice))
        for choice in product(B.children, repeat=len(xs))
    ]


def random_injection(rng: random.Random, A, B):
    """A random injective total function A -> B; requires |A| <= |B|."""
    targets = rng.sample(list(B.children), kernel.card(A))
    return kernel.from_elements(
        kernel.kpair(a, b) for a, b in zip(A.children, targets))
