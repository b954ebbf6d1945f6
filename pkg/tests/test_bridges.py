"""Bridges: round trips, homomorphism transport, decode errors."""

from itertools import product

import pytest

from hfset import kernel
from hfset.bridges import (
    Left, Right, bool_decode, bool_encode, int_decode, int_encode,
    nat_decode, nat_encode, option_decode, sum_decode,
)
from hfset.canon import (
    FALSE, TRUE, band, bnot, bor, inl, inr, int_add, int_lt, int_mul,
    nat_add, nat_lt, nat_mul, opt_none, opt_some, sum_set,
)
from hfset.errors import BridgeError
from hfset.kernel import empty, kpair, singleton

from conftest import carrier


# ---------------------------------------------------------------------------
# booleans

def test_bool_round_trip():
    assert bool_encode(True) == TRUE
    assert bool_encode(False) == FALSE
    for b in (False, True):
        assert bool_decode(bool_encode(b)) == b


def test_bool_decode_raw_sets():
    assert bool_decode(empty()) is False
    assert bool_decode(singleton(empty())) is True
    with pytest.raises(BridgeError) as exc:
        bool_decode(carrier(2))
    assert exc.value.kind == BridgeError.NOT_BOOLEAN


def test_bool_homomorphism():
    for a, b in product((False, True), repeat=2):
        ea, eb = bool_encode(a), bool_encode(b)
        assert bool_decode(band(ea, eb)) == (a and b)
        assert bool_decode(bor(ea, eb)) == (a or b)
        assert bool_decode(bnot(ea)) == (not a)


def test_transport_distributivity():
    # prove distributivity natively, replay it through the bridge, and
    # compare with the direct exhaustive check on the set side
    for a, b, c in product((False, True), repeat=3):
        native = a and (b or c)
        ea, eb, ec = (bool_encode(v) for v in (a, b, c))
        via_sets = band(ea, bor(eb, ec))
        direct = bor(band(ea, eb), band(ea, ec))
        assert bool_decode(via_sets) == native
        assert via_sets == direct


# ---------------------------------------------------------------------------
# naturals

def test_nat_round_trip():
    for n in list(range(70)) + [512]:
        assert nat_decode(nat_encode(n, bound=512), bound=512) == n


def test_nat_decode_rejects_non_numerals():
    with pytest.raises(BridgeError) as exc:
        nat_decode(singleton(singleton(empty())))
    assert exc.value.kind == BridgeError.NOT_NUMERAL


def test_nat_decode_accepts_raw_sets():
    assert nat_decode(kernel.parse_set("{{},{{}}}")) == 2


def test_nat_bounds():
    with pytest.raises(BridgeError) as exc:
        nat_encode(5000)
    assert exc.value.kind == BridgeError.OVERFLOW
    big = nat_encode(5000, bound=10000)
    with pytest.raises(BridgeError) as exc:
        nat_decode(big)  # default bound 4096
    assert exc.value.kind == BridgeError.OVERFLOW
    assert nat_decode(big, bound=10000) == 5000


def test_nat_homomorphism(rng):
    for a in range(33):
        for b in range(33):
            ea, eb = nat_encode(a), nat_encode(b)
            assert nat_decode(nat_add(ea, eb)) == a + b
            assert nat_lt(ea, eb) == (a < b)
    for _ in range(1000):
        a, b = rng.randint(0, 512), rng.randint(0, 512)
        ea, eb = nat_encode(a, bound=512), nat_encode(b, bound=512)
        assert nat_decode(nat_add(ea, eb), bound=2048) == a + b


# ---------------------------------------------------------------------------
# integers

def test_int_encoding_shape():
    z = int_encode(-2)
    assert nat_decode(z.pos) == 0
    assert nat_decode(z.neg) == 2
    z = int_encode(3)
    assert nat_decode(z.pos) == 3
    assert nat_decode(z.neg) == 0


def test_int_round_trip():
    for k in range(-100, 101):
        assert int_decode(int_encode(k)) == k


def test_int_homomorphism(rng):
    for _ in range(1000):
        a, b = rng.randint(-60, 60), rng.randint(-60, 60)
        ea, eb = int_encode(a), int_encode(b)
        assert int_decode(int_mul(ea, eb), bound=4096) == a * b
        assert int_decode(int_add(ea, eb)) == a + b
        assert int_lt(ea, eb) == (a < b)


# ---------------------------------------------------------------------------
# sums and options

def test_sum_decode():
    A, B = carrier(3), carrier(4)
    a, b = carrier(1), carrier(2)
    assert sum_decode(inl(a, A, B), A, B) == Left(a)
    assert sum_decode(inr(b, A, B), A, B) == Right(b)


def test_sum_decode_raw_round_trip():
    for na in range(6):
        for nb in range(6):
            A, B = carrier(na), carrier(nb)
            for elem in sum_set(A, B):
                got = sum_decode(elem, A, B)
                if isinstance(got, Left):
                    assert elem is inl(got.payload, A, B).underlying
                else:
                    assert elem is inr(got.payload, A, B).underlying


def test_sum_decode_rejects_untagged():
    A = carrier(2)
    with pytest.raises(BridgeError) as exc:
        sum_decode(kpair(carrier(2), carrier(0)), A, A)
    assert exc.value.kind == BridgeError.NOT_TAGGED
    with pytest.raises(BridgeError):
        sum_decode(empty(), A, A)
    with pytest.raises(BridgeError):
        # well-tagged but payload outside the carrier
        sum_decode(kpair(empty(), carrier(5)), A, A)


def test_option_decode():
    A = carrier(3)
    assert option_decode(opt_none(A), A) is None
    a = carrier(2)
    assert option_decode(opt_some(a, A), A) is a
