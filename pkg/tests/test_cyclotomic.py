import cmath

import pytest
from hypothesis import given, settings, strategies as st

from vanishing.cyclotomic import CyclotomicInt, cyclotomic_poly, reduce_poly, totient


def test_small_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    assert totient(9) == 6


def test_sum_of_all_roots_is_zero():
    for e in (3, 4, 8, 9, 12):
        total = CyclotomicInt.from_int(e, 0)
        for k in range(e):
            total = total + CyclotomicInt.root(e, k)
        assert total.is_zero()


def test_root_powers_wrap():
    z = CyclotomicInt.root(9)
    acc = CyclotomicInt.from_int(9, 1)
    for _ in range(9):
        acc = acc * z
    assert acc == 1


def test_conductor_mismatch():
    with pytest.raises(ValueError, match="conductor"):
        CyclotomicInt.root(3) + CyclotomicInt.root(4)


def test_repr():
    assert repr(CyclotomicInt.from_multiplicities(3, [0, 1, 1])) == "-1 (e=3)"
    assert repr(CyclotomicInt.from_int(5, 0)) == "0 (e=5)"


def test_norm_of_root_sum():
    # |1 + i|^2 = 2
    v = CyclotomicInt.from_int(4, 1) + CyclotomicInt.root(4)
    assert v.norm_sq().as_int() == 2


conductors = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 9, 12, 16])


def elements(e):
    return st.lists(st.integers(-5, 5), min_size=e, max_size=e).map(
        lambda m: CyclotomicInt(e, reduce_poly(m, e))
    )


@settings(max_examples=60, deadline=None)
@given(conductors.flatmap(lambda e: st.tuples(elements(e), elements(e), elements(e))))
def test_ring_axioms(triple):
    a, b, c = triple
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()
    assert a.conj().conj() == a
    assert (a * b).conj() == a.conj() * b.conj()


@settings(max_examples=60, deadline=None)
@given(conductors.flatmap(lambda e: st.tuples(st.just(e), st.lists(st.integers(-3, 3), min_size=e, max_size=e))))
def test_multiplicities_match_complex_value(arg):
    e, mult = arg
    v = CyclotomicInt.from_multiplicities(e, mult)
    want = sum(m * cmath.exp(2j * cmath.pi * t / e) for t, m in enumerate(mult))
    assert abs(v.to_complex() - want) < 1e-9
