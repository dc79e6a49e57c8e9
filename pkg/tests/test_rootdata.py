from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ospq.rootdata import (
    build_root_datum,
    dominant_in_weyl_orbit,
    dominant_weights,
    is_dominant,
    is_integral,
    k2rho_exponents,
    parse_weight,
    positive_roots,
    signed_permutations,
    two_rho,
    weight,
)


def test_cartan_matrix_rank_two():
    # last simple root is the short odd one
    assert build_root_datum(2).cartan == ((2, -1), (-2, 2))
    assert build_root_datum(1).cartan == ((2,),)


@pytest.mark.parametrize("n,expected", [(1, (1,)), (2, (3, 1)), (3, (5, 3, 1))])
def test_graded_two_rho(n, expected):
    # even positive roots minus odd ones, summed by hand
    assert two_rho(build_root_datum(n)) == weight(expected)


def test_k2rho_exponents_reconstruct_two_rho():
    for n in (1, 2, 3):
        d = build_root_datum(n)
        acc = [Fraction(0)] * n
        for c, a in zip(k2rho_exponents(d), d.simple_roots):
            acc = [x + c * y for x, y in zip(acc, a)]
        assert tuple(acc) == two_rho(d)


def test_root_counts():
    even, odd = positive_roots(3)
    assert len(even) == 9 and len(odd) == 3


def test_integrality_and_dominance():
    d = build_root_datum(2)
    assert is_dominant(d, weight((2, 1)))
    assert not is_dominant(d, weight((1, 2)))
    assert not is_integral(d, weight((Fraction(1, 2), 0)))
    assert is_integral(d, weight((-1, 3)))


def test_dominant_weights_are_partitions():
    assert dominant_weights(2, 2) == [weight(w) for w in [(0, 0), (1, 0), (2, 0), (1, 1)]]
    assert len(dominant_weights(3, 3)) == 7


def test_parse_weight():
    assert parse_weight("1,-1/2", 3) == weight((1, Fraction(-1, 2), 0))
    with pytest.raises(ValueError):
        parse_weight("1,0,0", 2)


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=3))
def test_weyl_orbit_representative(mu):
    n = len(mu)
    d = build_root_datum(n)
    hat = dominant_in_weyl_orbit(d, weight(mu))
    assert is_dominant(d, hat)
    assert hat in signed_permutations(weight(mu))
