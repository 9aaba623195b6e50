from fractions import Fraction

import pytest

from ..formal import FormalSum
from ..index import MzvIndex, index_to_word, parse_word, word_to_index


def I(*parts: int) -> MzvIndex:  # noqa: E743
    return MzvIndex.of(*parts)


def test_rendering() -> None:
    s = FormalSum({I(3, 2): 1, I(2, 3): 1, I(5): 1})
    assert str(s) == '(5) + (3,2) + (2,3)'
    t = FormalSum({I(4): Fraction(4, 3), I(2, 2): -1})
    assert str(t) == '4/3*(4) - (2,2)'
    assert t.signed_terms() == '+4/3*(4) -1*(2,2)'
    assert str(FormalSum()) == '0'
    assert str(-FormalSum.single(I(3))) == '-(3)'


def test_algebra() -> None:
    a = FormalSum({I(3): 1, I(2, 1): 2})
    b = FormalSum({I(2, 1): 2})
    assert a - b == FormalSum.single(I(3))
    assert (a - a).terms == {}
    assert not (a - a)
    assert a * Fraction(1, 2) == FormalSum({I(3): Fraction(1, 2), I(2, 1): 1})
    assert 2 * b == b + b
    assert a[I(4)] == 0
    assert I(3) in a
    # zero coefficients are never stored
    assert len(FormalSum([(I(3), 1), (I(3), -1)])) == 0
    assert hash(a) == hash(FormalSum({I(2, 1): 2, I(3): 1}))


def test_weight() -> None:
    assert FormalSum.single(I(3, 2)).weight() == 5
    assert FormalSum().weight() is None
    mixed = FormalSum({I(3): 1, I(4): 1})
    assert not mixed.is_homogeneous()
    with pytest.raises(ValueError):
        mixed.weight()
    assert mixed.coefficient_mass() == 2


def test_map_keys() -> None:
    words = FormalSum({parse_word('x0x1x1'): 2, parse_word('x0x0x1'): -1})
    idx = words.map_keys(word_to_index)
    assert idx == FormalSum({I(2, 1): 2, I(3): -1})
    assert idx.map_keys(index_to_word) == words
    assert idx._serialize() == {'3': '-1', '2,1': '2'}
