import pytest

from ..dims import d_sequence
from ..error import InvalidIndex, MalformedWord, NotAdmissible, WeightOutOfRange
from ..index import (
    BinaryWord,
    MzvIndex,
    dual,
    enumerate_admissible,
    enumerate_hoffman,
    index_to_word,
    is_hoffman,
    parse_index,
    parse_word,
    tau,
    word_to_index,
)


def test_weight_and_depth() -> None:
    i = MzvIndex.of(3, 2, 2)
    assert i.weight == 7
    assert i.depth == 3
    assert i.admissible
    assert not MzvIndex.of(1, 2).admissible
    assert i.key == '3,2,2'
    assert str(i) == '(3,2,2)'


def test_bad_indices() -> None:
    with pytest.raises(InvalidIndex):
        MzvIndex(())
    with pytest.raises(InvalidIndex):
        MzvIndex.of(2, 0)
    with pytest.raises(NotAdmissible):
        MzvIndex.of(1, 2).check_admissible()
    # NotAdmissible is an InvalidIndex too
    with pytest.raises(InvalidIndex):
        dual(MzvIndex.of(1))


def test_parse_index() -> None:
    assert parse_index('3,2,2') == MzvIndex.of(3, 2, 2)
    assert parse_index(' (2, 1) ') == MzvIndex.of(2, 1)
    assert parse_index('5') == MzvIndex.of(5)
    for bad in ['', '()', '3,,2', '2,-1', '0', 'x']:
        with pytest.raises(InvalidIndex):
            parse_index(bad)


def test_words() -> None:
    w = index_to_word(MzvIndex.of(2, 1))
    assert str(w) == 'x0x1x1'
    assert w.admissible
    assert word_to_index(w) == MzvIndex.of(2, 1)
    assert parse_word('x0x1x1') == w
    assert parse_word('011') == w
    assert len(parse_word('ε')) == 0
    with pytest.raises(MalformedWord):
        parse_word('x2')
    with pytest.raises(MalformedWord):
        BinaryWord((0, 2))
    with pytest.raises(MalformedWord):
        word_to_index(parse_word('010'))


def test_word_bijection() -> None:
    for w in range(2, 10):
        for i in enumerate_admissible(w):
            word = index_to_word(i)
            assert len(word) == w
            assert word.admissible
            assert word_to_index(word) == i


def test_duality() -> None:
    assert dual(MzvIndex.of(2, 1)) == MzvIndex.of(3)
    assert dual(MzvIndex.of(3)) == MzvIndex.of(2, 1)
    assert dual(MzvIndex.of(4)) == MzvIndex.of(2, 1, 1)
    assert dual(MzvIndex.of(2, 2)) == MzvIndex.of(2, 2)
    assert str(tau(parse_word('x0x0x1'))) == 'x0x1x1'
    for w in range(2, 11):
        for i in enumerate_admissible(w):
            d = dual(i)
            assert d.weight == w
            assert dual(d) == i


def test_enumerate_admissible() -> None:
    assert enumerate_admissible(2) == [MzvIndex.of(2)]
    assert enumerate_admissible(4) == [MzvIndex.of(4), MzvIndex.of(3, 1), MzvIndex.of(2, 2), MzvIndex.of(2, 1, 1)]
    for w in range(2, 17):
        idxs = enumerate_admissible(w)
        assert len(idxs) == 2 ** (w - 2)
        assert len(set(idxs)) == len(idxs)
        assert all(i.admissible and i.weight == w for i in idxs)


def test_enumerate_limits() -> None:
    with pytest.raises(WeightOutOfRange):
        enumerate_admissible(1)
    with pytest.raises(WeightOutOfRange):
        enumerate_admissible(25)
    with pytest.raises(WeightOutOfRange):
        enumerate_admissible(13, limit=12)
    assert len(enumerate_admissible(12, limit=12)) == 2**10


def test_enumerate_hoffman() -> None:
    assert enumerate_hoffman(5) == [MzvIndex.of(2, 3), MzvIndex.of(3, 2)]
    assert enumerate_hoffman(7) == [MzvIndex.of(2, 2, 3), MzvIndex.of(2, 3, 2), MzvIndex.of(3, 2, 2)]
    d = d_sequence(40)
    for w in range(2, 41):
        hs = enumerate_hoffman(w)
        assert len(hs) == d[w]
        assert all(is_hoffman(h) and h.weight == w for h in hs)
