from pathlib import Path

import pytest

from ...numeval.ball import Ball
from ..cache import CacheEntry, cache_clear, cache_get, cache_put, entries, widen_pow2


@pytest.fixture
def cpath(tmp_path: Path) -> Path:
    return tmp_path / 'balls.jsonl'


def test_empty(cpath: Path) -> None:
    assert cache_get('2', 64, path=cpath) is None
    assert entries(cpath) == []
    assert cache_clear(path=cpath) == 0


def test_put_get(cpath: Path) -> None:
    b = Ball(0x1A51A6, -20, 3)
    stored = widen_pow2(b)
    # stored radius is a power of two and covers the original one
    assert stored.radius() == 4 * 2**-20
    assert b in stored

    cache_put('3,2', 20, b, path=cpath)
    assert cache_get('3,2', 20, path=cpath) == stored
    # only the exact precision is served, coarser or finer requests re-evaluate
    assert cache_get('3,2', 16, path=cpath) is None
    assert cache_get('3,2', 21, path=cpath) is None
    assert cache_get('2,3', 20, path=cpath) is None


def test_replace(cpath: Path) -> None:
    cache_put('2', 20, Ball(5, -20, 1), path=cpath)
    cache_put('2', 20, Ball(6, -20, 1), path=cpath)
    cache_put('2', 40, Ball(7, -40, 1), path=cpath)
    es = entries(cpath)
    assert [(e.key, e.prec_bits) for e in es] == [('2', 20), ('2', 40)]
    assert cache_get('2', 20, path=cpath) == Ball(6, -20, 1)
    assert cache_get('2', 40, path=cpath) == Ball(7, -40, 1)
    assert cache_clear(path=cpath) == 2
    assert not cpath.exists()


def test_entry_roundtrip() -> None:
    b = Ball(-0x1234, -77, 1 << 5)
    e = CacheEntry.from_ball('2,1', 70, b)
    assert e.midpoint == '-0x1234p-77'
    assert e.radius_exp == -72
    assert CacheEntry.from_json(e.to_json()).to_ball() == b
    exact = CacheEntry.from_ball('2', 10, Ball(3, 0))
    assert exact.radius_exp is None
    assert exact.to_ball() == Ball(3, 0)


def test_corrupt_lines(cpath: Path) -> None:
    cache_put('2', 20, Ball(5, -20, 1), path=cpath)
    with cpath.open('a') as fo:
        fo.write('{"key": "3", "prec_bits": 20\n')
        fo.write('{"key": "3", "prec_bits": 20, "midpoint": "nonsense", "radius_exp": 1}\n')
    with pytest.warns(UserWarning, match='corrupt cache line'):
        es = entries(cpath)
    assert [e.key for e in es] == ['2']


def test_disabled() -> None:
    # the autouse config fixture disables the cache
    assert cache_put('2', 20, Ball(5, -20, 1)) is None
    assert cache_get('2', 20) is None
