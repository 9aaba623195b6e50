import json
from fractions import Fraction

import pytest

from ...numeval.ball import Ball
from ..error import NotExpressible
from ..formal import FormalSum
from ..index import MzvIndex, parse_word
from ..serialize import dumps, to_jsonable


def test_lab_types() -> None:
    i = MzvIndex.of(3, 2)
    obj = {
        'index': i,
        'word': parse_word('x0x1'),
        'coeff': Fraction(-4, 3),
        'sum': FormalSum({MzvIndex.of(5): 1, i: Fraction(1, 2)}),
        'ball': Ball(5, -2, 1),
        'big': 1 << 70,
        'tuple': (1, 2),
        i: 'keys are stringified',
    }
    j = json.loads(dumps(obj))
    assert j['index'] == '3,2'
    assert j['word'] == 'x0x1'
    assert j['coeff'] == '-4/3'
    assert j['sum'] == {'5': '1', '3,2': '1/2'}
    assert j['ball']['mid'] == '0x5p-2'
    assert j['ball']['radius_exp'] == -2
    assert j['big'] == str(1 << 70)
    assert j['tuple'] == [1, 2]
    assert j['(3,2)'] == 'keys are stringified'


def test_errors_as_values() -> None:
    j = to_jsonable([1, NotExpressible(MzvIndex.of(4), 'no pivot')])
    assert j == [1, {'error': 'NotExpressible', 'target': '(4)', 'reason': 'no pivot'}]


def test_custom_default() -> None:
    class Opaque:
        pass

    with pytest.raises(TypeError):
        dumps(Opaque())

    def default(o):
        if isinstance(o, Opaque):
            return 'opaque'
        raise TypeError

    assert dumps([Opaque()], default=default) == '["opaque"]'


@pytest.mark.parametrize('factory', ['orjson', 'simplejson', 'stdlib'])
def test_factories(factory: str) -> None:
    import importlib.util

    if factory != 'stdlib' and importlib.util.find_spec(factory) is None:
        pytest.skip(f'{factory} is not installed')
    from ..serialize import _dumps_factory, _prepare

    d = _dumps_factory(_prefer_factory=factory)
    res = json.loads(d(_prepare({'a': Fraction(1, 3), 'b': [MzvIndex.of(2)]})))
    assert res == {'a': '1/3', 'b': ['2']}
