import pytest

from ..cfg import override_config
from ..core_config import Config, config, load


def test_defaults() -> None:
    c = Config()
    assert c.prec_bits == 128
    assert c.max_weight == 12
    assert c.max_coeff_bits == 32
    assert c.output_mode == 'text'
    assert c.cpu_pool == 0


def test_validation() -> None:
    with pytest.raises(ValueError, match='prec_bits'):
        Config(prec_bits=8)
    with pytest.raises(ValueError, match='output_mode'):
        Config(output_mode='yaml')  # type: ignore[arg-type]


def test_cache_path(tmp_path) -> None:
    assert Config(cache_path=None).get_cache_path() is None
    assert Config(cache_path='None').get_cache_path() is None
    p = tmp_path / 'x.jsonl'
    assert Config(cache_path=str(p)).get_cache_path() == p


def test_override() -> None:
    before = config.max_weight
    with override_config(config) as c:
        c.max_weight = 4
        from ...relations import build_relations
        from ..error import WeightOutOfRange

        with pytest.raises(WeightOutOfRange, match='max_weight'):
            build_relations(5)
    assert config.max_weight == before


def test_env(monkeypatch) -> None:
    monkeypatch.setenv('MZV_MAX_COEFF_BITS', '20')
    monkeypatch.setenv('MZV_CPU_POOL', '2')
    monkeypatch.setenv('MZV_SEED', '7')
    c = load()
    assert (c.max_coeff_bits, c.cpu_pool, c.seed) == (20, 2, 7)
