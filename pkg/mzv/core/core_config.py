'''
Bindings for the 'lab' configuration: precision defaults, weight caps, cache location and output mode
'''

from __future__ import annotations

import os
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Literal, get_args

from . import warnings
from .cfg import Attrs, make_config

try:
    from mzv.config import lab as user_config
except Exception:
    # defensive: a broken user section shouldn't break 'mzv eval', the defaults are reasonable enough
    user_config = object  # type: ignore[assignment,misc]


ENV_PREFIX = 'MZV_'

OutputMode = Literal['text', 'json']

_CACHE_PATH_DEFAULT = ''


@dataclass
class Config(user_config):  # type: ignore[misc,valid-type]
    '''
    Config for the lab.
    Each field can be overridden by the environment, e.g. MZV_PREC_BITS=256 or MZV_CACHE_PATH=/tmp/balls.jsonl
    '''

    prec_bits: int = 128
    '''absolute precision target: evaluated balls have radius <= 2^-prec_bits'''

    guard_bits: int = 64
    '''extra working bits on top of prec_bits, absorbs rounding and tail accounting'''

    max_weight: int = 12
    '''cap for relation matrices (2^(w-2) columns)'''

    enum_max_weight: int = 20
    '''cap for enumerate_admissible, 2^18 indices at the default'''

    max_coeff_bits: int = 32
    '''PSLQ searches for relations with coefficients below 2^max_coeff_bits'''

    cache_path: Path | str | None = _CACHE_PATH_DEFAULT
    '''
    JSON lines cache of evaluated balls
    - if None or 'none', cache is disabled
    - if '' (empty string), use user cache dir (see https://github.com/ActiveState/appdirs)
    - otherwise, the path of the cache file
    '''

    output_mode: OutputMode = 'text'

    seed: int = 0
    '''seed for anything randomized (property checks in verify-paper)'''

    cpu_pool: int = 0
    '''worker processes for relation generation and PSLQ runs, 0 means run serially'''

    def __post_init__(self) -> None:
        if self.prec_bits < 16:
            raise ValueError(f'prec_bits must be >= 16, got {self.prec_bits}')
        if self.guard_bits < 16:
            raise ValueError(f'guard_bits must be >= 16, got {self.guard_bits}')
        if self.max_weight < 2:
            raise ValueError(f'max_weight must be >= 2, got {self.max_weight}')
        if self.output_mode not in get_args(OutputMode):
            raise ValueError(f'output_mode must be one of {get_args(OutputMode)}, got {self.output_mode!r}')

    def get_cache_path(self) -> Path | None:
        cpath = self.cache_path
        if cpath is None or str(cpath).lower() == 'none':
            return None
        if cpath == _CACHE_PATH_DEFAULT:
            import appdirs  # type: ignore[import-untyped]

            cdir = Path(appdirs.user_cache_dir('mzv'))
            cdir.mkdir(parents=True, exist_ok=True)
            return cdir / 'balls.jsonl'
        return Path(cpath).expanduser()


def env_overrides(props: Attrs) -> Attrs:
    '''
    Applies MZV_<FIELD> environment variables on top of the user section
    '''
    res = dict(props)
    for f in fields(Config):
        raw = os.environ.get(ENV_PREFIX + f.name.upper())
        if raw is None:
            continue
        default = getattr(Config, f.name, None)
        if isinstance(default, bool) or not isinstance(default, int):
            res[f.name] = raw
            continue
        try:
            res[f.name] = int(raw)
        except ValueError:
            warnings.high(f'ignoring {ENV_PREFIX + f.name.upper()}={raw!r}: expected an integer')
    return res


def load() -> Config:
    return make_config(Config, migration=env_overrides)


config = load()


@contextmanager
def _reset_config() -> Iterator[Config]:
    from .cfg import override_config

    with override_config(config) as cc:
        cc.prec_bits = 128
        cc.max_weight = 12
        cc.cache_path = None
        yield cc


def test_env_overrides(monkeypatch) -> None:
    import pytest

    monkeypatch.setenv('MZV_PREC_BITS', '256')
    monkeypatch.setenv('MZV_OUTPUT_MODE', 'json')
    monkeypatch.setenv('MZV_CACHE_PATH', 'none')
    cfg = load()
    assert cfg.prec_bits == 256
    assert cfg.output_mode == 'json'
    assert cfg.get_cache_path() is None

    monkeypatch.setenv('MZV_PREC_BITS', '8')
    with pytest.raises(ValueError, match='prec_bits'):
        load()

    monkeypatch.setenv('MZV_PREC_BITS', 'lots')
    with pytest.warns(UserWarning, match='expected an integer'):
        cfg = load()
    assert cfg.prec_bits == 128
