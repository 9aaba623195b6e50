'''
Evaluated balls persisted as JSON lines, one entry per (index, precision).

The cache is a pure accelerator: a missing, corrupt or unreadable file means recomputation, never a wrong answer.
'''

from __future__ import annotations

import json
import os
import re
import tempfile
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path

from more_itertools import first_true

from ..numeval.ball import Ball
from . import warnings
from .logging import make_logger
from .serialize import dumps

logger = make_logger(__name__)

try:
    import fcntl
except ImportError:  # windows
    fcntl = None  # type: ignore[assignment]


_HEX = re.compile(r'(-?)0x([0-9a-f]+)p(-?\d+)')


@dataclass(frozen=True)
class CacheEntry:
    key: str
    '''canonical index string, e.g. "3,2,2"'''
    prec_bits: int
    midpoint: str
    '''dyadic midpoint, e.g. "0x1a2bp-130"'''
    radius_exp: int | None
    '''radius is exactly 2^radius_exp, None for a point ball'''

    @classmethod
    def from_ball(cls, key: str, prec_bits: int, ball: Ball) -> CacheEntry:
        sign = '-' if ball.man < 0 else ''
        return cls(
            key=key,
            prec_bits=prec_bits,
            midpoint=f'{sign}0x{abs(ball.man):x}p{ball.exp}',
            radius_exp=ball.radius_exp(),
        )

    def to_ball(self) -> Ball:
        m = _HEX.fullmatch(self.midpoint)
        if m is None:
            raise ValueError(f'bad midpoint {self.midpoint!r}')
        sign, mhex, sexp = m.groups()
        man = int(mhex, 16) * (-1 if sign else 1)
        exp = int(sexp)
        if self.radius_exp is None:
            return Ball(man, exp, 0)
        if self.radius_exp < exp:
            raise ValueError(f'radius 2^{self.radius_exp} below the midpoint ulp 2^{exp}')
        return Ball(man, exp, 1 << (self.radius_exp - exp))

    def to_json(self) -> str:
        return dumps({'key': self.key, 'prec_bits': self.prec_bits, 'midpoint': self.midpoint, 'radius_exp': self.radius_exp})

    @classmethod
    def from_json(cls, line: str) -> CacheEntry:
        j = json.loads(line)
        re_ = j['radius_exp']
        e = cls(key=str(j['key']), prec_bits=int(j['prec_bits']), midpoint=str(j['midpoint']), radius_exp=None if re_ is None else int(re_))
        e.to_ball()  # validate
        return e


def widen_pow2(ball: Ball) -> Ball:
    '''the same midpoint, radius rounded up to a power of two (what the cache stores)'''
    re_ = ball.radius_exp()
    if re_ is None:
        return ball
    return Ball(ball.man, ball.exp, 1 << (re_ - ball.exp))


def _default_path() -> Path | None:
    from .core_config import config

    return config.get_cache_path()


@contextmanager
def _locked(path: Path) -> Iterator[None]:
    # advisory, only guards against other mzv processes
    if fcntl is None:
        yield
        return
    lpath = path.with_name(path.name + '.lock')
    with lpath.open('a') as fo:
        fcntl.flock(fo, fcntl.LOCK_EX)
        try:
            yield
        finally:
            fcntl.flock(fo, fcntl.LOCK_UN)


def _read(path: Path) -> list[CacheEntry]:
    if not path.exists():
        return []
    res: list[CacheEntry] = []
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        if line.strip() == '':
            continue
        try:
            res.append(CacheEntry.from_json(line))
        except Exception as e:
            warnings.medium(f'{path}:{lineno}: skipping corrupt cache line ({e})')
    return res


def entries(path: Path | None = None) -> list[CacheEntry]:
    path = path or _default_path()
    if path is None:
        return []
    return _read(path)


def cache_get(key: str, prec: int, *, path: Path | None = None) -> Ball | None:
    '''
    The ball stored for exactly (key, prec).

    Finer entries are not used: their digits would differ from a fresh evaluation at prec.
    '''
    path = path or _default_path()
    if path is None:
        return None
    hit = first_true(_read(path), pred=lambda e: (e.key, e.prec_bits) == (key, prec))
    if hit is None:
        logger.debug(f'cache miss: {key} at {prec} bits')
        return None
    return hit.to_ball()


def cache_put(key: str, prec: int, ball: Ball, *, path: Path | None = None) -> CacheEntry | None:
    '''
    Replaces the (key, prec) entry or appends it. The file is rewritten atomically.
    '''
    path = path or _default_path()
    if path is None:
        return None
    entry = CacheEntry.from_ball(key, prec, widen_pow2(ball))
    path.parent.mkdir(parents=True, exist_ok=True)
    with _locked(path):
        kept = [e for e in _read(path) if (e.key, e.prec_bits) != (key, prec)]
        kept.append(entry)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix='.tmp')
        try:
            with os.fdopen(fd, 'w') as fo:
                for e in kept:
                    fo.write(e.to_json() + '\n')
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
    logger.debug(f'cached {key} at {prec} bits in {path}')
    return entry


def cache_clear(*, path: Path | None = None) -> int:
    '''removes the cache file, returns how many entries it held'''
    path = path or _default_path()
    if path is None or not path.exists():
        return 0
    with _locked(path):
        n = len(_read(path))
        path.unlink()
    return n
