'''
Rigorous evaluation of multiple zeta values.

The defining series converges like 1/N, so values are computed through the Hölder
convolution instead: zeta(w) is a sum of products of multiple polylogarithms at 1/2,
whose series converge like 2^-N. The truncated defining series (eval_naive) is kept as
an independent low-precision oracle.
'''

from __future__ import annotations

import threading
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from ..core.error import DivergentWord, NotAdmissible, PreconditionFailed, SeriesDidNotConverge
from ..core.formal import FormalSum
from ..core.index import X0, BinaryWord, MzvIndex, index_to_word, tau, word_to_index
from ..core.logging import make_logger
from .ball import Ball
from .constants import zeta_even_closed

logger = make_logger(__name__)


@dataclass(frozen=True)
class EvalConfig:
    prec_bits: int = 128
    '''target absolute radius 2^-prec_bits'''
    guard_bits: int = 64
    '''minimum extra working bits for the fixed point sums'''
    max_terms: int = 200_000
    '''series longer than this raise SeriesDidNotConverge'''

    def __post_init__(self) -> None:
        if self.prec_bits < 16:
            raise PreconditionFailed(f'prec_bits must be >= 16, got {self.prec_bits}')
        if self.guard_bits < 16:
            raise PreconditionFailed(f'guard_bits must be >= 16, got {self.guard_bits}')

    @classmethod
    def from_config(cls, prec: int | None = None) -> EvalConfig:
        from ..core.core_config import config

        return cls(
            prec_bits=config.prec_bits if prec is None else prec,
            guard_bits=config.guard_bits,
        )

    def with_prec(self, prec: int) -> EvalConfig:
        return EvalConfig(prec_bits=prec, guard_bits=self.guard_bits, max_terms=self.max_terms)


def _as_cfg(cfg: EvalConfig | int | None) -> EvalConfig:
    if cfg is None:
        return EvalConfig.from_config()
    if isinstance(cfg, int):
        return EvalConfig.from_config(prec=cfg)
    return cfg


## polylogarithms at 1/2


def _li_terms(depth: int, target: int) -> int:
    '''
    Smallest N >= 4*depth with (N+1)^(depth-1) * 2^(target+1) <= 2^N.
    For such N the tail after n_1 = N is at most 2^(1-N) (N+1)^(depth-1) <= 2^-target.
    '''
    n = max(4 * depth, target)
    while ((n + 1) ** (depth - 1)) << (target + 1) > (1 << n):
        n += 1
    return n


def _li_fixed(parts: Sequence[int], terms: int, bits: int) -> int:
    '''
    sum over terms >= n_1 > ... > n_l >= 1 of 2^-n_1 / prod n_i^s_i, in fixed point.
    The result is at most (N+1)^(l-1) + N + 1 ulps below the exact truncated sum.
    '''
    one = 1 << bits
    l = len(parts)
    # cum[j]: sum over m_j > ... > m_l >= 1 with m_j below the current n of prod_{i >= j} m_i^-s_i
    cum = [0] * l
    total = 0
    for n in range(1, terms + 1):
        vals = [0] * l
        for j in range(l - 1, -1, -1):
            inner = one if j == l - 1 else cum[j + 1]
            vals[j] = inner // n ** parts[j]
        for j in range(l):
            cum[j] += vals[j]
        total += vals[0] >> n
    return total


_li_cache: dict[tuple[BinaryWord, int, int], Ball] = {}
_li_lock = threading.Lock()


def eval_li_half(word: BinaryWord, cfg: EvalConfig | int | None = None) -> Ball:
    '''
    The multiple polylogarithm of the word at z = 1/2, radius <= 2^-(prec_bits + 1).

    Words may start with x1 (a leading part 1 converges at 1/2) but must end in x1.
    '''
    cfg = _as_cfg(cfg)
    prec = cfg.prec_bits
    if len(word) == 0:
        return Ball.from_int(1)
    if word.letters[-1] == X0:
        raise DivergentWord(f'{word}: a word ending in x0 has no convergent series')

    key = (word, prec, cfg.guard_bits)
    with _li_lock:
        cached = _li_cache.get(key)
    if cached is not None:
        return cached

    parts = word_to_index(word).parts
    depth = len(parts)
    target = prec + 2
    terms = _li_terms(depth, target)
    if terms > cfg.max_terms:
        raise SeriesDidNotConverge(f'{word}: needs {terms} terms for 2^-{prec}, max_terms is {cfg.max_terms}')
    err_ulps = (terms + 1) ** (depth - 1) + terms + 1
    bits = max(prec + cfg.guard_bits, prec + 3 + err_ulps.bit_length())

    total = _li_fixed(parts, terms, bits)
    # tail <= 2^(1-N) (N+1)^(l-1), in ulps of 2^-bits
    tsh = bits + 1 - terms
    tail_num = (terms + 1) ** (depth - 1)
    tail_ulps = tail_num << tsh if tsh >= 0 else -((-tail_num) >> -tsh)
    # the fixed point sum only rounds down, so the exact value is in [total, total + err + tail]
    res = Ball.from_interval(total, total + err_ulps + tail_ulps, -bits)
    assert res.radius_le(prec + 1), (word, prec, res.radius_exp())
    logger.debug(f'Li{word}(1/2): {terms} terms at {bits} bits')

    with _li_lock:
        _li_cache[key] = res
    return res


## Hölder convolution


def holder_split(word: BinaryWord) -> list[tuple[BinaryWord, BinaryWord]]:
    '''
    For a word of length n, the n+1 pairs (tau(prefix_j), suffix_j), j = 0..n.
    zeta(word) is the sum over the pairs of Li(left) * Li(right) at 1/2.
    '''
    if not word.admissible:
        raise NotAdmissible(f'{word}: the Hölder split needs a word starting with x0 and ending with x1')
    letters = word.letters
    return [(tau(BinaryWord(letters[:j])), BinaryWord(letters[j:])) for j in range(len(letters) + 1)]


_mzv_cache: dict[tuple[MzvIndex, int, int], Ball] = {}
_mzv_lock = threading.Lock()


def _cached_mzv(index: MzvIndex, cfg: EvalConfig) -> Ball | None:
    with _mzv_lock:
        return _mzv_cache.get((index, cfg.prec_bits, cfg.guard_bits))


def eval_mzv(index: MzvIndex, cfg: EvalConfig | int | None = None) -> Ball:
    '''
    Ball containing zeta(index) with radius <= 2^-prec_bits
    '''
    cfg = _as_cfg(cfg)
    prec = cfg.prec_bits
    index.check_admissible()

    hit = _cached_mzv(index, cfg)
    if hit is not None:
        return hit

    word = index_to_word(index)
    splits = holder_split(word)
    # |Li| <= 1 at 1/2, so each product is off by at most 3 Li radii
    extra = 3 + len(splits).bit_length()
    for _attempt in range(4):
        lcfg = cfg.with_prec(prec + extra)
        acc = Ball.zero()
        for left, right in splits:
            acc = acc + eval_li_half(left, lcfg) * eval_li_half(right, lcfg)
        res = acc.round(prec + 2)
        if res.radius_le(prec):
            break
        extra *= 2
        logger.debug(f'zeta{index}: radius 2^{res.radius_exp()}, retrying with {extra} extra bits')
    else:
        raise SeriesDidNotConverge(f'zeta{index}: could not reach 2^-{prec}')

    with _mzv_lock:
        _mzv_cache[(index, prec, cfg.guard_bits)] = res
    return res


def eval_many(indices: Iterable[MzvIndex], cfg: EvalConfig | int | None = None) -> list[Ball]:
    '''eval_mzv over several indices, spread over the configured worker pool'''
    from ..core.utils.concurrent import get_executor

    cfg = _as_cfg(cfg)
    idxs = list(indices)
    with get_executor() as pool:
        return list(pool.map(eval_mzv, idxs, [cfg] * len(idxs)))


def zeta_two_pow(k: int, cfg: EvalConfig | int | None = None) -> Ball:
    '''zeta(2, ..., 2) with k twos, from the closed form pi^(2k) / (2k+1)!'''
    cfg = _as_cfg(cfg)
    if k < 1:
        raise PreconditionFailed(f'k must be >= 1, got {k}')
    return zeta_even_closed(k, cfg.prec_bits)


## the defining series, truncated

# ln 2 < 6932/10000
_LN2_UP = Fraction(6932, 10000)


def naive_tail_bound(index: MzvIndex, N: int) -> Fraction:
    '''
    Upper bound for the terms with n_1 > N.

    The inner sum is at most (1 + ln n)^(l-1) / (l-1)!, and comparing the outer sum with
    an integral of x^-s (2 + ln x)^(l-1) gives N^(1-s) * sum_{j < l} a^j / j! with a = 2 + ln N.
    '''
    s = index.parts[0]
    l = index.depth
    a = 2 + _LN2_UP * N.bit_length()
    poly = sum((a**j / factorial(j) for j in range(l)), Fraction(0))
    return poly / Fraction(N) ** (s - 1)


def eval_naive(index: MzvIndex, N: int, *, prec: int = 64) -> Ball:
    '''
    Partial sum over n_1 <= N of the defining series, with the tail bound folded into the radius.
    Slow (1/N convergence); meant as an oracle for eval_mzv.
    '''
    index.check_admissible()
    l = index.depth
    if N < l:
        raise PreconditionFailed(f'N must be at least the depth {l}, got {N}')
    parts = index.parts
    err_ulps = (N + 1) ** l
    bits = prec + 2 + err_ulps.bit_length()
    one = 1 << bits
    cum = [0] * l
    for n in range(1, N + 1):
        vals = [0] * l
        for j in range(l - 1, -1, -1):
            inner = one if j == l - 1 else cum[j + 1]
            vals[j] = inner // n ** parts[j]
        for j in range(l):
            cum[j] += vals[j]
    total = cum[0]
    tail = naive_tail_bound(index, N) * one
    tail_ulps = tail.numerator // tail.denominator + 1
    return Ball.from_interval(total, total + err_ulps + tail_ulps, -bits)


def eval_formal(fsum: FormalSum[MzvIndex], cfg: EvalConfig | int | None = None) -> Ball:
    '''
    sum of c * zeta(index), radius <= 2^-prec_bits
    '''
    cfg = _as_cfg(cfg)
    prec = cfg.prec_bits
    items = fsum.items()
    if len(items) == 0:
        return Ball.zero()
    for idx, _ in items:
        idx.check_admissible()
    cmax = max(abs(c) for _, c in items)
    extra = 3 + len(items).bit_length() + (cmax.numerator // cmax.denominator + 1).bit_length()
    tprec = prec + extra
    tcfg = cfg.with_prec(tprec)
    acc = Ball.zero()
    for idx, c in items:
        acc = acc + eval_mzv(idx, tcfg).scale(c, tprec)
    res = acc.round(prec + 2)
    assert res.radius_le(prec), (str(fsum), res.radius_exp())
    return res


def product_ball(factors: Iterable[MzvIndex], cfg: EvalConfig | int | None = None) -> Ball:
    '''zeta(u) * zeta(v) * ..., used to check product identities numerically'''
    cfg = _as_cfg(cfg)
    fs = list(factors)
    # all values are <= 2, so each factor's radius is amplified by at most 2^len
    tcfg = cfg.with_prec(cfg.prec_bits + 2 * len(fs) + 4)
    acc = Ball.from_int(1)
    for f in fs:
        acc = acc * eval_mzv(f, tcfg)
    return acc.round(cfg.prec_bits + 2)


def clear_caches() -> None:
    with _li_lock:
        _li_cache.clear()
    with _mzv_lock:
        _mzv_cache.clear()


__all__ = [
    'EvalConfig',
    'eval_formal',
    'eval_li_half',
    'eval_many',
    'eval_mzv',
    'eval_naive',
    'holder_split',
    'product_ball',
    'zeta_two_pow',
]
