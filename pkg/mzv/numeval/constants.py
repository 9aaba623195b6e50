'''
Constants with proven enclosures, cached per precision.
'''

from __future__ import annotations

import threading
from math import factorial

from ..core.logging import make_logger
from .ball import Ball

logger = make_logger(__name__)

# extra fixed point bits on top of the requested precision, covers the ulp error of the series
_PI_GUARD = 40


def _atan_inv(x: int, bits: int) -> tuple[int, int]:
    '''
    atan(1/x) in fixed point with 'bits' fractional bits, plus an error bound in ulps.

    Every power p_k = floor(p_{k-1} / x^2) stays within 2 ulps of one / x^(2k+1), so each
    term is within 2 ulps. The alternating tail after the last nonzero power is below one ulp.
    '''
    assert x >= 5, x
    one = 1 << bits
    x2 = x * x
    p = one // x
    total = p
    k = 1
    while True:
        p //= x2
        if p == 0:
            break
        term = p // (2 * k + 1)
        total = total - term if k % 2 == 1 else total + term
        k += 1
    return total, 2 * (k + 1) + 1


_pi_cache: dict[int, Ball] = {}
_pi_lock = threading.Lock()


def pi_ball(prec: int) -> Ball:
    '''
    Ball around pi with radius <= 2^-prec, Machin's formula pi = 16 atan(1/5) - 4 atan(1/239)
    '''
    with _pi_lock:
        for p, b in _pi_cache.items():
            if p >= prec:
                return b
    bits = prec + _PI_GUARD
    a5, e5 = _atan_inv(5, bits)
    a239, e239 = _atan_inv(239, bits)
    res = Ball(16 * a5 - 4 * a239, -bits, 16 * e5 + 4 * e239)
    assert res.radius_le(prec), (prec, res.rad)
    logger.debug(f'pi at {prec} bits: {res.rad} ulps at 2^-{bits}')
    with _pi_lock:
        _pi_cache[prec] = res
    return res


def zeta_even_closed(k: int, prec: int) -> Ball:
    '''
    pi^(2k) / (2k+1)!, the value of zeta at k repeated twos.
    Retries at higher working precision until the radius is <= 2^-prec.
    '''
    assert k >= 1, k
    den = factorial(2 * k + 1)
    extra = 4 * k + 8
    while True:
        wp = prec + extra
        pi = pi_ball(wp)
        p2 = (pi * pi).round(wp)
        acc = Ball.from_int(1)
        for _ in range(k):
            acc = (acc * p2).round(wp)
        res = acc.div_int(den, wp + 2).round(prec + 2)
        if res.radius_le(prec):
            return res
        extra *= 2
        logger.debug(f'pi^{2 * k}/{2 * k + 1}!: retrying with {extra} extra bits')


def test_pi_digits() -> None:
    from fractions import Fraction

    b = pi_ball(64)
    assert b.radius_le(64)
    q = Fraction(314159265358979323846264338327950288, 10**35)  # truncated, within 10^-35
    assert abs(b.mid() - q) <= b.radius() + Fraction(1, 10**35)
    assert not b.contains(Fraction(314159, 100000))
