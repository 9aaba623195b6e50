'''
The conjectured dimension sequence d_w and its growth constant.
'''

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .error import PreconditionFailed

if TYPE_CHECKING:
    from ..numeval.ball import Ball


@dataclass(frozen=True)
class DimsTable:
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        v = self.values
        if v[:3] != (1, 0, 1)[: len(v)]:
            raise PreconditionFailed(f'dimension table must start 1, 0, 1, got {v[:3]}')
        for w in range(3, len(v)):
            if v[w] != v[w - 3] + v[w - 2]:
                raise PreconditionFailed(f'd_{w} = {v[w]} breaks d_w = d_(w-2) + d_(w-3)')

    @property
    def wmax(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, w: int) -> int:
        return self.values[w]

    def __len__(self) -> int:
        return len(self.values)

    def __str__(self) -> str:
        return ' '.join(map(str, self.values))

    def _serialize(self) -> list[int]:
        return list(self.values)


def d_sequence(wmax: int) -> DimsTable:
    '''d_0 = 1, d_1 = 0, d_2 = 1, d_w = d_(w-3) + d_(w-2)'''
    if wmax < 0:
        raise PreconditionFailed(f'wmax must be >= 0, got {wmax}')
    d = [1, 0, 1]
    for w in range(3, wmax + 1):
        d.append(d[w - 3] + d[w - 2])
    return DimsTable(tuple(d[: wmax + 1]))


def series_inverse(coeffs: Sequence[int], n: int) -> list[int]:
    '''
    First n+1 coefficients of 1/P(x) for an integer polynomial with P(0) = ±1
    '''
    a0 = coeffs[0]
    assert a0 in (1, -1), coeffs
    b: list[int] = []
    for k in range(n + 1):
        acc = 1 if k == 0 else 0
        for i in range(1, min(k, len(coeffs) - 1) + 1):
            acc -= coeffs[i] * b[k - i]
        b.append(acc * a0)
    return b


def generating_series(wmax: int) -> list[int]:
    '''power series coefficients of 1/(1 - x^2 - x^3) through x^wmax'''
    return series_inverse([1, 0, -1, -1], wmax)


def alpha(prec: int) -> Ball:
    '''
    Ball of radius <= 2^-prec around the real root of x^3 - x - 1, by integer bisection on [1, 2]
    '''
    from ..numeval.ball import Ball

    if prec < 8:
        raise PreconditionFailed(f'prec must be >= 8, got {prec}')
    p = prec
    one = 1 << p

    def sign(x: int) -> int:
        # sign of f(x / 2^p) * 2^(3p)
        return x**3 - x * one * one - one**3

    lo, hi = one, 2 * one
    while hi - lo > 1:
        mid = (lo + hi) >> 1
        if sign(mid) <= 0:
            lo = mid
        else:
            hi = mid
    return Ball.from_interval(lo, hi, -p)


def test_generating_series() -> None:
    assert generating_series(12) == list(d_sequence(12).values)
    assert str(d_sequence(7)) == '1 0 1 1 1 2 2 3'
