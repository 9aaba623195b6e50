'''
Dyadic ball arithmetic.

A Ball is the closed interval [(man - rad) * 2^exp, (man + rad) * 2^exp].
Midpoint and radius share the exponent, so every operation is integer arithmetic.
Addition, negation and multiplication are exact; anything that has to round (division,
rational scaling, square roots, truncation to a precision) widens the radius outward.
'''

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, isqrt

from ..core.error import DegenerateInput, PreconditionFailed


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _ceil_shift(a: int, shift: int) -> int:
    # ceil(a / 2^shift) for a >= 0
    return -((-a) >> shift)


@dataclass(frozen=True, slots=True)
class Ball:
    man: int
    exp: int
    rad: int = 0

    def __post_init__(self) -> None:
        if self.rad < 0:
            raise ValueError(f'negative radius: {self.rad}')

    ## constructors

    @classmethod
    def zero(cls) -> Ball:
        return cls(0, 0, 0)

    @classmethod
    def from_int(cls, n: int) -> Ball:
        return cls(n, 0, 0)

    @classmethod
    def from_fraction(cls, q: Fraction | int, prec: int) -> Ball:
        q = Fraction(q)
        return cls.from_int(q.numerator).div_int(q.denominator, prec)

    @classmethod
    def from_interval(cls, lo: int, hi: int, exp: int) -> Ball:
        '''smallest ball at exponent exp covering [lo * 2^exp, hi * 2^exp]'''
        assert lo <= hi, (lo, hi)
        man = (lo + hi) >> 1
        return cls(man, exp, hi - man)

    ## inspection

    def mid(self) -> Fraction:
        return Fraction(self.man) * Fraction(2) ** self.exp

    def lower(self) -> Fraction:
        return Fraction(self.man - self.rad) * Fraction(2) ** self.exp

    def upper(self) -> Fraction:
        return Fraction(self.man + self.rad) * Fraction(2) ** self.exp

    def radius(self) -> Fraction:
        return Fraction(self.rad) * Fraction(2) ** self.exp

    def radius_exp(self) -> int | None:
        '''smallest e with radius <= 2^e, None for a point ball'''
        if self.rad == 0:
            return None
        return self.exp + (self.rad - 1).bit_length()

    def radius_le(self, prec: int) -> bool:
        '''radius <= 2^-prec'''
        re = self.radius_exp()
        return re is None or re <= -prec

    def contains_zero(self) -> bool:
        return abs(self.man) <= self.rad

    def is_positive(self) -> bool:
        return self.man - self.rad > 0

    def contains(self, q: Fraction | int) -> bool:
        q = Fraction(q)
        return abs(q - self.mid()) <= self.radius()

    def overlaps(self, other: Ball) -> bool:
        a, b = _align(self, other)
        return abs(a.man - b.man) <= a.rad + b.rad

    def __contains__(self, other: Ball) -> bool:
        '''other lies entirely inside self'''
        a, b = _align(self, other)
        return a.man - a.rad <= b.man - b.rad and b.man + b.rad <= a.man + a.rad

    def fixed(self, prec: int) -> int:
        '''floor(midpoint * 2^prec)'''
        sh = self.exp + prec
        return self.man << sh if sh >= 0 else self.man >> -sh

    def __float__(self) -> float:
        return float(self.mid())

    ## exact arithmetic

    def __neg__(self) -> Ball:
        return Ball(-self.man, self.exp, self.rad)

    def __add__(self, other: Ball | int) -> Ball:
        if isinstance(other, int):
            other = Ball.from_int(other)
        a, b = _align(self, other)
        return Ball(a.man + b.man, a.exp, a.rad + b.rad)

    __radd__ = __add__

    def __sub__(self, other: Ball | int) -> Ball:
        if isinstance(other, int):
            other = Ball.from_int(other)
        return self + (-other)

    def __rsub__(self, other: int) -> Ball:
        return Ball.from_int(other) - self

    def __mul__(self, other: Ball | int) -> Ball:
        if isinstance(other, int):
            return Ball(self.man * other, self.exp, self.rad * abs(other))
        rad = abs(self.man) * other.rad + abs(other.man) * self.rad + self.rad * other.rad
        return Ball(self.man * other.man, self.exp + other.exp, rad)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Ball:
        assert k >= 0, k
        res = Ball.from_int(1)
        for _ in range(k):
            res = res * self
        return res

    def mul_2exp(self, k: int) -> Ball:
        return Ball(self.man, self.exp + k, self.rad)

    ## rounding arithmetic

    def round(self, prec: int) -> Ball:
        '''
        Drops bits below 2^-prec. Exact if the ball is already that coarse.
        '''
        if self.exp >= -prec:
            return self
        shift = -prec - self.exp
        man = self.man >> shift
        lost = self.man - (man << shift)
        rad = _ceil_shift(self.rad, shift) + (1 if lost != 0 else 0)
        return Ball(man, -prec, rad)

    def _at_exp(self, e: int) -> Ball:
        # exact when e <= exp
        assert e <= self.exp
        sh = self.exp - e
        return Ball(self.man << sh, e, self.rad << sh)

    def div_int(self, n: int, prec: int) -> Ball:
        '''self / n, the rounding error is at most 2^-prec'''
        if n == 0:
            raise ZeroDivisionError('ball divided by zero')
        b = self._at_exp(-prec) if self.exp > -prec else self
        if n < 0:
            b, n = -b, -n
        man = b.man // n
        exact = man * n == b.man
        rad = _ceil_div(b.rad, n) + (0 if exact else 1)
        return Ball(man, b.exp, rad)

    def scale(self, q: Fraction | int, prec: int) -> Ball:
        q = Fraction(q)
        return (self * q.numerator).div_int(q.denominator, prec)

    def div(self, other: Ball, prec: int) -> Ball:
        '''self / other for a divisor ball bounded away from zero'''
        if other.contains_zero():
            raise DegenerateInput(f'division by a ball containing zero: {render(other)}')
        # quotient interval from endpoint quotients, rounded outward
        lo_o, hi_o = other.lower(), other.upper()
        cands = [x / y for x in (self.lower(), self.upper()) for y in (lo_o, hi_o)]
        lo, hi = min(cands), max(cands)
        scale = 1 << prec
        ilo = floor(lo * scale)
        ihi = ceil(hi * scale)
        return Ball.from_interval(ilo, ihi, -prec)

    def sqrt(self, prec: int) -> Ball:
        '''square root of a positive ball, endpoints rounded outward at 2^-prec'''
        if not self.is_positive():
            raise PreconditionFailed(f'sqrt needs a positive ball, got {render(self)}')
        e = -2 * prec
        lo, hi = self.man - self.rad, self.man + self.rad
        if self.exp >= e:
            sh = self.exp - e
            lo, hi = lo << sh, hi << sh
        else:
            sh = e - self.exp
            lo, hi = lo >> sh, _ceil_shift(hi, sh)
        slo = isqrt(lo)
        shi = isqrt(hi)
        if shi * shi < hi:
            shi += 1
        return Ball.from_interval(slo, shi, -prec)

    def __str__(self) -> str:
        return render(self)

    def _serialize(self) -> dict[str, object]:
        re = self.radius_exp()
        return {
            'mid': _hex(self.man, self.exp),
            'radius_exp': re,
            'decimal': render(self),
        }


def _align(a: Ball, b: Ball) -> tuple[Ball, Ball]:
    e = min(a.exp, b.exp)
    return a._at_exp(e), b._at_exp(e)


def _hex(man: int, exp: int) -> str:
    sign = '-' if man < 0 else ''
    return f'{sign}0x{abs(man):x}p{exp}'


def _trunc_digits(num: int, exp: int, d: int) -> int:
    # floor(num * 2^exp * 10^d) for num >= 0
    v = num * 10**d
    return v << exp if exp >= 0 else v >> -exp


def render(ball: Ball, *, exact: bool = False) -> str:
    '''
    Decimal digits that every point of the ball agrees on, followed by "…".
    In exact mode the dyadic midpoint and the radius exponent instead.
    '''
    re = ball.radius_exp()
    if exact:
        rpart = '' if re is None else f' ± 2^{re}'
        return f'{_hex(ball.man, ball.exp)}{rpart}'
    if ball.rad == 0:
        # exact dyadic, finite decimal expansion
        m = ball.mid()
        if m.denominator == 1:
            return str(m.numerator)
        d = m.denominator.bit_length() - 1
        q = abs(m.numerator) * 10**d // m.denominator
        sign = '-' if m < 0 else ''
        s = f'{q // 10**d}.{q % 10**d:0{d}d}'.rstrip('0')
        return sign + s
    if ball.contains_zero():
        return f'0 ± 2^{re}'

    sign = '-' if ball.man < 0 else ''
    lo, hi = abs(ball.man) - ball.rad, abs(ball.man) + ball.rad
    max_digits = 0 if re is None else max(0, (-re * 31) // 100 + 2)
    if _trunc_digits(lo, ball.exp, 0) != _trunc_digits(hi, ball.exp, 0):
        return f'{sign}{float(abs(ball.mid())):.3g} ± 2^{re}'
    d = 0
    while d < max_digits and _trunc_digits(lo, ball.exp, d + 1) == _trunc_digits(hi, ball.exp, d + 1):
        d += 1
    q = _trunc_digits(lo, ball.exp, d)
    if d == 0:
        return f'{sign}{q}…'
    return f'{sign}{q // 10**d}.{q % 10**d:0{d}d}…'
