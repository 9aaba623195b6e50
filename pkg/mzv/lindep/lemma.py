'''
The elimination step behind "1, x and k-1 of the x*y_i are independent".

Given two vanishing forms A_j + B_j x + sum_i C_ji x y_i, multiplying the first by A_2,
subtracting A_1 times the second and dividing by x leaves a form in 1, y_1..y_k
whose y_p coefficient is C_1p A_2.

Only the generic branch is mechanized: A_1 = 0 or all C_1i = 0 are rejected as preconditions.
'''

from __future__ import annotations

import random
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from ..core.error import PreconditionFailed
from ..numeval.ball import Ball

ONE = '1'


def y(i: int) -> str:
    return f'y{i}'


@dataclass(frozen=True)
class LinearForm:
    '''a + b*x + sum_i c[i] * x * y_i, with i in 1..k'''

    a: Fraction
    b: Fraction
    c: Mapping[int, Fraction] = field(default_factory=dict)
    k: int = 1

    def __post_init__(self) -> None:
        if self.k < 1:
            raise PreconditionFailed(f'need k >= 1, got {self.k}')
        bad = [i for i in self.c if not 1 <= i <= self.k]
        if len(bad) > 0:
            raise PreconditionFailed(f'y indices {bad} outside 1..{self.k}')
        object.__setattr__(self, 'a', Fraction(self.a))
        object.__setattr__(self, 'b', Fraction(self.b))
        object.__setattr__(self, 'c', {i: Fraction(v) for i, v in sorted(self.c.items()) if v != 0})

    def coeff(self, i: int) -> Fraction:
        return self.c.get(i, Fraction(0))

    def evaluate(self, x: Ball, ys: Mapping[int, Ball], prec: int) -> Ball:
        '''the form at concrete balls; rational coefficients are rounded outward at prec bits'''
        missing = [i for i in self.c if i not in ys]
        if len(missing) > 0:
            raise PreconditionFailed(f'no values for y{missing}')
        acc = Ball.from_fraction(self.a, prec) + x.scale(self.b, prec)
        for i, ci in self.c.items():
            acc = acc + (x * ys[i]).scale(ci, prec)
        return acc

    def __str__(self) -> str:
        parts = [str(self.a), f'{self.b}*x'] + [f'{ci}*x*y{i}' for i, ci in self.c.items()]
        return ' + '.join(parts)


def lemma1_eliminate(f1: LinearForm, f2: LinearForm, p: int) -> dict[str, Fraction]:
    '''
    (A_2 f1 - A_1 f2) / x as coefficients of 1 and y_i, zero coefficients dropped.

    >>> f1 = LinearForm(2, 3, {1: 5}, k=2)
    >>> f2 = LinearForm(1, 0, {2: 7}, k=2)
    >>> {k: int(v) for k, v in lemma1_eliminate(f1, f2, 1).items()}
    {'1': 3, 'y1': 5, 'y2': -14}
    '''
    if f1.k != f2.k:
        raise PreconditionFailed(f'forms over different y counts: {f1.k} and {f2.k}')
    if not 1 <= p <= f1.k:
        raise PreconditionFailed(f'p={p} outside 1..{f1.k}')
    if f1.coeff(p) == 0:
        raise PreconditionFailed(f'first form has no x*y{p} term')
    if f2.coeff(p) != 0:
        raise PreconditionFailed(f'second form must not involve x*y{p}')
    if f1.a == 0 or f2.a == 0:
        raise PreconditionFailed('both forms need a nonzero constant term')

    A1, A2 = f1.a, f2.a
    res: dict[str, Fraction] = {}
    const = f1.b * A2 - f2.b * A1
    if const != 0:
        res[ONE] = const
    for i in range(1, f1.k + 1):
        ci = f1.coeff(i) * A2 - f2.coeff(i) * A1
        if ci != 0:
            res[y(i)] = ci
    assert res.get(y(p)) == f1.coeff(p) * A2, (res, p)
    return res


def eliminated_value(coeffs: Mapping[str, Fraction], ys: Mapping[int, Ball], prec: int) -> Ball:
    acc = Ball.from_fraction(coeffs.get(ONE, Fraction(0)), prec)
    for key, v in coeffs.items():
        if key == ONE:
            continue
        acc = acc + ys[int(key[1:])].scale(v, prec)
    return acc


def _nonzero(rng: random.Random, span: int) -> Fraction:
    while True:
        q = Fraction(rng.randint(-span, span), rng.randint(1, span))
        if q != 0:
            return q


def random_form_pair(rng: random.Random, *, k_max: int = 6, span: int = 50) -> tuple[LinearForm, LinearForm, int]:
    '''two forms and a p meeting lemma1_eliminate's preconditions'''
    k = rng.randint(1, k_max)
    p = rng.randint(1, k)
    c1 = {i: Fraction(rng.randint(-span, span), rng.randint(1, span)) for i in range(1, k + 1)}
    c1[p] = _nonzero(rng, span)
    c2 = {i: Fraction(rng.randint(-span, span), rng.randint(1, span)) for i in range(1, k + 1) if i != p}
    f1 = LinearForm(_nonzero(rng, span), Fraction(rng.randint(-span, span), rng.randint(1, span)), c1, k)
    f2 = LinearForm(_nonzero(rng, span), Fraction(rng.randint(-span, span), rng.randint(1, span)), c2, k)
    return f1, f2, p
