'''
PSLQ integer relation detection on balls.

Fixed-point PSLQ with Bailey's 1-based indexing, on the midpoints of the input balls.
A candidate is only returned if the exact integer combination of the balls contains zero,
and "no relation" comes with the norm bound PSLQ certifies: any integer relation has
Euclidean norm at least 1 / max |H_jj|.
'''

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from functools import reduce
from math import gcd, isqrt
from typing import Union

from mpmath.libmp import sqrt_fixed

from ..core.error import DegenerateInput, InsufficientPrecision, PreconditionFailed
from ..core.logging import make_logger
from ..numeval.ball import Ball

logger = make_logger(__name__)

# extra bits for the fixed point iteration on top of what the inputs carry
_WORK_EXTRA = 32


@dataclass(frozen=True)
class RelationCandidate:
    coefficients: tuple[int, ...]
    norm: int
    '''max |c_i|'''
    residual: Ball
    '''sum c_i x_i over the input balls, contains zero'''

    def __post_init__(self) -> None:
        assert any(c != 0 for c in self.coefficients), self.coefficients

    def __str__(self) -> str:
        return f'relation {list(self.coefficients)} (residual {self.residual})'


@dataclass(frozen=True)
class NoRelationBelow:
    bound: int
    '''every integer relation has Euclidean norm >= bound'''
    max_coeff_bits: int
    steps: int
    exhausted: bool = False
    '''stopped by the step cap or lost precision before reaching 2^max_coeff_bits'''

    def below(self, bits: int) -> bool:
        return self.bound >= 1 << bits

    def __str__(self) -> str:
        note = ' (stopped early)' if self.exhausted else ''
        return f'no relation with norm below {self.bound} (~2^{self.bound.bit_length() - 1}){note}'


PslqResult = Union[RelationCandidate, NoRelationBelow]


def combination(coeffs: Sequence[int], values: Sequence[Ball]) -> Ball:
    '''exact sum c_i x_i'''
    acc = Ball.zero()
    for c, v in zip(coeffs, values):
        if c != 0:
            acc = acc + v * c
    return acc


def _normalize(vec: list[int]) -> tuple[int, ...]:
    g = reduce(gcd, vec, 0)
    if g > 1:
        vec = [v // g for v in vec]
    first = next(v for v in vec if v != 0)
    if first < 0:
        vec = [-v for v in vec]
    return tuple(vec)


def required_prec(n: int, max_coeff_bits: int) -> int:
    return n * max_coeff_bits + 64


def _round_fixed(x: int, prec: int) -> int:
    return ((x + (1 << (prec - 1))) >> prec) << prec


def pslq(
    values: Sequence[Ball],
    max_coeff_bits: int | None = None,
    *,
    max_steps: int | None = None,
) -> PslqResult:
    '''
    Either integer coefficients |c_i| < 2^max_coeff_bits with sum c_i x_i containing zero,
    or NoRelationBelow with the certified norm bound.

    Each ball needs radius <= 2^-(n * max_coeff_bits + 64).
    '''
    if max_coeff_bits is None:
        from ..core.core_config import config

        max_coeff_bits = config.max_coeff_bits
    n = len(values)
    if n < 2:
        raise PreconditionFailed(f'pslq needs at least 2 values, got {n}')
    need = required_prec(n, max_coeff_bits)
    for i, v in enumerate(values):
        if v.contains_zero():
            raise DegenerateInput(f'value #{i} is a ball containing zero ({v}), its sign is ambiguous')
        if not v.radius_le(need):
            raise InsufficientPrecision(f'value #{i} has radius 2^{v.radius_exp()}, pslq on {n} values with {max_coeff_bits}-bit coefficients needs 2^-{need}')
    if max_steps is None:
        max_steps = 200 * n * n * max(max_coeff_bits, 8)

    # bits the inputs are good for
    P = min((-v.radius_exp() for v in values if v.rad != 0), default=need + 64)  # type: ignore[operator]
    prec = P + _WORK_EXTRA
    guard = max_coeff_bits + 16 + n.bit_length()
    tol = 1 << (prec - (P - guard))
    coeff_cap = 1 << max_coeff_bits
    bound_target = coeff_cap * isqrt(n) + 1

    # 1-based like Bailey's pseudocode, x[0] is a dummy
    x = [0] + [v.fixed(prec) for v in values]

    g = sqrt_fixed((4 << prec) // 3, prec) + (1 << prec) // 100
    B = [[0] * (n + 1) for _ in range(n + 1)]
    H = [[0] * (n + 1) for _ in range(n + 1)]
    one = 1 << prec
    for i in range(1, n + 1):
        B[i][i] = one
    s = [0] * (n + 1)
    for k in range(n, 0, -1):
        if k < n:
            s[k] = s[k + 1]
        s[k] = s[k] + ((x[k] * x[k]) >> prec)
    for k in range(1, n + 1):
        s[k] = sqrt_fixed(s[k], prec)
    t = s[1]
    y = x[:]
    for k in range(1, n + 1):
        y[k] = (x[k] << prec) // t
        s[k] = (s[k] << prec) // t
    for i in range(1, n + 1):
        if i <= n - 1 and s[i]:
            H[i][i] = (s[i + 1] << prec) // s[i]
        for j in range(1, i):
            sjj1 = s[j] * s[j + 1]
            if sjj1:
                H[i][j] = ((-y[i] * y[j]) << prec) // sjj1
    for i in range(2, n + 1):
        for j in range(i - 1, 0, -1):
            if H[j][j] == 0:
                continue
            t = _round_fixed((H[i][j] << prec) // H[j][j], prec)
            y[j] = y[j] + (t * y[i] >> prec)
            for k in range(1, j + 1):
                H[i][k] = H[i][k] - (t * H[j][k] >> prec)
            for k in range(1, n + 1):
                B[k][j] = B[k][j] + (t * B[k][i] >> prec)

    def norm_bound() -> int:
        hmax = max(abs(H[j][j]) for j in range(1, n))
        if hmax == 0:
            return 0
        return (1 << (2 * prec)) // hmax >> prec

    rejected: set[tuple[int, ...]] = set()

    def scan(step: int) -> RelationCandidate | None:
        # a column of B whose y entry vanished, kept only if the exact combination contains zero
        for i in range(1, n + 1):
            if abs(y[i]) >= tol:
                continue
            vec = [int(_round_fixed(B[j][i], prec) >> prec) for j in range(1, n + 1)]
            if all(v == 0 for v in vec) or any(abs(v) >= coeff_cap for v in vec):
                continue
            coeffs = _normalize(vec)
            if coeffs in rejected:
                continue
            residual = combination(coeffs, values)
            if not residual.contains_zero():
                # small y but the exact combination excludes zero: noise, keep iterating
                rejected.add(coeffs)
                logger.debug(f'step {step}: rejected {list(coeffs)}, residual {residual}')
                continue
            logger.debug(f'step {step}: relation {list(coeffs)}')
            return RelationCandidate(coefficients=coeffs, norm=max(abs(c) for c in coeffs), residual=residual)
        return None

    # equal inputs already cancel in the initial reduction
    found = scan(0)
    if found is not None:
        return found

    bound = 0
    steps = 0
    exhausted = False
    for steps in range(1, max_steps + 1):
        # exchange the row maximizing g^i |H_ii|
        m = -1
        szmax = -1
        for i in range(1, n):
            sz = (g**i * abs(H[i][i])) >> (prec * (i - 1))
            if sz > szmax:
                m = i
                szmax = sz
        y[m], y[m + 1] = y[m + 1], y[m]
        H[m], H[m + 1] = H[m + 1], H[m]
        for i in range(1, n + 1):
            B[i][m], B[i][m + 1] = B[i][m + 1], B[i][m]
        # corner
        if m <= n - 2:
            t0 = sqrt_fixed((H[m][m] * H[m][m] + H[m][m + 1] * H[m][m + 1]) >> prec, prec)
            if not t0:
                exhausted = True
                break
            t1 = (H[m][m] << prec) // t0
            t2 = (H[m][m + 1] << prec) // t0
            for i in range(m, n + 1):
                t3 = H[i][m]
                t4 = H[i][m + 1]
                H[i][m] = (t1 * t3 + t2 * t4) >> prec
                H[i][m + 1] = (-t2 * t3 + t1 * t4) >> prec
        # reduction
        lost = False
        for i in range(m + 1, n + 1):
            for j in range(min(i - 1, m + 1), 0, -1):
                if H[j][j] == 0:
                    lost = True
                    break
                t = _round_fixed((H[i][j] << prec) // H[j][j], prec)
                y[j] = y[j] + ((t * y[i]) >> prec)
                for k in range(1, j + 1):
                    H[i][k] = H[i][k] - (t * H[j][k] >> prec)
                for k in range(1, n + 1):
                    B[k][j] = B[k][j] + (t * B[k][i] >> prec)
        # before giving up on a vanished diagonal: the relation that caused it is in B
        found = scan(steps)
        if found is not None:
            return found
        if lost:
            exhausted = True
            break

        bound = norm_bound()
        if bound >= bound_target:
            logger.debug(f'step {steps}: norm bound {bound} covers 2^{max_coeff_bits}')
            return NoRelationBelow(bound=bound, max_coeff_bits=max_coeff_bits, steps=steps)
    else:
        exhausted = True

    logger.debug(f'pslq stopped after {steps} steps, norm bound {bound}')
    return NoRelationBelow(bound=bound, max_coeff_bits=max_coeff_bits, steps=steps, exhausted=exhausted)


def verify_candidate(cand: RelationCandidate, values: Sequence[Ball]) -> bool:
    '''
    The candidate against finer balls of the same constants: the combination must still
    contain zero and must not have grown.
    '''
    if len(values) != len(cand.coefficients):
        raise PreconditionFailed(f'{len(values)} values for {len(cand.coefficients)} coefficients')
    res = combination(cand.coefficients, values)
    if not res.contains_zero():
        return False
    old, new = cand.residual.radius(), res.radius()
    return new <= old


def find_relation(
    evaluate: Callable[[int], Sequence[Ball]],
    prec: int,
    max_coeff_bits: int | None = None,
) -> PslqResult:
    '''
    pslq on evaluate(prec); a candidate is only returned once it verifies on evaluate(2 * prec)
    '''
    for p in (prec, 2 * prec):
        res = pslq(evaluate(p), max_coeff_bits)
        if isinstance(res, NoRelationBelow):
            return res
        if verify_candidate(res, evaluate(2 * p)):
            return res
        logger.warning(f'candidate {list(res.coefficients)} did not survive {2 * p} bits, retrying at {2 * p}')
    raise InsufficientPrecision(f'candidates keep failing verification up to {4 * prec} bits')


def pslq_many(tuples: Sequence[Sequence[Ball]], max_coeff_bits: int | None = None) -> list[PslqResult]:
    '''independent runs, spread over the configured worker pool, results in input order'''
    from ..core.utils.concurrent import get_executor

    with get_executor() as pool:
        return list(pool.map(pslq, tuples, [max_coeff_bits] * len(tuples)))
