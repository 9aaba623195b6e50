'''
Experimental independence certificates for products zeta(3) * zeta(2k).

zeta(3) zeta(2k) = zeta(2k+3) + zeta(3,2k) + zeta(2k,3), so independence of 1, zeta(3) and l of
these products says something about the odd weights 5, 7, ..., 2l+5. The certificates here are
PSLQ runs: they bound the size of any relation, which is experimental evidence, not proof.
'''

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from itertools import combinations

from more_itertools import first_true

from ..core.error import InconsistentRelation, InsufficientPrecision, PreconditionFailed
from ..core.formal import FormalSum
from ..core.index import MzvIndex, enumerate_hoffman
from ..core.logging import make_logger
from ..numeval.ball import Ball
from ..numeval.series import eval_formal, eval_mzv, product_ball
from ..relations import stuffle
from .pslq import NoRelationBelow, PslqResult, RelationCandidate, find_relation, pslq, pslq_many, required_prec

logger = make_logger(__name__)

DISCLAIMER = 'experimental evidence, not proof'

# the reduction to the Hoffman set has been checked up to this weight
_UNCONDITIONAL_L = 5

ZETA3 = MzvIndex.of(3)


def _coeff_bits(max_coeff_bits: int | None) -> int:
    if max_coeff_bits is not None:
        return max_coeff_bits
    from ..core.core_config import config

    return config.max_coeff_bits


def corollary_products(l: int) -> list[tuple[int, FormalSum[MzvIndex]]]:
    '''(k, (2k+3) + (3,2k) + (2k,3)) for k = 1..l+1'''
    if l < 1:
        raise PreconditionFailed(f'l must be >= 1, got {l}')
    res = []
    for k in range(1, l + 2):
        rhs = FormalSum({MzvIndex.of(2 * k + 3): 1, MzvIndex.of(3, 2 * k): 1, MzvIndex.of(2 * k, 3): 1})
        res.append((k, rhs))
    return res


def candidate_set(l: int) -> list[MzvIndex]:
    '''the Hoffman sets of weights 5, 7, ..., 2l+5'''
    return [t for k in range(1, l + 2) for t in enumerate_hoffman(2 * k + 3)]


@dataclass(frozen=True)
class ProductCheck:
    k: int
    rhs: FormalSum[MzvIndex]
    residual: Ball
    '''zeta(3) zeta(2k) minus the rhs, contains zero'''

    def _serialize(self) -> dict[str, object]:
        return {'k': self.k, 'identity': f'ζ(3)·ζ({2 * self.k}) = {self.rhs}', 'residual': self.residual._serialize()}


def check_product(k: int, rhs: FormalSum[MzvIndex], prec: int) -> ProductCheck:
    assert stuffle(ZETA3, MzvIndex.of(2 * k)) == rhs, (k, rhs)
    residual = product_ball([ZETA3, MzvIndex.of(2 * k)], prec) - eval_formal(rhs, prec)
    if not residual.contains_zero():
        raise InconsistentRelation(f'ζ(3)ζ({2 * k}) differs from {rhs}: {residual}')
    return ProductCheck(k=k, rhs=rhs, residual=residual)


@dataclass(frozen=True)
class TupleOutcome:
    ks: tuple[int, ...]
    '''which products zeta(3) zeta(2k) joined 1 and zeta(3)'''
    result: PslqResult

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(2 * k + 3 for k in self.ks)

    def _serialize(self) -> dict[str, object]:
        return {'weights': list(self.weights), 'result': _result_json(self.result)}


def _result_json(res: PslqResult) -> dict[str, object]:
    if isinstance(res, NoRelationBelow):
        return {'no_relation_below': str(res.bound), 'steps': res.steps, 'exhausted': res.exhausted}
    return {'relation': list(res.coefficients), 'residual': res.residual._serialize()}


def _certifies(res: PslqResult, bits: int) -> bool:
    return isinstance(res, NoRelationBelow) and res.below(bits)


@dataclass(frozen=True)
class IndependenceCertificate:
    l: int
    subset_I: tuple[int, ...]
    '''empty if no tuple reached the bound'''
    vectors: dict[int, MzvIndex]
    '''t_i for i in subset_I; a weight is missing if no Hoffman vector could be certified'''
    products_used: list[ProductCheck]
    pslq_outcomes: list[TupleOutcome]
    vector_outcome: PslqResult | None
    precision: int
    max_coeff_bits: int
    candidate_set: list[MzvIndex]
    disclaimer: str = field(default=DISCLAIMER)

    @property
    def found(self) -> bool:
        return len(self.subset_I) == self.l and len(self.vectors) == self.l

    @property
    def dimension_lower_bound(self) -> int:
        '''of Q + the span of zeta over the Hoffman sets of weights 3, 5, ..., 2l+5'''
        return self.l + 2

    @property
    def not_conditional(self) -> bool:
        return self.l <= _UNCONDITIONAL_L

    def render(self) -> str:
        lines = [f'independence certificate, l={self.l} ({self.disclaimer})']
        lines.append(f'  precision {self.precision} bits, coefficients below 2^{self.max_coeff_bits}')
        lines.append('  candidate vectors: ' + ' '.join(str(t) for t in self.candidate_set))
        for p in self.products_used:
            lines.append(f'  ζ(3)·ζ({2 * p.k}) = {p.rhs}   [residual {p.residual}]')
        for o in self.pslq_outcomes:
            lines.append(f'  1, ζ(3), products of weights {list(o.weights)}: {o.result}')
        if len(self.subset_I) == 0:
            lines.append('  no subset reached the coefficient bound')
        else:
            lines.append(f'  I = {{{", ".join(map(str, self.subset_I))}}}')
            for i in self.subset_I:
                t = self.vectors.get(i)
                lines.append(f'    t_{i} = {t if t is not None else "not found"}')
            if self.vector_outcome is not None:
                lines.append(f'  1, ζ(3), ζ(t_i): {self.vector_outcome}')
        lines.append(f'  dim(Q + span over weights 3..{2 * self.l + 5}) >= {self.dimension_lower_bound}' + (' (conditional)' if not self.not_conditional else ''))
        return '\n'.join(lines)

    def __str__(self) -> str:
        return self.render()

    def _serialize(self) -> dict[str, object]:
        return {
            'l': self.l,
            'subset_I': list(self.subset_I),
            'vectors': {str(i): t.key for i, t in self.vectors.items()},
            'products_used': [p._serialize() for p in self.products_used],
            'pslq_outcomes': [o._serialize() for o in self.pslq_outcomes],
            'vector_outcome': None if self.vector_outcome is None else _result_json(self.vector_outcome),
            'precision': self.precision,
            'max_coeff_bits': self.max_coeff_bits,
            'candidate_set': [t.key for t in self.candidate_set],
            'dimension_lower_bound': self.dimension_lower_bound,
            'not_conditional': self.not_conditional,
            'disclaimer': self.disclaimer,
        }


def _product_values(ks: Sequence[int], prec: int) -> list[Ball]:
    return [Ball.from_int(1), eval_mzv(ZETA3, prec)] + [product_ball([ZETA3, MzvIndex.of(2 * k)], prec) for k in ks]


def _zeta_values(ts: Sequence[MzvIndex], prec: int) -> list[Ball]:
    return [Ball.from_int(1), eval_mzv(ZETA3, prec)] + [eval_mzv(t, prec) for t in ts]


def _settle(res: PslqResult, evaluate, prec: int, bits: int) -> PslqResult:
    # raw candidates are only reported once they verify at doubled precision
    if isinstance(res, RelationCandidate):
        return find_relation(evaluate, prec, bits)
    return res


def _check_prec(n: int, prec: int, bits: int) -> None:
    need = required_prec(n, bits)
    if prec < need:
        raise InsufficientPrecision(f'{n} values with {bits}-bit coefficients need at least {need} bits, got {prec}')


def _pick_vectors(weights: Sequence[int], prec: int, bits: int) -> tuple[dict[int, MzvIndex], PslqResult | None]:
    '''
    greedily picks t_i in the Hoffman set of weight i, keeping 1, zeta(3) and the chosen zeta(t_i) free of small relations
    '''
    chosen: list[MzvIndex] = []
    last: PslqResult | None = None
    for w in weights:
        for t in enumerate_hoffman(w):
            ts = [*chosen, t]
            res = _settle(pslq(_zeta_values(ts, prec), bits), lambda p, ts=ts: _zeta_values(ts, p), prec, bits)
            logger.debug(f'weight {w}: trying {t}: {res}')
            if _certifies(res, bits):
                chosen.append(t)
                last = res
                break
        else:
            logger.info(f'no Hoffman vector of weight {w} could be certified at {prec} bits')
    return {t.weight: t for t in chosen}, last


def certify_corollary(l: int, prec: int, *, max_coeff_bits: int | None = None) -> IndependenceCertificate:
    '''
    PSLQ on 1, zeta(3) and each l-subset of the products zeta(3) zeta(2k), k = 1..l+1.
    The first subset with no relation below 2^max_coeff_bits gives the weights I = {2k+3};
    representative vectors t_i are then picked from the Hoffman sets of those weights.
    '''
    bits = _coeff_bits(max_coeff_bits)
    if l < 1:
        raise PreconditionFailed(f'l must be >= 1, got {l}')
    _check_prec(l + 2, prec, bits)

    products = [check_product(k, rhs, prec) for k, rhs in corollary_products(l)]
    subsets = list(combinations(range(1, l + 2), l))
    logger.info(f'certify l={l}: {len(subsets)} tuples at {prec} bits')
    # warm the evaluation caches before fanning out
    vals = {k: product_ball([ZETA3, MzvIndex.of(2 * k)], prec) for k in range(1, l + 2)}
    base = [Ball.from_int(1), eval_mzv(ZETA3, prec)]
    raw = pslq_many([[*base, *(vals[k] for k in ks)] for ks in subsets], bits)
    outcomes = [
        TupleOutcome(ks=ks, result=_settle(res, lambda p, ks=ks: _product_values(ks, p), prec, bits))
        for ks, res in zip(subsets, raw)
    ]

    subset_I: tuple[int, ...] = ()
    vectors: dict[int, MzvIndex] = {}
    vector_outcome: PslqResult | None = None
    first = first_true(outcomes, pred=lambda o: _certifies(o.result, bits))
    if first is not None:
        subset_I = first.weights
        vectors, vector_outcome = _pick_vectors(subset_I, prec, bits)

    cert = IndependenceCertificate(
        l=l,
        subset_I=subset_I,
        vectors=vectors,
        products_used=products,
        pslq_outcomes=outcomes,
        vector_outcome=vector_outcome,
        precision=prec,
        max_coeff_bits=bits,
        candidate_set=candidate_set(l),
    )
    logger.info(f'certify l={l}: I={list(subset_I)}, vectors {[str(t) for t in vectors.values()]}')
    return cert


@dataclass(frozen=True)
class LowerBoundReport:
    l: int
    values: list[MzvIndex]
    outcome: PslqResult
    precision: int
    max_coeff_bits: int
    disclaimer: str = field(default=DISCLAIMER)

    @property
    def certified(self) -> bool:
        return _certifies(self.outcome, self.max_coeff_bits)

    @property
    def dimension_lower_bound(self) -> int:
        '''of Q + the span of zeta over the Hoffman sets of weights 2, 4, ..., 2l'''
        return self.l + 1

    def render(self) -> str:
        vals = ', '.join(f'ζ{t}' for t in self.values)
        lines = [
            f'even weights up to {2 * self.l} ({self.disclaimer})',
            f'  1, {vals}: {self.outcome}',
            f'  precision {self.precision} bits, coefficients below 2^{self.max_coeff_bits}',
        ]
        if self.certified:
            lines.append(f'  dim(Q + span over weights 2..{2 * self.l}) >= {self.dimension_lower_bound}')
        return '\n'.join(lines)

    def __str__(self) -> str:
        return self.render()

    def _serialize(self) -> dict[str, object]:
        return {
            'l': self.l,
            'values': [t.key for t in self.values],
            'outcome': _result_json(self.outcome),
            'certified': self.certified,
            'dimension_lower_bound': self.dimension_lower_bound,
            'precision': self.precision,
            'max_coeff_bits': self.max_coeff_bits,
            'disclaimer': self.disclaimer,
        }


def even_weight_lower_bound(l: int, prec: int, *, max_coeff_bits: int | None = None) -> LowerBoundReport:
    '''PSLQ on 1, zeta(2), zeta(2,2), ..., zeta((2)_l)'''
    bits = _coeff_bits(max_coeff_bits)
    if l < 1:
        raise PreconditionFailed(f'l must be >= 1, got {l}')
    _check_prec(l + 1, prec, bits)
    ts = [MzvIndex.of(*([2] * k)) for k in range(1, l + 1)]

    def evaluate(p: int) -> list[Ball]:
        return [Ball.from_int(1)] + [eval_mzv(t, p) for t in ts]

    res = find_relation(evaluate, prec, bits)
    return LowerBoundReport(l=l, values=ts, outcome=res, precision=prec, max_coeff_bits=bits)
