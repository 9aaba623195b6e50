'''
Algebraic relations among multiple zeta values of a fixed weight.

Three families generate the relation matrix:

- DUALITY: u - dual(u)
- HOFFMAN: (1)*v - x1 ⧢ v, the divergent terms cancel
- FDS: u*v - u ⧢ v, stuffle against shuffle of the same product

The matrix rank gives an upper bound for the dimension of the weight-w span,
and an echelon form with the non-Hoffman columns first reduces any index to the Hoffman basis.
'''

from __future__ import annotations

import enum
import re
from collections import Counter
from collections.abc import Collection, Iterable, Iterator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core.core_config import config
from .core.dims import d_sequence
from .core.error import InconsistentRelation, NotExpressible, PreconditionFailed, Res, WeightOutOfRange
from .core.formal import FormalSum
from .core.index import (
    X1,
    BinaryWord,
    MzvIndex,
    dual,
    enumerate_admissible,
    enumerate_hoffman,
    index_to_word,
    is_hoffman,
    parse_index,
    word_to_index,
)
from .core.logging import make_logger
from .exactla import EchelonResult, QMatrix, rank, rref, solve_from_echelon
from .numeval.ball import Ball

logger = make_logger(__name__)


class Family(enum.Enum):
    FDS = 'fds'
    HOFFMAN = 'hoffman'
    DUALITY = 'duality'

    @classmethod
    def parse(cls, text: str) -> frozenset[Family]:
        '''"fds,hoffman" -> {FDS, HOFFMAN}'''
        res: set[Family] = set()
        for chunk in text.split(','):
            name = chunk.strip().lower()
            if name == '':
                continue
            try:
                res.add(cls(name))
            except ValueError as e:
                known = ', '.join(f.value for f in cls)
                raise PreconditionFailed(f'unknown relation family {name!r}, expected some of: {known}') from e
        return frozenset(res)


ALL_FAMILIES: frozenset[Family] = frozenset(Family)


## products


Parts = tuple[int, ...]
Terms = tuple[tuple[Parts, int], ...]


@lru_cache(None)
def _stuffle(a: Parts, b: Parts) -> Terms:
    if len(a) == 0:
        return ((b, 1),)
    if len(b) == 0:
        return ((a, 1),)
    acc: Counter[Parts] = Counter()
    for w, c in _stuffle(a[1:], b):
        acc[(a[0], *w)] += c
    for w, c in _stuffle(a, b[1:]):
        acc[(b[0], *w)] += c
    for w, c in _stuffle(a[1:], b[1:]):
        acc[(a[0] + b[0], *w)] += c
    return tuple(acc.items())


@lru_cache(None)
def _shuffle(a: Parts, b: Parts) -> Terms:
    if len(a) == 0:
        return ((b, 1),)
    if len(b) == 0:
        return ((a, 1),)
    acc: Counter[Parts] = Counter()
    for w, c in _shuffle(a[1:], b):
        acc[(a[0], *w)] += c
    for w, c in _shuffle(a, b[1:]):
        acc[(b[0], *w)] += c
    return tuple(acc.items())


def stuffle(u: MzvIndex, v: MzvIndex) -> FormalSum[MzvIndex]:
    '''
    The harmonic product: (a,U)*(b,V) = (a, U*(b,V)) + (b, (a,U)*V) + (a+b, U*V)
    '''
    return FormalSum([(MzvIndex(w), c) for w, c in _stuffle(u.parts, v.parts)])


def shuffle(a: BinaryWord, b: BinaryWord) -> FormalSum[BinaryWord]:
    '''all interleavings of the two words that keep each word's letter order'''
    return FormalSum([(BinaryWord(w), c) for w, c in _shuffle(a.letters, b.letters)])


def _shuffle_indices(u: MzvIndex, v: MzvIndex) -> FormalSum[MzvIndex]:
    return shuffle(index_to_word(u), index_to_word(v)).map_keys(word_to_index)


## relations


@dataclass(frozen=True)
class Relation:
    combo: FormalSum[MzvIndex]
    family: Family
    provenance: tuple[MzvIndex, ...]

    @property
    def label(self) -> str:
        return f'{self.family.name}[{",".join(map(str, self.provenance))}]'

    @property
    def weight(self) -> int | None:
        return self.combo.weight()

    def render(self) -> str:
        return f'{self.label}: {self.combo.signed_terms()}'

    def __str__(self) -> str:
        return self.render()

    def _serialize(self) -> dict[str, object]:
        return {
            'family': self.family.name,
            'provenance': [p.key for p in self.provenance],
            'combo': self.combo._serialize(),
        }


def duality_rel(u: MzvIndex) -> Relation:
    u.check_admissible()
    combo = FormalSum.single(u) - FormalSum.single(dual(u))
    return Relation(combo=combo, family=Family.DUALITY, provenance=(u,))


def hoffman_rel(v: MzvIndex) -> Relation:
    v.check_admissible()
    one = MzvIndex.of(1)
    combo = stuffle(one, v) - shuffle(BinaryWord((X1,)), index_to_word(v)).map_keys(word_to_index)
    bad = [k for k in combo if not k.admissible]
    if len(bad) > 0:
        raise InconsistentRelation(f'Hoffman relation for {v}: divergent terms {", ".join(map(str, bad))} did not cancel')
    return Relation(combo=combo, family=Family.HOFFMAN, provenance=(v,))


def fds_rel(u: MzvIndex, v: MzvIndex) -> Relation:
    u.check_admissible()
    v.check_admissible()
    combo = stuffle(u, v) - _shuffle_indices(u, v)
    return Relation(combo=combo, family=Family.FDS, provenance=(u, v))


def _check_weight(w: int) -> None:
    if w < 2:
        raise WeightOutOfRange(f'weight must be >= 2, got {w}')
    if w > config.max_weight:
        raise WeightOutOfRange(f'weight {w} is above max_weight {config.max_weight} (MZV_MAX_WEIGHT)')


Job = tuple[Family, tuple[MzvIndex, ...]]


def _jobs(w: int, families: Collection[Family]) -> Iterator[Job]:
    # the row order of the relation matrix
    if Family.DUALITY in families:
        for u in enumerate_admissible(w):
            yield (Family.DUALITY, (u,))
    if Family.HOFFMAN in families and w - 1 >= 2:
        for v in enumerate_admissible(w - 1):
            yield (Family.HOFFMAN, (v,))
    if Family.FDS in families:
        for a in range(2, w // 2 + 1):
            us = enumerate_admissible(a)
            vs = enumerate_admissible(w - a)
            for i, u in enumerate(us):
                for j, v in enumerate(vs):
                    if a == w - a and j < i:
                        continue
                    yield (Family.FDS, (u, v))


def _make(job: Job) -> Relation:
    family, args = job
    if family is Family.DUALITY:
        return duality_rel(*args)
    if family is Family.HOFFMAN:
        return hoffman_rel(*args)
    return fds_rel(*args)


def generate_relations(w: int, families: Collection[Family] = ALL_FAMILIES) -> list[Relation]:
    '''
    All relations of weight w from the given families, in matrix row order (zero relations included)
    '''
    from .core.utils.concurrent import get_executor

    _check_weight(w)
    jobs = list(_jobs(w, families))
    logger.debug(f'weight {w}: generating {len(jobs)} relations')
    with get_executor() as pool:
        return list(pool.map(_make, jobs))


def relation_matrix(w: int, relations: Iterable[Relation]) -> tuple[QMatrix, list[Relation]]:
    '''
    The matrix over the weight-w admissible columns; zero rows and exact duplicates are dropped.
    Returns the relations that made it into rows as well.
    '''
    cols = enumerate_admissible(w)
    colidx = {c: i for i, c in enumerate(cols)}
    seen: set[frozenset[tuple[int, Fraction]]] = set()
    rows: list[dict[int, Fraction]] = []
    kept: list[Relation] = []
    for r in relations:
        if not r.combo:
            continue
        row = {colidx[k]: c for k, c in r.combo.terms.items()}
        key = frozenset(row.items())
        if key in seen:
            continue
        seen.add(key)
        rows.append(row)
        kept.append(r)
    return QMatrix(len(cols), rows, cols), kept


def build_relations(w: int, families: Collection[Family] = ALL_FAMILIES) -> QMatrix:
    m, _ = relation_matrix(w, generate_relations(w, families))
    return m


@dataclass(frozen=True)
class DimensionReport:
    weight: int
    num_unknowns: int
    num_relations: int
    rank: int
    upper_bound: int
    conjectured: int
    matches_conjecture: bool

    def __str__(self) -> str:
        mark = 'matches' if self.matches_conjecture else 'differs from'
        return (
            f'weight {self.weight}: {self.num_relations} relations of rank {self.rank} over {self.num_unknowns} values, '
            f'dimension <= {self.upper_bound} ({mark} d_{self.weight} = {self.conjectured})'
        )


def dimension_bound(w: int, families: Collection[Family] = ALL_FAMILIES) -> DimensionReport:
    m = build_relations(w, families)
    r = rank(m)
    unknowns = m.ncols
    assert unknowns == 2 ** (w - 2), (w, unknowns)
    ub = unknowns - r
    dw = d_sequence(w)[w]
    logger.info(f'weight {w}: rank {r}, upper bound {ub}, d_w {dw}')
    return DimensionReport(
        weight=w,
        num_unknowns=unknowns,
        num_relations=m.nrows,
        rank=r,
        upper_bound=ub,
        conjectured=dw,
        matches_conjecture=ub == dw,
    )


## Hoffman reduction


@dataclass(frozen=True)
class Reduction:
    target: MzvIndex
    coefficients: dict[MzvIndex, Fraction]
    residual_check: Ball

    def as_formal(self) -> FormalSum[MzvIndex]:
        return FormalSum(self.coefficients)

    def __str__(self) -> str:
        return f'{self.target} = {self.as_formal()}'

    def _serialize(self) -> dict[str, object]:
        return {
            'target': self.target.key,
            'coefficients': {k.key: str(c) for k, c in self.as_formal().items()},
            'residual_check': self.residual_check._serialize(),
        }


@lru_cache(None)
def _hoffman_echelon(w: int, families: frozenset[Family]) -> tuple[EchelonResult, tuple[MzvIndex, ...]]:
    m = build_relations(w, families)
    cols: tuple[MzvIndex, ...] = tuple(m.column_labels)  # type: ignore[arg-type]
    # non-Hoffman columns first: a row pivoting at a non-Hoffman column then expresses it through Hoffman columns only
    hoff = [i for i, c in enumerate(cols) if is_hoffman(c)]
    rest = [i for i, c in enumerate(cols) if not is_hoffman(c)]
    ech = rref(m, [*rest, *hoff])
    logger.debug(f'weight {w}: Hoffman echelon of rank {ech.rank}')
    return ech, cols


def _residual(target: MzvIndex, coeffs: dict[MzvIndex, Fraction], prec: int) -> Ball:
    from .numeval.series import eval_formal

    return eval_formal(FormalSum.single(target) - FormalSum(coeffs), prec)


def hoffman_reduce(
    target: MzvIndex,
    *,
    prec: int = 100,
    families: Collection[Family] = ALL_FAMILIES,
) -> Res[Reduction]:
    '''
    Rational coefficients over the Hoffman indices of the same weight,
    or NotExpressible when the relation families don't pin the target down.
    '''
    target.check_admissible()
    w = target.weight
    _check_weight(w)
    if is_hoffman(target):
        coeffs = {target: Fraction(1)}
    else:
        ech, cols = _hoffman_echelon(w, frozenset(families))
        t = cols.index(target)
        basis = [i for i, c in enumerate(cols) if is_hoffman(c)]
        res = solve_from_echelon(ech, t, basis)
        if isinstance(res, Exception):
            return NotExpressible(target, f'weight {w} relations ({", ".join(sorted(f.value for f in families))}) do not reduce it to the Hoffman basis')
        coeffs = {cols[i]: c for i, c in res.items()}
    residual = _residual(target, coeffs, prec)
    if not residual.contains_zero():
        raise InconsistentRelation(f'reduction of {target} does not vanish numerically: {residual}')
    return Reduction(target=target, coefficients=coeffs, residual_check=residual)


@dataclass(frozen=True)
class ProductReduction:
    factors: tuple[MzvIndex, MzvIndex]
    expansion: FormalSum[MzvIndex]
    coefficients: dict[MzvIndex, Fraction]
    residual_check: Ball

    def as_formal(self) -> FormalSum[MzvIndex]:
        return FormalSum(self.coefficients)

    def __str__(self) -> str:
        u, v = self.factors
        return f'ζ{u}·ζ{v} = {self.expansion} = {self.as_formal()}'

    def _serialize(self) -> dict[str, object]:
        return {
            'factors': [f.key for f in self.factors],
            'expansion': self.expansion._serialize(),
            'coefficients': {k.key: str(c) for k, c in self.as_formal().items()},
            'residual_check': self.residual_check._serialize(),
        }


def product_over_hoffman(u: MzvIndex, v: MzvIndex, *, prec: int = 100) -> Res[ProductReduction]:
    '''
    zeta(u) zeta(v) over the Hoffman basis of weight w(u) + w(v), through the stuffle expansion
    '''
    from .numeval.series import eval_formal, product_ball

    u.check_admissible()
    v.check_admissible()
    expansion = stuffle(u, v)
    total: FormalSum[MzvIndex] = FormalSum()
    for term, c in expansion.items():
        red = hoffman_reduce(term, prec=prec)
        if isinstance(red, Exception):
            return red
        total = total + red.as_formal() * c
    residual = product_ball([u, v], prec) - eval_formal(total, prec)
    if not residual.contains_zero():
        raise InconsistentRelation(f'product {u}*{v} does not match its reduction: {residual}')
    return ProductReduction(factors=(u, v), expansion=expansion, coefficients=dict(total.terms), residual_check=residual)


def monotonicity_witness(w2: int, w1: int) -> list[tuple[MzvIndex, FormalSum[MzvIndex]]]:
    '''
    zeta(w1 - w2) * zeta(u) for u in the weight-w2 Hoffman set: every product is homogeneous of weight w1,
    so multiplication by zeta(w1 - w2) maps the weight-w2 span into the weight-w1 one.
    '''
    if w1 - w2 < 2:
        raise PreconditionFailed(f'need w1 - w2 >= 2 for a convergent multiplier, got {w1} - {w2}')
    mult = MzvIndex.of(w1 - w2)
    res = []
    for u in enumerate_hoffman(w2):
        p = stuffle(mult, u)
        assert p.weight() == w1, (u, p)
        res.append((u, p))
    return res


## relation dump format

_TERM = re.compile(r'([+-])\s*(\d+(?:/\d+)?)\s*\*\s*(\([\d,\s]+\))')
_LINE = re.compile(r'\s*([^:]+?)\s*:\s*(.*)')


def parse_relation_line(line: str) -> tuple[str, FormalSum[MzvIndex]]:
    '''
    "FDS[(2),(2)]: +1*(4) -4*(3,1)" -> ('FDS[(2),(2)]', (4) - 4*(3,1))
    '''
    m = _LINE.fullmatch(line.strip())
    if m is None:
        raise PreconditionFailed(f'not a relation line: {line!r}')
    label, body = m.groups()
    terms: list[tuple[MzvIndex, Fraction]] = []
    pos = 0
    for tm in _TERM.finditer(body):
        if body[pos : tm.start()].strip() != '':
            raise PreconditionFailed(f'unexpected {body[pos : tm.start()]!r} in {line!r}')
        sign, coeff, idx = tm.groups()
        c = Fraction(coeff)
        terms.append((parse_index(idx), -c if sign == '-' else c))
        pos = tm.end()
    if body[pos:].strip() != '':
        raise PreconditionFailed(f'unexpected {body[pos:]!r} in {line!r}')
    return label, FormalSum(terms)

