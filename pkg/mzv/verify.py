'''
The acceptance battery behind 'mzv verify-paper'.

Each check returns a pass/fail line with a short detail. A check that raises is reported as failed
with the error, it doesn't stop the others. Timings only go to the logs, so reports are reproducible.
'''

from __future__ import annotations

import random
import time
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from fractions import Fraction

from more_itertools import ilen

from .core.dims import alpha, d_sequence
from .core.error import NotExpressible, split_errors, unwrap
from .core.index import MzvIndex, enumerate_admissible, enumerate_hoffman
from .core.logging import make_logger
from .numeval.ball import Ball
from .numeval.series import eval_formal, eval_mzv, eval_naive, product_ball, zeta_two_pow

logger = make_logger(__name__)


@dataclass(frozen=True)
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str

    def render(self) -> str:
        mark = 'PASS' if self.passed else 'FAIL'
        return f'[{mark}] {self.number:>2}. {self.title}: {self.detail}'


@dataclass(frozen=True)
class BatteryReport:
    items: list[CheckResult]
    quick: bool
    seed: int

    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.items)

    def render(self) -> str:
        lines = [i.render() for i in self.items]
        total = len(self.items)
        ok = sum(1 for i in self.items if i.passed)
        lines.append(f'{ok}/{total} checks passed' + (' (quick mode: slow parts skipped)' if self.quick else ''))
        return '\n'.join(lines)

    def __str__(self) -> str:
        return self.render()

    def _serialize(self) -> dict[str, object]:
        return {
            'passed': self.passed,
            'quick': self.quick,
            'seed': self.seed,
            'items': [
                {'number': i.number, 'title': i.title, 'passed': i.passed, 'detail': i.detail}
                for i in self.items
            ],
        }


Outcome = tuple[bool, str]


def _twos(k: int) -> MzvIndex:
    return MzvIndex.of(*([2] * k))


def check_closed_form() -> Outcome:
    for k in range(1, 6):
        a = eval_mzv(_twos(k), 128)
        b = zeta_two_pow(k, 128)
        if not (a.overlaps(b) and a.radius_le(120) and b.radius_le(120)):
            return False, f'ζ((2)_{k}) = {a} vs π^{2 * k}/{2 * k + 1}! = {b}'
    return True, 'ζ((2)_k) = π^(2k)/(2k+1)! for k = 1..5 at 128 bits'


def check_stuffle_identity() -> Outcome:
    from .lindep.certificate import corollary_products

    for k, rhs in corollary_products(4):
        diff = product_ball([MzvIndex.of(3), MzvIndex.of(2 * k)], 104) - eval_formal(rhs, 104)
        if not (diff.contains_zero() and diff.radius_le(100)):
            return False, f'ζ(3)ζ({2 * k}) - ({rhs}) = {diff}'
    return True, 'ζ(3)ζ(2k) = ζ(2k+3) + ζ(3,2k) + ζ(2k,3) for k = 1..5'


def check_euler() -> Outcome:
    z21 = eval_mzv(MzvIndex.of(2, 1), 200)
    z3 = eval_mzv(MzvIndex.of(3), 200)
    if not z21.overlaps(z3):
        return False, f'ζ(2,1) = {z21}, ζ(3) = {z3}'
    if not (z21 - z3).radius_le(190):
        return False, f'combined radius 2^{(z21 - z3).radius_exp()}'
    naive = eval_naive(MzvIndex.of(2, 1), 2000, prec=64)
    if not naive.overlaps(z3):
        return False, f'truncated series {naive} misses ζ(3) = {z3}'
    return True, 'ζ(2,1) = ζ(3) at 200 bits, confirmed by the truncated series'


def check_dimension_bounds() -> Outcome:
    from .relations import dimension_bound, generate_relations

    got = []
    for w in range(2, 9):
        rep = dimension_bound(w)
        got.append(rep.upper_bound)
        if not rep.matches_conjecture:
            return False, str(rep)
        for rel in generate_relations(w):
            b = eval_formal(rel.combo, 100)
            if not b.contains_zero():
                return False, f'{rel.label} does not vanish: {b}'
    return True, 'upper bounds ' + ' '.join(map(str, got)) + ' for w = 2..8'


def check_counting() -> Outcome:
    for w in range(2, 17):
        n = len(enumerate_admissible(w))
        if n != 2 ** (w - 2):
            return False, f'{n} admissible indices of weight {w}'
    d = d_sequence(40)
    for w in range(2, 41):
        n = len(enumerate_hoffman(w))
        if n != d[w]:
            return False, f'{n} Hoffman indices of weight {w}, d_{w} = {d[w]}'
    return True, '2^(w-2) admissible for w <= 16, d_w Hoffman indices for w <= 40'


_SPOT = {
    MzvIndex.of(4): {MzvIndex.of(2, 2): Fraction(4, 3)},
    MzvIndex.of(5): {MzvIndex.of(2, 3): Fraction(6, 5), MzvIndex.of(3, 2): Fraction(4, 5)},
}


def _spot_pslq(target: MzvIndex, coeffs: dict[MzvIndex, Fraction]) -> bool:
    from .lindep.pslq import NoRelationBelow, find_relation

    basis = sorted(coeffs, key=lambda t: t.parts)

    def evaluate(p: int) -> list[Ball]:
        return [eval_mzv(target, p)] + [eval_mzv(b, p) for b in basis]

    res = find_relation(evaluate, 256, 32)
    if isinstance(res, NoRelationBelow):
        return False
    # c0 * target + sum c_b * b = 0, so target = sum (-c_b / c0) * b
    c0, *cs = res.coefficients
    return c0 != 0 and all(Fraction(-c, c0) == coeffs[b] for c, b in zip(cs, basis))


def check_hoffman_reduction(*, sweep: bool) -> Outcome:
    from .relations import hoffman_reduce

    for target, expected in _SPOT.items():
        red = unwrap(hoffman_reduce(target, prec=100))
        if red.coefficients != expected:
            return False, f'{red}'
        if not _spot_pslq(target, expected):
            return False, f'PSLQ disagrees with {red}'
    if not sweep:
        return True, 'spot vectors (4) and (5) confirmed by PSLQ, weight sweep skipped'
    reductions = (hoffman_reduce(idx, prec=100) for w in range(2, 9) for idx in enumerate_admissible(w))
    done, failed = split_errors(reductions, ET=NotExpressible)
    count = ilen(done)
    failures = list(failed)
    if failures:
        return False, f'{len(failures)} indices do not reduce, e.g. {failures[0]}'
    return True, f'all {count} admissible indices of weight <= 8 reduce to the Hoffman basis'


def check_pslq() -> Outcome:
    from .lindep.pslq import NoRelationBelow, RelationCandidate, find_relation

    def golden(p: int) -> list[Ball]:
        phi = (Ball.from_int(5).sqrt(p + 4) + 1).div_int(2, p + 4)
        return [Ball.from_int(1), phi, phi * phi]

    res = find_relation(golden, 128, 16)
    if not (isinstance(res, RelationCandidate) and res.coefficients == (1, 1, -1)):
        return False, f'golden ratio: {res}'

    res = find_relation(lambda p: [eval_mzv(MzvIndex.of(2, 1), p), eval_mzv(MzvIndex.of(3), p)], 256, 32)
    if not (isinstance(res, RelationCandidate) and res.coefficients == (1, -1)):
        return False, f'ζ(2,1), ζ(3): {res}'

    res = find_relation(lambda p: [Ball.from_int(1), eval_mzv(MzvIndex.of(3), p)], 256, 20)
    if not (isinstance(res, NoRelationBelow) and res.below(20)):
        return False, f'1, ζ(3): {res}'
    return True, f'golden ratio and Euler relations found; 1, ζ(3): {res}'


def check_certificates(*, large: bool) -> Outcome:
    from .lindep.certificate import certify_corollary

    expected = {MzvIndex.of(*p) for p in [(2, 3), (3, 2), (2, 2, 3), (2, 3, 2), (3, 2, 2)]}
    cert = certify_corollary(1, 512, max_coeff_bits=32)
    if set(cert.candidate_set) != expected:
        return False, f'candidate set {[str(t) for t in cert.candidate_set]}'
    if not (cert.found and set(cert.subset_I) <= {5, 7}):
        return False, f'l=1: I = {list(cert.subset_I)}, vectors {cert.vectors}'
    detail = f'l=1: I = {list(cert.subset_I)}, t = {", ".join(str(t) for t in cert.vectors.values())}'
    if not large:
        return True, detail + '; l=5 skipped'
    cert5 = certify_corollary(5, 512, max_coeff_bits=32)
    if not cert5.found:
        return False, f'l=5: I = {list(cert5.subset_I)}, vectors {cert5.vectors}'
    return True, detail + f'; l=5: I = {list(cert5.subset_I)}'


def check_growth() -> Outcome:
    d = d_sequence(60)
    ratio = Fraction(d[60], d[59])
    a = alpha(64)
    err = abs(ratio - a.mid())
    if err >= Fraction(1, 1000):
        return False, f'd_60/d_59 = {float(ratio):.6f}, α = {a}'
    return True, f'd_60/d_59 = {float(ratio):.6f}, α = {a}'


def check_lemma(seed: int, count: int = 1000) -> Outcome:
    from .lindep.lemma import lemma1_eliminate, random_form_pair, y

    rng = random.Random(seed)
    for _ in range(count):
        f1, f2, p = random_form_pair(rng)
        res = lemma1_eliminate(f1, f2, p)
        if res[y(p)] != f1.coeff(p) * f2.a:
            return False, f'{f1} / {f2}, p={p}: {res}'
    return True, f'{count} random form pairs (seed {seed})'


def _checks(quick: bool, seed: int) -> Iterator[tuple[int, str, Callable[[], Outcome]]]:
    yield 1, 'closed form', check_closed_form
    yield 2, 'stuffle identity', check_stuffle_identity
    yield 3, 'Euler/duality', check_euler
    yield 4, 'dimension bounds', check_dimension_bounds
    yield 5, 'counting', check_counting
    yield 6, 'Hoffman reduction', lambda: check_hoffman_reduction(sweep=not quick)
    yield 7, 'PSLQ', check_pslq
    yield 8, 'certificates', lambda: check_certificates(large=not quick)
    yield 9, 'growth', check_growth
    yield 10, 'elimination step', lambda: check_lemma(seed)


def run_battery(*, quick: bool = False, seed: int | None = None) -> BatteryReport:
    if seed is None:
        from .core.core_config import config

        seed = config.seed
    items: list[CheckResult] = []
    for number, title, check in _checks(quick, seed):
        start = time.monotonic()
        try:
            passed, detail = check()
        except Exception as e:
            logger.exception(e)
            passed, detail = False, f'{type(e).__name__}: {e}'
        logger.info(f'{number}. {title}: {"ok" if passed else "FAILED"} in {time.monotonic() - start:.1f}s')
        items.append(CheckResult(number=number, title=title, passed=passed, detail=detail))
    return BatteryReport(items=items, quick=quick, seed=seed)
