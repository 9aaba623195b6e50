import random
from fractions import Fraction

import pytest

from ..core.error import DegenerateInput, InsufficientPrecision, PreconditionFailed
from ..core.index import MzvIndex
from ..lindep.certificate import (
    DISCLAIMER,
    candidate_set,
    certify_corollary,
    corollary_products,
    even_weight_lower_bound,
)
from ..lindep.lemma import LinearForm, eliminated_value, lemma1_eliminate, random_form_pair, y
from ..lindep.pslq import (
    NoRelationBelow,
    RelationCandidate,
    combination,
    find_relation,
    pslq,
    pslq_many,
    required_prec,
    verify_candidate,
)
from ..numeval.ball import Ball
from ..numeval.series import eval_formal, eval_mzv, product_ball
from ..relations import stuffle


def ix(*parts: int) -> MzvIndex:
    return MzvIndex.of(*parts)


def golden(prec: int) -> list[Ball]:
    phi = (Ball.from_int(5).sqrt(prec + 4) + 1).div_int(2, prec + 4)
    return [Ball.from_int(1), phi, phi * phi]


## pslq


def test_golden_ratio() -> None:
    res = pslq(golden(128), 16)
    assert isinstance(res, RelationCandidate)
    assert res.coefficients == (1, 1, -1)
    assert res.norm == 1
    assert res.residual.contains_zero()
    assert verify_candidate(res, golden(256))


def test_euler() -> None:
    res = find_relation(lambda p: [eval_mzv(ix(2, 1), p), eval_mzv(ix(3), p)], 256, 32)
    assert isinstance(res, RelationCandidate)
    assert res.coefficients == (1, -1)


def test_euler_direct() -> None:
    # zeta(2,1) and zeta(3) evaluate to the same ball, so the relation shows up before the first exchange
    vals = [eval_mzv(ix(2, 1), 256), eval_mzv(ix(3), 256)]
    res = pslq(vals, 32)
    assert isinstance(res, RelationCandidate), res
    assert res.coefficients == (1, -1)
    assert res.residual.contains_zero()


@pytest.mark.parametrize('mult', [1, 2, 3, -5])
def test_exact_multiples(mult: int) -> None:
    x = eval_mzv(ix(5), 200)
    res = pslq([x, x * mult], 16)
    assert isinstance(res, RelationCandidate), res
    expected = (mult, -1) if mult > 0 else (-mult, 1)
    assert res.coefficients == expected


def test_zeta2_squared() -> None:
    # 2 zeta(2)^2 = 5 zeta(4)
    vals = [Ball.from_int(1), eval_mzv(ix(2), 192), product_ball([ix(2), ix(2)], 192), eval_mzv(ix(4), 192)]
    res = pslq(vals, 16)
    assert isinstance(res, RelationCandidate)
    assert res.coefficients == (0, 0, 2, -5)


def test_rationals(rng: random.Random) -> None:
    for _ in range(20):
        q = Fraction(rng.choice([-1, 1]) * rng.randint(1, 1000), rng.randint(1, 1000))
        res = pslq([Ball.from_int(1), Ball.from_fraction(q, 128)], 16)
        assert isinstance(res, RelationCandidate), q
        p, d = q.numerator, q.denominator
        expected = (p, -d) if p > 0 else (-p, d)
        assert res.coefficients == expected


def test_no_relation() -> None:
    res = find_relation(lambda p: [Ball.from_int(1), eval_mzv(ix(3), p)], 256, 20)
    assert isinstance(res, NoRelationBelow)
    assert res.below(20)
    assert not res.exhausted
    assert 'no relation with norm below' in str(res)


def test_pslq_preconditions() -> None:
    with pytest.raises(PreconditionFailed):
        pslq([Ball.from_int(1)], 16)
    with pytest.raises(DegenerateInput):
        pslq([Ball.from_int(1), Ball.zero()], 16)
    with pytest.raises(DegenerateInput):
        pslq([Ball.from_int(1), Ball(1, -200, 1)], 16)
    with pytest.raises(InsufficientPrecision):
        pslq([Ball.from_int(1), eval_mzv(ix(3), 40)], 16)
    assert required_prec(3, 16) == 112


def test_verify_candidate() -> None:
    vals = golden(128)
    bad = RelationCandidate(coefficients=(1, 1, -2), norm=2, residual=combination((1, 1, -1), vals))
    assert not verify_candidate(bad, golden(256))
    with pytest.raises(PreconditionFailed):
        verify_candidate(bad, vals[:2])


def test_pslq_many() -> None:
    tuples = [golden(128), [Ball.from_int(1), Ball.from_fraction(Fraction(3, 7), 128)]]
    res = pslq_many(tuples, 16)
    assert [r.coefficients for r in res] == [(1, 1, -1), (3, -7)]  # type: ignore[union-attr]


## the elimination step


def test_lemma_example() -> None:
    f1 = LinearForm(2, 3, {1: 5}, k=2)
    f2 = LinearForm(1, 0, {2: 7}, k=2)
    assert lemma1_eliminate(f1, f2, 1) == {'1': 3, 'y1': 5, 'y2': -14}


def test_lemma_no_b2() -> None:
    f1 = LinearForm(Fraction(1, 2), 0, {1: 1, 2: -3}, k=2)
    f2 = LinearForm(4, 0, {}, k=2)
    # no x term on either side, so no constant survives
    assert lemma1_eliminate(f1, f2, 2) == {y(1): 4, y(2): -12}


def test_lemma_random(rng: random.Random) -> None:
    for _ in range(1000):
        f1, f2, p = random_form_pair(rng)
        res = lemma1_eliminate(f1, f2, p)
        assert res[y(p)] == f1.coeff(p) * f2.a
        assert res[y(p)] != 0


def test_lemma_values(rng: random.Random) -> None:
    # (A2 f1 - A1 f2) / x at concrete values agrees with the eliminated form
    prec = 96
    for _ in range(20):
        f1, f2, p = random_form_pair(rng, k_max=3)
        x = Ball.from_fraction(Fraction(rng.randint(1, 100), rng.randint(1, 100)), prec)
        ys = {i: Ball.from_fraction(Fraction(rng.randint(-100, 100), rng.randint(1, 100)), prec) for i in range(1, f1.k + 1)}
        lhs = (f1.evaluate(x, ys, prec).scale(f2.a, prec) - f2.evaluate(x, ys, prec).scale(f1.a, prec)).div(x, prec - 16)
        rhs = eliminated_value(lemma1_eliminate(f1, f2, p), ys, prec)
        assert lhs.overlaps(rhs)


def test_lemma_preconditions() -> None:
    with pytest.raises(PreconditionFailed):
        LinearForm(1, 1, {3: 1}, k=2)
    with pytest.raises(PreconditionFailed):
        LinearForm(1, 1, {}, k=0)
    f1 = LinearForm(1, 0, {1: 1}, k=2)
    with pytest.raises(PreconditionFailed, match='no x\\*y2 term'):
        lemma1_eliminate(f1, LinearForm(1, 0, {}, k=2), 2)
    with pytest.raises(PreconditionFailed, match='must not involve'):
        lemma1_eliminate(f1, LinearForm(1, 0, {1: 1}, k=2), 1)
    with pytest.raises(PreconditionFailed, match='nonzero constant'):
        lemma1_eliminate(LinearForm(0, 1, {1: 1}, k=2), LinearForm(1, 0, {}, k=2), 1)
    with pytest.raises(PreconditionFailed):
        lemma1_eliminate(f1, LinearForm(1, 0, {}, k=3), 1)
    with pytest.raises(PreconditionFailed):
        lemma1_eliminate(f1, LinearForm(1, 0, {}, k=2), 3)


## certificates


def test_corollary_products() -> None:
    prods = corollary_products(2)
    assert [k for k, _ in prods] == [1, 2, 3]
    for k, rhs in prods:
        assert rhs == stuffle(ix(3), ix(2 * k))
        diff = product_ball([ix(3), ix(2 * k)], 128) - eval_formal(rhs, 128)
        assert diff.contains_zero()
    with pytest.raises(PreconditionFailed):
        corollary_products(0)


def test_candidate_set() -> None:
    assert candidate_set(1) == [ix(2, 3), ix(3, 2), ix(2, 2, 3), ix(2, 3, 2), ix(3, 2, 2)]


def test_certify_l1() -> None:
    cert = certify_corollary(1, 512, max_coeff_bits=32)
    assert cert.found
    assert set(cert.subset_I) <= {5, 7}
    assert len(cert.subset_I) == 1
    (w,) = cert.subset_I
    assert cert.vectors[w].weight == w
    assert cert.vectors[w] in candidate_set(1)
    assert cert.dimension_lower_bound == 3
    assert cert.not_conditional
    assert cert.disclaimer == DISCLAIMER
    assert len(cert.products_used) == 2
    assert DISCLAIMER in cert.render()


def test_certify_insufficient() -> None:
    with pytest.raises(InsufficientPrecision):
        certify_corollary(1, 64, max_coeff_bits=32)
    with pytest.raises(PreconditionFailed):
        certify_corollary(0, 512)


@pytest.mark.slow
def test_certify_l5() -> None:
    cert = certify_corollary(5, 512, max_coeff_bits=32)
    assert cert.found
    assert len(cert.subset_I) == 5
    assert cert.dimension_lower_bound == 7


def test_even_weight_lower_bound() -> None:
    rep = even_weight_lower_bound(3, 256, max_coeff_bits=32)
    assert rep.certified
    assert rep.dimension_lower_bound == 4
    assert rep.values == [ix(2), ix(2, 2), ix(2, 2, 2)]
    assert 'dim(Q + span over weights 2..6) >= 4' in rep.render()
    with pytest.raises(InsufficientPrecision):
        even_weight_lower_bound(3, 128, max_coeff_bits=32)
