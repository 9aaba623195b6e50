import pytest

from ..verify import (
    BatteryReport,
    CheckResult,
    check_closed_form,
    check_counting,
    check_euler,
    check_growth,
    check_lemma,
    check_pslq,
    check_stuffle_identity,
    run_battery,
)


@pytest.mark.parametrize(
    'check',
    [check_closed_form, check_counting, check_euler, check_growth, check_pslq, check_stuffle_identity],
)
def test_cheap_checks(check) -> None:
    passed, detail = check()
    assert passed, detail


def test_lemma_check() -> None:
    passed, detail = check_lemma(seed=7, count=200)
    assert passed, detail
    assert detail == '200 random form pairs (seed 7)'


def test_report_render() -> None:
    rep = BatteryReport(
        items=[
            CheckResult(number=1, title='closed form', passed=True, detail='ok'),
            CheckResult(number=2, title='stuffle identity', passed=False, detail='boom'),
        ],
        quick=True,
        seed=0,
    )
    assert not rep.passed
    assert rep.render().splitlines() == [
        '[PASS]  1. closed form: ok',
        '[FAIL]  2. stuffle identity: boom',
        '1/2 checks passed (quick mode: slow parts skipped)',
    ]
    assert rep._serialize()['items'][1] == {'number': 2, 'title': 'stuffle identity', 'passed': False, 'detail': 'boom'}  # type: ignore[index]


def test_failing_check_is_reported(monkeypatch: pytest.MonkeyPatch) -> None:
    from .. import verify

    def broken() -> tuple[bool, str]:
        raise RuntimeError('kaput')

    def checks(quick: bool, seed: int):
        yield 1, 'broken', broken
        yield 2, 'fine', lambda: (True, 'fine')

    monkeypatch.setattr(verify, '_checks', checks)
    rep = run_battery(quick=True, seed=3)
    assert [i.passed for i in rep.items] == [False, True]
    assert rep.items[0].detail == 'RuntimeError: kaput'
    assert rep.seed == 3


@pytest.mark.slow
def test_battery_quick() -> None:
    a = run_battery(quick=True, seed=0)
    assert a.passed, a.render()
    assert len(a.items) == 10
    # no timings in the report, so reruns render identically
    b = run_battery(quick=True, seed=0)
    assert a.render() == b.render()


@pytest.mark.slow
def test_battery_full() -> None:
    rep = run_battery(quick=False)
    assert rep.passed, rep.render()


def test_hoffman_sweep_collects_failures(monkeypatch: pytest.MonkeyPatch) -> None:
    from .. import relations
    from ..core.error import NotExpressible
    from ..verify import _SPOT, check_hoffman_reduction

    real = relations.hoffman_reduce

    def fake(target, *, prec: int = 100):
        if target in _SPOT:
            return real(target, prec=prec)
        if target.weight == 6:
            return NotExpressible(target, 'no pivot')
        return object()

    monkeypatch.setattr(relations, 'hoffman_reduce', fake)
    passed, detail = check_hoffman_reduction(sweep=True)
    assert not passed
    assert detail.startswith('16 indices do not reduce, e.g. ')

    monkeypatch.setattr(relations, 'hoffman_reduce', lambda target, *, prec=100: real(target, prec=prec) if target in _SPOT else object())
    passed, detail = check_hoffman_reduction(sweep=True)
    assert passed, detail
    assert detail == 'all 127 admissible indices of weight <= 8 reduce to the Hoffman basis'
