import json
from pathlib import Path

import mpmath
import pytest
from click.testing import CliRunner

from ..__main__ import main, run


def invoke(*args: str):
    return CliRunner().invoke(main, list(args))


def test_dims() -> None:
    res = invoke('dims', '--max', '7')
    assert res.exit_code == 0, res.output
    assert res.stdout.strip() == '1 0 1 1 1 2 2 3'


def test_product() -> None:
    res = invoke('product', '--stuffle', '3', '2')
    assert res.exit_code == 0, res.output
    assert res.stdout.strip() == '(5) + (3,2) + (2,3)'

    res = invoke('product', '--shuffle', '2', '2')
    assert res.exit_code == 0, res.output
    # x0x1 ш x0x1 = 4 x0x0x1x1 + 2 x0x1x0x1
    assert res.stdout.strip() == '4*(3,1) + 2*(2,2)'


def test_eval_digits() -> None:
    res = invoke('eval', '2', '--prec', '64')
    assert res.exit_code == 0, res.output
    out = res.stdout.strip()
    assert out.startswith('ζ(2) = ')
    digits = out.split(' = ')[1].rstrip('…')
    with mpmath.workdps(40):
        expected = mpmath.nstr(mpmath.pi**2 / 6, 30, strip_zeros=False)
    assert len(digits) > 15
    assert expected.startswith(digits)


def test_json_output() -> None:
    res = invoke('--json', 'eval', '2,1', '--prec', '64')
    assert res.exit_code == 0, res.output
    j = json.loads(res.stdout)
    assert j['index'] == '2,1'
    assert j['prec_bits'] == 64
    assert j['ball']['radius_exp'] <= -64

    for args in [('dims', '--max', '5'), ('product', '3', '2'), ('reduce', '4')]:
        res = invoke('--json', *args)
        assert res.exit_code == 0, res.output
        json.loads(res.stdout)


def test_reduce() -> None:
    res = invoke('reduce', '4')
    assert res.exit_code == 0, res.output
    assert res.stdout.strip() == '(4) = 4/3*(2,2)'

    # duality alone can't reach the Hoffman basis
    res = invoke('reduce', '4', '--families', 'duality')
    assert res.exit_code == 1
    assert 'not expressible' in res.stdout


def test_usage_errors() -> None:
    for args in [
        ('eval', '0,2'),  # not an index
        ('eval', '1,2'),  # divergent
        ('relations', '--weight', '40'),  # above max_weight
        ('bound', '--weight', '4', '--families', 'bogus'),
        ('nonsense',),
        ('eval', '2', '--prec', '8'),
    ]:
        res = invoke(*args)
        assert res.exit_code == 2, (args, res.output)


def test_pslq() -> None:
    res = invoke('pslq', '--indices', '2,1;3', '--prec', '128', '--max-coeff-bits', '16')
    assert res.exit_code == 0, res.output
    assert res.stdout.strip() == 'ζ(2,1) - ζ(3) = 0'

    res = invoke('pslq', '--indices', '1;3', '--prec', '256', '--max-coeff-bits', '20')
    assert res.exit_code == 1, res.output
    assert 'no relation' in res.stdout

    # not enough bits for 32-bit coefficients on two values
    res = invoke('pslq', '--indices', '2,1;3', '--prec', '64', '--max-coeff-bits', '32')
    assert res.exit_code == 2, res.output


def test_relations_and_bound() -> None:
    res = invoke('relations', '--weight', '4')
    assert res.exit_code == 0, res.output
    lines = res.stdout.strip().splitlines()
    assert 'DUALITY[(4)]: +1*(4) -1*(2,1,1)' in lines
    assert all(':' in l for l in lines)

    res = invoke('--json', 'bound', '--weight', '5')
    assert res.exit_code == 0, res.output
    j = json.loads(res.stdout)
    assert j['upper_bound'] == 2
    assert j['matches_conjecture'] is True


def test_cache(default_config, tmp_path: Path) -> None:
    cpath = tmp_path / 'balls.jsonl'
    default_config.cache_path = str(cpath)

    res = invoke('--no-cache', 'eval', '3', '--prec', '64')
    assert res.exit_code == 0, res.output
    assert not cpath.exists()

    first = invoke('eval', '3', '--prec', '64')
    assert cpath.exists()
    second = invoke('eval', '3', '--prec', '64')
    assert first.stdout == second.stdout

    res = invoke('cache', 'show')
    assert '3 @ 64 bits' in res.stdout
    res = invoke('cache', 'clear')
    assert 'removed 1 entries' in res.stdout
    assert not cpath.exists()


def test_run() -> None:
    assert run(['dims', '--max', '3']) == 0
    assert run(['nonsense']) == 2
    assert run(['reduce', '4', '--families', 'duality']) == 1


@pytest.mark.slow
def test_certify() -> None:
    res = invoke('certify', '--l', '1', '--prec', '512')
    assert res.exit_code == 0, res.output
    assert 'experimental evidence, not proof' in res.stdout


def test_cache_precision_independent(default_config, tmp_path: Path) -> None:
    default_config.cache_path = str(tmp_path / 'balls.jsonl')
    cold = invoke('--no-cache', 'eval', '3,2', '--prec', '64')
    assert cold.exit_code == 0, cold.output

    # a finer entry in the cache must not leak extra digits into a coarser request
    assert invoke('eval', '3,2', '--prec', '128').exit_code == 0
    warm = invoke('eval', '3,2', '--prec', '64')
    assert warm.stdout == cold.stdout
    again = invoke('eval', '3,2', '--prec', '64')
    assert again.stdout == cold.stdout
