from __future__ import annotations

import functools
import os
import sys
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Any, TypeVar

import click

from .error import MzvError

F = TypeVar('F', bound=Callable[..., Any])

# exit statuses
EXIT_OK = 0
EXIT_NO_RESULT = 1  # a mathematical non-result: NotExpressible, no relation found
EXIT_USAGE = 2


# use click.echo over print since it handles possible Unicode errors,
# strips colors if the output is a file
def eprint(x: str) -> None:
    click.echo(x, err=True)


@dataclass
class Opts:
    json: bool
    cache: bool
    seed: int


def _opts() -> Opts:
    return click.get_current_context().find_object(Opts)  # type: ignore[return-value]


def emit(obj: Any, text: str | None = None) -> None:
    '''JSON (through core.serialize) or the text rendering, depending on --json/--text'''
    if _opts().json:
        from .serialize import dumps

        click.echo(dumps(obj))
    else:
        click.echo(str(obj) if text is None else text)


def handle_errors(f: F) -> F:
    '''bad input surfaces as MzvError: message on stderr and the usage exit status'''

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except MzvError as e:
            eprint(f'error: {e}')
            sys.exit(EXIT_USAGE)

    return wrapper  # type: ignore[return-value]


def _index(text: str):
    from .index import parse_index

    return parse_index(text)


@click.group()
@click.option('--debug', is_flag=True, default=False, help='Show debug logs')
@click.option('--json/--text', 'as_json', default=None, help='Output format (default: MZV_OUTPUT_MODE)')
@click.option('--no-cache', is_flag=True, default=False, help="Don't read or write the ball cache")
@click.option('--seed', type=int, default=None, help='Seed for randomized checks (default: MZV_SEED)')
@click.pass_context
def main(ctx: click.Context, *, debug: bool, as_json: bool | None, no_cache: bool, seed: int | None) -> None:
    '''
    Multiple zeta value laboratory

    Rigorous evaluation, relations and dimension bounds, Hoffman reduction and PSLQ searches
    '''
    # should overwrite anything else in LOGGING_LEVEL_MZV
    if debug:
        os.environ['LOGGING_LEVEL_MZV'] = 'debug'

    from .core_config import config

    ctx.obj = Opts(
        json=(config.output_mode == 'json') if as_json is None else as_json,
        cache=not no_cache,
        seed=config.seed if seed is None else seed,
    )


def _prec_option(default_help: str = 'MZV_PREC_BITS') -> Callable[[F], F]:
    return click.option('--prec', type=click.IntRange(min=16), default=None, help=f'Precision in bits (default: {default_help})')


def _default_prec(prec: int | None) -> int:
    from .core_config import config

    return config.prec_bits if prec is None else prec


@main.command(name='eval', short_help='evaluate ζ(index) as a ball')
@click.argument('INDEX')
@_prec_option()
@click.option('--exact', is_flag=True, help='Print the dyadic midpoint and radius instead of decimal digits')
@handle_errors
def eval_cmd(*, index: str, prec: int | None, exact: bool) -> None:
    '''
    Evaluate the multiple zeta value of INDEX, e.g. "3,2,2" or "(2,1)"

    Prints the decimal digits guaranteed by the ball radius
    '''
    from ..numeval.ball import render
    from ..numeval.series import eval_mzv
    from .cache import cache_get, cache_put, widen_pow2

    idx = _index(index)
    p = _default_prec(prec)
    ball = cache_get(idx.key, p) if _opts().cache else None
    if ball is None:
        # same shape as a cached ball, so the output doesn't depend on the cache
        ball = widen_pow2(eval_mzv(idx, p))
        if _opts().cache:
            cache_put(idx.key, p, ball)
    emit({'index': idx.key, 'prec_bits': p, 'ball': ball}, f'ζ{idx} = {render(ball, exact=exact)}')


@main.command(name='product', short_help='stuffle or shuffle product of two indices')
@click.option('--stuffle', 'kind', flag_value='stuffle', default=True, help='Harmonic (series) product')
@click.option('--shuffle', 'kind', flag_value='shuffle', help='Shuffle (iterated integral) product')
@click.argument('U')
@click.argument('V')
@handle_errors
def product_cmd(*, kind: str, u: str, v: str) -> None:
    '''
    Expand ζ(U)ζ(V) as a formal sum, e.g. "product --stuffle 3 2"
    '''
    from ..relations import shuffle, stuffle
    from .index import index_to_word, word_to_index

    iu, iv = _index(u), _index(v)
    if kind == 'stuffle':
        res = stuffle(iu, iv)
    else:
        res = shuffle(index_to_word(iu), index_to_word(iv)).map_keys(word_to_index)
    emit({'kind': kind, 'factors': [iu.key, iv.key], 'expansion': res}, str(res))


_families_option = click.option(
    '--families',
    default='fds,hoffman,duality',
    show_default=True,
    help='Comma separated relation families',
)


@main.command(name='relations', short_help='dump the relations of a weight')
@click.option('--weight', '-w', type=int, required=True)
@_families_option
@handle_errors
def relations_cmd(*, weight: int, families: str) -> None:
    '''
    Print the relations that make up the weight-W relation matrix, one per line
    '''
    from ..relations import Family, generate_relations, relation_matrix

    fams = Family.parse(families)
    _m, kept = relation_matrix(weight, generate_relations(weight, fams))
    emit(kept, '\n'.join(r.render() for r in kept))


@main.command(name='bound', short_help='dimension upper bound for a weight')
@click.option('--weight', '-w', type=int, required=True)
@_families_option
@handle_errors
def bound_cmd(*, weight: int, families: str) -> None:
    '''
    Upper bound for the dimension of the weight-W span: unknowns minus the relation rank
    '''
    from ..relations import Family, dimension_bound

    emit(dimension_bound(weight, Family.parse(families)))


@main.command(name='reduce', short_help='reduce an index to the Hoffman basis')
@click.argument('INDEX')
@_prec_option('100')
@_families_option
@handle_errors
def reduce_cmd(*, index: str, prec: int | None, families: str) -> None:
    '''
    Express ζ(INDEX) over ζ of indices with parts in {2,3}, checked numerically
    '''
    from ..relations import Family, hoffman_reduce

    res = hoffman_reduce(_index(index), prec=100 if prec is None else prec, families=Family.parse(families))
    if isinstance(res, Exception):
        emit(res, f'not expressible: {res}')
        sys.exit(EXIT_NO_RESULT)
    emit(res)


@main.command(name='dims', short_help='conjectured dimensions d_0..d_W')
@click.option('--max', 'wmax', type=click.IntRange(min=0), required=True)
@handle_errors
def dims_cmd(*, wmax: int) -> None:
    '''
    d_w = d_(w-2) + d_(w-3), printed for w = 0..MAX
    '''
    from .dims import d_sequence

    emit(d_sequence(wmax))


def _constant_or_index(token: str):
    # '1' is the constant one, which has no admissible index
    return None if token.strip() in {'1', '(1)'} else _index(token)


def _render_relation(coeffs: Sequence[int], labels: Sequence[str]) -> str:
    '''"ζ(2,1) - ζ(3) = 0"'''
    chunks: list[str] = []
    for c, l in zip(coeffs, labels):
        if c == 0:
            continue
        body = l if abs(c) == 1 else f'{abs(c)}*{l}'
        if len(chunks) == 0:
            chunks.append(body if c > 0 else f'-{body}')
        else:
            chunks.append(f'{"+" if c > 0 else "-"} {body}')
    return ' '.join(chunks) + ' = 0'


@main.command(name='pslq', short_help='search for an integer relation')
@click.option('--indices', required=True, help='Semicolon separated indices, "1" for the constant, e.g. "1;3"')
@_prec_option()
@click.option('--max-coeff-bits', type=click.IntRange(min=1), default=None, help='Coefficient bound (default: MZV_MAX_COEFF_BITS)')
@handle_errors
def pslq_cmd(*, indices: str, prec: int | None, max_coeff_bits: int | None) -> None:
    '''
    PSLQ on ζ of the given indices. A relation is only reported once it holds at twice the precision.
    '''
    from ..lindep.pslq import NoRelationBelow, find_relation
    from ..numeval.ball import Ball
    from ..numeval.series import eval_mzv
    from .core_config import config

    tokens = [t for t in indices.split(';') if t.strip() != '']
    idxs = [_constant_or_index(t) for t in tokens]
    bits = config.max_coeff_bits if max_coeff_bits is None else max_coeff_bits

    def evaluate(p: int) -> list[Ball]:
        return [Ball.from_int(1) if i is None else eval_mzv(i, p) for i in idxs]

    res = find_relation(evaluate, _default_prec(prec), bits)
    labels = ['1' if i is None else f'ζ{i}' for i in idxs]
    if isinstance(res, NoRelationBelow):
        emit({'values': labels, 'no_relation_below': str(res.bound), 'max_coeff_bits': bits, 'exhausted': res.exhausted}, str(res))
        sys.exit(EXIT_NO_RESULT)
    text = _render_relation(res.coefficients, labels)
    emit({'values': labels, 'relation': list(res.coefficients), 'residual': res.residual}, text)


@main.command(name='certify', short_help='independence certificate for ζ(3)ζ(2k) products')
@click.option('--l', 'l', type=click.IntRange(min=1), required=True)
@click.option('--prec', type=click.IntRange(min=16), default=512, show_default=True)
@handle_errors
def certify_cmd(*, l: int, prec: int) -> None:
    '''
    PSLQ on 1, ζ(3) and l of the products ζ(3)ζ(2k), k = 1..l+1 (experimental evidence, not proof)
    '''
    from ..lindep.certificate import certify_corollary

    cert = certify_corollary(l, prec)
    emit(cert, cert.render())
    if not cert.found:
        sys.exit(EXIT_NO_RESULT)


@main.command(name='lower-bound', short_help='even weight dimension lower bound')
@click.option('--l', 'l', type=click.IntRange(min=1), required=True)
@click.option('--prec', type=click.IntRange(min=16), default=512, show_default=True)
@handle_errors
def lower_bound_cmd(*, l: int, prec: int) -> None:
    '''
    PSLQ on 1, ζ(2), ζ(2,2), ..., ζ(2,...,2) with l twos
    '''
    from ..lindep.certificate import even_weight_lower_bound

    rep = even_weight_lower_bound(l, prec)
    emit(rep, rep.render())
    if not rep.certified:
        sys.exit(EXIT_NO_RESULT)


@main.command(name='hoffman-product', short_help='reduce ζ(U)ζ(V) to the Hoffman basis')
@click.argument('U')
@click.argument('V')
@handle_errors
def hoffman_product_cmd(*, u: str, v: str) -> None:
    from ..relations import product_over_hoffman

    res = product_over_hoffman(_index(u), _index(v))
    if isinstance(res, Exception):
        emit(res, f'not expressible: {res}')
        sys.exit(EXIT_NO_RESULT)
    emit(res)


@main.command(name='verify-paper', short_help='run the acceptance battery')
@click.option('-q', '--quick', is_flag=True, help='Skip the weight sweep and the l=5 certificate')
def verify_paper_cmd(*, quick: bool) -> None:
    '''
    Run every acceptance check and print pass/fail per item
    '''
    from ..verify import run_battery

    report = run_battery(quick=quick, seed=_opts().seed)
    emit(report, report.render())
    if not report.passed:
        sys.exit(EXIT_NO_RESULT)


@main.group(name='cache', short_help='inspect the ball cache')
def cache_grp() -> None:
    '''Work with the cache of evaluated balls (MZV_CACHE_PATH)'''
    pass


@cache_grp.command(name='show', short_help='list cached balls')
def cache_show_cmd() -> None:
    from ..numeval.ball import render
    from .cache import entries

    es = entries()
    emit(es, '\n'.join(f'{e.key} @ {e.prec_bits} bits: {render(e.to_ball())}' for e in es) or 'cache is empty')


@cache_grp.command(name='clear', short_help='remove the cache file')
def cache_clear_cmd() -> None:
    from .cache import cache_clear

    n = cache_clear()
    emit({'removed': n}, f'removed {n} entries')


def run(argv: Sequence[str]) -> int:
    '''
    Runs the CLI in-process, returns the exit status
    '''
    try:
        main.main(args=list(argv), prog_name='mzv', standalone_mode=True)
    except SystemExit as e:
        code = e.code
        if code is None:
            return EXIT_OK
        return code if isinstance(code, int) else EXIT_USAGE
    return EXIT_OK


if __name__ == '__main__':
    # prog_name is so that if this is invoked with python -m mzv.core
    # this still shows mzv in the help text
    main(prog_name='mzv')
