"""
Error types and helpers for errors-as-values.

Bad input raises a subclass of MzvError (a ValueError, so click and callers can treat them uniformly).
Mathematical non-results (a value that the relation families can't reduce) are *returned*, see Res.
"""

from __future__ import annotations

import traceback
from collections.abc import Iterable
from itertools import tee
from typing import TypeVar, Union

from .types import Json

T = TypeVar('T')
E = TypeVar('E', bound=Exception)

ResT = Union[T, E]

Res = ResT[T, Exception]


class MzvError(ValueError):
    """Used to differentiate input/precondition errors, so the CLI can report them as usage errors"""


class InvalidIndex(MzvError):
    pass


class MalformedWord(MzvError):
    pass


class NotAdmissible(InvalidIndex):
    pass


class WeightOutOfRange(MzvError):
    pass


class DivergentWord(MzvError):
    pass


class SeriesDidNotConverge(MzvError):
    pass


class InsufficientPrecision(MzvError):
    pass


class DegenerateInput(MzvError):
    pass


class PreconditionFailed(MzvError):
    pass


class InconsistentRelation(RuntimeError):
    """
    Something that must hold identically didn't, e.g. divergent terms of a Hoffman relation
    failed to cancel or a reduction residual excludes zero. Always a bug.
    """


class NotExpressible(Exception):
    """
    The available relation families don't pin the target down in the requested span.
    Returned, not raised: the underlying conjecture is open, so this is an honest answer.
    """

    def __init__(self, target: object, reason: str) -> None:
        super().__init__(f'{target}: {reason}')
        self.target = target
        self.reason = reason


def unwrap(res: Res[T]) -> T:
    if isinstance(res, Exception):
        raise res
    return res


def split_errors(l: Iterable[ResT[T, E]], ET: type[E]) -> tuple[Iterable[T], Iterable[E]]:
    vit, eit = tee(l)
    values: Iterable[T] = (
        r  # type: ignore[misc]
        for r in vit
        if not isinstance(r, ET))
    errors: Iterable[E] = (
        r
        for r in eit
        if     isinstance(r, ET))
    return (values, errors)


def error_to_json(e: Exception) -> Json:
    if isinstance(e, NotExpressible):
        # expected outcome, traceback is just noise
        return {'error': type(e).__name__, 'target': str(e.target), 'reason': e.reason}
    estr = ''.join(traceback.format_exception(Exception, e, e.__traceback__))
    return {'error': estr}


def test_split_errors() -> None:
    ress: list[Res[int]] = [1, NotExpressible('(5)', 'no pivot'), 2, KeyError('x')]
    vals, errs = split_errors(ress, ET=NotExpressible)
    v = list(vals)
    assert v[:2] == [1, 2]
    assert isinstance(v[2], KeyError)
    [e] = list(errs)
    assert e.reason == 'no pivot'


def test_unwrap() -> None:
    import pytest

    assert unwrap(5) == 5
    with pytest.raises(NotExpressible, match='no pivot'):
        unwrap(NotExpressible('(4)', 'no pivot'))
