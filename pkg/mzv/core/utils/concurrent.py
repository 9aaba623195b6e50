from __future__ import annotations

from collections.abc import Callable
from concurrent.futures import Executor, Future, ProcessPoolExecutor
from typing import Any, ParamSpec, TypeVar

_P = ParamSpec('_P')
_T = TypeVar('_T')


# https://stackoverflow.com/a/10436851/706389
class DummyExecutor(Executor):
    """
    Runs everything in the calling process, so code written against Executor
    can run serially (the default, and handy for debugging)
    """

    def __init__(self, max_workers: int | None = 1) -> None:
        self._shutdown = False
        self._max_workers = max_workers

    def submit(self, fn: Callable[_P, _T], /, *args: _P.args, **kwargs: _P.kwargs) -> Future[_T]:
        if self._shutdown:
            raise RuntimeError('cannot schedule new futures after shutdown')

        f: Future[Any] = Future()
        try:
            result = fn(*args, **kwargs)
        except KeyboardInterrupt:
            raise
        except BaseException as e:
            f.set_exception(e)
        else:
            f.set_result(result)

        return f

    def shutdown(self, wait: bool = True, **kwargs) -> None:  # noqa: FBT001,FBT002,ARG002
        self._shutdown = True


def get_executor(workers: int | None = None) -> Executor:
    '''
    Process pool sized by MZV_CPU_POOL (config.cpu_pool), or a serial executor when it's 0.
    Executor.map keeps submission order, so merged results stay deterministic either way.
    '''
    if workers is None:
        from ..core_config import config

        workers = config.cpu_pool
    if workers <= 0:
        return DummyExecutor()
    return ProcessPoolExecutor(max_workers=workers)


def test_dummy_executor_keeps_order() -> None:
    import pytest

    with get_executor(0) as pool:
        assert list(pool.map(lambda x: x * x, [3, 1, 2])) == [9, 1, 4]
        fut = pool.submit(int, 'nope')
        with pytest.raises(ValueError):
            fut.result()
