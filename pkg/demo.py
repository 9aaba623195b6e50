#!/usr/bin/env python3
import os
import tempfile
from contextlib import contextmanager
from pathlib import Path
from shutil import rmtree
from subprocess import check_call
from sys import executable as python

mzv_repo = Path(__file__).absolute().parent


def run(cache: Path) -> None:
    """
    running should result in something like this:

    1 1 1 2 2 3 4 5 7 9 12 16 21
    ζ(2,1) = 1.2020569031595942853997381615114499907…
    (5) = 6/5*(2,3) + 4/5*(3,2)
    weight 6: ... dimension <= 2 (matches d_6 = 2)
    ζ(2,1) - ζ(3) = 0
    """
    env = {
        **os.environ,
        # this is just to prevent the demo from touching the user's cache
        'MZV_CACHE_PATH': str(cache),
    }

    def mzv(*args: str) -> None:
        check_call([python, '-m', 'mzv.core', *args], cwd=mzv_repo, env=env)

    mzv('dims', '--max', '14')
    mzv('eval', '2,1', '--prec', '128')
    mzv('reduce', '5')
    mzv('bound', '--weight', '6')
    mzv('pslq', '--indices', '2,1;3', '--prec', '256')
    # the second evaluation of ζ(2,1) comes from the cache
    mzv('cache', 'show')


@contextmanager
def named_temp_dir(name: str):
    """
    Create a unique temporary directory and return a path that includes the specified name.
    """
    unique_temp_dir = Path(tempfile.mkdtemp())
    td = unique_temp_dir / name
    try:
        td.mkdir()
        yield td
    finally:
        rmtree(str(unique_temp_dir), ignore_errors=True)


def main():
    with named_temp_dir('mzv_demo') as tdir:
        run(tdir / 'balls.jsonl')


if __name__ == '__main__':
    main()
