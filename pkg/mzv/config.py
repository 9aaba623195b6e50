'''
NOTE: you shouldn't modify this file.

It documents the user-overridable settings and provides their defaults.
To change them for a single run, prefer environment variables (MZV_PREC_BITS=256 etc, see mzv.core.core_config).
To change them permanently, put a module called mzv_local_config on your PYTHONPATH with a 'lab' class,
it takes precedence over the section below.
'''

from __future__ import annotations

try:
    from mzv_local_config import lab  # type: ignore[import-not-found]
except ImportError:

    class lab:  # type: ignore[no-redef]
        prec_bits: int = 128
        max_weight: int = 12
