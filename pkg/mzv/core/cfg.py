from __future__ import annotations

from collections.abc import Callable, Iterator
from contextlib import contextmanager
from dataclasses import fields
from typing import Any, TypeVar

Attrs = dict[str, Any]

C = TypeVar('C')


def make_config(cls: type[C], migration: Callable[[Attrs], Attrs] = lambda x: x) -> C:
    '''
    Builds the config dataclass from its base class (the user section), passing the attributes through migration first.
    Attributes that aren't fields of cls are ignored.
    '''
    user_config = cls.__base__
    old_props = {
        # NOTE: deliberately use getattr to 'force' class properties here
        k: getattr(user_config, k)
        for k in vars(user_config)
        if not k.startswith('__')
    }
    new_props = migration(old_props)
    names = {f.name for f in fields(cls)}  # type: ignore[arg-type]
    params = {k: v for k, v in new_props.items() if k in names}
    return cls(**params)


F = TypeVar('F')


@contextmanager
def override_config(config: F) -> Iterator[F]:
    '''
    Temporary override for config's parameters, useful for testing
    '''
    orig_properties = {k: v for k, v in vars(config).items() if not k.startswith('__')}
    try:
        yield config
    finally:
        for k, v in orig_properties.items():
            setattr(config, k, v)
        added = {k for k in set(vars(config).keys()).difference(set(orig_properties.keys())) if not k.startswith('__')}
        for k in added:
            delattr(config, k)


def test_override_config() -> None:
    class section:
        prec_bits = 128

    with override_config(section) as s:
        s.prec_bits = 256
        s.extra = 'whatever'  # type: ignore[attr-defined]
        assert section.prec_bits == 256
    assert section.prec_bits == 128
    assert not hasattr(section, 'extra')
