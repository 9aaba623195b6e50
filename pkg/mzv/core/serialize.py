from __future__ import annotations

import enum
from collections.abc import Callable
from dataclasses import fields, is_dataclass
from fractions import Fraction
from functools import cache
from pathlib import Path
from typing import Any

from .error import error_to_json

DefaultEncoder = Callable[[Any], Any]

Dumps = Callable[[Any], str]


def _dataclass_to_dict(obj: Any) -> dict[str, Any]:
    # asdict() would recurse into fields and lose their _serialize, so only go one level deep
    if hasattr(obj, '_serialize'):
        return obj._serialize()
    return {f.name: getattr(obj, f.name) for f in fields(obj)}


def _default_encode(obj: Any) -> Any:
    """
    Encodes lab types to JSON-compatible representations before they're serialized.
    Exact values stay exact: fractions become "p/q" strings, balls their dyadic hex form.
    """
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, enum.Enum):
        return obj.name
    if isinstance(obj, Path):
        return str(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj, key=str)
    if isinstance(obj, tuple):
        return list(obj)
    if is_dataclass(obj):
        assert not isinstance(obj, type)  # to help mypy
        return _dataclass_to_dict(obj)
    if isinstance(obj, Exception):
        return error_to_json(obj)
    # note: _serialize is the hook for anything that isn't a dataclass, e.g. FormalSum
    if hasattr(obj, '_serialize') and callable(obj._serialize):
        return obj._serialize()
    raise TypeError(f"Could not serialize object of type {type(obj).__name__}")


def _prepare(obj: Any, default: DefaultEncoder | None = None) -> Any:
    '''
    orjson serializes dataclasses and tuples natively, bypassing 'default',
    so lab objects are lowered to plain containers first
    '''
    if isinstance(obj, int) and not isinstance(obj, bool) and abs(obj) >= 1 << 63:
        # orjson only takes 64 bit integers
        return str(obj)
    if obj is None or isinstance(obj, (str, int, float, bool)):
        return obj
    if isinstance(obj, dict):
        return {(k if isinstance(k, str) else str(k)): _prepare(v, default) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_prepare(x, default) for x in obj]
    if default is not None:
        try:
            return _prepare(default(obj), default)
        except TypeError:
            # expected, signifies the custom serializer couldn't handle it
            pass
    return _prepare(_default_encode(obj), default)


@cache
def _dumps_factory(**kwargs) -> Callable[[Any], str]:
    kwargs["default"] = _default_encode

    prefer_factory: str | None = kwargs.pop('_prefer_factory', None)

    def orjson_factory() -> Dumps | None:
        try:
            import orjson
        except ModuleNotFoundError:
            return None

        def _orjson_dumps(obj: Any) -> str:
            # orjson returns json as bytes, encode to string
            return orjson.dumps(obj, **kwargs).decode('utf-8')

        return _orjson_dumps

    def simplejson_factory() -> Dumps | None:
        try:
            from simplejson import dumps as simplejson_dumps
        except ModuleNotFoundError:
            return None

        # orjson is rust-based and might not build on rarer architectures
        def _simplejson_dumps(obj: Any) -> str:
            return simplejson_dumps(obj, **kwargs)

        return _simplejson_dumps

    def stdlib_factory() -> Dumps | None:
        import json

        from .warnings import high

        high("You might want to install 'orjson' for faster serialization! If that does not work for you, you can install 'simplejson' instead")

        def _stdlib_dumps(obj: Any) -> str:
            return json.dumps(obj, **kwargs)

        return _stdlib_dumps

    factories = {
        'orjson': orjson_factory,
        'simplejson': simplejson_factory,
        'stdlib': stdlib_factory,
    }

    if prefer_factory is not None:
        factory = factories[prefer_factory]
        res = factory()
        assert res is not None, prefer_factory
        return res

    for factory in factories.values():
        res = factory()
        if res is not None:
            return res
    raise RuntimeError("Should not happen!")


def dumps(
    obj: Any,
    default: DefaultEncoder | None = None,
    **kwargs,
) -> str:
    """
    Any additional arguments are forwarded -- either to orjson.dumps,
    simplejson.dumps or json.dumps if neither is installed.

    Any class/instance can implement a `_serialize` function, which is used
    to convert it to a JSON-compatible representation.

    'default' is called before _default_encode, and should raise a TypeError if
    it's not able to serialize the type.
    """
    return _dumps_factory(**kwargs)(_prepare(obj, default))


def to_jsonable(obj: Any) -> Any:
    '''plain dicts/lists/strings, e.g. for schema checks in tests'''
    return _prepare(obj)


__all__ = ['dumps', 'to_jsonable']
