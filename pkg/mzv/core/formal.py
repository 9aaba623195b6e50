'''
Finite Q-linear combinations of indices or of words.
'''

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Mapping
from fractions import Fraction
from typing import Generic, TypeVar, Union

from .index import BinaryWord, MzvIndex, sort_key

K = TypeVar('K', MzvIndex, BinaryWord)
K2 = TypeVar('K2', MzvIndex, BinaryWord)

Scalar = Union[int, Fraction]


def _key_order(k: MzvIndex | BinaryWord) -> tuple[int, int]:
    if isinstance(k, MzvIndex):
        return sort_key(k)
    return (len(k), k.bits)


def _key_weight(k: MzvIndex | BinaryWord) -> int:
    return k.weight if isinstance(k, MzvIndex) else len(k)


class FormalSum(Generic[K]):
    '''
    Immutable. Coefficients are Fractions, zero coefficients are never stored.
    '''

    __slots__ = ('_terms',)

    def __init__(self, terms: Mapping[K, Scalar] | Iterable[tuple[K, Scalar]] = ()) -> None:
        acc: dict[K, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for k, c in items:
            acc[k] = acc.get(k, Fraction(0)) + Fraction(c)
        self._terms: dict[K, Fraction] = {k: c for k, c in acc.items() if c != 0}

    @classmethod
    def single(cls, key: K, coeff: Scalar = 1) -> FormalSum[K]:
        return cls({key: coeff})

    @property
    def terms(self) -> Mapping[K, Fraction]:
        return self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return len(self._terms) > 0

    def __iter__(self) -> Iterator[K]:
        return iter(self._terms)

    def __getitem__(self, key: K) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def __contains__(self, key: object) -> bool:
        return key in self._terms

    def items(self) -> list[tuple[K, Fraction]]:
        '''terms in enumeration order'''
        return sorted(self._terms.items(), key=lambda kv: _key_order(kv[0]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: FormalSum[K]) -> FormalSum[K]:
        return FormalSum([*self._terms.items(), *other._terms.items()])

    def __neg__(self) -> FormalSum[K]:
        return FormalSum({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: FormalSum[K]) -> FormalSum[K]:
        return self + (-other)

    def __mul__(self, scalar: Scalar) -> FormalSum[K]:
        return FormalSum({k: c * scalar for k, c in self._terms.items()})

    __rmul__ = __mul__

    def map_keys(self, f: Callable[[K], K2]) -> FormalSum[K2]:
        return FormalSum([(f(k), c) for k, c in self._terms.items()])

    def weights(self) -> set[int]:
        return {_key_weight(k) for k in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def weight(self) -> int | None:
        '''the common weight, None for the empty sum; raises if not homogeneous'''
        ws = self.weights()
        if len(ws) == 0:
            return None
        if len(ws) > 1:
            raise ValueError(f'not weight-homogeneous: weights {sorted(ws)}')
        [w] = ws
        return w

    def coefficient_mass(self) -> Fraction:
        return sum(self._terms.values(), Fraction(0))

    def __str__(self) -> str:
        if not self._terms:
            return '0'
        chunks: list[str] = []
        for i, (k, c) in enumerate(self.items()):
            sign = '-' if c < 0 else '+'
            a = abs(c)
            body = str(k) if a == 1 else f'{a}*{k}'
            if i == 0:
                chunks.append(body if sign == '+' else f'-{body}')
            else:
                chunks.append(f'{sign} {body}')
        return ' '.join(chunks)

    def __repr__(self) -> str:
        return f'FormalSum({self})'

    def signed_terms(self) -> str:
        '''the relation dump flavour: every coefficient explicit and signed, e.g. "+1*(5) -4*(3,1)"'''
        return ' '.join(f'{"+" if c > 0 else "-"}{abs(c)}*{k}' for k, c in self.items())

    def _serialize(self) -> dict[str, str]:
        return {(k.key if isinstance(k, MzvIndex) else str(k)): str(c) for k, c in self.items()}
