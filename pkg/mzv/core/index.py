'''
Indices (compositions) and their binary words.

An index (s_1, ..., s_l) is encoded as the word x0^{s_1-1} x1 x0^{s_2-1} x1 ... x0^{s_l-1} x1.
Letters are stored as ints: 0 for x0, 1 for x1, so a word doubles as a bit string.
'''

from __future__ import annotations

import re
from collections.abc import Iterator
from dataclasses import dataclass
from functools import lru_cache

from .error import InvalidIndex, MalformedWord, NotAdmissible, WeightOutOfRange

X0 = 0
X1 = 1


@dataclass(frozen=True, slots=True)
class MzvIndex:
    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.parts) == 0:
            raise InvalidIndex('index must have at least one part')
        for p in self.parts:
            if not isinstance(p, int) or isinstance(p, bool) or p < 1:
                raise InvalidIndex(f'parts must be positive integers, got {self.parts}')

    @classmethod
    def of(cls, *parts: int) -> MzvIndex:
        return cls(tuple(parts))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def depth(self) -> int:
        return len(self.parts)

    @property
    def admissible(self) -> bool:
        return self.parts[0] >= 2

    @property
    def key(self) -> str:
        '''canonical string, e.g. "3,2,2"'''
        return ','.join(map(str, self.parts))

    def check_admissible(self) -> MzvIndex:
        if not self.admissible:
            raise NotAdmissible(f'{self}: first part must be >= 2 for the series to converge')
        return self

    def __str__(self) -> str:
        return f'({self.key})'

    def _serialize(self) -> str:
        return self.key


@dataclass(frozen=True, slots=True)
class BinaryWord:
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(c not in (X0, X1) for c in self.letters):
            raise MalformedWord(f'letters must be 0 (x0) or 1 (x1), got {self.letters}')

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: BinaryWord) -> BinaryWord:
        return BinaryWord(self.letters + other.letters)

    @property
    def bits(self) -> int:
        '''the word read as a binary number, x0=0, x1=1, most significant letter first'''
        v = 0
        for c in self.letters:
            v = (v << 1) | c
        return v

    @property
    def admissible(self) -> bool:
        '''starts with x0 and ends with x1, i.e. encodes a convergent zeta value'''
        return len(self.letters) > 0 and self.letters[0] == X0 and self.letters[-1] == X1

    def __str__(self) -> str:
        if len(self.letters) == 0:
            return 'ε'
        return ''.join(f'x{c}' for c in self.letters)

    def _serialize(self) -> str:
        return str(self)


EMPTY_WORD = BinaryWord(())


def weight(index: MzvIndex) -> int:
    return index.weight


def index_to_word(index: MzvIndex) -> BinaryWord:
    letters: list[int] = []
    for s in index.parts:
        letters.extend([X0] * (s - 1))
        letters.append(X1)
    return BinaryWord(tuple(letters))


def word_to_index(word: BinaryWord) -> MzvIndex:
    if len(word) == 0 or word.letters[-1] != X1:
        raise MalformedWord(f'{word}: an index word must end in x1')
    parts: list[int] = []
    run = 0
    for c in word.letters:
        if c == X0:
            run += 1
        else:
            parts.append(run + 1)
            run = 0
    return MzvIndex(tuple(parts))


def tau(word: BinaryWord) -> BinaryWord:
    '''reverse the word and swap x0 <-> x1'''
    return BinaryWord(tuple(1 - c for c in reversed(word.letters)))


def dual(index: MzvIndex) -> MzvIndex:
    index.check_admissible()
    return word_to_index(tau(index_to_word(index)))


def sort_key(index: MzvIndex) -> tuple[int, int]:
    '''enumeration order: by weight, then by the word read as bits'''
    return (index.weight, index_to_word(index).bits)


_SPLIT = re.compile(r'\s*,\s*')


def parse_index(text: str) -> MzvIndex:
    '''
    "3,2,2" or "(3,2,2)" -> MzvIndex((3, 2, 2))
    '''
    s = text.strip()
    if s.startswith('(') and s.endswith(')'):
        s = s[1:-1].strip()
    if s == '':
        raise InvalidIndex(f'empty index: {text!r}')
    parts: list[int] = []
    for chunk in _SPLIT.split(s):
        try:
            p = int(chunk)
        except ValueError as e:
            raise InvalidIndex(f'{text!r}: {chunk!r} is not an integer') from e
        if p < 1:
            raise InvalidIndex(f'{text!r}: parts must be >= 1, got {p}')
        parts.append(p)
    return MzvIndex(tuple(parts))


def parse_word(text: str) -> BinaryWord:
    '''
    "x0x1x1", "011", "" and "ε" (empty word)
    '''
    s = text.strip()
    if s in ('', 'ε'):
        return EMPTY_WORD
    if re.fullmatch(r'(x[01])+', s):
        return BinaryWord(tuple(int(c) for c in s[1::2]))
    if re.fullmatch(r'[01]+', s):
        return BinaryWord(tuple(int(c) for c in s))
    raise MalformedWord(f'cannot parse word {text!r}')


def _check_weight(w: int, *, limit: int | None) -> None:
    if w < 2:
        raise WeightOutOfRange(f'weight must be >= 2, got {w}')
    if limit is not None and w > limit:
        raise WeightOutOfRange(f'weight {w} is above the enumeration limit {limit} (MZV_ENUM_MAX_WEIGHT)')


def iter_admissible(w: int) -> Iterator[MzvIndex]:
    # admissible words of length w are the bit strings 0...1, i.e. the odd numbers below 2^(w-1)
    for v in range(1, 1 << (w - 1), 2):
        letters = tuple((v >> (w - 1 - i)) & 1 for i in range(w))
        yield word_to_index(BinaryWord(letters))


def enumerate_admissible(w: int, *, limit: int | None = None) -> list[MzvIndex]:
    '''
    All 2^(w-2) admissible indices of weight w, ordered by their word read as bits
    '''
    if limit is None:
        from .core_config import config

        limit = config.enum_max_weight
    _check_weight(w, limit=limit)
    return list(_admissible_cached(w))


@lru_cache(None)
def _admissible_cached(w: int) -> tuple[MzvIndex, ...]:
    return tuple(iter_admissible(w))


def enumerate_hoffman(w: int) -> list[MzvIndex]:
    '''
    Compositions of w into parts 2 and 3, in lexicographic order of parts
    '''
    _check_weight(w, limit=None)
    return [MzvIndex(p) for p in _hoffman_parts(w)]


@lru_cache(None)
def _hoffman_parts(w: int) -> tuple[tuple[int, ...], ...]:
    if w == 0:
        return ((),)
    res: list[tuple[int, ...]] = []
    for first in (2, 3):
        if w >= first:
            res.extend((first, *rest) for rest in _hoffman_parts(w - first))
    return tuple(res)


def is_hoffman(index: MzvIndex) -> bool:
    return all(p in (2, 3) for p in index.parts)

