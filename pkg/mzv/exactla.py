'''
Exact sparse linear algebra over Q.

Rows are dicts column -> Fraction with no explicit zeros. Elimination is fraction-free:
rows are cleared of denominators into primitive integer rows, eliminated with integer
combinations, and only the final back-substitution goes back to Fractions.
'''

from __future__ import annotations

from collections.abc import Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from .core.error import NotExpressible, PreconditionFailed, Res
from .core.logging import make_logger

logger = make_logger(__name__)

Row = dict[int, Fraction]
IntRow = dict[int, int]


class QMatrix:
    '''
    Immutable sparse matrix over Q. Column labels default to 0..ncols-1.
    '''

    __slots__ = ('column_labels', 'ncols', 'rows')

    def __init__(
        self,
        ncols: int,
        rows: Iterable[Mapping[int, Fraction | int]] = (),
        column_labels: Sequence[Hashable] | None = None,
    ) -> None:
        crows: list[Row] = []
        for r in rows:
            row: Row = {}
            for c, v in r.items():
                if not 0 <= c < ncols:
                    raise PreconditionFailed(f'column {c} out of range 0..{ncols - 1}')
                fv = Fraction(v)
                if fv != 0:
                    row[c] = fv
            crows.append(row)
        labels = tuple(range(ncols)) if column_labels is None else tuple(column_labels)
        if len(labels) != ncols:
            raise PreconditionFailed(f'{len(labels)} column labels for {ncols} columns')
        self.ncols = ncols
        self.rows: tuple[Row, ...] = tuple(crows)
        self.column_labels: tuple[Hashable, ...] = labels

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[Fraction | int]], ncols: int | None = None) -> QMatrix:
        if ncols is None:
            ncols = len(rows[0]) if len(rows) > 0 else 0
        return cls(ncols, [dict(enumerate(r)) for r in rows])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def to_dense(self) -> list[list[Fraction]]:
        return [[r.get(c, Fraction(0)) for c in range(self.ncols)] for r in self.rows]

    def with_rows(self, extra: Iterable[Mapping[int, Fraction | int]]) -> QMatrix:
        return QMatrix(self.ncols, [*self.rows, *extra], self.column_labels)

    def __repr__(self) -> str:
        return f'QMatrix({self.nrows}x{self.ncols})'


def transpose(m: QMatrix) -> QMatrix:
    cols: list[Row] = [{} for _ in range(m.ncols)]
    for i, r in enumerate(m.rows):
        for c, v in r.items():
            cols[c][i] = v
    return QMatrix(m.nrows, cols)


@dataclass(frozen=True)
class EchelonResult:
    rank: int
    pivot_columns: list[int]
    reduced_rows: list[Row]
    '''reduced_rows[i] has a 1 at pivot_columns[i] and 0 at every other pivot column'''
    column_order: list[int]
    transform_trace: list[str] | None = field(default=None, repr=False)

    def pivot_row(self, col: int) -> Row | None:
        for p, r in zip(self.pivot_columns, self.reduced_rows):
            if p == col:
                return r
        return None


def _primitive(row: Mapping[int, Fraction]) -> IntRow:
    '''scale a rational row to coprime integers'''
    if len(row) == 0:
        return {}
    den = reduce(lcm, (v.denominator for v in row.values()), 1)
    ints = {c: int(v * den) for c, v in row.items()}
    g = reduce(gcd, ints.values(), 0)
    return {c: v // g for c, v in ints.items()}


def _combine(p: int, r: IntRow, c: int, P: IntRow) -> IntRow:
    # p*r - c*P, made primitive again
    out: IntRow = {k: p * v for k, v in r.items()}
    for k, v in P.items():
        nv = out.get(k, 0) - c * v
        if nv == 0:
            out.pop(k, None)
        else:
            out[k] = nv
    g = reduce(gcd, out.values(), 0)
    if g > 1:
        out = {k: v // g for k, v in out.items()}
    return out


def rref(m: QMatrix, column_order: Sequence[int] | None = None, *, trace: bool = False) -> EchelonResult:
    '''
    Reduced row-echelon form under the given column order.

    Forward pass: rows are taken in order, each one eliminated against the pivots found so far;
    a row that survives pivots on its first nonzero column (so ties go to the lowest row index).
    Back-substitution then clears every pivot column from the other pivot rows.
    '''
    order = list(range(m.ncols)) if column_order is None else list(column_order)
    if sorted(order) != list(range(m.ncols)):
        raise PreconditionFailed(f'column_order is not a permutation of 0..{m.ncols - 1}')
    pos = {c: i for i, c in enumerate(order)}
    log: list[str] | None = [] if trace else None

    def lead(r: IntRow) -> int:
        return min(r, key=pos.__getitem__)

    pivots: dict[int, IntRow] = {}
    for i, row in enumerate(m.rows):
        r = _primitive(row)
        while len(r) > 0:
            lc = lead(r)
            P = pivots.get(lc)
            if P is None:
                # normalize the sign so the pivot entry is positive
                if r[lc] < 0:
                    r = {k: -v for k, v in r.items()}
                pivots[lc] = r
                if log is not None:
                    log.append(f'row {i}: pivot at column {lc}')
                break
            r = _combine(P[lc], r, r[lc], P)
            if log is not None:
                log.append(f'row {i}: eliminated column {lc}')
        else:
            if log is not None:
                log.append(f'row {i}: dependent')

    pcols = sorted(pivots, key=pos.__getitem__)
    reduced: dict[int, Row] = {}
    for pc in reversed(pcols):
        P = pivots[pc]
        inv = Fraction(1, P[pc])
        R: Row = {k: v * inv for k, v in P.items()}
        # everything reduced so far has a later pivot and no entries at other pivot columns
        for qc, Q in reduced.items():
            f = R.get(qc)
            if f is None:
                continue
            for k, v in Q.items():
                nv = R.get(k, Fraction(0)) - f * v
                if nv == 0:
                    R.pop(k, None)
                else:
                    R[k] = nv
        reduced[pc] = R

    logger.debug(f'rref {m!r}: rank {len(pcols)}')
    return EchelonResult(
        rank=len(pcols),
        pivot_columns=pcols,
        reduced_rows=[reduced[pc] for pc in pcols],
        column_order=order,
        transform_trace=log,
    )


def rank(m: QMatrix) -> int:
    return rref(m).rank


def in_row_space(m: QMatrix, vec: Mapping[int, Fraction | int]) -> bool:
    return rank(m.with_rows([vec])) == rank(m)


def span_order(ncols: int, target_col: int, basis_cols: Iterable[int]) -> list[int]:
    '''columns outside {target} + basis first, then the target, then the basis'''
    basis = sorted(set(basis_cols))
    bset = set(basis)
    others = [c for c in range(ncols) if c != target_col and c not in bset]
    return [*others, target_col, *basis]


def solve_from_echelon(ech: EchelonResult, target_col: int, basis_cols: Iterable[int]) -> Res[dict[int, Fraction]]:
    '''
    Reads express_in_span's answer off an echelon form computed under span_order.

    With that order, e_target - sum c_b e_b is in the row space iff some reduced row pivots
    at the target: its other entries can only sit in basis columns, and c_b is minus the entry.
    '''
    bset = set(basis_cols)
    row = ech.pivot_row(target_col)
    if row is None:
        return NotExpressible(target_col, 'no relation pivots at the target once the other columns are eliminated')
    stray = [c for c in row if c != target_col and c not in bset]
    if len(stray) > 0:
        # can't happen with span_order, but echelon forms can come from elsewhere
        return NotExpressible(target_col, f'reduced row still involves columns {stray} outside the basis')
    return {c: -v for c, v in sorted(row.items()) if c != target_col}


def express_in_span(relations: QMatrix, target_col: int, basis_cols: Iterable[int]) -> Res[dict[int, Fraction]]:
    '''
    Coefficients c_b with e_target - sum c_b e_b in the row space of relations,
    or NotExpressible (returned, not raised) when the relations don't allow it.
    '''
    basis = set(basis_cols)
    n = relations.ncols
    if not 0 <= target_col < n or any(not 0 <= b < n for b in basis):
        raise PreconditionFailed(f'columns out of range 0..{n - 1}')
    if target_col in basis:
        raise PreconditionFailed(f'target column {target_col} is one of the basis columns')
    ech = rref(relations, span_order(n, target_col, basis))
    return solve_from_echelon(ech, target_col, basis)


def test_rref_small() -> None:
    e = rref(QMatrix.from_dense([[1, 2], [2, 4]]))
    assert e.rank == 1
    assert e.pivot_columns == [0]
    assert e.reduced_rows == [{0: 1, 1: 2}]

    res = express_in_span(QMatrix(2, [{0: 1, 1: -1}]), 0, {1})
    assert res == {1: 1}
    assert isinstance(express_in_span(QMatrix(2, []), 0, {1}), NotExpressible)
