"""
Exact linear algebra over the constant field.

Row reduction pivots on the first nonzero entry at or below the current row
and moves that row up by a cyclic shift, so the recorded transformation is
reproducible for a given input ordering.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Sequence, Tuple

from .constants import ExpConstant, ONE, ZERO
from .exceptions import Inconsistent, RankDeficient

logger = logging.getLogger(__name__)

Vector = Tuple[ExpConstant, ...]


class KMatrix:
    """
    Dense matrix with ExpConstant entries.
    """

    __slots__ = ('rows', 'ncols')

    def __init__(self, rows: Sequence[Sequence], ncols: int = None):
        self.rows: Tuple[Vector, ...] = tuple(tuple(ExpConstant.coerce(v) for v in row) for row in rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        if any(len(row) != ncols for row in self.rows):
            raise ValueError('Ragged matrix rows')
        self.ncols = ncols

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> 'KMatrix':
        return cls([[ZERO] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, size: int) -> 'KMatrix':
        return cls([[ONE if i == j else ZERO for j in range(size)] for i in range(size)], size)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, index: Tuple[int, int]) -> ExpConstant:
        i, j = index
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def transpose(self) -> 'KMatrix':
        return KMatrix([self.column(j) for j in range(self.ncols)], self.nrows)

    def select_rows(self, indices: Sequence[int]) -> 'KMatrix':
        return KMatrix([self.rows[i] for i in indices], self.ncols)

    def __mul__(self, other: 'KMatrix') -> 'KMatrix':
        if self.ncols != other.nrows:
            raise ValueError(f'Shape mismatch {self.shape} x {other.shape}')
        columns = [other.column(j) for j in range(other.ncols)]
        return KMatrix(
            [[_dot(row, column) for column in columns] for row in self.rows],
            other.ncols,
        )

    def apply(self, vector: Sequence[ExpConstant]) -> Vector:
        return tuple(_dot(row, vector) for row in self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.rows, self.ncols))

    def tolist(self) -> List[List[ExpConstant]]:
        return [list(row) for row in self.rows]

    def __str__(self) -> str:
        return '[' + ', '.join('[' + ', '.join(str(v) for v in row) + ']' for row in self.rows) + ']'

    def __repr__(self) -> str:
        return f'KMatrix({self})'


def _dot(left: Sequence[ExpConstant], right: Sequence[ExpConstant]) -> ExpConstant:
    total = ZERO
    for a, b in zip(left, right):
        if a and b:
            total = total + a * b
    return total


@dataclass(frozen=True)
class Reduction:
    """
    Result of row reduction: S * M == R with R in reduced row echelon form.
    """
    reduced: KMatrix
    transform: KMatrix
    pivots: Tuple[int, ...]


def row_reduce(matrix: KMatrix) -> Reduction:
    rows = [list(row) for row in matrix.rows]
    transform = [list(row) for row in KMatrix.identity(matrix.nrows).rows]
    pivots = []
    current = 0
    for col in range(matrix.ncols):
        if current == len(rows):
            break
        selected = next((i for i in range(current, len(rows)) if rows[i][col]), None)
        if selected is None:
            continue
        rows.insert(current, rows.pop(selected))
        transform.insert(current, transform.pop(selected))
        pivot = rows[current][col]
        if not pivot.is_one():
            inverse = pivot.inverse()
            rows[current] = [v * inverse for v in rows[current]]
            transform[current] = [v * inverse for v in transform[current]]
        for i in range(len(rows)):
            factor = rows[i][col]
            if i == current or not factor:
                continue
            rows[i] = [a - factor * b for a, b in zip(rows[i], rows[current])]
            transform[i] = [a - factor * b for a, b in zip(transform[i], transform[current])]
        pivots.append(col)
        current += 1
    return Reduction(KMatrix(rows, matrix.ncols), KMatrix(transform, matrix.nrows), tuple(pivots))


def rref_with_transform(matrix: KMatrix) -> Tuple[KMatrix, KMatrix]:
    reduction = row_reduce(matrix)
    return reduction.reduced, reduction.transform


def rank(matrix: KMatrix) -> int:
    return len(row_reduce(matrix).pivots)


def kernel_basis(matrix: KMatrix) -> List[Vector]:
    """
    Basis of {v : M v = 0}, one vector per free column.
    """
    reduction = row_reduce(matrix)
    pivots = reduction.pivots
    basis = []
    for free in range(matrix.ncols):
        if free in pivots:
            continue
        vector = [ZERO] * matrix.ncols
        vector[free] = ONE
        for row, pivot in enumerate(pivots):
            vector[pivot] = -reduction.reduced[row, free]
        basis.append(tuple(vector))
    return basis


def is_invertible(matrix: KMatrix) -> bool:
    return matrix.nrows == matrix.ncols and rank(matrix) == matrix.ncols


def left_inverse(matrix: KMatrix) -> KMatrix:
    """
    L with L * M == I for M of full column rank, read off the first
    rank-many rows of the reduction transform.
    """
    reduction = row_reduce(matrix)
    if len(reduction.pivots) != matrix.ncols:
        raise RankDeficient(f'Matrix of shape {matrix.shape} has rank {len(reduction.pivots)}')
    return reduction.transform.select_rows(range(matrix.ncols))


def inverse(matrix: KMatrix) -> KMatrix:
    if matrix.nrows != matrix.ncols:
        raise RankDeficient(f'Matrix of shape {matrix.shape} is not square')
    return left_inverse(matrix)


def solve(matrix: KMatrix, rhs: Sequence[ExpConstant]) -> Vector:
    """
    A particular solution of M v = rhs with free variables set to zero.
    """
    augmented = KMatrix(
        [tuple(row) + (ExpConstant.coerce(b),) for row, b in zip(matrix.rows, rhs)],
        matrix.ncols + 1,
    )
    reduction = row_reduce(augmented)
    if matrix.ncols in reduction.pivots:
        raise Inconsistent('Linear system has no solution')
    solution = [ZERO] * matrix.ncols
    for row, pivot in enumerate(reduction.pivots):
        solution[pivot] = reduction.reduced[row, matrix.ncols]
    return tuple(solution)


def laplace_determinant(entries: Sequence[Sequence], zero, one):
    """
    Determinant by cofactor expansion along the first row. Works for any ring
    element supporting +, - and *; used for matrices of functions where
    division is expensive.
    """
    size = len(entries)
    cache: Dict[Tuple[int, FrozenSet[int]], object] = {}

    def expand(row: int, columns: FrozenSet[int]):
        if row == size:
            return one
        key = (row, columns)
        if key in cache:
            return cache[key]
        total = zero
        for sign_index, col in enumerate(sorted(columns)):
            entry = entries[row][col]
            if not entry:
                continue
            minor = expand(row + 1, columns - {col})
            term = entry * minor
            total = total - term if sign_index % 2 else total + term
        cache[key] = total
        return total

    return expand(0, frozenset(range(size)))


def minor_matrix(entries: Sequence[Sequence], skip_row: int, skip_col: int) -> List[List]:
    return [
        [value for j, value in enumerate(row) if j != skip_col]
        for i, row in enumerate(entries)
        if i != skip_row
    ]
