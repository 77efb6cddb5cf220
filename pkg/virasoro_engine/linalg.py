"""
Exact linear algebra over the rationals.

All heavy lifting (row reduction, nullspaces, determinants) goes through sympy's
``DomainMatrix`` over ``QQ``; this module only converts between sparse ``dict`` rows
of ``Fraction`` values and sympy's domain elements.
"""
import logging
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .errors import WindowError

logger = logging.getLogger(__name__)

SparseRow = dict[int, Fraction]


def _to_domain(rows: Sequence[Mapping[int, Fraction]], ncols: int) -> DomainMatrix:
    entries = {}
    for i, row in enumerate(rows):
        cells = {j: QQ(value.numerator, value.denominator) for j, value in row.items() if value}
        if cells:
            entries[i] = cells
    return DomainMatrix(entries, (len(rows), ncols), QQ)


def _from_domain(matrix: DomainMatrix) -> list[SparseRow]:
    nrows, _ = matrix.shape
    rows: list[SparseRow] = [{} for _ in range(nrows)]
    for (i, j), value in matrix.to_Matrix().todok().items():
        if value != 0:
            rows[i][j] = Fraction(int(value.p), int(value.q))
    return rows


def dense_to_sparse(matrix: Sequence[Sequence[Fraction]]) -> list[SparseRow]:
    return [{j: Fraction(v) for j, v in enumerate(row) if v} for row in matrix]


def rref(rows: Sequence[Mapping[int, Fraction]], ncols: int) -> tuple[list[SparseRow], list[int]]:
    """Reduced row echelon form: the nonzero rows and their pivot columns."""
    if not rows or ncols == 0:
        return [], []
    reduced, pivots = _to_domain(rows, ncols).rref()
    pivots = list(pivots)
    if not pivots:
        return [], []
    return _from_domain(reduced[: len(pivots), :]), pivots


def rank(rows: Sequence[Mapping[int, Fraction]], ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    return _to_domain(rows, ncols).rank()


def nullspace(rows: Sequence[Mapping[int, Fraction]], ncols: int) -> list[SparseRow]:
    """Basis of {x : row·x = 0 for every row}, one sparse row per basis vector."""
    if ncols == 0:
        return []
    if not rows:
        return [{j: Fraction(1)} for j in range(ncols)]
    kernel = _to_domain(rows, ncols).nullspace()
    return [row for row in _from_domain(kernel) if row]


def determinant(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    size = len(matrix)
    if size == 0:
        return Fraction(1)
    value = _to_domain(dense_to_sparse(matrix), size).det()
    return Fraction(int(QQ.numer(value)), int(QQ.denom(value)))


class Subspace:
    """
    A subspace of the span of a fixed, ordered list of basis keys, kept in reduced
    row echelon form. Column order decides which keys become pivots.
    """

    def __init__(self, columns: Iterable[Hashable]):
        self.columns = list(columns)
        self.index = {key: j for j, key in enumerate(self.columns)}
        self.rows: list[SparseRow] = []
        self.pivots: list[int] = []

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def _encode(self, vector: Mapping[Hashable, Fraction]) -> SparseRow:
        row: SparseRow = {}
        for key, value in vector.items():
            if not value:
                continue
            j = self.index.get(key)
            if j is None:
                raise WindowError(f"basis key {key!r} lies outside the subspace window")
            row[j] = Fraction(value)
        return row

    def _decode(self, row: Mapping[int, Fraction]) -> dict[Hashable, Fraction]:
        return {self.columns[j]: value for j, value in sorted(row.items())}

    def _reduce_row(self, row: SparseRow) -> SparseRow:
        remainder = dict(row)
        for pivot, basis_row in zip(self.pivots, self.rows):
            factor = remainder.get(pivot)
            if not factor:
                continue
            for j, value in basis_row.items():
                updated = remainder.get(j, 0) - factor * value
                if updated:
                    remainder[j] = updated
                else:
                    remainder.pop(j, None)
        return remainder

    def reduce(self, vector: Mapping[Hashable, Fraction]) -> dict[Hashable, Fraction]:
        """Normal form of ``vector`` modulo the subspace (zero at every pivot key)."""
        return self._decode(self._reduce_row(self._encode(vector)))

    def contains(self, vector: Mapping[Hashable, Fraction]) -> bool:
        return not self._reduce_row(self._encode(vector))

    def extend(self, vectors: Iterable[Mapping[Hashable, Fraction]]) -> list[dict[Hashable, Fraction]]:
        """
        Add ``vectors`` to the subspace. Returns a basis of the newly gained directions
        (empty when the subspace did not grow).
        """
        candidates = [row for row in (self._encode(v) for v in vectors) if row]
        if not candidates:
            return []
        previous = set(self.pivots)
        self.rows, self.pivots = rref(self.rows + candidates, len(self.columns))
        # rows whose pivot is new span the gained directions modulo the old subspace
        fresh = [row for row, pivot in zip(self.rows, self.pivots) if pivot not in previous]
        if fresh:
            logger.debug(f"subspace grew by {len(fresh)} to dimension {self.dimension}")
        return [self._decode(row) for row in fresh]

    def basis(self) -> list[dict[Hashable, Fraction]]:
        return [self._decode(row) for row in self.rows]

    def pivot_keys(self) -> list[Hashable]:
        return [self.columns[j] for j in self.pivots]
