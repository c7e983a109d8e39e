"""
Graded block matrices
=====================

A SuperMatrix has row blocks and column blocks indexed by the degree chain
γ₀…γ_q. Entries of block (k, u) are homogeneous of degree γ_k + γ_u (plus the
matrix weight, always γ₀ here). Zero-weight, body-invertible square matrices
over O(T) are exactly the T-points of GL(m⃗).

Inversion never divides by a graded element: the body matrix is inverted over
the coefficient field and the result is refined by Newton–Schulz steps, which
converge exactly because A·X₀ − I has zero body.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property

from algebra import (GeneratorTable, GradedSeries, add, body, degree_of, mul,
                     to_fraction)
from errors import ConfigurationError, InvalidShape, ShapeMismatch, SingularBody, TableMismatch
from grading import DegreeChain, DegreeVector

logger = logging.getLogger(__name__)


# ── Block dimensions ──────────────────────────────────────────────────────────

@dataclass(frozen=True)
class BlockDims:
    """Per-degree sizes (d₀, …, d_q), indexed by the degree chain."""

    sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        DegreeChain.for_length(len(sizes))
        if any(s < 0 for s in sizes):
            raise ConfigurationError(f"block sizes must be nonnegative, got {sizes}")
        object.__setattr__(self, "sizes", sizes)

    @classmethod
    def parse(cls, text: str) -> BlockDims:
        try:
            return cls(tuple(int(p) for p in text.replace("|", ",").split(",")))
        except ValueError as exc:
            raise ConfigurationError(f"bad block dimensions {text!r}: {exc}") from None

    @property
    def chain(self) -> DegreeChain:
        return DegreeChain.for_length(len(self.sizes))

    @property
    def total(self) -> int:
        return sum(self.sizes)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for s in self.sizes:
            out.append(acc)
            acc += s
        return tuple(out)

    @cached_property
    def _blocks(self) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.sizes) for _ in range(s))

    def block_of(self, pos: int) -> int:
        return self._blocks[pos]

    def positions(self, block: int) -> range:
        start = self.offsets[block]
        return range(start, start + self.sizes[block])

    def require_nonempty(self) -> BlockDims:
        if not self.total:
            raise ConfigurationError(f"block dimensions {self} are all zero")
        return self

    def __len__(self) -> int:
        return len(self.sizes)

    def __iter__(self):
        return iter(self.sizes)

    def __getitem__(self, i: int) -> int:
        return self.sizes[i]

    def to_json(self) -> list[int]:
        return list(self.sizes)

    def __str__(self) -> str:
        return "|".join(str(s) for s in self.sizes)


# ── Supermatrix ───────────────────────────────────────────────────────────────

class SuperMatrix:
    """Dense block matrix of GradedSeries over one table and truncation order."""

    __slots__ = ("row_dims", "col_dims", "entries", "weight", "table", "trunc")

    def __init__(self, row_dims: BlockDims, col_dims: BlockDims,
                 entries: Iterable[Iterable[GradedSeries]], table: GeneratorTable,
                 trunc: int, weight: DegreeVector | None = None):
        rows = tuple(tuple(r) for r in entries)
        if len(row_dims) != len(col_dims):
            raise ShapeMismatch(f"row dims {row_dims} and column dims {col_dims} differ in length")
        if len(rows) != row_dims.total or any(len(r) != col_dims.total for r in rows):
            raise ShapeMismatch(
                f"entry grid is not {row_dims.total}x{col_dims.total} for dims {row_dims} x {col_dims}")
        for r in rows:
            for e in r:
                if e.table != table or e.trunc != trunc:
                    raise TableMismatch(f"entry over {e.table!r}/N={e.trunc}, expected {table!r}/N={trunc}")
        self.row_dims = row_dims
        self.col_dims = col_dims
        self.entries = rows
        self.table = table
        self.trunc = trunc
        self.weight = weight if weight is not None else table.chain.zero

    @property
    def shape(self) -> tuple[int, int]:
        return self.row_dims.total, self.col_dims.total

    def __getitem__(self, cell: tuple[int, int]) -> GradedSeries:
        r, c = cell
        return self.entries[r][c]

    def __matmul__(self, other: SuperMatrix) -> SuperMatrix:
        return matmul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return (self.row_dims == other.row_dims and self.col_dims == other.col_dims
                and self.table == other.table and self.trunc == other.trunc
                and all(a == b for ra, rb in zip(self.entries, other.entries)
                        for a, b in zip(ra, rb)))

    __hash__ = None

    def __repr__(self) -> str:
        return f"SuperMatrix({self.row_dims} x {self.col_dims}, N={self.trunc})"

    def columns(self, cols: Sequence[int], col_dims: BlockDims) -> SuperMatrix:
        return SuperMatrix(self.row_dims, col_dims,
                           [[row[c] for c in cols] for row in self.entries],
                           self.table, self.trunc, self.weight)

    def to_json(self) -> dict:
        return {"rowDims": self.row_dims.to_json(), "colDims": self.col_dims.to_json(),
                "entries": [[e.to_json() for e in row] for row in self.entries]}

    @classmethod
    def from_json(cls, data: Mapping, table: GeneratorTable, trunc: int) -> SuperMatrix:
        """The schema carries no truncation order; entries must match `trunc`."""
        row_dims = BlockDims(tuple(data["rowDims"]))
        col_dims = BlockDims(tuple(data["colDims"]))
        entries = [[GradedSeries.from_json(e, table) for e in row] for row in data["entries"]]
        return cls(row_dims, col_dims, entries, table, trunc)


# ── Constructors ──────────────────────────────────────────────────────────────

def zeros(row_dims: BlockDims, col_dims: BlockDims, table: GeneratorTable,
          trunc: int) -> SuperMatrix:
    z = GradedSeries.zero(table, trunc)
    return SuperMatrix(row_dims, col_dims,
                       [[z] * col_dims.total for _ in range(row_dims.total)], table, trunc)


def identity(dims: BlockDims, table: GeneratorTable, trunc: int) -> SuperMatrix:
    z = GradedSeries.zero(table, trunc)
    one = GradedSeries.one(table, trunc)
    size = dims.total
    return SuperMatrix(dims, dims, [[one if r == c else z for c in range(size)]
                                    for r in range(size)], table, trunc)


def lift(x: Sequence[Sequence[object]], row_dims: BlockDims, col_dims: BlockDims,
         table: GeneratorTable, trunc: int) -> SuperMatrix:
    """x̂: a rational matrix as constant series."""
    return SuperMatrix(row_dims, col_dims,
                       [[GradedSeries.constant(table, trunc, to_fraction(v)) for v in row]
                        for row in x], table, trunc)


# ── Arithmetic ────────────────────────────────────────────────────────────────

def matmul(a: SuperMatrix, b: SuperMatrix) -> SuperMatrix:
    if a.col_dims != b.row_dims:
        raise ShapeMismatch(f"cannot multiply {a.row_dims} x {a.col_dims} by {b.row_dims} x {b.col_dims}")
    if a.table != b.table or a.trunc != b.trunc:
        raise TableMismatch("matrix factors live over different algebras")
    table, trunc = a.table, a.trunc
    zero = GradedSeries.zero(table, trunc)
    inner = a.col_dims.total
    out = []
    for r in range(a.row_dims.total):
        arow = a.entries[r]
        nz = [(j, arow[j]) for j in range(inner) if not arow[j].is_zero]
        row = []
        for c in range(b.col_dims.total):
            acc = zero
            for j, x in nz:
                y = b.entries[j][c]
                if not y.is_zero:
                    acc = add(acc, mul(x, y))
            row.append(acc)
        out.append(row)
    return SuperMatrix(a.row_dims, b.col_dims, out, table, trunc, a.weight + b.weight)


def _combine(a: SuperMatrix, b: SuperMatrix, sign: int) -> SuperMatrix:
    rows = []
    for ra, rb in zip(a.entries, b.entries):
        rows.append([add(x, y) if sign > 0 else add(x, -y) for x, y in zip(ra, rb)])
    return SuperMatrix(a.row_dims, a.col_dims, rows, a.table, a.trunc, a.weight)


def is_zero_weight(a: SuperMatrix) -> bool:
    chain = a.row_dims.chain
    for r, row in enumerate(a.entries):
        kb = a.row_dims.block_of(r)
        for c, e in enumerate(row):
            if e.is_zero:
                continue
            want = chain[chain.add_index(kb, a.col_dims.block_of(c))]
            if degree_of(e) != want:
                return False
    return True


def is_zero(a: SuperMatrix) -> bool:
    return all(e.is_zero for row in a.entries for e in row)


# ── Body linear algebra ───────────────────────────────────────────────────────

def body_matrix(a: SuperMatrix) -> list[list]:
    return [[body(e) for e in row] for row in a.entries]


def bareiss_determinant(m: Sequence[Sequence], one, zero):
    """Fraction-free determinant; exact divisions only."""
    m = [list(row) for row in m]
    size = len(m)
    if size == 0:
        return one
    sign = 1
    prev = one
    for k in range(size - 1):
        if not m[k][k]:
            for i in range(k + 1, size):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return zero
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    det = m[size - 1][size - 1]
    return det if sign > 0 else -det


def body_determinant(a: SuperMatrix):
    """Determinant of the body matrix: the domain certificate of a square supermatrix."""
    if a.shape[0] != a.shape[1]:
        raise ShapeMismatch(f"determinant of a non-square {a.shape} matrix")
    field = a.table.field
    return bareiss_determinant(body_matrix(a), field.one, field.zero)


def invert_body(m: Sequence[Sequence], one, zero) -> list[list]:
    """Gauss–Jordan inverse over the coefficient field."""
    size = len(m)
    aug = [list(row) + [one if i == j else zero for j in range(size)]
           for i, row in enumerate(m)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r][col]), None)
        if pivot is None:
            raise SingularBody(f"body matrix is singular (no pivot in column {col})")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(size):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [v - f * p for v, p in zip(aug[r], aug[col])]
    return [row[size:] for row in aug]


def invert(a: SuperMatrix) -> SuperMatrix:
    """X with A·X = X·A = I exactly at the truncation order."""
    if a.row_dims != a.col_dims:
        raise ShapeMismatch(f"cannot invert a {a.row_dims} x {a.col_dims} matrix")
    table, trunc = a.table, a.trunc
    field = table.field
    seed = invert_body(body_matrix(a), field.one, field.zero)
    x = SuperMatrix(a.row_dims, a.col_dims,
                    [[GradedSeries._raw(table, trunc, {table.zero_monomial: v}) for v in row]
                     for row in seed], table, trunc)
    ident = identity(a.row_dims, table, trunc)
    rounds = math.ceil(math.log2(trunc + 1)) + 1
    for step in range(rounds):
        residual = _combine(ident, matmul(a, x), -1)
        if is_zero(residual):
            logger.debug("inverse of %r exact after %d refinement rounds", a, step)
            break
        # X(2I − AX) = X(I + (I − AX))
        x = matmul(x, _combine(ident, residual, +1))
    return x


# ── Minors ────────────────────────────────────────────────────────────────────

def _parts(index) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(p) for p in getattr(index, "parts", index))


def minor_columns(dims: BlockDims, index) -> list[int]:
    """Global 0-based column positions selected by a k⃗-index, block by block."""
    parts = _parts(index)
    if len(parts) != len(dims):
        raise InvalidShape(f"index has {len(parts)} parts, dims {dims} have {len(dims)}")
    cols = []
    for u, part in enumerate(parts):
        for c in part:
            if not 1 <= c <= dims[u]:
                raise InvalidShape(f"index {c} out of range 1..{dims[u]} in block {u}")
            cols.append(dims.offsets[u] + c - 1)
    return cols


def extract_minor(a: SuperMatrix, index) -> SuperMatrix:
    """M_I(A): the I_u columns of every column block, ascending."""
    cols = minor_columns(a.col_dims, index)
    return a.columns(cols, BlockDims(tuple(len(p) for p in _parts(index))))


def delete_minor(a: SuperMatrix, index) -> SuperMatrix:
    """D_I(A): the complementary columns, ascending per block."""
    parts = _parts(index)
    chosen = set(minor_columns(a.col_dims, index))
    cols = [c for c in range(a.col_dims.total) if c not in chosen]
    dims = BlockDims(tuple(a.col_dims[u] - len(p) for u, p in enumerate(parts)))
    return a.columns(cols, dims)
