"""Dense GF(2) matrices with rows packed into Python ints.

Bit ``j`` of a row integer is the entry in column ``j``.  Elimination
always pivots on the leftmost available column and the topmost available
row, so results are reproducible bit for bit.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class ShapeError(ValueError):
    """Raised when matrix/vector shapes do not fit together."""


def _pack(bits: Iterable[int]) -> int:
    out = 0
    for j, b in enumerate(bits):
        if b & 1:
            out |= 1 << j
    return out


def _unpack(word: int, n: int) -> list[int]:
    return [(word >> j) & 1 for j in range(n)]


class BitMatrix:
    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: Sequence[int] | None = None):
        if rows < 0 or cols < 0:
            raise ShapeError("negative dimension")
        self.rows = rows
        self.cols = cols
        if data is None:
            self._data: tuple[int, ...] = (0,) * rows
        else:
            if len(data) != rows:
                raise ShapeError(f"expected {rows} rows, got {len(data)}")
            mask = (1 << cols) - 1
            for word in data:
                if word & ~mask:
                    raise ShapeError("row has bits beyond the column count")
            self._data = tuple(data)

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence[int]], cols: int | None = None) -> "BitMatrix":
        if cols is None:
            cols = len(entries[0]) if entries else 0
        for row in entries:
            if len(row) != cols:
                raise ShapeError("ragged input")
        return cls(len(entries), cols, [_pack(r) for r in entries])

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols)

    @property
    def row_words(self) -> tuple[int, ...]:
        return self._data

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self._data[i] >> j) & 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return (self.rows, self.cols, self._data) == (other.rows, other.cols, other._data)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"

    def to_dense(self) -> list[list[int]]:
        return [_unpack(w, self.cols) for w in self._data]

    def transpose(self) -> "BitMatrix":
        out = [0] * self.cols
        for i, word in enumerate(self._data):
            while word:
                low = word & -word
                j = low.bit_length() - 1
                out[j] |= 1 << i
                word ^= low
        return BitMatrix(self.cols, self.rows, out)

    def matvec(self, x: int) -> int:
        """Multiply by a column vector given as a packed int of length ``cols``."""
        if x >> self.cols:
            raise ShapeError("vector longer than column count")
        out = 0
        for i, word in enumerate(self._data):
            if (word & x).bit_count() & 1:
                out |= 1 << i
        return out

    def matmul(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        rows_b = other._data
        for word in self._data:
            acc = 0
            while word:
                low = word & -word
                acc ^= rows_b[low.bit_length() - 1]
                word ^= low
            out.append(acc)
        return BitMatrix(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return not any(self._data)


def _echelon(words: list[int], ncols: int) -> list[tuple[int, int]]:
    """Reduce ``words`` in place to reduced row echelon form.

    Returns (pivot column, row word) pairs in pivot order.
    """
    pivots: list[tuple[int, int]] = []
    work = [w for w in words if w]
    for col in range(ncols):
        bit = 1 << col
        hit = next((k for k, w in enumerate(work) if w & bit), None)
        if hit is None:
            continue
        prow = work.pop(hit)
        work = [w ^ prow if w & bit else w for w in work]
        pivots = [(c, w ^ prow if w & bit else w) for c, w in pivots]
        pivots.append((col, prow))
        work = [w for w in work if w]
        if not work:
            break
    return pivots


def rank(m: BitMatrix) -> int:
    return len(_echelon(list(m.row_words), m.cols))


def solve(m: BitMatrix, b: int | Sequence[int]) -> int | None:
    """Return some packed ``x`` with ``m x = b``, or None when inconsistent.

    Free variables are set to zero.
    """
    if not isinstance(b, int):
        if len(b) != m.rows:
            raise ShapeError(f"right-hand side has length {len(b)}, expected {m.rows}")
        b = _pack(b)
    elif b >> m.rows:
        raise ShapeError("right-hand side longer than row count")
    n = m.cols
    rhs_bit = 1 << n
    augmented = [w | (rhs_bit if (b >> i) & 1 else 0) for i, w in enumerate(m.row_words)]
    pivots = _echelon(augmented, n + 1)
    x = 0
    for col, word in pivots:
        if col == n:
            return None
        if word & rhs_bit:
            x |= 1 << col
    return x


def kernel_basis(m: BitMatrix) -> list[int]:
    """Basis of the null space, one packed vector per free column."""
    n = m.cols
    pivots = _echelon(list(m.row_words), n)
    pivot_cols = {c for c, _ in pivots}
    basis = []
    for free in range(n):
        if free in pivot_cols:
            continue
        vec = 1 << free
        for col, word in pivots:
            if (word >> free) & 1:
                vec |= 1 << col
        basis.append(vec)
    return basis


def image_contains(m: BitMatrix, b: int) -> bool:
    return solve(m, b) is not None


def pack(bits: Iterable[int]) -> int:
    return _pack(bits)


def unpack(word: int, n: int) -> list[int]:
    return _unpack(word, n)
