"""Bit-packed GF(2) matrices and vectors.

Storage is row-major ``uint64`` words, little-endian within a row: column
``j`` of row ``i`` is bit ``j % 64`` of ``words[i, j // 64]``.  Padding bits
past the last column are always zero.  Row reduction works on Python ints,
whose XOR is already bit-parallel.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .errors import DomainError, ShapeError


def _nwords(c: int) -> int:
    return max(1, (c + 63) // 64)


def _pack_rows(dense: np.ndarray) -> np.ndarray:
    r, c = dense.shape
    nw = _nwords(c)
    padded = np.zeros((r, nw * 64), dtype=np.uint8)
    padded[:, :c] = dense & 1
    packed = np.packbits(padded, axis=1, bitorder="little")
    return packed.view("<u8").astype(np.uint64).reshape(r, nw)


def _unpack_rows(words: np.ndarray, c: int) -> np.ndarray:
    r = words.shape[0]
    as_bytes = np.ascontiguousarray(words.astype("<u8")).view(np.uint8).reshape(r, -1)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :c]


def _words_to_int(row: np.ndarray) -> int:
    return int.from_bytes(np.ascontiguousarray(row.astype("<u8")).tobytes(), "little")


def _int_to_words(v: int, nw: int) -> np.ndarray:
    return np.frombuffer(v.to_bytes(nw * 8, "little"), dtype="<u8").astype(np.uint64)


def _supports(dense: np.ndarray, what: str) -> np.ndarray:
    weights = dense.sum(axis=1)
    if weights.size and np.any(weights != weights[0]):
        raise DomainError(f"{what} supports need constant {what} weight")
    _, idx = np.nonzero(dense)
    w = int(weights[0]) if weights.size else 0
    return np.ascontiguousarray(idx.reshape(dense.shape[0], w).astype(np.int32))


class BitVector:
    """Immutable GF(2) vector of fixed length."""

    __slots__ = ("length", "words")

    def __init__(self, length: int, words: np.ndarray | None = None):
        self.length = int(length)
        nw = _nwords(self.length)
        if words is None:
            words = np.zeros(nw, dtype=np.uint64)
        words = np.asarray(words, dtype=np.uint64).reshape(nw).copy()
        words.flags.writeable = False
        self.words = words

    @classmethod
    def from_bits(cls, bits) -> "BitVector":
        bits = np.asarray(bits, dtype=np.uint8).reshape(-1)
        return cls(bits.size, _pack_rows(bits[None, :])[0])

    @classmethod
    def from_support(cls, length: int, support) -> "BitVector":
        bits = np.zeros(length, dtype=np.uint8)
        bits[list(support)] = 1
        return cls.from_bits(bits)

    @classmethod
    def from_int(cls, length: int, value: int) -> "BitVector":
        return cls(length, _int_to_words(value, _nwords(length)))

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        text = text.strip()
        if set(text) - {"0", "1"}:
            raise ValueError("bit string may only contain 0 and 1")
        return cls.from_bits([int(ch) for ch in text])

    def to_bits(self) -> np.ndarray:
        return _unpack_rows(self.words[None, :], self.length)[0]

    def to_int(self) -> int:
        return _words_to_int(self.words)

    def to_string(self) -> str:
        return "".join("1" if b else "0" for b in self.to_bits())

    def support(self) -> list[int]:
        return np.flatnonzero(self.to_bits()).tolist()

    def weight(self) -> int:
        return int(np.bitwise_count(self.words).sum())

    def is_zero(self) -> bool:
        return not self.words.any()

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ShapeError("vector lengths differ")
        return BitVector(self.length, self.words ^ other.words)

    __add__ = __xor__

    def __len__(self):
        return self.length

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(j)
        return int(self.words[j >> 6] >> np.uint64(j & 63)) & 1

    def __eq__(self, other):
        return isinstance(other, BitVector) and self.length == other.length and np.array_equal(self.words, other.words)

    def __hash__(self):
        return hash((self.length, self.words.tobytes()))

    def __repr__(self):
        return f"BitVector({self.to_string()!r})"


class BitMatrix:
    """Immutable bit-packed GF(2) matrix."""

    def __init__(self, rows: int, cols: int, words: np.ndarray):
        self.rows = int(rows)
        self.cols = int(cols)
        words = np.asarray(words, dtype=np.uint64).reshape(self.rows, _nwords(self.cols)).copy()
        words.flags.writeable = False
        self.words = words

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, np.zeros((rows, _nwords(cols)), dtype=np.uint64))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_dense(cls, dense) -> "BitMatrix":
        dense = np.asarray(dense, dtype=np.uint8)
        if dense.ndim != 2:
            raise ShapeError("expected a 2-d array")
        return cls(dense.shape[0], dense.shape[1], _pack_rows(dense))

    @classmethod
    def from_row_ints(cls, rows: list[int], cols: int) -> "BitMatrix":
        nw = _nwords(cols)
        words = np.zeros((len(rows), nw), dtype=np.uint64)
        for i, v in enumerate(rows):
            words[i] = _int_to_words(v, nw)
        return cls(len(rows), cols, words)

    @cached_property
    def dense(self) -> np.ndarray:
        out = _unpack_rows(self.words, self.cols)
        out.flags.writeable = False
        return out

    def to_dense(self) -> np.ndarray:
        return self.dense.copy()

    def row_ints(self) -> list[int]:
        return [_words_to_int(row) for row in self.words]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij) -> int:
        i, j = ij
        return int(self.words[i, j >> 6] >> np.uint64(j & 63)) & 1

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.words[i])

    def column(self, j: int) -> BitVector:
        return BitVector.from_bits(self.dense[:, j])

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.dense.T)

    @property
    def T(self) -> "BitMatrix":
        return self.transpose()

    def row_weights(self) -> np.ndarray:
        return np.bitwise_count(self.words).sum(axis=1).astype(np.int64)

    def column_weights(self) -> np.ndarray:
        return self.dense.sum(axis=0, dtype=np.int64)

    @cached_property
    def column_supports(self) -> np.ndarray:
        """Row indices of each column, shape ``(cols, v)``; needs constant column weight."""
        return _supports(self.dense.T, "column")

    @cached_property
    def row_supports(self) -> np.ndarray:
        """Column indices of each row, shape ``(rows, w)``; needs constant row weight."""
        return _supports(self.dense, "row")

    def __eq__(self, other):
        return (
            isinstance(other, BitMatrix)
            and self.shape == other.shape
            and np.array_equal(self.words, other.words)
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.words.tobytes()))

    def __repr__(self):
        return f"BitMatrix({self.rows}x{self.cols})"

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        for row in self.dense:
            lines.append("".join("1" if b else "0" for b in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BitMatrix":
        rows = [line.strip() for line in text.splitlines() if line.strip()]
        if not rows:
            raise ValueError("empty matrix file")
        try:
            r, c = (int(x) for x in rows[0].split())
        except ValueError as exc:
            raise ValueError(f"bad matrix header {rows[0]!r}") from exc
        body = rows[1:]
        if len(body) != r or any(len(line) != c or set(line) - {"0", "1"} for line in body):
            raise ValueError("matrix body does not match its header")
        dense = np.array([[ch == "1" for ch in line] for line in body], dtype=np.uint8).reshape(r, c)
        return cls.from_dense(dense)


def incidence_matrix(system) -> BitMatrix:
    """Points index rows, blocks index columns: column ``j`` supports block ``j``."""
    return BitMatrix.from_dense(system.incidence)


def concat_horizontal(parts: list[BitMatrix]) -> BitMatrix:
    if not parts:
        raise ShapeError("nothing to concatenate")
    if len({p.rows for p in parts}) != 1:
        raise ShapeError("row counts differ")
    return BitMatrix.from_dense(np.hstack([p.dense for p in parts]))


def _echelon(rows: list[int]) -> tuple[list[int], list[int]]:
    """Reduced row echelon form of int-encoded rows; returns (rows, pivot bits)."""
    rows = [r for r in rows if r]
    reduced: list[int] = []
    pivots: list[int] = []
    for r in rows:
        for red, piv in zip(reduced, pivots):
            if r >> piv & 1:
                r ^= red
        if not r:
            continue
        piv = (r & -r).bit_length() - 1
        for i, red in enumerate(reduced):
            if red >> piv & 1:
                reduced[i] = red ^ r
        reduced.append(r)
        pivots.append(piv)
    return reduced, pivots


def rank_gf2(M: BitMatrix) -> int:
    return len(_echelon(M.row_ints())[0])


def kernel_basis(M: BitMatrix) -> list[BitVector]:
    """Basis of ``{x : M x^T = 0}``, one vector per free column, in column order."""
    reduced, pivots = _echelon(M.row_ints())
    pivot_set = set(pivots)
    basis = []
    for free in range(M.cols):
        if free in pivot_set:
            continue
        v = 1 << free
        for red, piv in zip(reduced, pivots):
            if red >> free & 1:
                v |= 1 << piv
        basis.append(BitVector.from_int(M.cols, v))
    return basis


def mat_mul_gf2(X: BitMatrix, Y: BitMatrix) -> BitMatrix:
    return BitMatrix.from_dense(mat_mul_int(X, Y) & 1)


def mat_mul_int(X: BitMatrix, Y: BitMatrix) -> np.ndarray:
    """Integer product of the 0/1 lifts of ``X`` and ``Y``."""
    if X.cols != Y.rows:
        raise ShapeError(f"cannot multiply {X.shape} by {Y.shape}")
    prod = X.dense.astype(np.float64) @ Y.dense.astype(np.float64)
    return prod.astype(np.int64)


def mat_vec(M: BitMatrix, v: BitVector) -> BitVector:
    if v.length != M.cols:
        raise ShapeError(f"vector of length {v.length} vs matrix with {M.cols} columns")
    parity = np.bitwise_count(M.words & v.words[None, :]).sum(axis=1) & 1
    return BitVector.from_bits(parity.astype(np.uint8))


def max_column_intersection(M: BitMatrix) -> int:
    if M.cols < 2:
        raise DomainError("need at least two columns")
    gram = mat_mul_int(M.transpose(), M)
    np.fill_diagonal(gram, -1)
    return int(gram.max())
