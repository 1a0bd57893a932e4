"""Exact dense linear algebra over a prime field F_p.

Everything downstream (Hom spaces, Ext groups, resolutions) reduces to
rank / nullspace / solve over F_p.  Matrices are stored dense, row-major,
as int64 numpy arrays with entries reduced to [0, p).  All arithmetic is
exact; p defaults to 101 and must be an odd prime small enough that
n * (p-1)^2 stays inside int64 for the matrix sizes in play (true for
any word-sized prime and the dimensions this package handles).

0 x n and n x 0 matrices are legal and behave as zero maps.
"""

from __future__ import annotations

import numpy as np

DEFAULT_PRIME = 101


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def check_prime(p: int) -> int:
    if not _is_prime(p) or p == 2:
        raise ValueError(f"field order must be an odd prime, got {p}")
    return p


class Matrix:
    """Immutable dense matrix over F_p.

    `data` is always a 2-d int64 array with entries in [0, p).
    """

    __slots__ = ("p", "data")

    def __init__(self, p: int, data):
        arr = np.asarray(data, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError(f"matrix data must be 2-d, got shape {arr.shape}")
        self.p = p
        self.data = arr % p
        self.data.setflags(write=False)

    # -- constructors -------------------------------------------------

    @staticmethod
    def zeros(p: int, rows: int, cols: int) -> "Matrix":
        return Matrix(p, np.zeros((rows, cols), dtype=np.int64))

    @staticmethod
    def identity(p: int, n: int) -> "Matrix":
        return Matrix(p, np.eye(n, dtype=np.int64))

    @staticmethod
    def from_rows(p: int, rows) -> "Matrix":
        if len(rows) == 0:
            raise ValueError("from_rows needs at least one row; use zeros for empty")
        return Matrix(p, np.array(rows, dtype=np.int64))

    @staticmethod
    def random(p: int, rows: int, cols: int, rng: np.random.Generator) -> "Matrix":
        return Matrix(p, rng.integers(0, p, size=(rows, cols)))

    # -- shape --------------------------------------------------------

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def is_zero(self) -> bool:
        return not self.data.any()

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.p, self.data + other.data)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.p, self.data - other.data)

    def __neg__(self) -> "Matrix":
        return Matrix(self.p, -self.data)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape()} @ {other.shape()}")
        return Matrix(self.p, self.data @ other.data)

    def scale(self, c: int) -> "Matrix":
        return Matrix(self.p, self.data * (c % self.p))

    def transpose(self) -> "Matrix":
        return Matrix(self.p, self.data.T)

    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.p == other.p
            and self.shape() == other.shape()
            and np.array_equal(self.data, other.data)
        )

    def __hash__(self):
        return hash((self.p, self.data.tobytes(), self.shape()))

    def __repr__(self) -> str:
        return f"Matrix(p={self.p}, {self.data.tolist()})"

    # -- block assembly -----------------------------------------------

    @staticmethod
    def hstack(mats: list["Matrix"]) -> "Matrix":
        if not mats:
            raise ValueError("hstack of empty list")
        p = mats[0].p
        return Matrix(p, np.hstack([m.data for m in mats]))

    @staticmethod
    def vstack(mats: list["Matrix"]) -> "Matrix":
        if not mats:
            raise ValueError("vstack of empty list")
        p = mats[0].p
        return Matrix(p, np.vstack([m.data for m in mats]))

    @staticmethod
    def block(rows_of_blocks: list[list["Matrix"]]) -> "Matrix":
        return Matrix.vstack([Matrix.hstack(row) for row in rows_of_blocks])

    @staticmethod
    def block_diag(p: int, mats: list["Matrix"]) -> "Matrix":
        rows = sum(m.rows for m in mats)
        cols = sum(m.cols for m in mats)
        out = np.zeros((rows, cols), dtype=np.int64)
        r = c = 0
        for m in mats:
            out[r : r + m.rows, c : c + m.cols] = m.data
            r += m.rows
            c += m.cols
        return Matrix(p, out)

    def submatrix(self, row_idx, col_idx) -> "Matrix":
        return Matrix(self.p, self.data[np.ix_(list(row_idx), list(col_idx))])

    def column(self, j: int) -> "Matrix":
        return Matrix(self.p, self.data[:, j : j + 1])


def _inv_mod(x: int, p: int) -> int:
    return pow(int(x) % p, p - 2, p)


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form.

    Returns (R, pivot_cols).  Pivot entries are normalized to 1 and are
    the only nonzero entries in their columns; rank = len(pivot_cols).
    """
    p = m.p
    a = m.data.copy()
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * _inv_mod(a[r, c], p)) % p
        col = a[:, c].copy()
        col[r] = 0
        # eliminate column c from every other row in one vectorized update
        a = (a - np.outer(col, a[r])) % p
        pivots.append(c)
        r += 1
    return Matrix(p, a), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace(m: Matrix) -> Matrix:
    """Basis of the right kernel, returned as the columns of a matrix.

    The basis is in reduced-echelon normal form: for each free column f
    there is one basis vector with a 1 in position f and support only on
    pivot positions otherwise.  dim = cols - rank.
    """
    p = m.p
    r, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = np.zeros((m.cols, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        basis[f, k] = 1
        for row, pc in enumerate(pivots):
            basis[pc, k] = (-int(r.data[row, f])) % p
    return Matrix(p, basis)


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """Some x with a @ x = b, or None if the system is inconsistent.

    b may have several columns; x is solved column-wise in one reduction.
    """
    if a.rows != b.rows:
        raise ValueError(f"solve: row mismatch {a.rows} vs {b.rows}")
    p = a.p
    if a.cols == 0:
        return Matrix.zeros(p, 0, b.cols) if b.is_zero() else None
    aug = Matrix.hstack([a, b])
    r, pivots = rref(aug)
    if any(c >= a.cols for c in pivots):
        return None
    x = np.zeros((a.cols, b.cols), dtype=np.int64)
    for row, pc in enumerate(pivots):
        x[pc] = r.data[row, a.cols :]
    return Matrix(p, x)


def inverse(m: Matrix) -> Matrix | None:
    """Two-sided inverse of a square matrix, or None if singular."""
    if m.rows != m.cols:
        return None
    x = solve(m, Matrix.identity(m.p, m.rows))
    if x is None:
        return None
    return x


def column_space_basis(m: Matrix) -> Matrix:
    """Columns of m restricted to a maximal independent subset."""
    _, pivots = rref(m)
    return m.submatrix(range(m.rows), pivots)


def row_space_basis(m: Matrix) -> Matrix:
    """Nonzero rows of the reduced row-echelon form."""
    r, pivots = rref(m)
    return Matrix(m.p, r.data[: len(pivots), :])


def left_nullspace(m: Matrix) -> Matrix:
    """Basis of {y : y m = 0}, as rows of a matrix."""
    return nullspace(m.transpose()).transpose()


def in_column_span(basis: Matrix, v: Matrix) -> bool:
    return solve(basis, v) is not None


def kron(a: Matrix, b: Matrix) -> Matrix:
    return Matrix(a.p, np.kron(a.data, b.data))
