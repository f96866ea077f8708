"""Dense exact linear algebra over the prime field F_p.

Matrices are numpy int64 arrays with entries kept as canonical residues in
``0..p-1``.  Everything downstream (chain complexes, latching objects, lifting
problems) reduces to the four primitives here: reduced row echelon form with
deterministic leftmost pivots, solving ``A X = B`` with free variables set to
zero, kernel bases enumerated in column order, and quotient bases read off the
non-pivot coordinates of an rref.

Products stay well inside int64 range: with p <= 2**15 and at most 2**20
summands, partial sums are below 2**50.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import FieldMismatchError, ResourceCapError


def _as_residues(p: int, a: np.ndarray) -> np.ndarray:
    out = np.asarray(a, dtype=np.int64) % p
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class FpMatrix:
    """Immutable matrix over F_p.

    Args:
        p: prime modulus (primality is the caller's responsibility; the
            configuration layer checks it once per run).
        a: 2-D integer array; stored reduced mod p and read-only.
    """

    p: int
    a: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.a)
        if arr.ndim != 2:
            raise ValueError(f"expected 2-D array, got shape {arr.shape}")
        object.__setattr__(self, "a", _as_residues(self.p, arr))

    @classmethod
    def from_rows(cls, p: int, rows) -> "FpMatrix":
        arr = np.array(rows, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.size == 0:
            arr = arr.reshape(len(rows), 0) if rows else arr.reshape(0, 0)
        return cls(p, arr)

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def tolists(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.a]

    def is_zero(self) -> bool:
        return not self.a.any()

    def _check_p(self, other: "FpMatrix"):
        if self.p != other.p:
            raise FieldMismatchError(f"mixed moduli {self.p} and {other.p}")

    def __eq__(self, other):
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return (
            self.p == other.p
            and self.shape == other.shape
            and bool(np.array_equal(self.a, other.a))
        )

    def __hash__(self):
        return hash((self.p, self.shape, self.a.tobytes()))

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        self._check_p(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return FpMatrix(self.p, (self.a @ other.a) % self.p)

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        self._check_p(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return FpMatrix(self.p, self.a + other.a)

    def __sub__(self, other: "FpMatrix") -> "FpMatrix":
        self._check_p(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return FpMatrix(self.p, self.a - other.a)

    def __neg__(self) -> "FpMatrix":
        return FpMatrix(self.p, -self.a)

    def scale(self, c: int) -> "FpMatrix":
        return FpMatrix(self.p, self.a * (c % self.p))

    def transpose(self) -> "FpMatrix":
        return FpMatrix(self.p, self.a.T)

    def column(self, j: int) -> "FpMatrix":
        return FpMatrix(self.p, self.a[:, j : j + 1])

    def rank(self) -> int:
        return len(rref(self)[1])

    def entry_count(self) -> int:
        return self.rows * self.cols


def zeros(p: int, rows: int, cols: int) -> FpMatrix:
    return FpMatrix(p, np.zeros((rows, cols), dtype=np.int64))


def eye(p: int, n: int) -> FpMatrix:
    return FpMatrix(p, np.eye(n, dtype=np.int64))


def hstack(ms: list[FpMatrix]) -> FpMatrix:
    p = ms[0].p
    for m in ms[1:]:
        ms[0]._check_p(m)
    return FpMatrix(p, np.hstack([m.a for m in ms]))


def vstack(ms: list[FpMatrix]) -> FpMatrix:
    p = ms[0].p
    for m in ms[1:]:
        ms[0]._check_p(m)
    return FpMatrix(p, np.vstack([m.a for m in ms]))


def block_diag(p: int, ms: list[FpMatrix]) -> FpMatrix:
    rows = sum(m.rows for m in ms)
    cols = sum(m.cols for m in ms)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for m in ms:
        out[r : r + m.rows, c : c + m.cols] = m.a
        r += m.rows
        c += m.cols
    return FpMatrix(p, out)


def kron(a: FpMatrix, b: FpMatrix) -> FpMatrix:
    a._check_p(b)
    return FpMatrix(a.p, np.kron(a.a, b.a) % a.p)


def check_system_cap(rows: int, cols: int, cap: int | None):
    """Guard assembled scratch systems by cap**2 total entries."""
    if cap is not None and rows * cols > cap * cap:
        raise ResourceCapError(
            f"linear system of {rows}x{cols} entries exceeds the squared cap {cap}^2"
        )


def _rref_inplace(p: int, a: np.ndarray) -> list[int]:
    """Row reduce ``a`` (mutated) to reduced echelon form; returns pivot columns.

    Pivot search is leftmost-column, topmost-row, which makes every derived
    basis deterministic.
    """
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        other = a[:, c].copy()
        other[r] = 0
        if other.any():
            a -= np.outer(other, a[r])
            a %= p
        pivots.append(c)
        r += 1
    return pivots


def rref(m: FpMatrix) -> tuple[FpMatrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    a = m.a.copy()
    pivots = _rref_inplace(m.p, a)
    return FpMatrix(m.p, a), tuple(pivots)


def solve(a: FpMatrix, b: FpMatrix) -> FpMatrix | None:
    """Solve ``a @ x == b`` columnwise; free variables are set to zero.

    Returns None when the system is inconsistent.  ``b`` may have any number
    of columns; the solution is unique per column once free variables are
    pinned, so the result is deterministic.
    """
    a._check_p(b)
    if a.rows != b.rows:
        raise ValueError(f"shape mismatch solve {a.shape} vs {b.shape}")
    n = a.cols
    aug = np.hstack([a.a, b.a])
    pivots = _rref_inplace(a.p, aug)
    if any(c >= n for c in pivots):
        return None
    x = np.zeros((n, b.cols), dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = aug[r, n:]
    return FpMatrix(a.p, x)


def kernel_basis(m: FpMatrix) -> FpMatrix:
    """Basis of ``ker m`` as columns, one per non-pivot column, in column order.

    The basis vector for free column j has 1 in coordinate j and, for each
    pivot row, minus the rref entry in column j.
    """
    r, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    k = np.zeros((m.cols, len(free)), dtype=np.int64)
    for idx, j in enumerate(free):
        k[j, idx] = 1
        for row, c in enumerate(pivots):
            k[c, idx] = (-int(r.a[row, j])) % m.p
    return FpMatrix(m.p, k)


def quotient_by_columns(sub: FpMatrix, ambient_dim: int) -> tuple[FpMatrix, FpMatrix]:
    """Quotient of F_p^ambient_dim by the column span of ``sub``.

    Returns (proj, sect): proj maps the ambient space onto the quotient in the
    basis given by the non-pivot coordinates of the row-reduced span; sect is
    the standard-basis section with proj @ sect == identity.
    """
    if sub.rows != ambient_dim:
        raise ValueError(f"subspace lives in dim {sub.rows}, expected {ambient_dim}")
    p = sub.p
    r, pivots = rref(sub.transpose())
    free = [c for c in range(ambient_dim) if c not in set(pivots)]
    q = len(free)
    proj = np.zeros((q, ambient_dim), dtype=np.int64)
    # reduce e_j against the rref rows; surviving non-pivot coordinates are
    # the quotient coordinates
    for out_row, j in enumerate(free):
        proj[out_row, j] = 1
    for row, c in enumerate(pivots):
        # e_c reduces to -sum over free coords of rref entries
        for out_row, j in enumerate(free):
            proj[out_row, c] = (-int(r.a[row, j])) % p
    sect = np.zeros((ambient_dim, q), dtype=np.int64)
    for idx, j in enumerate(free):
        sect[j, idx] = 1
    return FpMatrix(p, proj), FpMatrix(p, sect)


def random_invertible(p: int, n: int, rng) -> FpMatrix:
    """Deterministic-from-rng invertible matrix: L @ U with unit diagonals,
    composed with a permutation."""
    lo = np.tril(rng.integers(0, p, size=(n, n)), -1) + np.eye(n, dtype=np.int64)
    up = np.triu(rng.integers(0, p, size=(n, n)), 1) + np.eye(n, dtype=np.int64)
    perm = np.eye(n, dtype=np.int64)[rng.permutation(n)]
    return FpMatrix(p, (lo @ up @ perm) % p)


def invert(m: FpMatrix) -> FpMatrix:
    if m.rows != m.cols:
        raise ValueError("only square matrices invert")
    x = solve(m, eye(m.p, m.rows))
    if x is None:
        raise ValueError("matrix is singular")
    return x
