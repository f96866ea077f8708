"""Assembler for block-structured linear systems over F_p.

Unknowns are matrices X_k; equations have the shape

    sum_k  L @ X_k @ R  =  C

with optional left/right coefficient matrices.  Everything is flattened
row-major (vec(L X R) = kron(L, R^T) vec(X)) into one dense system, which is
then solved or reduced exactly.  Used for chain-map spaces, lifting problems,
and simplicial hom spaces.
"""

from __future__ import annotations

import numpy as np

from .errors import ResourceCapError
from .linalg import FpMatrix, check_system_cap, kernel_basis, solve


class BlockSystem:
    def __init__(self, p: int, cap: int | None = None):
        self.p = p
        self.cap = cap
        self._unknowns: dict = {}
        self._order: list = []
        self._ncols = 0
        self._equations: list = []

    def add_unknown(self, key, rows: int, cols: int):
        if key in self._unknowns:
            raise ValueError(f"duplicate unknown {key!r}")
        self._unknowns[key] = (rows, cols, self._ncols)
        self._order.append(key)
        self._ncols += rows * cols

    def has_unknown(self, key) -> bool:
        return key in self._unknowns

    def unknown_shape(self, key) -> tuple[int, int]:
        r, c, _ = self._unknowns[key]
        return r, c

    @property
    def ambient_dim(self) -> int:
        return self._ncols

    def add_equation(self, shape, terms, rhs: FpMatrix | None = None):
        """One matrix equation.

        shape: (rows, cols) of the equation block.
        terms: iterable of (key, left, right, sign); left=None / right=None
            mean identity.  Terms whose unknown was never added (zero-size
            blocks) are dropped, but the equation itself still constrains the
            rhs to be reachable.
        """
        r, c = shape
        if r * c == 0:
            return
        kept = []
        for key, left, right, sign in terms:
            if key not in self._unknowns:
                continue
            kr, kc = self.unknown_shape(key)
            lr = left.rows if left is not None else r
            rc = right.cols if right is not None else c
            if (lr, rc) != (r, c):
                raise ValueError(f"term shape mismatch on {key!r}")
            if (left.cols if left is not None else r) != kr or (
                right.rows if right is not None else c
            ) != kc:
                raise ValueError(f"coefficient shape mismatch on {key!r}")
            kept.append((key, left, right, sign % self.p))
        self._equations.append((r, c, kept, rhs))

    def _assemble(self):
        nrows = sum(r * c for r, c, _, _ in self._equations)
        check_system_cap(nrows, self._ncols, self.cap)
        a = np.zeros((nrows, self._ncols), dtype=np.int64)
        b = np.zeros((nrows, 1), dtype=np.int64)
        row = 0
        for r, c, terms, rhs in self._equations:
            size = r * c
            for key, left, right, sign in terms:
                kr, kc, off = self._unknowns[key]
                l_arr = left.a if left is not None else np.eye(r, dtype=np.int64)
                r_arr = right.a.T if right is not None else np.eye(c, dtype=np.int64)
                a[row : row + size, off : off + kr * kc] += sign * np.kron(l_arr, r_arr)
            if rhs is not None:
                b[row : row + size, 0] = rhs.a.reshape(-1)
            row += size
        a %= self.p
        b %= self.p
        return FpMatrix(self.p, a), FpMatrix(self.p, b)

    def solve(self):
        """Deterministic solution as {key: FpMatrix}, or None if inconsistent."""
        a, b = self._assemble()
        x = solve(a, b)
        if x is None:
            return None
        return self.blocks_from_vector(x)

    def kernel(self) -> FpMatrix:
        """Basis of the homogeneous solution space (columns, ambient coords)."""
        a, _ = self._assemble()
        return kernel_basis(a)

    def blocks_from_vector(self, vec: FpMatrix) -> dict:
        out = {}
        arr = vec.a.reshape(-1)
        for key in self._order:
            r, c, off = self._unknowns[key]
            out[key] = FpMatrix(self.p, arr[off : off + r * c].reshape(r, c))
        return out
