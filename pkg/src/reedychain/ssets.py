"""Truncated simplicial sets with explicit operator tables.

Everything is finite: a simplicial set here has levels 0..N only, stored as
lex-ordered label lists with face and degeneracy tables as index arrays.
The simplex families (standard simplex, its boundary, horns) use monotone
tuples as labels, so subobjects and products stay inspectable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .chain import ChainComplex, ChainMap
from .errors import ValidationFailure
from .linalg import FpMatrix


@lru_cache(maxsize=None)
def monotone_maps(m: int, n: int) -> tuple[tuple[int, ...], ...]:
    """All monotone maps [m] -> [n] as value tuples, lex order."""
    if m < 0 or n < 0:
        return ()
    out: list[tuple[int, ...]] = []

    def rec(prefix, lo):
        if len(prefix) == m + 1:
            out.append(tuple(prefix))
            return
        for v in range(lo, n + 1):
            rec(prefix + [v], v)

    rec([], 0)
    return tuple(out)


def factor_monotone(alpha: tuple[int, ...], n: int):
    """Decompose a monotone alpha: [m] -> [n] into elementary operator steps.

    Returns [(kind, index), ...] with kind in {"d", "s"}; applying the steps
    in list order to a level-n element computes the induced action X(alpha).
    """
    alpha = tuple(alpha)
    if not alpha:
        raise ValidationFailure("empty tuple is not a map of simplices")
    if any(alpha[i] > alpha[i + 1] for i in range(len(alpha) - 1)):
        raise ValidationFailure(f"{alpha} is not monotone")
    if alpha[0] < 0 or alpha[-1] > n:
        raise ValidationFailure(f"{alpha} is not valued in 0..{n}")
    ops: list[tuple[str, int]] = []
    cur, cur_n = alpha, n
    while True:
        img = set(cur)
        missing = [v for v in range(cur_n + 1) if v not in img]
        if not missing:
            break
        v = missing[0]
        ops.append(("d", v))
        cur = tuple(x - 1 if x > v else x for x in cur)
        cur_n -= 1
    s_ops: list[tuple[str, int]] = []
    while len(cur) - 1 > cur_n:
        i = next(j for j in range(len(cur) - 1) if cur[j] == cur[j + 1])
        s_ops.append(("s", i))
        cur = cur[: i + 1] + cur[i + 2 :]
    return ops + list(reversed(s_ops))


@dataclass(frozen=True, eq=False)
class SSet:
    """Levels 0..N; faces[m-1][i] and degens[m][i] are index tuples."""

    N: int
    levels: tuple[tuple, ...]
    faces: tuple[tuple[tuple[int, ...], ...], ...]
    degens: tuple[tuple[tuple[int, ...], ...], ...]
    indexes: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if not self.indexes:
            idx = tuple({lab: i for i, lab in enumerate(lvl)} for lvl in self.levels)
            object.__setattr__(self, "indexes", idx)

    @classmethod
    def build(cls, N, levels, face_fn, degen_fn) -> "SSet":
        """Tables from label-level operator functions; results must be labels
        present at the right level."""
        levels = tuple(tuple(lvl) for lvl in levels)
        index = [{lab: i for i, lab in enumerate(lvl)} for lvl in levels]
        faces = []
        for m in range(1, N + 1):
            per_i = []
            for i in range(m + 1):
                row = []
                for lab in levels[m]:
                    out = face_fn(m, i, lab)
                    if out not in index[m - 1]:
                        raise ValidationFailure(
                            f"face d_{i} leaves the simplex set at level {m}"
                        )
                    row.append(index[m - 1][out])
                per_i.append(tuple(row))
            faces.append(tuple(per_i))
        degens = []
        for m in range(N):
            per_i = []
            for i in range(m + 1):
                row = []
                for lab in levels[m]:
                    out = degen_fn(m, i, lab)
                    if out not in index[m + 1]:
                        raise ValidationFailure(
                            f"degeneracy s_{i} leaves the simplex set at level {m}"
                        )
                    row.append(index[m + 1][out])
                per_i.append(tuple(row))
            degens.append(tuple(per_i))
        return cls(N, levels, tuple(faces), tuple(degens))

    def card(self, m: int) -> int:
        return len(self.levels[m])

    def label(self, m: int, idx: int):
        return self.levels[m][idx]

    def index_of(self, m: int, lab) -> int:
        return self.indexes[m][lab]

    def face(self, m: int, i: int, idx: int) -> int:
        return self.faces[m - 1][i][idx]

    def degen(self, m: int, i: int, idx: int) -> int:
        return self.degens[m][i][idx]

    def __eq__(self, other):
        if not isinstance(other, SSet):
            return NotImplemented
        return (
            self.N == other.N
            and self.levels == other.levels
            and self.faces == other.faces
            and self.degens == other.degens
        )

    def __hash__(self):
        return hash((self.N, self.levels, self.faces, self.degens))


def validate_sset(x: SSet):
    """Table shapes plus all five simplicial identity families."""
    if len(x.levels) != x.N + 1:
        raise ValidationFailure("level list does not match N")
    if len(x.faces) != x.N or len(x.degens) != x.N:
        raise ValidationFailure("operator tables do not match N")
    for m in range(1, x.N + 1):
        if len(x.faces[m - 1]) != m + 1:
            raise ValidationFailure(f"expected {m + 1} face operators at level {m}")
        for row in x.faces[m - 1]:
            if len(row) != x.card(m) or any(
                not (0 <= v < x.card(m - 1)) for v in row
            ):
                raise ValidationFailure(f"face table malformed at level {m}")
    for m in range(x.N):
        if len(x.degens[m]) != m + 1:
            raise ValidationFailure(f"expected {m + 1} degeneracies at level {m}")
        for row in x.degens[m]:
            if len(row) != x.card(m) or any(
                not (0 <= v < x.card(m + 1)) for v in row
            ):
                raise ValidationFailure(f"degeneracy table malformed at level {m}")
    for m in range(2, x.N + 1):
        for j in range(m + 1):
            for i in range(j):
                for idx in range(x.card(m)):
                    if x.face(m - 1, i, x.face(m, j, idx)) != x.face(
                        m - 1, j - 1, x.face(m, i, idx)
                    ):
                        raise ValidationFailure(
                            f"d_{i} d_{j} identity fails at level {m}"
                        )
    for m in range(x.N - 1):
        for j in range(m + 1):
            for i in range(j + 1):
                for idx in range(x.card(m)):
                    if x.degen(m + 1, i, x.degen(m, j, idx)) != x.degen(
                        m + 1, j + 1, x.degen(m, i, idx)
                    ):
                        raise ValidationFailure(
                            f"s_{i} s_{j} identity fails at level {m}"
                        )
    for m in range(x.N):
        for j in range(m + 1):
            for i in range(m + 2):
                for idx in range(x.card(m)):
                    got = x.face(m + 1, i, x.degen(m, j, idx))
                    if i < j:
                        want = x.degen(m - 1, j - 1, x.face(m, i, idx)) if m else None
                        if want is None:
                            raise ValidationFailure("mixed identity out of range")
                    elif i in (j, j + 1):
                        want = idx
                    else:
                        want = x.degen(m - 1, j, x.face(m, i - 1, idx)) if m else None
                        if want is None:
                            raise ValidationFailure("mixed identity out of range")
                    if got != want:
                        raise ValidationFailure(
                            f"d_{i} s_{j} identity fails at level {m}"
                        )


@dataclass(frozen=True, eq=False)
class SSetMap:
    """Levelwise index maps; ``weq`` records whether the map is known to be a
    weak equivalence (True/False) or unknown (None)."""

    source: SSet
    target: SSet
    levels: tuple[tuple[int, ...], ...]
    weq: bool | None = None

    def apply(self, m: int, idx: int) -> int:
        return self.levels[m][idx]

    def is_injective(self) -> bool:
        return all(len(set(lvl)) == len(lvl) for lvl in self.levels)

    def __matmul__(self, other: "SSetMap") -> "SSetMap":
        if other.target != self.source:
            raise ValidationFailure("simplicial map composition mismatch")
        lv = tuple(
            tuple(self.levels[m][v] for v in other.levels[m])
            for m in range(self.source.N + 1)
        )
        weq = True if (self.weq is True and other.weq is True) else None
        return SSetMap(other.source, self.target, lv, weq)

    def __eq__(self, other):
        if not isinstance(other, SSetMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.levels == other.levels
        )

    def __hash__(self):
        return hash((self.source, self.target, self.levels))


def identity_sset_map(x: SSet) -> SSetMap:
    return SSetMap(x, x, tuple(tuple(range(x.card(m))) for m in range(x.N + 1)), True)


def validate_sset_map(f: SSetMap):
    if f.source.N != f.target.N:
        raise ValidationFailure("simplicial map between different truncations")
    for m in range(f.source.N + 1):
        if len(f.levels[m]) != f.source.card(m):
            raise ValidationFailure(f"level {m} map has wrong length")
        if any(not (0 <= v < f.target.card(m)) for v in f.levels[m]):
            raise ValidationFailure(f"level {m} map out of range")
    for m in range(1, f.source.N + 1):
        for i in range(m + 1):
            for idx in range(f.source.card(m)):
                if f.target.face(m, i, f.apply(m, idx)) != f.apply(
                    m - 1, f.source.face(m, i, idx)
                ):
                    raise ValidationFailure(f"map breaks d_{i} at level {m}")
    for m in range(f.source.N):
        for i in range(m + 1):
            for idx in range(f.source.card(m)):
                if f.target.degen(m, i, f.apply(m, idx)) != f.apply(
                    m + 1, f.source.degen(m, i, idx)
                ):
                    raise ValidationFailure(f"map breaks s_{i} at level {m}")


def sset_map_from_labels(source: SSet, target: SSet, fn, weq=None) -> SSetMap:
    lv = []
    for m in range(source.N + 1):
        row = []
        for lab in source.levels[m]:
            out = fn(m, lab)
            row.append(target.index_of(m, out))
        lv.append(tuple(row))
    return SSetMap(source, target, tuple(lv), weq)


# ---------------------------------------------------------------------------
# families


def _tuple_face(m, i, lab):
    return lab[:i] + lab[i + 1 :]


def _tuple_degen(m, i, lab):
    return lab[: i + 1] + lab[i:]


@lru_cache(maxsize=None)
def delta(N: int, n: int) -> SSet:
    """The standard n-simplex truncated at level N; labels are monotone
    tuples [m] -> [n]."""
    levels = [monotone_maps(m, n) for m in range(N + 1)]
    return SSet.build(N, levels, _tuple_face, _tuple_degen)


def sub_sset_inclusion(amb: SSet, keep) -> SSetMap:
    """Inclusion of the subobject on labels passing ``keep(m, lab)``; raises
    if the selection is not closed under the operators."""
    levels = [
        tuple(lab for lab in amb.levels[m] if keep(m, lab)) for m in range(amb.N + 1)
    ]

    def face_fn(m, i, lab):
        out = amb.label(m - 1, amb.face(m, i, amb.index_of(m, lab)))
        if not keep(m - 1, out):
            raise ValidationFailure("selection not closed under faces")
        return out

    def degen_fn(m, i, lab):
        out = amb.label(m + 1, amb.degen(m, i, amb.index_of(m, lab)))
        if not keep(m + 1, out):
            raise ValidationFailure("selection not closed under degeneracies")
        return out

    sub = SSet.build(amb.N, levels, face_fn, degen_fn)
    return sset_map_from_labels(sub, amb, lambda m, lab: lab)


@lru_cache(maxsize=None)
def boundary_inclusion(N: int, n: int) -> SSetMap:
    """Boundary of the n-simplex (non-surjective tuples) into the simplex.
    Not a weak equivalence, and marked so."""
    full = frozenset(range(n + 1))
    incl = sub_sset_inclusion(delta(N, n), lambda m, lab: set(lab) != full)
    return SSetMap(incl.source, incl.target, incl.levels, False)


@lru_cache(maxsize=None)
def horn_inclusion(N: int, n: int, k: int) -> SSetMap:
    """The horn missing the k-th face: tuples whose image joined with {k} is
    still proper.  Marked as a weak equivalence."""
    if not (0 <= k <= n) or n < 1:
        raise ValidationFailure(f"no horn at position {k} of the {n}-simplex")
    full = set(range(n + 1))
    incl = sub_sset_inclusion(delta(N, n), lambda m, lab: set(lab) | {k} != full)
    return SSetMap(incl.source, incl.target, incl.levels, True)


def delta_map(N: int, alpha: tuple[int, ...], n: int) -> SSetMap:
    """The simplex map induced by a monotone alpha: [m] -> [n], acting by
    postcomposition on labels.  Always a weak equivalence."""
    alpha = tuple(alpha)
    factor_monotone(alpha, n)  # validates monotonicity and range
    src = delta(N, len(alpha) - 1)
    tgt = delta(N, n)
    return sset_map_from_labels(
        src, tgt, lambda m, lab: tuple(alpha[v] for v in lab), True
    )


def product(x: SSet, y: SSet) -> SSet:
    """Levelwise product; label (a, b), index row-major in the factors."""
    if x.N != y.N:
        raise ValidationFailure("product of different truncations")
    N = x.N
    levels = []
    for m in range(N + 1):
        levels.append(tuple((a, b) for a in x.levels[m] for b in y.levels[m]))
    faces = []
    for m in range(1, N + 1):
        cy, cy1 = y.card(m), y.card(m - 1)
        per_i = []
        for i in range(m + 1):
            fx, fy = x.faces[m - 1][i], y.faces[m - 1][i]
            row = tuple(
                fx[ix] * cy1 + fy[iy]
                for ix in range(x.card(m))
                for iy in range(cy)
            )
            per_i.append(row)
        faces.append(tuple(per_i))
    degens = []
    for m in range(N):
        cy, cy1 = y.card(m), y.card(m + 1)
        per_i = []
        for i in range(m + 1):
            sx, sy = x.degens[m][i], y.degens[m][i]
            row = tuple(
                sx[ix] * cy1 + sy[iy]
                for ix in range(x.card(m))
                for iy in range(cy)
            )
            per_i.append(row)
        degens.append(tuple(per_i))
    return SSet(N, tuple(levels), tuple(faces), tuple(degens))


def product_map(f: SSetMap, g: SSetMap) -> SSetMap:
    src = product(f.source, g.source)
    tgt = product(f.target, g.target)
    lv = []
    for m in range(src.N + 1):
        ct = g.target.card(m)
        cs = g.source.card(m)
        row = tuple(
            f.levels[m][ix] * ct + g.levels[m][iy]
            for ix in range(f.source.card(m))
            for iy in range(cs)
        )
        lv.append(row)
    return SSetMap(src, tgt, tuple(lv))


def product_projections(x: SSet, y: SSet) -> tuple[SSetMap, SSetMap]:
    pr = product(x, y)
    lv1, lv2 = [], []
    for m in range(x.N + 1):
        cy = y.card(m)
        lv1.append(tuple(i // cy for i in range(pr.card(m))))
        lv2.append(tuple(i % cy for i in range(pr.card(m))))
    return SSetMap(pr, x, tuple(lv1)), SSetMap(pr, y, tuple(lv2))


def box_boundary(f: SSetMap, g: SSetMap) -> SSetMap:
    """For subobject inclusions f: A -> B and g: C -> D, the inclusion of
    (A x D) union (B x C) into B x D."""
    if not (f.is_injective() and g.is_injective()):
        raise ValidationFailure("box boundary needs injective inclusions")
    im_f = [
        frozenset(f.target.label(m, v) for v in f.levels[m])
        for m in range(f.source.N + 1)
    ]
    im_g = [
        frozenset(g.target.label(m, v) for v in g.levels[m])
        for m in range(g.source.N + 1)
    ]
    amb = product(f.target, g.target)
    return sub_sset_inclusion(
        amb, lambda m, lab: lab[0] in im_f[m] or lab[1] in im_g[m]
    )


# ---------------------------------------------------------------------------
# degeneracy structure and normalized chains


def degenerate_indices(x: SSet, m: int) -> frozenset[int]:
    if m == 0:
        return frozenset()
    out = set()
    for i in range(m):
        out.update(x.degens[m - 1][i])
    return frozenset(out)


def is_degenerate(x: SSet, m: int, idx: int) -> bool:
    return idx in degenerate_indices(x, m)


def nondegenerate_indices(x: SSet, m: int) -> tuple[int, ...]:
    bad = degenerate_indices(x, m)
    return tuple(i for i in range(x.card(m)) if i not in bad)


def normalized_chains(x: SSet, p: int) -> ChainComplex:
    """Chains on nondegenerate simplices in degrees 0..N, alternating-sum
    differential with degenerate faces sent to zero."""
    nd = [nondegenerate_indices(x, m) for m in range(x.N + 1)]
    pos = [{idx: j for j, idx in enumerate(row)} for row in nd]
    dims = [len(row) for row in nd]
    diffs = {}
    for m in range(1, x.N + 1):
        mat = np.zeros((dims[m - 1], dims[m]), dtype=np.int64)
        for col, idx in enumerate(nd[m]):
            for i in range(m + 1):
                tgt = x.face(m, i, idx)
                if tgt in pos[m - 1]:
                    mat[pos[m - 1][tgt], col] += (-1) ** (i % 2)
        diffs[m] = FpMatrix(p, mat)
    return ChainComplex.build(p, 0, dims, diffs)


def normalized_chains_map(f: SSetMap, p: int) -> ChainMap:
    src = normalized_chains(f.source, p)
    tgt = normalized_chains(f.target, p)
    blocks = {}
    for m in range(f.source.N + 1):
        nd_s = nondegenerate_indices(f.source, m)
        pos_t = {idx: j for j, idx in enumerate(nondegenerate_indices(f.target, m))}
        mat = np.zeros((len(pos_t), len(nd_s)), dtype=np.int64)
        for col, idx in enumerate(nd_s):
            out = f.apply(m, idx)
            if out in pos_t:
                mat[pos_t[out], col] = 1
        blocks[m] = FpMatrix(p, mat)
    return ChainMap.build(src, tgt, blocks)


def operator_action(x: SSet, alpha: tuple[int, ...], n: int) -> tuple[int, ...]:
    """Index map X_n -> X_m for monotone alpha: [m] -> [n], both within the
    truncation."""
    m = len(alpha) - 1
    if n > x.N or m > x.N:
        raise ValidationFailure("operator action outside the truncation")
    ops = factor_monotone(tuple(alpha), n)
    out = []
    for idx in range(x.card(n)):
        cur, lvl = idx, n
        for kind, i in ops:
            if kind == "d":
                cur = x.face(lvl, i, cur)
                lvl -= 1
            else:
                cur = x.degen(lvl, i, cur)
                lvl += 1
        out.append(cur)
    return tuple(out)
