"""Bounded chain complexes of finite-dimensional F_p vector spaces.

Homological grading: the differential lowers degree by one, d_t : X_t -> X_{t-1},
stored as a matrix of shape (dim_{t-1}, dim_t) acting on column vectors.
Supports are finite intervals, trimmed so that equality of canonical forms is
literal equality.

The model-structure vocabulary used downstream is decided here by exact rank
computations: weak equivalences are quasi-isomorphisms (detected through
mapping-cone acyclicity), fibrations are levelwise surjections, cofibrations
levelwise injections.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import FieldMismatchError, ResourceCapError, ValidationFailure
from .linalg import (
    FpMatrix,
    eye,
    hstack,
    kernel_basis,
    kron,
    quotient_by_columns,
    rref,
    solve,
    vstack,
    zeros,
)
from .system import BlockSystem


@dataclass(frozen=True, eq=False)
class ChainComplex:
    p: int
    lo: int
    dims: tuple[int, ...]
    diffs: tuple[FpMatrix, ...]  # diffs[k] : degree lo+k+1 -> lo+k

    @classmethod
    def build(cls, p, lo, dims, diffs, cap: int | None = None) -> "ChainComplex":
        """Construct with support trimming; ``diffs`` maps source degree t to
        the matrix of d_t."""
        dims = [int(x) for x in dims]
        # trim zero dims at both ends
        while dims and dims[0] == 0:
            dims = dims[1:]
            lo += 1
        while dims and dims[-1] == 0:
            dims = dims[:-1]
        if not dims:
            return cls(p, 0, (), ())
        hi = lo + len(dims) - 1
        mats = []
        for t in range(lo + 1, hi + 1):
            rows, cols = dims[t - 1 - lo], dims[t - lo]
            m = diffs.get(t)
            if m is None:
                m = zeros(p, rows, cols)
            if m.p != p:
                raise FieldMismatchError(f"diff at degree {t} has modulus {m.p}, expected {p}")
            if m.shape != (rows, cols):
                raise ValidationFailure(
                    f"diff at degree {t} has shape {m.shape}, expected {(rows, cols)}"
                )
            if cap is not None and m.entry_count() > cap:
                raise ResourceCapError(
                    f"diff block at degree {t} has {m.entry_count()} entries, cap {cap}"
                )
            mats.append(m)
        return cls(p, lo, tuple(dims), tuple(mats))

    @property
    def hi(self) -> int:
        return self.lo + len(self.dims) - 1

    def degrees(self) -> list[int]:
        return list(range(self.lo, self.lo + len(self.dims)))

    def dim(self, t: int) -> int:
        k = t - self.lo
        if 0 <= k < len(self.dims):
            return self.dims[k]
        return 0

    def total_dim(self) -> int:
        return sum(self.dims)

    def d(self, t: int) -> FpMatrix:
        """Matrix of d_t : X_t -> X_{t-1} (zero-shaped outside the support)."""
        k = t - self.lo - 1
        if 0 <= k < len(self.diffs):
            return self.diffs[k]
        return zeros(self.p, self.dim(t - 1), self.dim(t))

    def is_zero(self) -> bool:
        return not self.dims

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return (
            self.p == other.p
            and self.lo == other.lo
            and self.dims == other.dims
            and self.diffs == other.diffs
        )

    def __hash__(self):
        return hash((self.p, self.lo, self.dims, self.diffs))


def zero_complex(p: int) -> ChainComplex:
    return ChainComplex(p, 0, (), ())


def sphere(p: int, n: int) -> ChainComplex:
    """One copy of F_p in degree n."""
    return ChainComplex.build(p, n, [1], {})


def disk(p: int, n: int) -> ChainComplex:
    """F_p in degrees n and n-1 with identity differential; acyclic."""
    return ChainComplex.build(p, n - 1, [1, 1], {n: FpMatrix.from_rows(p, [[1]])})


def validate_complex(x: ChainComplex, cap: int | None = None):
    """Shape bookkeeping plus d compose d = 0; raises ValidationFailure."""
    for t in x.degrees():
        if x.dim(t) < 0:
            raise ValidationFailure(f"negative dimension at degree {t}")
        if cap is not None and x.d(t).entry_count() > cap:
            raise ResourceCapError(f"diff block at degree {t} exceeds cap {cap}")
    for t in x.degrees():
        m = x.d(t) @ x.d(t + 1)
        if not m.is_zero():
            raise ValidationFailure(f"d.d != 0 entering degree {t - 1}")


@dataclass(frozen=True, eq=False)
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    blocks: tuple[FpMatrix, ...]  # indexed over source support degrees

    @classmethod
    def build(cls, source, target, blocks: dict) -> "ChainMap":
        if source.p != target.p:
            raise FieldMismatchError("source and target over different primes")
        mats = []
        for t in source.degrees():
            m = blocks.get(t)
            if m is None:
                m = zeros(source.p, target.dim(t), source.dim(t))
            if m.p != source.p:
                raise FieldMismatchError(f"block at degree {t} over wrong prime")
            if m.shape != (target.dim(t), source.dim(t)):
                raise ValidationFailure(
                    f"block at degree {t} has shape {m.shape}, "
                    f"expected {(target.dim(t), source.dim(t))}"
                )
            mats.append(m)
        return cls(source, target, tuple(mats))

    @property
    def p(self) -> int:
        return self.source.p

    def block(self, t: int) -> FpMatrix:
        k = t - self.source.lo
        if 0 <= k < len(self.blocks):
            return self.blocks[k]
        return zeros(self.p, self.target.dim(t), self.source.dim(t))

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        return all(
            self.block(t) == other.block(t) for t in self.source.degrees()
        )

    def __hash__(self):
        return hash((self.source, self.target, self.blocks))

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        if other.target != self.source:
            raise ValidationFailure("composition mismatch")
        return ChainMap.build(
            other.source,
            self.target,
            {t: self.block(t) @ other.block(t) for t in other.source.degrees()},
        )

    def __add__(self, other: "ChainMap") -> "ChainMap":
        if self.source != other.source or self.target != other.target:
            raise ValidationFailure("sum of maps with different ends")
        return ChainMap.build(
            self.source,
            self.target,
            {t: self.block(t) + other.block(t) for t in self.source.degrees()},
        )

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return self + other.scale(-1)

    def scale(self, c: int) -> "ChainMap":
        return ChainMap.build(
            self.source,
            self.target,
            {t: self.block(t).scale(c) for t in self.source.degrees()},
        )


def identity_map(x: ChainComplex) -> ChainMap:
    return ChainMap.build(x, x, {t: eye(x.p, x.dim(t)) for t in x.degrees()})


def zero_map(a: ChainComplex, b: ChainComplex) -> ChainMap:
    return ChainMap.build(a, b, {})


def validate_map(f: ChainMap):
    degs = set(f.source.degrees()) | set(f.target.degrees())
    for t in degs:
        lhs = f.target.d(t) @ f.block(t)
        rhs = f.block(t - 1) @ f.source.d(t)
        if lhs != rhs:
            raise ValidationFailure(f"map does not commute with d at degree {t}")


def sphere_disk_inclusion(p: int, n: int) -> ChainMap:
    """The generating cofibration sphere(n-1) -> disk(n)."""
    return ChainMap.build(
        sphere(p, n - 1), disk(p, n), {n - 1: FpMatrix.from_rows(p, [[1]])}
    )


def disk_from_zero(p: int, n: int) -> ChainMap:
    """The generating trivial cofibration 0 -> disk(n)."""
    return zero_map(zero_complex(p), disk(p, n))


# ---------------------------------------------------------------------------
# homology


def cycle_dim(x: ChainComplex, t: int) -> int:
    return x.dim(t) - x.d(t).rank()


def homology_dims(x: ChainComplex) -> dict[int, int]:
    out = {}
    for t in x.degrees():
        h = cycle_dim(x, t) - x.d(t + 1).rank()
        if h:
            out[t] = h
    return out


def is_acyclic(x: ChainComplex) -> bool:
    return not homology_dims(x)


def _homology_coords(x: ChainComplex, t: int):
    """Cycle basis, projection onto homology classes, and a linear section."""
    z = kernel_basis(x.d(t))
    w = solve(z, x.d(t + 1))
    if w is None:
        raise ValidationFailure("boundaries not contained in cycles; complex invalid")
    proj, sect = quotient_by_columns(w, z.cols)
    return z, proj, sect


def homology_map(f: ChainMap, t: int) -> FpMatrix:
    """Induced matrix H_t(source) -> H_t(target)."""
    za, _, secta = _homology_coords(f.source, t)
    zb, projb, _ = _homology_coords(f.target, t)
    v = solve(zb, f.block(t) @ za)
    if v is None:
        raise ValidationFailure("map does not preserve cycles; not a chain map?")
    return projb @ v @ secta


def homology_map_bijective(f: ChainMap, t: int) -> bool:
    m = homology_map(f, t)
    return m.rows == m.cols and m.rank() == m.rows


def mapping_cone(f: ChainMap) -> ChainComplex:
    """cone(f)_t = target_t + source_{t-1}, d(b, a) = (d b + f a, -d a)."""
    a, b = f.source, f.target
    lo = min(b.lo, a.lo + 1) if not (a.is_zero() and b.is_zero()) else 0
    hi = max(b.hi, a.hi + 1) if not (a.is_zero() and b.is_zero()) else -1
    dims, diffs = [], {}
    for t in range(lo, hi + 1):
        dims.append(b.dim(t) + a.dim(t - 1))
    for t in range(lo + 1, hi + 1):
        top = hstack([b.d(t), f.block(t - 1)])
        bot = hstack([zeros(f.p, a.dim(t - 2), b.dim(t)), -a.d(t - 1)])
        diffs[t] = vstack([top, bot])
    return ChainComplex.build(f.p, lo, dims, diffs)


def is_quasi_iso(f: ChainMap) -> bool:
    return is_acyclic(mapping_cone(f))


def quasi_iso_witness(f: ChainMap) -> int | None:
    """First degree where homology of the cone is nonzero, None if quasi-iso."""
    h = homology_dims(mapping_cone(f))
    return min(h) if h else None


def is_mono(f: ChainMap) -> bool:
    return all(f.block(t).rank() == f.source.dim(t) for t in f.source.degrees())


def is_epi(f: ChainMap) -> bool:
    return all(f.block(t).rank() == f.target.dim(t) for t in f.target.degrees())


def mono_witness(f: ChainMap) -> int | None:
    for t in f.source.degrees():
        if f.block(t).rank() != f.source.dim(t):
            return t
    return None


def epi_witness(f: ChainMap) -> int | None:
    for t in f.target.degrees():
        if f.block(t).rank() != f.target.dim(t):
            return t
    return None


def is_iso(f: ChainMap) -> bool:
    return is_mono(f) and is_epi(f)


def invert_map(f: ChainMap) -> ChainMap:
    """Degreewise inverse; the blocks must be square and invertible."""
    from .linalg import invert

    degs = set(f.source.degrees()) | set(f.target.degrees())
    blocks = {}
    for t in degs:
        b = f.block(t)
        if b.rows != b.cols:
            raise ValidationFailure(f"block at degree {t} is not square")
        if b.rows:
            blocks[t] = invert(b)
    return ChainMap.build(f.target, f.source, blocks)


# ---------------------------------------------------------------------------
# sums, shifts


def direct_sum(parts: list[ChainComplex]) -> ChainComplex:
    if not parts:
        raise ValueError("direct_sum of no parts needs an explicit prime; use zero_complex")
    p = parts[0].p
    for x in parts[1:]:
        if x.p != p:
            raise FieldMismatchError("direct sum over different primes")
    live = [x for x in parts if not x.is_zero()]
    if not live:
        return zero_complex(p)
    lo = min(x.lo for x in live)
    hi = max(x.hi for x in live)
    dims = [sum(x.dim(t) for x in parts) for t in range(lo, hi + 1)]
    diffs = {}
    for t in range(lo + 1, hi + 1):
        from .linalg import block_diag

        diffs[t] = block_diag(p, [x.d(t) for x in parts])
    return ChainComplex.build(p, lo, dims, diffs)


def direct_sum_with_maps(parts: list[ChainComplex]):
    """(sum, inclusions, projections) with the summand order of ``parts``."""
    total = direct_sum(parts)
    incs, projs = [], []
    for idx, part in enumerate(parts):
        iblocks, pblocks = {}, {}
        for t in part.degrees():
            off = sum(q.dim(t) for q in parts[:idx])
            m = np.zeros((total.dim(t), part.dim(t)), dtype=np.int64)
            m[off : off + part.dim(t)] = np.eye(part.dim(t), dtype=np.int64)
            iblocks[t] = FpMatrix(total.p, m)
        for t in total.degrees():
            m = np.zeros((part.dim(t), total.dim(t)), dtype=np.int64)
            off = sum(q.dim(t) for q in parts[:idx])
            m[:, off : off + part.dim(t)] = np.eye(part.dim(t), dtype=np.int64)
            pblocks[t] = FpMatrix(total.p, m)
        incs.append(ChainMap.build(part, total, iblocks))
        projs.append(ChainMap.build(total, part, pblocks))
    return total, incs, projs


def inclusion_map(part: ChainComplex, whole: ChainComplex, index: int = 0) -> ChainMap:
    """Inclusion of ``part`` as the leading direct summand of ``whole``."""
    if index != 0:
        raise ValueError("only the leading summand is supported here")
    blocks = {}
    for t in part.degrees():
        m = np.zeros((whole.dim(t), part.dim(t)), dtype=np.int64)
        m[: part.dim(t)] = np.eye(part.dim(t), dtype=np.int64)
        blocks[t] = FpMatrix(part.p, m)
    return ChainMap.build(part, whole, blocks)


def projection_map(whole: ChainComplex, part: ChainComplex, index: int = 0) -> ChainMap:
    if index != 0:
        raise ValueError("only the leading summand is supported here")
    blocks = {}
    for t in whole.degrees():
        m = np.zeros((part.dim(t), whole.dim(t)), dtype=np.int64)
        m[:, : part.dim(t)] = np.eye(part.dim(t), dtype=np.int64)
        blocks[t] = FpMatrix(part.p, m)
    return ChainMap.build(whole, part, blocks)


def extend_by_zero(f: ChainMap, bigger_source: ChainComplex, index: int = 0) -> ChainMap:
    """Extend f along the leading-summand inclusion source -> bigger_source
    by zero on the complement."""
    if index != 0:
        raise ValueError("only the leading summand is supported here")
    blocks = {}
    for t in bigger_source.degrees():
        m = np.zeros((f.target.dim(t), bigger_source.dim(t)), dtype=np.int64)
        b = f.block(t)
        m[:, : b.cols] = b.a
        blocks[t] = FpMatrix(f.p, m)
    return ChainMap.build(bigger_source, f.target, blocks)


def shift_complex(x: ChainComplex, k: int) -> ChainComplex:
    """Degree shift: (x[k])_t = x_{t-k}, differential scaled by (-1)^k."""
    sign = -1 if k % 2 else 1
    diffs = {t + k: x.d(t).scale(sign) for t in x.degrees()}
    return ChainComplex.build(x.p, x.lo + k, list(x.dims), diffs)


def shift_map(f: ChainMap, k: int) -> ChainMap:
    return ChainMap.build(
        shift_complex(f.source, k),
        shift_complex(f.target, k),
        {t + k: f.block(t) for t in f.source.degrees()},
    )


# ---------------------------------------------------------------------------
# kernels, cokernels, pushouts, pullbacks


def kernel_complex(f: ChainMap):
    """(K, incl) with K_t = ker f_t and the induced differential."""
    a = f.source
    bases = {t: kernel_basis(f.block(t)) for t in a.degrees()}
    dims = [bases[t].cols for t in a.degrees()]
    diffs = {}
    for t in a.degrees():
        if t - 1 in bases and bases[t].cols and bases[t - 1].cols:
            m = solve(bases[t - 1], a.d(t) @ bases[t])
            if m is None:
                raise ValidationFailure("differential does not preserve the kernel")
            diffs[t] = m
    k = ChainComplex.build(a.p, a.lo, dims, diffs)
    incl = ChainMap.build(k, a, {t: bases[t] for t in a.degrees() if bases[t].cols})
    return k, incl


def cokernel_complex(f: ChainMap):
    """(Q, proj, sect) with Q_t = target_t / im f_t.

    sect maps degree -> a linear (not chain) section of proj used to induce
    maps out of the quotient.
    """
    b = f.target
    projs, sects = {}, {}
    for t in b.degrees():
        pr, se = quotient_by_columns(f.block(t), b.dim(t))
        projs[t], sects[t] = pr, se
    dims = [projs[t].rows for t in b.degrees()]
    diffs = {}
    for t in b.degrees():
        if t - 1 in projs and projs[t].rows and projs[t - 1].rows:
            diffs[t] = projs[t - 1] @ b.d(t) @ sects[t]
    q = ChainComplex.build(b.p, b.lo, dims, diffs)
    proj = ChainMap.build(b, q, {t: projs[t] for t in b.degrees()})
    return q, proj, sects


@dataclass(frozen=True)
class SpanResult:
    """Pushout or pullback with enough witnesses to mediate."""

    obj: ChainComplex
    left: ChainMap
    right: ChainMap
    _aux: tuple = field(repr=False, default=())


def pushout(f: ChainMap, g: ChainMap) -> SpanResult:
    """Pushout of target(f) <- source -> target(g), as a cokernel."""
    if f.source != g.source:
        raise ValidationFailure("pushout span must share its source")
    b, c = f.target, g.target
    amb, incs, _ = direct_sum_with_maps([b, c])
    span = ChainMap.build(
        f.source,
        amb,
        {
            t: vstack([f.block(t), -g.block(t)])
            for t in f.source.degrees()
        },
    )
    q, proj, sects = cokernel_complex(span)
    left = proj @ incs[0]
    right = proj @ incs[1]
    return SpanResult(q, left, right, (proj, sects, amb))


def pushout_mediator(res: SpanResult, u: ChainMap, v: ChainMap) -> ChainMap:
    """The unique map out of the pushout restricting to u and v."""
    proj, sects, amb = res._aux
    target = u.target
    if v.target != target:
        raise ValidationFailure("cocone legs must share a target")
    blocks = {}
    for t in res.obj.degrees():
        glued = hstack([u.block(t), v.block(t)])
        blocks[t] = glued @ sects[t]
    return ChainMap.build(res.obj, target, blocks)


def pullback(f: ChainMap, g: ChainMap) -> SpanResult:
    """Pullback of source(f) -> target <- source(g), as a kernel."""
    if f.target != g.target:
        raise ValidationFailure("pullback cospan must share its target")
    b, c = f.source, g.source
    amb, _, projs = direct_sum_with_maps([b, c])
    cospan = ChainMap.build(
        amb,
        f.target,
        {t: hstack([f.block(t), -g.block(t)]) for t in amb.degrees()},
    )
    k, incl = kernel_complex(cospan)
    left = projs[0] @ incl
    right = projs[1] @ incl
    return SpanResult(k, left, right, (incl, amb))


def pullback_mediator(res: SpanResult, u: ChainMap, v: ChainMap) -> ChainMap:
    """The unique map into the pullback with the given projections."""
    incl, amb = res._aux
    src = u.source
    if v.source != src:
        raise ValidationFailure("cone legs must share a source")
    blocks = {}
    for t in src.degrees():
        stacked = vstack([u.block(t), v.block(t)])
        m = solve(incl.block(t), stacked)
        if m is None:
            raise ValidationFailure("cone does not factor through the pullback")
        blocks[t] = m
    return ChainMap.build(src, res.obj, blocks)


# ---------------------------------------------------------------------------
# hom and tensor


def _hom_layout(a: ChainComplex, b: ChainComplex, t: int):
    """Blocks of Hom(a, b)_t as (s, rows=dim b_{s+t}, cols=dim a_s, offset),
    s ascending."""
    out = []
    off = 0
    for s in a.degrees():
        r, c = b.dim(s + t), a.dim(s)
        if r and c:
            out.append((s, r, c, off))
            off += r * c
    return out


def hom_complex(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """Hom(a, b)_t = product over s of Hom(a_s, b_{s+t}), with differential
    (delta f)_s = d_b f_s - (-1)^t f_{s-1} d_a."""
    p = a.p
    if b.p != p:
        raise FieldMismatchError("hom over different primes")
    if a.is_zero() or b.is_zero():
        return zero_complex(p)
    lo = b.lo - a.hi
    hi = b.hi - a.lo
    layouts = {t: _hom_layout(a, b, t) for t in range(lo, hi + 1)}
    dims = [sum(r * c for _, r, c, _ in layouts[t]) for t in range(lo, hi + 1)]
    diffs = {}
    sgn = {t: (-1) ** (t % 2) for t in range(lo, hi + 1)}
    for t in range(lo + 1, hi + 1):
        rows = dims[t - 1 - lo]
        cols = dims[t - lo]
        if rows == 0 or cols == 0:
            continue
        m = np.zeros((rows, cols), dtype=np.int64)
        tgt_off = {s: off for s, _, _, off in layouts[t - 1]}
        tgt_shape = {s: (r, c) for s, r, c, _ in layouts[t - 1]}
        for s, r, c, off in layouts[t]:
            # d_b compose f_s lands in block s of degree t-1
            if s in tgt_off:
                db = b.d(s + t)
                blk = np.kron(db.a, np.eye(c, dtype=np.int64))
                tr, tc = tgt_shape[s]
                m[tgt_off[s] : tgt_off[s] + tr * tc, off : off + r * c] += blk
            # f_s compose d_a lands in block s... the term -(-1)^t f_{s-1} d_a
            # contributes from unknown block s-1; equivalently block s of the
            # source contributes to target block s+1 via right-multiplication
            if s + 1 in tgt_off:
                da = a.d(s + 1)
                blk = np.kron(np.eye(b.dim(s + t), dtype=np.int64), da.a.T)
                sign = (-sgn[t]) % p
                tr, tc = tgt_shape[s + 1]
                m[tgt_off[s + 1] : tgt_off[s + 1] + tr * tc, off : off + r * c] += (
                    sign * blk
                )
        diffs[t] = FpMatrix(p, m)
    return ChainComplex.build(p, lo, dims, diffs)


def hom_precompose(a: ChainComplex, b: ChainComplex, g: ChainMap) -> ChainMap:
    """Hom(a, c) -> Hom(source of g, c) induced by g : src -> a ... precisely:
    given g : a' -> a, the chain map Hom(a, b) -> Hom(a', b), f -> f g."""
    aprime = g.source
    if g.target != a:
        raise ValidationFailure("precomposition target mismatch")
    h1 = hom_complex(a, b)
    h2 = hom_complex(aprime, b)
    blocks = {}
    for t in h1.degrees():
        lay1 = _hom_layout(a, b, t)
        lay2 = _hom_layout(aprime, b, t)
        off2 = {s: (off, r, c) for s, r, c, off in lay2}
        m = np.zeros((h2.dim(t), h1.dim(t)), dtype=np.int64)
        for s, r, c, off in lay1:
            if s in off2:
                o2, r2, c2 = off2[s]
                blk = np.kron(np.eye(r, dtype=np.int64), g.block(s).a.T)
                m[o2 : o2 + r2 * c2, off : off + r * c] += blk
        blocks[t] = FpMatrix(h1.p, m)
    return ChainMap.build(h1, h2, blocks)


def hom_postcompose(a: ChainComplex, g: ChainMap) -> ChainMap:
    """Hom(a, source of g) -> Hom(a, target of g), f -> g f."""
    b, bprime = g.source, g.target
    h1 = hom_complex(a, b)
    h2 = hom_complex(a, bprime)
    blocks = {}
    for t in h1.degrees():
        lay1 = _hom_layout(a, b, t)
        lay2 = _hom_layout(a, bprime, t)
        off2 = {s: (off, r, c) for s, r, c, off in lay2}
        m = np.zeros((h2.dim(t), h1.dim(t)), dtype=np.int64)
        for s, r, c, off in lay1:
            if s in off2:
                o2, r2, c2 = off2[s]
                blk = np.kron(g.block(s + t).a, np.eye(c, dtype=np.int64))
                m[o2 : o2 + r2 * c2, off : off + r * c] += blk
        blocks[t] = FpMatrix(h1.p, m)
    return ChainMap.build(h1, h2, blocks)


def _tensor_layout(a: ChainComplex, b: ChainComplex, n: int):
    out = []
    off = 0
    for s in a.degrees():
        r, c = a.dim(s), b.dim(n - s)
        if r and c:
            out.append((s, r, c, off))
            off += r * c
    return out


def tensor_complexes(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """(a tensor b)_n = sum over s of a_s tensor b_{n-s}, with the usual
    Koszul sign on the second factor."""
    p = a.p
    if b.p != p:
        raise FieldMismatchError("tensor over different primes")
    if a.is_zero() or b.is_zero():
        return zero_complex(p)
    lo, hi = a.lo + b.lo, a.hi + b.hi
    layouts = {n: _tensor_layout(a, b, n) for n in range(lo, hi + 1)}
    dims = [sum(r * c for _, r, c, _ in layouts[n]) for n in range(lo, hi + 1)]
    diffs = {}
    for n in range(lo + 1, hi + 1):
        rows, cols = dims[n - 1 - lo], dims[n - lo]
        if rows == 0 or cols == 0:
            continue
        m = np.zeros((rows, cols), dtype=np.int64)
        tgt = {s: (off, r, c) for s, r, c, off in layouts[n - 1]}
        for s, r, c, off in layouts[n]:
            # d_a tensor id : block s -> block s-1
            if s - 1 in tgt:
                o, tr, tc = tgt[s - 1]
                blk = np.kron(a.d(s).a, np.eye(c, dtype=np.int64))
                m[o : o + tr * tc, off : off + r * c] += blk
            # (-1)^s id tensor d_b : block s -> block s
            if s in tgt:
                o, tr, tc = tgt[s]
                sign = ((-1) ** (s % 2)) % p
                blk = np.kron(np.eye(r, dtype=np.int64), b.d(n - s).a)
                m[o : o + tr * tc, off : off + r * c] += sign * blk
        diffs[n] = FpMatrix(p, m)
    return ChainComplex.build(p, lo, dims, diffs)


def tensor_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    """Degreewise f tensor g (no signs; both maps have degree zero)."""
    src = tensor_complexes(f.source, g.source)
    tgt = tensor_complexes(f.target, g.target)
    blocks = {}
    for n in src.degrees():
        lay_s = _tensor_layout(f.source, g.source, n)
        lay_t = _tensor_layout(f.target, g.target, n)
        tgt_off = {s: (off, r, c) for s, r, c, off in lay_t}
        m = np.zeros((tgt.dim(n), src.dim(n)), dtype=np.int64)
        for s, r, c, off in lay_s:
            if s in tgt_off:
                o, tr, tc = tgt_off[s]
                blk = np.kron(f.block(s).a, g.block(n - s).a)
                m[o : o + tr * tc, off : off + r * c] += blk
        blocks[n] = FpMatrix(src.p, m)
    return ChainMap.build(src, tgt, blocks)


# ---------------------------------------------------------------------------
# chain-map spaces and lifting


def chain_map_space(a: ChainComplex, b: ChainComplex):
    """Basis of the space of chain maps a -> b.

    Returns (basis, layout): basis columns live in the ambient flattened space
    of all degreewise blocks, layout records (degree, rows, cols, offset).
    """
    p = a.p
    sys = BlockSystem(p)
    layout = []
    off = 0
    degs = [t for t in a.degrees() if a.dim(t) and b.dim(t)]
    for t in degs:
        r, c = b.dim(t), a.dim(t)
        sys.add_unknown(t, r, c)
        layout.append((t, r, c, off))
        off += r * c
    all_degs = sorted(set(a.degrees()) | set(b.degrees()))
    for t in all_degs:
        rows, cols = b.dim(t - 1), a.dim(t)
        if rows and cols:
            sys.add_equation(
                (rows, cols),
                [
                    (t, b.d(t), None, 1),
                    (t - 1, None, a.d(t), -1),
                ],
            )
    return sys.kernel(), layout


def chain_map_space_dim(a: ChainComplex, b: ChainComplex) -> int:
    return chain_map_space(a, b)[0].cols


def chain_map_from_vector(a, b, vec: FpMatrix, layout) -> ChainMap:
    blocks = {}
    arr = vec.a.reshape(-1)
    for t, r, c, off in layout:
        blocks[t] = FpMatrix(a.p, arr[off : off + r * c].reshape(r, c))
    return ChainMap.build(a, b, blocks)


def chain_lift(i: ChainMap, p_map: ChainMap, top: ChainMap, bottom: ChainMap):
    """Solve h i = top, p h = bottom for h : target(i) -> source(p).

    Returns the deterministic solution or None.  Square commutativity is the
    caller's responsibility; an incompatible square just comes back None.
    """
    bb, xx = i.target, p_map.source
    prime = i.p
    sys = BlockSystem(prime)
    for t in bb.degrees():
        if bb.dim(t) and xx.dim(t):
            sys.add_unknown(t, xx.dim(t), bb.dim(t))
    degs = sorted(set(bb.degrees()) | set(xx.degrees()))
    for t in degs:
        rows, cols = xx.dim(t - 1), bb.dim(t)
        if rows and cols:
            sys.add_equation(
                (rows, cols),
                [(t, xx.d(t), None, 1), (t - 1, None, bb.d(t), -1)],
            )
    for t in i.source.degrees():
        rows, cols = xx.dim(t), i.source.dim(t)
        if rows and cols:
            sys.add_equation(
                (rows, cols), [(t, None, i.block(t), 1)], rhs=top.block(t)
            )
    for t in bb.degrees():
        rows, cols = p_map.target.dim(t), bb.dim(t)
        if rows and cols:
            sys.add_equation(
                (rows, cols), [(t, p_map.block(t), None, 1)], rhs=bottom.block(t)
            )
    sol = sys.solve()
    if sol is None:
        return None
    return ChainMap.build(bb, xx, sol)
