"""Truncated simplicial objects in chain complexes.

A simplicial object has chain complexes X_0..X_N and face/degeneracy chain
maps subject to the simplicial identities.  Latching and matching objects
are computed as honest (co)limits: a cokernel, resp. kernel, of the relation
map assembled over the elementary generating morphisms of the index
category.  Relations for composite morphisms follow from the generating
ones, so the presentation below computes the same object the full diagram
would.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import ssets as ss
from .chain import (
    ChainComplex,
    ChainMap,
    cokernel_complex,
    direct_sum,
    direct_sum_with_maps,
    identity_map,
    kernel_complex,
    validate_complex,
    validate_map,
    zero_complex,
    zero_map,
)
from .errors import ValidationFailure
from .linalg import FpMatrix, block_diag, hstack, solve, vstack, zeros


@dataclass(frozen=True, eq=False)
class SimplicialObject:
    N: int
    levels: tuple[ChainComplex, ...]
    faces: tuple[tuple[ChainMap, ...], ...]  # faces[n-1][i] : X_n -> X_{n-1}
    degens: tuple[tuple[ChainMap, ...], ...]  # degens[n][i] : X_n -> X_{n+1}

    @property
    def p(self) -> int:
        return self.levels[0].p

    def level(self, n: int) -> ChainComplex:
        return self.levels[n]

    def face(self, n: int, i: int) -> ChainMap:
        return self.faces[n - 1][i]

    def degen(self, n: int, i: int) -> ChainMap:
        return self.degens[n][i]

    def __eq__(self, other):
        if not isinstance(other, SimplicialObject):
            return NotImplemented
        return (
            self.N == other.N
            and self.levels == other.levels
            and self.faces == other.faces
            and self.degens == other.degens
        )

    def __hash__(self):
        return hash((self.N, self.levels, self.faces, self.degens))


def constant(N: int, a: ChainComplex) -> SimplicialObject:
    """Every level is ``a`` and every operator the identity."""
    ident = identity_map(a)
    faces = tuple(tuple(ident for _ in range(n + 1)) for n in range(1, N + 1))
    degens = tuple(tuple(ident for _ in range(n + 1)) for n in range(N))
    return SimplicialObject(N, tuple(a for _ in range(N + 1)), faces, degens)


def ev0(x: SimplicialObject) -> ChainComplex:
    return x.levels[0]


def validate_sobj(x: SimplicialObject):
    if len(x.levels) != x.N + 1 or len(x.faces) != x.N or len(x.degens) != x.N:
        raise ValidationFailure("level or operator count does not match N")
    for lvl in x.levels:
        validate_complex(lvl)
        if lvl.p != x.p:
            raise ValidationFailure("levels over different primes")
    for n in range(1, x.N + 1):
        if len(x.faces[n - 1]) != n + 1:
            raise ValidationFailure(f"expected {n + 1} faces at level {n}")
        for m in x.faces[n - 1]:
            if m.source != x.level(n) or m.target != x.level(n - 1):
                raise ValidationFailure(f"face endpoints wrong at level {n}")
            validate_map(m)
    for n in range(x.N):
        if len(x.degens[n]) != n + 1:
            raise ValidationFailure(f"expected {n + 1} degeneracies at level {n}")
        for m in x.degens[n]:
            if m.source != x.level(n) or m.target != x.level(n + 1):
                raise ValidationFailure(f"degeneracy endpoints wrong at level {n}")
            validate_map(m)
    for n in range(2, x.N + 1):
        for j in range(n + 1):
            for i in range(j):
                if x.face(n - 1, i) @ x.face(n, j) != x.face(n - 1, j - 1) @ x.face(n, i):
                    raise ValidationFailure(f"d_{i} d_{j} fails at level {n}")
    for n in range(x.N - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                if x.degen(n + 1, i) @ x.degen(n, j) != x.degen(n + 1, j + 1) @ x.degen(n, i):
                    raise ValidationFailure(f"s_{i} s_{j} fails at level {n}")
    for n in range(x.N):
        ident = identity_map(x.level(n))
        for j in range(n + 1):
            for i in range(n + 2):
                got = x.face(n + 1, i) @ x.degen(n, j)
                if i == j or i == j + 1:
                    want = ident
                elif i < j:
                    want = x.degen(n - 1, j - 1) @ x.face(n, i)
                else:
                    want = x.degen(n - 1, j) @ x.face(n, i - 1)
                if got != want:
                    raise ValidationFailure(f"d_{i} s_{j} fails at level {n}")


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    source: SimplicialObject
    target: SimplicialObject
    levels: tuple[ChainMap, ...]

    @property
    def p(self) -> int:
        return self.source.p

    def level(self, n: int) -> ChainMap:
        return self.levels[n]

    def __matmul__(self, other: "SimplicialMap") -> "SimplicialMap":
        if other.target != self.source:
            raise ValidationFailure("simplicial map composition mismatch")
        return SimplicialMap(
            other.source,
            self.target,
            tuple(self.levels[n] @ other.levels[n] for n in range(len(self.levels))),
        )

    def __eq__(self, other):
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.levels == other.levels
        )

    def __hash__(self):
        return hash((self.source, self.target, self.levels))


def constant_map(N: int, f: ChainMap) -> SimplicialMap:
    return SimplicialMap(
        constant(N, f.source), constant(N, f.target), tuple(f for _ in range(N + 1))
    )


def identity_smap(x: SimplicialObject) -> SimplicialMap:
    return SimplicialMap(x, x, tuple(identity_map(lvl) for lvl in x.levels))


def zero_smap(x: SimplicialObject, y: SimplicialObject) -> SimplicialMap:
    return SimplicialMap(
        x, y, tuple(zero_map(x.level(n), y.level(n)) for n in range(x.N + 1))
    )


def validate_smap(f: SimplicialMap):
    if f.source.N != f.target.N:
        raise ValidationFailure("simplicial map between different truncations")
    if len(f.levels) != f.source.N + 1:
        raise ValidationFailure("level map count does not match N")
    for n in range(f.source.N + 1):
        m = f.level(n)
        if m.source != f.source.level(n) or m.target != f.target.level(n):
            raise ValidationFailure(f"level {n} map endpoints wrong")
        validate_map(m)
    for n in range(1, f.source.N + 1):
        for i in range(n + 1):
            if f.target.face(n, i) @ f.level(n) != f.level(n - 1) @ f.source.face(n, i):
                raise ValidationFailure(f"map breaks d_{i} at level {n}")
    for n in range(f.source.N):
        for i in range(n + 1):
            if f.target.degen(n, i) @ f.level(n) != f.level(n + 1) @ f.source.degen(n, i):
                raise ValidationFailure(f"map breaks s_{i} at level {n}")


# ---------------------------------------------------------------------------
# tensoring a chain complex with a simplicial set


def _copies_complex(a: ChainComplex, count: int) -> ChainComplex:
    """Direct sum of ``count`` copies of a, copy-major layout."""
    if count == 0 or a.is_zero():
        return zero_complex(a.p)
    dims = [count * d for d in a.dims]
    diffs = {}
    for t in a.degrees():
        if a.dim(t) and a.dim(t - 1):
            diffs[t] = FpMatrix(
                a.p, np.kron(np.eye(count, dtype=np.int64), a.d(t).a)
            )
    return ChainComplex.build(a.p, a.lo, dims, diffs)


def _index_matrix(card_tgt: int, table) -> np.ndarray:
    m = np.zeros((card_tgt, len(table)), dtype=np.int64)
    for src, tgt in enumerate(table):
        m[tgt, src] = 1
    return m


def tensor_with_sset(a: ChainComplex, k: ss.SSet) -> SimplicialObject:
    """Level n is a direct sum of copies of ``a`` indexed by the n-simplices;
    operators permute-and-merge copies along the simplex operator tables."""
    levels = tuple(_copies_complex(a, k.card(n)) for n in range(k.N + 1))

    def op_map(src_lvl, tgt_lvl, table, card_tgt):
        mperm = _index_matrix(card_tgt, table)
        blocks = {}
        for t in a.degrees():
            blocks[t] = FpMatrix(a.p, np.kron(mperm, np.eye(a.dim(t), dtype=np.int64)))
        return ChainMap.build(src_lvl, tgt_lvl, blocks)

    faces = tuple(
        tuple(
            op_map(levels[n], levels[n - 1], k.faces[n - 1][i], k.card(n - 1))
            for i in range(n + 1)
        )
        for n in range(1, k.N + 1)
    )
    degens = tuple(
        tuple(
            op_map(levels[n], levels[n + 1], k.degens[n][i], k.card(n + 1))
            for i in range(n + 1)
        )
        for n in range(k.N)
    )
    return SimplicialObject(k.N, levels, faces, degens)


def tensor_chain_map(f: ChainMap, k: ss.SSet) -> SimplicialMap:
    """f tensor k, identity on the simplex directions."""
    src = tensor_with_sset(f.source, k)
    tgt = tensor_with_sset(f.target, k)
    lv = []
    for n in range(k.N + 1):
        blocks = {}
        for t in f.source.degrees():
            blocks[t] = FpMatrix(
                f.p, np.kron(np.eye(k.card(n), dtype=np.int64), f.block(t).a)
            )
        lv.append(ChainMap.build(src.level(n), tgt.level(n), blocks))
    return SimplicialMap(src, tgt, tuple(lv))


def tensor_sset_map(a: ChainComplex, g: ss.SSetMap) -> SimplicialMap:
    """a tensor g, identity on the chain direction."""
    src = tensor_with_sset(a, g.source)
    tgt = tensor_with_sset(a, g.target)
    lv = []
    for n in range(g.source.N + 1):
        mperm = _index_matrix(g.target.card(n), g.levels[n])
        blocks = {}
        for t in a.degrees():
            blocks[t] = FpMatrix(a.p, np.kron(mperm, np.eye(a.dim(t), dtype=np.int64)))
        lv.append(ChainMap.build(src.level(n), tgt.level(n), blocks))
    return SimplicialMap(src, tgt, tuple(lv))


def _routed_block(p: int, mperm: np.ndarray, fb: FpMatrix) -> FpMatrix:
    if mperm.size == 0 or fb.rows * fb.cols == 0:
        return FpMatrix(
            p,
            np.zeros(
                (mperm.shape[0] * fb.rows, mperm.shape[1] * fb.cols),
                dtype=np.int64,
            ),
        )
    return FpMatrix(p, np.kron(mperm, fb.a))


def tensor_sobj_with_sset(x: SimplicialObject, k: ss.SSet) -> SimplicialObject:
    """Diagonal tensor: level n is a sum of copies of X_n indexed by the
    n-simplices, and an operator routes copies along the simplex table
    while acting by the operator of X inside each copy."""
    if k.N != x.N:
        raise ValidationFailure("tensor truncations differ")
    levels = tuple(_copies_complex(x.level(n), k.card(n)) for n in range(k.N + 1))

    def op_map(src_lvl, tgt_lvl, inner: ChainMap, table, card_tgt):
        mperm = _index_matrix(card_tgt, table)
        blocks = {}
        for t in inner.source.degrees():
            blocks[t] = _routed_block(x.p, mperm, inner.block(t))
        return ChainMap.build(src_lvl, tgt_lvl, blocks)

    faces = tuple(
        tuple(
            op_map(
                levels[n],
                levels[n - 1],
                x.face(n, i),
                k.faces[n - 1][i],
                k.card(n - 1),
            )
            for i in range(n + 1)
        )
        for n in range(1, k.N + 1)
    )
    degens = tuple(
        tuple(
            op_map(
                levels[n],
                levels[n + 1],
                x.degen(n, i),
                k.degens[n][i],
                k.card(n + 1),
            )
            for i in range(n + 1)
        )
        for n in range(k.N)
    )
    return SimplicialObject(k.N, levels, faces, degens)


def tensor_smap_with_sset(f: SimplicialMap, k: ss.SSet) -> SimplicialMap:
    """f tensor k, identity on the simplex direction."""
    src = tensor_sobj_with_sset(f.source, k)
    tgt = tensor_sobj_with_sset(f.target, k)
    lv = []
    for n in range(k.N + 1):
        ident = np.eye(k.card(n), dtype=np.int64)
        blocks = {}
        for t in f.source.level(n).degrees():
            blocks[t] = _routed_block(f.p, ident, f.level(n).block(t))
        lv.append(ChainMap.build(src.level(n), tgt.level(n), blocks))
    return SimplicialMap(src, tgt, tuple(lv))


def tensor_sobj_sset_map(x: SimplicialObject, g: ss.SSetMap) -> SimplicialMap:
    """x tensor g, identity inside each copy."""
    src = tensor_sobj_with_sset(x, g.source)
    tgt = tensor_sobj_with_sset(x, g.target)
    lv = []
    for n in range(g.source.N + 1):
        mperm = _index_matrix(g.target.card(n), g.levels[n])
        blocks = {}
        for t in x.level(n).degrees():
            blocks[t] = _routed_block(
                x.p, mperm, identity_map(x.level(n)).block(t)
            )
        lv.append(ChainMap.build(src.level(n), tgt.level(n), blocks))
    return SimplicialMap(src, tgt, tuple(lv))


# ---------------------------------------------------------------------------
# structure maps


def structure_map(x: SimplicialObject, alpha, n: int) -> ChainMap:
    """X(alpha) : X_n -> X_m for monotone alpha: [m] -> [n]."""
    alpha = tuple(alpha)
    m = len(alpha) - 1
    if n > x.N or m > x.N:
        raise ValidationFailure("structure map outside the truncation")
    ops = ss.factor_monotone(alpha, n)
    cur = identity_map(x.level(n))
    lvl = n
    for kind, i in ops:
        if kind == "d":
            cur = x.face(lvl, i) @ cur
            lvl -= 1
        else:
            cur = x.degen(lvl, i) @ cur
            lvl += 1
    return cur


def _glue_out_of_sum(maps: list[ChainMap], target: ChainComplex, p: int):
    """Direct-sum the sources; the glued map restricts to each given map."""
    if not maps:
        d = zero_complex(p)
        return d, zero_map(d, target)
    d = direct_sum([m.source for m in maps])
    blocks = {
        t: hstack([m.block(t) for m in maps]) for t in d.degrees()
    }
    return d, ChainMap.build(d, target, blocks)


def _stack_into_sum(maps: list[ChainMap], source: ChainComplex, p: int):
    """Direct-sum the targets; the stacked map has the given components."""
    if not maps:
        t0 = zero_complex(p)
        return t0, zero_map(source, t0)
    t0 = direct_sum([m.target for m in maps])
    blocks = {
        t: vstack([m.block(t) for m in maps]) for t in source.degrees()
    }
    return t0, ChainMap.build(source, t0, blocks)


def factor_through_mono(incl: ChainMap, u: ChainMap) -> ChainMap:
    """The unique m with incl . m = u, for levelwise-injective incl."""
    blocks = {}
    for t in u.source.degrees():
        m = solve(incl.block(t), u.block(t))
        if m is None:
            raise ValidationFailure("map does not factor through the subobject")
        blocks[t] = m
    return ChainMap.build(u.source, incl.source, blocks)


def _epis(n: int, j: int):
    full = set(range(j + 1))
    return [a for a in ss.monotone_maps(n, j) if set(a) == full]


def _monos(j: int, n: int):
    return [a for a in ss.monotone_maps(j, n) if len(set(a)) == j + 1]


@dataclass(frozen=True)
class Latching:
    """Colimit of X over the proper quotients of [n], with its comparison
    map into X_n and the presentation witnesses."""

    obj: ChainComplex
    to_level: ChainMap
    objects: tuple[tuple[int, ...], ...]
    amb: ChainComplex
    proj: ChainMap
    sects: dict
    incs: tuple[ChainMap, ...]


def latching(x: SimplicialObject, n: int) -> Latching:
    p = x.p
    if n == 0:
        z = zero_complex(p)
        return Latching(
            z, zero_map(z, x.level(0)), (), z, zero_map(z, z), {}, ()
        )
    objects = []
    for j in range(n):
        objects.extend(_epis(n, j))
    objects = tuple(objects)
    amb, incs, _ = direct_sum_with_maps([x.level(len(set(a)) - 1) for a in objects])
    obj_index = {a: i for i, a in enumerate(objects)}
    rels = []
    for a in objects:
        j = len(set(a)) - 1
        if j == 0:
            continue
        for i in range(j):
            b = tuple(v if v <= i else v - 1 for v in a)
            rels.append(
                incs[obj_index[a]] @ x.degen(j - 1, i) - incs[obj_index[b]]
            )
    _, rel_map = _glue_out_of_sum(rels, amb, p)
    q, proj, sects = cokernel_complex(rel_map)
    into_level = [structure_map(x, a, len(set(a)) - 1) for a in objects]
    _, u = _glue_out_of_sum(into_level, x.level(n), p)
    # u kills the relations, so it descends along the quotient sections
    blocks = {t: u.block(t) @ sects[t] for t in q.degrees()}
    to_level = ChainMap.build(q, x.level(n), blocks)
    return Latching(q, to_level, objects, amb, proj, sects, tuple(incs))


def latching_map_of(
    f: SimplicialMap, n: int, lx: Latching | None = None, ly: Latching | None = None
) -> ChainMap:
    if lx is None:
        lx = latching(f.source, n)
    if ly is None:
        ly = latching(f.target, n)
    if n == 0:
        return zero_map(lx.obj, ly.obj)
    blocks = {}
    for t in lx.obj.degrees():
        ft = block_diag(
            f.p, [f.level(len(set(a)) - 1).block(t) for a in lx.objects]
        )
        blocks[t] = ly.proj.block(t) @ ft @ lx.sects[t]
    return ChainMap.build(lx.obj, ly.obj, blocks)


@dataclass(frozen=True)
class Matching:
    """Limit of X over the proper faces of [n], with the comparison map
    from X_n and the presentation witnesses."""

    obj: ChainComplex
    from_level: ChainMap
    objects: tuple[tuple[int, ...], ...]
    amb: ChainComplex
    incl: ChainMap
    projs: tuple[ChainMap, ...]


def matching(x: SimplicialObject, n: int) -> Matching:
    p = x.p
    if n == 0:
        z = zero_complex(p)
        return Matching(z, zero_map(x.level(0), z), (), z, zero_map(z, z), ())
    objects = []
    for j in range(n):
        objects.extend(_monos(j, n))
    objects = tuple(objects)
    amb, _, projs = direct_sum_with_maps([x.level(len(a) - 1) for a in objects])
    obj_index = {a: i for i, a in enumerate(objects)}
    conds = []
    for a in objects:
        j = len(a) - 1
        if j == 0:
            continue
        for i in range(j + 1):
            b = a[:i] + a[i + 1 :]
            conds.append(
                x.face(j, i) @ projs[obj_index[a]] - projs[obj_index[b]]
            )
    _, cond_map = _stack_into_sum(conds, amb, p)
    m, incl = kernel_complex(cond_map)
    components = [structure_map(x, a, n) for a in objects]
    _, v = _stack_into_sum(components, x.level(n), p)
    from_level = factor_through_mono(incl, v)
    return Matching(m, from_level, objects, amb, incl, tuple(projs))


def matching_map_of(
    f: SimplicialMap, n: int, mx: Matching | None = None, my: Matching | None = None
) -> ChainMap:
    if mx is None:
        mx = matching(f.source, n)
    if my is None:
        my = matching(f.target, n)
    if n == 0:
        return zero_map(mx.obj, my.obj)
    blocks = {}
    for t in mx.amb.degrees():
        ft = block_diag(f.p, [f.level(len(a) - 1).block(t) for a in mx.objects])
        blocks[t] = ft @ mx.incl.block(t)
    big = ChainMap.build(mx.obj, my.amb, blocks)
    return factor_through_mono(my.incl, big)


# ---------------------------------------------------------------------------
# cotensor by a simplicial set


@dataclass(frozen=True)
class Cotensor:
    """Chain complex of operator-compatible families (x_sigma) indexed by
    the simplices of K."""

    obj: ChainComplex
    incl: ChainMap
    amb: ChainComplex
    components: tuple[tuple[int, int], ...]
    projs: tuple[ChainMap, ...]


def cotensor0(x: SimplicialObject, k: ss.SSet) -> Cotensor:
    if k.N != x.N:
        raise ValidationFailure("cotensor truncations differ")
    p = x.p
    components = tuple(
        (n, idx) for n in range(k.N + 1) for idx in range(k.card(n))
    )
    if not components:
        z = zero_complex(p)
        return Cotensor(z, zero_map(z, z), z, components, ())
    amb, _, projs = direct_sum_with_maps([x.level(n) for n, _ in components])
    comp_index = {c: i for i, c in enumerate(components)}
    conds = []
    for n in range(1, k.N + 1):
        for i in range(n + 1):
            for idx in range(k.card(n)):
                tgt = (n - 1, k.face(n, i, idx))
                conds.append(
                    x.face(n, i) @ projs[comp_index[(n, idx)]]
                    - projs[comp_index[tgt]]
                )
    for n in range(k.N):
        for i in range(n + 1):
            for idx in range(k.card(n)):
                tgt = (n + 1, k.degen(n, i, idx))
                conds.append(
                    x.degen(n, i) @ projs[comp_index[(n, idx)]]
                    - projs[comp_index[tgt]]
                )
    _, cond_map = _stack_into_sum(conds, amb, p)
    obj, incl = kernel_complex(cond_map)
    return Cotensor(obj, incl, amb, components, tuple(projs))


def cotensor_component(ct: Cotensor, n: int, idx: int) -> ChainMap:
    return ct.projs[ct.components.index((n, idx))] @ ct.incl


def yoneda_projection(x: SimplicialObject, n: int, ct: Cotensor | None = None) -> ChainMap:
    """Projection at the identity simplex; an isomorphism when the cotensor
    is taken against the standard n-simplex."""
    k = ss.delta(x.N, n)
    if ct is None:
        ct = cotensor0(x, k)
    ident = k.index_of(n, tuple(range(n + 1)))
    return cotensor_component(ct, n, ident)


def cotensor_restrict(
    x: SimplicialObject,
    i: ss.SSetMap,
    ct_big: Cotensor | None = None,
    ct_small: Cotensor | None = None,
) -> ChainMap:
    """Restriction X^L -> X^K along a simplicial map i: K -> L."""
    if ct_big is None:
        ct_big = cotensor0(x, i.target)
    if ct_small is None:
        ct_small = cotensor0(x, i.source)
    picked = [
        ct_big.projs[ct_big.components.index((n, i.apply(n, idx)))]
        for (n, idx) in ct_small.components
    ]
    _, r = _stack_into_sum(picked, ct_big.amb, x.p)
    return factor_through_mono(ct_small.incl, r @ ct_big.incl)


def cotensor_apply(
    f: SimplicialMap,
    k: ss.SSet,
    ct_x: Cotensor | None = None,
    ct_y: Cotensor | None = None,
) -> ChainMap:
    """Induced map X^K -> Y^K for a simplicial map f: X -> Y."""
    if ct_x is None:
        ct_x = cotensor0(f.source, k)
    if ct_y is None:
        ct_y = cotensor0(f.target, k)
    blocks = {}
    for t in ct_x.obj.degrees():
        ft = block_diag(f.p, [f.level(n).block(t) for n, _ in ct_x.components])
        blocks[t] = ft @ ct_x.incl.block(t)
    big = ChainMap.build(ct_x.obj, ct_y.amb, blocks)
    return factor_through_mono(ct_y.incl, big)


def _epi_mono_factor(sigma: tuple[int, ...]):
    """sigma = delta . pi with delta the sorted image and pi position map."""
    delta_t = tuple(sorted(set(sigma)))
    place = {v: i for i, v in enumerate(delta_t)}
    pi = tuple(place[v] for v in sigma)
    return delta_t, pi


def boundary_cotensor_from_matching(
    x: SimplicialObject, n: int, ct: Cotensor | None = None, mt: Matching | None = None
) -> ChainMap:
    """The comparison map from the matching object to the cotensor against
    the boundary of the n-simplex: the component at a non-surjective sigma
    is the degeneracy applied to the face picked out by its image."""
    k = ss.boundary_inclusion(x.N, n).source
    if ct is None:
        ct = cotensor0(x, k)
    if mt is None:
        mt = matching(x, n)
    obj_index = {a: i for i, a in enumerate(mt.objects)}
    pieces = []
    for (m, idx) in ct.components:
        sigma = k.label(m, idx)
        delta_t, pi = _epi_mono_factor(sigma)
        j = len(delta_t) - 1
        comp = mt.projs[obj_index[delta_t]] @ mt.incl
        pieces.append(structure_map(x, pi, j) @ comp)
    _, e = _stack_into_sum(pieces, mt.obj, x.p)
    return factor_through_mono(ct.incl, e)


# ---------------------------------------------------------------------------
# levelwise pushouts, pullbacks, sums


@dataclass(frozen=True)
class SobjSpan:
    obj: SimplicialObject
    left: SimplicialMap
    right: SimplicialMap
    level_results: tuple


def pushout_sobj(f: SimplicialMap, g: SimplicialMap) -> SobjSpan:
    """Levelwise pushout of target(f) <- source -> target(g); operators come
    from the universal property."""
    from .chain import pushout, pushout_mediator

    if f.source != g.source:
        raise ValidationFailure("pushout span must share its source")
    N = f.source.N
    res = [pushout(f.level(n), g.level(n)) for n in range(N + 1)]
    xb, yc = f.target, g.target
    faces, degens = [], []
    for n in range(1, N + 1):
        row = []
        for i in range(n + 1):
            row.append(
                pushout_mediator(
                    res[n],
                    res[n - 1].left @ xb.face(n, i),
                    res[n - 1].right @ yc.face(n, i),
                )
            )
        faces.append(tuple(row))
    for n in range(N):
        row = []
        for i in range(n + 1):
            row.append(
                pushout_mediator(
                    res[n],
                    res[n + 1].left @ xb.degen(n, i),
                    res[n + 1].right @ yc.degen(n, i),
                )
            )
        degens.append(tuple(row))
    obj = SimplicialObject(
        N, tuple(r.obj for r in res), tuple(faces), tuple(degens)
    )
    left = SimplicialMap(xb, obj, tuple(r.left for r in res))
    right = SimplicialMap(yc, obj, tuple(r.right for r in res))
    return SobjSpan(obj, left, right, tuple(res))


def pushout_sobj_mediator(span: SobjSpan, u: SimplicialMap, v: SimplicialMap) -> SimplicialMap:
    from .chain import pushout_mediator

    lv = tuple(
        pushout_mediator(span.level_results[n], u.level(n), v.level(n))
        for n in range(span.obj.N + 1)
    )
    return SimplicialMap(span.obj, u.target, lv)


def pullback_sobj(f: SimplicialMap, g: SimplicialMap) -> SobjSpan:
    from .chain import pullback, pullback_mediator

    if f.target != g.target:
        raise ValidationFailure("pullback cospan must share its target")
    N = f.source.N
    res = [pullback(f.level(n), g.level(n)) for n in range(N + 1)]
    xb, yc = f.source, g.source
    faces, degens = [], []
    for n in range(1, N + 1):
        row = []
        for i in range(n + 1):
            row.append(
                pullback_mediator(
                    res[n - 1],
                    xb.face(n, i) @ res[n].left,
                    yc.face(n, i) @ res[n].right,
                )
            )
        faces.append(tuple(row))
    for n in range(N):
        row = []
        for i in range(n + 1):
            row.append(
                pullback_mediator(
                    res[n + 1],
                    xb.degen(n, i) @ res[n].left,
                    yc.degen(n, i) @ res[n].right,
                )
            )
        degens.append(tuple(row))
    obj = SimplicialObject(N, tuple(r.obj for r in res), tuple(faces), tuple(degens))
    left = SimplicialMap(obj, xb, tuple(r.left for r in res))
    right = SimplicialMap(obj, yc, tuple(r.right for r in res))
    return SobjSpan(obj, left, right, tuple(res))


def pullback_sobj_mediator(span: SobjSpan, u: SimplicialMap, v: SimplicialMap) -> SimplicialMap:
    from .chain import pullback_mediator

    lv = tuple(
        pullback_mediator(span.level_results[n], u.level(n), v.level(n))
        for n in range(span.obj.N + 1)
    )
    return SimplicialMap(u.source, span.obj, lv)


def direct_sum_sobj(parts: list[SimplicialObject]):
    """(sum, inclusions, projections), levelwise."""
    N = parts[0].N
    p = parts[0].p
    per_level = [direct_sum_with_maps([q.level(n) for q in parts]) for n in range(N + 1)]
    levels = tuple(pl[0] for pl in per_level)

    def op(n_src, n_tgt, mats):
        blocks = {}
        for t in levels[n_src].degrees():
            blocks[t] = block_diag(p, [m.block(t) for m in mats])
        return ChainMap.build(levels[n_src], levels[n_tgt], blocks)

    faces = tuple(
        tuple(op(n, n - 1, [q.face(n, i) for q in parts]) for i in range(n + 1))
        for n in range(1, N + 1)
    )
    degens = tuple(
        tuple(op(n, n + 1, [q.degen(n, i) for q in parts]) for i in range(n + 1))
        for n in range(N)
    )
    total = SimplicialObject(N, levels, faces, degens)
    incs, projs = [], []
    for idx, part in enumerate(parts):
        incs.append(
            SimplicialMap(part, total, tuple(per_level[n][1][idx] for n in range(N + 1)))
        )
        projs.append(
            SimplicialMap(total, part, tuple(per_level[n][2][idx] for n in range(N + 1)))
        )
    return total, incs, projs


# ---------------------------------------------------------------------------
# spaces of simplicial maps


def smap_system(x: SimplicialObject, y: SimplicialObject, cap: int | None = None):
    """Block system whose solutions are the simplicial chain maps X -> Y,
    with a layout of (level, degree, rows, cols, offset) describing the
    flattening.  Callers may add boundary conditions before solving."""
    from .system import BlockSystem

    p = x.p
    sys = BlockSystem(p, cap)
    layout = []
    off = 0
    for n in range(x.N + 1):
        for t in x.level(n).degrees():
            r, c = y.level(n).dim(t), x.level(n).dim(t)
            if r and c:
                sys.add_unknown((n, t), r, c)
                layout.append((n, t, r, c, off))
                off += r * c
    for n in range(x.N + 1):
        degs = sorted(set(x.level(n).degrees()) | set(y.level(n).degrees()))
        for t in degs:
            rows, cols = y.level(n).dim(t - 1), x.level(n).dim(t)
            if rows and cols:
                sys.add_equation(
                    (rows, cols),
                    [
                        ((n, t), y.level(n).d(t), None, 1),
                        ((n, t - 1), None, x.level(n).d(t), -1),
                    ],
                )
    for n in range(1, x.N + 1):
        for i in range(n + 1):
            fy, fx = y.face(n, i), x.face(n, i)
            for t in x.level(n).degrees():
                rows, cols = y.level(n - 1).dim(t), x.level(n).dim(t)
                if rows and cols:
                    sys.add_equation(
                        (rows, cols),
                        [
                            ((n, t), fy.block(t), None, 1),
                            ((n - 1, t), None, fx.block(t), -1),
                        ],
                    )
    for n in range(x.N):
        for i in range(n + 1):
            sy, sx = y.degen(n, i), x.degen(n, i)
            for t in x.level(n).degrees():
                rows, cols = y.level(n + 1).dim(t), x.level(n).dim(t)
                if rows and cols:
                    sys.add_equation(
                        (rows, cols),
                        [
                            ((n, t), sy.block(t), None, 1),
                            ((n + 1, t), None, sx.block(t), -1),
                        ],
                    )
    return sys, layout


def smap_space(x: SimplicialObject, y: SimplicialObject, cap: int | None = None):
    """Kernel basis of the space of simplicial chain maps X -> Y, with the
    flattening layout of smap_system."""
    sys, layout = smap_system(x, y, cap)
    return sys.kernel(), layout


def smap_from_vector(x: SimplicialObject, y: SimplicialObject, vec: FpMatrix, layout) -> SimplicialMap:
    arr = vec.a.reshape(-1)
    per_level: dict[int, dict[int, FpMatrix]] = {}
    for n, t, r, c, off in layout:
        per_level.setdefault(n, {})[t] = FpMatrix(x.p, arr[off : off + r * c].reshape(r, c))
    lv = tuple(
        ChainMap.build(x.level(n), y.level(n), per_level.get(n, {}))
        for n in range(x.N + 1)
    )
    return SimplicialMap(x, y, lv)
