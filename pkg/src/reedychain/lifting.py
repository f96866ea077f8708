"""Lifting-property solver and the generating families.

A lift for a commuting square is a simplicial map h with h after the
left map equal to the top and the right map after h equal to the bottom.
Its levels satisfy a block linear system over F_p (chain-map equations,
operator compatibility, both boundary conditions), so existence is
decidable and every witness is exact.  The universal form quantifies
over all commuting squares at once by comparing the span of squares
with the image of h -> (h restricted, h projected).
"""

from dataclasses import dataclass

import numpy as np

from . import sobj as so
from . import ssets as ss
from .chain import ChainMap, disk_from_zero, sphere_disk_inclusion
from .errors import InternalInvariantError, ValidationFailure
from .linalg import FpMatrix, hstack
from .realize import coface_tuple
from .sobj import SimplicialMap
from .system import BlockSystem


@dataclass(frozen=True)
class LiftingProblem:
    """Commuting square: p after top equals bottom after i."""

    i: SimplicialMap
    p: SimplicialMap
    top: SimplicialMap
    bottom: SimplicialMap


def validate_problem(pr: LiftingProblem):
    n_levels = pr.i.source.N + 1
    for smap in (pr.i, pr.p, pr.top, pr.bottom):
        if smap.source.N + 1 != n_levels:
            raise ValidationFailure("lifting square truncations differ")
    for n in range(n_levels):
        left = pr.p.level(n) @ pr.top.level(n)
        right = pr.bottom.level(n) @ pr.i.level(n)
        if left != right:
            raise ValidationFailure(f"lifting square does not commute at level {n}")


def rlp(problem: LiftingProblem, cap: int | None = None):
    """(exists, witness): solve for a diagonal filler of the square.

    The witness, when present, is re-substituted into the square before
    being returned.
    """
    validate_problem(problem)
    a, b = problem.i.source, problem.i.target
    x, y = problem.p.source, problem.p.target
    sys, _ = so.smap_system(b, x, cap)
    for n in range(b.N + 1):
        ib, tb = problem.i.level(n), problem.top.level(n)
        for t in a.level(n).degrees():
            rows, cols = x.level(n).dim(t), a.level(n).dim(t)
            if rows and cols:
                sys.add_equation(
                    (rows, cols),
                    [((n, t), None, ib.block(t), 1)],
                    rhs=tb.block(t),
                )
        pb, bb = problem.p.level(n), problem.bottom.level(n)
        for t in b.level(n).degrees():
            rows, cols = y.level(n).dim(t), b.level(n).dim(t)
            if rows and cols:
                sys.add_equation(
                    (rows, cols),
                    [((n, t), pb.block(t), None, 1)],
                    rhs=bb.block(t),
                )
    sol = sys.solve()
    if sol is None:
        return False, None
    lv = tuple(
        ChainMap.build(
            b.level(n),
            x.level(n),
            {t: m for (ln, t), m in sol.items() if ln == n},
        )
        for n in range(b.N + 1)
    )
    h = SimplicialMap(b, x, lv)
    so.validate_smap(h)
    for n in range(b.N + 1):
        if (h.level(n) @ problem.i.level(n)) != problem.top.level(n):
            raise InternalInvariantError(f"witness fails the top condition at level {n}")
        if (problem.p.level(n) @ h.level(n)) != problem.bottom.level(n):
            raise InternalInvariantError(
                f"witness fails the bottom condition at level {n}"
            )
    return True, h


def _square_system(g: SimplicialMap, q: SimplicialMap, cap: int | None):
    """System whose kernel is the space of commuting squares (u, v) with
    u: source(g) -> source(q) on top and v: target(g) -> target(q) below."""
    a, b = g.source, g.target
    x, y = q.source, q.target
    sys = BlockSystem(a.p, cap)
    layout = []

    def add_hom_unknowns(tag, src, tgt):
        for n in range(src.N + 1):
            for t in src.level(n).degrees():
                r, c = tgt.level(n).dim(t), src.level(n).dim(t)
                if r and c:
                    sys.add_unknown((tag, n, t), r, c)
                    layout.append((tag, n, t, r, c))

    def add_hom_equations(tag, src, tgt):
        for n in range(src.N + 1):
            degs = sorted(set(src.level(n).degrees()) | set(tgt.level(n).degrees()))
            for t in degs:
                rows, cols = tgt.level(n).dim(t - 1), src.level(n).dim(t)
                if rows and cols:
                    sys.add_equation(
                        (rows, cols),
                        [
                            ((tag, n, t), tgt.level(n).d(t), None, 1),
                            ((tag, n, t - 1), None, src.level(n).d(t), -1),
                        ],
                    )
        for n in range(1, src.N + 1):
            for i in range(n + 1):
                ft, fs = tgt.face(n, i), src.face(n, i)
                for t in src.level(n).degrees():
                    rows, cols = tgt.level(n - 1).dim(t), src.level(n).dim(t)
                    if rows and cols:
                        sys.add_equation(
                            (rows, cols),
                            [
                                ((tag, n, t), ft.block(t), None, 1),
                                ((tag, n - 1, t), None, fs.block(t), -1),
                            ],
                        )
        for n in range(src.N):
            for i in range(n + 1):
                st, ssrc = tgt.degen(n, i), src.degen(n, i)
                for t in src.level(n).degrees():
                    rows, cols = tgt.level(n + 1).dim(t), src.level(n).dim(t)
                    if rows and cols:
                        sys.add_equation(
                            (rows, cols),
                            [
                                ((tag, n, t), st.block(t), None, 1),
                                ((tag, n + 1, t), None, ssrc.block(t), -1),
                            ],
                        )

    add_hom_unknowns("u", a, x)
    add_hom_unknowns("v", b, y)
    add_hom_equations("u", a, x)
    add_hom_equations("v", b, y)
    # q after u agrees with v after g
    for n in range(a.N + 1):
        for t in a.level(n).degrees():
            rows, cols = y.level(n).dim(t), a.level(n).dim(t)
            if rows and cols:
                sys.add_equation(
                    (rows, cols),
                    [
                        (("u", n, t), q.level(n).block(t), None, 1),
                        (("v", n, t), None, g.level(n).block(t), -1),
                    ],
                )
    return sys, layout


def _flatten_square(sys: BlockSystem, layout, u: SimplicialMap, v: SimplicialMap):
    vec = np.zeros((sys.ambient_dim, 1), dtype=np.int64)
    maps = {"u": u, "v": v}
    for tag, n, t, r, c in layout:
        _, _, off = sys._unknowns[(tag, n, t)]
        vec[off : off + r * c, 0] = maps[tag].level(n).block(t).a.reshape(-1)
    return vec


def has_universal_rlp(g: SimplicialMap, q: SimplicialMap, cap: int | None = None) -> bool:
    """Decide whether every commuting square from g to q has a lift: the
    span of commuting squares must lie in the image of h -> (h g, q h)."""
    sq_sys, sq_layout = _square_system(g, q, cap)
    if sq_sys.ambient_dim == 0:
        return True
    squares = sq_sys.kernel()
    if squares.cols == 0:
        return True
    hom, hom_layout = so.smap_space(g.target, q.source, cap)
    cols = []
    for j in range(hom.cols):
        h = so.smap_from_vector(g.target, q.source, hom.column(j), hom_layout)
        cols.append(_flatten_square(sq_sys, sq_layout, h @ g, q @ h))
    if not cols:
        image = FpMatrix(g.p, np.zeros((sq_sys.ambient_dim, 0), dtype=np.int64))
    else:
        image = FpMatrix(g.p, np.hstack(cols) % g.p)
    return hstack([image, squares]).rank() == image.rank()


@dataclass(frozen=True)
class Generator:
    """One boxed generator with its provenance."""

    label: str
    map: SimplicialMap
    chain_part: str
    sset_part: str
    weq: bool | None


@dataclass(frozen=True)
class GeneratorFamily:
    family: str
    window: tuple[int, int]
    n_range: tuple[int, int]
    members: tuple[Generator, ...]


FAMILIES = ("I", "J'", "J''")


def generators(
    family: str, p: int, N: int, window: tuple[int, int], n_range: tuple[int, int]
) -> GeneratorFamily:
    """Boxed generating families over a degree window and simplex range.

    I boxes the sphere-disk inclusions with boundary inclusions, J' the
    disk coevaluations with boundary inclusions, J'' the sphere-disk
    inclusions with the elementary coface maps.
    """
    from .classify import pushout_product

    if family not in FAMILIES:
        raise ValueError(f"unknown generator family {family!r}")
    lo, hi = window
    nlo, nhi = n_range
    if lo > hi or nlo > nhi:
        raise ValueError("empty generator range")
    members = []
    for m in range(lo, hi + 1):
        if family == "J'":
            f = disk_from_zero(p, m)
            chain_part = f"disk:{m}"
        else:
            f = sphere_disk_inclusion(p, m)
            chain_part = f"sphere-disk:{m}"
        if family in ("I", "J'"):
            for n in range(max(0, nlo), nhi + 1):
                i = ss.boundary_inclusion(N, n)
                members.append(
                    Generator(
                        f"{family}[m={m},n={n}]",
                        pushout_product(f, i),
                        chain_part,
                        f"boundary:{n}",
                        i.weq,
                    )
                )
        else:
            for n in range(max(1, nlo), nhi + 1):
                for j in range(n + 1):
                    i = ss.delta_map(N, coface_tuple(n, j), n)
                    members.append(
                        Generator(
                            f"{family}[m={m},n={n},face={j}]",
                            pushout_product(f, i),
                            chain_part,
                            f"coface:{n}:{j}",
                            i.weq,
                        )
                    )
    return GeneratorFamily(family, (lo, hi), (nlo, nhi), tuple(members))
