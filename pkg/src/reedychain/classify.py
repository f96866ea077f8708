"""Decidable classifiers for maps of truncated simplicial objects.

Every predicate reduces to exact rank computations: levelwise mapping
cones for the weak equivalences, relative latching and matching
comparisons for the cofibrations and fibrations, and corner maps for the
equifibered condition.  Failing classifiers come with a witness locating
the first level and degree where the defect appears.
"""

from dataclasses import dataclass

from . import sobj as so
from . import ssets as ss
from . import totals as tt
from .chain import (
    ChainMap,
    SpanResult,
    epi_witness,
    invert_map,
    is_iso,
    mono_witness,
    pullback,
    pullback_mediator,
    pushout,
    pushout_mediator,
    quasi_iso_witness,
)
from .errors import InternalInvariantError
from .sobj import SimplicialMap, SimplicialObject


@dataclass(frozen=True)
class RelativeLatching:
    """X_n glued with the target latching object, compared against Y_n."""

    map: ChainMap
    span: SpanResult
    lx: so.Latching
    ly: so.Latching


def relative_latching(
    f: SimplicialMap, n: int, lx: so.Latching | None = None, ly: so.Latching | None = None
) -> RelativeLatching:
    if lx is None:
        lx = so.latching(f.source, n)
    if ly is None:
        ly = so.latching(f.target, n)
    lf = so.latching_map_of(f, n, lx, ly)
    span = pushout(lx.to_level, lf)
    m = pushout_mediator(span, f.level(n), ly.to_level)
    return RelativeLatching(m, span, lx, ly)


@dataclass(frozen=True)
class RelativeMatching:
    """X_n compared against Y_n constrained over M_nY by M_nX."""

    map: ChainMap
    span: SpanResult
    mx: so.Matching
    my: so.Matching


def relative_matching(
    f: SimplicialMap, n: int, mx: so.Matching | None = None, my: so.Matching | None = None
) -> RelativeMatching:
    if mx is None:
        mx = so.matching(f.source, n)
    if my is None:
        my = so.matching(f.target, n)
    mf = so.matching_map_of(f, n, mx, my)
    span = pullback(my.from_level, mf)
    m = pullback_mediator(span, f.level(n), mx.from_level)
    return RelativeMatching(m, span, mx, my)


def level_we_witness(f: SimplicialMap):
    """(level, degree) of the first level that is not a quasi-isomorphism."""
    for n in range(f.source.N + 1):
        t = quasi_iso_witness(f.level(n))
        if t is not None:
            return (n, t)
    return None


def reedy_cof_witness(f: SimplicialMap):
    """(level, degree) of the first non-injective relative latching map."""
    for n in range(f.source.N + 1):
        t = mono_witness(relative_latching(f, n).map)
        if t is not None:
            return (n, t)
    return None


def reedy_fib_witness(f: SimplicialMap):
    """(level, degree) of the first non-surjective relative matching map."""
    for n in range(f.source.N + 1):
        t = epi_witness(relative_matching(f, n).map)
        if t is not None:
            return (n, t)
    return None


def face_square_witness(f: SimplicialMap):
    """First (m, i, degree) where the comparison of X_{m+1} with the
    pullback X_m x_{Y_m} Y_{m+1} over the i-th face is not a
    quasi-isomorphism."""
    x, y = f.source, f.target
    for m in range(x.N):
        for i in range(m + 2):
            span = pullback(f.level(m), y.face(m + 1, i))
            corner = pullback_mediator(span, x.face(m + 1, i), f.level(m + 1))
            t = quasi_iso_witness(corner)
            if t is not None:
                return (m, i, t)
    return None


def homotopically_constant_witness(x: SimplicialObject):
    """First (level, face, degree) where a face map fails to be a
    quasi-isomorphism; all degeneracies follow by two-out-of-three."""
    for n in range(1, x.N + 1):
        for i in range(n + 1):
            t = quasi_iso_witness(x.face(n, i))
            if t is not None:
                return (n, i, t)
    return None


def is_homotopically_constant(x: SimplicialObject) -> bool:
    return homotopically_constant_witness(x) is None


@dataclass(frozen=True)
class Classification:
    """Joint verdict of all classifiers on one map, with witnesses for
    the failing ones."""

    level_we: bool
    reedy_cof: bool
    reedy_fib: bool
    equifibered: bool
    realization_we: bool
    realization_exact: bool
    reedy_trivial_cof: bool
    reedy_trivial_fib: bool
    witnesses: dict

    @property
    def realization_flag(self) -> str:
        return "exact" if self.realization_exact else "truncation-limited"


def _jsonable_witness(w):
    if isinstance(w, tuple):
        return [_jsonable_witness(v) for v in w]
    return w


def classification_report(c: Classification) -> dict:
    """Flat JSON-able report with per-predicate booleans and witnesses."""
    return {
        "level_we": c.level_we,
        "reedy_cof": c.reedy_cof,
        "reedy_fib": c.reedy_fib,
        "equifibered": c.equifibered,
        "realization_we": c.realization_we,
        "flag": c.realization_flag,
        "reedy_trivial_cof": c.reedy_trivial_cof,
        "reedy_trivial_fib": c.reedy_trivial_fib,
        "witnesses": {
            k: _jsonable_witness(v) for k, v in sorted(c.witnesses.items())
        },
    }


def classify(f: SimplicialMap, check_invariant: bool = True) -> Classification:
    wits = {}
    lw = level_we_witness(f)
    cw = reedy_cof_witness(f)
    fw = reedy_fib_witness(f)
    sq = face_square_witness(f)
    rr = tt.realization_we(f)
    if lw is not None:
        wits["level_we"] = lw
    if cw is not None:
        wits["reedy_cof"] = cw
    if fw is not None:
        wits["reedy_fib"] = fw
        wits["equifibered"] = fw
    elif sq is not None:
        wits["equifibered"] = sq
    if not rr.we and rr.witness is not None:
        wits["realization_we"] = rr.witness
    c = Classification(
        level_we=lw is None,
        reedy_cof=cw is None,
        reedy_fib=fw is None,
        equifibered=fw is None and sq is None,
        realization_we=rr.we,
        realization_exact=rr.exact,
        reedy_trivial_cof=lw is None and cw is None,
        reedy_trivial_fib=lw is None and fw is None,
        witnesses=wits,
    )
    if check_invariant and c.reedy_fib and c.level_we:
        if not c.equifibered:
            raise InternalInvariantError(
                f"trivial fibration with a non-cartesian face square at {sq}"
            )
        if not c.realization_we:
            raise InternalInvariantError(
                "levelwise equivalence whose realization comparison failed "
                f"at degree {rr.witness}"
            )
    return c


def pushout_product(f: ChainMap | SimplicialMap, i: ss.SSetMap) -> SimplicialMap:
    """(X -> Y) boxed with (K -> L): the induced map out of
    X tensor L glued with Y tensor K over X tensor K, into Y tensor L.
    A plain chain map is promoted to its constant simplicial map first."""
    if isinstance(f, ChainMap):
        f = so.constant_map(i.source.N, f)
    xi = so.tensor_sobj_sset_map(f.source, i)
    fk = so.tensor_smap_with_sset(f, i.source)
    span = so.pushout_sobj(xi, fk)
    fl = so.tensor_smap_with_sset(f, i.target)
    yi = so.tensor_sobj_sset_map(f.target, i)
    return so.pushout_sobj_mediator(span, fl, yi)


@dataclass(frozen=True)
class CotensorSquare:
    """Corner map X^L -> Y^L x_{Y^K} X^K with its ingredients."""

    map: ChainMap
    span: SpanResult
    xl: so.Cotensor
    xk: so.Cotensor
    yl: so.Cotensor
    yk: so.Cotensor


def cotensor_map(f: SimplicialMap, i: ss.SSetMap) -> CotensorSquare:
    x, y = f.source, f.target
    k, l = i.source, i.target
    xl, xk = so.cotensor0(x, l), so.cotensor0(x, k)
    yl, yk = so.cotensor0(y, l), so.cotensor0(y, k)
    ry = so.cotensor_restrict(y, i, yl, yk)
    ak = so.cotensor_apply(f, k, xk, yk)
    span = pullback(ry, ak)
    al = so.cotensor_apply(f, l, xl, yl)
    rx = so.cotensor_restrict(x, i, xl, xk)
    m = pullback_mediator(span, al, rx)
    return CotensorSquare(m, span, xl, xk, yl, yk)


def matching_cotensor_comparison(f: SimplicialMap, n: int) -> bool:
    """Check that the corner map against the boundary inclusion of the
    n-simplex turns into the relative matching comparison once both
    corners are identified along the canonical isomorphisms."""
    x, y = f.source, f.target
    i = ss.boundary_inclusion(x.N, n)
    sq = cotensor_map(f, i)
    rel = relative_matching(f, n)
    phi_x = so.yoneda_projection(x, n, sq.xl)
    phi_y = so.yoneda_projection(y, n, sq.yl)
    beta_x = so.boundary_cotensor_from_matching(x, n, sq.xk, rel.mx)
    if not (is_iso(phi_x) and is_iso(phi_y) and is_iso(beta_x)):
        return False
    theta = pullback_mediator(
        rel.span,
        phi_y @ sq.span.left,
        invert_map(beta_x) @ sq.span.right,
    )
    if not is_iso(theta):
        return False
    return theta @ sq.map == rel.map @ phi_x
