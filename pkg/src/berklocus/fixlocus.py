"""Global structure of the fixed locus: classical fixed points, the connected
hull skeleton, discovery and classification of components, crucial weights,
and the global structure checks.

The skeleton is built from exact pairwise distances between classical fixed
points (an ultrametric join tree), with every edge decomposed by the tropical
ray analysis and every vertex annotated by reduction.  Components of the fixed
locus are then read off as connected groups of fixed atoms (vertices, edge
segments, classical leaves).  Completeness of the certificate rests on a
structural fact: at a fixed point whose tangent map is not the identity, every
fixed tangent direction has positive fixed-point multiplicity, hence contains
a classical fixed point, hence points along the skeleton -- so nothing with
positive weight hides off the tree outside id-indifferent regions, and the
weight total provides an end-to-end cross-check either way.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from . import berkmap as bk
from . import residue as rf
from .berkmap import (
    ADD_INDIFFERENT,
    ID_INDIFFERENT,
    MULT_INDIFFERENT,
    NEG_INF,
    NOT_FIXED,
    REPELLING,
    LocalData,
    RationalMapK,
    RayBreakpoint,
    RaySegment,
    TypeIIPoint,
    embed_map,
    reduce_at,
    segments_from_lines,
)
from .epoly import count_roots_in_disk, epoly, poly_shift
from .errors import (
    ClassicalComponent,
    ExplorationIncomplete,
    IdentityMap,
    NeedsExtension,
    NoTotallyRamifiedFixedPoint,
    NotHyperbolic,
    NotIndifferent,
    PreconditionViolated,
)
from .field import INF, FieldElement, PrimeContext
from .residue import (
    INF_POINT,
    FqElement,
    Infinity,
    poly_deg,
    poly_deriv,
    poly_divmod,
    poly_eval,
    poly_gcd,
    poly_mul,
    poly_scale,
    poly_sub,
)
from .roots import ClusterStub, RootHandle, isolate_roots

ATTRACTING = "attracting"
REPELLING_CLASS = "repelling"
INDIFFERENT = "indifferent"

KIND_CLASSICAL = "classical"
KIND_INDIFFERENT = "indifferent"
KIND_PEAKED = "peaked"
KIND_HYPERBOLIC = "hyperbolic"


@dataclass
class ExploreConfig:
    n_max: int = 6
    k_max: int = 3
    ray_budget: int = 64
    seed: int = 0x5EED


@dataclass
class ClassicalFixedPoint:
    """One classical fixed point: exact, realized-to-precision, or infinity."""

    value: Union[RootHandle, Infinity]
    multiplicity: int
    multiplier_valuation: Fraction  # INF encodes multiplier exactly 0
    multiplier_residue: Optional[FqElement]  # present iff valuation == 0
    klass: str

    def is_infinity(self) -> bool:
        return isinstance(self.value, Infinity)

    def describe(self) -> str:
        if self.is_infinity():
            return "oo"
        h = self.value
        if h.is_exact:
            return repr(h.center)
        return f"~{h.center!r} (prec {h.prec})"


# ---------------------------------------------------------------------------
# Classical fixed points
# ---------------------------------------------------------------------------

def _squarefree_parts(ctx, P):
    """Yun decomposition over a characteristic-zero field: [(g, m)] with the
    g monic squarefree pairwise coprime and P = lc * prod g^m."""
    from .residue import poly_monic
    P = poly_monic(ctx, P)
    out = []
    dP = poly_deriv(ctx, P)
    a = poly_gcd(ctx, P, dP)
    b = poly_divmod(ctx, P, a)[0]
    c = poly_divmod(ctx, dP, a)[0]
    i = 1
    while poly_deg(b) > 0:
        d = poly_sub(ctx, c, poly_deriv(ctx, b))
        g = poly_gcd(ctx, b, d)
        if poly_deg(g) > 0:
            out.append((g, i))
        b2 = poly_divmod(ctx, b, g)[0]
        c = poly_divmod(ctx, d, g)[0]
        b = b2
        i += 1
    return out


def _multiplier_polys(f: RationalMapK):
    """(N, D) with f'(z) = N(z)/D(z)."""
    ctx = f.ctx
    N = poly_sub(ctx, poly_mul(ctx, poly_deriv(ctx, f.num), f.den),
                 poly_mul(ctx, f.num, poly_deriv(ctx, f.den)))
    D = poly_mul(ctx, f.den, f.den)
    return N, D


def root_satisfies(h: RootHandle, q) -> bool:
    """Whether the handle's root is a root of q."""
    ctx = h.ctx
    if not q:
        return True
    if h.is_exact:
        return poly_eval(ctx, q, h.center).is_zero()
    G = poly_gcd(ctx, h.g, q)
    if poly_deg(G) <= 0:
        return False
    return count_roots_in_disk(ctx, G, h.center, h.prec, "closed") >= 1


def val_at_root(h: RootHandle, q) -> Fraction:
    """val(q(root)), INF when q vanishes at the root."""
    if root_satisfies(h, q):
        return INF
    return h.val_at(q)


def classical_fixed_points(f: RationalMapK) -> List[ClassicalFixedPoint]:
    if f.is_identity():
        raise IdentityMap("every point is fixed")
    ctx = f.ctx
    N, D = _multiplier_polys(f)
    out: List[ClassicalFixedPoint] = []
    P = f.fixed_point_polynomial()
    if poly_deg(P) >= 1:
        for g, m in _squarefree_parts(ctx, P):
            for h in isolate_roots(ctx, g, m):
                out.append(_finite_entry(ctx, h, m, N, D))
    inf_m = f.infinity_multiplicity()
    if inf_m:
        out.append(_infinity_entry(f, inf_m))
    total = sum(cp.multiplicity for cp in out)
    assert total == f.degree + 1, \
        f"classical fixed points total {total}, expected {f.degree + 1}"
    return out


def _finite_entry(ctx, h: RootHandle, mult, N, D) -> ClassicalFixedPoint:
    F = ctx.residue_field
    if mult >= 2:
        # multiple fixed point forces multiplier exactly 1
        return ClassicalFixedPoint(h, mult, Fraction(0), F.one, INDIFFERENT)
    if root_satisfies(h, N):
        return ClassicalFixedPoint(h, mult, INF, None, ATTRACTING)
    v = h.val_at(N) - h.val_at(D)
    res = None
    if v == 0:
        res = h.unit_residue_at(N) / h.unit_residue_at(D)
    klass = ATTRACTING if v > 0 else (REPELLING_CLASS if v < 0 else INDIFFERENT)
    return ClassicalFixedPoint(h, mult, v, res, klass)


def _infinity_entry(f: RationalMapK, mult) -> ClassicalFixedPoint:
    ctx = f.ctx
    F = ctx.residue_field
    if mult >= 2:
        return ClassicalFixedPoint(INF_POINT, mult, Fraction(0), F.one,
                                   INDIFFERENT)
    fl = f.flip()
    N, D = _multiplier_polys(fl)
    nv = poly_eval(ctx, N, ctx.zero)
    dv = poly_eval(ctx, D, ctx.zero)
    if nv.is_zero():
        return ClassicalFixedPoint(INF_POINT, mult, INF, None, ATTRACTING)
    v = nv.val() - dv.val()
    res = (nv.unit_residue() / dv.unit_residue()) if v == 0 else None
    klass = ATTRACTING if v > 0 else (REPELLING_CLASS if v < 0 else INDIFFERENT)
    return ClassicalFixedPoint(INF_POINT, mult, v, res, klass)


# ---------------------------------------------------------------------------
# Skeleton
# ---------------------------------------------------------------------------

@dataclass
class ScaffoldRay:
    """One analyzed ray of the skeleton: points zeta(center, s) for s in
    [s_lo, s_hi] (bounds may be the +/-INF sentinels)."""

    ray_id: int
    anchor: Union[RootHandle, FieldElement]
    s_lo: Fraction
    s_hi: Fraction
    leaf_idx: Optional[int]  # classical leaf at the s -> INF end
    to_infinity: bool  # carries the upward end toward the point oo
    segments: List[RaySegment] = dc_field(default_factory=list)
    breakpoints: List[RayBreakpoint] = dc_field(default_factory=list)

    def center_elem(self, depth: Fraction) -> FieldElement:
        if isinstance(self.anchor, ClusterStub):
            # every element of the stub's disk represents zeta(c, s) for
            # s <= radius, and stub rays never descend past the radius
            return self.anchor.center
        if isinstance(self.anchor, RootHandle):
            self.anchor.ensure(depth)
            return self.anchor.center
        return self.anchor


@dataclass
class SkeletonGraph:
    """Annotated connected hull of the classical fixed points together with
    the critical points and the point at infinity.

    Including the critical points is what makes the exploration complete:
    every point of local degree >= 2 -- in particular every type-II repelling
    fixed point -- lies in the convex hull of the critical points (the
    ramification locus is contained in that hull), and every other positive-
    weight point sits on the hull of the classical fixed points.  Since paths
    in the Berkovich line are unique geodesics, component connectivity is
    also decided entirely on this tree.
    """

    leaves: List[ClassicalFixedPoint]
    # critical points that are not fixed; clusters whose isolation would
    # exceed the extension budget appear as ClusterStub entries
    aux_leaves: List[Union[RootHandle, ClusterStub]]
    rays: List[ScaffoldRay]
    vertex_points: List[Tuple[TypeIIPoint, LocalData]]  # join/branch points

    def all_breakpoints(self):
        for ray in self.rays:
            for bp in ray.breakpoints:
                yield ray, bp


def _binom(n, k):
    import math
    return math.comb(n, k)


def _tail_lines(f: RationalMapK, h: RootHandle):
    """Valuation lines of the conjugated coefficients along the ray into a
    classical fixed point held by a handle: each Taylor coefficient of the
    conjugated numerator/denominator at the root is a polynomial in the root,
    evaluated exactly through the handle (vanishing coefficients drop out,
    in particular the constant numerator term, which is the fixed-point
    polynomial itself)."""
    from .residue import _trim
    ctx = f.ctx
    lines = []
    num, den = f.num, f.den
    dn, dd = poly_deg(num), poly_deg(den)
    for i in range(max(dn, dd) + 1):
        # NS_i(w) = sum_j C(j,i) num_j w^(j-i); A_i = NS_i - w * DS_i
        ns = ()
        if i <= dn:
            ns = _trim([num[j] * ctx.from_rational(_binom(j, i))
                        for j in range(i, dn + 1)])
        ds = ()
        if i <= dd:
            ds = _trim([den[j] * ctx.from_rational(_binom(j, i))
                        for j in range(i, dd + 1)])
        ai = poly_sub(ctx, ns, poly_mul(ctx, (ctx.zero, ctx.one), ds))
        if ai and not root_satisfies(h, ai):
            lines.append((Fraction(i), h.val_at(ai), ("n", i),
                          h.unit_residue_at(ai)))
        if ds and not root_satisfies(h, ds):
            lines.append((Fraction(i + 1), h.val_at(ds), ("d", i),
                          h.unit_residue_at(ds)))
    return lines


def _ray_lines_at(f: RationalMapK, anchor):
    """Lines for a ray anchored at an exact element, a handle, or a cluster
    stub; non-exact handles get exact lines through the true root, while a
    stub's exact center serves verbatim (its rays stop at the radius, above
    which every disk element is an equivalent center)."""
    if isinstance(anchor, RootHandle) and not anchor.is_exact:
        return _tail_lines(f, anchor)
    a = anchor.center if isinstance(anchor, (RootHandle, ClusterStub)) \
        else anchor
    num_lines, den_lines = bk._ray_lines(f, a)
    return [(m, b, key, c.unit_residue()) for m, b, key, c in
            num_lines + den_lines]


def _annotate_ray(f: RationalMapK, ray: ScaffoldRay, config: ExploreConfig):
    ctx = f.ctx
    lines = _ray_lines_at(f, ray.anchor)
    one = ctx.residue_field.one
    # center element used for segment records and reductions
    max_s = ray.s_hi if ray.s_hi is not INF else Fraction(0)
    segments, breaks = segments_from_lines(one, ctx.zero, lines,
                                           ray.s_lo, ray.s_hi)
    if breaks:
        max_s = max(max_s, max(breaks))
    center = ray.center_elem(max_s + 1)
    ray.segments = [RaySegment(center, s.s_lo, s.s_hi, s.behavior,
                               s.multiplier) for s in segments]
    if len(breaks) > config.ray_budget:
        raise ExplorationIncomplete(
            f"ray at {center!r} has {len(breaks)} breakpoints "
            f"(budget {config.ray_budget})")
    ray.breakpoints = []
    for s in breaks:
        if (s * ctx.n).denominator != 1:
            # type-III crossing at a radius outside the value group: local
            # degree 1, weight 0, no reduction to take; recorded bare so the
            # assembly can pass fixedness through it by closure
            ray.breakpoints.append(RayBreakpoint(s, None))
        else:
            ray.breakpoints.append(
                RayBreakpoint(s, reduce_at(f, TypeIIPoint(center, s))))


def _critical_point_handles(f: RationalMapK,
                            config: ExploreConfig) -> list:
    """Handles for the finite critical points of f that are not themselves
    fixed (fixed ones already appear as leaves).  Conjugate clusters whose
    separation would exceed the extension budget come back as ClusterStub
    entries: they still anchor the hull down to their radius, and nothing of
    positive weight can hide below an unsplit cluster without breaking the
    global weight total."""
    ctx = f.ctx
    N, _ = _multiplier_polys(f)
    P = f.fixed_point_polynomial()
    out: list = []
    if poly_deg(N) < 1:
        return out
    for g, m in _squarefree_parts(ctx, N):
        if P and poly_deg(P) >= 1:
            common = poly_gcd(ctx, g, P)
            if poly_deg(common) >= 1:
                g = poly_divmod(ctx, g, common)[0]
        if poly_deg(g) >= 1:
            out.extend(isolate_roots(ctx, g, m,
                                     budget=(config.n_max, config.k_max)))
    return out


def _anchor_distance(a, b) -> Fraction:
    """Join level of two hull anchors.  A cluster stub stands for the disk
    point at its radius, so joins through it cap at the radius; the capped
    values still satisfy the ultrametric inequality."""
    if isinstance(a, ClusterStub) or isinstance(b, ClusterStub):
        if isinstance(a, ClusterStub) and isinstance(b, ClusterStub):
            diff = a.center - b.center
            raw = INF if diff.is_zero() else diff.val()
        else:
            h, stub = (a, b) if isinstance(b, ClusterStub) else (b, a)
            raw = h.distance_to_point(stub.center)
        cap = min(x.radius for x in (a, b) if isinstance(x, ClusterStub))
        return min(raw, cap)
    return a.distance_to(b)


def gamma_fix(f: RationalMapK,
              config: Optional[ExploreConfig] = None) -> SkeletonGraph:
    """The annotated connected hull of the classical fixed points, the finite
    critical points, and the ray toward infinity."""
    config = config or ExploreConfig()
    leaves = classical_fixed_points(f)
    aux = _critical_point_handles(f, config)
    # anchors: (handle, index into leaves or None for a critical point)
    anchors: List[Tuple[RootHandle, Optional[int]]] = \
        [(cp.value, i) for i, cp in enumerate(leaves)
         if not cp.is_infinity()] + [(h, None) for h in aux]

    rays: List[ScaffoldRay] = []
    ray_id = itertools.count()

    if len(anchors) == 0:
        rays.append(ScaffoldRay(next(ray_id), f.ctx.zero, NEG_INF, INF,
                                leaf_idx=None, to_infinity=True))
    elif len(anchors) == 1:
        h, idx = anchors[0]
        hi = h.radius if isinstance(h, ClusterStub) else INF
        rays.append(ScaffoldRay(next(ray_id), h, NEG_INF, hi,
                                leaf_idx=idx, to_infinity=True))
    else:
        idxs = range(len(anchors))
        dist = {}
        for i, j in itertools.combinations(idxs, 2):
            dist[(i, j)] = _anchor_distance(anchors[i][0], anchors[j][0])
        # ultrametric join tree: merge clusters at decreasing depth
        cluster_of = {i: i for i in idxs}
        members = {i: [i] for i in idxs}
        node_of = {i: ("leaf", i) for i in idxs}
        for level in sorted(set(dist.values()), reverse=True):
            groups: Dict[int, set] = {}
            for (i, j), v in dist.items():
                if v == level and cluster_of[i] != cluster_of[j]:
                    root_i, root_j = cluster_of[i], cluster_of[j]
                    groups.setdefault(min(root_i, root_j), set()).update(
                        {root_i, root_j})
            # merge transitively at this level
            merged_any = True
            while merged_any:
                merged_any = False
                keys = list(groups.keys())
                for a, b in itertools.combinations(keys, 2):
                    if a in groups and b in groups and groups[a] & groups[b]:
                        groups[a] |= groups.pop(b)
                        merged_any = True
                        break
            for cluster_ids in groups.values():
                children = [node_of[c] for c in sorted(cluster_ids)]
                rep = min(cluster_ids)
                new_members = []
                for c in cluster_ids:
                    new_members.extend(members[c])
                for m in new_members:
                    cluster_of[m] = rep
                members[rep] = new_members
                node_of[rep] = ("join", level, children, rep)
        top_rep = cluster_of[0]
        top_node = node_of[top_rep]
        assert top_node[0] == "join"

        def emit(node, parent_level):
            if node[0] == "leaf":
                i = node[1]
                anchor = anchors[i][0]
                hi = anchor.radius if isinstance(anchor, ClusterStub) else INF
                if hi is not INF and hi <= parent_level:
                    return  # stub sits exactly at (or above) the join point
                rays.append(ScaffoldRay(next(ray_id), anchor,
                                        parent_level, hi,
                                        leaf_idx=anchors[i][1],
                                        to_infinity=False))
            else:
                _, level, children, rep = node
                if parent_level is not None:
                    rays.append(ScaffoldRay(next(ray_id), anchors[rep][0],
                                            parent_level, level,
                                            leaf_idx=None, to_infinity=False))
                for ch in children:
                    emit(ch, level)

        emit(top_node, None)
        # upward ray from the top join toward infinity
        rays.append(ScaffoldRay(next(ray_id), anchors[top_rep][0], NEG_INF,
                                top_node[1], leaf_idx=None, to_infinity=True))

    for ray in rays:
        _annotate_ray(f, ray, config)

    # vertex points: breakpoints at ray junction levels
    vertex_points = []
    seen = []
    for ray in rays:
        for bp in ray.breakpoints:
            if bp.local is None:
                continue
            pt = bp.local.point
            if not any(pt.same_point(p) for p, _ in seen):
                seen.append((pt, bp.local))
    vertex_points = seen
    return SkeletonGraph(leaves=leaves, aux_leaves=aux, rays=rays,
                         vertex_points=vertex_points)


# ---------------------------------------------------------------------------
# Components
# ---------------------------------------------------------------------------

@dataclass
class Component:
    kind: str
    classical_points: List[ClassicalFixedPoint]
    repelling_vertices: List[Tuple[TypeIIPoint, int, int]]  # (pt, deg, n_cf)
    arcs: List[RaySegment]
    fixed_vertices: List[Tuple[TypeIIPoint, LocalData]]
    alpha: int
    residue_field: object = None
    atom_ids: List[tuple] = dc_field(default_factory=list)
    atom_adj: Dict[tuple, List[tuple]] = dc_field(default_factory=dict)
    bp_class: Dict[tuple, str] = dc_field(default_factory=dict)

    @property
    def classical_multiplicity(self) -> int:
        return sum(cp.multiplicity for cp in self.classical_points)


@dataclass
class CrucialPoint:
    point: TypeIIPoint
    weight: int
    fixed: bool
    detail: dict


@dataclass
class Analysis:
    """Full certificate for one map."""

    map: RationalMapK
    config: ExploreConfig
    classical_points: List[ClassicalFixedPoint]
    skeleton: SkeletonGraph
    components: List[Component]
    crucial_points: List[CrucialPoint]
    weight_total: int
    complete_rigorous: bool
    diagnostics: List[str]


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _canonical_breakpoints(skeleton: SkeletonGraph):
    """Group breakpoints that denote the same type-II point; returns
    (canon map (ray_id, s) -> canonical id, list of (id, point, LocalData))."""
    canon = {}
    points = []  # (point, local)
    for ray in skeleton.rays:
        for bp in ray.breakpoints:
            if bp.local is None:
                continue
            pt = bp.local.point
            cid = None
            for idx, (p, _) in enumerate(points):
                if pt.same_point(p):
                    cid = idx
                    break
            if cid is None:
                cid = len(points)
                points.append((pt, bp.local))
            canon[(ray.ray_id, bp.s)] = cid
    return canon, points


def explore_components(f: RationalMapK,
                       config: Optional[ExploreConfig] = None,
                       skeleton: Optional[SkeletonGraph] = None
                       ) -> List[Component]:
    return analyze(f, config, skeleton).components


def _assemble(f: RationalMapK, skeleton: SkeletonGraph,
              config: ExploreConfig) -> Tuple[List[Component], list, list]:
    canon, canon_points = _canonical_breakpoints(skeleton)
    uf = _UnionFind()
    atoms: Dict[tuple, dict] = {}
    adj: Dict[tuple, set] = {}

    def add_atom(aid, fixed, payload):
        atoms[aid] = {"fixed": fixed, **payload}
        adj.setdefault(aid, set())
        uf.add(aid)

    def connect(a, b):
        adj[a].add(b)
        adj[b].add(a)
        if atoms[a]["fixed"] and atoms[b]["fixed"]:
            uf.union(a, b)

    for i, cp in enumerate(skeleton.leaves):
        add_atom(("leaf", i), True, {"cp": cp})
    for cid, (pt, local) in enumerate(canon_points):
        add_atom(("bp", cid), local.is_fixed, {"pt": pt, "local": local})

    inf_idx = next((i for i, cp in enumerate(skeleton.leaves)
                    if cp.is_infinity()), None)

    for ray in skeleton.rays:
        seg_ids = []
        for si, seg in enumerate(ray.segments):
            aid = ("seg", ray.ray_id, si)
            add_atom(aid, seg.behavior != NOT_FIXED, {"seg": seg})
            seg_ids.append((aid, seg))
        for aid, seg in seg_ids:
            if seg.s_lo is not NEG_INF and (ray.ray_id, seg.s_lo) in canon:
                connect(aid, ("bp", canon[(ray.ray_id, seg.s_lo)]))
            if seg.s_hi is not INF and (ray.ray_id, seg.s_hi) in canon:
                connect(aid, ("bp", canon[(ray.ray_id, seg.s_hi)]))
            if seg.s_hi is INF and ray.leaf_idx is not None:
                connect(aid, ("leaf", ray.leaf_idx))
            if seg.s_lo is NEG_INF and ray.to_infinity and inf_idx is not None:
                connect(aid, ("leaf", inf_idx))
        # adjacent segments meeting at a type-III crossing (no canonical
        # vertex) touch at a single point of weight 0; the fixed locus is
        # closed, so fixedness passes straight through
        for (aid1, seg1), (aid2, seg2) in \
                itertools.combinations(seg_ids, 2):
            for s in (seg1.s_hi,):
                if s is not INF and s == seg2.s_lo and \
                        (ray.ray_id, s) not in canon:
                    connect(aid1, aid2)
            for s in (seg2.s_hi,):
                if s is not INF and s == seg1.s_lo and \
                        (ray.ray_id, s) not in canon:
                    connect(aid1, aid2)

    groups: Dict[tuple, List[tuple]] = {}
    for aid, info in atoms.items():
        if info["fixed"]:
            groups.setdefault(uf.find(aid), []).append(aid)

    components = []
    for aids in groups.values():
        classical = [atoms[a]["cp"] for a in aids if a[0] == "leaf"]
        fixed_vertices = [(atoms[a]["pt"], atoms[a]["local"])
                          for a in aids if a[0] == "bp"]
        repelling = [(pt, ld.local_degree, ld.n_cf)
                     for pt, ld in fixed_vertices
                     if ld.indifference_class == REPELLING]
        arcs = [atoms[a]["seg"] for a in aids if a[0] == "seg"]
        alpha = sum(deg - 1 - ncf for _, deg, ncf in repelling)
        if repelling:
            kind = KIND_HYPERBOLIC if not classical else KIND_PEAKED
        elif len(classical) == 1 and not fixed_vertices and not arcs and \
                classical[0].klass in (ATTRACTING, REPELLING_CLASS):
            kind = KIND_CLASSICAL
        else:
            kind = KIND_INDIFFERENT
        comp = Component(kind=kind, classical_points=classical,
                         repelling_vertices=repelling, arcs=arcs,
                         fixed_vertices=fixed_vertices, alpha=alpha,
                         residue_field=f.ctx.residue_field,
                         atom_ids=sorted(aids),
                         atom_adj={a: sorted(x for x in adj[a] if x in aids)
                                   for a in aids},
                         bp_class={a: atoms[a]["local"].indifference_class
                                   for a in aids if a[0] == "bp"})
        components.append(comp)
    components.sort(key=lambda c: (c.kind, -c.classical_multiplicity))
    return components, canon_points, atoms


def _leaf_directions(skeleton: SkeletonGraph, pt: TypeIIPoint):
    """Map direction-key -> (direction, leaf indices) for the classical
    points' tangent directions at pt."""
    out: Dict[tuple, Tuple[object, List[int]]] = {}
    for i, cp in enumerate(skeleton.leaves):
        if cp.is_infinity():
            key, d = ("inf",), INF_POINT
        else:
            d = cp.value.direction_at(pt)
            key = ("inf",) if isinstance(d, Infinity) \
                else ("pt", rf._rep_key(d.rep))
        out.setdefault(key, (d, []))[1].append(i)
    return out


def _tangent_fixes_direction(local: LocalData, d) -> bool:
    if local.indifference_class == ID_INDIFFERENT:
        return True
    m = local.reduced_map
    F = m.field
    if isinstance(d, Infinity):
        return m.flip().eval_at(F.zero) == F.zero
    return m.eval_at(d) == d


def crucial_weights_from(skeleton: SkeletonGraph,
                         canon_points) -> Tuple[List[CrucialPoint], int]:
    out = []
    for pt, local in canon_points:
        dirs = _leaf_directions(skeleton, pt)
        if local.is_fixed:
            n_shear = sum(1 for d, _ in dirs.values()
                          if not _tangent_fixes_direction(local, d))
            local.n_shear = n_shear
            w = local.local_degree - 1 + n_shear
            if w > 0:
                out.append(CrucialPoint(pt, w, True,
                                        {"degree": local.local_degree,
                                         "n_shear": n_shear}))
        else:
            v = len(dirs)
            w = max(0, v - 2)
            if w > 0:
                out.append(CrucialPoint(pt, w, False, {"v": v}))
    return out, sum(c.weight for c in out)


# ---------------------------------------------------------------------------
# Top-level analysis with extension retries
# ---------------------------------------------------------------------------

def analyze(f: RationalMapK, config: Optional[ExploreConfig] = None,
            skeleton: Optional[SkeletonGraph] = None) -> Analysis:
    config = config or ExploreConfig()
    attempts = 0
    while True:
        try:
            return _analyze_once(f, config, skeleton)
        except NeedsExtension as e:
            attempts += 1
            skeleton = None
            if attempts > 6:
                raise
            ctx = f.ctx
            import math
            new_n = ctx.n if e.n is None else (ctx.n * e.n
                                               // math.gcd(ctx.n, e.n))
            new_k = ctx.k if e.k is None else e.k
            if new_k != ctx.k and ctx.k != 1:
                raise
            if new_n > config.n_max or new_k > config.k_max:
                raise
            if new_n == ctx.n and new_k == ctx.k:
                raise
            new_ctx = ctx.extend(n=new_n, k=new_k)
            f = embed_map(f, new_ctx)


def _analyze_once(f: RationalMapK, config: ExploreConfig,
                  skeleton: Optional[SkeletonGraph]) -> Analysis:
    if skeleton is None:
        skeleton = gamma_fix(f, config)
    components, canon_points, atoms = _assemble(f, skeleton, config)
    crucial, total = crucial_weights_from(skeleton, canon_points)
    diagnostics = []
    d = f.degree
    stubs = [h for h in skeleton.aux_leaves if isinstance(h, ClusterStub)]
    for stub in stubs:
        diagnostics.append(
            f"critical cluster left unsplit: {stub!r} (separation needs an "
            "extension beyond the budget); region below its radius certified "
            "only through the weight total")
    complete = total == d - 1
    if not complete:
        diagnostics.append(
            f"weight total {total} != degree - 1 = {d - 1}: "
            "exploration incomplete or inconsistent")
    return Analysis(map=f, config=config, classical_points=skeleton.leaves,
                    skeleton=skeleton, components=components,
                    crucial_points=crucial, weight_total=total,
                    complete_rigorous=complete, diagnostics=diagnostics)


def crucial_weights(f: RationalMapK,
                    config: Optional[ExploreConfig] = None
                    ) -> Tuple[List[CrucialPoint], int]:
    a = analyze(f, config)
    return a.crucial_points, a.weight_total


def verify_weight_formula(f: RationalMapK,
                          config: Optional[ExploreConfig] = None) -> bool:
    a = analyze(f, config)
    return a.weight_total == f.degree - 1


# ---------------------------------------------------------------------------
# Theorem checks
# ---------------------------------------------------------------------------

def theorem_a_count(c: Component) -> int:
    """2 + alpha(X) for a non-classical component, asserted against the
    directly counted classical multiplicity inside."""
    if c.kind == KIND_CLASSICAL:
        raise ClassicalComponent("count applies to non-classical components")
    count = 2 + c.alpha
    assert count == c.classical_multiplicity, \
        f"counting formula gives {count}, component holds " \
        f"{c.classical_multiplicity}"
    return count


def connectedness_check(f: RationalMapK,
                        config: Optional[ExploreConfig] = None) -> bool:
    if f.degree < 2:
        raise PreconditionViolated("degree >= 2 required")
    a = analyze(f, config)
    sigma = sum((ld.local_degree - 1 - ld.n_cf)
                for _, ld in _all_fixed_vertices(a)
                if ld.indifference_class != ID_INDIFFERENT)
    result = sigma == f.degree - 1
    assert result == (len(a.components) == 1), \
        "connectedness criterion disagrees with the component count"
    return result


def _all_fixed_vertices(a: Analysis):
    for comp in a.components:
        for pt, ld in comp.fixed_vertices:
            yield pt, ld


def hyperbolic_checks(c: Component) -> bool:
    if c.kind != KIND_HYPERBOLIC:
        raise NotHyperbolic(f"component is {c.kind}")
    F = c.residue_field
    n = len(c.repelling_vertices)
    # (i) degree congruence in the residue field
    total = F.zero
    for _, deg, _ in c.repelling_vertices:
        total = total + F.from_int(deg)
    if total != F.from_int(n - 1):
        return False
    # (ii) the component is the connected hull of its repelling vertices:
    # every graph-leaf atom of the component must be a repelling vertex
    rep_atoms = {a for a, cls in c.bp_class.items() if cls == REPELLING}
    for a in c.atom_ids:
        if len(c.atom_adj[a]) <= 1 and a not in rep_atoms:
            return False
    # (iii) no id-/additively indifferent annotation inside
    for cls in c.bp_class.values():
        if cls in (ID_INDIFFERENT, ADD_INDIFFERENT):
            return False
    for arc in c.arcs:
        if arc.behavior == ID_INDIFFERENT:
            return False
    return True


def theorem_b_check(f: RationalMapK,
                    config: Optional[ExploreConfig] = None) -> bool:
    p = f.ctx.p
    d = f.degree
    if p <= d:
        raise PreconditionViolated(f"requires residue characteristic {p} > "
                                   f"degree {d}")
    a = analyze(f, config)
    if any(c.kind == KIND_HYPERBOLIC for c in a.components):
        return False
    return len(a.components) <= d + 1


def indifferent_checks(c: Component) -> bool:
    if c.kind != KIND_INDIFFERENT:
        raise NotIndifferent(f"component is {c.kind}")
    if c.classical_multiplicity != 2:
        return False
    F = c.residue_field
    pts = c.classical_points
    if len(pts) == 2:
        r1, r2 = pts[0].multiplier_residue, pts[1].multiplier_residue
        if r1 is None or r2 is None or r1 * r2 != F.one:
            return False
        interior_id = (r1 == F.one)
        for arc in c.arcs:
            if interior_id and arc.behavior == MULT_INDIFFERENT:
                return False
            if not interior_id and arc.behavior != MULT_INDIFFERENT:
                return False
    else:
        # one doubled point: interior id-indifferent or additive
        for arc in c.arcs:
            if arc.behavior == MULT_INDIFFERENT:
                return False
    # contains a type-II fixed point
    if not c.fixed_vertices and not c.arcs:
        return False
    return True


def totally_ramified_fixed_point(f: RationalMapK):
    """A totally ramified classical fixed point, when one is visible:
    infinity for a polynomial, or an exact finite fixed point where the map
    has local degree equal to its degree."""
    ctx = f.ctx
    d = f.degree
    if poly_deg(f.den) == 0 and poly_deg(f.num) == d:
        return INF_POINT
    for cp in classical_fixed_points(f):
        if cp.is_infinity() or not cp.value.is_exact:
            continue
        r = cp.value.center
        fr = f.eval_at(r)
        if isinstance(fr, Infinity):
            continue
        shifted = poly_shift(ctx, poly_sub(
            ctx, f.num, poly_scale(ctx, f.den, fr)), r)
        order = next((i for i, cc in enumerate(shifted)
                      if not cc.is_zero()), None)
        if order == d:
            return r
    return None


def totally_ramified_corollary_check(f: RationalMapK,
                                     config: Optional[ExploreConfig] = None
                                     ) -> bool:
    if f.degree < 2:
        raise PreconditionViolated("degree >= 2 required")
    if totally_ramified_fixed_point(f) is None:
        raise NoTotallyRamifiedFixedPoint("no totally ramified fixed point")
    a = analyze(f, config)
    return not any(c.kind == KIND_INDIFFERENT for c in a.components)


def alpha_sum_check(f: RationalMapK,
                    config: Optional[ExploreConfig] = None) -> bool:
    a = analyze(f, config)
    non_classical = [c for c in a.components if c.kind != KIND_CLASSICAL]
    n = len(non_classical)
    c_count = sum(cp.multiplicity for cp in a.classical_points
                  if cp.klass in (ATTRACTING, REPELLING_CLASS))
    lhs = sum(c.alpha for c in non_classical)
    return lhs == f.degree + 1 - c_count - 2 * n


def closest_point(skeleton: SkeletonGraph, y) -> TypeIIPoint:
    """Projection of y (a TypeIIPoint, or a classical point given as a
    FieldElement) onto the skeleton, as a point of the underlying tree."""
    if isinstance(y, TypeIIPoint):
        c, s = y.center, Fraction(y.s)
    else:
        c, s = y, INF
    best = None
    for ray in skeleton.rays:
        lo = ray.s_lo
        hi = ray.s_hi
        a = ray.center_elem((hi if hi is not INF else Fraction(0)) + 1)
        diff = c - a
        join = INF if diff.is_zero() else diff.val()
        cand = min(join, s)
        if hi is not INF and cand > hi:
            cand = hi
        if lo is not NEG_INF and cand < lo:
            cand = lo
        if cand is INF:
            cand = hi if hi is not INF else s
        if best is None or cand > best[0]:
            best = (cand, a)
    assert best is not None, "empty skeleton"
    return TypeIIPoint(best[1], best[0])
