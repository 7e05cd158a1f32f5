"""Rational maps over the working field and their local behavior at points of
the Berkovich line.

The central operation is `reduce_at`: conjugate the map so a chosen disk point
becomes the Gauss point, normalize coefficients to minimal valuation zero, and
reduce mod the maximal ideal.  The point is fixed exactly when that reduction
is nonconstant, and the reduced map is the tangent map, whose fixed directions,
multipliers, and cancelled-factor multiplicities drive everything downstream.

`ray_analysis` is the tropical engine: along a ray of disk points with a fixed
center, every conjugated coefficient valuation is an affine function of the
radius parameter s, so the reduction's support -- hence fixedness and the
indifference class -- is constant between breakpoints of a lower envelope of
finitely many lines.  No sampling is used to find structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from . import residue as rf
from .epoly import (
    count_roots_in_disk,
    poly_reverse,
    poly_scale_arg,
    poly_shift,
)
from .errors import (
    ArcNotFixed,
    ConstantMap,
    IdentityTangentMap,
    NeedsExtension,
    NotFixed,
    ZeroDenominator,
)
from .field import INF, FieldElement, PrimeContext
from .residue import (
    INF_POINT,
    FqElement,
    FqRationalMap,
    Infinity,
    _trim,
    _vanishing_order,
    poly_deg,
    poly_divmod,
    poly_gcd,
    poly_monic,
    poly_mul,
    poly_scale,
    poly_shift_coeffs,
    poly_sub,
)

DirectionKey = tuple

NEG_INF = -INF  # sentinel for unbounded ray ends

NOT_FIXED = "not-fixed"
ID_INDIFFERENT = "id-indifferent"
MULT_INDIFFERENT = "multiplicatively-indifferent"
ADD_INDIFFERENT = "additively-indifferent"
REPELLING = "repelling"


# ---------------------------------------------------------------------------
# Maps and points
# ---------------------------------------------------------------------------

class RationalMapK:
    """A rational map over the working field in normalized form: numerator and
    denominator coprime, all coefficients of valuation >= 0 with at least one
    of valuation exactly 0."""

    def __init__(self, ctx: PrimeContext, num, den, _coprime: bool = False):
        num, den = _trim(num), _trim(den)
        if not den:
            raise ZeroDenominator("denominator is identically zero")
        if not num:
            raise ConstantMap("the zero map is constant")
        if not _coprime:
            g = poly_gcd(ctx, num, den)
            if poly_deg(g) > 0:
                num = poly_divmod(ctx, num, g)[0]
                den = poly_divmod(ctx, den, g)[0]
        if max(poly_deg(num), poly_deg(den)) < 1:
            raise ConstantMap("map is constant after cancellation")
        shift = min(c.val() for c in num + den)
        scale = ctx.pi_pow(-int(shift * ctx.n))
        self.ctx = ctx
        self.num = tuple(c * scale for c in num)
        self.den = tuple(c * scale for c in den)

    @property
    def degree(self) -> int:
        return max(poly_deg(self.num), poly_deg(self.den))

    def is_identity(self) -> bool:
        if poly_deg(self.num) != 1 or poly_deg(self.den) != 0 or \
                not self.num[0].is_zero():
            return False
        return self.num[1] == self.den[0]

    def __eq__(self, other):
        if not isinstance(other, RationalMapK):
            return NotImplemented
        if self.ctx != other.ctx:
            return False
        # normalized forms agree up to one unit scalar
        if poly_deg(self.num) != poly_deg(other.num) or \
                poly_deg(self.den) != poly_deg(other.den):
            return False
        ref = None
        for a, b in zip(self.num + self.den, other.num + other.den):
            if a.is_zero() != b.is_zero():
                return False
            if a.is_zero():
                continue
            r = a / b
            if ref is None:
                ref = r
            elif r != ref:
                return False
        return True

    def __repr__(self):
        return f"({_epoly_str(self.num)}) / ({_epoly_str(self.den)})"

    # -- coordinate changes ----------------------------------------------

    def conjugate_affine(self, u: FieldElement, a: FieldElement) -> "RationalMapK":
        """The map z -> u^(-1) * (f(u*z + a) - a)."""
        assert not u.is_zero()
        ctx = self.ctx
        num_s = poly_shift(ctx, self.num, a) if not a.is_zero() else self.num
        den_s = poly_shift(ctx, self.den, a) if not a.is_zero() else self.den
        num_s = poly_sub(ctx, num_s, poly_scale(ctx, den_s, a))
        num_u = poly_scale_arg(ctx, num_s, u)
        den_u = poly_scale_arg(ctx, den_s, u)
        den_u = poly_scale(ctx, den_u, u)
        # an invertible coordinate change of a reduced map stays reduced
        return RationalMapK(ctx, num_u, den_u, _coprime=True)

    def flip(self) -> "RationalMapK":
        """Conjugate by z -> 1/z."""
        d = self.degree
        ctx = self.ctx
        # reversal of a reduced pair is reduced: a common root w would pull
        # back to a common root 1/w (and w = 0 would need both leading
        # coefficients to vanish, contradicting d = max of the degrees)
        return RationalMapK(ctx, poly_reverse(ctx, self.den, d),
                            poly_reverse(ctx, self.num, d), _coprime=True)

    def eval_at(self, z: FieldElement):
        from .residue import poly_eval
        nv = poly_eval(self.ctx, self.num, z)
        dv = poly_eval(self.ctx, self.den, z)
        if dv.is_zero():
            return INF_POINT
        return nv / dv

    # -- fixed-point polynomial ------------------------------------------

    def fixed_point_polynomial(self):
        """P(z) = numerator - z * denominator; its roots are the finite
        classical fixed points."""
        ctx = self.ctx
        return poly_sub(ctx, self.num,
                        poly_mul(ctx, (ctx.zero, ctx.one), self.den))

    def infinity_multiplicity(self) -> int:
        """Fixed-point multiplicity of the classical point at infinity:
        d + 1 - deg P when infinity is fixed, else 0."""
        if poly_deg(self.num) <= poly_deg(self.den):
            return 0
        return self.degree + 1 - poly_deg(self.fixed_point_polynomial())


def normalize(ctx: PrimeContext, raw_num, raw_den) -> RationalMapK:
    """Build a normalized map from raw coefficient lists."""
    from .epoly import epoly
    return RationalMapK(ctx, epoly(ctx, raw_num), epoly(ctx, raw_den))


@dataclass(frozen=True)
class TypeIIPoint:
    """The disk point of center `center` and radius p^(-s).

    Negative s reaches the points between the Gauss point and infinity (the
    disk of radius p^(-s) > 1 around any finite center); no separate
    infinity-side chart is needed.
    """

    center: FieldElement
    s: Fraction

    def same_point(self, other: "TypeIIPoint") -> bool:
        if self.s != other.s:
            return False
        d = self.center - other.center
        return d.is_zero() or d.val() >= self.s

    def contains(self, other: "TypeIIPoint") -> bool:
        """Disk containment (other's disk inside self's)."""
        if other.s < self.s:
            return False
        d = self.center - other.center
        return d.is_zero() or d.val() >= self.s

    def __repr__(self):
        return f"zeta({self.center!r}, s={self.s})"


GAUSS = None  # set per-context; use gauss_point(ctx)


def gauss_point(ctx: PrimeContext) -> TypeIIPoint:
    return TypeIIPoint(ctx.zero, Fraction(0))


# ---------------------------------------------------------------------------
# Local data at a point
# ---------------------------------------------------------------------------

@dataclass
class LocalData:
    """Everything the reduction at one type-II point reveals."""

    point: TypeIIPoint
    is_fixed: bool
    reduced_map: Optional[FqRationalMap]
    local_degree: Optional[int]
    indifference_class: str
    directions: Optional[List[rf.TangentFixedDirection]]  # None: identity map
    surplus: Dict[DirectionKey, int]
    n_cf: Optional[int]
    n_shear: Optional[int] = None  # filled by the global pass
    conjugated: Optional[RationalMapK] = None
    raw_reduced_num: Optional[tuple] = None
    raw_reduced_den: Optional[tuple] = None
    gcd_poly: Optional[tuple] = None

    def surplus_total(self) -> int:
        return sum(self.surplus.values())

    def fixed_directions(self):
        return self.directions or []


def _require_integral_s(ctx: PrimeContext, s: Fraction):
    s = Fraction(s)
    if (s * ctx.n).denominator != 1:
        import math
        need = ctx.n * s.denominator // math.gcd(ctx.n, s.denominator)
        raise NeedsExtension(n=need, detail=f"radius parameter s = {s}")
    return s


def reduce_at(f: RationalMapK, x: TypeIIPoint) -> LocalData:
    """Reduction of f at the disk point x, with full direction data."""
    ctx = f.ctx
    s = _require_integral_s(ctx, x.s)
    u = ctx.pi_pow(int(s * ctx.n))
    g = f.conjugate_affine(u, x.center)
    F = ctx.residue_field
    rnum = _trim([c.residue() for c in g.num])
    rden = _trim([c.residue() for c in g.den])
    assert rnum or rden, "normalized map cannot reduce to 0/0"
    # cancelled common factor
    if rnum and rden:
        gcd_poly = poly_gcd(F, rnum, rden)
    else:
        gcd_poly = poly_monic(F, rnum or rden)
    cnum = poly_divmod(F, rnum, gcd_poly)[0] if rnum else ()
    cden = poly_divmod(F, rden, gcd_poly)[0] if rden else ()
    surplus = _surplus_table(f, x, g, F, rnum, rden, gcd_poly)
    if not cnum or not cden:
        # constant 0 or constant infinity
        return LocalData(point=x, is_fixed=False, reduced_map=None,
                         local_degree=None, indifference_class=NOT_FIXED,
                         directions=None, surplus=surplus, n_cf=None,
                         conjugated=g, raw_reduced_num=rnum,
                         raw_reduced_den=rden, gcd_poly=gcd_poly)
    reduced = FqRationalMap(F, cnum, cden)
    if reduced.is_constant():
        return LocalData(point=x, is_fixed=False, reduced_map=reduced,
                         local_degree=None, indifference_class=NOT_FIXED,
                         directions=None, surplus=surplus, n_cf=None,
                         conjugated=g, raw_reduced_num=rnum,
                         raw_reduced_den=rden, gcd_poly=gcd_poly)
    deg = reduced.degree
    if reduced.is_identity():
        cls, dirs, n_cf = ID_INDIFFERENT, None, 0
    else:
        dirs = reduced.fixed_points()
        n_cf = sum(t.orbit_size for t in dirs if t.critically_fixed)
        if deg > 1:
            cls = REPELLING
        else:
            distinct = sum(t.orbit_size for t in dirs)
            cls = ADD_INDIFFERENT if distinct == 1 else MULT_INDIFFERENT
            if cls == ADD_INDIFFERENT:
                assert dirs[0].multiplicity == 2
    return LocalData(point=x, is_fixed=True, reduced_map=reduced,
                     local_degree=deg, indifference_class=cls,
                     directions=dirs, surplus=surplus, n_cf=n_cf,
                     conjugated=g, raw_reduced_num=rnum, raw_reduced_den=rden,
                     gcd_poly=gcd_poly)


def _surplus_table(f, x, g, F, rnum, rden, gcd_poly):
    """Per-direction cancelled multiplicities, with the infinity direction
    computed through the flip so a single finite-direction code path serves
    both cases."""
    table: Dict[DirectionKey, int] = {}
    for q, mult in rf.factor(F, gcd_poly) if poly_deg(gcd_poly) > 0 else []:
        if poly_deg(q) == 1:
            key = ("pt", rf._rep_key((-q[0]).rep))
        else:
            key = ("orbit", rf._poly_key(q))
        table[key] = table.get(key, 0) + mult * poly_deg(q)
    inf_s = _infinity_surplus(f, x)
    if inf_s:
        table[("inf",)] = inf_s
    return table


def _infinity_surplus(f: RationalMapK, x: TypeIIPoint) -> int:
    ctx = f.ctx
    s = Fraction(x.s)
    u = ctx.pi_pow(int(s * ctx.n))
    g = f.conjugate_affine(u, x.center).flip()
    F = ctx.residue_field
    rnum = _trim([c.residue() for c in g.num])
    rden = _trim([c.residue() for c in g.den])
    if rnum and rden:
        gcd_poly = poly_gcd(F, rnum, rden)
    else:
        gcd_poly = poly_monic(F, rnum or rden)
    zero = F.zero
    return _vanishing_order(F, gcd_poly, zero) if poly_deg(gcd_poly) > 0 else 0


def surplus(f: RationalMapK, x: TypeIIPoint, v) -> int:
    """Cancelled multiplicity into a single direction (residue-field point or
    INF_POINT)."""
    if isinstance(v, Infinity):
        return _infinity_surplus(f, x)
    local = reduce_at(f, x)
    gcd_poly = local.gcd_poly
    if poly_deg(gcd_poly) <= 0:
        return 0
    lifted = poly_shift_coeffs(f.ctx.residue_field, gcd_poly, v.field)
    return _vanishing_order(v.field, lifted, v)


# ---------------------------------------------------------------------------
# Direction-level classical counting (F_f(v))
# ---------------------------------------------------------------------------

def _lift_direction(ctx: PrimeContext, v: FqElement):
    """A working-field element whose residue is v, extending the unramified
    part when v lives in a proper extension; returns (new_ctx, lift)."""
    F = ctx.residue_field
    if v.field == F:
        return ctx, ctx.lift(v)
    if ctx.k != 1 or v.field.base != F:
        raise NeedsExtension(k=ctx.k * v.field.degree,
                             detail="direction in an unsupported extension")
    # v is the generator image of F_p[w]/(modulus); lift the modulus
    modulus = v.field.modulus
    gen = v.field.gen
    if v != gen:
        # general elements of the extension would need a change of generator
        raise NeedsExtension(k=ctx.k * v.field.deg_over_base,
                             detail="direction is a non-generator extension element")
    mp = tuple(c.rep for c in modulus)
    new_ctx = PrimeContext(ctx.p, ctx.n, v.field.deg_over_base,
                           unram_min_poly=mp)
    return new_ctx, new_ctx.x_gen


def classical_count_in_direction(f: RationalMapK, x: TypeIIPoint, v) -> int:
    """Number of classical fixed points (with multiplicity) in the open disk
    of direction v at x; v is a residue-field point (possibly in an
    extension) or INF_POINT."""
    ctx = f.ctx
    s = _require_integral_s(ctx, x.s)
    P = f.fixed_point_polynomial()
    if isinstance(v, Infinity):
        closed = count_roots_in_disk(ctx, P, x.center, s, "closed") if P else 0
        total = poly_deg(P) if P else 0
        return total - closed + f.infinity_multiplicity()
    new_ctx, lifted = _lift_direction(ctx, v)
    if new_ctx != ctx:
        f2 = embed_map(f, new_ctx)
        P = f2.fixed_point_polynomial()
        center = new_ctx.embed(x.center)
        u = new_ctx.pi_pow(int(s * new_ctx.n))
    else:
        center = x.center
        u = ctx.pi_pow(int(s * ctx.n))
        new_ctx = ctx
    c = center + u * lifted
    return count_roots_in_disk(new_ctx, P, c, s, "open") if P else 0


def embed_map(f: RationalMapK, new_ctx: PrimeContext) -> RationalMapK:
    # coprimality persists under field extension (the Bezout witness embeds)
    return RationalMapK(new_ctx, [new_ctx.embed(c) for c in f.num],
                        [new_ctx.embed(c) for c in f.den], _coprime=True)


def identification_check(f: RationalMapK, x: TypeIIPoint, v) -> bool:
    """Verify that the classical fixed-point count in direction v equals the
    cancelled multiplicity plus the tangent-map fixed-point multiplicity,
    each side computed by its own independent path."""
    local = reduce_at(f, x)
    if not local.is_fixed:
        raise NotFixed("point is not fixed")
    if local.indifference_class == ID_INDIFFERENT:
        raise IdentityTangentMap("tangent map is the identity")
    F_count = classical_count_in_direction(f, x, v)
    s_v = surplus(f, x, v)
    Ft = 0
    for t in local.directions:
        if isinstance(v, Infinity):
            if isinstance(t.location, Infinity):
                Ft = t.multiplicity
        elif not isinstance(t.location, Infinity):
            if t.field == v.field and t.location == v:
                Ft = t.multiplicity
            elif t.minpoly is not None and v.field != f.ctx.residue_field:
                # same Galois orbit: v a root of the factor
                lifted = poly_shift_coeffs(f.ctx.residue_field, t.minpoly, v.field)
                from .residue import poly_eval
                if poly_eval(v.field, lifted, v).is_zero():
                    Ft = t.multiplicity
    return F_count == s_v + Ft


# ---------------------------------------------------------------------------
# Ray analysis (tropical)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RaySegment:
    """Constant-behavior open interval of radius parameters along the ray of
    disk points with a fixed center."""

    center: FieldElement
    s_lo: Fraction
    s_hi: Fraction
    behavior: str  # NOT_FIXED / ID_INDIFFERENT / MULT_INDIFFERENT
    multiplier: Optional[FqElement]  # constant lambda of the interior w -> lw


@dataclass
class RayBreakpoint:
    s: Fraction
    local: Optional[LocalData]
    needs_extension: Optional[str] = None


@dataclass
class RayAnalysis:
    center: FieldElement
    segments: List[RaySegment]
    breakpoints: List[RayBreakpoint]

    def behavior_at(self, s: Fraction) -> str:
        for bp in self.breakpoints:
            if bp.s == s:
                if bp.local is not None:
                    return bp.local.indifference_class
                return "needs-extension"
        for seg in self.segments:
            if seg.s_lo < s < seg.s_hi:
                return seg.behavior
        raise ValueError(f"s = {s} outside the analyzed range")


def _ray_lines(f: RationalMapK, a: FieldElement):
    """Affine valuation functions of the conjugated coefficients along the
    ray centered at a: numerator coefficient i gives (slope i, intercept
    val alpha_i), denominator coefficient j gives (slope j + 1, val beta_j);
    returns (num_lines, den_lines, residues) keyed by index."""
    ctx = f.ctx
    num_s = poly_shift(ctx, f.num, a) if not a.is_zero() else f.num
    den_s = poly_shift(ctx, f.den, a) if not a.is_zero() else f.den
    num_s = poly_sub(ctx, num_s, poly_scale(ctx, den_s, a))
    num_lines = []
    for i, c in enumerate(num_s):
        if not c.is_zero():
            num_lines.append((Fraction(i), c.val(), ("n", i), c))
    den_lines = []
    for j, c in enumerate(den_s):
        if not c.is_zero():
            den_lines.append((Fraction(j + 1), c.val(), ("d", j), c))
    return num_lines, den_lines


def segments_from_lines(one: FqElement, center: FieldElement, lines,
                        s_lo, s_hi) -> Tuple[List[RaySegment], List[Fraction]]:
    """Decompose the lower envelope of valuation lines into constant-support
    segments on [s_lo, s_hi] (either bound may be the +/-INF sentinel).

    Each line is (slope, intercept, family-key, unit-residue), with family
    keys ("n", i) for numerator and ("d", j) for denominator coefficients.
    Returns the classified segments and the sorted finite breakpoint values
    (support changes plus finite endpoints).
    """
    cands = set()
    for i in range(len(lines)):
        m1, b1 = lines[i][0], lines[i][1]
        for j in range(i + 1, len(lines)):
            m2, b2 = lines[j][0], lines[j][1]
            if m1 == m2:
                continue
            s = (b2 - b1) / (m1 - m2)
            if (s_lo is NEG_INF or s_lo < s) and (s_hi is INF or s < s_hi):
                cands.add(s)
    if s_lo is NEG_INF:
        anchor_vals = sorted(cands) + ([s_hi] if s_hi is not INF else [])
        eff_lo = (min(anchor_vals) - 1) if anchor_vals else Fraction(0)
    else:
        eff_lo = s_lo
    if s_hi is INF:
        eff_hi = (max(cands) + 1) if cands else eff_lo + 1
    else:
        eff_hi = s_hi
    assert eff_lo < eff_hi
    grid = sorted(cands | {eff_lo, eff_hi})

    def support(s):
        vals = [m * s + b for m, b, _, _ in lines]
        mn = min(vals)
        return frozenset(lines[i][2] for i, v in enumerate(vals) if v == mn)

    raw = []
    for lo, hi in zip(grid, grid[1:]):
        raw.append((lo, hi, support((lo + hi) / 2)))
    merged = []
    for lo, hi, sup in raw:
        if merged and merged[-1][2] == sup:
            merged[-1] = (merged[-1][0], hi, sup)
        else:
            merged.append((lo, hi, sup))
    if merged:
        if s_lo is NEG_INF:
            merged[0] = (NEG_INF, merged[0][1], merged[0][2])
        if s_hi is INF:
            merged[-1] = (merged[-1][0], INF, merged[-1][2])

    line_res = {key: res for _, _, key, res in lines}
    segments = []
    breaks = set()
    for lo, hi, sup in merged:
        if lo is not NEG_INF:
            breaks.add(lo)
        if hi is not INF:
            breaks.add(hi)
        nkeys = [k for k in sup if k[0] == "n"]
        dkeys = [k for k in sup if k[0] == "d"]
        assert len(nkeys) <= 1 and len(dkeys) <= 1, \
            "open interval support has distinct slopes within a family"
        if nkeys and dkeys:
            lam = line_res[nkeys[0]] / line_res[dkeys[0]]
            behavior = ID_INDIFFERENT if lam == one else MULT_INDIFFERENT
            segments.append(RaySegment(center, lo, hi, behavior, lam))
        else:
            segments.append(RaySegment(center, lo, hi, NOT_FIXED, None))
    return segments, sorted(breaks)


def ray_analysis(f: RationalMapK, a: FieldElement, s_lo: Fraction,
                 s_hi: Fraction) -> RayAnalysis:
    """Exact piecewise decomposition of the ray {zeta(a, s) : s in
    [s_lo, s_hi]} into constant-behavior intervals and breakpoints."""
    s_lo, s_hi = Fraction(s_lo), Fraction(s_hi)
    assert s_lo < s_hi
    num_lines, den_lines = _ray_lines(f, a)
    lines = [(m, b, key, c.unit_residue())
             for m, b, key, c in num_lines + den_lines]
    segments, breaks = segments_from_lines(f.ctx.residue_field.one, a, lines,
                                           s_lo, s_hi)
    breakpoints = []
    for s in breaks:
        try:
            _require_integral_s(f.ctx, s)
        except NeedsExtension as e:
            breakpoints.append(RayBreakpoint(s, None, str(e)))
            continue
        breakpoints.append(RayBreakpoint(s, reduce_at(f, TypeIIPoint(a, s))))
    return RayAnalysis(center=a, segments=segments, breakpoints=breakpoints)


# ---------------------------------------------------------------------------
# Multiplier reciprocity along an indifferent arc
# ---------------------------------------------------------------------------

def _direction_multiplier(local: LocalData, toward_zero: bool) -> FqElement:
    """Multiplier of the tangent-map fixed direction along the ray: the 0
    direction (deeper) or the infinity direction (shallower)."""
    if not local.is_fixed:
        raise ArcNotFixed(f"endpoint {local.point} is not fixed")
    if local.indifference_class == ID_INDIFFERENT:
        return local.point.center.ctx.residue_field.one
    F = local.reduced_map.field
    for t in local.directions:
        if toward_zero and not isinstance(t.location, Infinity) \
                and t.orbit_size == 1 and t.location == F.zero:
            return rf._project_to_base(t.multiplier, F) if t.field != F else t.multiplier
        if not toward_zero and isinstance(t.location, Infinity):
            return t.multiplier
    raise ArcNotFixed("facing direction along the arc is not fixed")


def multiplier_reciprocity_check(f: RationalMapK, x1: TypeIIPoint,
                                 x2: TypeIIPoint) -> bool:
    """Verify the two facing-direction multipliers at the endpoints of a
    fixed indifferent arc multiply to 1 in the residue field."""
    ctx = f.ctx
    one = ctx.residue_field.one
    if x1.contains(x2) or x2.contains(x1):
        outer, inner = (x1, x2) if x1.contains(x2) else (x2, x1)
        ra = ray_analysis(f, inner.center, outer.s, inner.s)
        _require_arc_indifferent(ra, outer.s, inner.s)
        lam_outer = _direction_multiplier(
            reduce_at(f, TypeIIPoint(inner.center, outer.s)), toward_zero=True)
        lam_inner = _direction_multiplier(reduce_at(f, inner), toward_zero=False)
        return lam_outer * lam_inner == one
    # path bends at the join point
    sj = (x1.center - x2.center).val()
    assert sj < min(x1.s, x2.s)
    ra1 = ray_analysis(f, x1.center, sj, x1.s)
    ra2 = ray_analysis(f, x2.center, sj, x2.s)
    _require_arc_indifferent(ra1, sj, x1.s)
    _require_arc_indifferent(ra2, sj, x2.s)
    lam1 = _direction_multiplier(reduce_at(f, x1), toward_zero=False)
    lam2 = _direction_multiplier(reduce_at(f, x2), toward_zero=False)
    return lam1 * lam2 == one


def _require_arc_indifferent(ra: RayAnalysis, s_lo, s_hi):
    for seg in ra.segments:
        if seg.behavior == NOT_FIXED:
            raise ArcNotFixed(f"ray interval ({seg.s_lo}, {seg.s_hi}) not fixed")
    for bp in ra.breakpoints:
        if bp.local is None:
            continue
        if s_lo < bp.s < s_hi:
            if not bp.local.is_fixed or bp.local.indifference_class == REPELLING:
                raise ArcNotFixed(f"interior point at s = {bp.s} not indifferent")


def _epoly_str(f):
    if not f:
        return "0"
    parts = []
    for i, c in enumerate(f):
        if c.is_zero():
            continue
        if i == 0:
            parts.append(f"{c}")
        elif i == 1:
            parts.append(f"({c})*z")
        else:
            parts.append(f"({c})*z^{i}")
    return " + ".join(parts)
