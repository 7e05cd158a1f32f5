"""Classical fixed points: localization and arbitrary-precision realization.

Roots of the fixed-point polynomial need not lie in the working field itself
(they live in its completion, or in finite extensions of it).  Each root is
therefore carried as a `RootHandle`: a squarefree polynomial it satisfies plus
a center approximating it to a known exact valuation precision, refinable on
demand by digit steps (reduction factoring) or Newton iteration.  Every
question the global analysis asks of a root -- distance to another root, the
valuation or residue of a polynomial evaluated at it, the direction it
occupies at a disk point -- reduces to a finite refinement followed by an
exact computation, with a rigorous stopping criterion in each case.

Rational-coefficient polynomials are pre-split over the rationals (sympy) so
rational roots come out exact; everything else stays a handle.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import List, Optional, Union

from . import residue as rf
from .epoly import count_roots_in_disk, epoly, newton_polygon, poly_shift, \
    poly_scale_arg
from .errors import NeedsExtension
from .field import INF, FieldElement, PrimeContext
from .residue import (
    INF_POINT,
    Infinity,
    _trim,
    poly_deg,
    poly_deriv,
    poly_divmod,
    poly_eval,
    poly_gcd,
    poly_monic,
)

_MAX_REFINE = 200  # hard stop against runaway refinement loops


class RootHandle:
    """One root of a squarefree polynomial over the working field, known
    through a center with val(root - center) = prec exactly (INF when the
    center is the root itself)."""

    def __init__(self, ctx: PrimeContext, g, center: FieldElement,
                 prec: Fraction, multiplicity: int = 1):
        self.ctx = ctx
        self.g = g
        self.center = center
        self.prec = prec
        self.multiplicity = multiplicity
        self._dg = poly_deriv(ctx, g)

    @property
    def is_exact(self) -> bool:
        return self.prec is INF

    def __repr__(self):
        if self.is_exact:
            return f"root({self.center!r})"
        return f"root(~{self.center!r}, prec={self.prec})"

    # -- refinement -------------------------------------------------------

    def refine(self):
        """One improvement step; raises NeedsExtension when the next digit
        leaves the working field's residue/ramification class."""
        if self.is_exact:
            return
        ctx = self.ctx
        gc = poly_eval(ctx, self.g, self.center)
        if gc.is_zero():
            self.prec = INF
            return
        dgc = poly_eval(ctx, self._dg, self.center)
        if not dgc.is_zero() and gc.val() > 2 * dgc.val():
            # Newton step, quadratic convergence
            self.center = self.center - gc / dgc
            self.prec = self._distance_from(self.center, self.prec)
            self._compress()
            return
        self._digit_step()

    def _compress(self):
        """Drop digits of the center beyond the known precision; any
        representative agreeing with the root to depth prec is as good, and
        the small one keeps later exact arithmetic affordable."""
        if self.prec is not INF:
            self.center = self.center.truncate(self.prec + 1)

    def _digit_step(self):
        ctx = self.ctx
        v = self.prec
        if (v * ctx.n).denominator != 1:
            import math
            need = ctx.n * v.denominator // math.gcd(ctx.n, v.denominator)
            raise NeedsExtension(n=need, detail=f"root at ramified distance {v}")
        u = ctx.pi_pow(int(v * ctx.n))
        h = poly_scale_arg(ctx, poly_shift(ctx, self.g, self.center), u)
        shift = min(c.val() for c in h if not c.is_zero())
        scale = ctx.pi_pow(-int(shift * ctx.n))
        hred = _trim([(c * scale).residue() for c in h])
        F = ctx.residue_field
        digits = [b for b in _linear_roots(F, hred) if not b.is_zero()]
        if not digits:
            raise NeedsExtension(k=ctx.k * _min_nonlinear_degree(F, hred),
                                 detail="root digit in a residue extension")
        assert len(digits) == 1, "isolated root must have a unique digit"
        self.center = self.center + u * ctx.lift(digits[0])
        self.prec = self._distance_from(self.center, v)
        self._compress()

    def _distance_from(self, c: FieldElement, above: Fraction) -> Fraction:
        """val(root - c), read off the Newton polygon: the unique root
        valuation of g(c + z) strictly above the separation bound."""
        ctx = self.ctx
        shifted = poly_shift(ctx, self.g, c)
        if not shifted or shifted[0].is_zero():
            return INF
        np_ = newton_polygon(ctx, shifted)
        vals = [-slope for slope, length in np_.segments for _ in range(length)]
        above_vals = [v for v in vals if v > above]
        assert len(above_vals) == 1, \
            "refinement lost the isolation of the root"
        return above_vals[0]

    def ensure(self, target: Fraction):
        """Refine until prec > target."""
        for _ in range(_MAX_REFINE):
            if self.prec is INF or self.prec > target:
                return
            self.refine()
        raise AssertionError("refinement did not reach the requested precision")

    # -- exact queries ----------------------------------------------------

    def distance_to(self, other: "RootHandle") -> Fraction:
        """val(self.root - other.root); the two handles must hold distinct
        roots."""
        for _ in range(_MAX_REFINE):
            d = _val_diff(self.center, other.center)
            lim = min(self.prec, other.prec)
            if d < lim:
                return d
            if self.prec <= other.prec and not self.is_exact:
                self.refine()
            elif not other.is_exact:
                other.refine()
            else:
                self.refine()
        raise AssertionError("distance computation did not stabilize")

    def distance_to_point(self, c: FieldElement) -> Fraction:
        """val(root - c) for a working-field element c != root."""
        for _ in range(_MAX_REFINE):
            d = _val_diff(self.center, c)
            if d < self.prec:
                return d
            if self.is_exact:
                return d  # c == center would have given INF; handled by caller
            self.refine()
        raise AssertionError("distance to point did not stabilize")

    def val_at(self, q) -> Fraction:
        """val(q(root)), exact; q must not vanish at the root."""
        ctx = self.ctx
        if not q:
            return INF
        if self.is_exact:
            v = poly_eval(ctx, q, self.center)
            return INF if v.is_zero() else v.val()
        for _ in range(_MAX_REFINE):
            qc = poly_eval(ctx, q, self.center)
            bound = self._perturbation_bound(q)
            if not qc.is_zero() and qc.val() < bound:
                return qc.val()
            self.refine()
        raise AssertionError(
            "valuation at root did not stabilize (does q vanish there?)")

    def unit_residue_at(self, q) -> rf.FqElement:
        """Residue of q(root) / pi^(n * val), exact."""
        ctx = self.ctx
        if self.is_exact:
            return poly_eval(ctx, q, self.center).unit_residue()
        for _ in range(_MAX_REFINE):
            qc = poly_eval(ctx, q, self.center)
            bound = self._perturbation_bound(q)
            if not qc.is_zero() and qc.val() < bound:
                return qc.unit_residue()
            self.refine()
        raise AssertionError("residue at root did not stabilize")

    def _perturbation_bound(self, q) -> Fraction:
        """Lower bound on val(q(root) - q(center)): min over i >= 1 of
        val(q_i~) + i*prec for the Taylor coefficients q~ of q at center."""
        ctx = self.ctx
        shifted = poly_shift(ctx, q, self.center)
        best = INF
        for i, c in enumerate(shifted):
            if i == 0 or c.is_zero():
                continue
            cand = c.val() + i * self.prec
            if cand < best:
                best = cand
        return best

    def direction_at(self, x) -> Union[rf.FqElement, Infinity]:
        """The tangent direction at the disk point x = zeta(c, s) that
        contains this root: a residue-field element (residue of
        (root - c) / pi^(n s)) or the infinity direction."""
        ctx = self.ctx
        c, s = x.center, Fraction(x.s)
        diff_poly = epoly(ctx, [-c, 1])  # z - c, evaluated at the root
        d = self.distance_to_point(c) if not self._is_point(c) else INF
        if d is not INF and d < s:
            return INF_POINT
        if d is INF:
            return ctx.residue_field.zero
        if d > s:
            return ctx.residue_field.zero
        # d == s: genuine nonzero residue digit
        num = self.unit_residue_at(diff_poly)
        return num

    def _is_point(self, c: FieldElement) -> bool:
        return self.is_exact and self.center == c


def _val_diff(a: FieldElement, b: FieldElement) -> Fraction:
    d = a - b
    return INF if d.is_zero() else d.val()


def _linear_roots(F, h) -> list:
    """Roots of h in F itself (not extensions), without multiplicity."""
    out = []
    for q, _ in rf.factor(F, h) if poly_deg(h) > 0 else []:
        if poly_deg(q) == 1:
            out.append(-q[0])
    return out


def _min_nonlinear_degree(F, h) -> int:
    degs = [poly_deg(q) for q, _ in rf.factor(F, h) if poly_deg(q) > 1]
    return min(degs) if degs else 1


# ---------------------------------------------------------------------------
# Isolation
# ---------------------------------------------------------------------------

NEG_INF = -INF


@dataclass
class ClusterStub:
    """An unsplit cluster of conjugate roots: everything inside the closed
    disk of the stated radius around the center.  Produced instead of
    individual handles when splitting the cluster would need a field
    extension beyond the configured budget -- which can be unavoidable, since
    conjugate roots may generate a wildly ramified extension not contained in
    the completion of any pure uniformizer tower."""

    ctx: PrimeContext
    g: tuple
    center: FieldElement
    radius: Fraction
    count: int
    multiplicity: int

    @property
    def is_exact(self) -> bool:
        return False

    def __repr__(self):
        return f"cluster(~{self.center!r}, radius={self.radius}, " \
               f"count={self.count})"


def isolate_roots(ctx: PrimeContext, g, multiplicity: int = 1,
                  budget=None) -> list:
    """Handles for every root of a squarefree polynomial g, each isolated in
    its own disk.  Rational-coefficient inputs are pre-split over the
    rationals so rational roots come out exact.  With budget = (n_max,
    k_max), clusters whose separation needs a larger extension are returned
    as ClusterStub entries instead of raising."""
    handles = []
    for factor_poly in _rational_split(ctx, g):
        if poly_deg(factor_poly) == 1:
            root = -factor_poly[0] / factor_poly[1]
            handles.append(RootHandle(ctx, factor_poly, root, INF, multiplicity))
        else:
            handles.extend(_isolate_cluster(ctx, factor_poly, ctx.zero,
                                            NEG_INF, poly_deg(factor_poly),
                                            multiplicity, budget))
    return handles


def _rational_split(ctx: PrimeContext, g) -> list:
    """Split g into factors over the rationals when its coefficients are all
    rational; otherwise return it whole."""
    coords = []
    for c in g:
        flat = [q for row in c.coeffs for q in row]
        if any(q != 0 for q in flat[1:]):
            return [g]
        coords.append(c.coeffs[0][0])
    import sympy
    z = sympy.Symbol("z")
    expr = sum(sympy.Rational(q) * z ** i for i, q in enumerate(coords))
    _, factors = sympy.factor_list(sympy.Poly(expr, z))
    out = []
    for fac, mult in factors:
        assert mult == 1, "squarefree input must split squarefree"
        coeffs = [Fraction(str(c)) for c in reversed(fac.all_coeffs())]
        out.append(epoly(ctx, coeffs))
    assert sum(poly_deg(f) for f in out) == poly_deg(g)
    return out


def _isolate_cluster(ctx: PrimeContext, g, c: FieldElement, floor: Fraction,
                     expected: int, multiplicity: int,
                     budget=None) -> list:
    """Isolate the roots r of g with val(r - c) > floor; `expected` counts
    them.  When a split needs an extension beyond the budget, everything not
    yet placed is returned as a single ClusterStub (the stub's closed disk
    swallows the deeper levels and the exact center, so anchors never
    overlap)."""
    import math
    handles: list = []
    shifted = poly_shift(ctx, g, c)
    exact = None
    if shifted and shifted[0].is_zero():
        # c itself is a (simple) root
        exact = RootHandle(ctx, g, c, INF, multiplicity)
    np_ = newton_polygon(ctx, shifted)
    levels = {}
    for slope, length in np_.segments:
        v = -slope
        if v > floor:
            levels[v] = levels.get(v, 0) + length
    assert sum(levels.values()) + (1 if exact else 0) == expected
    placed_total = 0
    for v, count in sorted(levels.items()):
        if count == 1 and len(levels) == 1 and exact is None:
            # already isolated at this level
            return [RootHandle(ctx, g, c, v, multiplicity)]
        if (v * ctx.n).denominator != 1:
            need = ctx.n * v.denominator // math.gcd(ctx.n, v.denominator)
            # a separation radius with p in its denominator means the
            # conjugates generate a wildly ramified extension; a pure
            # uniformizer tower cannot split that cluster, so extending
            # the tower would only burn time
            wild = v.denominator % ctx.p == 0
            if budget is not None and (wild or need > budget[0]):
                handles.append(ClusterStub(ctx, g, c, v,
                                           expected - placed_total,
                                           multiplicity))
                return handles
            raise NeedsExtension(n=need,
                                 detail=f"root cluster at ramified radius {v}")
        u = ctx.pi_pow(int(v * ctx.n))
        h = poly_scale_arg(ctx, poly_shift(ctx, g, c), u)
        shift_v = min(cc.val() for cc in h if not cc.is_zero())
        scale = ctx.pi_pow(-int(shift_v * ctx.n))
        hred = _trim([(cc * scale).residue() for cc in h])
        F = ctx.residue_field
        placed = 0
        for q, mult_dir in rf.factor(F, hred):
            if poly_deg(q) == 1 and (-q[0]).is_zero():
                continue  # deeper roots, handled at higher v or the center
            if poly_deg(q) > 1:
                need_k = ctx.k * poly_deg(q)
                if budget is not None and (ctx.k != 1 or need_k > budget[1]):
                    handles.append(ClusterStub(
                        ctx, g, c, v, expected - placed_total - placed,
                        multiplicity))
                    return handles
                raise NeedsExtension(k=need_k,
                                     detail="root direction in a residue extension")
            b = -q[0]
            c2 = c + u * ctx.lift(b)
            sub = count_roots_in_disk(ctx, g, c2, v, "open")
            assert sub == mult_dir
            placed += sub
            if sub == 1:
                handles.append(RootHandle(
                    ctx, g, c2,
                    _initial_prec(ctx, g, c2, v), multiplicity))
            else:
                handles.extend(_isolate_cluster(ctx, g, c2, v, sub,
                                                multiplicity, budget))
        assert placed == count
        placed_total += placed
    if exact is not None:
        handles.append(exact)
    return handles


def _initial_prec(ctx, g, c, floor) -> Fraction:
    shifted = poly_shift(ctx, g, c)
    if not shifted or shifted[0].is_zero():
        return INF
    np_ = newton_polygon(ctx, shifted)
    vals = [-slope for slope, length in np_.segments for _ in range(length)]
    above = [v for v in vals if v > floor]
    assert len(above) == 1
    return above[0]
