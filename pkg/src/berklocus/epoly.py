"""Polynomials over the working field: Newton polygons, disk-localized root
counting, Taylor shifts, and resultants.

Polynomials reuse the tuple-of-coefficients convention (low degree first,
trimmed); the generic ring helpers from the residue module work verbatim
because a PrimeContext exposes the same zero/one/from_int handles as a finite
field.  The Newton polygon turns coefficient valuations into exact root
valuations, which is how every disk question is answered without ever
realizing a root.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .errors import ZeroPolynomial
from .field import INF, FieldElement, PrimeContext
from .residue import (
    _trim,
    poly_add,
    poly_compose,
    poly_deg,
    poly_deriv,
    poly_divmod,
    poly_eval,
    poly_gcd,
    poly_mod,
    poly_monic,
    poly_mul,
    poly_neg,
    poly_scale,
    poly_sub,
)

__all__ = [
    "NewtonPolygon", "epoly", "newton_polygon", "count_roots_in_disk",
    "root_valuations", "poly_shift", "poly_scale_arg", "poly_reverse",
    "resultant", "value_char_poly",
]


def epoly(ctx: PrimeContext, entries) -> tuple:
    """Build a polynomial over the working field from rationals or elements."""
    out = []
    for c in entries:
        out.append(c if isinstance(c, FieldElement) else ctx.from_rational(c))
    return _trim(out)


# ---------------------------------------------------------------------------
# Newton polygon
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull data of a nonzero polynomial.

    `segments` lists (slope, horizontal length) with strictly increasing
    slopes; each segment accounts for `length` roots of valuation equal to
    the negated slope.  `vanishing_order` counts the roots at 0 itself.
    """

    segments: Tuple[Tuple[Fraction, int], ...]
    vanishing_order: int
    degree: int

    def total_length(self) -> int:
        return sum(length for _, length in self.segments)


def newton_polygon(ctx: PrimeContext, f) -> NewtonPolygon:
    if not f:
        raise ZeroPolynomial("Newton polygon of the zero polynomial")
    pts = [(i, c.val()) for i, c in enumerate(f) if not c.is_zero()]
    ord0 = pts[0][0]
    # lower convex hull, left to right (monotone chain)
    hull: List[Tuple[int, Fraction]] = []
    for x, y in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # keep the chain convex from below
            if (y2 - y1) * (x - x2) >= (y - y2) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append((x, y))
    segments = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slope = Fraction(y2 - y1, x2 - x1)
        segments.append((slope, x2 - x1))
    # merge collinear neighbors (the chain pop above already prevents them,
    # but keep the invariant explicit)
    merged: List[Tuple[Fraction, int]] = []
    for slope, length in segments:
        if merged and merged[-1][0] == slope:
            merged[-1] = (slope, merged[-1][1] + length)
        else:
            merged.append((slope, length))
    assert all(a[0] < b[0] for a, b in zip(merged, merged[1:]))
    return NewtonPolygon(segments=tuple(merged), vanishing_order=ord0,
                         degree=poly_deg(f))


def root_valuations(ctx: PrimeContext, f) -> List[Fraction]:
    """Valuations of all roots in an algebraic closure, with multiplicity;
    roots at 0 are reported with the INF sentinel."""
    np_ = newton_polygon(ctx, f)
    out = [INF] * np_.vanishing_order
    for slope, length in np_.segments:
        out.extend([-slope] * length)
    return out


def poly_shift(ctx: PrimeContext, f, c: FieldElement):
    """Taylor shift: the polynomial z -> f(z + c)."""
    return poly_compose(ctx, f, (c, ctx.one))


def poly_scale_arg(ctx: PrimeContext, f, u: FieldElement):
    """The polynomial z -> f(u*z)."""
    out = []
    power = ctx.one
    for coeff in f:
        out.append(coeff * power)
        power = power * u
    return _trim(out)


def poly_reverse(ctx: PrimeContext, f, degree: int):
    """Coefficient reversal to the stated degree: z^degree * f(1/z)."""
    assert degree >= poly_deg(f)
    padded = list(f) + [ctx.zero] * (degree - poly_deg(f))
    return _trim(list(reversed(padded)))


def count_roots_in_disk(ctx: PrimeContext, f, center: FieldElement,
                        s: Fraction, mode: str = "open") -> int:
    """Number of roots x (with multiplicity, in an algebraic closure) with
    val(x - center) > s (open) or >= s (closed)."""
    if not f:
        raise ZeroPolynomial("root counting needs a nonzero polynomial")
    assert mode in ("open", "closed")
    shifted = poly_shift(ctx, f, center) if not center.is_zero() else f
    np_ = newton_polygon(ctx, shifted)
    count = np_.vanishing_order  # the center itself, val = INF
    for slope, length in np_.segments:
        v = -slope
        if v > s or (mode == "closed" and v == s):
            count += length
    return count


# ---------------------------------------------------------------------------
# Resultants
# ---------------------------------------------------------------------------

def resultant(ctx: PrimeContext, f, g) -> FieldElement:
    """Res(f, g) = lc(f)^deg(g) * product of g over the roots of f."""
    if not f or not g:
        return ctx.zero
    res = ctx.one
    sign = ctx.one
    while poly_deg(g) > 0:
        r = poly_mod(ctx, f, g)
        if not r:
            return ctx.zero
        df, dg, dr = poly_deg(f), poly_deg(g), poly_deg(r)
        res = res * g[-1] ** (df - dr)
        if (df * dg) % 2 == 1:
            sign = -sign
        f, g = g, r
    return sign * res * g[0] ** poly_deg(f)


def value_char_poly(ctx: PrimeContext, q, num, den):
    """For q monic with roots r_i (an algebraic closure), the monic-up-to-
    constant polynomial whose roots are num(r_i)/den(r_i):

        C(w) = Res_z(q(z), num(z) - w*den(z)) = prod_i (num(r_i) - w*den(r_i)).

    Computed by interpolation at deg(q) + 1 rational sample values of w.
    Requires den nonvanishing at every root of q (checked via Res(q, den)).
    """
    assert q and q[-1] == ctx.one, "q must be monic"
    m = poly_deg(q)
    if resultant(ctx, q, den).is_zero():
        raise ZeroPolynomial("denominator vanishes at a root of q")
    samples = []
    for t in range(m + 1):
        w = ctx.from_rational(t)
        h = poly_sub(ctx, num, poly_scale(ctx, den, w))
        samples.append((w, resultant(ctx, q, h) if h else ctx.zero))
    return _lagrange(ctx, samples)


def _lagrange(ctx: PrimeContext, samples):
    """Exact Lagrange interpolation over the working field."""
    result = ()
    for i, (xi, yi) in enumerate(samples):
        basis = (ctx.one,)
        denom = ctx.one
        for j, (xj, _) in enumerate(samples):
            if i == j:
                continue
            basis = poly_mul(ctx, basis, (-xj, ctx.one))
            denom = denom * (xi - xj)
        term = poly_scale(ctx, basis, yi / denom)
        result = poly_add(ctx, result, term)
    return result
