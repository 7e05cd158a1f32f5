"""Local analysis of maps: normalization, conjugation, reduction, tropical
ray decomposition, and the direction-level identification."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from berklocus.berkmap import (
    ADD_INDIFFERENT,
    ID_INDIFFERENT,
    MULT_INDIFFERENT,
    NOT_FIXED,
    REPELLING,
    RationalMapK,
    TypeIIPoint,
    classical_count_in_direction,
    embed_map,
    gauss_point,
    identification_check,
    multiplier_reciprocity_check,
    normalize,
    ray_analysis,
    reduce_at,
    surplus,
)
from berklocus.errors import ConstantMap, NeedsExtension, ZeroDenominator
from berklocus.field import PrimeContext
from berklocus.residue import INF_POINT, Infinity

from conftest import mk


def test_normalization_invariants():
    f = mk(5, [0, 0, 25], [5])
    vals = [c.val() for c in f.num + f.den if not c.is_zero()]
    assert min(vals) == 0
    assert f.degree == 2


def test_gcd_cancellation():
    # (z^2 - 1) / (z - 1) is the map z + 1
    f = mk(7, [-1, 0, 1], [-1, 1])
    assert f.degree == 1
    assert f == mk(7, [1, 1], [1])


def test_degenerate_maps_rejected():
    ctx = PrimeContext(5)
    with pytest.raises(ZeroDenominator):
        normalize(ctx, [1, 1], [0])
    with pytest.raises(ConstantMap):
        normalize(ctx, [3], [1])
    with pytest.raises(ConstantMap):
        normalize(ctx, [0, 2], [0, 1])  # cancels to the constant 2


def test_conjugation_group_identities():
    f = mk(5, [1, 2, 1], [3, 0, 1])
    ctx = f.ctx
    u = ctx.from_rational(Fraction(5))
    a = ctx.from_rational(Fraction(2, 3))
    g = f.conjugate_affine(u, a)
    back = g.conjugate_affine(u.inverse(), -(a / u))
    assert back == f
    assert f.flip().flip() == f


def test_eval_and_fixed_point_polynomial():
    f = mk(5, [0, 0, 1], [1])
    ctx = f.ctx
    assert f.eval_at(ctx.from_rational(3)) == ctx.from_rational(9)
    P = f.fixed_point_polynomial()
    # roots 0 and 1
    from berklocus.residue import poly_eval
    assert poly_eval(ctx, P, ctx.zero).is_zero()
    assert poly_eval(ctx, P, ctx.one).is_zero()
    assert f.infinity_multiplicity() == 1


def test_reduce_at_gauss_power_map():
    f = mk(5, [0, 0, 1], [1])
    local = reduce_at(f, gauss_point(f.ctx))
    assert local.is_fixed
    assert local.indifference_class == REPELLING
    assert local.local_degree == 2
    assert local.n_cf == 2
    assert local.surplus_total() == 0


def test_reduce_at_unfixed_point():
    f = mk(5, [0, 0, 1], [1])
    ctx = f.ctx
    # zeta(2, 1): f moves the small disk around 2 to around 4
    local = reduce_at(f, TypeIIPoint(ctx.from_rational(2), Fraction(1)))
    assert not local.is_fixed
    assert local.indifference_class == NOT_FIXED


def test_reduce_surplus_balance_at_gauss():
    # surplus total = degree - local degree at the Gauss point
    rng = random.Random(7)
    for _ in range(20):
        p = rng.choice([3, 5, 7])
        d = rng.randint(2, 4)
        num = [rng.randint(-p * p, p * p) for _ in range(d + 1)]
        den = [rng.randint(-p * p, p * p) for _ in range(d + 1)]
        try:
            f = mk(p, num, den)
        except (ConstantMap, ZeroDenominator):
            continue
        local = reduce_at(f, gauss_point(f.ctx))
        if local.local_degree is None:
            continue
        assert local.surplus_total() == f.degree - local.local_degree


def test_indifference_classes_along_scaling_map():
    f = mk(5, [0, 2], [1])  # 2z: whole segment [0, oo] multiplicatively fixed
    local = reduce_at(f, gauss_point(f.ctx))
    assert local.indifference_class == MULT_INDIFFERENT
    f6 = mk(5, [0, 6], [1])  # 6z: identity reduction on the segment
    assert reduce_at(f6, gauss_point(f6.ctx)).indifference_class == \
        ID_INDIFFERENT
    fadd = mk(5, [1, 1], [1])  # z + 1: additively indifferent at the Gauss pt
    assert reduce_at(fadd, gauss_point(fadd.ctx)).indifference_class == \
        ADD_INDIFFERENT


def test_fractional_radius_needs_extension():
    f = mk(5, [0, 0, 1], [1])
    with pytest.raises(NeedsExtension) as exc:
        reduce_at(f, TypeIIPoint(f.ctx.zero, Fraction(1, 2)))
    assert exc.value.n == 2
    # the same point is representable after a ramified extension
    ctx2 = f.ctx.extend(n=2)
    f2 = embed_map(f, ctx2)
    local = reduce_at(f2, TypeIIPoint(ctx2.zero, Fraction(1, 2)))
    assert not local.is_fixed


def test_ray_analysis_segments_power_map():
    f = mk(5, [0, 0, 1], [1])
    ra = ray_analysis(f, f.ctx.zero, Fraction(-3), Fraction(3))
    # along the 0-ray of z^2: fixed only at s = 0 (the Gauss point)
    assert ra.behavior_at(Fraction(0)) == REPELLING
    assert ra.behavior_at(Fraction(1)) == NOT_FIXED
    assert ra.behavior_at(Fraction(-1)) == NOT_FIXED
    # sample five interior points of each constant-behavior interval
    for seg in ra.segments:
        lo = seg.s_lo if seg.s_lo > Fraction(-3) else Fraction(-3)
        hi = seg.s_hi if seg.s_hi < Fraction(3) else Fraction(3)
        for i in range(1, 6):
            s = lo + (hi - lo) * Fraction(i, 6)
            if (s * f.ctx.n).denominator != 1:
                continue
            local = reduce_at(f, TypeIIPoint(f.ctx.zero, s))
            expected_fixed = seg.behavior != NOT_FIXED
            assert local.is_fixed == expected_fixed


def test_ray_analysis_scaling_map_everywhere_fixed():
    f = mk(5, [0, 2], [1])
    ra = ray_analysis(f, f.ctx.zero, Fraction(-2), Fraction(2))
    for seg in ra.segments:
        assert seg.behavior == MULT_INDIFFERENT
    for bp in ra.breakpoints:
        if bp.local is not None:
            assert bp.local.is_fixed


def test_multiplier_reciprocity_on_arc():
    f = mk(5, [0, 2], [1])
    ctx = f.ctx
    x1 = TypeIIPoint(ctx.zero, Fraction(-1))
    x2 = TypeIIPoint(ctx.zero, Fraction(2))
    assert multiplier_reciprocity_check(f, x1, x2)


def test_classical_count_in_direction_power_map():
    f = mk(5, [0, 0, 1], [1])
    gauss = gauss_point(f.ctx)
    F = f.ctx.residue_field
    # direction of 1 holds the fixed point 1; directions 0 and oo hold 0, oo
    assert classical_count_in_direction(f, gauss, F.one) == 1
    assert classical_count_in_direction(f, gauss, F.zero) == 1
    assert classical_count_in_direction(f, gauss, INF_POINT) == 1
    assert classical_count_in_direction(f, gauss, F.from_int(2)) == 0


def test_identification_check_gauss_directions():
    f = mk(5, [0, 0, 1], [1])
    gauss = gauss_point(f.ctx)
    F = f.ctx.residue_field
    for v in (F.zero, F.one, F.from_int(2), F.from_int(3), INF_POINT):
        assert identification_check(f, gauss, v)


def test_identification_check_random_maps():
    rng = random.Random(99)
    done = 0
    while done < 15:
        p = rng.choice([3, 5])
        d = rng.randint(2, 3)
        num = [rng.randint(-6, 6) for _ in range(d + 1)]
        den = [rng.randint(-6, 6) for _ in range(d)] + [0]
        try:
            f = mk(p, num, den)
        except (ConstantMap, ZeroDenominator):
            continue
        gauss = gauss_point(f.ctx)
        local = reduce_at(f, gauss)
        if not local.is_fixed or local.indifference_class == ID_INDIFFERENT:
            continue
        F = f.ctx.residue_field
        for v in [F.from_int(i) for i in range(p)] + [INF_POINT]:
            assert identification_check(f, gauss, v)
        done += 1


def test_conjugation_coherence_of_fixedness():
    # fixedness of a point is invariant under conjugating map and point
    rng = random.Random(5)
    f = mk(5, [1, 0, 2], [0, 1])
    ctx = f.ctx
    for _ in range(10):
        a = ctx.from_rational(Fraction(rng.randint(-9, 9),
                                       rng.choice([1, 1, 5])))
        pt = TypeIIPoint(a, Fraction(rng.randint(-2, 2)))
        c = ctx.from_rational(rng.randint(-4, 4))
        g = f.conjugate_affine(ctx.one, c)
        moved = TypeIIPoint(pt.center - c, pt.s)
        assert reduce_at(f, pt).is_fixed == reduce_at(g, moved).is_fixed


def test_embed_map_preserves_reduction():
    f = mk(3, [0, 0, 0, 1], [1])
    big = f.ctx.extend(n=2, k=2)
    f2 = embed_map(f, big)
    l1 = reduce_at(f, gauss_point(f.ctx))
    l2 = reduce_at(f2, gauss_point(big))
    assert l1.is_fixed == l2.is_fixed
    assert l1.local_degree == l2.local_degree
    assert l1.indifference_class == l2.indifference_class
