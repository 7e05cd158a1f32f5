"""Global structure: classical fixed points, skeleton, components, weights,
and the structure checks, on the small fixtures."""

from fractions import Fraction

import pytest

from berklocus import fixlocus as fx
from berklocus.berkmap import TypeIIPoint, gauss_point
from berklocus.errors import (
    ClassicalComponent,
    IdentityMap,
    NoTotallyRamifiedFixedPoint,
    NotHyperbolic,
    NotIndifferent,
    PreconditionViolated,
)
from berklocus.field import INF, PrimeContext
from berklocus.oracle import fixture

from conftest import mk


def test_classical_fixed_points_multiplicities_sum():
    for name in ("power-2", "power-3", "quadratic-repelling",
                 "quadratic-doubled"):
        f = fixture(name).build()
        pts = fx.classical_fixed_points(f)
        assert sum(cp.multiplicity for cp in pts) == f.degree + 1
    # z^3 over Q_3 needs the quadratic residue extension for its direction
    # data; analyze() performs the retry
    a = fx.analyze(fixture("wild-p3-d3").build())
    assert sum(cp.multiplicity for cp in a.classical_points) == 4


def test_classical_fixed_points_identity_raises():
    f = mk(5, [0, 1], [1])
    with pytest.raises(IdentityMap):
        fx.classical_fixed_points(f)


def test_classical_classification_quadratic(expected):
    f = fixture("quadratic-repelling").build()
    pts = fx.classical_fixed_points(f)
    by_val = {}
    for cp in pts:
        key = "inf" if cp.is_infinity() else repr(cp.value.center)
        by_val[key] = cp
    # derived multiplier table: 0 and oo indifferent, 4/3 repelling
    assert by_val["0"].klass == fx.INDIFFERENT
    assert by_val["inf"].klass == fx.INDIFFERENT
    assert by_val["4/3"].klass == fx.REPELLING_CLASS
    assert by_val["4/3"].multiplier_valuation == Fraction(-2)


def test_analysis_power2_structure():
    f = fixture("power-2").build()
    a = fx.analyze(f)
    assert a.weight_total == 1
    assert a.complete_rigorous
    kinds = sorted(c.kind for c in a.components)
    assert kinds == [fx.KIND_CLASSICAL, fx.KIND_CLASSICAL, fx.KIND_PEAKED]
    peaked = next(c for c in a.components if c.kind == fx.KIND_PEAKED)
    assert peaked.classical_multiplicity == 1
    assert peaked.alpha == -1
    (pt, deg, ncf), = peaked.repelling_vertices
    assert pt.same_point(gauss_point(f.ctx)) and deg == 2 and ncf == 2


def test_analysis_wild_hyperbolic_singleton():
    f = fixture("wild-p3-d3").build()
    a = fx.analyze(f)
    assert a.weight_total == 2
    hyp = [c for c in a.components if c.kind == fx.KIND_HYPERBOLIC]
    assert len(hyp) == 1
    assert hyp[0].classical_multiplicity == 0
    assert fx.hyperbolic_checks(hyp[0])
    assert fx.theorem_a_count(hyp[0]) == 0


def test_analysis_quadratic_indifferent_component():
    f = fixture("quadratic-repelling").build()
    a = fx.analyze(f)
    ind = [c for c in a.components if c.kind == fx.KIND_INDIFFERENT]
    assert len(ind) == 1
    assert fx.indifferent_checks(ind[0])
    assert ind[0].classical_multiplicity == 2


def test_component_kind_errors():
    f = fixture("power-2").build()
    a = fx.analyze(f)
    classical = next(c for c in a.components if c.kind == fx.KIND_CLASSICAL)
    peaked = next(c for c in a.components if c.kind == fx.KIND_PEAKED)
    with pytest.raises(ClassicalComponent):
        fx.theorem_a_count(classical)
    with pytest.raises(NotHyperbolic):
        fx.hyperbolic_checks(peaked)
    with pytest.raises(NotIndifferent):
        fx.indifferent_checks(peaked)


def test_connectedness_criterion_matches_component_count():
    # z^2 over Q_5 has three components, and the criterion agrees
    assert fx.connectedness_check(fixture("power-2").build()) is False
    # the doubled quadratic branch is connected
    assert fx.connectedness_check(fixture("quadratic-doubled").build()) is True


def test_weight_formula_on_segment_fixture():
    f = fixture("segment-p3-d4").build()
    assert fx.verify_weight_formula(f)
    crucial, total = fx.crucial_weights(f)
    assert total == 3
    assert sum(cp.weight for cp in crucial) == total
    assert all(cp.weight > 0 for cp in crucial)


def test_segment_fixture_two_repelling_vertices():
    f = fixture("segment-p3-d4").build()
    a = fx.analyze(f)
    hyp = [c for c in a.components if c.kind == fx.KIND_HYPERBOLIC]
    assert len(hyp) == 1
    assert len(hyp[0].repelling_vertices) == 2
    assert fx.hyperbolic_checks(hyp[0])


def test_theorem_b_small_degree_large_p():
    f = mk(11, [0, 0, 1], [1])
    assert fx.theorem_b_check(f)
    with pytest.raises(PreconditionViolated):
        fx.theorem_b_check(mk(3, [0, 0, 0, 1], [1]))


def test_totally_ramified_corollary():
    # z^2 is a polynomial, oo is totally ramified: no indifferent components
    assert fx.totally_ramified_corollary_check(fixture("power-2").build())
    f = fixture("quadratic-indifferent").build()
    with pytest.raises(NoTotallyRamifiedFixedPoint):
        fx.totally_ramified_corollary_check(f)


def test_alpha_sum_check_fixtures():
    for name in ("power-2", "power-3", "wild-p3-d3", "quadratic-repelling",
                 "segment-p3-d4"):
        assert fx.alpha_sum_check(fixture(name).build()), name


def test_gamma_fix_contains_classical_points():
    f = fixture("power-3").build()
    skel = fx.gamma_fix(f)
    assert sum(cp.multiplicity for cp in skel.leaves) == f.degree + 1
    assert any(cp.is_infinity() for cp in skel.leaves)


def test_closest_point_projection():
    f = fixture("power-2").build()
    ctx = f.ctx
    skel = fx.gamma_fix(f)
    # a point hanging off the skeleton beyond z = 1 projects onto the 1-ray
    proj = fx.closest_point(skel, TypeIIPoint(ctx.from_rational(6), Fraction(3)))
    assert proj.same_point(TypeIIPoint(ctx.from_rational(1), Fraction(1)))
    proj_deep = fx.closest_point(skel,
                                 TypeIIPoint(ctx.from_rational(26), Fraction(3)))
    assert proj_deep.same_point(TypeIIPoint(ctx.from_rational(1), Fraction(2)))
    # a faraway center projects to the Gauss point
    proj2 = fx.closest_point(skel, TypeIIPoint(ctx.from_rational(3), Fraction(4)))
    assert proj2.same_point(gauss_point(ctx))


def test_analysis_retries_with_extension():
    # fixed points at valuation 1/2 force a ramified extension during analysis
    f = mk(5, [-5, 0, 2], [0, 1])  # fixed-point polynomial z^2 - 5
    a = fx.analyze(f)
    assert a.map.ctx.n >= 2
    assert a.weight_total == f.degree - 1


def test_explore_components_matches_analyze():
    f = fixture("power-2").build()
    comps = fx.explore_components(f)
    a = fx.analyze(f)
    assert len(comps) == len(a.components)
