"""Newton polygons, disk root counting, and resultants over the working
field."""

from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from berklocus.epoly import (
    count_roots_in_disk,
    epoly,
    newton_polygon,
    poly_reverse,
    poly_scale_arg,
    poly_shift,
    resultant,
    root_valuations,
    value_char_poly,
)
from berklocus.field import INF, PrimeContext
from berklocus.residue import poly_eval, poly_mul, poly_sub


def _prod_linear(ctx, roots):
    f = epoly(ctx, [1])
    for r in roots:
        f = poly_mul(ctx, f, epoly(ctx, [-Fraction(r), 1]))
    return f


def test_newton_polygon_known():
    ctx = PrimeContext(5)
    # (z - 5)(z - 1/5) = z^2 - (26/5) z + 1: slopes -1 and 1
    f = _prod_linear(ctx, [5, Fraction(1, 5)])
    np_ = newton_polygon(ctx, f)
    assert np_.segments == ((Fraction(-1), 1), (Fraction(1), 1))
    assert np_.vanishing_order == 0
    assert sorted(root_valuations(ctx, f)) == [Fraction(-1), Fraction(1)]


def test_root_valuations_with_zero_root():
    ctx = PrimeContext(3)
    f = epoly(ctx, [0, 0, 9, 1])  # z^2 (z + 9)
    vals = root_valuations(ctx, f)
    assert vals.count(INF) == 2
    assert Fraction(2) in vals


@given(st.lists(st.sampled_from(
    [0, 1, 3, 9, 27, Fraction(1, 3), Fraction(1, 9), 2, 6]),
    min_size=1, max_size=5))
def test_count_roots_matches_construction(roots):
    ctx = PrimeContext(3)
    f = _prod_linear(ctx, roots)
    for s in (Fraction(-3), Fraction(-1), Fraction(0), Fraction(1),
              Fraction(2), Fraction(5)):
        from berklocus.field import vp
        expect_open = sum(1 for r in roots
                          if (r == 0 and True) or (r != 0 and vp(Fraction(r), 3) > s))
        got = count_roots_in_disk(ctx, f, ctx.zero, s, mode="open")
        assert got == expect_open
        expect_closed = sum(1 for r in roots
                            if r == 0 or vp(Fraction(r), 3) >= s)
        assert count_roots_in_disk(ctx, f, ctx.zero, s, mode="closed") == \
            expect_closed


def test_count_roots_shifted_center():
    ctx = PrimeContext(5)
    f = _prod_linear(ctx, [1, 6, 26])  # roots at distance 1, 5^-1, 5^-2 of 1
    c = ctx.from_rational(1)
    assert count_roots_in_disk(ctx, f, c, Fraction(0), "closed") == 3
    assert count_roots_in_disk(ctx, f, c, Fraction(1), "closed") == 3
    assert count_roots_in_disk(ctx, f, c, Fraction(2), "closed") == 2
    assert count_roots_in_disk(ctx, f, c, Fraction(3), "closed") == 1
    assert count_roots_in_disk(ctx, f, c, Fraction(2), "open") == 1


def test_poly_shift_and_reverse():
    ctx = PrimeContext(7)
    f = epoly(ctx, [3, 0, 1])
    g = poly_shift(ctx, f, ctx.from_rational(2))
    # g(z) = f(z + 2) = (z+2)^2 + 3
    assert poly_eval(ctx, g, ctx.from_rational(1)) == ctx.from_rational(12)
    rev = poly_reverse(ctx, f, 2)
    assert rev == epoly(ctx, [1, 0, 3])
    scaled = poly_scale_arg(ctx, f, ctx.from_rational(7))
    assert scaled == epoly(ctx, [3, 0, 49])


def test_resultant_product_of_differences():
    ctx = PrimeContext(5)
    f = _prod_linear(ctx, [1, 2])
    g = _prod_linear(ctx, [3, 4])
    # prod over roots: (1-3)(1-4)(2-3)(2-4)
    expect = Fraction((1 - 3) * (1 - 4) * (2 - 3) * (2 - 4))
    assert resultant(ctx, f, g) == ctx.from_rational(expect)


def test_resultant_common_root_is_zero():
    ctx = PrimeContext(5)
    f = _prod_linear(ctx, [1, 2])
    g = _prod_linear(ctx, [2, 7])
    assert resultant(ctx, f, g).is_zero()


def test_value_char_poly_pushforward():
    ctx = PrimeContext(3)
    # q has roots 1 and 2; num/den = z^2 maps them to 1 and 4
    q = _prod_linear(ctx, [1, 2])
    num = epoly(ctx, [0, 0, 1])
    den = epoly(ctx, [1])
    C = value_char_poly(ctx, q, num, den)
    # roots of C are 1 and 4
    assert poly_eval(ctx, C, ctx.from_rational(1)).is_zero()
    assert poly_eval(ctx, C, ctx.from_rational(4)).is_zero()


def test_newton_polygon_in_ramified_tower():
    ctx = PrimeContext(2, n=2)
    f = epoly(ctx, [2, 0, 1])  # roots of valuation 1/2 live at tower level
    vals = root_valuations(ctx, f)
    assert vals == [Fraction(1, 2), Fraction(1, 2)]
