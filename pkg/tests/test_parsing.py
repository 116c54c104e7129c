import pytest

from ordercalc.cyclotomic import CycField
from ordercalc.errors import DivisionByZero, ParseError
from ordercalc.orders import AlgebraSpec, dual_shift_element
from ordercalc.parsing import (
    element_entries,
    format_element,
    format_series,
    parse_element,
    parse_scalar,
    parse_series,
)
from ordercalc.pools import random_element


def test_parse_scalar():
    from ordercalc.rationals import RAT

    F = CycField(4)
    assert parse_scalar("1/2", F) == F.scalar([RAT(1, 2), 0])
    # z^2 = -1 in the fourth cyclotomic field
    assert parse_scalar("1/2 - 3*z^2 + z", F) == F.scalar([RAT(7, 2), 1])
    assert parse_scalar("2*(3 - 1/2)", CycField(1)) == CycField(1).from_rat(RAT(5))
    with pytest.raises(ParseError):
        parse_scalar("u + 1", F)


def test_parse_series_round_trip():
    F = CycField(3)
    s = parse_series("1/2 + (1+z)*u*v - v^2", F, 4)
    assert format_series(s) == "1/2 + (1 + z)*u*v - v^2"
    assert parse_series(format_series(s), F, 4) == s
    # truncation kills high degree terms
    assert parse_series("u^5", F, 4).is_zero()
    with pytest.raises(ParseError):
        parse_series("x + u", F, 4)


def test_parse_element_matrix_literal_and_lists():
    B = AlgebraSpec.smooth_ram(2, 1, 4)
    c = dual_shift_element(B)
    assert parse_element(B, "[[0, 1], [u, 0]]") == c
    assert parse_element(B, [["0", "1"], ["u", "0"]]) == c
    assert format_element(c) == "[[0, 1], [u, 0]]"


def test_parse_element_respects_noncommutativity():
    S = AlgebraSpec.singular_ram(3, 1, 4)
    yx = parse_element(S, "[[y*x]]")
    zxy = parse_element(S, "[[z*x*y]]")
    assert yx == zxy
    assert parse_element(S, "[[x^3]]") == S.u_element()
    assert parse_element(S, "[[x*y - y*x]]") != S.zero_element()


def test_parse_element_pattern_violation():
    B = AlgebraSpec.smooth_ram(2, 1, 4)
    with pytest.raises(ParseError):
        parse_element(B, "[[0, 0], [1, 0]]")
    with pytest.raises(ParseError):
        parse_element(B, "[[0, 0], [v, 0]]")
    # u-divisible entries below the diagonal are fine
    parse_element(B, "[[0, 0], [u*v, 0]]")


def test_parse_element_shape_errors():
    B = AlgebraSpec.smooth_ram(2, 1, 4)
    with pytest.raises(ParseError):
        parse_element(B, "[[0, 1]]")
    with pytest.raises(ParseError):
        parse_element(B, "[[0, 1], [u]]")
    with pytest.raises(ParseError):
        parse_element(B, "[[0, 1], [u, )]]")


def test_division_rules():
    B = AlgebraSpec.smooth_ram(2, 1, 4)
    half_u = parse_element(B, "[[u/2, 0], [0, 0]]")
    assert half_u + half_u == parse_element(B, "[[u, 0], [0, 0]]")
    with pytest.raises(ParseError):
        parse_element(B, "[[1/u, 0], [0, 0]]")
    with pytest.raises(DivisionByZero):
        parse_element(B, "[[u/0, 0], [0, 0]]")


def test_round_trip_on_random_elements():
    import random

    rng = random.Random(17)
    for spec in (
        AlgebraSpec.smooth_ram(2, 1, 4),
        AlgebraSpec.smooth_ram(2, 2, 4),
        AlgebraSpec.singular_ram(3, 1, 4),
        AlgebraSpec.unramified(2, 4),
    ):
        for _ in range(10):
            elem = random_element(rng, spec)
            assert parse_element(spec, format_element(elem)) == elem
            assert parse_element(spec, element_entries(elem)) == elem


def test_exponent_forms():
    B = AlgebraSpec.smooth_ram(2, 1, 5)
    assert parse_element(B, "[[u**2, 0], [0, 0]]") == parse_element(B, "[[u^2, 0], [0, 0]]")
    with pytest.raises(ParseError):
        parse_element(B, "[[u^x, 0], [0, 0]]")
