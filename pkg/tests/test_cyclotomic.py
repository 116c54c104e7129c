import random

import pytest

from ordercalc.cyclotomic import CycField, CycScalar, cyclotomic_poly, euler_phi
from ordercalc.errors import DivisionByZero
from ordercalc.rationals import RAT


def test_cyclotomic_poly_small():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(2) == (1, 1)


def _polydiv(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        for i, d in enumerate(den):
            num[k + i] -= c * d
    assert not any(num[: len(den) - 1])
    return tuple(out)


def test_cyclotomic_poly_4_against_division_oracle():
    # divide x^4 - 1 by (x - 1)(x + 1) = x^2 - 1
    oracle = _polydiv([-1, 0, 0, 0, 1], [-1, 0, 1])
    assert oracle == (1, 0, 1)
    assert cyclotomic_poly(4) == oracle


@pytest.mark.parametrize("e", [1, 2, 3, 4, 5, 6, 8, 12])
def test_product_over_divisors_recovers_x_e_minus_1(e):
    # x^e - 1 = product of cyclotomic polynomials over divisors of e
    prod = [1]
    for d in range(1, e + 1):
        if e % d:
            continue
        phi_d = cyclotomic_poly(d)
        out = [0] * (len(prod) + len(phi_d) - 1)
        for i, a in enumerate(prod):
            for j, b in enumerate(phi_d):
                out[i + j] += a * b
        prod = out
    assert prod == [-1] + [0] * (e - 1) + [1]
    assert euler_phi(e) == len(cyclotomic_poly(e)) - 1


def test_zeta_square_is_one_for_order_two():
    F = CycField(2)
    z = F.zeta()
    assert z == RAT(-1)
    assert z * z == F.one()


@pytest.mark.parametrize("e", [1, 2, 3, 4, 5, 6])
def test_root_of_unity_identities(e):
    F = CycField(e)
    z = F.zeta()
    power = F.one()
    for _ in range(e):
        power = power * z
    assert power == F.one()
    # z * z^(e-1) == 1
    assert z * F.zeta_pow(e - 1) == F.one()
    # z^k - 1 invertible for 0 < k < e
    for k in range(1, e):
        d = F.zeta_pow(k) - F.one()
        assert d
        assert d * (F.one() / d) == F.one()


def test_gaussian_product():
    # (1 + i)(1 - i) = 2 in the fourth cyclotomic field
    F = CycField(4)
    z = F.zeta()
    assert (F.one() + z) * (F.one() - z) == F.from_int(2)


@pytest.mark.parametrize("e", [3, 4, 5, 6, 7])
def test_field_axioms_on_samples(e):
    F = CycField(e)
    rng = random.Random(e)

    def rand():
        return F.scalar([RAT(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(F.phi)])

    for _ in range(40):
        a, b, c = rand(), rand(), rand()
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if a:
            assert a * (F.one() / a) == F.one()


def test_division_by_zero_raises():
    F = CycField(3)
    with pytest.raises(DivisionByZero):
        F.zero().inverse()
    with pytest.raises((DivisionByZero, ZeroDivisionError)):
        F.one() / F.zero()


def test_scalar_is_reduced_to_phi_coefficients():
    F = CycField(5)
    z = F.zeta()
    s = z * z * z * z  # z^4 = -1 - z - z^2 - z^3
    assert isinstance(s, CycScalar)
    assert len(s.c) == euler_phi(5) == 4
    assert s == -(F.one() + z + z * z + z * z * z)


def test_scalar_formatting_round_trip():
    from ordercalc.parsing import parse_scalar

    F = CycField(4)
    s = F.scalar([RAT(1, 2), RAT(-3)])
    text = F.format_scalar(s)
    assert text == "1/2 - 3*z"
    assert parse_scalar(text, F) == s
