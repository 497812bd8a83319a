import random
from fractions import Fraction

import pytest

from hopfpartial.scalars import (
    Cyclo,
    DivisionByZeroScalar,
    cyclotomic_polynomial,
    euler_phi,
    scalar_arith,
)

# Known cyclotomic polynomials, low degree first (reference data).
KNOWN_CYCLOTOMIC = {
    1: [-1, 1],
    2: [1, 1],
    3: [1, 1, 1],
    4: [1, 0, 1],
    5: [1, 1, 1, 1, 1],
    6: [1, -1, 1],
    8: [1, 0, 0, 0, 1],
    9: [1, 0, 0, 1, 0, 0, 1],
    12: [1, 0, -1, 0, 1],
}


def test_cyclotomic_polynomials_match_reference():
    for n, coeffs in KNOWN_CYCLOTOMIC.items():
        assert cyclotomic_polynomial(n) == [Fraction(c) for c in coeffs]


def test_euler_phi():
    assert [euler_phi(n) for n in (1, 2, 3, 4, 6, 8, 12)] == [1, 1, 2, 2, 2, 4, 4]


def test_zeta2_squared_is_one():
    z2 = Cyclo.zeta(2)
    assert z2 * z2 == 1


def test_zeta4_plus_inverse_is_zero():
    assert (Cyclo.zeta(4) + Cyclo.zeta(4, 3)).is_zero()


# --- independent dense polynomial oracle -----------------------------------

def _poly_mulmod(p, q, phi):
    """Brute-force polynomial multiplication followed by reduction mod phi."""
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    # long division remainder
    deg = len(phi) - 1
    while len(out) > deg:
        lead = out[-1]
        if lead:
            shift = len(out) - 1 - deg
            for k in range(len(phi)):
                out[shift + k] -= lead * phi[k]
        out.pop()
    while len(out) < deg:
        out.append(Fraction(0))
    return out


def test_mul_against_polynomial_oracle_order3():
    # (1/2 + z3) * conj(1/2 + z3); conj sends z -> z^2 = -1 - z mod Phi_3
    phi3 = [Fraction(1), Fraction(1), Fraction(1)]
    x = [Fraction(1, 2), Fraction(1)]
    conj = [Fraction(1, 2) - 1, Fraction(-1)]  # 1/2 + z^2 reduced
    expected = _poly_mulmod(x, conj, phi3)
    got = (Cyclo.rational(Fraction(1, 2)) + Cyclo.zeta(3)) * (
        Cyclo.rational(Fraction(1, 2)) + Cyclo.zeta(3)
    ).conjugate()
    assert list(got.promote(3).coeffs) == expected
    assert got == Cyclo.rational(Fraction(3, 4))


def test_mul_against_polynomial_oracle_random_orders():
    rng = random.Random(7)
    for order in (3, 4, 5, 8, 12):
        phi = cyclotomic_polynomial(order)
        deg = len(phi) - 1
        for _ in range(10):
            a = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(deg)]
            b = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(deg)]
            expected = _poly_mulmod(a, b, phi)
            got = Cyclo(order, tuple(a)) * Cyclo(order, tuple(b))
            assert list(got.coeffs) == expected


def _random_scalar(rng, order):
    deg = euler_phi(order)
    return Cyclo(order, tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 2))
                              for _ in range(deg)))


def test_field_axioms_sampled():
    rng = random.Random(0)
    orders = [1, 2, 3, 4, 6, 8]
    for _ in range(60):
        x = _random_scalar(rng, rng.choice(orders))
        y = _random_scalar(rng, rng.choice(orders))
        z = _random_scalar(rng, rng.choice(orders))
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + y == y + x
        assert x * y == y * x
        if not x.is_zero():
            assert (x * x.inverse()).is_one()


def test_mixed_order_equality_and_promotion():
    assert Cyclo.zeta(2) == Cyclo.zeta(4, 2)
    assert Cyclo.zeta(6, 3) == -1
    assert Cyclo.zeta(3) * Cyclo.zeta(2) == Cyclo.zeta(6, 5)
    assert Cyclo.zeta(8, 2) == Cyclo.zeta(4)


def test_division_and_errors():
    z3 = Cyclo.zeta(3)
    assert scalar_arith(z3, z3, "div").is_one()
    assert scalar_arith(z3, z3, "sub").is_zero()
    assert scalar_arith(Cyclo.rational(2), z3, "mul") == z3 + z3
    with pytest.raises(DivisionByZeroScalar):
        scalar_arith(z3, Cyclo.zero(), "div")
    with pytest.raises(DivisionByZeroScalar):
        Cyclo.zero().inverse()


def test_power_and_conjugate():
    z8 = Cyclo.zeta(8)
    assert z8 ** 8 == 1
    assert z8 ** -1 == Cyclo.zeta(8, 7)
    x = Cyclo.rational(Fraction(1, 3)) + z8
    # x * conj(x) should be fixed by conjugation (it is a real number)
    norm = x * x.conjugate()
    assert norm == norm.conjugate()


def test_json_roundtrip():
    x = Cyclo.rational(Fraction(-7, 3)) + Cyclo.zeta(12, 5)
    obj = x.to_json()
    assert obj["order"] == 12 and len(obj["coeffs"]) == euler_phi(12)
    assert Cyclo.from_json(obj) == x
    with pytest.raises(ValueError):
        Cyclo.from_json({"order": 12, "coeffs": ["1"]})
