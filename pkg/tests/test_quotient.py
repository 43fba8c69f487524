"""Hypersurface quotient: normal forms and graded dimensions.

Dimension oracle: coefficient of t^d in (1 - t^6)/((1-t)^2 (1-t^2)(1-t^3)),
expanded independently of the enumeration code.
"""

import random

import pytest

from godeaux.poly import Poly, WeightedRing, parse_poly
from godeaux.quotient import HypersurfaceRing


def quotient_series(dmax):
    full = [0] * (dmax + 7)
    full[0] = 1
    for w in [1, 1, 2, 3]:
        for d in range(w, dmax + 7):
            full[d] += full[d - w]
    return [full[d] - (full[d - 6] if d >= 6 else 0) for d in range(dmax + 1)]


@pytest.fixture(scope="module")
def ring():
    return WeightedRing(["x1", "x2", "y", "z"], [1, 1, 2, 3])


@pytest.fixture(scope="module")
def quotient(ring):
    f = parse_poly("z^2+y^3-(x1-x2)*y*z+x1^5*x2+x1*x2^5", ring)
    return HypersurfaceRing(ring, f)


class TestConstruction:
    def test_modulus_leading_monomial(self, quotient):
        assert quotient.lead == (0, 0, 0, 2)

    def test_rejects_bad_modulus(self, ring):
        with pytest.raises(ValueError):
            HypersurfaceRing(ring, ring.zero())
        with pytest.raises(ValueError):
            HypersurfaceRing(ring, parse_poly("z^2+y", ring))


class TestNormalForm:
    def test_modulus_reduces_to_zero(self, quotient):
        assert quotient.normal_form(quotient.modulus).is_zero

    def test_low_degree_untouched(self, quotient, ring):
        rng = random.Random(61)
        for d in range(6):
            monos = ring.monomials(d)
            p = Poly(ring, {m: rng.randint(-4, 4) for m in monos})
            assert quotient.normal_form(p) == p

    def test_z_squared(self, quotient, ring):
        got = quotient.normal_form(parse_poly("z^2", ring))
        want = parse_poly("-y^3+(x1-x2)*y*z-x1^5*x2-x1*x2^5", ring)
        assert got == want

    def test_idempotent(self, quotient, ring):
        rng = random.Random(62)
        for d in range(6, 14):
            monos = ring.monomials(d)
            p = Poly(ring, {m: rng.randint(-4, 4) for m in rng.sample(monos, min(6, len(monos)))})
            once = quotient.normal_form(p)
            assert quotient.normal_form(once) == once

    def test_ideal_invariance(self, quotient, ring):
        # normal_form(a*f + b) = normal_form(b)
        rng = random.Random(63)
        f = quotient.modulus
        for _ in range(15):
            da = rng.randrange(0, 5)
            db = rng.randrange(0, 11)
            amonos = ring.monomials(da)
            bmonos = ring.monomials(db)
            a = Poly(ring, {m: rng.randint(-3, 3) for m in rng.sample(amonos, min(3, len(amonos)))})
            b = Poly(ring, {m: rng.randint(-3, 3) for m in rng.sample(bmonos, min(4, len(bmonos)))})
            assert quotient.normal_form(a * f + b) == quotient.normal_form(b)

    def test_multiplicative_up_to_reduction(self, quotient, ring):
        rng = random.Random(64)
        for _ in range(10):
            monos = ring.monomials(rng.randrange(3, 7))
            p = Poly(ring, {m: rng.randint(-3, 3) for m in rng.sample(monos, 3)})
            q = Poly(ring, {m: rng.randint(-3, 3) for m in rng.sample(monos, 3)})
            lhs = quotient.normal_form(p * q)
            rhs = quotient.normal_form(quotient.normal_form(p) * quotient.normal_form(q))
            assert lhs == rhs

    def test_agrees_with_generic_division(self, quotient, ring):
        from godeaux.poly import divide

        rng = random.Random(66)
        for d in range(6, 16):
            monos = ring.monomials(d)
            p = Poly(ring, {m: rng.randint(-5, 5) for m in rng.sample(monos, min(7, len(monos)))})
            _, r = divide(p, [quotient.modulus])
            assert quotient.normal_form(p) == r

    def test_basis_members_fixed(self, quotient):
        for d in range(10):
            for m in quotient.degree_basis(d):
                p = Poly(quotient.ambient, {m: 1})
                assert quotient.normal_form(p) == p


class TestDimensions:
    def test_degree_one(self, quotient):
        basis = quotient.degree_basis(1)
        assert basis == ((1, 0, 0, 0), (0, 1, 0, 0))

    def test_degree_three_count(self, quotient):
        assert quotient.hilbert_dimension(3) == 7

    def test_closed_form(self, quotient):
        for m in range(1, 11):
            assert quotient.hilbert_dimension(m) == 1 + m * (m + 1) // 2

    def test_series_to_thirty(self, quotient):
        series = quotient_series(30)
        for d in range(31):
            assert quotient.hilbert_dimension(d) == series[d]

    def test_tricanonical_target_dimension(self, quotient):
        assert quotient.hilbert_dimension(27) == 379

    def test_no_z_squared_in_basis(self, quotient):
        for d in range(15):
            for m in quotient.degree_basis(d):
                assert m[3] <= 1


class TestVectors:
    def test_round_trip(self, quotient):
        rng = random.Random(65)
        for d in range(8):
            basis = quotient.degree_basis(d)
            vec = [rng.randint(-5, 5) for _ in basis]
            p = quotient.from_vector(d, vec)
            assert quotient.coefficient_vector(p, d) == vec

    def test_vector_reduces_first(self, quotient, ring):
        # z^2 is not a basis monomial; its vector is that of its normal form
        vec = quotient.coefficient_vector(parse_poly("z^2", ring), 6)
        p = quotient.from_vector(6, vec)
        assert p == quotient.normal_form(parse_poly("z^2", ring))

    def test_multiply_reduces(self, quotient, ring):
        z = ring.variable("z")
        prod = quotient.multiply(z, z)
        assert prod == quotient.normal_form(parse_poly("z^2", ring))
        assert all(m[3] <= 1 for m in prod.coeffs)
