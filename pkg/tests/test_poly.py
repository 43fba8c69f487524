"""Weighted polynomial ring: grading, order, arithmetic, grammar.

Monomial counts are checked against an independent generating-function
expansion (coin-counting DP) rather than against the enumerator itself.
"""

import random
from fractions import Fraction

import pytest

from godeaux.poly import (
    Poly,
    PolyParseError,
    WeightedRing,
    divide,
    evaluate,
    format_poly,
    monomial_basis,
    parse_poly,
    poly_from_vector,
)

F = Fraction


def series_counts(weights, dmax):
    """Coefficients of prod 1/(1 - t^w) up to t^dmax."""
    coeffs = [0] * (dmax + 1)
    coeffs[0] = 1
    for w in weights:
        for d in range(w, dmax + 1):
            coeffs[d] += coeffs[d - w]
    return coeffs


@pytest.fixture(scope="module")
def ring():
    return WeightedRing(["x1", "x2", "y", "z"], [1, 1, 2, 3])


class TestRing:
    def test_validation(self):
        with pytest.raises(ValueError):
            WeightedRing(["a", "a"], [1, 1])
        with pytest.raises(ValueError):
            WeightedRing(["a"], [0])
        with pytest.raises(ValueError):
            WeightedRing(["a"], [1, 2])

    def test_degree(self, ring):
        assert ring.degree((1, 0, 0, 0)) == 1
        assert ring.degree((0, 0, 1, 1)) == 5
        assert ring.degree((5, 1, 0, 0)) == 6

    def test_monomial_counts_match_series(self, ring):
        counts = series_counts([1, 1, 2, 3], 30)
        for d in range(31):
            assert len(ring.monomials(d)) == counts[d]

    def test_degree_two_listing(self, ring):
        names = [format_poly(Poly(ring, {m: 1})) for m in ring.monomials(2)]
        assert names == ["x1^2", "x1*x2", "x2^2", "y"]

    def test_degree_three_listing(self, ring):
        names = [format_poly(Poly(ring, {m: 1})) for m in ring.monomials(3)]
        assert names == ["x1^3", "x1^2*x2", "x1*x2^2", "x2^3", "x1*y", "x2*y", "z"]

    def test_monomials_homogeneous_and_distinct(self, ring):
        for d in range(12):
            monos = ring.monomials(d)
            assert len(set(monos)) == len(monos)
            for m in monos:
                assert ring.degree(m) == d

    def test_order_total_on_fixed_degree(self, ring):
        monos = ring.monomials(6)
        keys = [ring.sort_key(m) for m in monos]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)


class TestArithmetic:
    def test_add_cancel(self, ring):
        x1 = ring.variable("x1")
        assert (x1 - x1).is_zero
        assert not (x1 + x1).is_zero

    def test_int_fraction_coexist(self, ring):
        p = ring.constant(F(1, 2)) + ring.constant(F(1, 2))
        assert p == ring.one()
        assert p.coeffs[(0, 0, 0, 0)] == 1
        assert isinstance(p.coeffs[(0, 0, 0, 0)], int)

    def test_pow(self, ring):
        x1 = ring.variable("x1")
        x2 = ring.variable("x2")
        s = x1 + x2
        assert s ** 0 == ring.one()
        assert s ** 1 == s
        assert s ** 3 == s * s * s

    def test_mul_distributes(self, ring):
        rng = random.Random(11)

        def rand_poly():
            monos = ring.monomials(rng.randrange(0, 5))
            return Poly(ring, {m: rng.randint(-4, 4) for m in rng.sample(monos, min(3, len(monos)))})

        for _ in range(30):
            a, b, c = rand_poly(), rand_poly(), rand_poly()
            assert a * (b + c) == a * b + a * c
            assert (a * b) * c == a * (b * c)

    def test_homogeneous_degree(self, ring):
        z = ring.variable("z")
        y = ring.variable("y")
        assert (z * z).homogeneous_degree() == 6
        assert (y ** 3).homogeneous_degree() == 6
        assert not (z + y).is_homogeneous()
        with pytest.raises(ValueError):
            ring.zero().homogeneous_degree()

    def test_leading_monomial_degree_first(self, ring):
        p = parse_poly("z^2+x1^7", ring)
        assert p.leading_monomial() == (7, 0, 0, 0)

    def test_leading_monomial_tie_break(self, ring):
        # within degree 6, z^2 beats y^3 beats any pure x monomial
        p = parse_poly("z^2+y^3+x1^6", ring)
        assert p.leading_monomial() == (0, 0, 0, 2)
        q = parse_poly("y^3+x1^6", ring)
        assert q.leading_monomial() == (0, 0, 3, 0)

    def test_content_normalized(self, ring):
        p = parse_poly("4*x1^2-6*x1*x2", ring)
        n = p.content_normalized()
        # x1*x2 is the larger degree-2 monomial, so it leads with +3
        assert format_poly(n) == "3*x1*x2-2*x1^2"
        assert n.leading_coefficient() == 3
        q = parse_poly("1/2*y-1/3*x1^2", ring).content_normalized()
        assert q.leading_coefficient() == 3
        assert format_poly(q) == "3*y-2*x1^2"

    def test_coefficient_vector_round_trip(self, ring):
        rng = random.Random(21)
        for d in range(7):
            basis = ring.monomials(d)
            vec = [rng.randint(-5, 5) for _ in basis]
            p = poly_from_vector(ring, d, vec)
            assert p.coefficient_vector(d) == vec

    def test_coefficient_vector_degree_mismatch(self, ring):
        with pytest.raises(ValueError):
            ring.variable("y").coefficient_vector(3)


class TestDivide:
    def test_remainder_not_divisible(self, ring):
        f = parse_poly("z^2+y^3-(x1-x2)*y*z+x1^5*x2+x1*x2^5", ring)
        rng = random.Random(31)
        for d in range(4, 10):
            monos = ring.monomials(d)
            p = Poly(ring, {m: rng.randint(-3, 3) for m in rng.sample(monos, min(5, len(monos)))})
            quotients, r = divide(p, [f])
            assert quotients[0] * f + r == p
            lm = f.leading_monomial()
            for mono in r.coeffs:
                assert not all(a >= b for a, b in zip(mono, lm))

    def test_exact_division(self, ring):
        a = parse_poly("x1+x2", ring)
        b = parse_poly("x1^2-x2^2", ring)
        quotients, r = divide(b, [a])
        assert r.is_zero
        assert quotients[0] == parse_poly("x1-x2", ring)

    def test_zero_divisor_rejected(self, ring):
        with pytest.raises(ValueError):
            divide(ring.one(), [ring.zero()])


class TestEvaluate:
    def test_into_same_ring(self, ring):
        p = parse_poly("x1^2+3*y", ring)
        images = [ring.variable("x2"), ring.variable("x1"), ring.variable("y"), ring.variable("z")]
        q = evaluate(p, images, ring.zero(), ring.one())
        assert q == parse_poly("x2^2+3*y", ring)

    def test_morphism_property(self, ring):
        rng = random.Random(41)
        target = WeightedRing(["a", "b"], [1, 1])
        images = [
            parse_poly("a+b", target),
            parse_poly("a-b", target),
            parse_poly("a*b", target),
            parse_poly("a^3", target),
        ]

        def rand_poly():
            monos = ring.monomials(rng.randrange(0, 5))
            if not monos:
                return ring.zero()
            return Poly(ring, {m: rng.randint(-3, 3) for m in rng.sample(monos, min(3, len(monos)))})

        def ev(p):
            return evaluate(p, images, target.zero(), target.one())

        for _ in range(20):
            a, b = rand_poly(), rand_poly()
            assert ev(a + b) == ev(a) + ev(b)
            assert ev(a * b) == ev(a) * ev(b)


class TestGrammar:
    def test_round_trip(self, ring):
        rng = random.Random(51)
        for _ in range(40):
            d = rng.randrange(0, 7)
            monos = ring.monomials(d)
            coeffs = {}
            for m in rng.sample(monos, min(4, len(monos))):
                if rng.randrange(3) == 0:
                    coeffs[m] = F(rng.randint(-9, 9), rng.choice([2, 3, 7]))
                else:
                    coeffs[m] = rng.randint(-9, 9)
            p = Poly(ring, coeffs)
            assert parse_poly(format_poly(p), ring) == p

    def test_zero_forms(self, ring):
        assert format_poly(ring.zero()) == "0"
        assert parse_poly("0", ring).is_zero

    def test_explicit_star_required(self, ring):
        with pytest.raises(PolyParseError):
            parse_poly("2x1", ring)

    def test_parentheses_and_unary_minus(self, ring):
        p = parse_poly("-(x1-x2)^2", ring)
        q = parse_poly("-x1^2+2*x1*x2-x2^2", ring)
        assert p == q

    def test_rational_literal(self, ring):
        p = parse_poly("2/3*y", ring)
        assert p.coeffs[(0, 0, 1, 0)] == F(2, 3)

    def test_unknown_variable_position(self, ring):
        with pytest.raises(PolyParseError) as info:
            parse_poly("x1+w^2", ring)
        assert info.value.position == 3

    def test_bad_exponent(self, ring):
        with pytest.raises(PolyParseError):
            parse_poly("x1^-2", ring)
        with pytest.raises(PolyParseError):
            parse_poly("x1^x2", ring)

    def test_unbalanced_paren(self, ring):
        with pytest.raises(PolyParseError):
            parse_poly("(x1+x2", ring)

    def test_trailing_garbage(self, ring):
        with pytest.raises(PolyParseError):
            parse_poly("x1+", ring)
        with pytest.raises(PolyParseError):
            parse_poly("x1 x2", ring)

    def test_zero_denominator(self, ring):
        with pytest.raises(PolyParseError):
            parse_poly("1/0", ring)

    def test_format_is_descending(self, ring):
        p = parse_poly("x1^2+z^2+y^3", ring)
        assert format_poly(p) == "z^2+y^3+x1^2"

    def test_monomial_basis_alias(self, ring):
        assert monomial_basis(ring, 2) == ring.monomials(2)
