import random
from fractions import Fraction

import pytest

from oscint.poly import (
    NegativeExponentError,
    Polynomial,
    PolynomialSyntaxError,
    VariableIndexError,
    parse_polynomial,
    taylor_support,
)
from oscint.polyhedron import polyhedron_of, restrict_to_face

from oracles import random_polynomial


def test_parse_basic_examples():
    p = parse_polynomial("x1^5 + x1^6 + x2^5", 2)
    assert p.terms == {(5, 0): 1, (6, 0): 1, (0, 5): 1}
    assert parse_polynomial("0", 2).terms == {}
    q = parse_polynomial("x1^2 - 2*x1*x2 + x2^2", 2)
    assert q.terms == {(2, 0): 1, (1, 1): -2, (0, 2): 1}


def test_parse_rational_coefficients_and_whitespace():
    p = parse_polynomial(" 3/2*x1^2*x2 - x3 ", 3)
    assert p.terms == {(2, 1, 0): Fraction(3, 2), (0, 0, 1): -1}


def test_parse_collects_like_terms_and_drops_zero():
    p = parse_polynomial("x1 + x1 - 2*x1", 1)
    assert p.is_zero()


def test_parse_leading_sign():
    p = parse_polynomial("-x1^4 - x2^2", 2)
    assert p.terms == {(4, 0): -1, (0, 2): -1}


def test_parse_errors():
    with pytest.raises(PolynomialSyntaxError) as err:
        parse_polynomial("x1 + + x2", 2)
    assert err.value.pos >= 4
    with pytest.raises(VariableIndexError):
        parse_polynomial("x3", 2)
    with pytest.raises(NegativeExponentError):
        parse_polynomial("x1^-2", 2)
    with pytest.raises(PolynomialSyntaxError):
        parse_polynomial("2*", 1)
    with pytest.raises(PolynomialSyntaxError):
        parse_polynomial("", 1)


def test_dimension_is_explicit():
    p = parse_polynomial("x1^4", 2)
    assert p.n == 2
    assert p.terms == {(4, 0): 1}


def test_taylor_support_examples():
    assert taylor_support(parse_polynomial("x1^5+x1^6+x2^5", 2)) == {(5, 0), (6, 0), (0, 5)}
    assert taylor_support(parse_polynomial("0", 3)) == frozenset()
    assert taylor_support(parse_polynomial("x1^2+x1*x2+x2^2", 2)) == {(2, 0), (1, 1), (0, 2)}


def test_print_parse_round_trip():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 4)
        p = random_polynomial(rng, n)
        assert parse_polynomial(str(p), n).terms == p.terms


def test_print_is_graded_lexicographic():
    p = parse_polynomial("x2^2 + x1*x2 + x1^3 + 1", 2)
    assert str(p) == "x1^3 + x1*x2 + x2^2 + 1"


def test_sum_support_subset_of_union():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(1, 3)
        a, b = random_polynomial(rng, n), random_polynomial(rng, n)
        assert (a + b).support <= a.support | b.support


def test_exact_rational_arithmetic_property():
    rng = random.Random(13)
    for _ in range(200):
        a = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
        b = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
        prod = a * b
        brute = Fraction(a.numerator * b.numerator, a.denominator * b.denominator)
        assert prod == brute
        assert prod.denominator > 0
        import math

        assert math.gcd(prod.numerator, prod.denominator) == 1


def test_restrict_to_face_examples():
    f = parse_polynomial("x1^5+x1^6+x2^5", 2)
    P = polyhedron_of(f)
    edge = next(g for g in P.enumerate_faces() if g.dim == 1 and g.compact)
    assert restrict_to_face(f, edge).terms == {(5, 0): 1, (0, 5): 1}
    trivial = P.trivial_face()
    assert restrict_to_face(f, trivial).terms == f.terms

    g = parse_polynomial("x1^4", 2)
    Q = polyhedron_of(g)
    vertex = next(h for h in Q.enumerate_faces() if h.dim == 0)
    assert restrict_to_face(g, vertex).terms == {(4, 0): 1}


def test_restrict_support_subset():
    rng = random.Random(17)
    for _ in range(50):
        p = random_polynomial(rng, 2)
        P = polyhedron_of(p)
        for face in P.enumerate_faces():
            assert restrict_to_face(p, face).support <= p.support


def test_restrict_dimension_mismatch():
    f = parse_polynomial("x1^2", 1)
    g = parse_polynomial("x1^2+x2^2", 2)
    face = polyhedron_of(g).trivial_face()
    with pytest.raises(ValueError):
        restrict_to_face(f, face)
