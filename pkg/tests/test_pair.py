import random
from fractions import Fraction

import pytest

from oscint.pair import (
    DistanceUndefinedError,
    analyze_pair,
    distance_to_unit,
    essential_set,
    gamma_phi_f,
    monomial_distance,
    newton_distance,
    newton_multiplicity,
    nondegeneracy_check,
    order_bound,
    principal_on_essential,
    sign_certificate,
)
from oscint.poly import Polynomial, parse_polynomial
from oscint.polyhedron import polyhedron_of

from oracles import bisect_distance, containment, random_polynomial, random_support


def P(text, n):
    return polyhedron_of(parse_polynomial(text, n))


QUINTIC = "x1^5+x1^6+x2^5"


def test_newton_distance_examples():
    Pf = P(QUINTIC, 2)
    for t in ("", "2*"):
        Pphi = P(f"x1^2+{t}x1*x2+x2^2" if t else "x1^2+x2^2", 2)
        assert newton_distance(Pf, Pphi) == Fraction(5, 4)
    assert newton_distance(P("x1^4", 2), P("x1^2*x2^2", 2)) == Fraction(4, 3)
    # amplitude 1: the diagonal coordinate d_f
    assert distance_to_unit(Pf) == Fraction(5, 2)
    assert newton_distance(Pf, P("1", 2)) == Fraction(5, 2)


def test_newton_distance_errors():
    with pytest.raises(DistanceUndefinedError):
        newton_distance(P("1", 2), P("x1", 2))
    with pytest.raises(ValueError):
        newton_distance(P("x1^2", 1), P("x1^2+x2^2", 2))


def test_gamma_phi_f_examples():
    Pf = P(QUINTIC, 2)
    Pphi = P("x1^2+x1*x2+x2^2", 2)
    d = newton_distance(Pf, Pphi)
    faces = gamma_phi_f(Pf, Pphi, d)
    assert len(faces) == 1
    assert faces[0].dim == 1 and set(faces[0].vertices) == {(2, 0), (0, 2)}

    # proportional polyhedra: the whole boundary appears
    Pf2 = P("x1^4+x1^2*x2^2+x2^4", 2)  # Gamma = 2*(Gamma(phi)+1) for phi below
    Pphi2 = P("x1^2+x2^2", 2)
    # here d*(Gamma_+(phi)+1) has vertices 2*(3,1)=(6,2)... use a tailored pair
    f3 = Polynomial(2, {(4, 2): Fraction(1), (2, 4): Fraction(1)})
    Pf3 = polyhedron_of(f3)
    Pphi3 = P("x1+x2", 2)
    d3 = newton_distance(Pf3, Pphi3)
    assert d3 == 2
    faces3 = gamma_phi_f(Pf3, Pphi3, d3)
    # all proper faces of Gamma_+(phi) whose shift lies on the scaled boundary
    assert len(faces3) >= 1

    # monomial amplitude: the single vertex
    Pphi4 = P("x1^2*x2^3", 2)
    d4 = newton_distance(Pf, Pphi4)
    faces4 = gamma_phi_f(Pf, Pphi4, d4)
    assert all(set(fc.vertices) == {(2, 3)} for fc in faces4)


def test_newton_multiplicity_examples():
    Pf = P(QUINTIC, 2)
    assert newton_multiplicity(Pf, P("x1^2+x1*x2+x2^2", 2), Fraction(5, 4)) == 1
    assert newton_multiplicity(P("x1^4", 2), P("x1^2*x2^2", 2), Fraction(4, 3)) == 1
    # diagonal point in the relative interior of the compact edge: rho = 1
    Pf2 = P("x1^2+x2^2", 2)
    d2 = newton_distance(Pf2, P("1", 2))
    assert d2 == 1
    assert Pf2.rho((1, 1)) == 1
    assert newton_multiplicity(Pf2, P("1", 2), d2) == 1
    # diagonal hitting a vertex: rho = 2 (the log-producing case)
    Pf3 = P("x1^2*x2^2", 2)
    d3 = newton_distance(Pf3, P("1", 2))
    assert d3 == 2
    assert newton_multiplicity(Pf3, P("1", 2), d3) == 2


def test_essential_set_examples():
    Pf = P(QUINTIC, 2)
    Pphi = P("x1^2+x1*x2+x2^2", 2)
    ess = essential_set(Pf, Pphi, Fraction(5, 4), 1)
    assert len(ess) == 1
    assert ess[0].dim == 1 and set(ess[0].vertices) == {(2, 0), (0, 2)}

    # monomial amplitude: a single vertex face
    Pphi2 = P("x1^2*x2^2", 2)
    d2 = newton_distance(P("x1^4", 2), Pphi2)
    ess2 = essential_set(P("x1^4", 2), Pphi2, d2, 1)
    assert len(ess2) == 1 and ess2[0].vertices == ((2, 2),)

    # proportional shifted polyhedra force vertex essential sets and m = n
    f = parse_polynomial("x1^2+x2^2", 2)
    phi = f
    one = (1, 1)
    Pxf = polyhedron_of(f.shift_exponents(one))
    Pphi3 = polyhedron_of(phi)
    d3 = newton_distance(Pxf, Pphi3)
    m3 = newton_multiplicity(Pxf, Pphi3, d3)
    assert m3 == 2
    ess3 = essential_set(Pxf, Pphi3, d3, m3)
    assert all(e.dim == 0 for e in ess3)
    assert {e.vertices[0] for e in ess3} == {(2, 0), (0, 2)}


def test_principal_on_essential_examples():
    f = parse_polynomial(QUINTIC, 2)
    phi = parse_polynomial("x1^2+x1*x2+x2^2", 2)
    pa = analyze_pair(f, phi)
    assert pa.principal.terms == phi.terms

    phi2 = parse_polynomial("7*x1^2*x2^2", 2)
    pa2 = analyze_pair(parse_polynomial("x1^4", 2), phi2)
    assert pa2.principal.terms == {(2, 2): 7}


def test_essential_faces_disjoint_and_dim_bounded():
    rng = random.Random(31)
    checked = 0
    for _ in range(200):
        n = rng.choice([2, 2, 3])
        f = random_polynomial(rng, n)
        phi = random_polynomial(rng, n)
        if f.is_zero() or phi.is_zero():
            continue
        Pf, Pphi = polyhedron_of(f), polyhedron_of(phi)
        try:
            d = newton_distance(Pf, Pphi)
        except DistanceUndefinedError:
            continue
        m = newton_multiplicity(Pf, Pphi, d)
        ess = essential_set(Pf, Pphi, d, m)
        assert ess
        for face in ess:
            assert face.dim <= n - m
        for i in range(len(ess)):
            for j in range(i + 1, len(ess)):
                assert not (set(ess[i].vertices) & set(ess[j].vertices))
        checked += 1
    assert checked >= 100


def test_distance_closed_form_vs_bisection_oracle():
    rng = random.Random(37)
    for _ in range(200):
        n = rng.choice([2, 2, 3, 4])
        f = random_polynomial(rng, n)
        phi = random_polynomial(rng, n)
        if f.is_zero() or phi.is_zero():
            continue
        Pf, Pphi = polyhedron_of(f), polyhedron_of(phi)
        try:
            d = newton_distance(Pf, Pphi)
        except DistanceUndefinedError:
            assert all(fct.offset == 0 for fct in Pf.facets)
            continue
        # containment holds at d and fails just below: minimality certificate
        assert containment(d, Pf, Pphi.vertices)
        assert not containment(d * Fraction(996, 997), Pf, Pphi.vertices)
        lo, hi = bisect_distance(Pf, Pphi)
        assert lo <= d <= hi


def test_distance_bounded_by_unit_distance():
    rng = random.Random(41)
    for _ in range(200):
        n = rng.choice([2, 3])
        f = random_polynomial(rng, n)
        phi = random_polynomial(rng, n)
        if f.is_zero() or phi.is_zero():
            continue
        Pf = polyhedron_of(f)
        try:
            d = newton_distance(Pf, polyhedron_of(phi))
            df = distance_to_unit(Pf)
        except DistanceUndefinedError:
            continue
        assert d <= df


def test_monomial_distance_examples():
    assert monomial_distance(P(QUINTIC, 2), (0, 0)) == (
        Fraction(5, 2),
        (Fraction(5, 2), Fraction(5, 2)),
        1,
    )
    assert monomial_distance(P("x1^2", 1), (0,)) == (Fraction(2), (Fraction(2),), 1)
    assert monomial_distance(P("x1^4", 2), (2, 2)) == (
        Fraction(4, 3),
        (Fraction(4), Fraction(4)),
        1,
    )


def test_sign_certificate_examples():
    for t in (0, 1, 2, -2):
        phi = Polynomial(2, {(2, 0): 1, (1, 1): Fraction(t), (0, 2): 1})
        assert sign_certificate(phi).status == "Nonnegative"
    c = sign_certificate(parse_polynomial("x1^2+3*x1*x2+x2^2", 2))
    assert c.status == "Indefinite"
    assert c.witness_negative is not None
    val = parse_polynomial("x1^2+3*x1*x2+x2^2", 2).evaluate(c.witness_negative)
    assert val < 0
    assert sign_certificate(parse_polynomial("-x1^4-x2^2", 2)).status == "Nonpositive"
    assert sign_certificate(Polynomial.zero(2)).status == "Nonnegative"


def test_sign_certificate_face_consistency():
    # a certified-nonnegative polynomial restricted to a compact face can
    # never be certified negative-somewhere (Indefinite/Nonpositive with a
    # strictly negative witness would contradict the restriction lemma)
    from oscint.polyhedron import restrict_to_face

    rng = random.Random(43)
    checked = 0
    for _ in range(300):
        n = 2
        # build certified-nonnegative inputs: squares plus even monomials
        base = random_polynomial(rng, n, max_points=3, max_exp=3)
        p = Polynomial(n, {tuple(2 * k for k in e): abs(c) for e, c in base.terms.items()})
        if rng.random() < 0.5:
            a = rng.randint(0, 2)
            b = rng.randint(0, 2)
            tt = Fraction(rng.randint(-2, 2))
            quad = Polynomial(
                n, {(2 * a, 0): Fraction(1), (a, b): tt, (0, 2 * b): Fraction(1)}
            )
            if abs(tt) <= 2 and (a, b) != (0, 0):
                p = p + quad
        if p.is_zero():
            continue
        if sign_certificate(p).status != "Nonnegative":
            continue
        Pp = polyhedron_of(p)
        for face in Pp.newton_diagram():
            s = sign_certificate(restrict_to_face(p, face))
            assert s.status in ("Nonnegative", "Unknown")
        checked += 1
    assert checked >= 50


def test_principal_sign_equivalence_across_essential_faces():
    # certified sign of the essential-set polynomial matches the certified
    # signs of its face pieces when all certificates are decisive
    from oscint.polyhedron import restrict_to_face

    f = parse_polynomial(QUINTIC, 2)
    phi = parse_polynomial("x1^2+x1*x2+x2^2", 2)
    pa = analyze_pair(f, phi)
    assert pa.sign_principal.status == "Nonnegative"
    for face in pa.essential:
        piece = restrict_to_face(phi, face)
        assert sign_certificate(piece).status in ("Nonnegative", "Unknown")


def test_nondegeneracy_examples():
    f = parse_polynomial(QUINTIC, 2)
    assert nondegeneracy_check(f).status == "Nondegenerate"
    assert nondegeneracy_check(parse_polynomial("x1^4", 2)).status == "Nondegenerate"
    rep = nondegeneracy_check(parse_polynomial("x1^2-2*x1*x2+x2^2", 2))
    assert rep.status == "Degenerate"
    face, point = rep.witnesses[0]
    assert face.dim == 1
    # witness sits on the diagonal orbit: x1 = x2 up to the parametrization
    assert point[0] == point[1]


def test_nondegeneracy_1d_and_3d():
    assert nondegeneracy_check(parse_polynomial("x1^3+x1^5", 1)).status == "Nondegenerate"
    rep = nondegeneracy_check(parse_polynomial("x1^2+x2^2+x3^2", 3))
    assert rep.status == "Nondegenerate"
    rep2 = nondegeneracy_check(parse_polynomial("x1^2-2*x1*x2+x2^2+x3^4", 3))
    # (x1-x2)^2 + x3^4 is degenerate along the diagonal; the numeric path may
    # confirm exactly (diagonal points are rational) or stay Unknown
    assert rep2.status in ("Degenerate", "Unknown")


def test_nondegeneracy_shift_invariance():
    # multiplying by an even monomial does not change the verdict (for inputs
    # vanishing at the origin, the standing hypothesis for phases)
    rng = random.Random(47)
    checked = 0
    for _ in range(120):
        f = random_polynomial(rng, 2, max_points=3, max_exp=3)
        f = Polynomial(2, {e: c for e, c in f.terms.items() if e != (0, 0)})
        if f.is_zero():
            continue
        p = (rng.randint(0, 1) * 2, rng.randint(0, 1) * 2)
        shifted = f.shift_exponents(p)
        assert nondegeneracy_check(f).status == nondegeneracy_check(shifted).status
        checked += 1
    assert checked >= 80


def test_order_bound_rules():
    assert order_bound(Fraction(5, 4), 1, 2) == 1
    assert order_bound(Fraction(1, 2), 1, 2) == 2
    assert order_bound(Fraction(1), 2, 2) == 2
    assert order_bound(Fraction(1), 3, 3) == 3
    # monotone in m, capped by n
    for n in (2, 3, 4):
        prev = 0
        for m in range(1, n + 1):
            a = order_bound(Fraction(7, 3), m, n)
            assert a >= prev and a <= n
            prev = a
    with pytest.raises(ValueError):
        order_bound(Fraction(1), 0, 2)


def test_distance_product_inequality_and_proportionality():
    # product law for shifted polyhedra, with the exact equality test
    from oscint.zeta import _proportional

    rng = random.Random(53)
    one2 = (1, 1)
    for _ in range(200):
        g = random_polynomial(rng, 2)
        h = random_polynomial(rng, 2)
        if g.is_zero() or h.is_zero():
            continue
        Pxg = polyhedron_of(g.shift_exponents(one2))
        Pxh = polyhedron_of(h.shift_exponents(one2))
        d1 = newton_distance(Pxg, polyhedron_of(h))
        d2 = newton_distance(Pxh, polyhedron_of(g))
        prod = d1 * d2
        assert prod >= 1
        prop, _ = _proportional(Pxg, Pxh)
        assert (prod == 1) == prop


def test_pair_analysis_json():
    pa = analyze_pair(parse_polynomial(QUINTIC, 2), parse_polynomial("x1^2+x1*x2+x2^2", 2))
    d = pa.to_json_dict()
    assert d["d"] == "5/4"
    assert d["m"] == 1
    assert d["orderBound"] == 1
    assert d["signPhiGamma0"] == "Nonnegative"
    assert d["nondegenerate"] == "Nondegenerate"
