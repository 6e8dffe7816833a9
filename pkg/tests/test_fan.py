import itertools
import random
from fractions import Fraction

import pytest

from oscint import linalg
from oscint.fan import (
    Cone,
    Fan,
    common_refinement,
    normal_fan,
    pullback,
    resolution_fan,
    simplicialize,
    unimodularize,
)
from oscint.poly import Polynomial, parse_polynomial
from oscint.polyhedron import build_newton_polyhedron, polyhedron_of

from oracles import random_support


def gens(fan):
    return {c.generators for c in fan.max_cones}


def test_normal_fan_examples():
    F = normal_fan(polyhedron_of(parse_polynomial("x1^5+x2^5", 2)))
    assert set(F.rays) == {(1, 0), (0, 1), (1, 1)}
    assert gens(F) == {((0, 1), (1, 1)), ((1, 0), (1, 1))}
    F.validate()

    F1 = normal_fan(polyhedron_of(parse_polynomial("1", 2)))
    assert gens(F1) == {((0, 1), (1, 0))}

    F2 = normal_fan(polyhedron_of(parse_polynomial("x1^4", 2)))
    assert gens(F2) == {((0, 1), (1, 0))}
    assert set(F2.rays) == {(1, 0), (0, 1)}


def test_normal_fan_cone_dims_match_codims():
    P = polyhedron_of(parse_polynomial("x1^5+x1^6+x2^5", 2))
    F = normal_fan(P)
    cones_by_dim = {}
    for c in F.all_cones():
        cones_by_dim.setdefault(c.dim, set()).add(c.generators)
    # one 2-cone per vertex, one ray per facet, the zero cone for the trivial face
    assert len(cones_by_dim[2]) == len(P.vertices)
    assert len(cones_by_dim[1]) == len(P.facets)
    assert cones_by_dim[0] == {()}


def test_common_refinement_idempotence_and_trivial():
    F = normal_fan(polyhedron_of(parse_polynomial("x1^5+x2^5", 2)))
    assert gens(common_refinement(F, F)) == gens(F)
    T = normal_fan(polyhedron_of(parse_polynomial("1", 2)))
    assert gens(common_refinement(F, T)) == gens(F)


def test_common_refinement_crossing_fans():
    Fa = normal_fan(polyhedron_of(parse_polynomial("x1^2+x2^4", 2)))
    Fb = normal_fan(polyhedron_of(parse_polynomial("x1^4+x2^2", 2)))
    FR = common_refinement(Fa, Fb)
    assert set(FR.rays) == {(1, 0), (2, 1), (1, 2), (0, 1)}
    FR.validate()
    assert FR.refines(Fa) and FR.refines(Fb)
    # the non-unimodular middle wedge picks up (1,1) during resolution
    resolved = unimodularize(simplicialize(FR))
    assert (1, 1) in set(resolved.rays)
    resolved.validate()


def test_simplicialize_2d_unchanged():
    F = normal_fan(polyhedron_of(parse_polynomial("x1^2+x1*x2+x2^3", 2)))
    S = simplicialize(F)
    assert gens(S) == gens(F)


def test_simplicialize_cone_over_square():
    sq = Cone.make([(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)], 3)
    fan = Fan.make([sq], 3)
    S = simplicialize(fan)
    assert S.is_simplicial()
    assert len(S.max_cones) == 2
    shared = set(S.max_cones[0].generators) & set(S.max_cones[1].generators)
    assert len(shared) == 2  # split along a diagonal
    assert all(len(c.generators) == 3 for c in S.max_cones)
    # idempotence
    assert gens(simplicialize(S)) == gens(S)


def test_unimodularize_det2_wedge():
    fan = Fan.make([Cone.make([(1, 0), (1, 2)], 2), Cone.make([(0, 1), (1, 2)], 2)], 2)
    U = unimodularize(fan)
    assert gens(U) == {((1, 0), (1, 1)), ((1, 1), (1, 2)), ((0, 1), (1, 2))}
    assert U.is_unimodular()
    U.validate()
    # unimodular input unchanged
    assert gens(unimodularize(U)) == gens(U)


def test_unimodularize_3d_stellar_point():
    from oscint.fan import _parallelepiped_points

    c = Cone.make([(1, 0, 0), (0, 1, 0), (1, 1, 2)], 3)
    assert c.index() == 2
    pts = _parallelepiped_points(c)
    assert [pt for _, pt in pts] == [(1, 1, 1)]
    fan = Fan.make(
        [c, Cone.make([(1, 0, 0), (0, 0, 1), (1, 1, 2)], 3), Cone.make([(0, 1, 0), (0, 0, 1), (1, 1, 2)], 3)],
        3,
    )
    U = unimodularize(fan)
    assert U.is_unimodular()
    U.validate()


def test_pullback_examples():
    f = parse_polynomial("x1^5+x2^5", 2)
    pd = pullback(f, Cone.make([(1, 1), (0, 1)], 2))
    assert pd.matrix == ((0, 1), (1, 1))
    assert pd.l_vector == (0, 5)
    assert pd.jacobian_exponents == (0, 1)
    assert pd.f_sigma_constant == 1
    assert pd.f_sigma.terms == {(5, 0): 1, (0, 0): 1}

    # identity chart (rows in the deterministic lex order)
    f2 = parse_polynomial("x1^4", 2)
    pd2 = pullback(f2, Cone.make([(1, 0), (0, 1)], 2))
    assert pd2.matrix == ((0, 1), (1, 0))
    assert pd2.l_vector == (0, 4)
    assert pd2.jacobian_exponents == (0, 0)
    assert pd2.f_sigma_constant == 1


def test_pullback_identity_of_polynomials():
    # f(pi(y)) equals y^l * f_sigma(y) as polynomials
    f = parse_polynomial("x1^5+x1^6+x2^5", 2)
    Pf = polyhedron_of(f)
    fan = resolution_fan(Pf)
    for sigma in fan.max_cones:
        pd = pullback(f, sigma, Pf=Pf)
        lhs = f.substitute_exponents(pd.matrix)
        rhs = pd.f_sigma.shift_exponents(tuple(int(l) for l in pd.l_vector))
        assert lhs.terms == rhs.terms


def test_pullback_tilde_support_values():
    f = parse_polynomial("x1^5+x1^6+x2^5", 2)
    phi = parse_polynomial("x1^2+x1*x2+x2^2", 2)
    Pf, Pphi = polyhedron_of(f), polyhedron_of(phi)
    fan = resolution_fan(Pf, Pphi)
    for sigma in fan.max_cones:
        pd = pullback(f, sigma, phi=phi, Pf=Pf, Pphi=Pphi)
        assert pd.l_tilde_vector == tuple(Pphi.support_value(a) for a in pd.matrix)


def _symbolic_jacobian(matrix, n):
    """Jacobian determinant of the monomial map as an exact polynomial."""
    # x_j = prod_k y_k^{A[k][j]}; d x_j / d y_i = A[i][j] * x_j / y_i.
    # Work with the matrix of monomials x_j/y_i scaled by A[i][j]: the
    # determinant is a polynomial since each column shares the x_j factor.
    # Build it directly via permutation expansion at this small size.
    total = Polynomial.zero(n)
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = [False] * n
        # permutation parity
        p = list(perm)
        for i in range(n):
            while p[i] != i:
                j = p[i]
                p[i], p[j] = p[j], p[i]
                sign = -sign
        coeff = 1
        expo = [0] * n
        ok = True
        for i, j in enumerate(perm):  # row i = d/dy_i, column j = x_j
            a = matrix[i][j]
            coeff *= a
            if coeff == 0:
                ok = False
                break
            # x_j / y_i = prod_k y_k^{A[k][j]} with one power of y_i removed
            for k in range(n):
                expo[k] += matrix[k][j]
            expo[i] -= 1
        if not ok or coeff == 0:
            continue
        term = Polynomial(n, {tuple(expo): Fraction(sign * coeff)})
        total = total + term
    return total


def test_jacobian_formula():
    f = parse_polynomial("x1^5+x1^6+x2^5", 2)
    fan = resolution_fan(polyhedron_of(f))
    for sigma in fan.max_cones:
        pd = pullback(f, sigma)
        jac = _symbolic_jacobian([list(r) for r in pd.matrix], 2)
        detA = linalg.det([list(r) for r in pd.matrix])
        assert abs(detA) == 1
        expected = Polynomial(
            2, {tuple(pd.jacobian_exponents): Fraction(1)}
        )
        assert jac.terms == expected.scale(detA).terms or jac.terms == expected.scale(-detA).terms


def test_duality_rays_support_the_dual_face():
    f = parse_polynomial("x1^5+x1^6+x2^5", 2)
    P = polyhedron_of(f)
    for sigma in normal_fan(P).max_cones:
        for a in sigma.generators:
            face = P.face_of_direction(a)
            # the vertex dual to sigma lies on every ray's minimizing face
            dual_vertices = set.intersection(
                *(set(P.face_of_direction(g).vertices) for g in sigma.generators)
            )
            assert dual_vertices <= set(face.vertices)


def test_fan_axioms_and_unimodularity_random():
    rng = random.Random(606)
    cases = 0
    while cases < 200:
        n = rng.choice([2, 2, 2, 3, 3, 4])
        support = random_support(rng, n, max_points=4 if n == 4 else 5)
        P = build_newton_polyhedron(support, n)
        fan = normal_fan(P)
        resolved = unimodularize(simplicialize(fan))
        assert resolved.is_unimodular()
        assert resolved.refines(fan)
        resolved.validate()
        cases += 1


def test_pullback_divisibility_and_dual_vertex_random():
    rng = random.Random(707)
    cases = 0
    while cases < 200:
        n = rng.choice([2, 2, 3])
        terms = {}
        for e in random_support(rng, n, max_points=4, max_exp=5):
            terms[e] = Fraction(rng.randint(1, 5))
        f = Polynomial(n, terms)
        P = polyhedron_of(f)
        fan = resolution_fan(P)
        for sigma in fan.max_cones:
            pd = pullback(f, sigma, Pf=P)  # asserts exact divisibility inside
            duals = [
                v
                for v in P.vertices
                if all(
                    sum(a * x for a, x in zip(g, v)) == l
                    for g, l in zip(pd.matrix, pd.l_vector)
                )
            ]
            assert len(duals) == 1
            assert pd.f_sigma_constant == f.coefficient(duals[0])
        cases += 1


def test_fan_size_cap():
    from oscint.fan import FanSizeError, MAX_CONES

    with pytest.raises(FanSizeError):
        Fan.make(
            [Cone.make([(1, k), (1, k + 1)], 2) for k in range(MAX_CONES + 1)], 2
        )


def test_fan_json_dump():
    F = normal_fan(polyhedron_of(parse_polynomial("x1^5+x2^5", 2)))
    d = F.to_json_dict()
    assert sorted(map(tuple, d["rays"])) == [(0, 1), (1, 0), (1, 1)]
    assert all(len(c) == 2 for c in d["maxCones"])
