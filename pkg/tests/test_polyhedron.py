import random
from fractions import Fraction

import pytest

from oscint import linalg
from oscint.poly import parse_polynomial
from oscint.polyhedron import (
    DimensionLimitError,
    EmptyNewtonPolyhedronError,
    PointOutsideError,
    build_newton_polyhedron,
    polyhedron_of,
)

from oracles import brute_force_facets, random_support


def facet_set(P):
    return {(f.normal, f.offset) for f in P.facets}


def test_build_quintic_pair_example():
    P = build_newton_polyhedron([(5, 0), (6, 0), (0, 5)])
    assert set(P.vertices) == {(5, 0), (0, 5)}
    assert facet_set(P) == {((1, 1), Fraction(5)), ((1, 0), Fraction(0)), ((0, 1), Fraction(0))}


def test_build_single_point():
    P = build_newton_polyhedron([(4, 0)], 2)
    assert set(P.vertices) == {(4, 0)}
    assert facet_set(P) == {((1, 0), Fraction(4)), ((0, 1), Fraction(0))}


def test_build_origin_gives_orthant():
    P = build_newton_polyhedron([(0, 0, 0)], 3)
    assert set(P.vertices) == {(0, 0, 0)}
    assert facet_set(P) == {
        ((1, 0, 0), Fraction(0)),
        ((0, 1, 0), Fraction(0)),
        ((0, 0, 1), Fraction(0)),
    }


def test_empty_support_rejected():
    with pytest.raises(EmptyNewtonPolyhedronError):
        build_newton_polyhedron([], 2)


def test_desk_scale_limits():
    with pytest.raises(DimensionLimitError):
        build_newton_polyhedron([(0,) * 7], 7)
    with pytest.raises(DimensionLimitError):
        build_newton_polyhedron([(k, 0) for k in range(201)], 2)


def test_support_value_examples():
    P = build_newton_polyhedron([(5, 0), (6, 0), (0, 5)])
    assert P.support_value((1, 1)) == 5
    assert P.support_value((0, 0)) == 0
    Q = build_newton_polyhedron([(4, 0)], 2)
    assert Q.support_value((0, 1)) == 0
    with pytest.raises(ValueError):
        P.support_value((-1, 0))


def test_face_of_direction_examples():
    P = build_newton_polyhedron([(5, 0), (6, 0), (0, 5)])
    face = P.face_of_direction((1, 1))
    assert face.compact and face.dim == 1
    assert set(face.vertices) == {(5, 0), (0, 5)}
    triv = P.face_of_direction((0, 0))
    assert triv.dim == 2 and not triv.compact
    Q = build_newton_polyhedron([(4, 0)], 2)
    e = Q.face_of_direction((1, 0))
    assert e.dim == 1 and not e.compact and e.vertices == ((4, 0),)


def test_enumerate_faces_counts():
    P = polyhedron_of(parse_polynomial("x1^5+x2^5", 2))
    faces = P.enumerate_faces()
    dims = sorted((f.dim, f.compact) for f in faces)
    assert dims == [(0, True), (0, True), (1, False), (1, False), (1, True), (2, False)]

    R = polyhedron_of(parse_polynomial("1", 2))
    faces = R.enumerate_faces()
    dims = sorted((f.dim, f.compact) for f in faces)
    assert dims == [(0, True), (1, False), (1, False), (2, False)]

    Q = polyhedron_of(parse_polynomial("x1^4", 2))
    assert [f.dim for f in Q.newton_diagram()] == [0]


def test_newton_diagram_examples():
    P = polyhedron_of(parse_polynomial("x1^5+x1^6+x2^5", 2))
    diagram = P.newton_diagram()
    assert sorted(f.dim for f in diagram) == [0, 0, 1]
    assert [f.dim for f in polyhedron_of(parse_polynomial("1", 2)).newton_diagram()] == [0]
    assert [
        (f.dim, f.vertices) for f in polyhedron_of(parse_polynomial("x1^2*x2^2", 2)).newton_diagram()
    ] == [(0, ((2, 2),))]


def test_is_convenient_examples():
    assert polyhedron_of(parse_polynomial("x1^5+x2^5", 2)).is_convenient()
    assert not polyhedron_of(parse_polynomial("x1^4", 2)).is_convenient()
    assert polyhedron_of(parse_polynomial("1", 2)).is_convenient()


def test_rho_examples():
    P = polyhedron_of(parse_polynomial("x1^5+x1^6+x2^5", 2))
    assert P.rho((Fraction(5, 2), Fraction(5, 2))) == 1
    assert P.rho((10, 10)) == 0
    assert P.rho((5, 0)) == 2
    with pytest.raises(PointOutsideError):
        P.rho((1, 1))


def test_hull_against_brute_force_oracle():
    rng = random.Random(101)
    for _ in range(200):
        n = rng.choice([2, 2, 3, 3, 4])
        support = random_support(rng, n)
        P = build_newton_polyhedron(support, n)
        assert facet_set(P) == brute_force_facets(support, n)
        # every support point satisfies every facet
        for a in support:
            assert P.contains(a)


def test_support_value_oracle_and_vertices():
    rng = random.Random(202)
    for _ in range(200):
        n = rng.choice([2, 3, 4])
        support = random_support(rng, n)
        P = build_newton_polyhedron(support, n)
        for _ in range(10):
            a = tuple(rng.randint(0, 5) for _ in range(n))
            direct = min(sum(x * y for x, y in zip(a, pt)) for pt in support)
            assert P.support_value(a) == direct
        # vertices lie in the support and have full active rank
        assert set(P.vertices) <= set(support)
        for v in P.vertices:
            active = [f.normal for f in P.facets if f.is_tight(v)]
            assert linalg.rank(active) == n


def test_recession_cone_is_positive_orthant():
    rng = random.Random(303)
    for _ in range(50):
        n = rng.choice([2, 3])
        P = build_newton_polyhedron(random_support(rng, n), n)
        for f in P.facets:
            assert all(x >= 0 for x in f.normal)
        for v in P.vertices:
            for i in range(n):
                shifted = list(v)
                shifted[i] += 10**6
                assert P.contains(shifted)


def test_rho_facet_count_cross_check_low_dim():
    # codimension equals the facet count at boundary points for n <= 3
    rng = random.Random(404)
    for _ in range(100):
        n = rng.choice([2, 3])
        P = build_newton_polyhedron(random_support(rng, n), n)
        for face in P.enumerate_faces():
            if not face.vertices or not face.active:
                continue
            # centroid of the face's vertices lies in its relative interior
            k = len(face.vertices)
            pt = tuple(sum(Fraction(v[i]) for v in face.vertices) / k for i in range(P.n))
            count = sum(1 for f in P.facets if f.is_tight(pt))
            assert P.rho(pt) == min(count, n)


def test_face_lattice_closed_under_intersection():
    rng = random.Random(505)
    for _ in range(60):
        n = rng.choice([2, 3])
        P = build_newton_polyhedron(random_support(rng, n), n)
        faces = P.enumerate_faces()
        keys = {f.active for f in faces}
        for f in faces:
            for g in faces:
                merged = P._face_from_active(f.active | g.active)
                if merged is not None:
                    assert merged.active in keys
                    # dim monotonicity along the lattice
                    assert merged.dim <= min(f.dim, g.dim)


def test_json_round_trip_schema():
    P = polyhedron_of(parse_polynomial("x1^5+x1^6+x2^5", 2))
    d = P.to_json_dict()
    assert d["n"] == 2
    assert [5, 0] in d["vertices"]
    assert {"a": [1, 1], "l": "5"} in d["facets"]
