"""Rational polyhedral fans in the positive orthant and the toric resolution
data derived from them: the dual fan of a Newton polyhedron, common
refinements, pulling triangulations, unimodularization by stellar
subdivision, and the monomial-map pullback exponents.

All cone arithmetic is exact.  Fans here always have support R_+^n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Sequence

from . import linalg
from .poly import Exponent, Polynomial
from .polyhedron import NewtonPolyhedron, polyhedron_of

MAX_CONES = 10**4

IVec = tuple[int, ...]


class FanSizeError(ValueError):
    """Fan grew past the documented desk-scale cap."""


_index_memo: dict[tuple, int] = {}


def _dot(a: Sequence, b: Sequence) -> Fraction:
    return sum(Fraction(x) * Fraction(y) for x, y in zip(a, b))


@dataclass(frozen=True)
class Cone:
    """Strongly convex rational cone inside R_+^n, by primitive generators."""

    generators: tuple[IVec, ...]
    n: int

    @staticmethod
    def make(rays: Iterable[Sequence[int]], n: int) -> "Cone":
        prim = sorted({linalg.primitive(r) for r in rays if any(x != 0 for x in r)})
        return Cone(tuple(prim), n)

    @property
    def dim(self) -> int:
        return linalg.rank(self.generators)

    def is_simplicial(self) -> bool:
        return len(self.generators) == self.dim

    def index(self) -> int:
        """Lattice index of the subgroup spanned by the generators (simplicial).

        1 means the skeleton extends to a lattice basis.
        """
        cached = _index_memo.get(self.generators)
        if cached is not None:
            return cached
        assert self.is_simplicial()
        if not self.generators:
            out = 1
        else:
            _, d, _ = linalg.smith_normal_form([list(g) for g in self.generators])
            out = 1
            for i in range(len(self.generators)):
                out *= d[i][i]
            out = abs(out)
        _index_memo[self.generators] = out
        return out

    def halfspaces(self) -> tuple[tuple[IVec, ...], tuple[IVec, ...]]:
        """(inequalities, equalities): x in cone iff <b,x> >= 0 and <c,x> = 0."""
        return _cone_halfspaces(self.generators, self.n)

    def contains(self, x: Sequence) -> bool:
        ineqs, eqs = self.halfspaces()
        return all(_dot(b, x) >= 0 for b in ineqs) and all(_dot(c, x) == 0 for c in eqs)

    def coefficients_of(self, x: Sequence) -> Optional[tuple[Fraction, ...]]:
        """Coordinates of x in the generator basis when simplicial and x in cone."""
        assert self.is_simplicial()
        if not self.generators:
            return None
        cols = [[Fraction(g[i]) for g in self.generators] for i in range(self.n)]
        sol = linalg.solve(cols, [Fraction(v) for v in x])
        if sol is None or any(c < 0 for c in sol):
            return None
        return sol

    def faces(self) -> list["Cone"]:
        """All faces, the cone itself and the zero cone included."""
        if self.is_simplicial():
            subs = itertools.chain.from_iterable(
                itertools.combinations(self.generators, k)
                for k in range(len(self.generators) + 1)
            )
            return [Cone(tuple(sorted(s)), self.n) for s in subs]
        ineqs, _ = self.halfspaces()
        facecuts = []
        for b in ineqs:
            kept = tuple(sorted(g for g in self.generators if _dot(b, g) == 0))
            facecuts.append(kept)
        # close under intersection of facet cuts
        all_sets = {self.generators}
        frontier = set(facecuts)
        while frontier:
            all_sets |= frontier
            nxt = set()
            for a, b in itertools.product(frontier, all_sets):
                inter = tuple(sorted(set(a) & set(b)))
                if inter not in all_sets:
                    nxt.add(inter)
            frontier = nxt
        return [Cone(s, self.n) for s in all_sets]

    def facet_cones(self) -> list["Cone"]:
        return [F for F in self.faces() if F.dim == self.dim - 1]

    def intersect(self, other: "Cone") -> "Cone":
        ineqs1, eqs1 = self.halfspaces()
        ineqs2, eqs2 = other.halfspaces()
        rays = _extreme_rays(
            list(ineqs1) + list(ineqs2), list(eqs1) + list(eqs2), self.n
        )
        return Cone.make(rays, self.n)


@lru_cache(maxsize=4096)
def _cone_halfspaces(generators: tuple[IVec, ...], n: int):
    if not generators:
        eye = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        return tuple(), tuple(eye)
    span_eqs = [linalg.primitive(v) for v in linalg.nullspace(list(generators), n)]
    k = n - len(span_eqs)
    if k == 0:
        return tuple(), tuple(span_eqs)
    basis = linalg.nullspace(span_eqs, n) if span_eqs else [
        tuple(Fraction(1 if j == i else 0) for j in range(n)) for i in range(n)
    ]
    # generators in span coordinates
    bmat = [list(b) for b in basis]  # k vectors in R^n
    gen_coords = []
    for g in generators:
        sol = linalg.solve([[bmat[j][i] for j in range(k)] for i in range(n)], list(g))
        assert sol is not None
        gen_coords.append(sol)
    # facet normals of the cone in span coordinates = extreme rays of its dual
    duals = _extreme_rays([tuple(gc) for gc in gen_coords], [], k)
    ineqs = []
    for d in duals:
        vec = [sum(Fraction(d[j]) * bmat[j][i] for j in range(k)) for i in range(n)]
        ineqs.append(linalg.primitive(vec))
    return tuple(sorted(ineqs)), tuple(sorted(span_eqs))


def _extreme_rays(ineqs: list, eqs: list, n: int) -> list[IVec]:
    """Extreme rays of the pointed cone {x : ineqs . x >= 0, eqs . x = 0}.

    Brute force over (k-1)-subsets of tight inequalities inside the equality
    subspace; exact and adequate at desk scale.
    """
    if n == 0:
        return []
    if eqs:
        basis = linalg.nullspace(eqs, n)
        if not basis:
            return []
        k = len(basis)
        bmat = [list(b) for b in basis]
        red_ineqs = [
            tuple(sum(Fraction(q[i]) * bmat[j][i] for i in range(n)) for j in range(k))
            for q in ineqs
        ]
        rays_red = _extreme_rays(red_ineqs, [], k)
        out = []
        for r in rays_red:
            vec = [sum(Fraction(r[j]) * bmat[j][i] for j in range(k)) for i in range(n)]
            out.append(linalg.primitive(vec))
        return sorted(set(out))
    if n == 1:
        for sign in (1, -1):
            if all(Fraction(q[0]) * sign >= 0 for q in ineqs):
                return [(sign,)]
        return []
    rays = set()
    for subset in itertools.combinations(range(len(ineqs)), n - 1):
        null = linalg.nullspace([ineqs[i] for i in subset], n)
        if len(null) != 1:
            continue
        for sign in (1, -1):
            cand = tuple(sign * x for x in null[0])
            if all(_dot(q, cand) >= 0 for q in ineqs):
                tight = [ineqs[i] for i in range(len(ineqs)) if _dot(ineqs[i], cand) == 0]
                if linalg.rank(tight) == n - 1:
                    rays.add(linalg.primitive(cand))
                break
    return sorted(rays)


# ---------------------------------------------------------------------------
# Fans
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Fan:
    """Face-closed collection of cones with support R_+^n, kept by max cones."""

    n: int
    max_cones: tuple[Cone, ...]

    @staticmethod
    def make(max_cones: Iterable[Cone], n: int) -> "Fan":
        uniq = {c.generators: c for c in max_cones}
        cones = sorted(uniq.values(), key=lambda c: c.generators)
        if len(cones) > MAX_CONES:
            raise FanSizeError(f"fan with {len(cones)} max cones exceeds cap {MAX_CONES}")
        return Fan(n, tuple(cones))

    def all_cones(self) -> list[Cone]:
        seen: dict[tuple, Cone] = {}
        for c in self.max_cones:
            for face in c.faces():
                seen.setdefault(face.generators, face)
        return sorted(seen.values(), key=lambda c: (c.dim, c.generators))

    @property
    def rays(self) -> list[IVec]:
        out = set()
        for c in self.max_cones:
            out.update(c.generators)
        return sorted(out)

    def is_simplicial(self) -> bool:
        return all(c.is_simplicial() for c in self.max_cones)

    def is_unimodular(self) -> bool:
        return all(c.is_simplicial() and c.index() == 1 for c in self.max_cones)

    def cone_containing(self, x: Sequence) -> Cone | None:
        for c in self.max_cones:
            if c.contains(x):
                return c
        return None

    def refines(self, other: "Fan") -> bool:
        return all(
            any(_cone_inside(c, big) for big in other.max_cones) for c in self.max_cones
        )

    def to_json_dict(self) -> dict:
        rays = self.rays
        idx = {r: i for i, r in enumerate(rays)}
        return {
            "rays": [list(r) for r in rays],
            "maxCones": [[idx[g] for g in c.generators] for c in self.max_cones],
        }

    # -- validation --------------------------------------------------------

    def validate(self) -> None:
        """Assert the fan axioms and the support R_+^n; raises on violation."""
        assert self.max_cones, "empty fan"
        for c in self.max_cones:
            assert all(all(x >= 0 for x in g) for g in c.generators), "ray leaves R_+^n"
        full = [c for c in self.max_cones if c.dim == self.n]
        assert full == list(self.max_cones), "max cones must be full-dimensional"
        # pairwise intersections are faces of each
        for a, b in itertools.combinations(self.max_cones, 2):
            inter = a.intersect(b)
            shared = Cone(tuple(sorted(set(a.generators) & set(b.generators))), self.n)
            assert set(inter.generators) == set(shared.generators), (
                f"intersection of {a.generators} and {b.generators} is not the shared face"
            )
        # support covers R_+^n: simplex-slice volumes add up (needs simplicial)
        if self.is_simplicial():
            total = Fraction(0)
            for c in self.max_cones:
                verts = [[Fraction(x, sum(g)) for x in g] for g in c.generators]
                total += abs(linalg.det(verts))
            unit = Fraction(1)
            assert total == unit, f"slice volumes sum to {total}, expected 1"


def _cone_inside(small: Cone, big: Cone) -> bool:
    return all(big.contains(g) for g in small.generators)


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def normal_fan(P: NewtonPolyhedron) -> Fan:
    """Dual fan of the polyhedron: one cone per face, spanned by the normals
    of the facets containing it; max cones are dual to vertices."""
    max_cones = []
    for v in P.vertices:
        normals = [f.normal for f in P.facets if f.is_tight(v)]
        max_cones.append(Cone.make(normals, P.n))
    return Fan.make(max_cones, P.n)


def common_refinement(F1: Fan, F2: Fan) -> Fan:
    """Fan of pairwise intersections (Theorem-style refinement of two fans)."""
    assert F1.n == F2.n
    out = []
    for a in F1.max_cones:
        for b in F2.max_cones:
            inter = a.intersect(b)
            if inter.dim == F1.n:
                out.append(inter)
    return Fan.make(out, F1.n)


def _pull_triangulate(cone: Cone) -> list[Cone]:
    """Pulling triangulation anchored at the lexicographically smallest ray.

    Deterministic and self-consistent on shared faces: the rule depends only
    on the face being subdivided.
    """
    if cone.is_simplicial():
        return [cone]
    anchor = min(cone.generators)
    pieces = []
    for facet in cone.facet_cones():
        if anchor in facet.generators:
            continue
        for simplex in _pull_triangulate(facet):
            pieces.append(Cone.make(simplex.generators + (anchor,), cone.n))
    return pieces


def simplicialize(F: Fan) -> Fan:
    """Simplicial subdivision with no new rays (pulling triangulation)."""
    out = []
    for c in F.max_cones:
        out.extend(_pull_triangulate(c))
    return Fan.make(out, F.n)


def _parallelepiped_points(cone: Cone) -> list[tuple[tuple[Fraction, ...], IVec]]:
    """Nonzero lattice points of the half-open generator parallelepiped.

    Returned as (coefficient vector, point).  Enumerated through the residues
    of Z^n modulo the generator lattice (Smith normal form), so the cost is
    the index itself rather than index^n.
    """
    gens = [list(g) for g in cone.generators]
    k = len(gens)
    assert k == cone.n, "parallelepiped enumeration expects a full-dimensional cone"
    # lattice points p = M lambda with M = generators as columns, lambda in [0,1)^k.
    # Residues of Z^k mod M Z^k come from the Smith form U M V = D as
    # lambda = V D^{-1} c, c in prod [0, d_i), reduced mod 1.
    m = [[gens[i][j] for i in range(k)] for j in range(cone.n)]
    _, d, v = linalg.smith_normal_form(m)
    diag = [d[i][i] for i in range(k)]
    if all(x == 1 for x in diag):
        return []
    uniq: dict[tuple, IVec] = {}
    for combo in itertools.product(*(range(x) for x in diag)):
        lam = [
            sum(Fraction(v[j][i] * combo[i], diag[i]) for i in range(k))
            for j in range(k)
        ]
        lam = [x - (x.numerator // x.denominator) for x in lam]  # reduce mod 1
        if all(x == 0 for x in lam):
            continue
        point = tuple(sum(lam[i] * gens[i][j] for i in range(k)) for j in range(cone.n))
        assert all(x.denominator == 1 for x in point)
        uniq[tuple(lam)] = tuple(int(x) for x in point)
    return sorted(uniq.items())


def _stellar_subdivide(fan: Fan, w: IVec) -> Fan:
    """Stellar subdivision of the whole fan at the primitive ray w."""
    import numpy as np

    wf = np.array(w, dtype=float)
    out = []
    for c in fan.max_cones:
        # float prefilter: most cones clearly miss w, skip the exact solve
        try:
            lam_f = np.linalg.solve(np.array(c.generators, dtype=float).T, wf)
            if lam_f.min() < -1e-6:
                out.append(c)
                continue
        except np.linalg.LinAlgError:
            pass
        lam = c.coefficients_of(w)
        if lam is None:
            out.append(c)
            continue
        support = [i for i, x in enumerate(lam) if x != 0]
        for i in support:
            gens = tuple(g for j, g in enumerate(c.generators) if j != i) + (w,)
            out.append(Cone.make(gens, fan.n))
    return Fan.make(out, fan.n)


def unimodularize(F: Fan) -> Fan:
    """Refine a simplicial fan until every max cone extends to a lattice basis.

    Repeatedly picks the worst cone, takes its minimal fundamental-domain
    lattice point (least coefficient sum, ties lexicographic), and stellarly
    subdivides the whole fan there.  Each affected cone's index strictly
    drops, so the multiset of indices is well-founded and the loop ends.
    """
    assert F.is_simplicial(), "unimodularize expects a simplicial fan"
    fan = F
    while True:
        worst = None
        for c in fan.max_cones:
            idx = c.index()
            if idx > 1 and (worst is None or idx > worst[0]):
                worst = (idx, c)
        if worst is None:
            return fan
        idx, cone = worst
        pts = _parallelepiped_points(cone)
        assert pts, "cone with index > 1 must contain interior lattice points"
        lam, point = min(pts, key=lambda t: (sum(t[0]), t[1]))
        w = linalg.primitive(point)
        new_fan = _stellar_subdivide(fan, w)
        # progress: every split child of the worst cone has strictly smaller index
        for child in new_fan.max_cones:
            if _cone_inside(child, cone) and child.generators != cone.generators:
                assert child.index() < idx
        fan = new_fan


# ---------------------------------------------------------------------------
# Monomial map pullback data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PullbackData:
    """Exponent data of the monomial chart attached to a full-dimensional cone.

    rows of ``matrix`` are the ordered skeleton vectors; the chart map sends
    y to x with x_j = prod_k y_k^{matrix[k][j]}.
    """

    cone: Cone
    matrix: tuple[IVec, ...]
    l_vector: tuple[Fraction, ...]
    l_tilde_vector: Optional[tuple[Fraction, ...]]
    jacobian_exponents: tuple[int, ...]
    f_sigma_constant: Fraction
    f_sigma: Polynomial

    def to_json_dict(self) -> dict:
        from .poly import format_rational

        out = {
            "matrix": [list(r) for r in self.matrix],
            "lVector": [format_rational(x) for x in self.l_vector],
            "jacobianExponents": list(self.jacobian_exponents),
            "fSigmaConstant": format_rational(self.f_sigma_constant),
            "fSigma": str(self.f_sigma),
        }
        if self.l_tilde_vector is not None:
            out["lTildeVector"] = [format_rational(x) for x in self.l_tilde_vector]
        return out


def pullback(
    f: Polynomial,
    sigma: Cone,
    phi: Polynomial | None = None,
    Pf: NewtonPolyhedron | None = None,
    Pphi: NewtonPolyhedron | None = None,
) -> PullbackData:
    """Pullback exponents of f (and optionally phi) under the chart of sigma.

    sigma must be full-dimensional and simplicial (from the unimodularized
    fan).  Asserts the exact divisibility of f by the monomial prefactor.
    """
    n = f.n
    if sigma.dim != n:
        raise ValueError("pullback requires a full-dimensional cone")
    if Pf is None:
        Pf = polyhedron_of(f)
    rows = tuple(sorted(sigma.generators))
    l_vec = tuple(Pf.support_value(a) for a in rows)
    l_tilde = None
    if phi is not None:
        if Pphi is None:
            Pphi = polyhedron_of(phi)
        l_tilde = tuple(Pphi.support_value(a) for a in rows)
    jac = tuple(sum(a) - 1 for a in rows)

    assert all(l.denominator == 1 for l in l_vec)
    transformed = f.substitute_exponents(rows)
    shifted: dict[Exponent, Fraction] = {}
    for e, c in transformed.terms.items():
        ne = tuple(k - int(l) for k, l in zip(e, l_vec))
        assert all(v >= 0 for v in ne), "pullback must divide exactly"
        shifted[ne] = shifted.get(ne, Fraction(0)) + c
    f_sigma = Polynomial(n, shifted)
    const = f_sigma.coefficient((0,) * n)
    assert const != 0, "chart constant must be nonzero for the phase polyhedron"
    return PullbackData(sigma, rows, l_vec, l_tilde, jac, const, f_sigma)


def resolution_fan(Pf: NewtonPolyhedron, Pphi: NewtonPolyhedron | None = None) -> Fan:
    """Unimodularized simplicial subdivision of the dual fan (refined with the
    amplitude's dual fan when given)."""
    fan = normal_fan(Pf)
    if Pphi is not None:
        fan = common_refinement(fan, normal_fan(Pphi))
    return unimodularize(simplicialize(fan))
