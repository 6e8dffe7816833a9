"""Exact Newton polyhedra: conv(support) + R_+^n with full face lattice.

The hull is computed in homogenized form: the polyhedron with recession cone
R_+^n is the slice {x0 = 1} of the cone over {(1, a) : a in support} and
{(0, e_i)}.  Facets of that cone are the extreme rays of its dual cone, found
by the double description method with exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from . import linalg
from .poly import Exponent, Polynomial, format_rational

MAX_DIMENSION = 6
MAX_SUPPORT = 200


class EmptyNewtonPolyhedronError(ValueError):
    """The support is empty; the analyses here require a nonempty diagram."""


class DimensionLimitError(ValueError):
    """Input exceeds the documented desk-scale bounds."""


class PointOutsideError(ValueError):
    """Queried point lies outside the polyhedron."""


@dataclass(frozen=True)
class Facet:
    """Valid inequality <normal, x> >= offset, tight on an (n-1)-face."""

    normal: tuple[int, ...]
    offset: Fraction

    def value(self, point: Sequence) -> Fraction:
        return sum(Fraction(a) * Fraction(x) for a, x in zip(self.normal, point))

    def is_tight(self, point: Sequence) -> bool:
        return self.value(point) == self.offset


@dataclass(frozen=True)
class Face:
    """A face of a NewtonPolyhedron.

    ``active`` are the indices of the facets containing the face; ``rec``
    the coordinate axes spanning its recession cone.  The trivial face has
    empty ``active``.
    """

    polyhedron: "NewtonPolyhedron"
    active: frozenset[int]
    vertices: tuple[Exponent, ...]
    rec: frozenset[int]
    dim: int
    compact: bool

    def contains(self, point: Sequence) -> bool:
        point = [Fraction(x) for x in point]
        P = self.polyhedron
        for k, facet in enumerate(P.facets):
            v = facet.value(point)
            if v < facet.offset:
                return False
            if k in self.active and v != facet.offset:
                return False
        return True

    def key(self) -> frozenset[int]:
        return self.active

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "compact": self.compact,
            "vertices": [list(v) for v in sorted(self.vertices)],
            "active": sorted(self.active),
        }


@dataclass(frozen=True)
class NewtonPolyhedron:
    n: int
    vertices: tuple[Exponent, ...]
    facets: tuple[Facet, ...]

    # -- queries -----------------------------------------------------------

    def contains(self, point: Sequence) -> bool:
        point = [Fraction(x) for x in point]
        return all(f.value(point) >= f.offset for f in self.facets)

    def support_value(self, a: Sequence[int]) -> Fraction:
        """l(a) = min over the polyhedron of <a, .>, finite for a >= 0."""
        a = tuple(int(x) for x in a)
        if any(x < 0 for x in a):
            raise ValueError("support direction must be componentwise nonnegative")
        return min(sum(ai * vi for ai, vi in zip(a, v)) for v in self.vertices)

    def face_of_direction(self, a: Sequence[int]) -> Face:
        """The face where <a, .> attains its minimum; a = 0 gives the trivial face."""
        a = tuple(int(x) for x in a)
        if any(x < 0 for x in a):
            raise ValueError("support direction must be componentwise nonnegative")
        if all(x == 0 for x in a):
            return self.trivial_face()
        l = self.support_value(a)
        verts = tuple(v for v in self.vertices if sum(ai * vi for ai, vi in zip(a, v)) == l)
        rec = frozenset(i for i in range(self.n) if a[i] == 0)
        return self._make_face(verts, rec)

    def trivial_face(self) -> Face:
        return self._make_face(self.vertices, frozenset(range(self.n)))

    def _make_face(self, verts: tuple[Exponent, ...], rec: frozenset[int]) -> Face:
        active = frozenset(
            k
            for k, f in enumerate(self.facets)
            if all(f.is_tight(v) for v in verts) and all(f.normal[i] == 0 for i in rec)
        )
        dim = self.n - linalg.rank([self.facets[k].normal for k in active])
        return Face(self, active, tuple(sorted(verts)), rec, dim, not rec)

    def _face_from_active(self, active: Iterable[int]) -> Face | None:
        """Closure of a facet subset: the face cut by those hyperplanes, or None."""
        active = set(active)
        verts = tuple(
            v for v in self.vertices if all(self.facets[k].is_tight(v) for k in active)
        )
        if not verts:
            return None
        rec = frozenset(
            i for i in range(self.n) if all(self.facets[k].normal[i] == 0 for k in active)
        )
        return self._make_face(verts, rec)

    def enumerate_faces(self) -> list[Face]:
        """All nonempty faces (trivial face included, empty face excluded)."""
        found: dict[frozenset[int], Face] = {}
        triv = self.trivial_face()
        found[triv.key()] = triv
        queue = []
        for k in range(len(self.facets)):
            f = self._face_from_active({k})
            if f is not None and f.key() not in found:
                found[f.key()] = f
                queue.append(f)
        # close under pairwise intersection
        changed = True
        while changed:
            changed = False
            faces = list(found.values())
            for i in range(len(faces)):
                for j in range(i + 1, len(faces)):
                    merged = faces[i].active | faces[j].active
                    if merged in found:
                        continue
                    f = self._face_from_active(merged)
                    if f is not None and f.key() not in found:
                        found[f.key()] = f
                        changed = True
        return sorted(
            found.values(), key=lambda f: (-f.dim, sorted(f.active), f.vertices)
        )

    def newton_diagram(self) -> list[Face]:
        """The compact faces (their union is the Newton diagram)."""
        return [f for f in self.enumerate_faces() if f.compact]

    def is_convenient(self) -> bool:
        """True iff the diagram touches every coordinate axis."""
        for i in range(self.n):
            if not any(all(v[j] == 0 for j in range(self.n) if j != i) for v in self.vertices):
                return False
        return True

    def rho(self, point: Sequence) -> int:
        """Codimension of the face whose relative interior holds the point."""
        point = [Fraction(x) for x in point]
        if not self.contains(point):
            raise PointOutsideError(f"point {point} is outside the polyhedron")
        active = [f.normal for f in self.facets if f.is_tight(point)]
        return linalg.rank(active)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "vertices": [list(v) for v in self.vertices],
            "facets": [
                {"a": list(f.normal), "l": format_rational(f.offset)} for f in self.facets
            ],
        }


# -- construction ------------------------------------------------------------


def _dual_extreme_rays(generators: list[tuple[int, ...]], dim: int) -> list[tuple[int, ...]]:
    """Extreme rays of {y : <g, y> >= 0 for all g}, g spanning R^dim.

    Incremental double description; the first ``dim`` generators must be
    linearly independent (the caller arranges this).
    """
    seed = generators[:dim]
    inv = linalg.invert(seed)
    assert inv is not None, "seed generators must be linearly independent"
    # columns of the inverse are the rays of the seeded simplicial cone
    rays = [linalg.primitive([inv[i][j] for i in range(dim)]) for j in range(dim)]

    processed = list(seed)
    for g in generators[dim:]:
        vals = {r: sum(gi * ri for gi, ri in zip(g, r)) for r in rays}
        neg = [r for r in rays if vals[r] < 0]
        if not neg:
            processed.append(g)
            continue
        pos = [r for r in rays if vals[r] > 0]
        zero = [r for r in rays if vals[r] == 0]
        tight = {
            r: frozenset(
                i for i, h in enumerate(processed) if sum(hi * ri for hi, ri in zip(h, r)) == 0
            )
            for r in rays
        }
        new_rays = []
        for u in pos:
            for w in neg:
                common = tight[u] & tight[w]
                adjacent = not any(
                    v is not u and v is not w and common <= tight[v] for v in rays
                )
                if not adjacent:
                    continue
                combo = [vals[u] * wi - vals[w] * ui for ui, wi in zip(u, w)]
                new_rays.append(linalg.primitive(combo))
        rays = pos + zero + [r for r in new_rays if r not in pos and r not in zero]
        # dedupe while keeping order
        seen = set()
        unique = []
        for r in rays:
            if r not in seen:
                seen.add(r)
                unique.append(r)
        rays = unique
        processed.append(g)
    return rays


def build_newton_polyhedron(support: Iterable[Exponent], dimension: int | None = None) -> NewtonPolyhedron:
    """Exact vertex/facet description of conv(support) + R_+^n."""
    support = [tuple(int(k) for k in a) for a in support]
    if not support:
        raise EmptyNewtonPolyhedronError("empty support has no Newton polyhedron")
    n = dimension if dimension is not None else len(support[0])
    if any(len(a) != n for a in support):
        raise ValueError("support points disagree with the ambient dimension")
    if any(k < 0 for a in support for k in a):
        raise ValueError("support points must be componentwise nonnegative")
    if n > MAX_DIMENSION:
        raise DimensionLimitError(f"dimension {n} exceeds the supported bound {MAX_DIMENSION}")
    if len(support) > MAX_SUPPORT:
        raise DimensionLimitError(f"support size {len(support)} exceeds the bound {MAX_SUPPORT}")

    support = sorted(set(support))
    # homogenized generators: seed = (1, a0) then the recession rays (0, e_i)
    gens: list[tuple[int, ...]] = [(1,) + support[0]]
    for i in range(n):
        gens.append(tuple(1 if j == i + 1 else 0 for j in range(n + 1)))
    for a in support[1:]:
        gens.append((1,) + a)

    facets = []
    for ray in _dual_extreme_rays(gens, n + 1):
        c0, a = ray[0], ray[1:]
        if all(x == 0 for x in a):
            continue  # the at-infinity facet x0 >= 0
        assert all(x >= 0 for x in a), f"facet normal {a} leaves the positive orthant"
        g = 0
        for x in a:
            g = gcd(g, x)
        facets.append(Facet(tuple(x // g for x in a), Fraction(-c0, g)))
    facets.sort(key=lambda f: (f.normal, f.offset))

    vertices = []
    for a in support:
        active = [f.normal for f in facets if f.is_tight(a)]
        if linalg.rank(active) == n:
            vertices.append(a)
    P = NewtonPolyhedron(n, tuple(sorted(vertices)), tuple(facets))
    assert all(P.contains(a) for a in support)
    return P


def polyhedron_of(p: Polynomial) -> NewtonPolyhedron:
    """Newton polyhedron of a polynomial's Taylor support."""
    if p.is_zero():
        raise EmptyNewtonPolyhedronError("the zero polynomial has no Newton polyhedron")
    return build_newton_polyhedron(sorted(p.support), p.n)


def restrict_to_face(p: Polynomial, face: Face) -> Polynomial:
    """Sum of the terms of p whose exponents lie on the face (exact test)."""
    if p.n != face.polyhedron.n:
        raise ValueError("dimension mismatch between polynomial and face")
    return Polynomial(p.n, {e: c for e, c in p.terms.items() if face.contains(e)})
