"""Phase/amplitude pair invariants: Newton distance, multiplicity, essential
set, and the sign / nondegeneracy certificates feeding the verdict engine.

All polyhedral computations are exact.  Sign certification is deliberately
incomplete (Unknown is a first-class outcome); nondegeneracy is exact for
n <= 2 and numeric-with-exact-refinement for n >= 3.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg, univariate
from .poly import Exponent, Polynomial, format_rational
from .polyhedron import Face, NewtonPolyhedron, polyhedron_of, restrict_to_face

DEFAULT_SEED = 0


class DistanceUndefinedError(ValueError):
    """The phase polyhedron has no facet with positive offset (f is unit-like)."""


# ---------------------------------------------------------------------------
# Newton distance and the essential set
# ---------------------------------------------------------------------------


def newton_distance(Pf: NewtonPolyhedron, Pphi: NewtonPolyhedron) -> Fraction:
    """min{d > 0 : d * (Gamma_+(phi) + 1) inside Gamma_+(f)}, exact.

    Containment is decided facet-of-f against vertex-of-phi, which suffices
    because both polyhedra share the recession cone R_+^n.
    """
    if Pf.n != Pphi.n:
        raise ValueError("dimension mismatch")
    one = (1,) * Pf.n
    best: Optional[Fraction] = None
    for facet in Pf.facets:
        if facet.offset <= 0:
            continue
        denom = min(
            sum(a * (v + 1) for a, v in zip(facet.normal, vert)) for vert in Pphi.vertices
        )
        cand = facet.offset / denom
        if best is None or cand > best:
            best = cand
    if best is None:
        raise DistanceUndefinedError("phase polyhedron touches the origin: no facet with positive offset")
    return best


def distance_to_unit(Pf: NewtonPolyhedron) -> Fraction:
    """d_f: the diagonal coordinate where the line x1=...=xn meets the boundary."""
    return newton_distance(Pf, _orthant(Pf.n))


def _orthant(n: int, at: Exponent | None = None) -> NewtonPolyhedron:
    from .polyhedron import build_newton_polyhedron

    return build_newton_polyhedron([at if at is not None else (0,) * n], n)


def _shifted_offset(facet, d: Fraction, n: int) -> Fraction:
    """Offset of the facet of (1/d) * Gamma_+(f) - 1 with the same normal."""
    return facet.offset / d - sum(facet.normal)


def gamma_phi_f(Pf: NewtonPolyhedron, Pphi: NewtonPolyhedron, d: Fraction) -> list[Face]:
    """Inclusion-maximal faces of Gamma_+(phi) forming Gamma(phi, f).

    For each facet (a, l) of Gamma_+(f), the pair (a, l/d - <a, 1>) is valid
    for Gamma_+(phi); when it is tight it cuts a face of the union.
    """
    faces: dict[frozenset, Face] = {}
    for facet in Pf.facets:
        if facet.offset <= 0:
            continue
        z = _shifted_offset(facet, d, Pf.n)
        if Pphi.support_value(facet.normal) != z:
            continue
        face = Pphi.face_of_direction(facet.normal)
        faces.setdefault(face.key(), face)
    result = []
    for face in faces.values():
        if not any(
            other is not face and other.active < face.active for other in faces.values()
        ):
            result.append(face)
    return sorted(result, key=lambda f: (-f.dim, sorted(f.active)))


def _face_cut_by_facets(Pphi: NewtonPolyhedron, Pf: NewtonPolyhedron, active, d: Fraction) -> Face | None:
    """Face of Gamma_+(phi) matching a face of Gamma_+(f) under the d-scaling.

    The face of f with active facet set A pulls back to the phi-face cut by
    the summed valid pair; None when the intersection is empty.
    """
    ssum = tuple(sum(Pf.facets[k].normal[i] for k in active) for i in range(Pf.n))
    zsum = sum(_shifted_offset(Pf.facets[k], d, Pf.n) for k in active)
    if Pphi.support_value(ssum) != zsum:
        return None
    return Pphi.face_of_direction(ssum)


def newton_multiplicity(Pf: NewtonPolyhedron, Pphi: NewtonPolyhedron, d: Fraction) -> int:
    """max codimension among faces of Gamma_+(f) meeting d*(Gamma_+(phi)+1)."""
    m = 0
    for G in Pf.enumerate_faces():
        if not G.active:
            continue
        codim = Pf.n - G.dim
        if codim <= m:
            continue
        if _face_cut_by_facets(Pphi, Pf, G.active, d) is not None:
            m = codim
    if m == 0:
        raise ValueError("no boundary face meets the scaled amplitude polyhedron")
    return m


def essential_set(
    Pf: NewtonPolyhedron, Pphi: NewtonPolyhedron, d: Fraction, m: int
) -> list[Face]:
    """The pairwise-disjoint faces of Gamma_+(phi) realizing the multiplicity."""
    out: dict[frozenset, Face] = {}
    for G in Pf.enumerate_faces():
        if Pf.n - G.dim != m:
            continue
        face = _face_cut_by_facets(Pphi, Pf, G.active, d)
        if face is not None:
            out.setdefault(face.key(), face)
    faces = sorted(out.values(), key=lambda f: (sorted(f.active), f.vertices))
    for a, b in itertools.combinations(faces, 2):
        assert not (set(a.vertices) & set(b.vertices)), "essential faces must be disjoint"
    return faces


def principal_on_essential(phi: Polynomial, essential: Sequence[Face]) -> Polynomial:
    """Sum of the face polynomials over the essential faces (disjoint union)."""
    total = Polynomial.zero(phi.n)
    for face in essential:
        total = total + restrict_to_face(phi, face)
    return total


def monomial_distance(Pf: NewtonPolyhedron, p: Exponent) -> tuple[Fraction, tuple[Fraction, ...], int]:
    """(d, q, m) for a monomial amplitude x^p: q = d*(p+1) on the boundary."""
    p = tuple(int(k) for k in p)
    d = newton_distance(Pf, _orthant(Pf.n, p))
    q = tuple(d * (pi + 1) for pi in p)
    assert Pf.contains(q)
    assert any(f.is_tight(q) for f in Pf.facets), "q must lie on the boundary"
    m = Pf.rho(q)
    return d, q, m


# ---------------------------------------------------------------------------
# Sign certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignCertificate:
    status: str  # Nonnegative | Nonpositive | Indefinite | Unknown
    witness_negative: Optional[tuple[Fraction, ...]] = None
    witness_positive: Optional[tuple[Fraction, ...]] = None

    @property
    def definite(self) -> bool:
        return self.status in ("Nonnegative", "Nonpositive")

    def to_json(self) -> dict:
        out: dict = {"status": self.status}
        if self.witness_negative is not None:
            out["witnessNegative"] = [format_rational(x) for x in self.witness_negative]
        if self.witness_positive is not None:
            out["witnessPositive"] = [format_rational(x) for x in self.witness_positive]
        return out


def _all_even(e: Exponent) -> bool:
    return all(k % 2 == 0 for k in e)


def _nonnegative_structurally(p: Polynomial) -> bool:
    """Sufficient test: even monomials with positive coefficients, plus at most
    one odd term absorbed by a PSD quadratic-in-monomials triple."""
    odd = [(e, c) for e, c in p.terms.items() if not _all_even(e)]
    even = {e: c for e, c in p.terms.items() if _all_even(e)}
    if any(c < 0 for c in even.values()):
        return False
    if not odd:
        return True
    if len(odd) > 1:
        return False
    (q, c2) = odd[0]
    # look for even support points 2a, 2b with a + b = q and discriminant <= 0
    for e1, e2 in itertools.combinations(even, 2):
        if tuple(a + b for a, b in zip(e1, e2)) != tuple(2 * k for k in q):
            continue
        c1, c3 = even[e1], even[e2]
        if c1 > 0 and c3 > 0 and c2 * c2 <= 4 * c1 * c3:
            return True
    return False


def _sample_directions(n: int, seed: int) -> list[tuple[Fraction, ...]]:
    mags = [Fraction(1, 2), Fraction(1), Fraction(2)]
    pts = []
    for signs in itertools.product((1, -1), repeat=n):
        for vals in itertools.product(mags, repeat=n):
            pts.append(tuple(s * v for s, v in zip(signs, vals)))
    rng = random.Random(seed)
    for _ in range(1000):
        pts.append(tuple(Fraction(rng.randint(-8, 8), rng.randint(1, 8)) for _ in range(n)))
    return pts


def _leading_sign_along_ray(p: Polynomial, direction: Sequence[Fraction]) -> int:
    """Sign of p(t * direction) for small t > 0: sign of the lowest-order
    nonzero coefficient of the univariate restriction.  0 if p vanishes on
    the ray."""
    by_degree: dict[int, Fraction] = {}
    for e, c in p.terms.items():
        v = c
        for x, k in zip(direction, e):
            if k:
                v *= Fraction(x) ** k
        deg = sum(e)
        by_degree[deg] = by_degree.get(deg, Fraction(0)) + v
    for deg in sorted(by_degree):
        if by_degree[deg] != 0:
            return 1 if by_degree[deg] > 0 else -1
    return 0


def sign_certificate(p: Polynomial, even_shortcut: bool = True, seed: int = DEFAULT_SEED) -> SignCertificate:
    """Certify the sign of p near the origin, or witness indefiniteness.

    Certified (Non)negative outcomes come from the structural sufficient
    conditions, which are global.  Indefinite comes from two rational ray
    directions with opposite leading signs, which proves a sign change in
    every neighborhood of the origin.  Everything else is Unknown.
    """
    if p.is_zero():
        return SignCertificate("Nonnegative")
    if even_shortcut:
        if _nonnegative_structurally(p):
            return SignCertificate("Nonnegative")
        if _nonnegative_structurally(-p):
            return SignCertificate("Nonpositive")
    wit_pos = wit_neg = None
    for direction in _sample_directions(p.n, seed):
        s = _leading_sign_along_ray(p, direction)
        if s > 0 and wit_pos is None:
            wit_pos = direction
        elif s < 0 and wit_neg is None:
            wit_neg = direction
        if wit_pos is not None and wit_neg is not None:
            return SignCertificate("Indefinite", wit_neg, wit_pos)
    return SignCertificate("Unknown", wit_neg, wit_pos)


# ---------------------------------------------------------------------------
# Nondegeneracy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NondegeneracyReport:
    status: str  # Nondegenerate | Degenerate | Unknown
    witnesses: tuple = ()
    faces_checked: int = 0

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "facesChecked": self.faces_checked,
            "witnesses": [
                {"faceDim": f.dim, "point": [float(x) for x in pt]} for f, pt in self.witnesses
            ],
        }


def _edge_degenerate_2d(face_poly: Polynomial):
    """Exact 2D edge test via the quasi-homogeneous reduction.

    On a compact edge with weight a > 0, the gradient vanishes off the axes
    iff g(t) = f_gamma(t, sign) has a repeated real root t != 0 (Euler identity
    turns grad = 0 into g = g' = 0).
    """
    for sign in (1, -1):
        coeffs: dict[int, Fraction] = {}
        for e, c in face_poly.terms.items():
            coeffs[e[0]] = coeffs.get(e[0], Fraction(0)) + c * (sign ** e[1])
        deg = max(coeffs) if coeffs else 0
        g = [coeffs.get(k, Fraction(0)) for k in range(deg + 1)]
        g = univariate.trim(g)
        if univariate.degree(g) < 1:
            continue
        common = univariate.gcd_poly(g, univariate.derivative(g))
        if univariate.has_nonzero_real_root(common):
            root = _approx_nonzero_real_root(common)
            return (float(root), float(sign))
    return None


def _approx_nonzero_real_root(p: list[Fraction]) -> float:
    import numpy as np

    stripped = univariate.strip_root_at_zero(p)
    roots = np.roots([float(c) for c in reversed(stripped)])
    real = [r.real for r in roots if abs(r.imag) < 1e-9 and abs(r.real) > 1e-12]
    return min(real, key=abs) if real else float("nan")


def _numeric_min_gradient(face_poly: Polynomial, seed: int) -> float:
    """Multi-start minimization of |grad f_gamma|^2 over magnitude shells."""
    import numpy as np
    from scipy.optimize import minimize

    n = face_poly.n
    grads = [face_poly.partial(i) for i in range(n)]

    def objective(u, signs):
        x = signs * np.exp(u)
        vals = [g.evaluate_float(*x.reshape(-1, 1)).item() for g in grads]
        return sum(v * v for v in vals)

    rng = np.random.default_rng(seed)
    best = float("inf")
    lo, hi = float(np.log(0.5)), float(np.log(2.0))
    for signs in itertools.product((1.0, -1.0), repeat=n):
        signs = np.array(signs)
        for _ in range(3):
            u0 = rng.uniform(lo, hi, size=n)
            res = minimize(
                objective,
                u0,
                args=(signs,),
                method="L-BFGS-B",
                bounds=[(lo, hi)] * n,
            )
            best = min(best, float(res.fun))
    return best


def nondegeneracy_check(f: Polynomial, P: NewtonPolyhedron | None = None, seed: int = DEFAULT_SEED) -> NondegeneracyReport:
    """Check grad f_gamma != 0 off the coordinate hyperplanes for every
    compact face gamma.  Exact for n <= 2; numeric with an exactness policy
    for n >= 3 (Degenerate only when confirmed exactly, see module docs)."""
    if P is None:
        P = polyhedron_of(f)
    n = f.n
    witnesses = []
    unknown = False
    compact_faces = P.newton_diagram()
    for face in compact_faces:
        fg = restrict_to_face(f, face)
        if len(fg.terms) == 1:
            e = next(iter(fg.terms))
            if all(k == 0 for k in e):
                witnesses.append((face, tuple(Fraction(1) for _ in range(n))))
            continue
        if n == 1:
            g = _coeff_list_1d(fg)
            common = univariate.gcd_poly(g, univariate.derivative(g))
            if univariate.has_nonzero_real_root(common):
                witnesses.append((face, (Fraction(1),)))
            continue
        if n == 2:
            hit = _edge_degenerate_2d(fg)
            if hit is not None:
                t, sign = hit
                witnesses.append((face, (Fraction(t).limit_denominator(10**6), Fraction(int(sign)))))
            continue
        # n >= 3: numeric policy
        best = _numeric_min_gradient(fg, seed)
        if best < 1e-10:
            exact = _try_exact_degeneracy(fg)
            if exact is not None:
                witnesses.append((face, exact))
            else:
                unknown = True
        elif best < 1e-4:
            unknown = True
    if witnesses:
        return NondegeneracyReport("Degenerate", tuple(witnesses), len(compact_faces))
    if unknown:
        return NondegeneracyReport("Unknown", (), len(compact_faces))
    return NondegeneracyReport("Nondegenerate", (), len(compact_faces))


def _coeff_list_1d(p: Polynomial) -> list[Fraction]:
    deg = max((e[0] for e in p.terms), default=0)
    return univariate.trim([p.coefficient((k,)) for k in range(deg + 1)])


def _try_exact_degeneracy(fg: Polynomial):
    """Confirm a numeric near-zero of the gradient at simple rational points."""
    n = fg.n
    grads = [fg.partial(i) for i in range(n)]
    candidates = []
    for vals in itertools.product((Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2)), repeat=n):
        candidates.append(vals)
    for pt in candidates:
        if all(g.evaluate(pt) == 0 for g in grads):
            return pt
    return None


# ---------------------------------------------------------------------------
# Assembled pair analysis
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PairAnalysis:
    d: Fraction
    m: int
    gamma_phi_f: tuple[Face, ...]
    essential: tuple[Face, ...]
    principal: Polynomial
    order_bound: int
    sign_principal: SignCertificate
    nondegeneracy: NondegeneracyReport

    def to_json_dict(self) -> dict:
        return {
            "d": format_rational(self.d),
            "m": self.m,
            "gammaPhiF": [f.to_json_dict() for f in self.gamma_phi_f],
            "essential": [f.to_json_dict() for f in self.essential],
            "principal": str(self.principal),
            "orderBound": self.order_bound,
            "signPhiGamma0": self.sign_principal.status,
            "nondegenerate": self.nondegeneracy.status,
        }


def order_bound(d: Fraction, m: int, n: int) -> int:
    """m when 1/d is not an integer, else min(m + 1, n)."""
    if d <= 0:
        raise ValueError("distance must be positive")
    if not (1 <= m <= n):
        raise ValueError("multiplicity must lie in [1, n]")
    inv = 1 / Fraction(d)
    if inv.denominator == 1:
        return min(m + 1, n)
    return m


def analyze_pair(f: Polynomial, phi: Polynomial, seed: int = DEFAULT_SEED) -> PairAnalysis:
    """Full pair analysis: d, m, Gamma(phi, f), essential set, certificates."""
    Pf = polyhedron_of(f)
    Pphi = polyhedron_of(phi)
    d = newton_distance(Pf, Pphi)
    gpf = gamma_phi_f(Pf, Pphi, d)
    m = newton_multiplicity(Pf, Pphi, d)
    ess = essential_set(Pf, Pphi, d, m)
    principal = principal_on_essential(phi, ess)
    bound = order_bound(d, m, f.n)
    sign = sign_certificate(principal, seed=seed)
    nondeg = nondegeneracy_check(f, Pf, seed=seed)
    return PairAnalysis(d, m, tuple(gpf), tuple(ess), principal, bound, sign, nondeg)
