"""Candidate pole sets of the one-sided zeta functions, theorem-backed
verdicts on the oscillation index and its multiplicity, and the transfer
from zeta Laurent data to oscillatory leading coefficients.

The verdict engine never upgrades a claim from numerics: only audited
hypotheses do.  Unknown certificates downgrade, they never fabricate.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .fan import Cone, Fan, normal_fan, resolution_fan
from .pair import (
    PairAnalysis,
    analyze_pair,
    distance_to_unit,
    monomial_distance,
    newton_distance,
    order_bound,
    sign_certificate,
)
from .poly import Exponent, Polynomial, format_rational
from .polyhedron import NewtonPolyhedron, polyhedron_of

__all__ = [
    "PoleCandidate",
    "VerdictReport",
    "MellinCoefficient",
    "order_bound",
    "beta_of_monomial",
    "candidate_poles_monomial",
    "candidate_poles_general",
    "oscillation_verdict",
    "symmetry_check",
    "mellin_transfer",
    "one_dim_reference",
]


@dataclass(frozen=True)
class PoleCandidate:
    location: Fraction  # negative rational
    max_order: int
    rays: tuple[tuple[tuple[int, ...], int], ...]  # (ray, smallest shift nu)
    integer_series: bool

    def to_json_dict(self) -> dict:
        prov: list[dict] = [{"ray": list(a), "nu": nu} for a, nu in self.rays]
        if self.integer_series:
            prov.append({"series": "integers"})
        return {
            "location": format_rational(self.location),
            "maxOrder": self.max_order,
            "provenance": prov,
        }


def _positive_rays(fan: Fan, Pf: NewtonPolyhedron) -> list[tuple[tuple[int, ...], Fraction]]:
    """Fan rays with positive support value l(a) > 0."""
    out = []
    for a in fan.rays:
        l = Pf.support_value(a)
        if l > 0:
            out.append((a, l))
    return out


def _collect_candidates(
    fan: Fan,
    Pf: NewtonPolyhedron,
    numerator_of_ray,
    nu_max: int,
    n: int,
) -> list[PoleCandidate]:
    """Shared truncation logic for the monomial and general candidate sets.

    numerator_of_ray(a) gives the nu = 0 numerator; the ray's progression is
    -(numerator + nu) / l(a).
    """
    if nu_max < 0:
        raise ValueError("nu_max must be nonnegative")
    rays = _positive_rays(fan, Pf)
    locations: dict[Fraction, list[tuple[tuple[int, ...], int]]] = {}
    deepest = Fraction(1)
    for a, l in rays:
        base = numerator_of_ray(a)
        for nu in range(nu_max + 1):
            loc = Fraction(-(base + nu), 1) / l
            locations.setdefault(loc, []).append((a, nu))
            deepest = max(deepest, -loc)
    int_cap = math.ceil(deepest)
    for k in range(1, int_cap + 1):
        locations.setdefault(Fraction(-k), [])

    # order bound per candidate: per max cone, count rays whose progression
    # hits the location; integer locations gain one (capped at n)
    out = []
    for loc in sorted(locations, reverse=True):
        provs = locations[loc]
        best = 0
        for sigma in fan.max_cones:
            count = 0
            for a in sigma.generators:
                l = Pf.support_value(a)
                if l <= 0:
                    continue
                nu = -loc * l - numerator_of_ray(a)
                if nu.denominator == 1 and nu >= 0:
                    count += 1
            best = max(best, count)
        is_integer = loc.denominator == 1
        order = min(best + 1, n) if is_integer else min(best, n)
        order = max(order, 1)
        ray_provs = tuple(sorted((a, min(nu for b, nu in provs if b == a)) for a in {b for b, _ in provs}))
        out.append(PoleCandidate(loc, order, ray_provs, is_integer))
    return out


def candidate_poles_monomial(
    Pf: NewtonPolyhedron, fan: Fan, p: Exponent, nu_max: int
) -> list[PoleCandidate]:
    """Truncated candidate poles for a monomial amplitude x^p.

    Progressions -(<a, p+1> + nu)/l(a) over the fan rays with l(a) > 0,
    together with the negative integers.
    """
    p = tuple(int(k) for k in p)

    def numerator(a):
        return sum(ai * (pi + 1) for ai, pi in zip(a, p))

    return _collect_candidates(fan, Pf, numerator, nu_max, Pf.n)


def beta_of_monomial(Pf: NewtonPolyhedron, p: Exponent) -> Fraction:
    """Leading candidate -1/d(f, x^p); cross-checked against the ray formula."""
    p = tuple(int(k) for k in p)
    d, q, m = monomial_distance(Pf, p)
    beta = Fraction(-1) / d
    fan = normal_fan(Pf)
    ray_beta = max(
        Fraction(-sum(ai * (pi + 1) for ai, pi in zip(a, p)), 1) / l
        for a, l in _positive_rays(fan, Pf)
    )
    assert ray_beta == beta, "ray formula and distance formula must agree"
    return beta


def candidate_poles_general(
    Pf: NewtonPolyhedron,
    Pphi: NewtonPolyhedron,
    fan: Fan,
    nu_max: int,
) -> tuple[list[PoleCandidate], Fraction]:
    """Truncated candidate poles for a polynomial amplitude, plus the leading
    candidate -1/d.  ``fan`` must refine both normal fans (the resolution
    pipeline guarantees this)."""

    def numerator(a):
        return Pphi.support_value(a) + sum(a)

    candidates = _collect_candidates(fan, Pf, numerator, nu_max, Pf.n)
    d = newton_distance(Pf, Pphi)
    leading = Fraction(-1) / d
    ray_leading = max(
        Fraction(-numerator(a), 1) / l for a, l in _positive_rays(fan, Pf)
    )
    assert ray_leading == leading, "leading candidate must equal -1/d"
    # clamp the order at the leading candidate by the theorem bound
    m = None
    out = []
    for c in candidates:
        if c.location == leading:
            from .pair import newton_multiplicity

            m = newton_multiplicity(Pf, Pphi, d)
            bound = order_bound(d, m, Pf.n)
            c = PoleCandidate(c.location, min(c.max_order, bound), c.rays, c.integer_series)
        out.append(c)
    return out, leading


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Hypothesis:
    ident: str
    status: str  # Holds | Fails | Unknown
    detail: str = ""

    def to_json_dict(self) -> dict:
        out = {"id": self.ident, "status": self.status}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass(frozen=True)
class VerdictReport:
    d_newton: Fraction
    leading_candidate: Fraction
    order_bound: int
    claim: str  # UpperBoundOnly | ExactIndexAndMultiplicity | Inconclusive
    beta: Optional[Fraction]
    eta: Optional[int]
    hypotheses: tuple[Hypothesis, ...]
    progressions: tuple[dict, ...]
    pair: PairAnalysis
    symmetry: Optional[dict] = None

    def to_json_dict(self) -> dict:
        out = {
            "dNewton": format_rational(self.d_newton),
            "leadingCandidate": format_rational(self.leading_candidate),
            "orderBound": self.order_bound,
            "claim": self.claim,
            "beta": format_rational(self.beta) if self.beta is not None else None,
            "eta": self.eta,
            "hypotheses": [h.to_json_dict() for h in self.hypotheses],
            "progressions": list(self.progressions),
            "pair": self.pair.to_json_dict(),
        }
        if self.symmetry is not None:
            out["symmetry"] = self.symmetry
        return out


def _monomial_unit_exponent(phi: Polynomial) -> Optional[Exponent]:
    """p with phi = x^p * (unit): the componentwise support minimum, when it
    carries a coefficient."""
    support = list(phi.support)
    p = tuple(min(e[i] for e in support) for i in range(phi.n))
    return p if p in phi.support else None


def _point_in_faces(point: Exponent, faces) -> bool:
    return any(face.contains(point) for face in faces)


def _one_dim_claim(f: Polynomial, phi: Polynomial) -> tuple[bool, int, int, Fraction, Fraction]:
    """1D case data: (exact, q, p, f_tilde0, phi_tilde0).

    In one variable both inputs factor as x^k * unit near 0, so the parity
    case analysis decides exactness completely.
    """
    q = min(e[0] for e in f.support)
    p = min(e[0] for e in phi.support)
    f0 = f.coefficient((q,))
    phi0 = phi.coefficient((p,))
    _, exact = one_dim_reference(q, p, f0, phi0)
    return exact, q, p, f0, phi0


def oscillation_verdict(
    f: Polynomial,
    phi: Polynomial,
    seed: int = 0,
    nu_max: int = 10,
    amplitude_polynomial: bool = True,
) -> VerdictReport:
    """Audit the theorem hypotheses and claim what they support.

    ``amplitude_polynomial=False`` marks an amplitude whose non-polynomial
    part was dropped for the exact analysis; the real-analyticity and
    monomial-unit conditions are then not certifiable from ``phi`` alone.
    """
    if f.is_zero() or phi.is_zero():
        raise ValueError("phase and amplitude must be nonzero")
    if f.coefficient((0,) * f.n) != 0:
        raise ValueError("phase must vanish at the origin")

    pair = analyze_pair(f, phi, seed=seed)
    Pf = polyhedron_of(f)
    Pphi = polyhedron_of(phi)
    n = f.n
    d = pair.d
    leading = Fraction(-1) / d

    hyps: list[Hypothesis] = []

    grad_zero = all(f.coefficient(tuple(1 if j == i else 0 for j in range(n))) == 0 for i in range(n))
    hyps.append(
        Hypothesis(
            "critical_origin",
            "Holds" if grad_zero else "Fails",
            "phase gradient vanishes at 0" if grad_zero else "phase has a linear term",
        )
    )

    nondeg = pair.nondegeneracy.status
    hyps.append(Hypothesis("phase_nondegenerate", {"Nondegenerate": "Holds", "Degenerate": "Fails"}.get(nondeg, "Unknown")))

    f_convenient = Pf.is_convenient()
    hyps.append(Hypothesis("phase_convenient", "Holds" if f_convenient else "Fails"))
    phi_convenient = Pphi.is_convenient()
    hyps.append(Hypothesis("amplitude_convenient", "Holds" if phi_convenient else "Fails"))
    hyps.append(
        Hypothesis(
            "amplitude_real_analytic",
            "Holds" if amplitude_polynomial else "Fails",
            "" if amplitude_polynomial else "amplitude carries flat non-analytic terms",
        )
    )
    p_unit = _monomial_unit_exponent(phi)
    if amplitude_polynomial:
        unit_status = "Holds" if p_unit is not None else "Fails"
    else:
        unit_status = "Unknown"  # flat terms can break the factorization invisibly
    hyps.append(Hypothesis("amplitude_monomial_times_unit", unit_status))

    bound_ok = (
        nondeg == "Nondegenerate"
        and grad_zero
        and (
            f_convenient
            or phi_convenient
            or amplitude_polynomial
            or unit_status == "Holds"
        )
    )

    # exactness side
    hyps.append(Hypothesis("distance_gt_one", "Holds" if d > 1 else "Fails"))
    f_sign = sign_certificate(f, seed=seed)
    hyps.append(
        Hypothesis(
            "phase_sign_definite",
            "Holds" if f_sign.definite else ("Unknown" if f_sign.status == "Unknown" else "Fails"),
        )
    )

    if p_unit is not None and amplitude_polynomial:
        even_unit = all(k % 2 == 0 for k in p_unit)
        hyps.append(Hypothesis("amplitude_monomial_times_unit_even", "Holds" if even_unit else "Fails"))
    else:
        even_unit = False
        hyps.append(Hypothesis("amplitude_monomial_times_unit_even", "Unknown" if not amplitude_polynomial else "Fails"))

    # refined variant: monomials whose exponents land in the essential set
    if amplitude_polynomial:
        in_ess = [(e, c) for e, c in phi.terms.items() if _point_in_faces(e, pair.essential)]
        all_even = all(all(k % 2 == 0 for k in e) for e, _ in in_ess)
        one_sign = all(c > 0 for _, c in in_ess) or all(c < 0 for _, c in in_ess)
        cprime = bool(in_ess) and all_even and one_sign
        hyps.append(Hypothesis("essential_monomials_even_one_sign", "Holds" if cprime else "Fails"))
    else:
        cprime = False
        hyps.append(Hypothesis("essential_monomials_even_one_sign", "Unknown"))

    ess_sign = pair.sign_principal
    d_status = (
        "Holds"
        if (f_convenient and ess_sign.definite)
        else ("Unknown" if ess_sign.status == "Unknown" and f_convenient else "Fails")
    )
    hyps.append(Hypothesis("phase_convenient_and_essential_part_sign_definite", d_status))

    condition_ii = d > 1 or f_sign.definite
    condition_iii = even_unit or cprime or d_status == "Holds"
    exact_ok = bound_ok and condition_ii and condition_iii

    one_dim_exact = None
    if n == 1 and amplitude_polynomial and grad_zero:
        one_dim_exact, q1, p1, f0, phi0 = _one_dim_claim(f, phi)
        hyps.append(
            Hypothesis(
                "one_dim_parity_case",
                "Holds" if one_dim_exact else "Fails",
                f"q={q1}, p={p1}: leading coefficient {'nonzero' if one_dim_exact else 'vanishes'}",
            )
        )

    if n == 1 and one_dim_exact is not None:
        # the one-dimensional case analysis is complete: it overrides the
        # general sufficient conditions in both directions
        if one_dim_exact:
            claim, beta, eta = "ExactIndexAndMultiplicity", leading, pair.m
        elif bound_ok:
            claim, beta, eta = "UpperBoundOnly", None, None
        else:
            claim, beta, eta = "Inconclusive", None, None
    elif exact_ok:
        claim, beta, eta = "ExactIndexAndMultiplicity", leading, pair.m
    elif bound_ok:
        claim, beta, eta = "UpperBoundOnly", None, None
    else:
        claim, beta, eta = "Inconclusive", None, None

    # progressions (per ray of the resolution fan, plus the integer series)
    fan = resolution_fan(Pf, Pphi if amplitude_polynomial else None)
    progressions: list[dict] = []
    for a in fan.rays:
        l = Pf.support_value(a)
        if l <= 0:
            continue
        start = Fraction(-(Pphi.support_value(a) + sum(a)), 1) / l
        progressions.append(
            {
                "start": format_rational(start),
                "step": format_rational(Fraction(-1) / l),
                "ray": list(a),
            }
        )
    progressions.append({"start": "-1", "step": "-1", "ray": None})

    symmetry = None
    if (
        amplitude_polynomial
        and nondeg == "Nondegenerate"
        and f_convenient
        and phi_convenient
        and f_sign.definite
        and sign_certificate(phi, seed=seed).definite
    ):
        symmetry = symmetry_check(f, phi, seed=seed)

    return VerdictReport(
        d_newton=d,
        leading_candidate=leading,
        order_bound=pair.order_bound,
        claim=claim,
        beta=beta,
        eta=eta,
        hypotheses=tuple(hyps),
        progressions=tuple(progressions),
        pair=pair,
        symmetry=symmetry,
    )


def symmetry_check(f: Polynomial, phi: Polynomial, seed: int = 0) -> dict:
    """Distance product law for the pair (x^1 f, phi) vs (x^1 phi, f).

    The product of the two Newton distances is >= 1, with equality exactly
    when the shifted polyhedra are proportional; at equality both
    multiplicities equal n.
    """
    n = f.n
    one = (1,) * n
    xf = f.shift_exponents(one)
    xphi = phi.shift_exponents(one)
    P_xf = polyhedron_of(xf)
    P_xphi = polyhedron_of(xphi)
    d1 = newton_distance(P_xf, polyhedron_of(phi))
    d2 = newton_distance(P_xphi, polyhedron_of(f))
    product = d1 * d2
    proportional, ratio = _proportional(P_xf, P_xphi)
    out = {
        "dProduct": format_rational(product),
        "d1": format_rational(d1),
        "d2": format_rational(d2),
        "betaProduct": format_rational(1 / product),
        "proportional": proportional,
        "scale": format_rational(ratio) if proportional else None,
    }
    certs = [sign_certificate(f, seed=seed), sign_certificate(phi, seed=seed)]
    out["hypotheses"] = {
        "phase_sign_definite": certs[0].status,
        "amplitude_sign_definite": certs[1].status,
    }
    if proportional:
        out["eta"] = n
    return out


def _proportional(P: NewtonPolyhedron, Q: NewtonPolyhedron) -> tuple[bool, Fraction]:
    """Is P = d * Q for a positive rational d?  Exact facet comparison."""
    normals_p = {f.normal: f.offset for f in P.facets}
    normals_q = {f.normal: f.offset for f in Q.facets}
    if set(normals_p) != set(normals_q):
        return False, Fraction(0)
    ratio = None
    for a, lp in normals_p.items():
        lq = normals_q[a]
        if lp == 0 and lq == 0:
            continue
        if lp == 0 or lq == 0:
            return False, Fraction(0)
        r = lp / lq
        if ratio is None:
            ratio = r
        elif ratio != r:
            return False, Fraction(0)
    if ratio is None:
        ratio = Fraction(1)
    return True, ratio


# ---------------------------------------------------------------------------
# Mellin transfer and the one-dimensional reference
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MellinCoefficient:
    lam: Fraction
    rho: int
    b_plus: complex
    b_minus: complex
    b: complex

    def to_json_dict(self) -> dict:
        return {
            "lambda": format_rational(self.lam),
            "rho": self.rho,
            "BPlus": {"re": self.b_plus.real, "im": self.b_plus.imag},
            "BMinus": {"re": self.b_minus.real, "im": self.b_minus.imag},
            "B": {"re": self.b.real, "im": self.b.imag},
        }


def mellin_transfer(lam: Fraction, rho: int, b_plus: complex, b_minus: complex) -> MellinCoefficient:
    """Oscillatory coefficient from the zeta Laurent data:

        B = Gamma(lam)/(rho-1)! * (e^{i pi lam/2} B+ + e^{-i pi lam/2} B-)
    """
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    if rho < 1:
        raise ValueError("rho must be a positive integer")
    g = math.gamma(float(lam)) / math.factorial(rho - 1)
    phase = cmath.exp(1j * math.pi * float(lam) / 2)
    b = g * (phase * complex(b_plus) + phase.conjugate() * complex(b_minus))
    return MellinCoefficient(lam, rho, complex(b_plus), complex(b_minus), b)


def one_dim_reference(
    q: int, p: int, f_tilde0: Fraction, phi_tilde0: Fraction
) -> tuple[complex, bool]:
    """Leading coefficient C0 and its exactness for f = x^q*unit, phi = x^p*unit.

    The four parity cases; C0 = 0 happens exactly when the stated rational
    condition on (p+1)/(2q) holds, decided exactly.
    """
    if q < 2:
        raise ValueError("phase order q must be at least 2")
    if p < 0:
        raise ValueError("amplitude order p must be nonnegative")
    f0 = Fraction(f_tilde0)
    phi0 = Fraction(phi_tilde0)
    if f0 == 0 or phi0 == 0:
        raise ValueError("unit factors must be nonzero")
    alpha = 1 if f0 > 0 else -1
    lam = Fraction(p + 1, q)
    amp = (2 / q) * math.gamma(float(lam)) * abs(float(f0)) ** (-float(lam)) * float(phi0)
    half = Fraction(p + 1, 2 * q)
    if q % 2 == 0 and p % 2 == 0:
        c0 = amp * cmath.exp(1j * alpha * math.pi * float(half))
        exact = True
    elif q % 2 == 0 and p % 2 == 1:
        c0 = 0j
        exact = False
    elif q % 2 == 1 and p % 2 == 0:
        # cos factor vanishes iff (p+1)/(2q) is a half-integer
        vanish = (half - Fraction(1, 2)).denominator == 1
        c0 = amp * math.cos(math.pi * float(half)) + 0j
        exact = not vanish
    else:
        # sin factor vanishes iff (p+1)/(2q) is a positive integer
        vanish = half.denominator == 1
        c0 = alpha * 1j * amp * math.sin(math.pi * float(half))
        exact = not vanish
    return c0, exact
