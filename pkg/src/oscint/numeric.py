"""Numeric verification harness: oscillatory and zeta quadrature at desk
scale (n <= 2), exponent/log-power fitting, and the coefficient integrals of
the quintic-edge regression family.

Amplitudes extend polynomials by flat atoms exp(-1/x_i^2) (value 0 at
x_i = 0), which is exactly the ingredient that breaks naive polyhedral
predictions for smooth non-analytic amplitudes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from . import univariate
from .poly import Exponent, Polynomial, PolynomialSyntaxError, _Parser
from .polyhedron import polyhedron_of

TAU_MIN = 1.0
TAU_MAX = 2.0e4
NODES_PER_OSCILLATION = 20
PANEL_ORDER = 16


class CalibrationRangeError(ValueError):
    """tau outside the calibrated quadrature range."""


# ---------------------------------------------------------------------------
# Amplitudes and cutoffs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AmplitudeExpr:
    """Sum of terms c * x^e * prod_k flat(i_k), flat(i) = exp(-1/x_i^2).

    ``terms`` entries are (coefficient, exponent tuple, sorted flat indices).
    """

    n: int
    terms: tuple[tuple[Fraction, Exponent, tuple[int, ...]], ...]

    @staticmethod
    def from_polynomial(p: Polynomial) -> "AmplitudeExpr":
        return AmplitudeExpr(p.n, tuple((c, e, ()) for e, c in sorted(p.terms.items())))

    def __add__(self, other: "AmplitudeExpr") -> "AmplitudeExpr":
        assert self.n == other.n
        return AmplitudeExpr(self.n, self.terms + other.terms)

    def scale(self, c) -> "AmplitudeExpr":
        c = Fraction(c)
        return AmplitudeExpr(self.n, tuple((c * a, e, fl) for a, e, fl in self.terms))

    def is_polynomial(self) -> bool:
        return all(not fl for _, _, fl in self.terms)

    def polynomial_part(self) -> Polynomial:
        """Sum of the purely polynomial terms (flat atoms have empty support)."""
        out: dict[Exponent, Fraction] = {}
        for c, e, fl in self.terms:
            if not fl:
                out[e] = out.get(e, Fraction(0)) + c
        return Polynomial(self.n, out)

    def evaluate_float(self, *coords):
        total = np.zeros(np.broadcast(*coords).shape if len(coords) > 1 else np.shape(coords[0]))
        for c, e, fl in self.terms:
            term = float(c) * np.ones_like(total)
            for x, k in zip(coords, e):
                if k:
                    term = term * x**k
            for i in fl:
                x = coords[i]
                with np.errstate(divide="ignore", over="ignore"):
                    flat = np.where(x == 0.0, 0.0, np.exp(-1.0 / np.where(x == 0.0, 1.0, x) ** 2))
                term = term * flat
            total = total + term
        return total


def parse_amplitude(text: str, dimension: int) -> AmplitudeExpr:
    """Polynomial grammar extended with the factor ``exp(-1/xI^2)``."""
    parser = _AmplitudeParser(text, dimension)
    return parser.parse_amplitude()


class _AmplitudeParser(_Parser):
    def __init__(self, text: str, n: int):
        super().__init__(text, n)
        self.flat_stack: list[list[int]] = []

    def parse_amplitude(self) -> AmplitudeExpr:
        terms: list[tuple[Fraction, Exponent, tuple[int, ...]]] = []
        sign = 1
        ch = self.peek()
        if ch in "+-":
            sign = -1 if ch == "-" else 1
            self.take()
        terms.append(self._amp_term(sign))
        while True:
            ch = self.peek()
            if ch == "":
                break
            if ch not in "+-":
                raise self.error(f"expected '+' or '-', found {ch!r}")
            self.take()
            terms.append(self._amp_term(-1 if ch == "-" else 1))
        return AmplitudeExpr(self.n, tuple(terms))

    def _amp_term(self, sign: int):
        coeff = Fraction(sign)
        exponent = [0] * self.n
        flats: list[int] = []
        ch = self.peek()
        if ch.isdigit():
            coeff *= self.read_coeff()
            seen = True
        elif ch in ("x", "e"):
            seen = False
        else:
            raise self.error(f"expected a coefficient, variable or exp(), found {ch!r}")
        while True:
            ch = self.peek()
            if ch == "x":
                self.read_factor(exponent)
            elif ch == "e":
                flats.append(self._read_flat())
            elif ch == "*":
                self.take()
                nxt = self.peek()
                if nxt == "x":
                    self.read_factor(exponent)
                elif nxt == "e":
                    flats.append(self._read_flat())
                else:
                    raise self.error("expected a variable or exp() after '*'")
            else:
                break
            seen = True
        if not seen:
            raise self.error("empty term")
        return (coeff, tuple(exponent), tuple(sorted(flats)))

    def _read_flat(self) -> int:
        for expected in "exp(-1/x":
            if self.peek() != expected:
                raise self.error("malformed flat factor, expected exp(-1/xI^2)")
            self.take()
        idx = self.read_nat()
        if idx < 1 or idx > self.n:
            raise self.error(f"variable x{idx} out of range in flat factor")
        for expected in "^2)":
            if self.peek() != expected:
                raise self.error("malformed flat factor, expected exp(-1/xI^2)")
            self.take()
        return idx - 1


@dataclass(frozen=True)
class CutoffConfig:
    """Smooth plateau cutoff: 1 inside radius r, 0 outside radius R.

    Product shape applies the profile per coordinate, Radial to |x|.
    The transition is exp(1 - 1/(1 - v^2)) with v = (u - r)/(R - r).
    """

    shape: str = "Product"  # Product | Radial
    r: float = 0.25
    R: float = 0.5

    def __post_init__(self):
        if not (0 < self.r < self.R):
            raise ValueError("cutoff needs 0 < r < R")
        if self.shape not in ("Product", "Radial"):
            raise ValueError("cutoff shape must be Product or Radial")

    def profile(self, u):
        u = np.asarray(u, dtype=float)
        out = np.zeros_like(u)
        out[u <= self.r] = 1.0
        mid = (u > self.r) & (u < self.R)
        v = (u[mid] - self.r) / (self.R - self.r)
        out[mid] = np.exp(1.0 - 1.0 / (1.0 - v * v))
        return out

    def evaluate_float(self, *coords):
        if self.shape == "Radial":
            rad = np.sqrt(sum(np.asarray(x, dtype=float) ** 2 for x in coords))
            return self.profile(rad)
        total = np.ones(np.broadcast(*coords).shape if len(coords) > 1 else np.shape(coords[0]))
        for x in coords:
            total = total * self.profile(np.abs(np.asarray(x, dtype=float)))
        return total


# ---------------------------------------------------------------------------
# Oscillatory quadrature
# ---------------------------------------------------------------------------


def _panel_nodes(a: float, b: float, panels: int, order: int = PANEL_ORDER):
    xg, wg = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    weights = (half[:, None] * wg[None, :]).ravel()
    return nodes, weights


def _axis_phase_variation(f: Polynomial, axis: int, R: float, grid: int = 129) -> float:
    """Worst total variation of f along an axis-parallel grid line; this
    bounds the phase sweep that the nodes along that axis must resolve."""
    xs = [np.linspace(-R, R, grid) for _ in range(f.n)]
    mesh = np.meshgrid(*xs, indexing="ij")
    vals = f.evaluate_float(*mesh)
    tv = np.abs(np.diff(vals, axis=axis)).sum(axis=axis)
    return float(np.max(tv))


def _axis_node_count(f: Polynomial, axis: int, tau: float, R: float) -> int:
    variation = _axis_phase_variation(f, axis, R) * 1.3
    oscillations = tau * variation / (2 * math.pi)
    return max(64, int(math.ceil(NODES_PER_OSCILLATION * (oscillations + 1))))


def evaluate_oscillatory(
    f: Polynomial,
    phi: AmplitudeExpr | Polynomial,
    chi: CutoffConfig,
    tau: float,
) -> complex:
    """Panel Gauss-Legendre estimate of the oscillatory integral at tau.

    Node density follows the phase variation (>= 20 nodes per estimated
    oscillation); layout is deterministic.  n <= 2 only; tau in the
    calibrated range [1, 2e4].
    """
    if f.n > 2:
        raise ValueError("oscillatory quadrature supports n <= 2 only")
    if not (TAU_MIN <= tau <= TAU_MAX):
        raise CalibrationRangeError(f"tau={tau} outside calibrated range [{TAU_MIN}, {TAU_MAX}]")
    if isinstance(phi, Polynomial):
        phi = AmplitudeExpr.from_polynomial(phi)
    R = chi.R
    if f.n == 1:
        count = _axis_node_count(f, 0, tau, R)
        panels = max(8, math.ceil(count / PANEL_ORDER))
        x, w = _panel_nodes(-R, R, panels)
        fv = f.evaluate_float(x)
        integrand = np.exp(1j * tau * fv) * phi.evaluate_float(x) * chi.evaluate_float(x)
        return complex(np.sum(w * integrand))

    counts = [_axis_node_count(f, i, tau, R) for i in range(2)]
    panels = [max(4, math.ceil(c / PANEL_ORDER)) for c in counts]
    x, wx = _panel_nodes(-R, R, panels[0])
    y, wy = _panel_nodes(-R, R, panels[1])
    total = 0.0 + 0.0j
    chunk = max(1, int(2e6 // max(len(y), 1)))
    for start in range(0, len(x), chunk):
        xs = x[start : start + chunk][:, None]
        ws = wx[start : start + chunk][:, None]
        fv = f.evaluate_float(xs, y[None, :])
        vals = (
            np.exp(1j * tau * fv)
            * phi.evaluate_float(xs, y[None, :])
            * chi.evaluate_float(xs, y[None, :])
        )
        total += complex(np.sum(ws * wy[None, :] * vals))
    return total


def oscillatory_samples(
    f: Polynomial,
    phi: AmplitudeExpr | Polynomial,
    chi: CutoffConfig,
    taus: Sequence[float],
) -> list[tuple[float, complex]]:
    return [(float(t), evaluate_oscillatory(f, phi, chi, t)) for t in taus]


# ---------------------------------------------------------------------------
# Asymptotic fitting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AsymptoticFit:
    beta_hat: float
    eta_hat: int
    c_hat: complex
    residual: float
    tau_range: tuple[float, float]
    samples: tuple[tuple[float, complex], ...]
    eta_confident: bool

    def to_json_dict(self) -> dict:
        return {
            "betaHat": self.beta_hat,
            "etaHat": self.eta_hat,
            "cHat": {"re": self.c_hat.real, "im": self.c_hat.imag},
            "residual": self.residual,
            "tauRange": list(self.tau_range),
            "etaConfident": self.eta_confident,
        }


def fit_asymptotics(
    samples: Sequence[tuple[float, complex]], max_log_power: int = 2
) -> AsymptoticFit:
    """Fit |I| ~ C tau^beta (log tau)^(eta-1) on the top half of the samples.

    eta is selected by residual among {1, ..., max_log_power}; the flag is
    cleared when the runner-up residual is within 5%.
    """
    if len(samples) < 8:
        raise ValueError("need at least 8 samples on a geometric tau grid")
    samples = sorted(samples, key=lambda s: s[0])
    usable = [(t, v) for t, v in samples if abs(v) > 0]
    dropped = len(samples) - len(usable)
    if dropped:
        import warnings

        warnings.warn(f"dropped {dropped} nonpositive-magnitude samples before fitting")
    if len(usable) < 4:
        raise ValueError("not enough nonzero samples to fit")
    tail = usable[-max(len(usable) // 2, 4) :]
    taus = np.array([t for t, _ in tail])
    logI = np.log(np.array([abs(v) for _, v in tail]))
    logt = np.log(taus)
    loglogt = np.log(np.log(taus))
    fits = []
    for eta in range(1, max_log_power + 1):
        rhs = logI - (eta - 1) * loglogt
        A = np.stack([logt, np.ones_like(logt)], axis=1)
        coef, res, *_ = np.linalg.lstsq(A, rhs, rcond=None)
        resid = float(np.sqrt(np.mean((A @ coef - rhs) ** 2)))
        fits.append((resid, eta, float(coef[0]), float(coef[1])))
    fits.sort()
    resid, eta, beta, logc = fits[0]
    confident = len(fits) < 2 or fits[1][0] > 1.05 * fits[0][0]
    t_top, v_top = tail[-1]
    c_hat = v_top / (t_top**beta * math.log(t_top) ** (eta - 1))
    return AsymptoticFit(
        beta_hat=beta,
        eta_hat=eta,
        c_hat=complex(c_hat),
        residual=resid,
        tau_range=(float(tail[0][0]), float(tail[-1][0])),
        samples=tuple((float(t), complex(v)) for t, v in samples),
        eta_confident=confident,
    )


# ---------------------------------------------------------------------------
# Zeta quadrature
# ---------------------------------------------------------------------------


def _real_roots(coeffs: Sequence[float], lo: float, hi: float) -> list[float]:
    """Distinct real roots of a float-coefficient polynomial inside (lo, hi),
    Newton-polished so the dyadic panels stay clear of the true zero."""
    c = np.trim_zeros(np.asarray([float(x) for x in coeffs]), "b")
    if len(c) < 2:
        return []
    dc = np.polynomial.polynomial.polyder(c)

    def polish(x: float) -> float:
        for _ in range(4):
            fv = np.polynomial.polynomial.polyval(x, c)
            dv = np.polynomial.polynomial.polyval(x, dc)
            if dv == 0:
                break
            step = fv / dv
            if abs(step) > 1e-2 * max(abs(x), 1e-6):
                break  # multiple root; Newton would wander
            x -= step
        return x

    roots = np.roots(c[::-1])
    real = sorted(
        polish(r.real) for r in roots if abs(r.imag) < 1e-9 and lo < r.real < hi
    )
    merged: list[float] = []
    for rt in real:
        if not merged or abs(rt - merged[-1]) > 1e-9:
            merged.append(rt)
    return merged


def _quad_smooth(fn: Callable, a: float, b: float, panels: int = 4) -> float:
    x, w = _panel_nodes(a, b, panels)
    return float(np.sum(w * fn(x)))


def _quad_singular_interval(
    fn: Callable,
    a: float,
    b: float,
    singular_left: bool,
    singular_right: bool,
    rel_tol: float = 1e-10,
    max_levels: int = 1600,
    block: int = 80,
) -> float:
    """Dyadic refinement toward singular endpoints.

    Levels are evaluated in blocks with one vectorized call; the geometric
    tail beyond the last level is estimated from the contribution ratio and
    added once it is below tolerance.
    """
    if not singular_left and not singular_right:
        return _quad_smooth(fn, a, b, panels=6)
    if singular_left and singular_right:
        mid = 0.5 * (a + b)
        return _quad_singular_interval(fn, a, mid, True, False, rel_tol) + _quad_singular_interval(
            fn, mid, b, False, True, rel_tol
        )
    if singular_right:
        return _quad_singular_interval(lambda x: fn(a + b - x), a, b, True, False, rel_tol)
    # singular at a only: level k is the panel [a + h/2^(k+1), a + h/2^k]
    xg, wg = np.polynomial.legendre.leggauss(PANEL_ORDER)
    h = b - a
    total = 0.0
    prev = None
    # below this width, node positions near the singular endpoint lose float
    # resolution; the geometric tail (exact for power integrands) takes over
    width_floor = max(1e-280, max(abs(a), abs(b)) * 2.0**-40)
    for start in range(0, max_levels, block):
        ks = np.arange(start, min(start + block, max_levels))
        lefts = a + h * 0.5 ** (ks + 1)
        rights = a + h * 0.5**ks
        half = 0.5 * (rights - lefts)
        mid = 0.5 * (rights + lefts)
        nodes = mid[:, None] + half[:, None] * xg[None, :]
        vals = fn(nodes.ravel()).reshape(nodes.shape)
        contribs = (half[:, None] * wg[None, :] * vals).sum(axis=1)
        for k, contrib in zip(ks, contribs):
            total += contrib
            ratio = abs(contrib) / abs(prev) if prev is not None and abs(prev) > 0 else None
            at_floor = h * 0.5 ** (k + 1) < width_floor
            if ratio is not None and ratio < 1:
                tail = abs(contrib) * ratio / (1 - ratio)
                if tail <= rel_tol * max(abs(total), 1e-300) or at_floor:
                    total += math.copysign(tail, contrib)
                    return total
            if at_floor:
                return total
            prev = contrib
    return total


def _zeta_1d_profile(
    fcoeffs: Sequence[float],
    weight: Callable,
    s: float,
    lo: float,
    hi: float,
    rel_tol: float = 1e-10,
) -> float:
    """integral of |f(x)|^s * weight(x) over (lo, hi), f univariate."""
    froots = _real_roots(fcoeffs, lo, hi)
    fl = [float(c) for c in fcoeffs]

    def fval(x):
        acc = np.zeros_like(x)
        for c in reversed(fl):
            acc = acc * x + c
        return acc

    def integrand(x):
        v = np.abs(fval(x))
        out = np.zeros_like(v)
        mask = v > 1e-300
        out[mask] = v[mask] ** s
        return out * weight(x)

    points = [lo] + froots + [hi]
    total = 0.0
    for a, b in zip(points, points[1:]):
        if b - a < 1e-300:
            continue
        total += _quad_singular_interval(
            integrand, a, b, singular_left=a != lo, singular_right=b != hi, rel_tol=rel_tol
        )
    return total


def evaluate_zeta(
    f: Polynomial,
    phi: AmplitudeExpr | Polynomial,
    chi: CutoffConfig,
    s: float,
    leading: float | None = None,
) -> float:
    """Quadrature of the local zeta integrand |f|^s * phi * chi.

    The |f|^s singularity is handled by dyadic refinement toward the zero
    set; in 2D the integral is sliced along x1 with singular slices at the
    discriminant locus.  ``leading`` (when known) guards the integrable
    range s > leading.
    """
    if f.n > 2:
        raise ValueError("zeta quadrature supports n <= 2 only")
    if leading is not None and s <= leading:
        raise ValueError(f"s={s} at or below the leading candidate {leading}")
    if isinstance(phi, Polynomial):
        phi = AmplitudeExpr.from_polynomial(phi)
    R = chi.R
    if f.n == 1:
        coeffs = _coeff_list(f)

        def weight(x):
            return phi.evaluate_float(x) * chi.evaluate_float(x)

        return _zeta_1d_profile(coeffs, weight, s, -R, R)

    # n == 2: slice along x1; singular slices where f(x1, .) has repeated or
    # boundary-degenerate roots (discriminant locus), plus the axis x1 = 0
    disc = [float(c) for c in _discriminant_in_x1(f)]
    breakpoints = sorted({-R, R, 0.0} | set(_real_roots(disc, -R, R)))

    def outer(xs):
        out = np.zeros_like(xs)
        for i, x1 in enumerate(xs):
            coeffs = _slice_coeffs(f, float(x1))

            def weight(y, x1=x1):
                return phi.evaluate_float(np.full_like(y, x1), y) * chi.evaluate_float(
                    np.full_like(y, x1), y
                )

            out[i] = _zeta_1d_profile(coeffs, weight, s, -R, R, rel_tol=1e-9)
        return out

    total = 0.0
    for a, b in zip(breakpoints, breakpoints[1:]):
        if b - a < 1e-12:
            continue
        total += _quad_singular_interval(
            outer, a, b, singular_left=abs(a) != R, singular_right=abs(b) != R, rel_tol=1e-8
        )
    return total


def _coeff_list(f: Polynomial) -> list[float]:
    deg = max((e[0] for e in f.terms), default=0)
    return [float(f.coefficient((k,))) for k in range(deg + 1)]


def _slice_coeffs(f: Polynomial, x1: float) -> list[float]:
    """Coefficients in x2 of f(x1, x2) at fixed x1."""
    deg = max((e[1] for e in f.terms), default=0)
    out = [0.0] * (deg + 1)
    for e, c in f.terms.items():
        out[e[1]] += float(c) * x1 ** e[0]
    return out


def _discriminant_in_x1(f: Polynomial) -> list[Fraction]:
    """Resultant of f and df/dx2 in x2: polynomial in x1 vanishing where the
    slice root structure degenerates."""
    fy = f.partial(1)

    def coeff_rows(p: Polynomial) -> list[list[Fraction]]:
        degy = max((e[1] for e in p.terms), default=0)
        degx = max((e[0] for e in p.terms), default=0)
        rows = [[Fraction(0)] * (degx + 1) for _ in range(degy + 1)]
        for e, c in p.terms.items():
            rows[e[1]][e[0]] = c
        return rows

    a = coeff_rows(f)
    b = coeff_rows(fy)
    m, k = len(a) - 1, len(b) - 1
    if m < 1:
        return [Fraction(1)]
    size = m + k
    # Sylvester matrix with univariate-polynomial entries (in x1)
    def polymul(u, v):
        out = [Fraction(0)] * (len(u) + len(v) - 1)
        for i, ui in enumerate(u):
            for j, vj in enumerate(v):
                out[i + j] += ui * vj
        return out

    def polysub(u, v):
        out = [Fraction(0)] * max(len(u), len(v))
        for i, ui in enumerate(u):
            out[i] += ui
        for i, vi in enumerate(v):
            out[i] -= vi
        return out

    # build matrix of coefficient lists
    mat: list[list[list[Fraction]]] = []
    for i in range(k):
        row = [[Fraction(0)] for _ in range(size)]
        for j in range(m + 1):
            row[i + j] = a[m - j]
        mat.append(row)
    for i in range(m):
        row = [[Fraction(0)] for _ in range(size)]
        for j in range(k + 1):
            row[i + j] = b[k - j]
        mat.append(row)
    # fraction-free-ish determinant expansion by minors (size <= ~8 at desk scale)
    def det_poly(rows: list[list[list[Fraction]]]) -> list[Fraction]:
        sz = len(rows)
        if sz == 1:
            return rows[0][0]
        acc = [Fraction(0)]
        for col in range(sz):
            entry = rows[0][col]
            if all(c == 0 for c in entry):
                continue
            minor = [[r[c] for c in range(sz) if c != col] for r in rows[1:]]
            term = polymul(entry, det_poly(minor))
            if col % 2:
                acc = polysub(acc, term)
            else:
                acc = polysub(acc, [-c for c in term])
        return acc

    return univariate.trim(det_poly(mat)) or [Fraction(1)]


@dataclass(frozen=True)
class ZetaFit:
    lambda_hat: float
    rho_hat: int
    residue_hat: float
    s_grid: tuple[float, ...]

    def to_json_dict(self) -> dict:
        return {
            "lambdaHat": self.lambda_hat,
            "rhoHat": self.rho_hat,
            "residueHat": self.residue_hat,
            "sGrid": list(self.s_grid),
        }


def fit_pole(
    samples: Sequence[tuple[float, float]],
    lam: float | None = None,
    max_order: int = 2,
) -> ZetaFit:
    """Fit Z(s) ~ B/(s + lam)^rho from samples right of the pole.

    With ``lam`` given, rho comes from the log-log slope and the residue from
    a polynomial extrapolation of Z * (s + lam)^rho to the pole.
    """
    samples = sorted(samples, key=lambda t: t[0])
    svals = np.array([s for s, _ in samples])
    zvals = np.array([z for _, z in samples])
    if lam is None:
        from scipy.optimize import curve_fit

        def model(s, lam_, rho_, logb):
            return logb - rho_ * np.log(s + lam_)

        p0 = (-float(svals[0]) + 0.05, 1.0, 0.0)
        popt, _ = curve_fit(
            model, svals, np.log(np.abs(zvals)), p0=p0, maxfev=20000
        )
        lam = float(popt[0])
    deltas = svals + lam
    slope = np.polyfit(np.log(deltas), np.log(np.abs(zvals)), 1)[0]
    rho = int(min(max(round(-slope), 1), max_order))
    scaled = zvals * deltas**rho
    deg = min(3, len(samples) - 1)
    coef = np.polyfit(deltas, scaled, deg)
    residue = float(coef[-1])
    return ZetaFit(float(lam), rho, residue, tuple(float(s) for s in svals))


# ---------------------------------------------------------------------------
# Quintic-edge coefficient law
# ---------------------------------------------------------------------------


def quintic_edge_coefficients() -> tuple[float, float, float]:
    """(A, B, t0) for the amplitude family x1^2 + t x1 x2 + x2^2 against the
    phase with compact edge u^5 + 1: the zeta residue is proportional to
    A + t B, with the zero crossing at t0 = -A/B.

        A = (1/5) integral |u^5+1|^(-4/5) (u^2+1) du
        B = (1/5) integral |u^5+1|^(-4/5) u du
    """
    from scipy.integrate import quad

    def base(u):
        return abs(u**5 + 1.0) ** (-0.8)

    def split_quad(fn):
        return (
            quad(fn, -np.inf, -1.0, epsabs=1e-12, epsrel=1e-11, limit=400)[0]
            + quad(fn, -1.0, np.inf, epsabs=1e-12, epsrel=1e-11, limit=400)[0]
        )

    A = split_quad(lambda u: base(u) * (u * u + 1.0) / 5.0)
    B = split_quad(lambda u: base(u) * u / 5.0)
    assert A > 0, "the even-part coefficient integral must be positive"
    assert B < 0, "the odd-part coefficient integral must be negative"
    return A, B, -A / B


# ---------------------------------------------------------------------------
# End-to-end verification pipeline
# ---------------------------------------------------------------------------


def parse_tau_grid(spec: str) -> list[float]:
    """'2^5..2^14' or a comma list of numbers."""
    spec = spec.strip()
    if ".." in spec:
        lo, hi = spec.split("..")

        def parse_pow(tok: str) -> int:
            tok = tok.strip()
            if tok.startswith("2^"):
                return int(tok[2:])
            raise ValueError(f"grid endpoints must look like 2^K, got {tok!r}")

        return [2.0**k for k in range(parse_pow(lo), parse_pow(hi) + 1)]
    return [float(tok) for tok in spec.split(",") if tok.strip()]


def verify_numeric(
    f: Polynomial,
    amplitude: AmplitudeExpr,
    chi: CutoffConfig,
    taus: Sequence[float],
    seed: int = 0,
    nu_max: int = 10,
) -> dict:
    """Evaluate, fit, and report side by side with the combinatorial verdict."""
    from .zeta import oscillation_verdict

    samples = oscillatory_samples(f, amplitude, chi, taus)
    fit = fit_asymptotics(samples)
    phi_poly = amplitude.polynomial_part()
    verdict = oscillation_verdict(
        f,
        phi_poly,
        seed=seed,
        nu_max=nu_max,
        amplitude_polynomial=amplitude.is_polynomial(),
    )
    report = {
        "schemaVersion": 1,
        "seed": seed,
        "cutoff": {"shape": chi.shape, "r": chi.r, "R": chi.R},
        "samples": [
            {"tau": t, "re": v.real, "im": v.imag} for t, v in samples
        ],
        "fit": fit.to_json_dict(),
        "verdict": verdict.to_json_dict(),
        "amplitudePolynomialOnly": amplitude.is_polynomial(),
    }
    if verdict.beta is not None:
        report["betaAgreement"] = abs(fit.beta_hat - float(verdict.beta))
    return report
