"""FastAPI service wrapping the exact pipeline.

Handlers are plain functions over the pydantic models so the CLI can call
them in-process; the app routes are thin wrappers.  Input errors surface as
HTTP 422 with a module-tagged message.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import __version__
from .fan import normal_fan, pullback, resolution_fan
from .numeric import CutoffConfig, parse_amplitude, parse_tau_grid, verify_numeric
from .pair import analyze_pair
from .poly import Polynomial, format_rational, parse_polynomial
from .polyhedron import polyhedron_of
from .schemas import (
    FanRequest,
    FanResponse,
    PairRequest,
    PairResponse,
    PolesRequest,
    PolesResponse,
    PolyhedronRequest,
    PolyhedronResponse,
    ResolveResponse,
    SymmetryRequest,
    SymmetryResponse,
    VerdictRequest,
    VerdictResponse,
    VerifyNumericRequest,
    VerifyNumericResponse,
)
from .zeta import candidate_poles_general, oscillation_verdict, symmetry_check


class InputError(ValueError):
    """User input rejected; carries the originating module tag."""

    def __init__(self, module: str, message: str):
        super().__init__(f"[{module}] {message}")
        self.module = module


def _parse(text: str, dim: int, what: str) -> Polynomial:
    try:
        return parse_polynomial(text, dim)
    except ValueError as exc:
        raise InputError("parser", f"{what}: {exc}") from exc


def handle_polyhedron(req: PolyhedronRequest) -> PolyhedronResponse:
    p = _parse(req.phase, req.dim, "phase")
    try:
        P = polyhedron_of(p)
    except ValueError as exc:
        raise InputError("polyhedron", str(exc)) from exc
    base = P.to_json_dict()
    return PolyhedronResponse(
        n=base["n"],
        vertices=base["vertices"],
        facets=base["facets"],
        convenient=P.is_convenient(),
        diagram=[f.to_json_dict() for f in P.newton_diagram()],
    )


def handle_pair(req: PairRequest) -> PairResponse:
    f = _parse(req.phase, req.dim, "phase")
    phi = _parse(req.amp, req.dim, "amp")
    try:
        pa = analyze_pair(f, phi, seed=req.seed)
    except ValueError as exc:
        raise InputError("pair", str(exc)) from exc
    return PairResponse(**pa.to_json_dict())


def handle_fan(req: FanRequest) -> FanResponse:
    f = _parse(req.phase, req.dim, "phase")
    try:
        fan = normal_fan(polyhedron_of(f))
        if req.amp is not None:
            from .fan import common_refinement

            phi = _parse(req.amp, req.dim, "amp")
            fan = common_refinement(fan, normal_fan(polyhedron_of(phi)))
    except ValueError as exc:
        raise InputError("fan", str(exc)) from exc
    return FanResponse(**fan.to_json_dict())


def handle_resolve(req: FanRequest) -> ResolveResponse:
    f = _parse(req.phase, req.dim, "phase")
    phi = _parse(req.amp, req.dim, "amp") if req.amp is not None else None
    try:
        Pf = polyhedron_of(f)
        Pphi = polyhedron_of(phi) if phi is not None else None
        fan = resolution_fan(Pf, Pphi)
        charts = [
            pullback(f, sigma, phi=phi, Pf=Pf, Pphi=Pphi).to_json_dict()
            for sigma in fan.max_cones
        ]
    except ValueError as exc:
        raise InputError("fan", str(exc)) from exc
    dump = fan.to_json_dict()
    return ResolveResponse(rays=dump["rays"], maxCones=dump["maxCones"], charts=charts)


def handle_poles(req: PolesRequest) -> PolesResponse:
    f = _parse(req.phase, req.dim, "phase")
    phi = _parse(req.amp, req.dim, "amp")
    try:
        Pf = polyhedron_of(f)
        Pphi = polyhedron_of(phi)
        fan = resolution_fan(Pf, Pphi)
        candidates, leading = candidate_poles_general(Pf, Pphi, fan, req.nuMax)
    except ValueError as exc:
        raise InputError("zeta", str(exc)) from exc
    return PolesResponse(
        leading=format_rational(leading),
        candidates=[c.to_json_dict() for c in candidates],
    )


def handle_verdict(req: VerdictRequest) -> VerdictResponse:
    f = _parse(req.phase, req.dim, "phase")
    amp = _parse_amp(req.amp, req.dim)
    try:
        verdict = oscillation_verdict(
            f,
            amp.polynomial_part(),
            seed=req.seed,
            nu_max=req.nuMax,
            amplitude_polynomial=amp.is_polynomial(),
        )
    except ValueError as exc:
        raise InputError("zeta", str(exc)) from exc
    return VerdictResponse(
        **verdict.to_json_dict(), amplitudePolynomialOnly=amp.is_polynomial()
    )


def _parse_amp(text: str, dim: int):
    try:
        return parse_amplitude(text, dim)
    except ValueError as exc:
        raise InputError("parser", f"amp: {exc}") from exc


def handle_symmetry(req: SymmetryRequest) -> SymmetryResponse:
    f = _parse(req.phase, req.dim, "phase")
    phi = _parse(req.amp, req.dim, "amp")
    try:
        report = symmetry_check(f, phi, seed=req.seed)
    except ValueError as exc:
        raise InputError("zeta", str(exc)) from exc
    return SymmetryResponse(**report)


def handle_verify_numeric(req: VerifyNumericRequest) -> VerifyNumericResponse:
    f = _parse(req.phase, req.dim, "phase")
    amp = _parse_amp(req.amp, req.dim)
    try:
        chi = CutoffConfig(shape=req.cutoff.shape, r=req.cutoff.r, R=req.cutoff.R)
        taus = parse_tau_grid(req.tauGrid)
        report = verify_numeric(f, amp, chi, taus, seed=req.seed, nu_max=req.nuMax)
    except ValueError as exc:
        raise InputError("numeric", str(exc)) from exc
    return VerifyNumericResponse(**report)


def create_app() -> FastAPI:
    app = FastAPI(
        title="oscint",
        description="Newton-polyhedral invariants and oscillation-index verdicts",
        version=__version__,
    )

    def wrap(handler, req):
        try:
            return handler(req)
        except InputError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.post("/polyhedron", response_model=PolyhedronResponse)
    def polyhedron(req: PolyhedronRequest):
        return wrap(handle_polyhedron, req)

    @app.post("/pair", response_model=PairResponse)
    def pair(req: PairRequest):
        return wrap(handle_pair, req)

    @app.post("/fan", response_model=FanResponse)
    def fan(req: FanRequest):
        return wrap(handle_fan, req)

    @app.post("/resolve", response_model=ResolveResponse)
    def resolve(req: FanRequest):
        return wrap(handle_resolve, req)

    @app.post("/poles", response_model=PolesResponse)
    def poles(req: PolesRequest):
        return wrap(handle_poles, req)

    @app.post("/verdict", response_model=VerdictResponse)
    def verdict(req: VerdictRequest):
        return wrap(handle_verdict, req)

    @app.post("/symmetry", response_model=SymmetryResponse)
    def symmetry(req: SymmetryRequest):
        return wrap(handle_symmetry, req)

    @app.post("/verify-numeric", response_model=VerifyNumericResponse)
    def verify(req: VerifyNumericRequest):
        return wrap(handle_verify_numeric, req)

    return app


app = create_app()
