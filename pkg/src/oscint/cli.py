"""Thin command-line client for the service handlers.

Every subcommand marshals its flags into the request model, invokes the
corresponding handler (in-process by default, over HTTP with --server), and
prints the JSON response to stdout or --json PATH.  A short human summary
goes to stderr.

Exit codes: 0 success, 2 input error, 3 Inconclusive verdict under --strict.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import service
from .schemas import (
    CutoffSpec,
    FanRequest,
    PairRequest,
    PolesRequest,
    PolyhedronRequest,
    SymmetryRequest,
    VerdictRequest,
    VerifyNumericRequest,
)


def _emit(args, payload: dict, summary: str) -> None:
    text = json.dumps(payload, indent=2)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print(summary, file=sys.stderr)


def _post(args, path: str, request) -> dict:
    """Dispatch: HTTP when --server is set, otherwise the in-process handler."""
    if args.server:
        import httpx

        resp = httpx.post(
            args.server.rstrip("/") + path, json=request.model_dump(), timeout=600.0
        )
        if resp.status_code == 422:
            raise service.InputError("server", resp.json().get("detail", "rejected"))
        resp.raise_for_status()
        return resp.json()
    handler = {
        "/polyhedron": service.handle_polyhedron,
        "/pair": service.handle_pair,
        "/fan": service.handle_fan,
        "/resolve": service.handle_resolve,
        "/poles": service.handle_poles,
        "/verdict": service.handle_verdict,
        "/symmetry": service.handle_symmetry,
        "/verify-numeric": service.handle_verify_numeric,
    }[path]
    return handler(request).model_dump()


def _common(sub, amp_default: str = "1"):
    sub.add_argument("--dim", type=int, required=True, help="ambient dimension")
    sub.add_argument("--phase", required=True, help="phase polynomial, e.g. 'x1^5+x2^5'")
    sub.add_argument("--amp", default=amp_default, help="amplitude (default '1')")
    sub.add_argument("--json", help="write the JSON report to this path")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--server", help="base URL of a running service; default in-process")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="oscint",
        description="Newton-polyhedral analysis of oscillatory integrals",
    )
    sp = ap.add_subparsers(dest="command", required=True)

    s = sp.add_parser("polyhedron", help="Newton polyhedron of the phase")
    _common(s)

    s = sp.add_parser("pair", help="pair invariants d, m, essential set")
    _common(s)

    s = sp.add_parser("fan", help="dual fan (refined with the amplitude's when given)")
    _common(s)
    s.add_argument("--emit-fan", help="also write the fan dump to this path")

    s = sp.add_parser("resolve", help="unimodular subdivision with chart data")
    _common(s)
    s.add_argument("--emit-fan", help="also write the fan dump to this path")

    s = sp.add_parser("poles", help="candidate pole set")
    _common(s)
    s.add_argument("--nu-max", type=int, default=10)

    s = sp.add_parser("verdict", help="oscillation-index verdict with hypothesis audit")
    _common(s)
    s.add_argument("--nu-max", type=int, default=10)
    s.add_argument("--strict", action="store_true", help="exit 3 when Inconclusive")

    s = sp.add_parser("symmetry", help="distance-product symmetry report")
    _common(s)

    s = sp.add_parser("verify-numeric", help="quadrature + exponent fit vs the verdict")
    _common(s)
    s.add_argument("--cutoff", default="0.25,0.5", help="r,R of the plateau cutoff")
    s.add_argument("--cutoff-shape", choices=["Product", "Radial"], default="Product")
    s.add_argument("--tau-grid", default="2^5..2^14", help="'2^a..2^b' or comma list")
    s.add_argument("--nu-max", type=int, default=10)
    s.add_argument("--csv", help="dump tau samples as CSV for external plotting")
    s.add_argument("--out", help="alias of --json", dest="json_alias")

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except service.InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _run(args) -> int:
    cmd = args.command
    if cmd == "polyhedron":
        payload = _post(args, "/polyhedron", PolyhedronRequest(dim=args.dim, phase=args.phase))
        _emit(args, payload, f"vertices={payload['vertices']} convenient={payload['convenient']}")
        return 0
    if cmd == "pair":
        payload = _post(
            args, "/pair", PairRequest(dim=args.dim, phase=args.phase, amp=args.amp, seed=args.seed)
        )
        _emit(args, payload, f"d={payload['d']} m={payload['m']} orderBound={payload['orderBound']}")
        return 0
    if cmd in ("fan", "resolve"):
        req = FanRequest(dim=args.dim, phase=args.phase, amp=args.amp if args.amp != "1" else None)
        payload = _post(args, f"/{cmd}", req)
        if getattr(args, "emit_fan", None):
            with open(args.emit_fan, "w") as fh:
                json.dump({"rays": payload["rays"], "maxCones": payload["maxCones"]}, fh, indent=2)
        _emit(args, payload, f"rays={payload['rays']}")
        return 0
    if cmd == "poles":
        payload = _post(
            args,
            "/poles",
            PolesRequest(dim=args.dim, phase=args.phase, amp=args.amp, nuMax=args.nu_max),
        )
        _emit(args, payload, f"leading={payload['leading']} candidates={len(payload['candidates'])}")
        return 0
    if cmd == "verdict":
        payload = _post(
            args,
            "/verdict",
            VerdictRequest(
                dim=args.dim, phase=args.phase, amp=args.amp, seed=args.seed, nuMax=args.nu_max
            ),
        )
        _emit(
            args,
            payload,
            f"claim={payload['claim']} d={payload['dNewton']} beta={payload['beta']} eta={payload['eta']}",
        )
        if args.strict and payload["claim"] == "Inconclusive":
            return 3
        return 0
    if cmd == "symmetry":
        payload = _post(
            args,
            "/symmetry",
            SymmetryRequest(dim=args.dim, phase=args.phase, amp=args.amp, seed=args.seed),
        )
        _emit(args, payload, f"dProduct={payload['dProduct']} proportional={payload['proportional']}")
        return 0
    if cmd == "verify-numeric":
        r, R = (float(t) for t in args.cutoff.split(","))
        if args.json_alias and not args.json:
            args.json = args.json_alias
        payload = _post(
            args,
            "/verify-numeric",
            VerifyNumericRequest(
                dim=args.dim,
                phase=args.phase,
                amp=args.amp,
                cutoff=CutoffSpec(shape=args.cutoff_shape, r=r, R=R),
                tauGrid=args.tau_grid,
                seed=args.seed,
                nuMax=args.nu_max,
            ),
        )
        if args.csv:
            with open(args.csv, "w") as fh:
                fh.write("tau,re,im\n")
                for s in payload["samples"]:
                    fh.write(f"{s['tau']},{s['re']},{s['im']}\n")
        fit = payload["fit"]
        _emit(
            args,
            payload,
            f"betaHat={fit['betaHat']:.4f} etaHat={fit['etaHat']} claim={payload['verdict']['claim']}",
        )
        return 0
    raise AssertionError(f"unhandled command {cmd}")


if __name__ == "__main__":
    raise SystemExit(main())
