"""Command line interface.

Exit codes: 0 on success, 2 for inadmissible parameters or bad arguments,
1 for numerical failures.  Errors go to stderr as one JSON object.
"""
import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import barrier, export, limacon
from . import rot_profile as rp
from . import trans_profile as tp
from .quadrature import NumericalFailure, default_tol

EXIT_OK, EXIT_NUMERIC, EXIT_INPUT = 0, 1, 2


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p, d=True):
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--H", type=float, required=True)
    if d:
        p.add_argument("--d", type=float, required=True)
        p.add_argument("--regime", choices=("sub", "critical", "super"), default=None)


def build_parser():
    ap = _Parser(prog="hcmc", description="Rotational and translation-invariant H_r-hypersurfaces in H^n x R.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("profile", help="sample the rotational profile lambda")
    _common(p)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")

    p = sub.add_parser("classify", help="shape, topology and singular set")
    _common(p)
    p.add_argument("--format", choices=("json",), default="json")
    p.add_argument("--out")

    p = sub.add_parser("translate", help="sample the translation profile mu")
    _common(p, d=False)
    p.add_argument("--eps", type=float, default=0.0)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")

    p = sub.add_parser("estimates", help="barrier radii, heights and bounds")
    _common(p)
    p.add_argument("--format", choices=("json",), default="json")
    p.add_argument("--out")

    p = sub.add_parser("limacon", help="hyperbolic limacon distances")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--format", choices=("json",), default="json")
    p.add_argument("--out")

    p = sub.add_parser("mesh", help="OBJ mesh of the assembled surface (n = 2)")
    _common(p)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--azimuthal", type=int, default=64)
    p.add_argument("--periods", type=int, default=1)
    p.add_argument("--format", choices=("obj",), default="obj")
    p.add_argument("--out", required=True)

    p = sub.add_parser("sweep", help="classify along a grid of d values")
    _common(p, d=False)
    p.add_argument("--regime", choices=("sub", "critical", "super"), default=None)
    p.add_argument("--grid", required=True,
                   help="d values: 'start:stop:count' or a comma separated list")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("json",), default="json")
    p.add_argument("--out", help="directory for per-point files and sweep.json")
    return ap


def parse_grid(spec):
    spec = spec.strip()
    try:
        if ":" in spec:
            start, stop, count = spec.split(":")
            count = int(count)
            if count < 1:
                raise ValueError
            return [float(v) for v in np.linspace(float(start), float(stop), count)]
        vals = [float(v) for v in spec.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"bad grid spec {spec!r}") from None
    if not vals:
        raise UsageError("empty grid")
    return vals


def _emit(text, out):
    if out:
        export.atomic_write(out, text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _params(a):
    return rp.ProfileParams(a.n, a.r, a.H, a.d, regime=a.regime)


def cmd_profile(a):
    params = _params(a)
    dom = rp.profile_domain(params)
    table = export.profile_table(params, a.samples, dom)
    if a.format == "csv":
        _emit(export.table_to_csv(table, export.PROFILE_COLUMNS), a.out)
    else:
        rows = [dict(zip(export.PROFILE_COLUMNS, vals))
                for vals in zip(*(table[c].tolist() for c in export.PROFILE_COLUMNS))]
        _emit(export.to_json({"params": params, "domain": dom, "samples": rows}), a.out)


def cmd_classify(a):
    params = _params(a)
    rec = rp.classify(params)
    body = export._jsonable(rec)
    body["params"] = export._jsonable(params)
    _emit(json.dumps(body, indent=2, allow_nan=False), a.out)


def cmd_translate(a):
    params = tp.TranslationParams(a.n, a.r, a.H, a.eps)
    table = export.translation_table(params, a.samples)
    if a.format == "csv":
        _emit(export.table_to_csv(table, export.TRANSLATION_COLUMNS), a.out)
    else:
        rows = [dict(zip(export.TRANSLATION_COLUMNS, vals))
                for vals in zip(*(table[c].tolist() for c in export.TRANSLATION_COLUMNS))]
        _emit(export.to_json({"params": params, "rho_plus": tp.trans_domain(params),
                              "samples": rows}), a.out)


def cmd_estimates(a):
    _emit(export.to_json(barrier.barrier_report(a.n, a.r, a.H, a.d)), a.out)


def cmd_limacon(a):
    spec = limacon.LimaconSpec(a.a, a.c)
    theta0, dist = limacon.limacon_min_distance(spec)
    inner, ell, outer = spec.radii
    _emit(export.to_json({"a": a.a, "c": a.c, "ell": ell, "oracle_distance": dist,
                          "theta0": theta0, "inner_radius": inner, "outer_radius": outer,
                          "difference": abs(ell - dist)}), a.out)


def cmd_mesh(a):
    params = _params(a)
    mesh, plan = export.embed_profile(params, a.samples, a.azimuthal, a.periods)
    export.write_mesh(mesh, a.out)
    summary = {"vertices": len(mesh.vertices), "faces": len(mesh.faces),
               "euler_characteristic": mesh.euler_characteristic(),
               "boundary_edges": len(mesh.boundary_edges()),
               "singular_vertices": len(mesh.singular), "pieces": len(plan.pieces),
               "junctions": plan.junctions, "out": a.out}
    sys.stdout.write(json.dumps(summary) + "\n")


def _sweep_point(job):
    """Classify one grid point; returns a JSON-ready dict (never raises for
    inadmissible input)."""
    idx, n, r, H, d, regime, out_dir = job
    entry = {"index": idx, "d": d}
    try:
        rec = rp.classify(rp.ProfileParams(n, r, H, d, regime=regime))
        entry.update(status="ok", record=export._jsonable(rec))
    except (rp.InadmissibleParameters, rp.DomainError) as exc:
        entry.update(status="inadmissible", reason=str(exc))
    except (NumericalFailure, ArithmeticError) as exc:
        entry.update(status="failed", reason=f"{type(exc).__name__}: {exc}")
    if out_dir:
        export.atomic_write(os.path.join(out_dir, f"point-{idx:05d}.json"),
                            json.dumps(entry, allow_nan=False))
    return entry


def cmd_sweep(a):
    grid = parse_grid(a.grid)
    if a.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    if a.out:
        os.makedirs(a.out, exist_ok=True)
    jobs = [(i, a.n, a.r, a.H, d, a.regime, a.out) for i, d in enumerate(grid)]
    if a.jobs == 1:
        results = [_sweep_point(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=a.jobs) as pool:
            results = list(pool.map(_sweep_point, jobs))
    text = json.dumps({"n": a.n, "r": a.r, "H": a.H, "points": results}, indent=2, allow_nan=False)
    _emit(text, os.path.join(a.out, "sweep.json") if a.out else None)
    if any(p["status"] == "failed" for p in results):
        return EXIT_NUMERIC
    return EXIT_OK


COMMANDS = {
    "profile": cmd_profile, "classify": cmd_classify, "translate": cmd_translate,
    "estimates": cmd_estimates, "limacon": cmd_limacon, "mesh": cmd_mesh, "sweep": cmd_sweep,
}


def _fail(code, exc):
    err = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
    sys.stderr.write(json.dumps(err) + "\n")
    return code


def run_cli(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        default_tol()  # validate HCMC_TOL early
        code = COMMANDS[args.command](args)
        return EXIT_OK if code is None else code
    except (NumericalFailure, ArithmeticError) as exc:
        return _fail(EXIT_NUMERIC, exc)
    except (UsageError, ValueError, OSError) as exc:
        # InadmissibleParameters and DomainError are ValueErrors
        return _fail(EXIT_INPUT, exc)
    except Exception as exc:  # noqa: BLE001 - surfaced as an internal failure
        return _fail(EXIT_NUMERIC, exc)


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
