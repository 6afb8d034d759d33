"""Command-line front end.

Subcommands:

* ``catalog`` lists the built-in manifold kinds and their parameter schemas.
* ``analyze`` runs the full pipeline on a manifold spec file and writes a
  report (JSON, or CSV for the bounds table).
* ``verify`` runs the soundness checks for a spec with a spectrum oracle:
  every applicable bound must stay below the first squared eigenvalue and
  all internal identity residuals must stay within tolerance.

Exit codes: 0 ok, 1 property violation, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional

import numpy as np

from . import __version__
from .bounds import FAMILIES, evaluate_all_families, vanishing_report
from .clifford import CliffordError, build_clifford_rep
from .curvature import (CATALOG_SCHEMAS, CurvatureError, ManifoldSpec,
                        catalog_samples, conformal_torus_grid, grid_differentiate)
from .invariants import InvariantsError, scan_invariants
from .spectra import SpectrumError, oracle_for_spec
from .spincurv import SpinCurvature

_INPUT_ERRORS = (CurvatureError, CliffordError, InvariantsError, SpectrumError,
                 KeyError, ValueError, OSError, json.JSONDecodeError)

EXACT_IDENTITY_TOL = 1e-9
GRID_IDENTITY_TOL = 1e-3
SOUNDNESS_SLACK = 1e-9


def _residual_summary(samples, rep, limit: int = 4000) -> dict[str, float]:
    """Max identity residual per check over (a prefix of) the sample set."""
    out: dict[str, float] = {}
    for s in samples[:limit]:
        sc = SpinCurvature(rep, s)
        for key, val in sc.all_identity_residuals().items():
            out[key] = max(out.get(key, 0.0), val)
        for key, val in s.symmetry_residuals().items():
            out[key] = max(out.get(key, 0.0), val)
    return out


def _grid_refine_ratio(doc: dict, seed: int) -> Optional[dict]:
    """Halve the grid spacing of a conformal torus and report how much the
    worst identity residual drops (4th-order stencils: expect >> 3.5)."""
    if doc.get("kind") != "conformal_torus":
        return None
    n = int(doc["n"])
    amp = float(doc.get("amplitude", 0.05))
    nodes = doc.get("nodes") or [24] + [5] * (n - 1)
    fine = [2 * int(nodes[0])] + [int(m) for m in nodes[1:]]
    rep = build_clifford_rep(n)
    ratios = {}
    res = []
    for nds in (nodes, fine):
        grid = conformal_torus_grid(n, amplitude=amp, nodes=nds)
        samples = grid_differentiate(ManifoldSpec(kind="grid", grid=grid))
        res.append(_residual_summary(samples, rep))
    for key in res[0]:
        coarse, refined = res[0][key], res[1].get(key, 0.0)
        if coarse > 1e-13:
            ratios[key] = coarse / max(refined, 1e-300)
    return {"coarse": res[0], "fine": res[1], "ratio": ratios}


def build_report(doc: dict, seed: int = 0, tol_pair: float = 1e-3,
                 tol_eig: float = EXACT_IDENTITY_TOL, grid_refine: bool = False,
                 families: Optional[list[str]] = None,
                 pair_coarse: Optional[int] = None) -> dict:
    spec = ManifoldSpec.from_dict(doc)
    samples = catalog_samples(spec)
    n = samples[0].n
    rep = build_clifford_rep(n)
    exact = all(s.exact for s in samples)
    identity_tol = tol_eig if exact else GRID_IDENTITY_TOL

    inv = scan_invariants(samples, rep, pair_tol=tol_pair, seed=seed,
                          pair_coarse=pair_coarse)
    hyp_tol = 1e-8 if exact else GRID_IDENTITY_TOL
    bounds = evaluate_all_families(inv, hyp_tol=hyp_tol)
    if families:
        unknown = set(families) - set(FAMILIES)
        if unknown:
            raise CurvatureError(f"unknown bound families: {sorted(unknown)}")
        bounds = [b for b in bounds if b.family in families]
    vanish = vanishing_report(inv, inv.delta_r_zero(hyp_tol), inv.delta_w_zero(hyp_tol))

    residuals = _residual_summary(samples, rep)
    worst = max(residuals.values()) if residuals else 0.0

    oracle = oracle_for_spec(doc)
    comparison = None
    if oracle is not None:
        lam1 = oracle.lambda1_sq
        comparison = {
            "lambda1_sq": lam1,
            "kernel_dim": oracle.kernel_dim,
            "margins": {b.family: lam1 - b.value for b in bounds if b.applicable},
            "sound": all(b.value <= lam1 + SOUNDNESS_SLACK for b in bounds if b.applicable),
            "vanishing_consistent": (oracle.kernel_dim == 0
                                     or not any(e["holds"] for e in vanish.values()
                                                if e["kind"] == "vanishing")),
        }

    report = {
        "version": __version__,
        "spec": spec.to_dict() if spec.grid is None else {"kind": spec.kind, "grid": "inline"},
        "n": n,
        "n_samples": len(samples),
        "exact": exact,
        "tolerances": {"pair": tol_pair, "identity": identity_tol, "hypothesis": hyp_tol,
                       "soundness_slack": SOUNDNESS_SLACK},
        "seed": seed,
        "invariants": inv.to_dict(),
        "bounds": [b.to_dict() for b in bounds],
        "vanishing": vanish,
        "oracle": oracle.to_dict() if oracle is not None else None,
        "oracle_comparison": comparison,
        "identity_residuals": residuals,
        "identity_max_residual": worst,
        "identity_ok": worst <= identity_tol,
        "norm_convention": "tensor (Frobenius) norm for |Ric - S/n g|",
    }
    if grid_refine:
        report["grid_refine"] = _grid_refine_ratio(doc, seed)
    return report


def _bounds_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["family", "applicable", "value", "effective", "t_star", "reason"])
    for b in report["bounds"]:
        writer.writerow([b["family"], b["applicable"], b["value"], b["effective"],
                         b["t_star"], b["reason"]])
    return buf.getvalue()


class _JSONEncoder(json.JSONEncoder):
    def default(self, o):
        if isinstance(o, (np.floating, np.integer)):
            return o.item()
        if isinstance(o, np.bool_):
            return bool(o)
        if isinstance(o, np.ndarray):
            return o.tolist()
        return super().default(o)


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_catalog(args) -> int:
    if args.json:
        print(json.dumps(CATALOG_SCHEMAS, indent=2))
    else:
        for kind, schema in CATALOG_SCHEMAS.items():
            print(kind)
            for key, desc in schema.items():
                print(f"  {key}: {desc}")
    return 0


def _load_spec(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def cmd_analyze(args) -> int:
    doc = _load_spec(args.spec)
    report = build_report(doc, seed=args.seed, tol_pair=args.tol_pair,
                          tol_eig=args.tol_eig, grid_refine=args.grid_refine,
                          families=args.families.split(",") if args.families else None,
                          pair_coarse=args.pair_coarse)
    if args.format == "csv":
        _emit(_bounds_csv(report), args.output)
    else:
        _emit(json.dumps(report, indent=2, cls=_JSONEncoder) + "\n", args.output)
    return 0 if report["identity_ok"] else 1


def cmd_verify(args) -> int:
    doc = _load_spec(args.spec)
    report = build_report(doc, seed=args.seed, tol_pair=args.tol_pair,
                          tol_eig=args.tol_eig)
    failures = 0

    def check(label: str, ok: bool, detail: str = "") -> None:
        nonlocal failures
        print(f"[{'PASS' if ok else 'FAIL'}] {label}" + (f": {detail}" if detail else ""))
        if not ok:
            failures += 1

    check("identity residuals within tolerance", report["identity_ok"],
          f"max {report['identity_max_residual']:.3e} vs {report['tolerances']['identity']:.1e}")

    cmp_ = report["oracle_comparison"]
    if cmp_ is None:
        print("no spectrum oracle for this manifold kind", file=sys.stderr)
        return 2
    lam1 = cmp_["lambda1_sq"]
    for b in report["bounds"]:
        if not b["applicable"]:
            continue
        check(f"{b['family']} <= lambda1^2",
              b["value"] <= lam1 + SOUNDNESS_SLACK,
              f"bound {b['value']:.6g}, lambda1^2 {lam1:.6g}, "
              f"margin {lam1 - b['value']:.3e}")
    check("vanishing criteria consistent with kernel", cmp_["vanishing_consistent"])
    return 0 if failures == 0 else 1


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinbound",
                                     description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_cat = sub.add_parser("catalog", help="list built-in manifold kinds")
    p_cat.add_argument("--json", action="store_true", help="machine-readable schema")
    p_cat.set_defaults(func=cmd_catalog)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("spec", help="manifold spec file (JSON)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol-pair", type=float, default=1e-3,
                        help="requested accuracy of the pair-norm suprema")
    common.add_argument("--tol-eig", type=float, default=EXACT_IDENTITY_TOL,
                        help="identity residual tolerance for exact samples")

    p_an = sub.add_parser("analyze", parents=[common], help="full report for a spec file")
    p_an.add_argument("--format", choices=("json", "csv"), default="json")
    p_an.add_argument("--output", default=None, help="write here instead of stdout")
    p_an.add_argument("--families", default=None,
                      help="comma-separated subset of bound families")
    p_an.add_argument("--grid-refine", action="store_true",
                      help="re-run conformal torus grids at half spacing")
    p_an.add_argument("--pair-coarse", type=int, default=None,
                      help="coarse sweep size for the pair-norm search")
    p_an.set_defaults(func=cmd_analyze)

    p_ver = sub.add_parser("verify", parents=[common],
                           help="soundness checks against the spectrum oracle")
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; keep that contract
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
