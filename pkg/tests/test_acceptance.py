"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

The ten criteria cover, in order: Clifford relations, algebraic curvature
identities, trace identities (exact and on grids), derivative endomorphism
identities, sharpness on round spheres, soundness against spectrum oracles,
closed form versus optimizer agreement, the product manifold improvement,
the pair norm inequality suite, and grid convergence.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from conftest import (commuting_nabla_ric, random_curvature_tensor,
                      random_invariants, random_nabla_ric, sample_from_R)
from spinbound.bounds import (cor35_closed_form, derived_constants,
                              evaluate_all_families, optimize_t, ricci_family,
                              vanishing_report, weyl_closed_forms, weyl_family)
from spinbound.curvature import (ManifoldSpec, catalog_samples,
                                 conformal_scalar_curvature, conformal_torus_grid,
                                 grid_differentiate)
from spinbound.invariants import max_eig, pair_norm_sup, scan_invariants
from spinbound.spectra import oracle_for_spec, sphere_spectrum, torus_spectrum
from spinbound.spincurv import SpinCurvature


def _report(num: int, label: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {label}"
    if detail:
        line += f" ({detail})"
    print(line)


CATALOG_DOCS = {
    "sphere2": {"kind": "sphere", "n": 2, "r": 1.0},
    "sphere3": {"kind": "sphere", "n": 3, "r": 1.0},
    "sphere4": {"kind": "sphere", "n": 4, "r": 1.0},
    "sphere5": {"kind": "sphere", "n": 5, "r": 1.0},
    "sphere6": {"kind": "sphere", "n": 6, "r": 1.0},
    "sphere4_r2": {"kind": "sphere", "n": 4, "r": 2.0},
    "torus2": {"kind": "torus", "n": 2},
    "torus3": {"kind": "torus", "n": 3},
    "torus4": {"kind": "torus", "n": 4},
    "s2xs2": {"kind": "product", "factors": [{"kind": "sphere", "n": 2, "r": 1.0},
                                             {"kind": "sphere", "n": 2, "r": 1.0}]},
    "s2xt2": {"kind": "product", "factors": [{"kind": "sphere", "n": 2, "r": 1.0},
                                             {"kind": "torus", "n": 2}]},
}


@pytest.fixture(scope="module")
def catalog(reps):
    """Samples and spin curvature objects for every catalog manifold."""
    out = {}
    for name, doc in CATALOG_DOCS.items():
        samples = catalog_samples(ManifoldSpec.from_dict(doc))
        rep = reps[samples[0].n]
        out[name] = (doc, samples, [SpinCurvature(rep, s) for s in samples])
    return out


@pytest.fixture(scope="module")
def grid_residual_pair(reps):
    """Identity residual maxima on the conformal torus at spacing h and h/2."""
    results = []
    for m in (24, 48):
        grid = conformal_torus_grid(3, amplitude=0.05, nodes=[m, 1, 1])
        samples = grid_differentiate(ManifoldSpec(kind="grid", grid=grid))
        worst: dict[str, float] = {}
        s_err = 0.0
        x1 = np.arange(m) * (2.0 * np.pi / m)
        s_exact = conformal_scalar_curvature(3, 0.05, x1)
        for s in samples:
            sc = SpinCurvature(reps[3], s)
            for key, val in sc.all_identity_residuals().items():
                worst[key] = max(worst.get(key, 0.0), val)
            s_err = max(s_err, abs(s.S - s_exact[s.id]))
        worst["scalar_curvature_error"] = s_err
        results.append(worst)
    return results


def test_criterion_1_clifford_relations(reps):
    worst = max(reps[n].relation_residual() for n in range(2, 9))
    ok = worst < 1e-12
    _report(1, "Clifford relations for n in 2..8", ok, f"max residual {worst:.2e}")
    assert ok


def test_criterion_2_curvature_identities(reps):
    rng = np.random.default_rng(2026)
    worst_dec = worst_gh = worst_h2 = worst_h0 = 0.0
    for i in range(100):
        n = (4, 5, 6)[i % 3]
        s = sample_from_R(random_curvature_tensor(n, rng))
        worst_dec = max(worst_dec, s.symmetry_residuals()["decomposition"])
        res = SpinCurvature(reps[n], s).gh_identity_residuals()
        worst_gh = max(worst_gh, res["gh_scalar"])
        worst_h2 = max(worst_h2, res["h2_norm"])
        worst_h0 = max(worst_h0, res["h0_coeff"])
    ok = max(worst_dec, worst_gh, worst_h2, worst_h0) < 1e-9
    _report(2, "curvature identities on 100 random tensors", ok,
            f"decomposition {worst_dec:.2e}, G-H {worst_gh:.2e}, "
            f"H2 {worst_h2:.2e}, H0 {worst_h0:.2e}")
    assert ok


def test_criterion_3_trace_identities(catalog, grid_residual_pair):
    keys = ("ric_trace", "weyl_trace", "dC_trace")
    worst = 0.0
    for name, (_, _, scs) in catalog.items():
        for sc in scs:
            res = sc.trace_identity_residuals()
            worst = max(worst, *(res[k] for k in keys))
    coarse, fine = grid_residual_pair
    ratios = [coarse[k] / max(fine[k], 1e-300) for k in keys if coarse[k] > 1e-13]
    ok = worst < 1e-10 and all(r >= 3.5 for r in ratios)
    _report(3, "trace identities exact on catalog, convergent on grid", ok,
            f"max catalog residual {worst:.2e}, grid ratios "
            + ", ".join(f"{r:.1f}" for r in ratios))
    assert ok


def test_criterion_4_derivative_identities(reps):
    rng = np.random.default_rng(4)
    worst_ef = worst_exp = 0.0
    for i in range(500):
        n = 4 if i % 2 == 0 else 5
        s = sample_from_R(np.zeros((n, n, n, n)), nablaRic=random_nabla_ric(n, rng))
        res = SpinCurvature(reps[n], s).ef_identity_residuals()
        worst_ef = max(worst_ef, res["ef_scalar"])
        worst_exp = max(worst_exp, res["e_expansion"])
    worst_theta = worst_eta = 0.0
    for i in range(100):
        n = 4 if i % 2 == 0 else 5
        s = sample_from_R(np.zeros((n, n, n, n)), nablaRic=commuting_nabla_ric(n, rng))
        sc = SpinCurvature(reps[n], s)
        norms = s.norms()
        theta_direct = max_eig(sc.E_script)
        theta_formula = norms["nablaRic2"] / 4.0 - (n + 1) / (16.0 * n) * norms["dS2"]
        worst_theta = max(worst_theta, abs(theta_direct - theta_formula))
        eta_direct = max_eig(np.asarray(sc.F))
        eta_formula = norms["nablaRic2"] / 4.0 - n / (16.0 * (n - 1)) * norms["dS2"]
        worst_eta = max(worst_eta, abs(eta_direct - eta_formula))
    ok = max(worst_ef, worst_exp, worst_theta, worst_eta) < 1e-9
    _report(4, "derivative endomorphism identities on constrained draws", ok,
            f"E-F {worst_ef:.2e}, expansion {worst_exp:.2e}, "
            f"theta {worst_theta:.2e}, eta {worst_eta:.2e}")
    assert ok


def test_criterion_5_sphere_sharpness(reps):
    worst_friedrich = worst_other = 0.0
    for n in (2, 3, 4, 5, 6):
        for r in (0.5, 1.0, 2.0):
            samples = catalog_samples(ManifoldSpec.from_dict(
                {"kind": "sphere", "n": n, "r": r}))
            inv = scan_invariants(samples, reps[n], pair_coarse=300)
            lam1 = sphere_spectrum(n, r).lambda1_sq
            for b in evaluate_all_families(inv):
                if not b.applicable:
                    continue
                err = abs(b.value - lam1)
                if b.family == "friedrich":
                    worst_friedrich = max(worst_friedrich, err)
                else:
                    worst_other = max(worst_other, err)
    ok = worst_friedrich < 1e-12 and worst_other < 1e-6
    _report(5, "all applicable bounds sharp on round spheres", ok,
            f"Friedrich {worst_friedrich:.2e}, others {worst_other:.2e}")
    assert ok


def test_criterion_6_soundness_vs_oracle(catalog, reps):
    worst_excess = -math.inf
    vanishing_sound = True
    for name, (doc, samples, _) in catalog.items():
        inv = scan_invariants(samples, reps[samples[0].n], pair_coarse=2000)
        bounds = evaluate_all_families(inv)
        vanish = vanishing_report(inv, inv.delta_r_zero(), inv.delta_w_zero())
        oracles = [oracle_for_spec(doc)]
        if doc["kind"] == "torus":
            oracles.append(torus_spectrum(doc["n"], shift=[0.5] * doc["n"]))
        for oracle in oracles:
            lam1 = oracle.lambda1_sq
            for b in bounds:
                if b.applicable:
                    worst_excess = max(worst_excess, b.value - lam1)
            if any(e["holds"] for e in vanish.values() if e["kind"] == "vanishing"):
                vanishing_sound &= oracle.kernel_dim == 0
    ok = worst_excess <= 1e-9 and vanishing_sound
    _report(6, "bounds below lambda1^2 and vanishing implies trivial kernel", ok,
            f"worst excess {worst_excess:.2e}, vanishing sound {vanishing_sound}")
    assert ok


def test_criterion_7_closed_forms_vs_optimizer():
    rng = np.random.default_rng(7)
    worst = {"ricci": 0.0, "weyl_harmonic": 0.0, "weyl_general": 0.0}
    counts = {k: 0 for k in worst}

    while counts["ricci"] < 1000:
        inv = random_invariants((3, 4, 5, 6)[counts["ricci"] % 4], rng)
        res = cor35_closed_form(inv)
        if derived_constants(inv).A <= 0 or not res.applicable:
            continue
        counts["ricci"] += 1
        _, numeric = optimize_t(lambda t: ricci_family(inv, t), 1.0)
        rel = abs(numeric - res.value) / max(1.0, abs(res.value))
        worst["ricci"] = max(worst["ricci"], rel)

    while counts["weyl_harmonic"] < 1000:
        inv = random_invariants((3, 4, 5, 6)[counts["weyl_harmonic"] % 4], rng)
        if inv.mu <= 0 or inv.nu0 <= 0:
            continue
        counts["weyl_harmonic"] += 1
        counts["weyl_general"] += 1
        forms = weyl_closed_forms(inv)
        hint = 1.0 / inv.mu
        _, v56 = optimize_t(lambda t: weyl_family(inv, t, True), hint)
        _, v60 = optimize_t(lambda t: weyl_family(inv, t, False), hint)
        worst["weyl_harmonic"] = max(
            worst["weyl_harmonic"],
            abs(v56 - forms["weyl_cor42"].value) / max(1.0, abs(v56)))
        worst["weyl_general"] = max(
            worst["weyl_general"],
            abs(v60 - forms["weyl_cor46"].value) / max(1.0, abs(v60)))

    ok = max(worst.values()) < 1e-6
    _report(7, "closed forms match the t-optimizer on 1000 random records", ok,
            ", ".join(f"{k} {v:.2e}" for k, v in worst.items()))
    assert ok


def test_criterion_8_product_improvement(catalog, reps):
    _, samples, _ = catalog["s2xs2"]
    inv = scan_invariants(samples, reps[4], pair_coarse=4000)
    _, value = optimize_t(lambda t: weyl_family(inv, t, True), 1.0)
    friedrich = 4.0 / 3.0
    ok = value > friedrich + 1e-6 and value <= 2.0
    _report(8, "harmonic Weyl bound beats Friedrich on S2 x S2", ok,
            f"optimized {value:.6f} in (4/3, 2]")
    assert ok


def test_criterion_9_pair_norm_inequalities(catalog):
    rng = np.random.default_rng(9)
    worst = -math.inf
    for name, (_, samples, scs) in catalog.items():
        for s, sc in zip(samples, scs):
            n, N = s.n, sc.N
            for table_attr, sq in (("C_tensor", sc.C2_tensor()),
                                   ("B_tensor", sc.B2_tensor())):
                sup = pair_norm_sup(getattr(sc, table_attr), coarse=2000, seed=11)
                psi = (rng.standard_normal((1000, n, N))
                       + 1j * rng.standard_normal((1000, n, N)))
                lhs = np.abs(np.einsum("klxy,pky,plx->p", sq, psi, psi.conj()))
                rhs = (n - 1) ** 2 * sup**2 * np.einsum("pkx,pkx->p", psi, psi.conj()).real
                worst = max(worst, float((lhs - rhs).max()))
    ok = worst <= 1e-9
    _report(9, "pair norm inequalities on random spinor tuples", ok,
            f"worst violation {worst:.2e}")
    assert ok


def test_criterion_10_grid_convergence(grid_residual_pair):
    coarse, fine = grid_residual_pair
    keys = [k for k in ("scalar_curvature_error", "dC_trace") if coarse[k] > 1e-13]
    ratios = {k: coarse[k] / max(fine[k], 1e-300) for k in keys}
    ok = all(r >= 3.5 for r in ratios.values())
    _report(10, "grid residuals shrink by >= 3.5 when h is halved", ok,
            ", ".join(f"{k} {r:.1f}" for k, r in ratios.items()))
    assert ok
