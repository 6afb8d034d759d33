"""Global curvature invariants scanned over point samples.

The record produced here is everything the bound formulas consume: extrema of
the scalar curvature and of Ricci eigenvalues, extrema of tensor norms, the
spectral invariants of H, E_script and F, and the orthonormal-pair operator
norm suprema of the bilinear endomorphisms B and C.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from .clifford import CliffordRep
from .curvature import PointSample
from .spincurv import SpinCurvature


class InvariantsError(ValueError):
    pass


EIG_CLAMP_REL = 1e-10


@dataclass
class CurvatureInvariants:
    n: int
    S0: float
    S1: float
    absS0: float
    Sstar: float
    Sstar5: float
    kappa0: float
    kappa: float
    ric0: float            # min |Ric|
    ricTr0: float          # min |Ric - (S/n) g|
    ricTr1: float          # max |Ric - (S/n) g|
    nu0: float             # inf eigenvalue of H
    mu: float              # sup orthonormal-pair operator norm of B
    zeta: float            # sup orthonormal-pair operator norm of C
    theta: float           # sup eigenvalue of E_script
    eta: float             # sup eigenvalue of F
    exact: bool
    n_samples: int = 1
    pair_tol: float = 1e-3
    # hypothesis diagnostics: max residuals of deltaB / deltaC / dS over samples
    max_deltaB: float = 0.0
    max_deltaC: float = 0.0
    max_dS: float = 0.0
    S_spread: float = 0.0

    def to_dict(self) -> dict:
        return asdict(self)

    @staticmethod
    def from_dict(doc: dict) -> "CurvatureInvariants":
        return CurvatureInvariants(**doc)

    def delta_w_zero(self, tol: float = 1e-8) -> bool:
        return self.max_deltaB <= tol

    def delta_r_zero(self, tol: float = 1e-8) -> bool:
        return self.max_deltaC <= tol and self.max_dS <= tol and self.S_spread <= tol


def clamped_min_eig(M: np.ndarray) -> float:
    """Smallest eigenvalue of a provably nonnegative selfadjoint operator,
    with tiny negative values clamped to 0 and genuine violations rejected."""
    lam = np.linalg.eigvalsh(0.5 * (M + M.conj().T))
    scale = max(1.0, float(np.linalg.norm(M)))
    lo = float(lam[0])
    if lo < -EIG_CLAMP_REL * scale:
        raise InvariantsError(f"operator expected nonnegative has eigenvalue {lo:.3e}")
    return max(lo, 0.0)


def max_eig(M: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(0.5 * (M + M.conj().T))[-1])


def _orthonormal_pairs(n: int, count: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    X = rng.standard_normal((count, n))
    Y = rng.standard_normal((count, n))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    Y -= (np.sum(X * Y, axis=1, keepdims=True)) * X
    ok = np.linalg.norm(Y, axis=1) > 1e-8
    X, Y = X[ok], Y[ok]
    Y /= np.linalg.norm(Y, axis=1, keepdims=True)
    return X, Y


def _pair_opnorms(CT: np.ndarray, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    mats = np.einsum("pa,pb,abxy->pxy", X, Y, CT)
    return np.linalg.svd(mats, compute_uv=False)[:, 0]


def _refined_opnorm(CT: np.ndarray, start: np.ndarray, xtol: float) -> float:
    n = CT.shape[0]

    def objective(z: np.ndarray) -> float:
        x, y = z[:n], z[n:]
        nx = np.linalg.norm(x)
        if nx < 1e-10:
            return 0.0
        x = x / nx
        y = y - np.dot(x, y) * x
        ny = np.linalg.norm(y)
        if ny < 1e-10:
            return 0.0
        y = y / ny
        M = np.einsum("a,b,abxy->xy", x, y, CT)
        return -float(np.linalg.norm(M, ord=2))

    res = minimize(objective, start, method="Nelder-Mead",
                   options={"xatol": xtol, "fatol": 1e-13, "maxiter": 2000})
    return -float(res.fun)


def pair_norm_sup_multi(CTs: Sequence[np.ndarray], coarse: Optional[int] = None,
                        seed: int = 0, refine_starts: int = 5,
                        xtol: float = 1e-9) -> float:
    """sup over samples and orthonormal pairs of the pair operator norm.

    Each CT is an (n, n, N, N) bilinear endomorphism table.  Samples are
    processed in decreasing order of the Frobenius upper bound
    ||sum X_a Y_b CT[a,b]|| <= ||CT||_F, so samples that provably cannot
    improve the running supremum are skipped.  A seeded coarse sweep over
    random orthonormal pairs feeds Nelder-Mead refinement from the best
    starts.
    """
    if not CTs:
        return 0.0
    n = CTs[0].shape[0]
    if coarse is None:
        coarse = 10_000 if n <= 4 else 100_000
    per_sample = coarse if len(CTs) == 1 else max(1000, coarse // len(CTs))
    ubs = [float(np.sqrt(np.sum(np.abs(ct) ** 2))) for ct in CTs]
    order = np.argsort(ubs)[::-1]
    rng = np.random.default_rng(seed)
    best = 0.0
    candidates: list[tuple[float, int, np.ndarray]] = []
    for si in order:
        if ubs[si] <= best * (1.0 + 1e-12) or ubs[si] == 0.0:
            break
        X, Y = _orthonormal_pairs(n, per_sample, rng)
        vals = _pair_opnorms(CTs[si], X, Y)
        top = np.argsort(vals)[-refine_starts:]
        for i in top:
            candidates.append((float(vals[i]), si, np.concatenate([X[i], Y[i]])))
        best = max(best, float(vals[top[-1]]))
    candidates.sort(key=lambda c: c[0], reverse=True)
    for val, si, start in candidates[:refine_starts]:
        best = max(best, _refined_opnorm(CTs[si], start, xtol))
    return best


def pair_norm_sup(CT: np.ndarray, coarse: Optional[int] = None, seed: int = 0,
                  refine_starts: int = 5, xtol: float = 1e-9) -> float:
    """Single-sample version of :func:`pair_norm_sup_multi`."""
    if float(np.abs(CT).max()) == 0.0:
        return 0.0
    return pair_norm_sup_multi([CT], coarse=coarse, seed=seed,
                               refine_starts=refine_starts, xtol=xtol)


def scan_invariants(samples: Sequence[PointSample], rep: CliffordRep,
                    pair_tol: float = 1e-3, seed: int = 0,
                    pair_coarse: Optional[int] = None) -> CurvatureInvariants:
    """Aggregate the global invariants over a finite sample set."""
    if not samples:
        raise InvariantsError("empty sample set")
    n = samples[0].n
    if rep.n != n:
        raise InvariantsError("representation dimension mismatch")

    S0 = min(s.S for s in samples)
    S1 = max(s.S for s in samples)
    absS0 = min(abs(s.S) for s in samples)
    kappa0 = np.inf
    kappa = -np.inf
    ric0 = np.inf
    ricTr0 = np.inf
    ricTr1 = 0.0
    nu0 = np.inf
    theta = -np.inf
    eta = -np.inf
    mu = 0.0
    zeta = 0.0
    max_dB = 0.0
    max_dC = 0.0
    max_dS = 0.0

    C_tables = []
    B_tables = []
    any_weyl = False
    for s in samples:
        lam = np.linalg.eigvalsh(s.Ric)
        kappa0 = min(kappa0, float(lam[0]))
        kappa = max(kappa, float(lam[-1]))
        ric0 = min(ric0, float(np.sqrt(np.sum(s.Ric * s.Ric))))
        trn = float(np.sqrt(np.sum(s.ricci_traceless() ** 2)))
        ricTr0 = min(ricTr0, trn)
        ricTr1 = max(ricTr1, trn)

        sc = SpinCurvature(rep, s)
        nu0 = min(nu0, clamped_min_eig(sc.H))
        theta = max(theta, max_eig(sc.E_script))
        eta = max(eta, max_eig(np.asarray(sc.F)))
        max_dB = max(max_dB, float(max(np.linalg.norm(m, ord=2) for m in sc.dB)))
        max_dC = max(max_dC, float(max(np.linalg.norm(m, ord=2) for m in sc.dC)))
        max_dS = max(max_dS, float(np.linalg.norm(s.dS)))

        C_tables.append(sc.C_tensor)
        if float(np.abs(s.W).max()) > 0.0:
            any_weyl = True
            B_tables.append(sc.B_tensor)

    zeta = pair_norm_sup_multi(C_tables, coarse=pair_coarse, seed=seed)
    mu = pair_norm_sup_multi(B_tables, coarse=pair_coarse, seed=seed) if any_weyl else 0.0

    exact = all(s.exact for s in samples)
    Sstar = S0 if kappa0 <= 0 else S1
    Sstar5 = S0 if kappa >= 0 else S1
    inv = CurvatureInvariants(
        n=n, S0=S0, S1=S1, absS0=absS0, Sstar=Sstar, Sstar5=Sstar5,
        kappa0=kappa0, kappa=kappa, ric0=ric0, ricTr0=ricTr0, ricTr1=ricTr1,
        nu0=nu0, mu=mu, zeta=zeta,
        theta=max(theta, 0.0) if theta > -EIG_CLAMP_REL else theta,
        eta=max(eta, 0.0) if eta > -EIG_CLAMP_REL else eta,
        exact=exact, n_samples=len(samples), pair_tol=pair_tol,
        max_deltaB=max_dB, max_deltaC=max_dC, max_dS=max_dS,
        S_spread=S1 - S0,
    )
    _sanity_check(inv)
    return inv


def _sanity_check(inv: CurvatureInvariants) -> None:
    n = inv.n
    tol = 1e-8 * max(1.0, abs(inv.S0), abs(inv.S1))
    if inv.S0 > inv.S1 + tol or inv.kappa0 > inv.kappa + tol:
        raise InvariantsError("inconsistent extrema ordering")
    if n * inv.kappa0 > inv.S0 + tol or inv.S1 > n * inv.kappa + tol:
        raise InvariantsError("Ricci eigenvalue bounds inconsistent with scalar curvature")
    for name in ("nu0", "eta", "mu", "zeta"):
        if getattr(inv, name) < -EIG_CLAMP_REL:
            raise InvariantsError(f"{name} unexpectedly negative")
    if inv.theta < -1e-10 * max(1.0, abs(inv.theta)):
        raise InvariantsError("theta unexpectedly negative")
