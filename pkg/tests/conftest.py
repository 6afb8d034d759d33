"""Shared generators and fixtures for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from spinbound.clifford import build_clifford_rep
from spinbound.curvature import PointSample, weyl_tensor


@pytest.fixture(scope="session")
def reps():
    """One Clifford representation per dimension, built once."""
    return {n: build_clifford_rep(n) for n in range(2, 9)}


def random_curvature_tensor(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random tensor with all algebraic symmetries of a Riemann tensor:
    antisymmetry in both index pairs, pair exchange symmetry, and the first
    Bianchi identity (imposed by projecting out the cyclic part)."""
    A = rng.standard_normal((n, n, n, n))
    R = A - A.transpose(1, 0, 2, 3)
    R = R - R.transpose(0, 1, 3, 2)
    R = R + R.transpose(2, 3, 0, 1)
    cyc = R + R.transpose(0, 2, 3, 1) + R.transpose(0, 3, 1, 2)
    R = R - cyc / 3.0
    nrm = np.sqrt(np.sum(R * R))
    return R / nrm if nrm > 0 else R


def sample_from_R(R: np.ndarray, nablaRic: np.ndarray | None = None,
                  dS: np.ndarray | None = None, sid: int = 0) -> PointSample:
    """Pointwise sample assembled from an algebraic curvature tensor and an
    optional Ricci derivative (dS defaults to the doubled divergence trace)."""
    n = R.shape[0]
    Ric = np.einsum("ikkj->ij", R)
    S = float(np.trace(Ric))
    W = weyl_tensor(R, Ric, S) if n > 2 else np.zeros_like(R)
    if nablaRic is None:
        nablaRic = np.zeros((n, n, n))
    if dS is None:
        dS = np.einsum("kjj->k", nablaRic)
    return PointSample(id=sid, n=n, g=np.eye(n), R=R, Ric=Ric, S=S, W=W,
                       nablaRic=nablaRic, dS=np.asarray(dS, dtype=float))


def random_nabla_ric(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random candidate for nabla Ric: symmetric in its last two slots and
    satisfying the contracted second Bianchi constraint div Ric = dS/2,
    i.e. sum_i T[i, i, k] = (1/2) sum_j T[k, j, j]."""
    A = rng.standard_normal((n, n, n))
    T = 0.5 * (A + A.transpose(0, 2, 1))
    u = np.einsum("kjj->k", T)
    v = np.einsum("iik->k", T)
    b = (u / 2.0 - v) / n
    eye = np.eye(n)
    T = T + np.einsum("j,ik->ijk", b, eye) + np.einsum("k,ij->ijk", b, eye)
    return T


def random_invariants(n: int, rng: np.random.Generator, **overrides):
    """Consistent random CurvatureInvariants record, built from two random
    symmetric 'Ricci endpoint' matrices so the extrema orderings hold."""
    from spinbound.invariants import CurvatureInvariants

    rics = [r + r.T for r in rng.standard_normal((2, n, n))]
    eigs = np.concatenate([np.linalg.eigvalsh(r) for r in rics])
    traces = [float(np.trace(r)) for r in rics]
    trless = [r - (np.trace(r) / n) * np.eye(n) for r in rics]
    tr_norms = [float(np.sqrt(np.sum(t * t))) for t in trless]
    S0, S1 = min(traces), max(traces)
    kappa0, kappa = float(eigs.min()), float(eigs.max())
    fields = dict(
        n=n, S0=S0, S1=S1, absS0=min(abs(t) for t in traces),
        Sstar=S0 if kappa0 <= 0 else S1, Sstar5=S0 if kappa >= 0 else S1,
        kappa0=kappa0, kappa=kappa,
        ric0=min(float(np.sqrt(np.sum(r * r))) for r in rics),
        ricTr0=min(tr_norms), ricTr1=max(tr_norms),
        nu0=float(abs(rng.standard_normal())),
        mu=float(abs(rng.standard_normal())),
        zeta=float(abs(rng.standard_normal())),
        theta=float(abs(rng.standard_normal())),
        eta=float(abs(rng.standard_normal())),
        exact=True, n_samples=2, S_spread=S1 - S0,
    )
    fields.update(overrides)
    return CurvatureInvariants(**fields)


def commuting_nabla_ric(n: int, rng: np.random.Generator) -> np.ndarray:
    """Bianchi-constrained nabla Ric whose directional values are diagonal
    matrices, so they commute pairwise."""
    d = rng.standard_normal((n, n))
    np.fill_diagonal(d, 0.0)
    np.fill_diagonal(d, d.sum(axis=1))
    return np.einsum("ij,jk->ijk", d, np.eye(n))
