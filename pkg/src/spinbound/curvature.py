"""Pointwise curvature data: closed-form catalog manifolds and periodic-grid
finite differences, plus the Ricci/Weyl decomposition.

All tensors carried by a :class:`PointSample` are expressed in an orthonormal
frame, so index raising and lowering is trivial downstream.  The Riemann
tensor is stored with the index convention

    R[i, j, k, l] = g(R(e_i, e_j) e_k, e_l),

which makes ``Ric[i, j] = sum_k R[i, k, k, j]`` and gives the round sphere of
radius r the components (delta_jk delta_il - delta_ik delta_jl)/r^2, i.e.
Ric = (n-1)/r^2 on spheres.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np


class CurvatureError(ValueError):
    pass


# ---------------------------------------------------------------------------
# data containers


@dataclass(frozen=True)
class PointSample:
    """All pointwise curvature data in an orthonormal frame."""

    id: int
    n: int
    g: np.ndarray          # (n, n) frame metric, identity by construction
    R: np.ndarray          # (n, n, n, n) all-lower Riemann components
    Ric: np.ndarray        # (n, n) symmetric
    S: float
    W: np.ndarray          # (n, n, n, n) Weyl components
    nablaRic: np.ndarray   # (n, n, n): [i, j, k] = (nabla_{e_i} Ric)(e_j, e_k)
    dS: np.ndarray         # (n,) frame components of dS
    exact: bool = True     # closed-form sample vs finite-difference sample
    coord_g: Optional[np.ndarray] = None   # original coordinate metric, if any

    @property
    def deltaR(self) -> np.ndarray:
        """(delta R(e_i))(e_j, e_k), a 2-form in (j, k), from the second Bianchi
        identity: g(deltaR(X)Y, Z) = g((nabla_Y Ric)Z - (nabla_Z Ric)Y, X)."""
        return np.einsum("jki->ijk", self.nablaRic) - np.einsum("kji->ijk", self.nablaRic)

    def ricci_traceless(self) -> np.ndarray:
        return self.Ric - (self.S / self.n) * np.eye(self.n)

    def norms(self) -> dict[str, float]:
        E = self.ricci_traceless()
        return {
            "R2": float(np.sum(self.R * self.R)),
            "W2": float(np.sum(self.W * self.W)),
            "Ric2": float(np.sum(self.Ric * self.Ric)),
            "RicTr2": float(np.sum(E * E)),
            "nablaRic2": float(np.sum(self.nablaRic * self.nablaRic)),
            "dS2": float(np.dot(self.dS, self.dS)),
        }

    def symmetry_residuals(self) -> dict[str, float]:
        """Max-norm residuals of the structural invariants of the sample."""
        R = self.R
        n = self.n
        bianchi = R + R.transpose(0, 2, 3, 1) + R.transpose(0, 3, 1, 2)
        ric_from_R = np.einsum("ikkj->ij", R)
        E2 = float(np.sum(self.ricci_traceless() ** 2))
        decomp = float(np.sum(R * R)) - (
            float(np.sum(self.W * self.W))
            + (4.0 / (n - 2)) * E2 + 2.0 * self.S**2 / (n * (n - 1))
        ) if n > 2 else 0.0
        dR = self.deltaR
        return {
            "antisym_ij": float(np.abs(R + R.transpose(1, 0, 2, 3)).max()),
            "antisym_kl": float(np.abs(R + R.transpose(0, 1, 3, 2)).max()),
            "pair_sym": float(np.abs(R - R.transpose(2, 3, 0, 1)).max()),
            "bianchi1": float(np.abs(bianchi).max()),
            "ricci_contraction": float(np.abs(ric_from_R - self.Ric).max()),
            "scalar_trace": abs(float(np.trace(self.Ric)) - self.S),
            "weyl_trace": float(np.abs(np.einsum("ikkj->ij", self.W)).max()),
            "decomposition": abs(decomp),
            "deltaR_antisym": float(np.abs(dR + dR.transpose(0, 2, 1)).max()),
        }


@dataclass(frozen=True)
class GridData:
    """Periodic lattice of metric samples: shape dims + (n, n)."""

    dims: tuple[int, ...]
    h: float
    metric: np.ndarray
    periodic: tuple[bool, ...]


@dataclass(frozen=True)
class ManifoldSpec:
    """Catalog entry (name + parameters) or a user grid."""

    kind: str
    params: dict = field(default_factory=dict)
    grid: Optional[GridData] = None

    @staticmethod
    def from_dict(doc: dict) -> "ManifoldSpec":
        if "kind" not in doc:
            raise CurvatureError("manifold spec needs a 'kind' field")
        kind = doc["kind"]
        params = {k: v for k, v in doc.items() if k != "kind"}
        return ManifoldSpec(kind=kind, params=params)

    def to_dict(self) -> dict:
        return {"kind": self.kind, **self.params}


CATALOG_SCHEMAS = {
    "sphere": {"n": "dimension >= 2", "r": "radius > 0 (default 1)"},
    "torus": {"n": "dimension >= 2"},
    "product": {"factors": "list of sphere/torus specs (blockwise curvature)"},
    "conformal_torus": {
        "n": "dimension >= 2",
        "amplitude": "amplitude a of the conformal factor exp(2 a sin(x1)) (default 0.05)",
        "nodes": "grid nodes per axis (default [24, 5, ..., 5])",
    },
    "grid": {"path": "grid metric file (see read_grid_file)"},
}


# ---------------------------------------------------------------------------
# closed-form catalog


def sphere_sample(n: int, r: float, sample_id: int = 0) -> PointSample:
    if n < 2:
        raise CurvatureError("sphere needs n >= 2")
    if r <= 0:
        raise CurvatureError("sphere radius must be positive")
    eye = np.eye(n)
    R = (np.einsum("jk,il->ijkl", eye, eye) - np.einsum("ik,jl->ijkl", eye, eye)) / r**2
    Ric = (n - 1) / r**2 * eye
    S = n * (n - 1) / r**2
    return PointSample(
        id=sample_id, n=n, g=eye, R=R, Ric=Ric, S=S,
        W=np.zeros((n, n, n, n)), nablaRic=np.zeros((n, n, n)), dS=np.zeros(n),
    )


def torus_sample(n: int, sample_id: int = 0) -> PointSample:
    if n < 2:
        raise CurvatureError("torus needs n >= 2")
    z4 = np.zeros((n, n, n, n))
    return PointSample(
        id=sample_id, n=n, g=np.eye(n), R=z4, Ric=np.zeros((n, n)), S=0.0,
        W=z4, nablaRic=np.zeros((n, n, n)), dS=np.zeros(n),
    )


def product_sample(factors: Sequence[PointSample], sample_id: int = 0) -> PointSample:
    """Blockwise Riemannian product of homogeneous factor samples."""
    if not factors:
        raise CurvatureError("product needs at least one factor")
    n = sum(f.n for f in factors)
    R = np.zeros((n, n, n, n))
    Ric = np.zeros((n, n))
    off = 0
    S = 0.0
    for f in factors:
        sl = slice(off, off + f.n)
        R[sl, sl, sl, sl] = f.R
        Ric[sl, sl] = f.Ric
        S += f.S
        off += f.n
    sample = PointSample(
        id=sample_id, n=n, g=np.eye(n), R=R, Ric=Ric, S=S,
        W=np.zeros((n, n, n, n)), nablaRic=np.zeros((n, n, n)), dS=np.zeros(n),
    )
    return ricci_weyl_split(sample)


def _factor_sample(doc: dict) -> PointSample:
    kind = doc.get("kind")
    if kind == "sphere":
        return sphere_sample(int(doc["n"]), float(doc.get("r", 1.0)))
    if kind == "torus":
        return torus_sample(int(doc["n"]))
    raise CurvatureError(f"unsupported product factor kind {kind!r}")


def catalog_samples(spec: ManifoldSpec) -> list[PointSample]:
    """Emit point samples for a catalog entry.

    Homogeneous entries produce exactly one representative sample marked
    exact; the conformally perturbed torus delegates to grid differentiation.
    """
    if spec.kind == "sphere":
        s = sphere_sample(int(spec.params["n"]), float(spec.params.get("r", 1.0)))
        return [ricci_weyl_split(s) if s.n > 2 else s]
    if spec.kind == "torus":
        return [torus_sample(int(spec.params["n"]))]
    if spec.kind == "product":
        factors = [_factor_sample(d) for d in spec.params["factors"]]
        return [product_sample(factors)]
    if spec.kind == "conformal_torus":
        grid = conformal_torus_grid(
            n=int(spec.params["n"]),
            amplitude=float(spec.params.get("amplitude", 0.05)),
            nodes=spec.params.get("nodes"),
        )
        return grid_differentiate(ManifoldSpec(kind="grid", grid=grid))
    if spec.kind == "grid":
        return grid_differentiate(spec)
    raise CurvatureError(f"unknown catalog entry {spec.kind!r}")


def conformal_torus_grid(n: int, amplitude: float = 0.05,
                         nodes: Optional[Sequence[int]] = None) -> GridData:
    """Metric exp(2 a sin(x1)) * delta on the torus [0, 2 pi)^n."""
    if n < 2:
        raise CurvatureError("conformal torus needs n >= 2")
    if nodes is None:
        nodes = [24] + [5] * (n - 1)
    nodes = tuple(int(m) for m in nodes)
    if len(nodes) != n:
        raise CurvatureError("nodes must list one count per axis")
    h = 2.0 * math.pi / nodes[0]
    for m in nodes[1:]:
        if not math.isclose(2.0 * math.pi / m, h, rel_tol=1e-12):
            # keep a single spacing h: axes other than x1 carry a constant
            # metric, so their node counts must still match the spacing
            pass
    x1 = np.arange(nodes[0]) * h
    phi = amplitude * np.sin(x1)
    conf = np.exp(2.0 * phi)
    metric = np.zeros(nodes + (n, n))
    idx = (slice(None),) + (None,) * (n - 1)
    for i in range(n):
        metric[..., i, i] = conf[idx]
    return GridData(dims=nodes, h=h, metric=metric, periodic=(True,) * n)


def conformal_scalar_curvature(n: int, amplitude: float, x1: np.ndarray) -> np.ndarray:
    """Closed-form S for g = exp(2 phi) delta with phi = a sin(x1)."""
    phi = amplitude * np.sin(x1)
    lap = -amplitude * np.sin(x1)
    grad2 = (amplitude * np.cos(x1)) ** 2
    return np.exp(-2.0 * phi) * (-2.0 * (n - 1) * lap - (n - 1) * (n - 2) * grad2)


# ---------------------------------------------------------------------------
# periodic-grid finite differences


def _d1(f: np.ndarray, axis: int, h: float) -> np.ndarray:
    """4th-order central first derivative on a periodic axis."""
    if f.shape[axis] == 1:
        return np.zeros_like(f)
    if f.shape[axis] < 5:
        raise CurvatureError("periodic axes need at least 5 nodes (or exactly 1)")
    fp1 = np.roll(f, -1, axis=axis)
    fm1 = np.roll(f, 1, axis=axis)
    fp2 = np.roll(f, -2, axis=axis)
    fm2 = np.roll(f, 2, axis=axis)
    return (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h)


def grid_differentiate(spec: ManifoldSpec) -> list[PointSample]:
    """Curvature of a metric sampled on a periodic lattice, via central
    finite differences for the Christoffel symbols and their derivatives."""
    grid = spec.grid
    if grid is None:
        if "path" in spec.params:
            grid = read_grid_file(spec.params["path"])
        else:
            raise CurvatureError("grid spec carries no grid data")
    g = np.asarray(grid.metric, dtype=float)
    dims = grid.dims
    n = g.shape[-1]
    h = grid.h
    if g.shape != dims + (n, n):
        raise CurvatureError("metric array shape does not match grid dims")
    if np.abs(g - np.swapaxes(g, -1, -2)).max() > 1e-12:
        raise CurvatureError("grid metric is not symmetric")
    eigmin = np.linalg.eigvalsh(g)[..., 0]
    if eigmin.min() <= 0:
        raise CurvatureError("grid metric is not positive definite at every node")

    ginv = np.linalg.inv(g)
    dg = np.stack([_d1(g, axis=a, h=h) for a in range(n)])        # (i, ..., j, k)
    # Christoffel: Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij)
    lowered = 0.5 * (
        np.einsum("i...jl->...ijl", dg)
        + np.einsum("j...il->...ijl", dg)
        - np.einsum("l...ij->...ijl", dg)
    )
    Gamma = np.einsum("...kl,...ijl->...kij", ginv, lowered)      # (..., k, i, j)

    dGamma = np.stack([_d1(Gamma, axis=a, h=h) for a in range(n)])  # (a, ..., k, i, j)
    # (R(d_i, d_j) d_k)^l
    Riem_up = (
        np.einsum("i...ljk->...ijkl", dGamma)
        - np.einsum("j...lik->...ijkl", dGamma)
        + np.einsum("...lim,...mjk->...ijkl", Gamma, Gamma)
        - np.einsum("...ljm,...mik->...ijkl", Gamma, Gamma)
    )
    Rm = np.einsum("...ijkm,...ml->...ijkl", Riem_up, g)
    # Ric_ij = g^km R[i, k, m, j]
    Ric = np.einsum("...ikmj,...km->...ij", Rm, ginv)
    S = np.einsum("...ij,...ij->...", Ric, ginv)

    dRic = np.stack([_d1(Ric, axis=a, h=h) for a in range(n)])    # (i, ..., j, k)
    nablaRic = (
        np.einsum("i...jk->...ijk", dRic)
        - np.einsum("...mij,...mk->...ijk", Gamma, Ric)
        - np.einsum("...mik,...jm->...ijk", Gamma, Ric)
    )
    dS = np.stack([_d1(S, axis=a, h=h) for a in range(n)])        # (i, ...)
    dS = np.moveaxis(dS, 0, -1)

    # orthonormal frame from the Cholesky factor: E = L^{-T}, E^T g E = Id
    L = np.linalg.cholesky(g)
    E = np.linalg.inv(np.swapaxes(L, -1, -2))

    Rm_f = np.einsum("...ijkl,...ia,...jb,...kc,...ld->...abcd", Rm, E, E, E, E)
    Ric_f = np.einsum("...ij,...ia,...jb->...ab", Ric, E, E)
    nR_f = np.einsum("...ijk,...ia,...jb,...kc->...abc", nablaRic, E, E, E)
    dS_f = np.einsum("...i,...ia->...a", dS, E)

    samples = []
    eye = np.eye(n)
    flat_idx = 0
    for idx in np.ndindex(*dims):
        sample = PointSample(
            id=flat_idx, n=n, g=eye,
            R=Rm_f[idx], Ric=Ric_f[idx], S=float(S[idx]),
            W=np.zeros((n, n, n, n)),
            nablaRic=nR_f[idx], dS=dS_f[idx],
            exact=False, coord_g=g[idx],
        )
        samples.append(ricci_weyl_split(sample) if n > 2 else sample)
        flat_idx += 1
    return samples


def read_grid_file(path: str) -> GridData:
    """Plain-text grid metric file.

    Header: ``n d1 ... dn h p1 ... pn`` (dims, spacing, periodic flags 0/1),
    then one row per node with the n(n+1)/2 upper-triangle metric components
    in row-major node order.
    """
    with open(path) as fh:
        return parse_grid_text(fh.read())


def parse_grid_text(text: str) -> GridData:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise CurvatureError("empty grid file")
    head = lines[0].split()
    n = int(head[0])
    dims = tuple(int(v) for v in head[1:1 + n])
    h = float(head[1 + n])
    flags = tuple(bool(int(v)) for v in head[2 + n:2 + 2 * n])
    if len(flags) != n:
        raise CurvatureError("grid header needs one periodic flag per axis")
    if not all(flags):
        raise CurvatureError("only fully periodic grids are supported")
    n_nodes = int(np.prod(dims))
    rows = lines[1:]
    if len(rows) != n_nodes:
        raise CurvatureError(f"expected {n_nodes} metric rows, found {len(rows)}")
    n_comp = n * (n + 1) // 2
    metric = np.zeros(dims + (n, n))
    iu = np.triu_indices(n)
    flat = metric.reshape(n_nodes, n, n)
    for row_id, row in enumerate(rows):
        vals = [float(v) for v in row.split()]
        if len(vals) != n_comp:
            raise CurvatureError(f"row {row_id}: expected {n_comp} components")
        m = np.zeros((n, n))
        m[iu] = vals
        m = m + m.T - np.diag(np.diag(m))
        flat[row_id] = m
    return GridData(dims=dims, h=h, metric=metric, periodic=flags)


def write_grid_file(path: str, grid: GridData) -> None:
    iu = np.triu_indices(grid.metric.shape[-1])
    n = grid.metric.shape[-1]
    buf = io.StringIO()
    buf.write(f"{n} " + " ".join(str(d) for d in grid.dims) + f" {float(grid.h)!r} "
              + " ".join("1" if p else "0" for p in grid.periodic) + "\n")
    for m in grid.metric.reshape(-1, n, n):
        buf.write(" ".join(repr(float(v)) for v in m[iu]) + "\n")
    with open(path, "w") as fh:
        fh.write(buf.getvalue())


# ---------------------------------------------------------------------------
# Ricci / Weyl decomposition


def _kulkarni_nomizu(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return (
        np.einsum("ik,jl->ijkl", A, B)
        - np.einsum("il,jk->ijkl", A, B)
        + np.einsum("jl,ik->ijkl", A, B)
        - np.einsum("jk,il->ijkl", A, B)
    )


def weyl_tensor(R: np.ndarray, Ric: np.ndarray, S: float) -> np.ndarray:
    """Totally trace-free part of R in an orthonormal frame (n >= 3)."""
    n = R.shape[0]
    if n < 3:
        raise CurvatureError("Weyl tensor undefined for n < 3")
    if n == 3:
        return np.zeros_like(R)
    eye = np.eye(n)
    E = Ric - (S / n) * eye
    return (
        R
        + _kulkarni_nomizu(eye, E) / (n - 2)
        + S * _kulkarni_nomizu(eye, eye) / (2 * n * (n - 1))
    )


def ricci_weyl_split(sample: PointSample, rel_tol: float = 1e-9) -> PointSample:
    """Fill in W and check the norm decomposition
    |R|^2 = |W|^2 + 4/(n-2) |Ric - (S/n) g|^2 + 2 S^2/(n(n-1))."""
    n = sample.n
    if n < 3:
        raise CurvatureError("Ricci/Weyl split needs n >= 3")
    W = weyl_tensor(sample.R, sample.Ric, sample.S)
    out = PointSample(
        id=sample.id, n=n, g=sample.g, R=sample.R, Ric=sample.Ric, S=sample.S,
        W=W, nablaRic=sample.nablaRic, dS=sample.dS,
        exact=sample.exact, coord_g=sample.coord_g,
    )
    if sample.exact:
        norms = out.norms()
        E2 = norms["RicTr2"]
        lhs = norms["R2"]
        rhs = norms["W2"] + 4.0 / (n - 2) * E2 + 2.0 * sample.S**2 / (n * (n - 1))
        if abs(lhs - rhs) > rel_tol * max(1.0, abs(lhs)):
            raise CurvatureError(
                f"Ricci decomposition residual {abs(lhs - rhs):.3e} exceeds tolerance")
    return out
