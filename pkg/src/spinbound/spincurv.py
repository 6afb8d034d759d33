"""Curvature endomorphisms of the spinor space at a point.

Given a Clifford representation and a :class:`PointSample` in an orthonormal
frame, this module builds the spin curvature C(X,Y), its Weyl part B(X,Y),
the contracted squares G and H, the divergence endomorphisms dC(X), dB(X)
and the derived operators E, F and E_script = E - |dS|^2/(16 n).

Conventions (orthonormal frame, so raised and lowered frame indices agree):

    C(e_a, e_b) = 1/4 sum_{k,l} R[a, b, k, l] g_k g_l
    B(e_a, e_b) = 1/4 sum_{k,l} W[a, b, k, l] g_k g_l
    G = - sum_{j,k} C(e_j, e_k)^2,   H = - sum_{j,k} B(e_j, e_k)^2
    dC(e_a) = 1/4 sum_k (g_k g(T_k a) - g(T_k a) g_k),  T_k a = (nabla_k Ric) e_a
    dB(e_a) = dC(e_a) + (1/(8(n-1))) (g_a g(dS) - g(dS) g_a)
    E = - sum_a dC(e_a)^2,  F = - sum_a dB(e_a)^2
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .clifford import CliffordRep
from .curvature import PointSample


class SpinCurvError(ValueError):
    pass


_SYMMETRY_CHECKS = ("anti-selfadjoint", "selfadjoint", "selfadjoint-nonnegative", "none")


@dataclass(frozen=True)
class SpinorEndo:
    """N x N complex endomorphism of the spinor space with a verified symmetry flag."""

    matrix: np.ndarray
    claimed_symmetry: str = "none"
    tolerance: float = 1e-10

    def __post_init__(self):
        if self.claimed_symmetry not in _SYMMETRY_CHECKS:
            raise SpinCurvError(f"unknown symmetry flag {self.claimed_symmetry!r}")
        M = self.matrix
        scale = max(1.0, float(np.linalg.norm(M)))
        if self.claimed_symmetry == "anti-selfadjoint":
            if np.linalg.norm(M + M.conj().T) > self.tolerance * scale:
                raise SpinCurvError("matrix is not anti-selfadjoint within tolerance")
        elif self.claimed_symmetry in ("selfadjoint", "selfadjoint-nonnegative"):
            if np.linalg.norm(M - M.conj().T) > self.tolerance * scale:
                raise SpinCurvError("matrix is not selfadjoint within tolerance")
            if self.claimed_symmetry == "selfadjoint-nonnegative":
                lam = np.linalg.eigvalsh(0.5 * (M + M.conj().T))
                if lam[0] < -self.tolerance * scale:
                    raise SpinCurvError("matrix has a negative eigenvalue beyond tolerance")

    @property
    def N(self) -> int:
        return self.matrix.shape[0]

    def opnorm(self) -> float:
        return float(np.linalg.norm(self.matrix, ord=2))

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues of the Hermitian (or i * anti-Hermitian) part."""
        if self.claimed_symmetry == "anti-selfadjoint":
            return np.linalg.eigvalsh(1j * self.matrix)
        return np.linalg.eigvalsh(0.5 * (self.matrix + self.matrix.conj().T))


def off_identity_residual(M: np.ndarray) -> float:
    """Norm of M minus its projection onto scalar multiples of the identity."""
    N = M.shape[0]
    return float(np.linalg.norm(M - (np.trace(M) / N) * np.eye(N)))


class SpinCurvature:
    """All spinor-bundle curvature operators at one point sample.

    Heavy pieces are cached; instances are read-only and safe to share.
    """

    def __init__(self, rep: CliffordRep, sample: PointSample):
        if rep.n != sample.n:
            raise SpinCurvError("Clifford representation and sample dimensions differ")
        self.rep = rep
        self.sample = sample
        self.n = rep.n
        self.N = rep.N
        self._gam = np.stack(rep.generators)                      # (n, N, N)
        self._gg = np.einsum("kab,lbc->klac", self._gam, self._gam)

    # -- bilinear curvature endomorphisms ----------------------------------

    @cached_property
    def C_tensor(self) -> np.ndarray:
        """(n, n, N, N) array with C_tensor[a, b] = C(e_a, e_b)."""
        return 0.25 * np.einsum("abkl,klxy->abxy", self.sample.R, self._gg)

    @cached_property
    def B_tensor(self) -> np.ndarray:
        """(n, n, N, N) array with B_tensor[a, b] = B(e_a, e_b)."""
        return 0.25 * np.einsum("abkl,klxy->abxy", self.sample.W, self._gg)

    def curvature_endo_C(self, a: int, b: int) -> SpinorEndo:
        self._check_frame_index(a, b)
        return SpinorEndo(self.C_tensor[a, b], "anti-selfadjoint")

    def weyl_endo_B(self, a: int, b: int) -> SpinorEndo:
        self._check_frame_index(a, b)
        return SpinorEndo(self.B_tensor[a, b], "anti-selfadjoint")

    def _check_frame_index(self, *idx: int) -> None:
        for i in idx:
            if not (0 <= i < self.n):
                raise SpinCurvError(f"frame index {i} out of range 0..{self.n - 1}")

    def C2(self, a: int, b: int) -> np.ndarray:
        """C^2(e_a, e_b) = sum_j C(e_b, e_j) C(e_j, e_a)."""
        return np.einsum("jxy,jyz->xz", self.C_tensor[b], self.C_tensor[:, a])

    def B2(self, a: int, b: int) -> np.ndarray:
        return np.einsum("jxy,jyz->xz", self.B_tensor[b], self.B_tensor[:, a])

    def C2_tensor(self) -> np.ndarray:
        """(n, n, N, N) with [a, b] = C^2(e_a, e_b)."""
        return np.einsum("bjxy,jayz->abxz", self.C_tensor, self.C_tensor)

    def B2_tensor(self) -> np.ndarray:
        return np.einsum("bjxy,jayz->abxz", self.B_tensor, self.B_tensor)

    # -- contracted squares -------------------------------------------------

    @cached_property
    def G(self) -> np.ndarray:
        C = self.C_tensor
        return -np.einsum("abxy,abyz->xz", C, C)

    @cached_property
    def H(self) -> np.ndarray:
        B = self.B_tensor
        return -np.einsum("abxy,abyz->xz", B, B)

    def build_G_H(self) -> tuple[SpinorEndo, SpinorEndo]:
        return (
            SpinorEndo(self.G, "selfadjoint-nonnegative"),
            SpinorEndo(self.H, "selfadjoint-nonnegative"),
        )

    # -- divergence endomorphisms ------------------------------------------

    @cached_property
    def dC(self) -> np.ndarray:
        """(n, N, N) with dC[a] = deltaC(e_a)."""
        comm = self._gg - self._gg.transpose(1, 0, 2, 3)
        return 0.25 * np.einsum("kal,klxy->axy", self.sample.nablaRic, comm)

    @cached_property
    def dB(self) -> np.ndarray:
        """(n, N, N) with dB[a] = deltaB(e_a)."""
        gdS = np.einsum("k,kxy->xy", self.sample.dS, self._gam)
        shift = np.einsum("axy,yz->axz", self._gam, gdS) - np.einsum("xy,ayz->axz", gdS, self._gam)
        return self.dC + shift / (8.0 * (self.n - 1))

    def build_deltaC_deltaB(self) -> tuple[list[SpinorEndo], list[SpinorEndo]]:
        dC = [SpinorEndo(m, "anti-selfadjoint") for m in self.dC]
        dB = [SpinorEndo(m, "anti-selfadjoint") for m in self.dB]
        return dC, dB

    @cached_property
    def E(self) -> np.ndarray:
        return -np.einsum("axy,ayz->xz", self.dC, self.dC)

    @cached_property
    def F(self) -> np.ndarray:
        return -np.einsum("axy,ayz->xz", self.dB, self.dB)

    @cached_property
    def E_script(self) -> np.ndarray:
        dS2 = float(np.dot(self.sample.dS, self.sample.dS))
        return self.E - dS2 / (16.0 * self.n) * np.eye(self.N)

    def build_E_F_script(self) -> tuple[SpinorEndo, SpinorEndo, SpinorEndo]:
        return (
            SpinorEndo(self.E, "selfadjoint-nonnegative"),
            SpinorEndo(self.F, "selfadjoint-nonnegative"),
            SpinorEndo(self.E_script, "selfadjoint"),
        )

    # -- identity checks ----------------------------------------------------

    def trace_identity_residuals(self) -> dict[str, float]:
        """Residuals of the contraction identities tying C, B, dC, dB to
        Ric, dS and zero:

            sum_k g_k C(e_k, e_a) = 1/2 Ric(e_a).
            sum_k g_k B(e_k, e_a) = 0.
            sum_k g_k dC(e_k) = 1/4 g(dS),  sum_k g_k dB(e_k) = 0.
        """
        gam = self._gam
        lhs_C = np.einsum("kxy,kayz->axz", gam, self.C_tensor)
        rhs_C = 0.5 * np.einsum("ab,bxy->axy", self.sample.Ric, gam)
        lhs_B = np.einsum("kxy,kayz->axz", gam, self.B_tensor)
        lhs_dC = np.einsum("kxy,kyz->xz", gam, self.dC)
        rhs_dC = 0.25 * np.einsum("k,kxy->xy", self.sample.dS, gam)
        lhs_dB = np.einsum("kxy,kyz->xz", gam, self.dB)
        return {
            "ric_trace": float(np.abs(lhs_C - rhs_C).max()),
            "weyl_trace": float(np.abs(lhs_B).max()),
            "dC_trace": float(np.abs(lhs_dC - rhs_dC).max()),
            "dB_trace": float(np.abs(lhs_dB).max()),
        }

    def gh_identity_residuals(self) -> dict[str, float]:
        """Residuals of the two G/H identities:

        * G - H is the scalar (|R|^2 - |W|^2)/8 times the identity;
        * the degree decomposition of H has H_2 = 0 and H_0 = |W|^2/8.
        """
        from .clifford import degree_decompose

        norms = self.sample.norms()
        diff = self.G - self.H
        scalar = (norms["R2"] - norms["W2"]) / 8.0
        resid_scalar = float(np.linalg.norm(diff - scalar * np.eye(self.N)))
        parts = degree_decompose(self.rep, self.H)
        h0 = float(np.trace(parts[0]).real) / self.N
        h2 = float(np.linalg.norm(parts[2]))
        # odd-dimension boundary: degrees above floor(n/2) fold down, which
        # can pollute H_2 for n < 5 + ... only when n - 4 <= 2, i.e. n = 3, 5
        return {
            "gh_scalar": resid_scalar,
            "h0_coeff": abs(h0 - norms["W2"] / 8.0),
            "h2_norm": h2,
        }

    def ef_identity_residuals(self) -> dict[str, float]:
        """Residuals of E = F + |dS|^2/(16(n-1)) and of the expansion of E in
        terms of |nabla Ric|^2, |dS|^2 and the commutator 3-form."""
        norms = self.sample.norms()
        n, N = self.n, self.N
        eye = np.eye(N)
        shift = norms["dS2"] / (16.0 * (n - 1))
        resid_ef = float(np.linalg.norm(self.E - self.F - shift * eye))

        T = self.sample.nablaRic
        comm = np.einsum("jlm,kmp->jklp", T, T) - np.einsum("klm,jmp->jklp", T, T)
        ggg = np.einsum("jxy,kyz,lzw->jklxw", self._gam, self._gam, self._gam)
        # the commutator endomorphism applied to e_l has components comm[j, k, m, l]
        term = 0.125 * np.einsum("jkml,mxy,jklyz->xz", comm, self._gam, ggg)
        rhs = (0.25 * norms["nablaRic2"] - norms["dS2"] / 16.0) * eye + term
        resid_e29 = float(np.linalg.norm(self.E - rhs))
        return {"ef_scalar": resid_ef, "e_expansion": resid_e29}

    def all_identity_residuals(self) -> dict[str, float]:
        out = {}
        out.update(self.trace_identity_residuals())
        out.update(self.gh_identity_residuals())
        out.update(self.ef_identity_residuals())
        return out
