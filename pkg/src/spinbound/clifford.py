"""Explicit irreducible complex representation of the Clifford algebra Cl(n).

Generators follow the geometric sign convention

    g_i g_j + g_j g_i = -2 delta_ij Id,

so each generator is anti-selfadjoint and unitary with g_i^2 = -Id.  They are
obtained as i times a family of anticommuting Hermitian involutions built by
the usual Pauli tensor-product recursion, which keeps the construction
deterministic across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations

import numpy as np

_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SZ = np.array([[1, 0], [0, -1]], dtype=complex)

MIN_DIM = 2
MAX_DIM = 8


class CliffordError(ValueError):
    pass


def _hermitian_family(n: int) -> list[np.ndarray]:
    """n anticommuting Hermitian matrices squaring to +Id, size 2^floor(n/2)."""
    if n % 2 == 1:
        mats = _hermitian_family(n - 1)
        chi = reduce(np.matmul, mats)
        # The product of 2m anticommuting involutions is Hermitian up to a
        # phase; fix the phase numerically.
        if np.linalg.norm(chi - chi.conj().T) > 1e-12:
            chi = 1j * chi
        return mats + [chi]
    if n == 2:
        return [_SX.copy(), _SY.copy()]
    inner = _hermitian_family(n - 2)
    dim = inner[0].shape[0]
    eye = np.eye(dim, dtype=complex)
    out = [np.kron(e, _SZ) for e in inner]
    out.append(np.kron(eye, _SX))
    out.append(np.kron(eye, _SY))
    return out


@dataclass(frozen=True)
class CliffordRep:
    """Immutable matrix representation of Cl(n) on C^N, N = 2^floor(n/2)."""

    n: int
    N: int
    generators: tuple[np.ndarray, ...]
    tolerance: float = 1e-12

    def __post_init__(self):
        for g in self.generators:
            g.setflags(write=False)

    def gamma(self, k: int) -> np.ndarray:
        return self.generators[k]

    def identity(self) -> np.ndarray:
        return np.eye(self.N, dtype=complex)

    def relation_residual(self) -> float:
        """Max norm of g_i g_j + g_j g_i + 2 delta_ij Id over all pairs."""
        worst = 0.0
        eye = self.identity()
        for i, gi in enumerate(self.generators):
            for j, gj in enumerate(self.generators):
                acom = gi @ gj + gj @ gi
                if i == j:
                    acom = acom + 2.0 * eye
                worst = max(worst, np.linalg.norm(acom))
        return worst

    def monomials(self) -> dict[tuple[int, ...], np.ndarray]:
        """Ordered products g_A for the index subsets used as a matrix basis.

        For n even all 2^n subsets appear; for n odd, degree d and n-d
        monomials coincide up to a scalar in the irreducible representation,
        so only subsets with |A| <= (n-1)/2 are kept (2^(n-1) = N^2 of them).
        """
        if not hasattr(self, "_monomials"):
            max_deg = self.n if self.n % 2 == 0 else (self.n - 1) // 2
            table: dict[tuple[int, ...], np.ndarray] = {(): self.identity()}
            for d in range(1, max_deg + 1):
                for idx in combinations(range(self.n), d):
                    table[idx] = table[idx[:-1]] @ self.generators[idx[-1]]
            object.__setattr__(self, "_monomials", table)
        return self._monomials


def build_clifford_rep(n: int, tolerance: float = 1e-12) -> CliffordRep:
    """Construct the representation for 2 <= n <= 8 and verify its relations."""
    if not (MIN_DIM <= n <= MAX_DIM):
        raise CliffordError(f"dimension n={n} outside supported range [{MIN_DIM}, {MAX_DIM}]")
    herm = _hermitian_family(n)
    gammas = tuple(1j * h for h in herm)
    rep = CliffordRep(n=n, N=gammas[0].shape[0], generators=gammas, tolerance=tolerance)
    if rep.N != 2 ** (n // 2):
        raise CliffordError("internal error: unexpected spinor dimension")
    resid = rep.relation_residual()
    if resid > tolerance:
        raise CliffordError(f"Clifford relations violated: residual {resid:.3e}")
    for g in gammas:
        if np.linalg.norm(g + g.conj().T) > tolerance:
            raise CliffordError("generator is not anti-selfadjoint")
    return rep


def clifford_action(rep: CliffordRep, v: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Left Clifford multiplication by the vector with orthonormal-frame components v.

    `target` may be a spinor (shape (N,)) or an endomorphism (shape (N, N)).
    """
    v = np.asarray(v, dtype=complex)
    if v.shape != (rep.n,):
        raise CliffordError(f"expected {rep.n} vector components, got shape {v.shape}")
    op = np.einsum("k,kij->ij", v, np.stack(rep.generators))
    return op @ target


def gamma_of(rep: CliffordRep, v: np.ndarray) -> np.ndarray:
    """The matrix of Clifford multiplication by v (orthonormal-frame components)."""
    v = np.asarray(v, dtype=complex)
    if v.shape != (rep.n,):
        raise CliffordError(f"expected {rep.n} vector components, got shape {v.shape}")
    return np.einsum("k,kij->ij", v, np.stack(rep.generators))


def degree_decompose(rep: CliffordRep, M: np.ndarray) -> dict[int, np.ndarray]:
    """Orthogonal decomposition of M over degree-graded Clifford monomials.

    Projection uses the normalized trace inner product <A, B> = tr(A^+ B)/N,
    under which the stored monomials are orthonormal.  Returns a full map
    degree -> component for degrees 0..n; for odd n, components of degree
    > floor(n/2) are identically zero (mass assigned to the lower degree).
    """
    M = np.asarray(M, dtype=complex)
    if M.shape != (rep.N, rep.N):
        raise CliffordError(f"expected {(rep.N, rep.N)} matrix, got shape {M.shape}")
    parts = {d: np.zeros((rep.N, rep.N), dtype=complex) for d in range(rep.n + 1)}
    for idx, mono in rep.monomials().items():
        coeff = np.trace(mono.conj().T @ M) / rep.N
        parts[len(idx)] += coeff * mono
    return parts
