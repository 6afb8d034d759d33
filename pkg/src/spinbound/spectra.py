"""Closed-form Dirac spectra for the catalog manifolds.

Round sphere S^n(r):  lambda = +/- (n/2 + k)/r with multiplicity
2^floor(n/2) * binom(k + n - 1, k), k >= 0.

Flat torus R^n / (2 pi Z)^n with spin structure shift delta (components 0 or
1/2 per axis):  lambda = |v + delta| over integer vectors v, each magnitude
with multiplicity 2^floor(n/2); delta = 0 carries a kernel of constant
spinors.

Products with at least one even-dimensional factor:  lambda^2 values are the
pairwise sums of factor lambda^2 values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as iproduct
from typing import Optional, Sequence


class SpectrumError(ValueError):
    pass


@dataclass(frozen=True)
class SpectrumOracle:
    manifold: str
    n: int
    eigenvalues: tuple[tuple[float, int], ...]   # (|lambda|, multiplicity), sorted
    kernel_dim: int

    @property
    def lambda1_sq(self) -> float:
        if self.kernel_dim > 0:
            return 0.0
        if not self.eigenvalues:
            raise SpectrumError("no eigenvalues below cutoff and no kernel")
        return self.eigenvalues[0][0] ** 2

    def to_dict(self) -> dict:
        return {
            "manifold": self.manifold,
            "n": self.n,
            "eigenvalues": [list(e) for e in self.eigenvalues],
            "kernel_dim": self.kernel_dim,
            "lambda1_sq": self.lambda1_sq if (self.kernel_dim or self.eigenvalues) else None,
        }


def sphere_spectrum(n: int, r: float = 1.0, count: int = 10) -> SpectrumOracle:
    if n < 2 or r <= 0:
        raise SpectrumError("sphere spectrum needs n >= 2 and r > 0")
    spinor_dim = 2 ** (n // 2)
    eigs = []
    for k in range(count):
        lam = (n / 2.0 + k) / r
        mult = spinor_dim * math.comb(k + n - 1, k)
        eigs.append((lam, mult))
    return SpectrumOracle(manifold=f"S^{n}({r})", n=n, eigenvalues=tuple(eigs), kernel_dim=0)


def torus_spectrum(n: int, shift: Optional[Sequence[float]] = None,
                   cutoff: float = 4.0, period: float = 2.0 * math.pi) -> SpectrumOracle:
    if n < 1:
        raise SpectrumError("torus spectrum needs n >= 1")
    if shift is None:
        shift = [0.0] * n
    shift = list(shift)
    if len(shift) != n or any(d not in (0.0, 0.5) for d in shift):
        raise SpectrumError("spin structure shift components must be 0 or 1/2, one per axis")
    scale = 2.0 * math.pi / period
    spinor_dim = 2 ** (n // 2)
    vmax = int(math.ceil(cutoff / scale)) + 1
    counts: dict[float, int] = {}
    kernel = 0
    for v in iproduct(range(-vmax, vmax + 1), repeat=n):
        lam = scale * math.sqrt(sum((vi + di) ** 2 for vi, di in zip(v, shift)))
        if lam > cutoff:
            continue
        if lam == 0.0:
            kernel += spinor_dim
        else:
            key = round(lam, 12)
            counts[key] = counts.get(key, 0) + spinor_dim
    eigs = tuple(sorted(counts.items()))
    name = f"T^{n}(delta={tuple(shift)})"
    return SpectrumOracle(manifold=name, n=n, eigenvalues=eigs, kernel_dim=kernel)


def product_spectrum(a: SpectrumOracle, b: SpectrumOracle, count: int = 20) -> SpectrumOracle:
    """lambda^2 of the product = lambda_a^2 + lambda_b^2; valid only when at
    least one factor is even-dimensional."""
    if a.n % 2 == 1 and b.n % 2 == 1:
        raise SpectrumError(
            "product spectrum rule requires at least one even-dimensional factor; "
            "both factors are odd-dimensional")
    a_sq = _squares_with_mult(a)
    b_sq = _squares_with_mult(b)
    counts: dict[float, int] = {}
    kernel = 0
    for la, ma in a_sq:
        for lb, mb in b_sq:
            s = la + lb
            if s == 0.0:
                kernel += ma * mb
            else:
                key = round(s, 12)
                counts[key] = counts.get(key, 0) + ma * mb
    eigs = tuple((math.sqrt(sq), m) for sq, m in sorted(counts.items())[:count])
    return SpectrumOracle(
        manifold=f"{a.manifold} x {b.manifold}", n=a.n + b.n,
        eigenvalues=eigs, kernel_dim=kernel,
    )


def _squares_with_mult(o: SpectrumOracle) -> list[tuple[float, int]]:
    out = [(0.0, o.kernel_dim)] if o.kernel_dim else []
    out.extend((lam * lam, m) for lam, m in o.eigenvalues)
    return out


def oracle_for_spec(spec_doc: dict) -> Optional[SpectrumOracle]:
    """Oracle for a catalog manifold spec; None for grid manifolds."""
    kind = spec_doc.get("kind")
    if kind == "sphere":
        return sphere_spectrum(int(spec_doc["n"]), float(spec_doc.get("r", 1.0)))
    if kind == "torus":
        shift = spec_doc.get("shift")
        return torus_spectrum(int(spec_doc["n"]), shift=shift)
    if kind == "product":
        factors = spec_doc.get("factors", [])
        oracles = [oracle_for_spec(f) for f in factors]
        if any(o is None for o in oracles):
            return None
        out = oracles[0]
        for o in oracles[1:]:
            out = product_spectrum(out, o)
        return out
    return None
