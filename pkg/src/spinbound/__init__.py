"""Curvature invariants and Dirac eigenvalue lower bounds on compact spin manifolds."""

__version__ = "0.1.0"

from .clifford import CliffordRep, build_clifford_rep, clifford_action, degree_decompose
from .curvature import ManifoldSpec, PointSample, catalog_samples, grid_differentiate, ricci_weyl_split
from .spincurv import SpinorEndo, SpinCurvature
from .invariants import CurvatureInvariants, pair_norm_sup, scan_invariants
from .bounds import BoundResult, DerivedConstants, evaluate_all_families, optimize_t
from .spectra import SpectrumOracle, sphere_spectrum, torus_spectrum, product_spectrum

__all__ = [
    "CliffordRep", "build_clifford_rep", "clifford_action", "degree_decompose",
    "ManifoldSpec", "PointSample", "catalog_samples", "grid_differentiate", "ricci_weyl_split",
    "SpinorEndo", "SpinCurvature",
    "CurvatureInvariants", "pair_norm_sup", "scan_invariants",
    "BoundResult", "DerivedConstants", "evaluate_all_families", "optimize_t",
    "SpectrumOracle", "sphere_spectrum", "torus_spectrum", "product_spectrum",
]
