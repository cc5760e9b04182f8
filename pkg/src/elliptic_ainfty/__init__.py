"""Gaussian-weighted lattice sums, rapidly convergent Eisenstein series, and the
higher products of the minimal A-infinity algebra of ``O + L`` on an elliptic curve."""
from __future__ import annotations

from .eisenstein import METHODS, EisensteinIndex, eisenstein_value, estar, evaluate, f_mn, g_ab, riemann_zeta
from .lattice import (
    DEFAULT_CONFIG,
    Lattice,
    LatticeError,
    SeriesValue,
    SummationConfig,
    enumerate_shell_points,
    gaussian_lattice_sum,
    gaussian_tail_bound,
    make_lattice,
    scale_basis,
    sl2_change_basis,
)
from .structure import BASIS, M_direct, M_rescaled, ProductIndex, full_table, m_coeff_comb, phi, product_lookup
from .verify import CheckReport, ThetaPoint, run_suite
from .weil import WeilCombination, estar_combination, g_ab_symbolic, g_ab_via_weil, weil_apply

__all__ = [
    "BASIS", "DEFAULT_CONFIG", "METHODS", "CheckReport", "EisensteinIndex", "Lattice", "LatticeError",
    "M_direct", "M_rescaled", "ProductIndex", "SeriesValue", "SummationConfig", "ThetaPoint", "WeilCombination",
    "eisenstein_value", "enumerate_shell_points", "estar", "estar_combination", "evaluate", "f_mn", "full_table",
    "g_ab", "g_ab_symbolic", "g_ab_via_weil", "gaussian_lattice_sum", "gaussian_tail_bound", "m_coeff_comb",
    "make_lattice", "phi", "product_lookup", "riemann_zeta", "run_suite", "scale_basis", "sl2_change_basis",
    "weil_apply",
]
