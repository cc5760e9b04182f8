"""Acceptance gate: one test per criterion, each at its stated tolerance.

Every test records a ``PASS``/``FAIL`` line that is printed in the terminal
summary.  Four lines fail at their tolerance (6c, 7a, 7b and 8b); the tests named
``test_note_*`` show the corrected statements that do hold.
"""
from __future__ import annotations

import cmath
import math
from itertools import product

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from elliptic_ainfty import (
    Lattice,
    M_direct,
    eisenstein_value,
    f_mn,
    g_ab,
    g_ab_symbolic,
    g_ab_via_weil,
    gaussian_lattice_sum,
    m_coeff_comb,
    scale_basis,
    sl2_change_basis,
)
from elliptic_ainfty import trees
from elliptic_ainfty import verify as V
from elliptic_ainfty.eisenstein import METHODS

HEX = cmath.exp(1j * math.pi / 3)
GRID = {"i": 1j, "2i": 2j, "hex": HEX, "0.25+1.5i": 0.25 + 1.5j}
CUSP_Y = 20.0


def gate(label: str, worst: float, tol: float, note: str = "") -> None:
    ok = bool(worst <= tol)
    line = f"[{'PASS' if ok else 'FAIL'}] {label}: worst {worst:.3e} (tol {tol:.0e}){'  ' + note if note else ''}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_1_eisenstein_three_routes():
    worst_c = worst_q = 0.0
    for tau in GRID.values():
        L = Lattice(1, tau)
        for n in (2, 4, 6, 8):
            rapid = eisenstein_value(L, n, "rapid").value
            worst_c = max(worst_c, abs(rapid - eisenstein_value(L, n, "classical").value))
            worst_q = max(worst_q, abs(rapid - eisenstein_value(L, n, "q_series").value))
    gate("1 rapid vs classical and rapid vs q-series, n in {2,4,6,8}, 4 lattices", max(worst_c, worst_q), 1e-8)


def test_criterion_2_symmetry_zeros():
    sq, hx = Lattice(1, 1j), Lattice(1, HEX)
    values = [eisenstein_value(sq, 2, m).value for m in METHODS]
    values += [eisenstein_value(sq, 6, m).value for m in METHODS]
    values += [eisenstein_value(hx, 4, m).value for m in METHODS]
    values += [f_mn(sq, 1, 1).value, g_ab(sq, 2, 3).value]
    gate("2 e*2(i), e6(i), e4(hex), f11(i), g23(i) vanish", max(map(abs, values)), 1e-10)


def test_criterion_3_symbolic_g():
    mismatches = 0
    for a in range(10):
        for b in range(10 - a):
            if (a + b) % 2 and g_ab_via_weil(a, b) != g_ab_symbolic(a, b):
                mismatches += 1
    gate("3 W-route g_{a,b} equals closed form exactly, odd a+b <= 9", float(mismatches), 0.0)


def test_criterion_4_dual_route():
    worst = worst_odd = 0.0
    for tau in (2j, 0.25 + 1.5j):
        L = Lattice(1, tau)
        for a, b, c, d in product(range(8), repeat=4):
            if a + b + c + d > 7:
                continue
            comb_val = m_coeff_comb(L, a, b, c, d).value
            worst = max(worst, abs(comb_val - M_direct(L, a, b, c, d).value))
            if (a + b + c + d) % 2 == 0:
                worst_odd = max(worst_odd, abs(comb_val), abs(M_direct(L, a, b, c, d).value))
    gate("4a binomial route vs closed-form M, a+b+c+d <= 7", worst, 1e-9)
    gate("4b odd-n products vanish", worst_odd, 1e-12)


def test_criterion_5_trees():
    sign_failures = 0
    for total in range(2, 11):
        for n1 in range(total - 1):
            sign_failures += not trees.verify_sign_lemma(n1, total - 2 - n1).passed
    agg_failures = 0
    for a, b, c, d in product(range(6), repeat=4):
        if a + b + c + d <= 5:
            agg_failures += trees.aggregate_tree_sum(a, b, c, d) != trees.binomial_sum_coefficients(a, b, c, d)
    gate("5 join-sign closed form (n1+n2+2 <= 10) and tree sum = binomial coefficients (<= 5)",
         float(sign_failures + agg_failures), 0.0)


def _lattices():
    return [Lattice(1, t) for t in GRID.values()]


def test_criterion_6a_prop_i():
    worst = max(V.check_prop_i(L, *s).residual for L in _lattices() for s in product((1, 2), repeat=6))
    gate("6a g-identity (i), a..f in {1,2}", worst, 1e-8)


def test_criterion_6b_prop_ii():
    worst = 0.0
    for L in _lattices():
        for a in range(7):
            for b in range(7):
                worst = max(worst, V.check_prop_ii(L, a, b).residual,
                            V.check_prop_ii(L, a, b, mode="recursion").residual)
    gate("6b g-identity (ii) and recursive reconstruction, a,b <= 6", worst, 1e-8)


def test_criterion_6c_weil_identity_as_stated():
    worst = max(V.check_weil_vi5(L, n, lhs_factor=1).residual for L in _lattices() for n in (2, 4, 6))
    gate("6c (1/n) W e*_n = -sum e* e* + (n+3) e_{n+2}, n in {2,4,6}", worst, 1e-8,
         "holds with 2/n in place of 1/n, see test_note_weil_identity_rescaled")


def test_criterion_6d_poisson():
    worst = max(V.check_poisson(L, n).residual for L in _lattices() for n in (2, 4, 6, 8))
    gate("6d Poisson identities, n in {2,4,6,8}", worst, 1e-8)


def test_criterion_6e_ainfty():
    worst = 0.0
    for L in _lattices():
        for s in product((1, 2), repeat=6):
            worst = max(worst, V.check_ainfty(L, "generic", s).residual)
        for a in range(4):
            for b in range(4):
                worst = max(worst, V.check_ainfty(L, "boundary", (a, b)).residual)
    gate("6e A-infinity relations, generic {1,2}^6 and boundary a,b <= 3", worst, 1e-8)


def _cusp_patterns():
    for s in product(range(6), repeat=4):
        if sum(s) <= 5:
            yield s


def _is_limit_pattern(a, b, c, d):
    return (a + b + c + d) % 2 == 1 and ((b == d == 0) or (a == c == 0))


def test_criterion_7a_cusp_limit_patterns():
    worst = 0.0
    for a, b, c, d in _cusp_patterns():
        if _is_limit_pattern(a, b, c, d):
            worst = max(worst, V.check_cusp_limits(a, b, c, d, [CUSP_Y]).residual)
    gate("7a M'(i,0,j,0), M'(0,i,0,j) at Im tau = 20 vs cusp value, i+j in {1,3,5}", worst, 1e-8,
         "O(1/Im tau) offsets remain; see test_note_cusp_extrapolated")


def test_criterion_7b_cusp_other_patterns():
    worst = 0.0
    for a, b, c, d in _cusp_patterns():
        if not _is_limit_pattern(a, b, c, d):
            worst = max(worst, V.check_cusp_limits(a, b, c, d, [CUSP_Y]).residual)
    gate("7b other M' at Im tau = 20 vs 0, a+b+c+d <= 5", worst, 1e-6,
         "O(1/Im tau) offsets remain; see test_note_cusp_extrapolated")


def test_criterion_8a_theta_product_and_integral():
    worst = 0.0
    for L in _lattices():
        for k in range(5):
            worst = max(worst, V.check_theta_product(L, k, V.sample_points(L.tau, 5)).residual)
    gate("8a theta product Fourier identity, k <= 4, 5 points (D^k applied exactly)", worst, 1e-10)
    worst_m2 = max(V.check_m2_integral(Lattice(1, t), 64).residual for t in (1j, 2j))
    gate("8a' normalization integral = 1 at tau in {i, 2i}", worst_m2, 1e-8)


def test_criterion_8b_theta_product_closed_form_derivative():
    worst = 0.0
    for L in _lattices():
        for k in range(5):
            worst = max(worst, V.check_theta_product(L, k, V.sample_points(L.tau, 5), closed_form=True).residual)
    gate("8b theta product with D^k theta = (-2ia)^k sum (n+v)^k e_n, k <= 4", worst, 1e-10,
         "closed form drops lower-order terms for k >= 2")


def test_criterion_9_infrastructure():
    # bit-identical reruns, bypassing every cache
    L = Lattice(1, 0.25 + 1.5j)
    raw = gaussian_lattice_sum.__wrapped__
    rerun = max(abs(raw(L, m, n).value - raw(L, m, n).value) for m in range(5) for n in range(5))
    reports = [(r.name, r.residual) for r in V.run_suite(only=["prop_ii", "ainfty"])]
    rerun += float(reports != [(r.name, r.residual) for r in V.run_suite(only=["prop_ii", "ainfty"])])

    weight = 0.0
    for lam in (2, 1 + 1j):
        M = scale_basis(L, lam)
        for m, n in product(range(5), repeat=2):
            weight = max(weight, abs(f_mn(M, m, n).value - lam ** (-(m + n)) * f_mn(L, m, n).value))
        for n in (2, 4, 6, 8):
            weight = max(weight, abs(eisenstein_value(M, n).value - lam ** (-n) * eisenstein_value(L, n).value))

    sl2 = 0.0
    gammas = [[[1, 1], [0, 1]], [[0, -1], [1, 0]], [[2, 1], [1, 1]], [[1, 0], [-3, 1]]]
    for tau in GRID.values():
        L0 = Lattice(1, tau)
        for g in gammas:
            L1 = sl2_change_basis(L0, g)
            for m in range(-2, 7):
                for n in range(-2, 7):
                    sl2 = max(sl2, abs(gaussian_lattice_sum(L0, m, n).value - gaussian_lattice_sum(L1, m, n).value))
    gate("9a deterministic reruns", rerun, 0.0)
    gate("9b weight scaling of f and e*", weight, 1e-12)
    gate("9c SL(2,Z) basis change leaves lattice sums fixed", sl2, 1e-14)


# ------------------------------------------------------------ corrected statements (informational)


def test_note_weil_identity_rescaled():
    worst = max(V.check_weil_vi5(L, n, lhs_factor=2).residual for L in _lattices() for n in (2, 4, 6))
    assert worst <= 1e-8


def test_note_cusp_extrapolated():
    ys = [10.0, 12.5, 15.0, 20.0, 25.0, 30.0, 40.0]
    worst = 0.0
    for s in _cusp_patterns():
        r = V.check_cusp_limits(*s, ys, mode="extrapolate")
        worst = max(worst, r.residual / r.tolerance)
    assert worst <= 1.0


def test_note_cusp_offset_is_order_one_over_im_tau():
    # residual at Im tau = y shrinks like 1/y for the leading pattern
    r = [V.check_cusp_limits(0, 0, 1, 0, [y]).residual for y in (20.0, 40.0, 80.0)]
    assert np.allclose([r[0] / r[1], r[1] / r[2]], 2.0, rtol=1e-6)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
