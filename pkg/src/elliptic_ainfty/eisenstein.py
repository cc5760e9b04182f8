"""Eisenstein series by three independent routes, and the ``g_{a,b}`` family.

``rapid``
    The Gaussian-series presentation ``e*_n = sum c_{m,n} f_{m,n}`` with a
    certified tail.  This is the production path.
``classical``
    The lattice sum with Eisenstein's order of summation (outer index over
    rows ``m*omega2``, inner over ``n*omega1``).  Each row is summed in closed
    form through derivatives of ``pi*cot(pi*z)``.
``q_series``
    The divisor-sum expansion in ``q = exp(2 pi i tau)`` on a reduced basis.

The last two are oracles for the first.  Their ``tail_bound`` fields are
truncation estimates, not proofs.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Literal

from .lattice import DEFAULT_CONFIG, Lattice, SeriesValue, SummationConfig, gaussian_lattice_sum
from .weil import WeilCombination, estar_combination, g_ab_symbolic

Method = Literal["rapid", "classical", "q_series"]
METHODS: tuple[str, ...] = ("rapid", "classical", "q_series")


@dataclass(frozen=True)
class EisensteinIndex:
    n: int
    starred: bool = True

    def __post_init__(self) -> None:
        if self.n < 2 or self.n % 2:
            raise ValueError(f"n must be even and >= 2, got {self.n}")
        if self.n == 2 and not self.starred:
            object.__setattr__(self, "starred", True)


def f_mn(L: Lattice, m: int, n: int, cfg: SummationConfig = DEFAULT_CONFIG) -> SeriesValue:
    """``(pi/a)^m * sum_{w != 0} conj(w)^m w^(-n) exp(-pi |w|^2 / a)``."""
    prefactor = (math.pi / L.area) ** m
    raw_cfg = cfg if prefactor <= 1 else SummationConfig(cfg.target_epsilon / prefactor, cfg.radius_margin, cfg.max_points)
    return gaussian_lattice_sum(L, m, n, raw_cfg).scaled(prefactor)


def evaluate(c: WeilCombination, L: Lattice, cfg: SummationConfig = DEFAULT_CONFIG) -> SeriesValue:
    total = SeriesValue(0j, 0.0, 0)
    for (m, n), coef in c:
        total = total + f_mn(L, m, n, cfg).scaled(float(coef))
    return total


# ---------------------------------------------------------------- zeta values

_BERNOULLI = [Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
              Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6)]


def riemann_zeta(s: int, cutoff: int = 12) -> tuple[float, float]:
    """``zeta(s)`` for integer ``s >= 2`` by Euler-Maclaurin; returns ``(value, remainder_bound)``.

    The remainder is bounded by the first omitted correction term.
    """
    if s < 2:
        raise ValueError("s must be >= 2")
    N = cutoff
    head = [n ** (-s) for n in range(1, N)]
    head.append(N ** (1 - s) / (s - 1))
    head.append(0.5 * N ** (-s))
    rising = s  # s (s+1) ... (s + 2j - 2)
    terms = []
    for j, B in enumerate(_BERNOULLI, start=1):
        terms.append(float(B) / math.factorial(2 * j) * rising * N ** (-s - 2 * j + 1))
        rising *= (s + 2 * j - 1) * (s + 2 * j)
    bound = abs(terms.pop())
    return math.fsum(head + terms), bound


# ---------------------------------------------------------------- classical


@lru_cache(maxsize=None)
def _cot_derivative_poly(j: int) -> tuple[int, ...]:
    """Integer coefficients (ascending) of ``Q_j`` with ``d^j/dz^j cot(pi z) = pi^j Q_j(cot(pi z))``."""
    if j == 0:
        return (0, 1)
    prev = _cot_derivative_poly(j - 1)
    deriv = [k * prev[k] for k in range(1, len(prev))]
    # Q_j = -(1 + c^2) Q_{j-1}'
    out = [0] * (len(deriv) + 2)
    for k, coef in enumerate(deriv):
        out[k] -= coef
        out[k + 2] -= coef
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def _row_sum(z: complex, k: int) -> complex:
    """``sum_{n in Z} (z + n)^(-k)`` for ``Im z > 0`` and ``k >= 2``."""
    x = cmath.exp(2j * math.pi * z)
    cot = -1j * (1 + x) / (1 - x)
    poly = _cot_derivative_poly(k - 1)
    acc = 0j
    for coef in reversed(poly):
        acc = acc * cot + coef
    return (-1) ** (k - 1) / math.factorial(k - 1) * math.pi**k * acc


def _classical_unit(tau: complex, k: int, eps: float) -> tuple[complex, float]:
    """``sum_m sum_n (m tau + n)^(-k)`` over ``(m, n) != 0`` in Eisenstein order."""
    z0, zb = riemann_zeta(k)
    rows = [2 * z0]
    aq = abs(cmath.exp(2j * math.pi * tau))
    scale = (2 * math.pi) ** k / math.factorial(k - 1)
    m = 1
    while True:
        rows.append(2 * _row_sum(m * tau, k))
        # remaining rows are dominated by scale * sum_{d >= m+1} d^(k-1) |q|^d (times 2 for both signs)
        est = 2 * scale * (m + 1) ** (k - 1) * aq ** (m + 1) / (1 - aq) ** k
        if est < eps or m > 10_000:
            break
        m += 1
    value = complex(math.fsum(r.real for r in rows), math.fsum(r.imag for r in rows))
    return value, est + 2 * zb


def eisenstein_e2(L: Lattice) -> complex:
    """Basis-dependent ``e_2(omega1, omega2)`` under Eisenstein summation."""
    value, _ = _classical_unit(L.tau, 2, 1e-17)
    return value / L.omega1**2


def e2_correction(L: Lattice) -> complex:
    """``(pi / a) * conj(omega1) / omega1``; ``e*_2 = e_2 - e2_correction``."""
    return math.pi / L.area * L.omega1.conjugate() / L.omega1


# ---------------------------------------------------------------- q-series


def _divisor_sigma(n: int, power: int) -> int:
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**power
            if d * d != n:
                total += (n // d) ** power
        d += 1
    return total


def _q_series_unit(tau: complex, k: int, eps: float) -> tuple[complex, float]:
    """``e_k(1, tau) = 2 zeta(k) + 2 (2 pi i)^k / (k-1)! sum sigma_{k-1}(n) q^n``."""
    z0, zb = riemann_zeta(k)
    q = cmath.exp(2j * math.pi * tau)
    aq = abs(q)
    pref = 2 * (2j * math.pi) ** k / math.factorial(k - 1)
    terms = []
    qn = 1 + 0j
    n = 1
    while True:
        qn *= q
        terms.append(_divisor_sigma(n, k - 1) * qn)
        # sigma_{k-1}(n) <= n^(k-1) * (1 + log n) covers k = 2 as well
        nxt = n + 1
        est = abs(pref) * nxt ** (k - 1) * (1 + math.log(nxt)) * aq**nxt / (1 - aq) ** k
        if est < eps or n > 100_000:
            break
        n += 1
    s = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
    return 2 * z0 + pref * s, est + 2 * zb


# ---------------------------------------------------------------- dispatch


def eisenstein_value(
    L: Lattice,
    idx: EisensteinIndex | int,
    method: Method = "rapid",
    cfg: SummationConfig = DEFAULT_CONFIG,
) -> SeriesValue:
    """``e*_n(L)`` (equal to ``e_n`` for ``n >= 4``) by the chosen route."""
    if isinstance(idx, int):
        idx = EisensteinIndex(idx)
    n = idx.n
    if method == "rapid":
        return evaluate(estar_combination(n), L, cfg)
    if method == "classical":
        value, est = _classical_unit(L.tau, n, cfg.target_epsilon)
        value /= L.omega1**n
        est /= abs(L.omega1) ** n
        if n == 2:
            value -= e2_correction(L)
        return SeriesValue(value, est, 0)
    if method == "q_series":
        R = L.reduced()
        if abs(R.q) >= 1:
            raise ValueError("q-series needs |q| < 1")
        value, est = _q_series_unit(R.tau, n, cfg.target_epsilon)
        value /= R.omega1**n
        est /= abs(R.omega1) ** n
        if n == 2:
            value -= e2_correction(R)
        return SeriesValue(value, est, 0)
    raise ValueError(f"unknown method {method!r}")


def estar(L: Lattice, j: int, cfg: SummationConfig = DEFAULT_CONFIG) -> complex:
    """``e*_j`` for any ``j >= 1``; odd weights vanish identically."""
    if j % 2:
        return 0j
    return eisenstein_value(L, j, "rapid", cfg).value


@lru_cache(maxsize=4096)
def g_ab(L: Lattice, a: int, b: int, cfg: SummationConfig = DEFAULT_CONFIG) -> SeriesValue:
    return evaluate(g_ab_symbolic(a, b), L, cfg)
