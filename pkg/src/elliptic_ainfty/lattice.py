"""Rank-2 lattices in the complex plane and Gaussian-weighted lattice sums.

Every series in this package is a sum over the nonzero points of a lattice
``L = Z*omega1 + Z*omega2`` weighted by ``exp(-pi |w|^2 / area)``.  The sums are
truncated at a radius chosen from a proven tail bound, so each returned
:class:`SeriesValue` carries an upper bound on the omitted mass.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special


class LatticeError(ValueError):
    """Invalid lattice data or a summation that cannot meet its budget."""


@dataclass(frozen=True)
class Lattice:
    """Oriented basis ``(omega1, omega2)`` with ``Im(conj(omega1) * omega2) > 0``."""

    omega1: complex
    omega2: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "omega1", complex(self.omega1))
        object.__setattr__(self, "omega2", complex(self.omega2))
        if not (self.area > 0):
            raise LatticeError(
                f"basis ({self.omega1}, {self.omega2}) is not oriented: "
                f"Im(conj(omega1)*omega2) = {self.area} <= 0"
            )

    @property
    def area(self) -> float:
        return (self.omega1.conjugate() * self.omega2).imag

    @property
    def tau(self) -> complex:
        return self.omega2 / self.omega1

    @property
    def q(self) -> complex:
        return cmath.exp(2j * math.pi * self.tau)

    @classmethod
    def from_tau(cls, tau: complex) -> Lattice:
        return cls(1.0, tau)

    def normalized(self) -> Lattice:
        """The homothetic lattice ``Z + Z*tau``."""
        return Lattice(1.0, self.tau)

    def reduced(self) -> Lattice:
        """Gauss-reduced basis of the same point set, orientation kept.

        The returned basis has ``|omega1| <= |omega2| <= |omega2 +- omega1|``,
        so its tau lies in the closure of the standard fundamental domain.
        """
        w1, w2 = self.omega1, self.omega2
        if abs(w1) > abs(w2):
            w1, w2 = w2, -w1
        while True:
            mu = round(((w2 * w1.conjugate()) / (w1 * w1.conjugate())).real)
            w2 = w2 - mu * w1
            if abs(w2) < abs(w1):
                w1, w2 = w2, -w1
            else:
                break
        return Lattice(w1, w2)

    def point(self, m: int, n: int) -> complex:
        return m * self.omega2 + n * self.omega1


@dataclass(frozen=True)
class SummationConfig:
    """Truncation policy shared by every lattice sum."""

    target_epsilon: float = 1e-14
    radius_margin: float = 1.2
    max_points: int = 2_000_000

    def __post_init__(self) -> None:
        if not self.target_epsilon > 0:
            raise ValueError("target_epsilon must be positive")
        if not self.radius_margin >= 1:
            raise ValueError("radius_margin must be >= 1")
        if not self.max_points > 0:
            raise ValueError("max_points must be positive")

    def tightened(self, factor: float) -> SummationConfig:
        return SummationConfig(self.target_epsilon * factor, self.radius_margin, self.max_points)


DEFAULT_CONFIG = SummationConfig()


@dataclass(frozen=True)
class SeriesValue:
    """A truncated series: value, proven bound on the omitted tail, point count."""

    value: complex
    tail_bound: float
    points_used: int

    def __post_init__(self) -> None:
        if self.tail_bound < 0:
            raise ValueError("tail_bound must be nonnegative")

    def __add__(self, other: SeriesValue) -> SeriesValue:
        return SeriesValue(
            self.value + other.value,
            self.tail_bound + other.tail_bound,
            self.points_used + other.points_used,
        )

    def scaled(self, factor: complex) -> SeriesValue:
        return SeriesValue(self.value * factor, self.tail_bound * abs(factor), self.points_used)


def make_lattice(omega1: complex, omega2: complex) -> Lattice:
    return Lattice(omega1, omega2)


def scale_basis(L: Lattice, lam: complex) -> Lattice:
    if lam == 0:
        raise LatticeError("scaling factor must be nonzero")
    return Lattice(lam * L.omega1, lam * L.omega2)


def sl2_change_basis(L: Lattice, gamma) -> Lattice:
    """Apply ``(omega2, omega1) -> gamma @ (omega2, omega1)``.

    With ``gamma = [[a, b], [c, d]]`` the new basis is ``omega2' = a*omega2 + b*omega1``,
    ``omega1' = c*omega2 + d*omega1``, so ``tau' = (a*tau + b) / (c*tau + d)``.
    """
    (a, b), (c, d) = [[int(x) for x in row] for row in gamma]
    if a * d - b * c != 1:
        raise LatticeError(f"det(gamma) = {a * d - b * c}, expected 1")
    return Lattice(c * L.omega2 + d * L.omega1, a * L.omega2 + b * L.omega1)


def _index_box(L: Lattice, radius: float) -> tuple[int, int]:
    # |Im(conj(w1) * w)| = |m| * area <= |w1| |w|, likewise for n with w2.
    m_max = int(math.floor(radius * abs(L.omega1) / L.area + 1e-9))
    n_max = int(math.floor(radius * abs(L.omega2) / L.area + 1e-9))
    return m_max, n_max


@lru_cache(maxsize=512)
def _shell_arrays(L: Lattice, radius: float, max_points: int):
    m_max, n_max = _index_box(L, radius)
    box = (2 * m_max + 1) * (2 * n_max + 1)
    if box > 50 * max_points + 1000:
        raise LatticeError(f"enumeration box of {box} candidates exceeds budget")
    m, n = np.meshgrid(
        np.arange(-m_max, m_max + 1, dtype=np.int64),
        np.arange(-n_max, n_max + 1, dtype=np.int64),
        indexing="ij",
    )
    m = m.ravel()
    n = n.ravel()
    w = m * L.omega2 + n * L.omega1
    r2 = w.real**2 + w.imag**2
    keep = (r2 <= radius * radius) & ((m != 0) | (n != 0))
    m, n, w, r2 = m[keep], n[keep], w[keep], r2[keep]
    if len(w) > max_points:
        raise LatticeError(f"{len(w)} lattice points within radius {radius} exceed max_points={max_points}")
    order = np.lexsort((n, m, r2))
    for arr in (m, n, w, r2):
        arr.flags.writeable = False
    return m[order], n[order], w[order], r2[order]


def enumerate_shell_points(L: Lattice, radius: float, cfg: SummationConfig = DEFAULT_CONFIG) -> list[complex]:
    """Nonzero points with ``|w| <= radius``, ascending ``|w|``, ties by ``(m, n)``."""
    if radius < 0:
        raise LatticeError("radius must be nonnegative")
    _, _, w, _ = _shell_arrays(L, float(radius), cfg.max_points)
    return [complex(x) for x in w]


def cell_radius(L: Lattice) -> float:
    """Circumradius of the centred fundamental parallelogram of the reduced basis."""
    R = L.reduced()
    return 0.5 * max(abs(R.omega1 + R.omega2), abs(R.omega1 - R.omega2))


def _upper_gaussian_moment(j: float, c: float, T: float) -> float:
    """``int_T^inf s^j exp(-c s^2) ds`` for ``j > -1`` and ``T >= 0``."""
    s = 0.5 * (j + 1)
    return 0.5 * c ** (-s) * special.gamma(s) * special.gammaincc(s, c * T * T)


def gaussian_tail_bound(L: Lattice, radius: float, m: int, n: int) -> float:
    """Bound on ``sum_{|w| > radius} |w|^(m-n) exp(-pi |w|^2 / area)``.

    Each point owns a translate of the centred fundamental cell (area ``a``,
    circumradius ``rho``), and on that cell the summand is dominated by
    ``h(|x| - rho)``.  Integrating gives
    ``(2 pi / a) * int_{R - 2 rho}^inf h(s) (s + rho) ds``, valid once
    ``R - 2 rho`` is past the peak of ``h(s) = s^k exp(-pi s^2 / a)``.
    Returns ``inf`` when the radius is too small for the argument to apply.
    """
    if radius <= 0:
        raise LatticeError("radius must be positive")
    a = L.area
    c = math.pi / a
    k = m - n
    rho = cell_radius(L)
    T = radius - 2 * rho
    if T <= 0:
        return math.inf
    if k > 0 and T < math.sqrt(k / (2 * c)):
        return math.inf
    if k >= 0:
        integral = _upper_gaussian_moment(k + 1, c, T) + rho * _upper_gaussian_moment(k, c, T)
    else:
        # s^k <= T^k on [T, inf)
        integral = T**k * (_upper_gaussian_moment(1, c, T) + rho * _upper_gaussian_moment(0, c, T))
    return float(2 * math.pi / a * integral)


@lru_cache(maxsize=4096)
def truncation_radius(L: Lattice, m: int, n: int, epsilon: float, margin: float) -> float:
    """Smallest radius (to bisection precision) with tail bound below ``epsilon``, times ``margin``."""
    lo = 0.0
    hi = 2 * cell_radius(L) + math.sqrt(L.area) + 1.0
    while not gaussian_tail_bound(L, hi, m, n) < epsilon:
        lo, hi = hi, 2 * hi
        if hi > 1e8:
            raise LatticeError(f"no finite radius bounds the tail of ({m}, {n}) below {epsilon}")
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if mid > 0 and gaussian_tail_bound(L, mid, m, n) < epsilon:
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-9 * hi:
            break
    return hi * margin


def _accumulate(terms: np.ndarray) -> complex:
    return complex(math.fsum(terms.real.tolist()), math.fsum(terms.imag.tolist()))


def _terms(w: np.ndarray, r2: np.ndarray, area: float, m: int, n: int, weight: float = 1.0) -> np.ndarray:
    # conj(w)^m * w^(-n) = |w|^(m-n) * exp(-i (m+n) arg w)
    r = np.sqrt(r2)
    theta = np.angle(w)
    mag = r ** (m - n) * np.exp(-weight * math.pi * r2 / area)
    return mag * np.exp(-1j * (m + n) * theta)


@lru_cache(maxsize=8192)
def gaussian_lattice_sum(L: Lattice, m: int, n: int, cfg: SummationConfig = DEFAULT_CONFIG) -> SeriesValue:
    """``sum_{w != 0} conj(w)^m w^(-n) exp(-pi |w|^2 / area)`` with a certified tail."""
    m, n = int(m), int(n)
    radius = truncation_radius(L, m, n, cfg.target_epsilon, cfg.radius_margin)
    _, _, w, r2 = _shell_arrays(L, radius, cfg.max_points)
    tail = gaussian_tail_bound(L, radius, m, n)
    if not tail <= cfg.target_epsilon:
        raise LatticeError(f"tail bound {tail} for ({m}, {n}) exceeds target")
    return SeriesValue(_accumulate(_terms(w, r2, L.area, m, n)), tail, len(w))


@lru_cache(maxsize=1024)
def gaussian_abs_sum(L: Lattice, k: int, cfg: SummationConfig = DEFAULT_CONFIG) -> float:
    """``sum_{w != 0} |w|^k exp(-pi |w|^2 / area)``: the magnitude scale of every ``(m, n)`` sum with ``m - n = k``."""
    radius = truncation_radius(L, k, 0, cfg.target_epsilon, cfg.radius_margin)
    _, _, _, r2 = _shell_arrays(L, radius, cfg.max_points)
    return math.fsum((np.sqrt(r2) ** k * np.exp(-math.pi * r2 / L.area)).tolist())


def direct_double_sum(L: Lattice, m: int, n: int, extent: int) -> complex:
    """Naive ``|m'|, |n'| <= extent`` double loop; an oracle for the shell sum."""
    total = []
    a = L.area
    for i in range(-extent, extent + 1):
        for j in range(-extent, extent + 1):
            if i == 0 and j == 0:
                continue
            w = L.point(i, j)
            total.append(w.conjugate() ** m * w ** (-n) * math.exp(-math.pi * abs(w) ** 2 / a))
    return complex(math.fsum(t.real for t in total), math.fsum(t.imag for t in total))
