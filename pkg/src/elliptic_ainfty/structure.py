"""Structure constants of the minimal A-infinity algebra ``Ext*(O + L, O + L)``.

Basis: ``id_O, id_L`` (degree 0), ``theta`` in ``Hom(O, L)``, ``eta`` in
``Ext^1(L, O)``, ``xi`` in ``Ext^1(O, O)`` and ``xi_L`` in ``Ext^1(L, L)``.
Input strings are read left to right in order of application: the target of
each element is the source of the next one.

All constants are computed on the normalized lattice ``Z + Z*tau``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from math import comb, factorial
from typing import Iterable, Sequence

from .eisenstein import f_mn, g_ab
from .lattice import DEFAULT_CONFIG, Lattice, SeriesValue, SummationConfig


@dataclass(frozen=True)
class BasisElement:
    name: str
    source: str
    target: str
    degree: int

    def __repr__(self) -> str:
        return self.name


ID_O = BasisElement("id_O", "O", "O", 0)
ID_L = BasisElement("id_L", "L", "L", 0)
THETA = BasisElement("theta", "O", "L", 0)
ETA = BasisElement("eta", "L", "O", 1)
XI = BasisElement("xi", "O", "O", 1)
XI_L = BasisElement("xi_L", "L", "L", 1)

BASIS: dict[str, BasisElement] = {e.name: e for e in (ID_O, ID_L, THETA, ETA, XI, XI_L)}


def _degree_one(source: str, target: str) -> BasisElement | None:
    if source == target:
        return XI if source == "O" else XI_L
    return ETA if (source, target) == ("L", "O") else None


def _degree_zero(source: str, target: str) -> BasisElement | None:
    if source == target:
        return ID_O if source == "O" else ID_L
    return THETA if (source, target) == ("O", "L") else None


def is_composable(inputs: Sequence[BasisElement]) -> bool:
    return all(x.target == y.source for x, y in zip(inputs, inputs[1:]))


class CompositionError(ValueError):
    pass


# (skeleton of non-xi elements, output element) per family
_FAMILIES = {
    "I": (("theta", "eta", "theta"), THETA),
    "II": (("eta", "theta", "eta"), ETA),
    "III": (("theta", "eta", "theta", "eta"), ID_O),
    "IV": (("eta", "theta", "eta", "theta"), ID_L),
}


@dataclass(frozen=True, order=True)
class ProductIndex:
    family: str
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        want = len(_FAMILIES[self.family][0]) + 1
        if len(self.exponents) != want or any(e < 0 for e in self.exponents):
            raise ValueError(f"family {self.family} needs {want} nonnegative exponents")
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))

    @property
    def n(self) -> int:
        return sum(self.exponents) + len(_FAMILIES[self.family][0])

    @property
    def output(self) -> BasisElement:
        return _FAMILIES[self.family][1]

    def inputs(self) -> tuple[BasisElement, ...]:
        skeleton = _FAMILIES[self.family][0]
        out: list[BasisElement] = []
        obj = BASIS[skeleton[0]].source
        for run, name in zip(self.exponents, skeleton + (None,)):
            out.extend([XI if obj == "O" else XI_L] * run)
            if name is not None:
                out.append(BASIS[name])
                obj = BASIS[name].target
        return tuple(out)

    def m_arguments(self) -> tuple[int, int, int, int]:
        """Arguments of ``M`` giving this product's coefficient."""
        e = self.exponents
        if self.family in ("I", "II"):
            return e  # type: ignore[return-value]
        return (e[0] + e[4] + 1, e[1], e[2], e[3])

    def label(self) -> str:
        return f"{self.family}{self.exponents}"


def parse_product(inputs: Sequence[BasisElement]) -> ProductIndex | None:
    """Match a string of basis elements against the four families; None if none fits."""
    skeleton: list[str] = []
    runs = [0]
    for x in inputs:
        if x.name in ("xi", "xi_L"):
            runs[-1] += 1
        elif x.name in ("theta", "eta"):
            skeleton.append(x.name)
            runs.append(0)
        else:
            return None
    for family, (sk, _) in _FAMILIES.items():
        if tuple(skeleton) == sk:
            return ProductIndex(family, tuple(runs))
    return None


def _sign_binomial(k: int) -> int:
    return -1 if comb(k, 2) % 2 else 1


def phi(L: Lattice, k: int, l: int, p: int, cfg: SummationConfig = DEFAULT_CONFIG) -> SeriesValue:
    """``(1/(k! p!)) (a/pi)^(k+l+p+1) f_{k+p, l+1}(Z + Z tau)`` with ``a = Im tau``."""
    Ln = L.normalized()
    y = Ln.area
    factor = (y / math.pi) ** (k + l + p + 1) / (factorial(k) * factorial(p))
    return f_mn(Ln, k + p, l + 1, cfg).scaled(factor)


def m_coeff_comb(L: Lattice, a: int, b: int, c: int, d: int, cfg: SummationConfig = DEFAULT_CONFIG) -> SeriesValue:
    """``<m_n(xi^a, theta, xi_L^b, eta, xi^c, theta, xi_L^d), eta>`` from the signed binomial sums over ``phi``."""
    n = a + b + c + d + 3
    s1 = -_sign_binomial(n)
    s2 = s1 * (-1) ** n
    total = SeriesValue(0j, 0.0, 0)
    for a1 in range(a + 1):
        a2 = a - a1
        for c1 in range(c + 1):
            c2 = c - c1
            w = s1 * comb(a2 + b, a2) * comb(a1 + c1, a1) * comb(c2 + d, c2)
            total = total + phi(L, a2 + b, a1 + c1, c2 + d, cfg).scaled(w)
    for b1 in range(b + 1):
        b2 = b - b1
        for d1 in range(d + 1):
            d2 = d - d1
            w = s2 * comb(c + d1, c) * comb(b2 + d2, b2) * comb(a + b1, a)
            total = total + phi(L, c + d1, b2 + d2, a + b1, cfg).scaled(w)
    return total


def M_direct(L: Lattice, a: int, b: int, c: int, d: int, cfg: SummationConfig = DEFAULT_CONFIG) -> SeriesValue:
    """``(-1)^C(N+1, 2) / (a! b! c! d!) * (Im tau / pi)^(N+1) * g_{a+c, b+d}``, ``N = a+b+c+d``."""
    if min(a, b, c, d) < 0:
        raise ValueError("exponents must be nonnegative")
    N = a + b + c + d
    Ln = L.normalized()
    factor = _sign_binomial(N + 1) * (Ln.area / math.pi) ** (N + 1)
    factor /= factorial(a) * factorial(b) * factorial(c) * factorial(d)
    return g_ab(Ln, a + c, b + d, cfg).scaled(factor)


def M_rescaled(L: Lattice, a: int, b: int, c: int, d: int, cfg: SummationConfig = DEFAULT_CONFIG) -> SeriesValue:
    """Constants after rescaling degree-1 basis elements by ``pi / Im tau``."""
    N = a + b + c + d
    factor = (math.pi / L.normalized().area) ** (N + 1)
    return M_direct(L, a, b, c, d, cfg).scaled(factor)


# ------------------------------------------------------------ product table


@dataclass(frozen=True)
class Product:
    coefficient: complex
    output: BasisElement
    tail_bound: float = 0.0
    index: ProductIndex | None = None


def m2(x: BasisElement, y: BasisElement) -> Product | None:
    """The associative composition on cohomology, ``x`` applied first."""
    if x.target != y.source:
        raise CompositionError(f"{x.name} then {y.name} is not composable")
    if x.name in ("id_O", "id_L"):
        return Product(1.0, y)
    if y.name in ("id_O", "id_L"):
        return Product(1.0, x)
    degree = x.degree + y.degree
    if degree > 1:
        return None
    if (x.name, y.name) == ("theta", "eta"):
        return Product(1.0, XI)
    if (x.name, y.name) == ("eta", "theta"):
        return Product(1.0, XI_L)
    # the remaining targets, Hom(L, O) and Ext^1(O, L), vanish
    return None


def product_lookup(
    L: Lattice, inputs: Sequence[BasisElement], cfg: SummationConfig = DEFAULT_CONFIG
) -> Product | None:
    """``m_n(inputs)`` as ``Product(coefficient, output)``, or None when it vanishes."""
    inputs = tuple(BASIS[x] if isinstance(x, str) else x for x in inputs)
    if not inputs:
        raise CompositionError("empty input string")
    if not is_composable(inputs):
        raise CompositionError("input string is not composable left to right")
    n = len(inputs)
    if n == 1:
        return None
    if n == 2:
        return m2(*inputs)
    if n % 2:
        return None
    idx = parse_product(inputs)
    if idx is None:
        return None
    value = M_direct(L, *idx.m_arguments(), cfg)
    return Product(value.value, idx.output, value.tail_bound, idx)


@dataclass
class TableEntry:
    key: str
    inputs: tuple[BasisElement, ...]
    coefficient: complex
    output: BasisElement
    tail_bound: float
    index: ProductIndex | None = None


@dataclass
class StructureTable:
    lattice: Lattice
    config: SummationConfig
    n_max: int
    entries: list[TableEntry] = field(default_factory=list)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def by_n(self, n: int) -> list[TableEntry]:
        return [e for e in self.entries if len(e.inputs) == n]

    def lookup(self, index: ProductIndex) -> TableEntry:
        for e in self.entries:
            if e.index == index:
                return e
        raise KeyError(index)


def _compositions(total: int, parts: int) -> Iterable[tuple[int, ...]]:
    for cut in itertools.combinations(range(total + parts - 1), parts - 1):
        bounds = (-1,) + cut + (total + parts - 1,)
        yield tuple(bounds[i + 1] - bounds[i] - 1 for i in range(parts))


def full_table(L: Lattice, n_max: int, cfg: SummationConfig = DEFAULT_CONFIG) -> StructureTable:
    """Every structurally nonzero product with ``n <= n_max``, in a fixed order."""
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    table = StructureTable(L, cfg, n_max)
    names = list(BASIS)
    for x, y in itertools.product(names, repeat=2):
        bx, by = BASIS[x], BASIS[y]
        if bx.target != by.source:
            continue
        prod = m2(bx, by)
        if prod is not None:
            table.entries.append(TableEntry(f"m2({x},{y})", (bx, by), complex(prod.coefficient), prod.output, 0.0))
    for n in range(4, n_max + 1, 2):
        for family in _FAMILIES:
            parts = len(_FAMILIES[family][0]) + 1
            for exps in sorted(_compositions(n - len(_FAMILIES[family][0]), parts)):
                idx = ProductIndex(family, exps)
                value = M_direct(L, *idx.m_arguments(), cfg)
                table.entries.append(
                    TableEntry(idx.label(), idx.inputs(), value.value, idx.output, value.tail_bound, idx)
                )
    return table
