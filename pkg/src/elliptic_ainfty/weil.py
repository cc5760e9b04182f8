"""Exact rational combinations of the Gaussian series ``f_{m,n}``.

A :class:`WeilCombination` is a finite sum ``sum c_{m,n} f_{m,n}`` with
:class:`fractions.Fraction` coefficients.  The Weil operator acts on it by the
rewriting rule ``W f_{m,n} = f_{m+2,n} + n f_{m+1,n+1}``, so all manipulations
here are exact; numeric evaluation happens in :mod:`elliptic_ainfty.eisenstein`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Iterator, Mapping

Index = tuple[int, int]


@dataclass(frozen=True)
class WeilCombination:
    terms: Mapping[Index, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for (m, n), c in sorted(self.terms.items()):
            c = Fraction(c)
            if c != 0:
                clean[(int(m), int(n))] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def basis(cls, m: int, n: int) -> WeilCombination:
        return cls({(m, n): Fraction(1)})

    def __iter__(self) -> Iterator[tuple[Index, Fraction]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeilCombination):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __add__(self, other: WeilCombination) -> WeilCombination:
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return WeilCombination(out)

    def __sub__(self, other: WeilCombination) -> WeilCombination:
        return self + other.scale(-1)

    def __neg__(self) -> WeilCombination:
        return self.scale(-1)

    def scale(self, factor) -> WeilCombination:
        factor = Fraction(factor)
        return WeilCombination({k: c * factor for k, c in self.terms.items()})

    def __rmul__(self, factor) -> WeilCombination:
        return self.scale(factor)

    def coefficient(self, m: int, n: int) -> Fraction:
        return self.terms.get((m, n), Fraction(0))

    def weight(self) -> int | None:
        """Common value of ``m + n`` over the terms, or None if mixed or empty."""
        weights = {m + n for m, n in self.terms}
        return weights.pop() if len(weights) == 1 else None

    def __repr__(self) -> str:
        if not self.terms:
            return "WeilCombination(0)"
        body = " + ".join(f"{c}*f[{m},{n}]" for (m, n), c in self.terms.items())
        return f"WeilCombination({body})"


def weil_apply(c: WeilCombination, power: int = 1) -> WeilCombination:
    if power < 0:
        raise ValueError("power must be >= 0")
    for _ in range(power):
        out: dict[Index, Fraction] = {}
        for (m, n), coef in c.terms.items():
            out[(m + 2, n)] = out.get((m + 2, n), Fraction(0)) + coef
            if n:
                out[(m + 1, n + 1)] = out.get((m + 1, n + 1), Fraction(0)) + n * coef
        c = WeilCombination(out)
    return c


def estar_combination(n: int) -> WeilCombination:
    """Rapidly convergent presentation of the weight-``n`` Eisenstein series."""
    if n < 2 or n % 2:
        raise ValueError(f"n must be even and >= 2, got {n}")
    terms = {(n - 1, 1): Fraction(2, factorial(n - 1))}
    for m in range(2, n + 1):
        terms[(n - m, m)] = terms.get((n - m, m), Fraction(0)) + Fraction(1, factorial(n - m))
    return WeilCombination(terms)


def g_ab_symbolic(a: int, b: int) -> WeilCombination:
    """``g_{a,b} = sum_k k! (C(a,k) + C(b,k)) f_{a+b-k, k+1}``; zero when ``a + b`` is even."""
    if a < 0 or b < 0:
        raise ValueError("indices must be nonnegative")
    if (a + b) % 2 == 0:
        return WeilCombination()
    terms = {}
    for k in range(max(a, b) + 1):
        coef = factorial(k) * (comb(a, k) + comb(b, k))
        if coef:
            terms[(a + b - k, k + 1)] = Fraction(coef)
    return WeilCombination(terms)


def g_ab_via_weil(a: int, b: int) -> WeilCombination:
    """``(b-a)! W^a e*_{b-a+1}`` with the smaller index as the Weil power."""
    if a < 0 or b < 0:
        raise ValueError("indices must be nonnegative")
    if (a + b) % 2 == 0:
        return WeilCombination()
    a, b = min(a, b), max(a, b)
    return weil_apply(estar_combination(b - a + 1), a).scale(factorial(b - a))
