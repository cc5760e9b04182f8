"""Planar rooted binary trees and the sign bookkeeping of the tree-sum formula.

The higher product is ``m_n = -sum_T eps(T) m_T`` over planar rooted trivalent
trees with ``n`` ordered leaves.  This module enumerates those trees, computes
``eps(T)``, and evaluates ``m_T`` symbolically for the strings
``xi^a, theta, xi_L^b, eta, xi^c, theta, xi_L^d``.  The evaluation reduces each
surviving tree to one pairing ``phi(k, l, p)``, so summing over trees gives an
integer coefficient per ``phi`` argument triple.  That table can then be
compared with the closed binomial formula.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence, Union

MAX_LEAVES = 14


@dataclass(frozen=True)
class Leaf:
    position: int
    degree: int
    label: str = ""

    @property
    def leaf_count(self) -> int:
        return 1

    @property
    def degree_sum(self) -> int:
        return self.degree

    def leaves(self) -> Iterator[Leaf]:
        yield self


@dataclass(frozen=True)
class Node:
    left: PlanarTree
    right: PlanarTree
    leaf_count: int = field(init=False, compare=False)
    degree_sum: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "leaf_count", self.left.leaf_count + self.right.leaf_count)
        object.__setattr__(self, "degree_sum", self.left.degree_sum + self.right.degree_sum)

    def leaves(self) -> Iterator[Leaf]:
        yield from self.left.leaves()
        yield from self.right.leaves()


PlanarTree = Union[Leaf, Node]


def join(t1: PlanarTree, t2: PlanarTree) -> Node:
    return Node(t1, t2)


def is_admissible(t: PlanarTree) -> bool:
    """No internal vertex has two degree-1 leaves as its immediate children."""
    if isinstance(t, Leaf):
        return True
    if isinstance(t.left, Leaf) and isinstance(t.right, Leaf) and t.left.degree == 1 and t.right.degree == 1:
        return False
    return is_admissible(t.left) and is_admissible(t.right)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def enumerate_trees(
    degrees: Sequence[int],
    admissible_only: bool = False,
    labels: Sequence[str] | None = None,
) -> list[PlanarTree]:
    """All planar binary trees on the ordered leaves, by recursive interval splits."""
    n = len(degrees)
    if n < 2:
        raise ValueError("need at least two leaves")
    if n > MAX_LEAVES:
        raise ValueError(f"{n} leaves exceeds the enumeration budget of {MAX_LEAVES}")
    if any(d not in (0, 1) for d in degrees):
        raise ValueError("leaf degrees must be 0 or 1")
    labels = tuple(labels) if labels is not None else ("",) * n
    leaves = tuple(Leaf(i + 1, int(d), labels[i]) for i, d in enumerate(degrees))

    @lru_cache(maxsize=None)
    def build(i: int, j: int) -> tuple[PlanarTree, ...]:
        if j - i == 1:
            return (leaves[i],)
        out = []
        for k in range(i + 1, j):
            for left in build(i, k):
                for right in build(k, j):
                    node = Node(left, right)
                    if admissible_only and not is_admissible(node):
                        continue
                    out.append(node)
        return tuple(out)

    return list(build(0, n))


def epsilon_sign(t: PlanarTree) -> int:
    """``prod_v (-1)^(|e1(v)| + (|e2(v)| - 1) deg(e1(v)))`` over internal vertices."""
    if isinstance(t, Leaf):
        raise ValueError("a single leaf has no internal vertex")

    def exponent(node: PlanarTree) -> int:
        if isinstance(node, Leaf):
            return 0
        e1, e2 = node.left, node.right
        own = e1.leaf_count + (e2.leaf_count - 1) * e1.degree_sum
        return own + exponent(e1) + exponent(e2)

    return -1 if exponent(t) % 2 else 1


def sign_closed_form(n1: int, n2: int) -> int:
    if n1 < 0 or n2 < 0:
        raise ValueError("n1, n2 must be nonnegative")
    return -1 if (comb(n1 + n2 + 2, 2) + n2) % 2 else 1


@dataclass
class SignLemmaReport:
    n1: int
    n2: int
    trees_checked: int
    counterexamples: list[PlanarTree]

    @property
    def passed(self) -> bool:
        return not self.counterexamples and self.trees_checked > 0


def _single_stem_trees(size: int) -> list[PlanarTree]:
    """Admissible trees on ``size`` leaves with exactly one degree-0 leaf, at any position."""
    if size == 1:
        return [Leaf(1, 0)]
    out: list[PlanarTree] = []
    for pos in range(size):
        degrees = [1] * size
        degrees[pos] = 0
        out.extend(enumerate_trees(degrees, admissible_only=True))
    return out


def verify_sign_lemma(n1: int, n2: int) -> SignLemmaReport:
    """Exhaustively compare ``epsilon_sign(join(T1, T2))`` with the closed form."""
    if n1 + n2 + 2 > MAX_LEAVES:
        raise ValueError("tree size exceeds the enumeration budget")
    expected = sign_closed_form(n1, n2)
    bad: list[PlanarTree] = []
    count = 0
    for t1 in _single_stem_trees(n1 + 1):
        for t2 in _single_stem_trees(n2 + 1):
            t = join(t1, t2)
            count += 1
            if epsilon_sign(t) != expected:
                bad.append(t)
    return SignLemmaReport(n1, n2, count, bad)


# ------------------------------------------------------------ symbolic m_T

# Values flowing down a tree.  A leaf keeps its label; a section of L obtained
# from theta by k applications of H_L is ("L", k); the function
# H_O^l Q(H_L^k(theta) * eta) is ("O", k, l).
_DEGREE = {"theta": 0, "eta": 1, "xi": 1, "xi_L": 1}


def _combine(x, y, at_root: bool):
    """Product of two child values, followed by Q unless at the root; None means zero."""
    if x is None or y is None:
        return None
    x, y = (("L", 0) if v == "theta" else v for v in (x, y))
    leafish = [v for v in (x, y) if isinstance(v, str)]
    sections = [v for v in (x, y) if not isinstance(v, str)]
    if at_root:
        if len(sections) != 2:
            return None
        kinds = sorted(s[0] for s in sections)
        if kinds != ["L", "O"]:
            return None
        o = next(s for s in sections if s[0] == "O")
        l_part = next(s for s in sections if s[0] == "L")
        return ("root", o[1], o[2], l_part[1])
    # below the root the product must be a (0,1)-form for Q to be nonzero
    if len(leafish) != 1 or len(sections) != 1:
        return None
    form, s = leafish[0], sections[0]
    if form in ("xi", "xi_L"):
        return ("L", s[1] + 1) if s[0] == "L" else ("O", s[1], s[2] + 1)
    if form == "eta" and s[0] == "L":
        return ("O", s[1], 0)
    return None


def _evaluate(t: PlanarTree, at_root: bool = True):
    if isinstance(t, Leaf):
        return t.label
    return _combine(_evaluate(t.left, False), _evaluate(t.right, False), at_root)


def type_one_labels(a: int, b: int, c: int, d: int) -> list[str]:
    return ["xi"] * a + ["theta"] + ["xi_L"] * b + ["eta"] + ["xi"] * c + ["theta"] + ["xi_L"] * d


@dataclass(frozen=True)
class TreeTerm:
    """One surviving tree: its case, splitting and signed contribution to ``phi(k, l, p)``."""

    tree: PlanarTree
    case: str  # "i" when eta sits in the left subtree of the root, else "ii"
    splitting: tuple[int, int, int, int]
    phi_args: tuple[int, int, int]
    coefficient: int


def classify_trees(a: int, b: int, c: int, d: int, admissible_only: bool = True) -> list[TreeTerm]:
    labels = type_one_labels(a, b, c, d)
    degrees = [_DEGREE[x] for x in labels]
    out = []
    for t in enumerate_trees(degrees, admissible_only=admissible_only, labels=labels):
        val = _evaluate(t)
        if val is None:
            continue
        _, k, l, p = val
        n_left = t.left.leaf_count
        left_labels = [leaf.label for leaf in t.left.leaves()]
        if "eta" in left_labels:
            c1 = n_left - (a + b + 2)
            a2 = k - b
            case, split = "i", (a - a2, a2, c1, c - c1)
        else:
            b1 = n_left - a - 1
            d1 = k - c
            case, split = "ii", (b1, b - b1, d1, d - d1)
        # m_n = -sum eps(T) m_T and <m_T, eta> = (-1)^p phi(k, l, p)
        coef = -epsilon_sign(t) * (-1) ** p
        out.append(TreeTerm(t, case, split, (k, l, p), coef))
    return out


def aggregate_tree_sum(a: int, b: int, c: int, d: int, admissible_only: bool = True) -> dict[tuple[int, int, int], int]:
    """Integer coefficient of each ``phi(k, l, p)`` in ``<m_n(type I string), eta>``."""
    acc: Counter = Counter()
    for term in classify_trees(a, b, c, d, admissible_only):
        acc[term.phi_args] += term.coefficient
    return {key: v for key, v in sorted(acc.items()) if v}


def aggregate_by_case(a: int, b: int, c: int, d: int) -> dict[str, dict[tuple[int, int, int], int]]:
    acc: dict[str, Counter] = {"i": Counter(), "ii": Counter()}
    for term in classify_trees(a, b, c, d):
        acc[term.case][term.phi_args] += term.coefficient
    return {case: {k: v for k, v in sorted(cnt.items()) if v} for case, cnt in acc.items()}


def binomial_sum_by_family(a: int, b: int, c: int, d: int) -> dict[str, dict[tuple[int, int, int], int]]:
    """The two signed binomial double sums, bucketed by ``phi`` arguments."""
    n = a + b + c + d + 3
    s1 = -1 if (comb(n, 2) + 1) % 2 else 1
    s2 = -1 if (comb(n, 2) + n + 1) % 2 else 1
    first: Counter = Counter()
    for a1 in range(a + 1):
        a2 = a - a1
        for c1 in range(c + 1):
            c2 = c - c1
            first[(a2 + b, a1 + c1, c2 + d)] += s1 * comb(a2 + b, a2) * comb(a1 + c1, a1) * comb(c2 + d, c2)
    second: Counter = Counter()
    for b1 in range(b + 1):
        b2 = b - b1
        for d1 in range(d + 1):
            d2 = d - d1
            second[(c + d1, b2 + d2, a + b1)] += s2 * comb(c + d1, c) * comb(b2 + d2, b2) * comb(a + b1, a)
    return {
        "i": {k: v for k, v in sorted(first.items()) if v},
        "ii": {k: v for k, v in sorted(second.items()) if v},
    }


def binomial_sum_coefficients(a: int, b: int, c: int, d: int) -> dict[tuple[int, int, int], int]:
    fam = binomial_sum_by_family(a, b, c, d)
    acc: Counter = Counter(fam["i"])
    acc.update(fam["ii"])
    return {k: v for k, v in sorted(acc.items()) if v}
