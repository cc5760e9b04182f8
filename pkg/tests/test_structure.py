from __future__ import annotations

import math
from math import factorial

import pytest

from elliptic_ainfty import BASIS, Lattice, M_direct, ProductIndex, full_table, m_coeff_comb, phi, product_lookup
from elliptic_ainfty.eisenstein import eisenstein_value, f_mn
from elliptic_ainfty.structure import CompositionError, M_rescaled, m2, parse_product

X, XL, TH, ETA = BASIS["xi"], BASIS["xi_L"], BASIS["theta"], BASIS["eta"]
L2 = Lattice(1, 2j)
SKEW = Lattice(1, 0.25 + 1.5j)


def test_basis_elements():
    assert (TH.source, TH.target, TH.degree) == ("O", "L", 0)
    assert (ETA.source, ETA.target, ETA.degree) == ("L", "O", 1)
    assert BASIS["id_L"].source == BASIS["id_L"].target == "L"
    assert XL.degree == X.degree == 1


def test_phi():
    assert abs(phi(L2, 0, 0, 0).value) < 1e-14
    for k, p in [(2, 1), (3, 0)]:
        a = factorial(k) * factorial(p) * phi(SKEW, k, 1, p).value
        b = factorial(p) * factorial(k) * phi(SKEW, p, 1, k).value
        assert a == b
    expected = (2 / math.pi) ** 2 * f_mn(L2, 1, 1).value
    assert abs(phi(L2, 1, 0, 0).value - expected) < 1e-13


def test_phi_uses_normalized_lattice():
    assert phi(Lattice(3, 6j), 2, 1, 0).value == phi(L2, 2, 1, 0).value


def test_m_examples():
    assert M_direct(L2, 0, 0, 0, 0).value == 0
    assert abs(M_direct(Lattice(1, 1j), 1, 0, 0, 0).value) < 1e-14
    expected = -((2 / math.pi) ** 2) * eisenstein_value(L2, 2).value
    assert abs(M_direct(L2, 1, 0, 0, 0).value - expected) < 1e-12
    assert abs(m_coeff_comb(L2, 1, 0, 0, 0).value - M_direct(L2, 1, 0, 0, 0).value) < 1e-10
    assert abs(m_coeff_comb(L2, 1, 0, 0, 0).value - m_coeff_comb(L2, 0, 1, 0, 0).value) < 1e-10
    with pytest.raises(ValueError):
        M_direct(L2, -1, 0, 0, 0)


@pytest.mark.parametrize("L", [L2, SKEW], ids=["2i", "skew"])
def test_dual_route(L):
    for a in range(8):
        for b in range(8 - a):
            for c in range(8 - a - b):
                for d in range(8 - a - b - c):
                    comb_val = m_coeff_comb(L, a, b, c, d).value
                    assert abs(comb_val - M_direct(L, a, b, c, d).value) <= 1e-9
                    if (a + b + c + d) % 2 == 0:
                        assert abs(comb_val) <= 1e-12


def test_rescaled():
    y = 2.0
    assert M_rescaled(L2, 1, 0, 0, 0).value == pytest.approx((math.pi / y) ** 2 * M_direct(L2, 1, 0, 0, 0).value)


def test_m2_table():
    assert m2(TH, ETA).output == X
    assert m2(ETA, TH).output == XL
    assert m2(BASIS["id_O"], TH).output == TH
    assert m2(X, X) is None
    assert m2(TH, XL) is None  # lands in Ext^1(O, L) = 0
    assert m2(XL, ETA) is None
    with pytest.raises(CompositionError):
        m2(TH, TH)


def test_product_lookup_examples():
    p = product_lookup(L2, ["theta", "eta"])
    assert (p.coefficient, p.output) == (1.0, X)
    assert product_lookup(L2, ["xi", "theta", "id_L", "eta"]) is None
    p = product_lookup(L2, [X, TH, ETA, TH])
    assert p.index == ProductIndex("I", (1, 0, 0, 0))
    assert p.output == TH
    assert p.coefficient == M_direct(L2, 1, 0, 0, 0).value
    assert product_lookup(L2, [TH, ETA, TH]) is None
    with pytest.raises(CompositionError):
        product_lookup(L2, [TH, X])
    with pytest.raises(CompositionError):
        product_lookup(L2, [])


def test_product_index():
    idx = ProductIndex("III", (1, 0, 2, 0, 1))
    assert idx.n == 8
    assert idx.m_arguments() == (3, 0, 2, 0)
    assert parse_product(idx.inputs()) == idx
    for family, k in [("I", 4), ("II", 4), ("III", 5), ("IV", 5)]:
        with pytest.raises(ValueError):
            ProductIndex(family, (0,) * (k + 1))
    with pytest.raises(ValueError):
        ProductIndex("V", (0, 0, 0, 0))


def test_full_table_small():
    t3 = full_table(L2, 3)
    assert all(len(e.inputs) == 2 for e in t3)
    t4 = full_table(Lattice(1, 1j), 4)
    four = t4.by_n(4)
    assert four and all(abs(e.coefficient) < 1e-14 for e in four if e.index.family in ("I", "II"))
    with pytest.raises(ValueError):
        full_table(L2, 1)


def test_full_table_structure():
    table = full_table(SKEW, 7)
    keys = [e.key for e in table]
    assert keys == [e.key for e in full_table(SKEW, 7)]
    assert all(len(e.inputs) % 2 == 0 for e in table)
    families = {e.index.family for e in table.by_n(4)}
    assert families == {"I", "II", "III", "IV"}
    for e in table:
        ins = e.inputs
        assert all(x.target == y.source for x, y in zip(ins, ins[1:]))
        assert (e.output.source, e.output.target) == (ins[0].source, ins[-1].target)
        assert e.output.degree == sum(x.degree for x in ins) + 2 - len(ins)
        if e.index is None:
            continue
        assert e.coefficient == M_direct(SKEW, *e.index.m_arguments()).value
        if e.index.family == "II":
            twin = table.lookup(ProductIndex("I", e.index.exponents))
            assert twin.coefficient == e.coefficient
    assert abs(table.lookup(ProductIndex("I", (1, 0, 0, 0))).coefficient) > 0.01
