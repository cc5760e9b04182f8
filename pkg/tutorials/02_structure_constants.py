# %% [markdown]
# # Higher products on an elliptic curve
#
# The minimal A-infinity structure on `Ext*(O + L, O + L)` has four families
# of nonzero higher products, all with coefficients `M(a,b,c,d)` built from
# the series `g_{a,b}`.  We tabulate them, compare two independent ways of
# computing each constant, and look at the behaviour as `Im tau` grows.

# %%
import math

import numpy as np

from elliptic_ainfty import Lattice, M_direct, M_rescaled, full_table, m_coeff_comb, product_lookup
from elliptic_ainfty.verify import check_cusp_limits, cusp_limit

L = Lattice(1.0, 0.25 + 1.5j)
table = full_table(L, 6)
for e in table.by_n(4):
    print(f"{e.key:18s} -> {e.output.name:5s} {e.coefficient:.12f}")

# %% [markdown]
# A single product by its inputs.  Strings are read in order of application.

# %%
print(product_lookup(L, ["xi", "theta", "eta", "theta"]))
print(product_lookup(L, ["xi", "theta", "id_L", "eta"]))

# %% [markdown]
# ## Two routes to the same constant
#
# `m_coeff_comb` sums binomially weighted pairings over splittings of the
# input string; `M_direct` is a single closed form.

# %%
worst = 0.0
for a in range(4):
    for b in range(4 - a):
        for c in range(4 - a - b):
            d = 3 - a - b - c
            worst = max(worst, abs(m_coeff_comb(L, a, b, c, d).value - M_direct(L, a, b, c, d).value))
print("largest disagreement at a+b+c+d = 3:", worst)

# %% [markdown]
# ## Towards the cusp
#
# After rescaling the degree-one generators by `pi / Im tau` the constants
# tend to zeta values as `Im tau -> oo`.  At finite `Im tau` the approach is
# polynomial in `1 / Im tau`, not exponential: for `(0,0,1,0)` the value is
# `-pi^2/3 + pi / Im tau`.  Extrapolating in `1 / Im tau` recovers the limit.

# %%
ys = np.array([10.0, 12.5, 15.0, 20.0, 25.0, 30.0, 40.0])
for abcd in [(0, 0, 1, 0), (1, 0, 2, 0), (0, 1, 2, 2)]:
    vals = [M_rescaled(Lattice(1.0, 1j * y), *abcd).value.real for y in ys]
    r = check_cusp_limits(*abcd, list(ys), mode="extrapolate")
    print(abcd, "at y=20:", f"{vals[3]:+.6f}", " extrapolated:", f"{r.details['estimate'].real:+.10f}",
          " limit:", f"{cusp_limit(*abcd):+.10f}")
print("offset times y for (0,0,1,0):",
      [round(float((M_rescaled(Lattice(1.0, 1j * y), 0, 0, 1, 0).value.real + math.pi**2 / 3) * y), 12) for y in ys[:3]])
