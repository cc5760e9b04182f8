# %% [markdown]
# # Identities under the microscope
#
# Most quadratic identities among the `g_{a,b}` hold to round-off.  Two
# identities need care: the normalization of the Weil-operator
# identity for `e*_n`, and the closed form for `D^k theta`.

# %%
from elliptic_ainfty import Lattice
from elliptic_ainfty import verify as V

L = Lattice(1.0, 0.25 + 1.5j)
for n in (2, 4, 6):
    one = V.check_weil_vi5(L, n, lhs_factor=1)
    two = V.check_weil_vi5(L, n, lhs_factor=2)
    print(f"n={n}: W e*_n / n -> residual {one.residual:.2e};  2 W e*_n / n -> residual {two.residual:.2e}")

# %% [markdown]
# The factor two is what the `a = 0` case of the `g` recursion gives:
# `2 g_{1,n} = ...` with `g_{1,n} = (n-1)! W e*_n`.
#
# ## Derivatives of theta
#
# `D = -(a/pi) d/dz - 2 i a v` sends `P(n+v) e_n` to
# `(-2ia t P + (i/2pi) P') e_n`.  Only the top coefficient of `P_k` is
# `(-2ia)^k`; the rest survive from `k = 2` on.

# %%
for k in range(5):
    print(k, V.d_power_polynomial(k, L.tau.imag).round(6))
for k in range(5):
    exact = V.check_theta_product(L, k)
    closed = V.check_theta_product(L, k, closed_form=True)
    print(f"k={k}: exact D^k {exact.residual:.1e}   top-term only {closed.residual:.1e}")

# %% [markdown]
# ## The whole suite

# %%
reports = V.run_suite()
print(len(reports), "checks,", sum(not r.passed for r in reports), "failures")
