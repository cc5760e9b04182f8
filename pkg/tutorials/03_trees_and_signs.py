# %% [markdown]
# # Trees, signs and binomial coefficients
#
# Higher products come from a sum over planar binary trees, each with a sign
# `eps(T)`.  For the strings that matter here, every surviving tree reduces to
# one pairing `phi(k, l, p)`, so the whole sum collapses to integer
# coefficients.  We recompute those integers by brute force.

# %%
from collections import Counter

from elliptic_ainfty import trees

for n in range(2, 9):
    print(n, "leaves:", len(trees.enumerate_trees([0] * n)), "trees")

# %% [markdown]
# ## A closed form for the sign of a join
#
# Joining two admissible trees with one degree-0 leaf each at the root gives a
# sign depending only on the leaf counts.

# %%
for n1, n2 in [(0, 0), (1, 1), (2, 3), (4, 4)]:
    rep = trees.verify_sign_lemma(n1, n2)
    print((n1, n2), "trees:", rep.trees_checked, "closed form:", trees.sign_closed_form(n1, n2), "ok:", rep.passed)

# %% [markdown]
# ## Collapsing the tree sum
#
# Each surviving tree is classified by where `eta` sits relative to the root.

# %%
terms = trees.classify_trees(1, 1, 1, 0)
print(len(terms), "surviving trees;", Counter(t.case for t in terms))
print("tree sum :", trees.aggregate_tree_sum(1, 1, 1, 0))
print("binomial :", trees.binomial_sum_coefficients(1, 1, 1, 0))

# %% [markdown]
# Allowing inadmissible trees (two degree-one leaves on one vertex) adds
# nothing, since their product of two one-forms vanishes.

# %%
print(trees.aggregate_tree_sum(1, 1, 1, 0, admissible_only=False) == trees.aggregate_tree_sum(1, 1, 1, 0))
