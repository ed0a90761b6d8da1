# %% [markdown]
# # Avoider constructions
#
# A code C of length l gives a set in F_2^n with n = l(k-1).
# A point belongs to the set when its block signature is not a codeword.

# %%
from flatavoid import (
    AffineCode,
    Hypergraph,
    LinearCode,
    code_based_set,
    count_independent_sets,
    hypergraph_set,
    is_avoider,
    predicted_size,
)

rep = LinearCode.from_strings(["11"])
s = code_based_set(rep, 3)
s.points(), len(s), predicted_size(rep, 3)

# %%
is_avoider(s, 3, 1)

# %% [markdown]
# Affine codes shift the codeword set by an offset.

# %%
a = AffineCode(LinearCode.trivial(3), 0b111)
len(code_based_set(LinearCode.trivial(3), 3)), predicted_size(a, 3)

# %% [markdown]
# Hypergraphs: each edge e contributes the flat where all coordinates of e are 1.
# The complement is the set of independent sets.

# %%
h = Hypergraph(5, ((1, 2), (2, 3), (4, 5)))
t = hypergraph_set(h, 3)
len(t), 2**5 - count_independent_sets(h), is_avoider(t, 3, 1)
