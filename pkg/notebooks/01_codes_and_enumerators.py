# %% [markdown]
# # Codes and weight enumerators
#
# Binary linear codes are stored by their reduced row echelon generator.
# Bit strings list coordinate x1 first.

# %%
from flatavoid import LinearCode, dual, evaluate, macwilliams_transform, weight_enumerator

c = LinearCode.from_strings(["1001", "0101", "1110"])
c.generator.to_strings()  # ['1001', '0101', '0010']

# %%
w = weight_enumerator(c)
w.coeffs  # A_0 .. A_4

# %% [markdown]
# The dual code has dimension 1. Its enumerator follows from the MacWilliams transform.

# %%
d = dual(c)
d.generator.to_strings(), macwilliams_transform(w, c.dimension) == weight_enumerator(d)

# %%
# W(1, 3) drives the avoider size formula for k = 3
evaluate(w, 1, 3), evaluate(w, 3, 1)
