# %% [markdown]
# # Spectra for tiny n
#
# m is in Sp(n; k, t) when every m-point set meets some k-flat in exactly t points.
# For n <= 4 all 65536 subsets are scanned.

# %%
from flatavoid import exists_avoider_of_size, spectrum_exhaustive

for k, t in [(1, 1), (1, 2), (3, 1), (3, 0)]:
    r = spectrum_exhaustive(4, k, t)
    print(k, t, r.members, r.density)

# %% [markdown]
# Beyond n = 4 a backtracking search answers single sizes.

# %%
hit = exists_avoider_of_size(5, 3, 1, 12)
hit.found, hit.witness.points() if hit.witness else None, hit.nodes
