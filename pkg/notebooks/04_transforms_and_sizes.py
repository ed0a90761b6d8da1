# %% [markdown]
# # Code transformations and distinct sizes
#
# `a` appends two zero coordinates. `b` does the same and adds two generators.
# In a word the rightmost letter acts first.

# %%
from flatavoid import LinearCode, apply_word, distinct_sizes, size_lower_bound, v_of_code, word_matrix

c0 = LinearCode.trivial()
apply_word("ba", c0).codewords()

# %%
v_of_code(apply_word("ab", c0)), v_of_code(apply_word("ba", c0))

# %%
word_matrix("ab"), word_matrix("ab").det()

# %% [markdown]
# Counting distinct W(1, 3) values over all words of length r.
# Each value v gives an avoider of size 2^(4r) - v in F_2^(4r).

# %%
for r in range(1, 16):
    rep = distinct_sizes(r)
    print(r, rep.count, size_lower_bound(4 * r) if r >= 2 else None)

# %%
print(distinct_sizes(2).to_json())
