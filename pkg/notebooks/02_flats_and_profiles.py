# %% [markdown]
# # Flats and k-profiles
#
# Points of F_2^n are integers with x1 at bit 0.
# Every k-flat is enumerated once, in canonical form.

# %%
from flatavoid import Flat, PointSet, complement, count_flats, enumerate_flats, is_avoider, profile

count_flats(4, 3), len(list(enumerate_flats(4, 3)))

# %%
f = Flat.coordinate_flat(4, {0: 1, 1: 1})  # x1 = x2 = 1
f.points()

# %% [markdown]
# A 2-flat in F_2^4 meets every 3-flat in an even number of points,
# so it avoids intersections of size 1.

# %%
s = f.to_pointset()
profile(s, 3), is_avoider(s, 3, 1)

# %%
profile(complement(s), 3)  # sizes 8 - t

# %%
# flat tables for n <= 8 are cached; a profile at n = 8, k = 3 scans about 3.1 million flats
import random
big = PointSet.from_points(8, random.Random(0).sample(range(256), 40))
profile(big, 3)
