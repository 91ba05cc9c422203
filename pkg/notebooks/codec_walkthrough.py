# ---
# jupyter:
#   jupytext:
#     formats: py:percent
# ---

# %% [markdown]
# # Rate-split linear codec at rate (1, 2)
#
# Sender 1 sends one common symbol. Sender 2 splits into one common and one
# private symbol; the private one is zero-forced at receiver 1.

# %%
from detic.fixtures import example_channel, example_decompositions, example_spreading
from detic.matrix import Matrix
from detic.ratesplit import build_codec, find_split, split_bounds

ch = example_channel()
F = ch.field
bounds = split_bounds(ch)
split = find_split(bounds, (1, 2))
split

# %%
E = {k: Matrix(F, v) for k, v in example_spreading().items()}
codec = build_codec(ch, split, spreading=E, decomps=example_decompositions(ch))
codec.M1, codec.M2

# %%
x1, x2 = codec.encode([1], [2, 3])
y1, y2 = ch.transmit(x1, x2)
x1, x2, y1, y2

# %%
codec.decode_t1(y1), codec.decode_t2(y2)

# %% [markdown]
# Changing the private symbol of sender 2 does not move y1.

# %%
ch.transmit(*codec.encode([1], [2, 6]))[0] == y1

# %% [markdown]
# Random spreading matrices work too, usually on the first draw.

# %%
c = build_codec(ch, split, seed=3)
c.attempts, c.round_trip([4], [0, 5])

# %%
find_split(bounds, (2, 2)) is None
