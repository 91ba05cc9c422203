# ---
# jupyter:
#   jupytext:
#     formats: py:percent
# ---

# %% [markdown]
# # Capacity region of a small channel over F7
#
# Two senders with 2 and 3 antennas, two receivers with 2 and 3 antennas.
# The region comes from seven rank quantities of the four channel blocks.

# %%
from detic.channel import capacity_region, rank_profile, reduced_inequalities, rank_inequalities
from detic.fixtures import example_channel
from detic.region import format_inequality

ch = example_channel()
ch

# %%
p = rank_profile(ch)
p

# %% [markdown]
# All seven bounds before pruning, then the minimal description.

# %%
for ineq in rank_inequalities(ch, p):
    print(format_inequality(ineq))

# %%
reg = capacity_region(ch)
print(reg)
print([str(v) for v in reg.vertices()])

# %% [markdown]
# The reduced-form bounds describe the same set.

# %%
capacity_region(ch, form="reduced").equals(reg)

# %%
reg.lattice_points()
