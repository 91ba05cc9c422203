# ---
# jupyter:
#   jupytext:
#     formats: py:percent
# ---

# %% [markdown]
# # Two unicast sessions over a shared relay
#
# Each source has a direct edge to its own sink and one edge into a
# shared bottleneck `m -> n` that feeds both sinks.

# %%
from detic.field import Field
from detic.fixtures import relay_network
from detic.netcode import baseline_regions, containment_check, min_cuts, nc_region, rlnc_transfer

net = relay_network()
cuts = min_cuts(net)
cuts

# %%
real = rlnc_transfer(net, Field(65537), seed=0)
real.attempts, real.channel

# %%
reg = nc_region(real)
print(reg, [str(v) for v in reg.vertices()])

# %% [markdown]
# Routing and alignment baselines, and their time-sharing hulls.

# %%
for name, r in baseline_regions(cuts).items():
    print(name, r)

# %%
rep = containment_check(real)
print(rep.hull123, rep.hull45)
print(rep.summary())
