# %% [markdown]
# # Max-min SINR versus weighted throughput
#
# `maxmin_sinr` maximizes the worst link's SINR over the power box. On the
# same network the throughput optimum usually silences weak links, while the
# max-min solution keeps every link on at one common SINR.

# %%
import numpy as np

from mapel import maxmin_sinr, paper_fixture, sinr, solve, weighted_throughput

net = paper_fixture("g1")
p_fair, worst = maxmin_sinr(net)
res = solve(net)

# %%
for name, p in (("max-min", p_fair), ("throughput", res.p_star)):
    g = sinr(net, p)
    print(f"{name:>10}: sinr {np.round(g, 3)}  min {g.min():.4f}  "
          f"weighted throughput {weighted_throughput(net, p):.4f} bps/Hz")

# %% [markdown]
# At the max-min point every SINR is equal (up to tolerance); the common
# value in dB:

# %%
print(f"{10 * np.log10(worst):.2f} dB")
