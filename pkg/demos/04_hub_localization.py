"""The eigenvector of a hub eigenvalue is localized: an order-one weight on
the hub, order-1/z weights on its neighbors, order-1/n everywhere else.

For constant background degree c the squares have closed forms
(k_n/2 - c)/(k_n - c) on the hub and the same over (k_n - c) extra on each
neighbor.  We compare those against one sampled network per hub degree.
"""
import numpy as np

from netspectra import (DegreeModel, attach_hub, hub_eigenvector_profile,
                        hub_vector_stats, sample_network)

c = 100.0
model = DegreeModel.poisson(c)
n = 2000

print("   kn    vn^2 pred   vn^2 sampled   neighbor pred   neighbor sampled")
for kn in (240.0, 300.0, 400.0, 600.0):
    pred = hub_eigenvector_profile(model, kn)
    seq = attach_hub(model.sample_degrees(n, seed=int(kn)), kn)
    net = sample_network(seq, seed=int(kn) + 1)
    vn_sq, nb, bulk = hub_vector_stats(net, hub_index=net.n - 1)
    print(f" {kn:6.0f}   {pred.vn_sq:9.4f}   {vn_sq:12.4f}   "
          f"{pred.neighbor_vi_sq_mean:13.3e}   {nb:16.3e}")

print("\nbulk element scale for the last network: "
      f"{bulk:.2e} (order 1/n = {1.0 / n:.2e})")

# approaching the transition from above, the hub weight drains away
print("\n   kn    vn^2 (approaching the critical degree 2c = 200)")
for kn in (201.0, 205.0, 220.0, 260.0):
    print(f" {kn:6.0f}   {hub_eigenvector_profile(model, kn).vn_sq:.5f}")
