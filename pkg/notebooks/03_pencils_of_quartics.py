# %% [markdown]
# Pencils of plane quartics: apolar ideals of two general quartics and of
# their four cubic generators.

# %%
from forge.apolarity import (HILBERT_J, HILBERT_L, DualForm, apolar_ideal, dual_ring,
                             pencil_experiment, pencil_series)

D = dual_ring()
Xd, Yd, Zd = D.gens()
r = apolar_ideal([DualForm(Xd ** 4)])
print("Ann(Xd^4):", [str(g) for g in r.ideal.gens], "Hilbert", r.hilbert)

# %% one sample
p = pencil_experiment(seed=1)
print("Hilbert J", p.hilbert_J, "expected", HILBERT_J)
print("Hilbert L", p.hilbert_L, "expected", HILBERT_L)
print("Betti J", p.betti_J)
print("Betti L", p.betti_L)
for k, v in p.checks.items():
    print(f"  {k}: {v}")

# %% twenty seeds; degenerate samples are listed, not resampled away
results, good, bad = pencil_series(range(1, 21))
print(f"{len(good)} generic, degenerate seeds: {bad}")
