# %% [markdown]
# The explicit length-3 resolution over the 16-variable ring A and its
# one-parameter deformation over B = A[t].  Every step below is an exact
# computation over Z/32003.

# %%
import time

from forge.complexes import (be_exactness, free_resolution, image_equals_kernel,
                             lift_multiplication, matrix_rank, tor_trivial)
from forge.corpus import build_F, build_Ft, build_Jt, build_linkage, verify_dG3, verify_P1_resolution

F, Ft = build_F(), build_Ft()
for name, C in (("F", F), ("F(t)", Ft)):
    print(name, "ranks", C.ranks, "twists", C.betti().twists())
    print("  d1*d2 = 0:", (C[1] * C[2]).is_zero(), " d2*d3 = 0:", (C[2] * C[3]).is_zero())
    print("  matrix ranks:", [matrix_rank(d) for d in C.maps])

# %% exactness by the Buchsbaum-Eisenbud criterion
t0 = time.perf_counter()
print(be_exactness(Ft).summary())
print(f"({time.perf_counter() - t0:.2f}s)")

# %% the ideal of entries of d1(t) resolved from scratch
_, betti = free_resolution(build_Jt())
print(betti)

# %% dual complex: im d1(t)^T = ker d2(t)^T
print(image_equals_kernel(Ft[1].T, Ft[2].T))

# %% linkage chain and the resolution of A/P1
for deformed in (False, True):
    ch = build_linkage(deformed, strict=False)
    print("deformed" if deformed else "plain", "linkage ok:", ch.passed)
print(verify_P1_resolution())

# %% products on F vanish modulo the irrelevant ideal
lift = lift_multiplication(F)
print("Leibniz identities:", lift.check(F), " Tor algebra trivial:", tor_trivial(F, lift))

# %% d^G_3 for the four cubics with z234 = 0
print(verify_dG3())
