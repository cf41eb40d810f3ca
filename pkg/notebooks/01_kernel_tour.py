# %% [markdown]
# A short tour of the kernel: rings, Groebner bases, ideal operations and
# resolutions.  Run with ``python notebooks/01_kernel_tour.py``.

# %%
from forge import QQ, Ideal, Ring
from forge.complexes import be_exactness, free_resolution, koszul_complex
from forge.ideal_ops import codim, colon, hilbert_function, intersect
from forge.parser import parse_poly

R = Ring(["x", "y", "z"], QQ)
x, y, z = R.gens()
print((x + y) * (x - y))

# %% twisted cubic: three quadrics, codim 2, Hilbert polynomial 3d + 1
I = Ideal(R, [parse_poly(s, R) for s in ("x*z - y^2", "y - x^2", "z - x*y")])
print("GB:", [str(g) for g in I.gb()])

W = Ring(["w", "x", "y", "z"], QQ)
cubic = Ideal(W, [parse_poly(s, W) for s in ("w*y - x^2", "w*z - x*y", "x*z - y^2")])
print("codim:", codim(cubic))
print("Hilbert:", hilbert_function(cubic, 6))

# %% colon and intersection
A = Ideal(R, [x * y, x * z])
print("(xy, xz) : x =", [str(g) for g in colon(A, Ideal(R, [x])).gens])
print("(x, y) ∩ (z) =", [str(g) for g in intersect(Ideal(R, [x, y]), Ideal(R, [z])).gens])

# %% minimal free resolution and its Betti table
C, betti = free_resolution(cubic)
print(betti)
print(be_exactness(C).summary())

# %% the Koszul complex on a regular sequence is exact
print(be_exactness(koszul_complex([x, y, z])).summary())
