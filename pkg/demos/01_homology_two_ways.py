"""Homology of a small complex, computed on chains and read off from F(C).

The complex is 0 -> Z --x2--> Z -> 0 in degrees 1 and 0.
"""

from snailhom import FpModule, ZZ
from snailhom import modules as ml
from snailhom.chaincx import Complex, functor_F, homology

Z = FpModule.free(ZZ, 1)
C = Complex(ZZ, 0, 1, {0: Z, 1: Z}, {1: ml.identity(Z).scale(2)})

# chain level: Ker(d_n) / Im(d_n+1)
for n in range(-1, 3):
    print(f"H_{n} = {ml.describe(homology(C, n))}")

# F(C) replaces each degree by h_n: Cok(d_n+1) -> Ker(d_n-1)
F = functor_F(C)
print()
for n in F.window():
    h = F.h(n)
    print(f"h_{n}: {ml.describe(h.source)} -> {ml.describe(h.target)}   "
          f"Ker = {ml.describe(F.ker(n)[0])}, Cok(h_{n + 1}) = {ml.describe(F.cok(n + 1)[0])}")

# the connector i_0 identifies the two descriptions of H_0
print("\ni_0 is an isomorphism:", ml.is_iso(F.conn(0)))
