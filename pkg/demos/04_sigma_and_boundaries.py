"""When is the comparison map sigma: F(A) -> N(F(g)) a quasi-isomorphism?

Take A = Z in degree 0, B = (Z --x2--> Z) in degrees 1, 0 and C = Z in
degree 1.  The boundary H_1(C) = Z -> H_0(A) = Z is multiplication by 2.
On the homotopy kernel side Ker(h^P_0) is the image of H_0(A) -> H_0(B),
which is Z/2, so K(sigma)_0 is the quotient Z -> Z/2 and not an isomorphism.
The long sequences still agree degree by degree.
"""

from snailhom import FpModule, ZZ
from snailhom import modules as ml
from snailhom.chaincx import ChainMor, Complex
from snailhom.classical import Extension, compare_with_snail, comparison_sigma, snake, snake_rows_of_extension

Z = FpModule.free(ZZ, 1)
A = Complex(ZZ, 0, 0, {0: Z})
B = Complex(ZZ, 0, 1, {0: Z, 1: Z}, {1: ml.identity(Z).scale(2)})
C = Complex(ZZ, 1, 1, {1: Z})
e = Extension(ChainMor(A, B, {0: ml.identity(Z)}), ChainMor(B, C, {1: ml.identity(Z)}))

sigma, _ = comparison_sigma(e)
for n in sigma.window:
    K, Cs = sigma.K(n), sigma.C(n)
    bd = snake(snake_rows_of_extension(e, n + 1)).boundary
    print(f"degree {n}: K(sigma) {ml.describe(K.source)} -> {ml.describe(K.target)} iso={ml.is_iso(K)}, "
          f"C(sigma) iso={ml.is_iso(Cs)}, boundary from degree {n + 1} zero={ml.is_zero_map(bd)}")

print("long sequences isomorphic:", compare_with_snail(e).ok)
