"""Chain homotopies do not satisfy reduced interchange, their images under F do.

C is the contractible complex Z --id--> Z, g = id and phi the contraction.
"""

from snailhom import FpModule, ZZ
from snailhom import modules as ml
from snailhom.chaincx import ChainNull, Complex, chain_identity, reduced_interchange_counterexample

Z = FpModule.free(ZZ, 1)
C = Complex(ZZ, 0, 1, {0: Z, 1: Z}, {1: ml.identity(Z)})
phi = ChainNull(chain_identity(C), {0: ml.identity(Z)})

w = reduced_interchange_counterexample(chain_identity(C), phi)
print(f"degree {w.degree}: phi_n . 0 = {w.lhs.matrix.to_lists()}, g_n . id = {w.rhs.matrix.to_lists()}")
print("interchange holds after F:", w.seq_interchange_holds)
