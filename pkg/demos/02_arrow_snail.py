"""The snail sequence of a square of modules, built generically and by hand.

An object of the arrow category is a module map x: X -> X0.  A morphism is a
commuting square.  Both examples below have a six-term sequence with one
nonzero pair of modules.
"""

from snailhom import FpModule, ZZ
from snailhom import modules as ml
from snailhom.arrcat import ArrCategory, ArrMor, ArrObj, explicit_snail_arr, snail_matches_generic
from snailhom.homotopy import build_snail, verify_snail_exactness

A = ArrCategory(ZZ)
Z = FpModule.free(ZZ, 1)
Z2 = FpModule.cyclic(ZZ, 2)
zero = FpModule.zero(ZZ)


def show(name, g):
    res = build_snail(A, g)
    ex = explicit_snail_arr(g)
    generic = [ml.describe(o.bottom) for o in res.objects]
    explicit = [ml.describe(o) for o in ex.objects]
    print(name)
    print("  generic :", " -> ".join(generic))
    print("  explicit:", " -> ".join(explicit))
    print("  same up to iso:", snail_matches_generic(g, res).ok)
    rep = verify_snail_exactness(A, res)
    for e in rep.entries:
        print(f"  {e.point}: {'yes' if e.exact else 'no'}")


# (Z, id, Z) -> (Z/2, 0, 0) with top component the quotient
X = ArrObj(ml.identity(Z))
Y = ArrObj(ml.zero_map(Z2, zero))
quot = ml.ModMap(Z, Z2, ml.identity(Z).matrix)
show("quotient square", ArrMor(X, Y, quot, ml.zero_map(Z, zero)))

# the identity on (Z, x2, Z)
W = ArrObj(ml.identity(Z).scale(2))
show("identity on times two", A.identity(W))
