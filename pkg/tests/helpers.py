"""Small constructors shared by the tests."""

from snailhom import modules as ml
from snailhom.arrcat import ArrMor, ArrObj
from snailhom.chaincx import ChainMor, Complex
from snailhom.matrix import ExactMatrix
from snailhom.modules import FpModule, ModMap
from snailhom.ring import ZZ


def mat(rows, ring=ZZ, cols=None):
    return ExactMatrix.from_rows(ring, rows, cols)


def free(n, ring=ZZ):
    return FpModule.free(ring, n)


def cyclic(d, ring=ZZ):
    return FpModule.cyclic(ring, d)


def mp(src, tgt, rows):
    return ModMap(src, tgt, mat(rows, src.ring, tgt.ngens))


def scalar_map(M, c):
    return ml.identity(M).scale(c)


def quot(d=2, ring=ZZ):
    """The quotient ``Z -> Z/d``."""
    return mp(free(1, ring), cyclic(d, ring), [[1]])


def arr(x):
    return ArrObj(x)


def times2_complex(ring=ZZ):
    Z = free(1, ring)
    return Complex(ring, 0, 1, {0: Z, 1: Z}, {1: scalar_map(Z, 2)})


def degree0(M):
    return Complex(M.ring, 0, 0, {0: M})


def names(mods):
    return [ml.describe(M) for M in mods]
