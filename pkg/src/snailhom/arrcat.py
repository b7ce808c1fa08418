"""The arrow category ``Arr(A)`` of modules with nullhomotopies given by diagonals."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from . import modules as ml
from .homotopy import (
    CokernelTriple, HomotopyCategory, KernelTriple, PreconditionError, SnailResult, build_snail,
)
from .modules import FpModule, ModMap
from .ring import Ring


@dataclass(frozen=True)
class ArrObj:
    """An arrow ``x: top -> bottom``."""

    arrow: ModMap

    @property
    def top(self) -> FpModule:
        return self.arrow.source

    @property
    def bottom(self) -> FpModule:
        return self.arrow.target


@dataclass(frozen=True, eq=False)
class ArrMor:
    """Commuting square ``top . y == x . bottom``."""

    source: ArrObj
    target: ArrObj
    top: ModMap
    bottom: ModMap

    def __post_init__(self):
        s, t = self.source, self.target
        if (self.top.source, self.top.target, self.bottom.source, self.bottom.target) != (
                s.top, t.top, s.bottom, t.bottom):
            raise ml.ShapeMismatch("square components do not match the objects")
        if not ml.maps_equal(ml.compose(self.top, t.arrow), ml.compose(s.arrow, self.bottom)):
            raise PreconditionError("square does not commute")

    def __eq__(self, other):
        return (isinstance(other, ArrMor) and self.source == other.source and self.target == other.target
                and self.top == other.top and self.bottom == other.bottom)

    def __hash__(self):
        return hash((self.source, self.target, self.top, self.bottom))


@dataclass(frozen=True)
class ArrNull:
    """Diagonal ``diag: source.bottom -> target.top`` with ``x . diag == g`` and ``diag . y == g0``."""

    mor: ArrMor
    diag: ModMap

    def __post_init__(self):
        g = self.mor
        if self.diag.source != g.source.bottom or self.diag.target != g.target.top:
            raise ml.ShapeMismatch("diagonal has the wrong ends")
        if not ml.maps_equal(ml.compose(g.source.arrow, self.diag), g.top):
            raise PreconditionError("x . diag != top component")
        if not ml.maps_equal(ml.compose(self.diag, g.target.arrow), g.bottom):
            raise PreconditionError("diag . y != bottom component")


def arr_obj(x: ModMap) -> ArrObj:
    return ArrObj(x)


class ArrCategory(HomotopyCategory):
    def __init__(self, ring: Ring):
        self.ring = ring
        z = FpModule.zero(ring)
        self._zero = ArrObj(ml.identity(z))

    # category
    def dom(self, f):
        return f.source

    def cod(self, f):
        return f.target

    def identity(self, X):
        return ArrMor(X, X, ml.identity(X.top), ml.identity(X.bottom))

    def compose(self, f, g):
        if f.target != g.source:
            raise ml.ShapeMismatch("composable arrows required")
        return ArrMor(f.source, g.target, ml.compose(f.top, g.top), ml.compose(f.bottom, g.bottom))

    def maps_equal(self, f, g):
        return (f.source == g.source and f.target == g.target
                and ml.maps_equal(f.top, g.top) and ml.maps_equal(f.bottom, g.bottom))

    def zero_object(self):
        return self._zero

    def zero_map(self, X, Y):
        return ArrMor(X, Y, ml.zero_map(X.top, Y.top), ml.zero_map(X.bottom, Y.bottom))

    # nullhomotopies
    def null_arrow(self, phi):
        return phi.mor

    def whisker(self, f, phi, h):
        g = phi.mor
        f = f if f is not None else self.identity(g.source)
        h = h if h is not None else self.identity(g.target)
        mor = self.compose_all(f, g, h)
        return ArrNull(mor, ml.compose_all(f.bottom, phi.diag, h.top))

    def nulls_equal(self, a, b):
        return self.maps_equal(a.mor, b.mor) and ml.maps_equal(a.diag, b.diag)

    def star_terminal(self, X):
        return ArrNull(self.terminal(X), ml.zero_map(X.bottom, self._zero.top))

    def star_initial(self, Y):
        return ArrNull(self.initial(Y), ml.zero_map(self._zero.bottom, Y.top))

    # homotopy kernels
    def theta_kernel(self, g):
        X, Y = g.source, g.target
        P, p_x0, p_y = ml.pullback(g.bottom, Y.arrow)
        xg = _into_pullback(P, p_x0, p_y, X.arrow, g.top)
        N = ArrObj(xg)
        n = ArrMor(N, X, ml.identity(X.top), p_x0)
        nu = ArrNull(self.compose(n, g), p_y)
        return KernelTriple(g, N, n, nu)

    def factor_through_kernel(self, f, phi, K):
        N = K.obj
        P = N.bottom
        p_x0, p_y = K.n.bottom, K.nu.diag
        bottom = _into_pullback(P, p_x0, p_y, f.bottom, phi.diag)
        return ArrMor(f.source, N, f.top, bottom)

    def strong_factor(self, f, phi, K):
        # the top of N(g) is X, so the diagonal is reused unchanged
        return ArrNull(f, phi.diag)

    def theta_cokernel_of_terminal(self, Y):
        Cy, c_y = ml.cokernel(Y.arrow)
        z = self._zero.top
        C = ArrObj(ml.zero_map(Cy, z))
        c = self.zero_map(self._zero, C)
        gamma = ArrNull(self.zero_map(Y, C), c_y)
        return CokernelTriple(self.terminal(Y), C, c, gamma)

    def factor_through_cokernel(self, psi, C):
        Z = psi.mor.target
        c_y = C.gamma.diag
        top = ml.colift_through_epi(psi.diag, c_y)
        return ArrMor(C.obj, Z, top, ml.zero_map(C.obj.bottom, Z.bottom))

    # criteria
    def is_discrete(self, Y):
        return ml.is_zero_module(Y.top)

    def in_S(self, f):
        return ml.is_regular_epi(f.top) and ml.is_regular_epi(f.bottom)

    def is_mono(self, f):
        return ml.is_mono(f.top) and ml.is_mono(f.bottom)

    def categorical_kernel(self, f):
        Kt, kt = ml.kernel(f.top)
        Kb, kb = ml.kernel(f.bottom)
        x = ml.lift_through_mono(ml.compose(kt, f.source.arrow), kb)
        K = ArrObj(x)
        return K, ArrMor(K, f.source, kt, kb)

    def lift_through_mono(self, t, k):
        top = ml.lift_through_mono(t.top, k.top)
        bottom = ml.lift_through_mono(t.bottom, k.bottom)
        return ArrMor(t.source, k.source, top, bottom)


def _into_pullback(P, p1, p2, a, b) -> ModMap:
    """The map into the pullback ``P`` with components ``a`` and ``b``."""
    pair = ml.pair_into(p1, p2)
    return ml.lift_through_mono(ml.pair_into(a, b), pair)


# ---------------------------------------------------------------------------

def theta_kernel_arr(g: ArrMor) -> KernelTriple:
    return ArrCategory(g.top.ring).theta_kernel(g)


def theta_cokernel_terminal_arr(Y: ArrObj) -> CokernelTriple:
    return ArrCategory(Y.arrow.ring).theta_cokernel_of_terminal(Y)


@dataclass
class ExplicitSnail:
    """``Ker<x,g> -> Ker x -> Ker y -> Cok<x,g> -> Cok x -> Cok y`` with its maps."""

    objects: List[FpModule]
    maps: List[ModMap]
    kernel_embeddings: List[ModMap]
    cokernel_projections: List[ModMap]
    xg: ModMap
    P_to_X0: ModMap
    P_to_Y: ModMap


def explicit_snail_arr(g: ArrMor) -> ExplicitSnail:
    X, Y = g.source, g.target
    P, p_x0, p_y = ml.pullback(g.bottom, Y.arrow)
    xg = _into_pullback(P, p_x0, p_y, X.arrow, g.top)
    KN, kN = ml.kernel(xg)
    KX, kX = ml.kernel(X.arrow)
    KY, kY = ml.kernel(Y.arrow)
    CN, cN = ml.cokernel(xg)
    CX, cX = ml.cokernel(X.arrow)
    CY, cY = ml.cokernel(Y.arrow)
    m1 = ml.lift_through_mono(kN, kX)
    m2 = ml.lift_through_mono(ml.compose(kX, g.top), kY)
    into_P = _into_pullback(P, p_x0, p_y, ml.zero_map(KY, X.bottom), kY)
    d0 = ml.compose(into_P, cN)
    m4 = ml.colift_through_epi(ml.compose(p_x0, cX), cN)
    m5 = ml.colift_through_epi(ml.compose(g.bottom, cY), cX)
    return ExplicitSnail([KN, KX, KY, CN, CX, CY], [m1, m2, d0, m4, m5],
                         [kN, kX, kY], [cN, cX, cY], xg, p_x0, p_y)


@dataclass
class SnailComparison:
    ok: bool
    isomorphisms: List[Optional[ModMap]]
    failures: List[str]


def comparison_isos(res: SnailResult) -> List[ModMap]:
    """Bottom-level isomorphisms from the generic objects to the explicit ones."""
    isos = []
    for K in (res.K0N, res.K0X, res.K0Y):
        # nu of N(0_Z) lands in Ker z
        Z = K.g.target
        _, kz = ml.kernel(Z.arrow)
        isos.append(ml.lift_through_mono(K.nu.diag, kz))
    for P in (res.pi0N, res.pi0X, res.pi0Y):
        isos.append(P.kernel.nu.diag)
    return isos


def snail_matches_generic(g: ArrMor, res: Optional[SnailResult] = None) -> SnailComparison:
    """The generic snail of ``g`` agrees with the explicit one, including the connecting map."""
    B = ArrCategory(g.top.ring)
    if res is None:
        res = build_snail(B, g)
    ex = explicit_snail_arr(g)
    fails = []
    for obj in res.objects:
        if not ml.is_zero_module(obj.top):
            fails.append("generic object is not discrete")
    isos = comparison_isos(res)
    for i, (phi, target) in enumerate(zip(isos, ex.objects)):
        if phi.target != target:
            fails.append(f"object {i}: iso lands in the wrong presentation")
        elif not ml.is_iso(phi):
            fails.append(f"object {i}: comparison map is not an isomorphism")
    if not fails:
        for i, (gen, exp) in enumerate(zip(res.arrows, ex.maps)):
            lhs = ml.compose(gen.bottom, isos[i + 1])
            rhs = ml.compose(isos[i], exp)
            if not ml.maps_equal(lhs, rhs):
                fails.append(f"square {i} does not commute")
    return SnailComparison(not fails, isos, fails)
