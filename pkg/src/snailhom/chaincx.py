"""Bounded chain complexes, homology, chain nullhomotopies and the functor F into Seq."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Mapping, Optional

from . import modules as ml
from .homotopy import PreconditionError
from .modules import ExactLinError, FpModule, ModMap
from .ring import Ring
from .seqfam import LongSeq, SeqCategory, SeqFamily, SeqMor, SeqNull, unroll_long_sequence


class NoWitness(ExactLinError):
    code = "NO_WITNESS"


class Complex:
    """Modules ``C_n`` for ``lo <= n <= hi`` with differentials ``d_n: C_n -> C_{n-1}``."""

    def __init__(self, ring: Ring, lo: int, hi: int, modules: Mapping[int, FpModule],
                 diffs: Optional[Mapping[int, ModMap]] = None, check: bool = True):
        self.ring = ring
        if hi < lo:
            lo, hi = 0, -1
        self.lo, self.hi = lo, hi
        z = FpModule.zero(ring)
        self._mods: Dict[int, FpModule] = {n: modules.get(n, z) for n in range(lo, hi + 1)}
        diffs = diffs or {}
        self._d: Dict[int, ModMap] = {}
        for n in range(lo, hi + 2):
            d = diffs.get(n)
            if d is None:
                d = ml.zero_map(self.C(n), self.C(n - 1))
            if d.source != self.C(n) or d.target != self.C(n - 1):
                raise ml.ShapeMismatch(f"d_{n} does not run C_{n} -> C_{n - 1}")
            self._d[n] = d
        for n, d in diffs.items():
            if n not in self._d and not d.is_zero():
                raise ml.ShapeMismatch(f"d_{n} lies outside the support")
        if check:
            for n in range(lo + 1, hi + 1):
                if not ml.is_zero_map(ml.compose(self.d(n + 1), self.d(n))):
                    raise PreconditionError(f"d_{n + 1} . d_{n} != 0")
        self._ker: Dict[int, tuple] = {}
        self._cok: Dict[int, tuple] = {}
        self._hash = None

    def C(self, n) -> FpModule:
        m = self._mods.get(n)
        return m if m is not None else FpModule.zero(self.ring)

    def d(self, n) -> ModMap:
        d = self._d.get(n)
        return d if d is not None else ml.zero_map(self.C(n), self.C(n - 1))

    def ker(self, n):
        """Kernel of ``d_n``."""
        r = self._ker.get(n)
        if r is None:
            r = ml.kernel(self.d(n))
            self._ker[n] = r
        return r

    def cok(self, n):
        """Cokernel of ``d_n`` (a quotient of ``C_{n-1}``)."""
        r = self._cok.get(n)
        if r is None:
            r = ml.cokernel(self.d(n))
            self._cok[n] = r
        return r

    def degrees(self, other: Optional["Complex"] = None):
        lo, hi = self.lo, self.hi
        if other is not None and other.lo <= other.hi:
            lo, hi = (other.lo, other.hi) if lo > hi else (min(lo, other.lo), max(hi, other.hi))
        if lo > hi:
            return range(0, 0)
        return range(lo - 1, hi + 2)

    def shift(self) -> "Complex":
        """``C[-1]``: ``(C[-1])_n = C_{n-1}`` with differential ``-d_{n-1}``."""
        mods = {n + 1: self.C(n) for n in range(self.lo, self.hi + 1)}
        diffs = {n + 1: -self.d(n) for n in range(self.lo, self.hi + 2)}
        return Complex(self.ring, self.lo + 1, self.hi + 1, mods, diffs)

    def _key(self):
        keep = [n for n in range(self.lo, self.hi + 1) if self.C(n).ngens]
        span = range(min(keep), max(keep) + 1) if keep else range(0, 0)
        return (self.ring, tuple((n, self.C(n), self.d(n)) for n in span))

    def __eq__(self, other):
        return isinstance(other, Complex) and self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return f"Complex({self.ring}, [{self.lo}, {self.hi}])"


def zero_complex(ring: Ring) -> Complex:
    return Complex(ring, 0, -1, {})


class ChainMor:
    def __init__(self, source: Complex, target: Complex, maps: Mapping[int, ModMap], check: bool = True):
        self.source, self.target = source, target
        self.maps: Dict[int, ModMap] = {}
        for n in source.degrees(target):
            g = maps.get(n)
            if g is None:
                g = ml.zero_map(source.C(n), target.C(n))
            if g.source != source.C(n) or g.target != target.C(n):
                raise ml.ShapeMismatch(f"g_{n} has the wrong ends")
            self.maps[n] = g
        if check:
            for n in source.degrees(target):
                if not ml.maps_equal(ml.compose(self.g(n), target.d(n)), ml.compose(source.d(n), self.g(n - 1))):
                    raise PreconditionError(f"g_{n} . d'_{n} != d_{n} . g_{n - 1}")

    def g(self, n) -> ModMap:
        m = self.maps.get(n)
        return m if m is not None else ml.zero_map(self.source.C(n), self.target.C(n))

    def then(self, other: "ChainMor") -> "ChainMor":
        return ChainMor(self.source, other.target,
                        {n: ml.compose(self.g(n), other.g(n)) for n in self.source.degrees(other.target)},
                        check=False)

    def is_zero(self) -> bool:
        return all(ml.is_zero_map(self.g(n)) for n in self.source.degrees(self.target))


def chain_identity(C: Complex) -> ChainMor:
    return ChainMor(C, C, {n: ml.identity(C.C(n)) for n in C.degrees()}, check=False)


def chain_zero(B: Complex, C: Complex) -> ChainMor:
    return ChainMor(B, C, {}, check=False)


def chain_maps_equal(f: ChainMor, g: ChainMor) -> bool:
    return all(ml.maps_equal(f.g(n), g.g(n)) for n in f.source.degrees(f.target))


class ChainNull:
    """``phi_n: B_n -> C_{n+1}`` with ``phi_n . d_{n+1} + d_n . phi_{n-1} == g_n``."""

    def __init__(self, mor: ChainMor, phis: Mapping[int, ModMap], check: bool = True):
        self.mor = mor
        B, C = mor.source, mor.target
        self.phis: Dict[int, ModMap] = {}
        for n in B.degrees(C):
            p = phis.get(n)
            if p is None:
                p = ml.zero_map(B.C(n), C.C(n + 1))
            if p.source != B.C(n) or p.target != C.C(n + 1):
                raise ml.ShapeMismatch(f"phi_{n} has the wrong ends")
            self.phis[n] = p
        if check:
            bad = self.failed_degree()
            if bad is not None:
                raise PreconditionError(f"phi fails its equation in degree {bad}")

    def phi(self, n) -> ModMap:
        p = self.phis.get(n)
        return p if p is not None else ml.zero_map(self.mor.source.C(n), self.mor.target.C(n + 1))

    def failed_degree(self):
        B, C = self.mor.source, self.mor.target
        for n in B.degrees(C):
            lhs = ml.compose(self.phi(n), C.d(n + 1)) + ml.compose(B.d(n), self.phi(n - 1))
            if not ml.maps_equal(lhs, self.mor.g(n)):
                return n
        return None


def chain_whisker(f: Optional[ChainMor], phi: ChainNull, h: Optional[ChainMor]) -> ChainNull:
    """``f o phi o h = {f_n . phi_n . h_{n+1}}``."""
    g = phi.mor
    f = f if f is not None else chain_identity(g.source)
    h = h if h is not None else chain_identity(g.target)
    mor = f.then(g).then(h)
    return ChainNull(mor, {n: ml.compose_all(f.g(n), phi.phi(n), h.g(n + 1)) for n in mor.source.degrees(mor.target)},
                     check=False)


def chain_nulls_equal(a: ChainNull, b: ChainNull) -> bool:
    return chain_maps_equal(a.mor, b.mor) and all(
        ml.maps_equal(a.phi(n), b.phi(n)) for n in a.mor.source.degrees(a.mor.target))


def chain_null_from_diagonals(B: Complex, C: Complex, phis: Mapping[int, ModMap]) -> ChainNull:
    """The null-homotopic morphism ``phi . d + d . phi`` together with ``phi``."""
    g = {}
    for n in B.degrees(C):
        z = ml.zero_map(B.C(n), C.C(n + 1))
        p, pm = phis.get(n, z), phis.get(n - 1, ml.zero_map(B.C(n - 1), C.C(n)))
        g[n] = ml.compose(p, C.d(n + 1)) + ml.compose(B.d(n), pm)
    return ChainNull(ChainMor(B, C, g), phis)


# ---------------------------------------------------------------------------
# homology

def homology(C: Complex, n: int) -> FpModule:
    """``Ker(d_n) / Im(d_{n+1})``."""
    _, k = C.ker(n)
    dbar = ml.lift_through_mono(C.d(n + 1), k)
    return ml.cokernel(dbar)[0]


def is_proper_complex(C: Complex) -> bool:
    ok = all(ml.is_proper_arrow(C.d(n)) for n in C.degrees())
    if ok:
        FC = functor_F(C)
        assert all(ml.is_proper_arrow(FC.h(n)) for n in FC.window())
    return ok


# ---------------------------------------------------------------------------
# the functor F

@dataclass
class FData:
    """Auxiliary arrows of ``F(C)``."""

    q: Dict[int, ModMap]      # q_n: C_n -> Cok(d_{n+1})
    k: Dict[int, ModMap]      # k_n: Ker(d_n) -> C_n


def _F_cache(C: Complex):
    cache = C.__dict__.get("_F")
    return cache


def h_F(C: Complex, n: int) -> ModMap:
    """``h^F_n: Cok(d_{n+1}) -> Ker(d_{n-1})``, computed two ways and compared."""
    _, q = C.cok(n + 1)
    _, k = C.ker(n - 1)
    kd = ml.lift_through_mono(C.d(n), k)
    h1 = ml.colift_through_epi(kd, q)
    qd = ml.colift_through_epi(C.d(n), q)
    h2 = ml.lift_through_mono(qd, k)
    if not ml.maps_equal(h1, h2):
        raise AssertionError(f"the two descriptions of h^F_{n} disagree")
    return h1


def functor_F(C: Complex) -> SeqFamily:
    cached = C.__dict__.get("_F")
    if cached is not None:
        return cached
    lo, hi = (C.lo, C.hi + 1) if C.lo <= C.hi else (0, -1)
    maps = {n: h_F(C, n) for n in range(lo, hi + 1)}
    bare = SeqFamily(C.ring, lo, hi, maps)
    conns = {}
    for n in range(lo - 1, hi + 1):
        # j_n: Cok(h^F_{n+1}) -> Cok(d_{n+1}) induced by k_n . q_n, then lifted into Ker(h^F_n)
        _, kn = C.ker(n)
        _, qn = C.cok(n + 1)
        j = ml.colift_through_epi(ml.compose(kn, qn), bare.cok(n + 1)[1])
        conns[n] = ml.lift_through_mono(j, bare.ker(n)[1])
    F = SeqFamily(C.ring, lo, hi, maps, conns)
    C.__dict__["_F"] = F
    return F


def functor_F_on_morphism(g: ChainMor) -> SeqMor:
    B, C = g.source, g.target
    FB, FC = functor_F(B), functor_F(C)
    bars, unders = {}, {}
    for n in FB.window(FC):
        bars[n] = ml.colift_through_epi(ml.compose(g.g(n), C.cok(n + 1)[1]), B.cok(n + 1)[1])
        unders[n] = ml.lift_through_mono(ml.compose(B.ker(n - 1)[1], g.g(n - 1)), C.ker(n - 1)[1])
    return SeqMor(FB, FC, bars, unders)


def functor_F_on_nullhomotopy(phi: ChainNull) -> SeqNull:
    if phi.failed_degree() is not None:
        raise PreconditionError("phi fails its defining equation")
    g = phi.mor
    B, C = g.source, g.target
    Fg = functor_F_on_morphism(g)
    lams = {}
    for n in Fg.window:
        lams[n] = ml.compose_all(B.ker(n - 1)[1], phi.phi(n - 1), C.cok(n + 1)[1])
    return SeqNull(Fg, lams)


# ---------------------------------------------------------------------------
# the reduced interchange counterexample

@dataclass
class InterchangeWitness:
    degree: int
    lhs: ModMap   # (phi o z)_n = phi_n . 0
    rhs: ModMap   # (g o iota)_n = g_n . id
    seq_interchange_holds: bool


def reduced_interchange_counterexample(g: ChainMor, phi: ChainNull) -> InterchangeWitness:
    """Pair ``phi`` with the identity nullhomotopy on ``C -> 0 -> C[-1]`` and find the failing degree."""
    if phi.failed_degree() is not None:
        raise PreconditionError("phi is not a nullhomotopy on g")
    C = g.target
    if g.is_zero():
        raise NoWitness("g is zero in every degree")
    Cs = C.shift()
    z = chain_zero(C, Cs)
    iota = ChainNull(z, {n: ml.identity(C.C(n)) for n in C.degrees(Cs)})
    lhs = chain_whisker(None, phi, z)
    rhs = chain_whisker(g, iota, None)
    bad = None
    for n in g.source.degrees(Cs):
        if not ml.maps_equal(lhs.phi(n), rhs.phi(n)):
            bad = n
            break
    if bad is None:  # pragma: no cover - g nonzero forces a violation
        raise NoWitness("no failing degree found")
    S = SeqCategory(C.ring)
    Fphi = functor_F_on_nullhomotopy(phi)
    Fiota = functor_F_on_nullhomotopy(iota)
    Fz = Fiota.mor
    Fg = Fphi.mor
    seq_ok = S.nulls_equal(S.whisker(None, Fphi, Fz), S.whisker(Fg, Fiota, None))
    return InterchangeWitness(bad, lhs.phi(bad), rhs.phi(bad), seq_ok)


def long_homology_sequence(g: ChainMor) -> LongSeq:
    """The long sequence of ``F(g)``: ``... H_n(B) -> H_n(C) -> Cok(h^P_n) -> H_{n-1}(B) ...``."""
    if not (is_proper_complex(g.source) and is_proper_complex(g.target)):
        raise PreconditionError("complexes must be proper")
    Fg = functor_F_on_morphism(g)
    ls = unroll_long_sequence(Fg)
    return ls


def check_F_whisker(f: Optional[ChainMor], phi: ChainNull, h: Optional[ChainMor]) -> bool:
    """``F(f o phi o h) == F(f) o F(phi) o F(h)`` as nullhomotopies in Seq."""
    S = SeqCategory(phi.mor.source.ring)
    lhs = functor_F_on_nullhomotopy(chain_whisker(f, phi, h))
    Ff = functor_F_on_morphism(f) if f is not None else None
    Fh = functor_F_on_morphism(h) if h is not None else None
    rhs = S.whisker(Ff, functor_F_on_nullhomotopy(phi), Fh)
    return S.nulls_equal(lhs, rhs)
