"""Seeded random instances built by solving the linear constraints they must satisfy.

Each instance draws from its own numpy ``SeedSequence([seed, stream, index])``,
so streams are reproducible and independent of evaluation order.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import modules as ml
from .arrcat import ArrMor, ArrNull, ArrObj
from .chaincx import ChainMor, ChainNull, Complex, chain_identity, chain_null_from_diagonals, chain_zero
from .classical import Extension
from .homotopy import KernelTriple
from .matrix import ExactMatrix, hermite, right_kernel, solve_left
from .modules import FpModule, ModMap
from .ring import RATIONALS, ZZ, Ring
from .seqfam import SeqFamily, SeqMor, SeqNull


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    ring: Ring = ZZ
    max_generators: int = 3
    max_relations: int = 2
    entry_bound: int = 3
    support_width: int = 3
    count: int = 20
    degenerate: float = 0.15

    def __post_init__(self):
        for name in ("max_generators", "max_relations", "entry_bound", "support_width", "count"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if not 0 <= self.degenerate <= 1:
            raise ValueError("degenerate must lie in [0, 1]")

    def with_(self, **kw) -> "GenConfig":
        return replace(self, **kw)


def rng_for(cfg: GenConfig, stream: str, index: int) -> np.random.Generator:
    tag = zlib.crc32(stream.encode())
    return np.random.default_rng(np.random.SeedSequence([cfg.seed & 0xFFFFFFFFFFFFFFFF, tag, index]))


def _int(rng, lo, hi) -> int:
    return int(rng.integers(lo, hi + 1))


def _coin(rng, p) -> bool:
    return p > 0 and float(rng.random()) < p


def _scalar(rng, cfg: GenConfig):
    b = cfg.entry_bound
    x = _int(rng, -b, b)
    if cfg.ring.tag == RATIONALS and b and _coin(rng, 0.2):
        return Fraction(x, _int(rng, 1, 2))
    return cfg.ring(x)


def random_matrix(rng, cfg: GenConfig, r: int, c: int) -> ExactMatrix:
    return ExactMatrix.from_rows(cfg.ring, [[_scalar(rng, cfg) for _ in range(c)] for _ in range(r)], c)


def _unimodular(rng, ring, n) -> ExactMatrix:
    rows = [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
    for _ in range(2 * n):
        i, j = _int(rng, 0, n - 1), _int(rng, 0, n - 1)
        if i != j:
            c = ring(_int(rng, -1, 1))
            rows[i] = [ring.reduce(a + c * b) for a, b in zip(rows[i], rows[j])]
    return ExactMatrix.from_rows(ring, rows, n)


def random_module(rng, cfg: GenConfig, free_only: bool = False) -> FpModule:
    ring = cfg.ring
    n = _int(rng, 0, cfg.max_generators)
    if _coin(rng, cfg.degenerate / 2):
        n = 0
    if n == 0:
        return FpModule.zero(ring)
    t = 0 if free_only else _int(rng, 0, min(n, cfg.max_relations))
    rows = []
    if ring.is_field:
        for _ in range(t):
            rows.append([_scalar(rng, cfg) for _ in range(n)])
    else:
        choices = [2, 3, 4, 6] if cfg.entry_bound >= 2 else [2]
        for i in range(t):
            row = [0] * n
            row[i] = choices[_int(rng, 0, len(choices) - 1)]
            rows.append(row)
    R = ExactMatrix.from_rows(ring, rows, n)
    if n > 1 and not free_only:
        R = R @ _unimodular(rng, ring, n)
    return FpModule(ring, n, R)


# ---------------------------------------------------------------------------
# linear systems in matrix unknowns

class LinearSystem:
    """Homogeneous equations ``sum A_k X_k B_k == 0`` in matrix unknowns ``X_k``."""

    def __init__(self, ring: Ring):
        self.ring = ring
        self.shapes: List[Tuple[int, int]] = []
        self.offsets: List[int] = []
        self.public: List[bool] = []
        self.size = 0
        self.eqs: List[Dict[int, object]] = []
        self.consts: List[object] = []

    def unknown(self, r: int, c: int, public: bool = True) -> int:
        self.shapes.append((r, c))
        self.offsets.append(self.size)
        self.public.append(public)
        self.size += r * c
        return len(self.shapes) - 1

    def hom(self, M: FpModule, N: FpModule) -> int:
        """Unknown map ``M -> N`` with its well-definedness congruence."""
        k = self.unknown(M.ngens, N.ngens)
        if M.relations.rows and N.ngens:
            self.congruence([(M.relations, k, None)], N)
        return k

    def _var(self, k, i, j):
        return self.offsets[k] + i * self.shapes[k][1] + j

    def equation(self, terms, rows: int, cols: int, const: Optional[ExactMatrix] = None):
        """Add ``sum A X B == const`` entry-wise (``None`` for ``A`` or ``B`` means identity)."""
        ring = self.ring
        block = [dict() for _ in range(rows * cols)]
        for A, k, B in terms:
            kr, kc = self.shapes[k]
            Ad = A.data if A is not None else None
            Bd = B.data if B is not None else None
            for r in range(rows):
                ai = range(kr) if Ad is not None else (r,)
                for i in ai:
                    a = Ad[r][i] if Ad is not None else ring.one
                    if not a:
                        continue
                    for c in range(cols):
                        bj = range(kc) if Bd is not None else (c,)
                        for j in bj:
                            b = Bd[j][c] if Bd is not None else ring.one
                            if not b:
                                continue
                            v = self._var(k, i, j)
                            e = block[r * cols + c]
                            e[v] = ring.reduce(e.get(v, ring.zero) + a * b)
        for idx, e in enumerate(block):
            c = const.data[idx // cols][idx % cols] if const is not None else ring.zero
            if any(e.values()) or c:
                self.eqs.append(e)
                self.consts.append(c)

    def congruence(self, terms, N: FpModule, const: Optional[ExactMatrix] = None):
        """``sum A X B == const`` in the module ``N`` (rows taken modulo its relations)."""
        rows = _term_rows(self, terms)
        cols = N.ngens
        if rows == 0 or cols == 0:
            return
        extra = []
        if N.relations.rows:
            w = self.unknown(rows, N.relations.rows, public=False)
            extra = [(None, w, -N.relations)]
        self.equation(list(terms) + extra, rows, cols, const)

    def _unpack(self, vec) -> List[Optional[ExactMatrix]]:
        out = []
        for k, (r, c) in enumerate(self.shapes):
            o = self.offsets[k]
            out.append(ExactMatrix.from_rows(self.ring, [vec[o + i * c:o + (i + 1) * c] for i in range(r)], c)
                       if self.public[k] else None)
        return out

    def _coefficients(self) -> ExactMatrix:
        ring = self.ring
        return ExactMatrix.from_rows(ring, [[e.get(v, ring.zero) for v in range(self.size)] for e in self.eqs],
                                     self.size)

    def solve(self) -> Optional[List[Optional[ExactMatrix]]]:
        """One solution of the affine system, or ``None`` when it is inconsistent."""
        ring = self.ring
        if not self.eqs:
            return self._unpack([ring.zero] * self.size)
        A = self._coefficients()
        c = ExactMatrix.from_rows(ring, [self.consts], len(self.consts))
        if self.size == 0:
            return self._unpack([]) if c.is_zero() else None
        x = solve_left(A.T, c)
        return None if x is None else self._unpack(list(x.data[0]))

    def homogeneous(self) -> List[List[Optional[ExactMatrix]]]:
        """Spanning solutions of the homogeneous system, unpacked into matrices."""
        return [self._unpack(v) for v in self.lattice()]

    def lattice(self) -> List[List]:
        """Spanning vectors of the solution set restricted to the public unknowns."""
        ring = self.ring
        if self.size == 0:
            return []
        if not self.eqs:
            basis = ExactMatrix.identity(ring, self.size)
        else:
            basis = right_kernel(self._coefficients())
        keep = [v for k in range(len(self.shapes)) if self.public[k]
                for v in range(self.offsets[k], self.offsets[k] + self.shapes[k][0] * self.shapes[k][1])]
        proj = [[row[v] for v in keep] for row in basis.data]
        proj = [r for r in proj if any(r)]
        if not proj:
            return []
        H = hermite(ExactMatrix.from_rows(ring, proj, len(keep))).rows
        out = []
        for row in H.data:
            full = [ring.zero] * self.size
            for v, x in zip(keep, row):
                full[v] = x
            out.append(full)
        return out

    def sample(self, rng, cfg: GenConfig, zero_bias: float = 0.0) -> List[Optional[ExactMatrix]]:
        ring = self.ring
        vec = [ring.zero] * self.size
        if not _coin(rng, zero_bias):
            b = max(cfg.entry_bound, 0)
            for basis in self.lattice():
                if _coin(rng, 0.35):
                    continue
                c = ring(_int(rng, -b, b))
                if c:
                    vec = [ring.reduce(x + c * y) for x, y in zip(vec, basis)]
        return self._unpack(vec)


def _term_rows(sys: LinearSystem, terms) -> int:
    A, k, _ = terms[0]
    return A.rows if A is not None else sys.shapes[k][0]


def random_hom(rng, cfg: GenConfig, M: FpModule, N: FpModule) -> ModMap:
    sys = LinearSystem(cfg.ring)
    k = sys.hom(M, N)
    X = sys.sample(rng, cfg)[k]
    return ModMap(M, N, X)


def _section(q: ModMap) -> ExactMatrix:
    """Raw preimages in ``q.source`` of the generators of ``q.target``."""
    C = q.target
    sec = solve_left(q.matrix.vstack(C.relations), ExactMatrix.identity(q.ring, C.ngens))
    return sec.take_cols(range(q.source.ngens))


# ---------------------------------------------------------------------------
# complexes, chain morphisms and extensions

def gen_complex(cfg: GenConfig, index: int = 0, free_only: bool = False, stream: str = "complex") -> Complex:
    rng = rng_for(cfg, stream, index)
    ring = cfg.ring
    w = cfg.support_width
    if w == 0:
        return Complex(ring, 0, -1, {})
    lo = _int(rng, -1, 0)
    hi = lo + w - 1
    mods = {n: random_module(rng, cfg, free_only) for n in range(lo, hi + 1)}
    diffs: Dict[int, ModMap] = {}
    for n in range(lo + 1, hi + 1):
        below = diffs.get(n - 1)
        if below is None:
            K, k = mods[n - 1], ml.identity(mods[n - 1])
        else:
            K, k = ml.kernel(below)
        if _coin(rng, cfg.degenerate / 2):
            u = ml.zero_map(mods[n], K)
        else:
            u = random_hom(rng, cfg, mods[n], K)
        diffs[n] = ml.compose(u, k)
    return Complex(ring, lo, hi, mods, diffs)


def _chain_system(sys: LinearSystem, B: Complex, C: Complex):
    degs = list(B.degrees(C))
    ks = {n: sys.hom(B.C(n), C.C(n)) for n in degs}
    for n in degs:
        if n - 1 in ks:
            # g_n . d'_n - d_n . g_{n-1} == 0 in C_{n-1}
            sys.congruence([(None, ks[n], C.d(n).matrix), (-B.d(n).matrix, ks[n - 1], None)], C.C(n - 1))
    return ks


def gen_chain_morphism(cfg: GenConfig, B: Complex, C: Complex, index: int = 0,
                       kind: Optional[str] = None) -> ChainMor:
    """Random chain morphism; ``kind`` may force ``"identity"`` (needs ``B == C``) or ``"zero"``."""
    rng = rng_for(cfg, "chain_morphism", index)
    if kind == "identity":
        return chain_identity(B)
    if kind == "zero":
        return chain_zero(B, C)
    if _coin(rng, cfg.degenerate / 2):
        if B == C and _coin(rng, 0.5):
            return chain_identity(B)
        return chain_zero(B, C)
    sys = LinearSystem(cfg.ring)
    ks = _chain_system(sys, B, C)
    sol = sys.sample(rng, cfg)
    return ChainMor(B, C, {n: ModMap(B.C(n), C.C(n), sol[k]) for n, k in ks.items()})


def gen_chain_nullhomotopy(cfg: GenConfig, B: Complex, C: Complex, index: int = 0) -> ChainNull:
    """A random ``phi`` and the null-homotopic morphism it defines."""
    rng = rng_for(cfg, "chain_null", index)
    phis = {n: random_hom(rng, cfg, B.C(n), C.C(n + 1)) for n in B.degrees(C)}
    return chain_null_from_diagonals(B, C, phis)


def _generated_submodule(M: FpModule, rows: List[List], ring) -> Tuple[FpModule, ModMap]:
    gens = ExactMatrix.from_rows(ring, rows, M.ngens) if rows else ExactMatrix.zeros(ring, 0, M.ngens)
    src = FpModule.free(ring, gens.rows)
    I, _, m = ml.image(ModMap(src, M, gens, check=False))
    return I, m


def gen_extension(cfg: GenConfig, index: int = 0, kind: Optional[str] = None) -> Extension:
    """``kind`` is ``"sub"`` (random subcomplex), ``"cone"``, ``"split"``, ``"scalar"`` (times 2) or ``"zero"``."""
    rng = rng_for(cfg, "extension", index)
    ring = cfg.ring
    if kind is None:
        r = float(rng.random())
        if r < cfg.degenerate / 2:
            kind = "zero"
        elif r < 0.2:
            kind = "split"
        elif r < 0.3 and not ring.is_field:
            kind = "scalar"
        elif r < 0.6:
            kind = "cone"
        else:
            kind = "sub"
    if kind == "scalar":
        A = gen_complex(cfg, index, free_only=True, stream="extension.A")
        f = ChainMor(A, A, {n: ml.identity(A.C(n)).scale(2) for n in A.degrees()})
        return _extension_from_mono(f)
    if kind == "cone":
        A = gen_complex(cfg, index, stream="extension.A")
        if _coin(rng, 0.4):
            h = chain_identity(A)
        else:
            X = gen_complex(cfg, index, stream="extension.X")
            h = gen_chain_morphism(cfg, X, A, index)
        return cone_extension(h)
    if kind in ("split", "zero"):
        A = gen_complex(cfg, index, stream="extension.A") if kind == "split" else Complex(ring, 0, -1, {})
        C = gen_complex(cfg, index, stream="extension.C")
        return split_extension(A, C)
    B = gen_complex(cfg, index, stream="extension.B")
    subs: Dict[int, Tuple[FpModule, ModMap]] = {}
    for n in range(B.hi, B.lo - 1, -1):
        M = B.C(n)
        rows = [[_scalar(rng, cfg) for _ in range(M.ngens)] for _ in range(_int(rng, 0, 2))] if M.ngens else []
        if n + 1 in subs:
            _, m_up = subs[n + 1]
            rows += [list(r) for r in ml.compose(m_up, B.d(n + 1)).matrix.data]
            up = B.C(n + 1).ngens
            if up and M.ngens and _coin(rng, 0.6):
                # boundaries of elements outside the subcomplex give nonzero connecting maps
                v = random_matrix(rng, cfg, 1, up)
                rows += [list(r) for r in (v @ B.d(n + 1).matrix).data]
        subs[n] = _generated_submodule(M, rows, ring)
    mods = {n: subs[n][0] for n in subs}
    diffs = {n: ml.lift_through_mono(ml.compose(subs[n][1], B.d(n)), subs[n - 1][1])
             for n in subs if n - 1 in subs}
    A = Complex(ring, B.lo, B.hi, mods, diffs)
    f = ChainMor(A, B, {n: subs[n][1] for n in subs})
    return _extension_from_mono(f)


def _extension_from_mono(f: ChainMor) -> Extension:
    B = f.target
    ring = B.ring
    cok = {n: ml.cokernel(f.g(n)) for n in range(B.lo, B.hi + 1)}
    mods = {n: cok[n][0] for n in cok}
    diffs = {n: ml.colift_through_epi(ml.compose(B.d(n), cok[n - 1][1]), cok[n][1]) for n in cok if n - 1 in cok}
    C = Complex(ring, B.lo, B.hi, mods, diffs)
    g = ChainMor(B, C, {n: cok[n][1] for n in cok})
    return Extension(f, g)


def split_extension(A: Complex, C: Complex) -> Extension:
    ring = A.ring
    lo, hi = min(A.lo, C.lo), max(A.hi, C.hi)
    if A.lo > A.hi:
        lo, hi = C.lo, C.hi
    if C.lo > C.hi:
        lo, hi = A.lo, A.hi
    mods, inj, proj, diffs = {}, {}, {}, {}
    for n in range(lo, hi + 1):
        S, i1, _ = ml.sum_injections(A.C(n), C.C(n))
        _, _, p2 = ml.sum_projections(A.C(n), C.C(n))
        mods[n], inj[n], proj[n] = S, i1, p2
    for n in range(lo + 1, hi + 1):
        d = A.d(n).matrix.block_diag(C.d(n).matrix)
        diffs[n] = ModMap(mods[n], mods[n - 1], d)
    B = Complex(ring, lo, hi, mods, diffs)
    return Extension(ChainMor(A, B, inj), ChainMor(B, C, proj))


def cone_extension(h: ChainMor) -> Extension:
    """``0 -> A -> B -> X[-1] -> 0`` with ``B_n = A_n + X_{n-1}`` twisted by ``h: X -> A``.

    The connecting map of this extension is induced by ``h`` in homology, so
    random ``h`` give nonzero connecting maps.
    """
    X, A = h.source, h.target
    ring = A.ring
    spans = [(c.lo, c.hi) for c in (A, Complex(ring, X.lo + 1, X.hi + 1, {})) if c.lo <= c.hi]
    if X.lo > X.hi:
        spans = [(A.lo, A.hi)] if A.lo <= A.hi else []
    if not spans:
        return split_extension(A, Complex(ring, 0, -1, {}))
    lo, hi = min(a for a, _ in spans), max(b for _, b in spans)
    mods, inj, diffs = {}, {}, {}
    for n in range(lo, hi + 1):
        S, i1, _ = ml.sum_injections(A.C(n), X.C(n - 1))
        mods[n], inj[n] = S, i1
    for n in range(lo + 1, hi + 1):
        top = A.d(n).matrix.hstack(ExactMatrix.zeros(ring, A.C(n).ngens, X.C(n - 2).ngens))
        bot = h.g(n - 1).matrix.hstack(-X.d(n - 1).matrix)
        diffs[n] = ModMap(mods[n], mods[n - 1], top.vstack(bot))
    B = Complex(ring, lo, hi, mods, diffs)
    A2 = Complex(ring, lo, hi, {n: A.C(n) for n in range(A.lo, A.hi + 1)},
                 {n: A.d(n) for n in range(max(A.lo, lo + 1), A.hi + 1)})
    return _extension_from_mono(ChainMor(A2, B, inj))


def times_two_extension() -> Extension:
    """``0 -> Z -2-> Z -> Z/2 -> 0`` concentrated in degree 0."""
    Z = FpModule.free(ZZ, 1)
    A = Complex(ZZ, 0, 0, {0: Z})
    f = ChainMor(A, A, {0: ml.identity(Z).scale(2)})
    return _extension_from_mono(f)


# ---------------------------------------------------------------------------
# arrow category

def random_arr_obj(rng, cfg: GenConfig) -> ArrObj:
    X, X0 = random_module(rng, cfg), random_module(rng, cfg)
    return ArrObj(random_hom(rng, cfg, X, X0))


def _arr_mor_system(sys: LinearSystem, X: ArrObj, Y: ArrObj):
    t = sys.hom(X.top, Y.top)
    b = sys.hom(X.bottom, Y.bottom)
    sys.congruence([(None, t, Y.arrow.matrix), (-X.arrow.matrix, b, None)], Y.bottom)
    return t, b


def random_arr_mor(rng, cfg: GenConfig, X: ArrObj, Y: ArrObj) -> ArrMor:
    sys = LinearSystem(cfg.ring)
    t, b = _arr_mor_system(sys, X, Y)
    sol = sys.sample(rng, cfg)
    return ArrMor(X, Y, ModMap(X.top, Y.top, sol[t]), ModMap(X.bottom, Y.bottom, sol[b]))


def gen_arr_morphism(cfg: GenConfig, index: int = 0) -> ArrMor:
    rng = rng_for(cfg, "arr_morphism", index)
    X = random_arr_obj(rng, cfg)
    r = float(rng.random())
    if r < cfg.degenerate / 3:
        return ArrMor(X, X, ml.identity(X.top), ml.identity(X.bottom))
    Y = random_arr_obj(rng, cfg)
    if r < 2 * cfg.degenerate / 3:
        return ArrMor(X, Y, ml.zero_map(X.top, Y.top), ml.zero_map(X.bottom, Y.bottom))
    return random_arr_mor(rng, cfg, X, Y)


def random_arr_null(rng, cfg: GenConfig, X: ArrObj, Y: ArrObj) -> ArrNull:
    """A random diagonal and the null-homotopic morphism it defines."""
    diag = random_hom(rng, cfg, X.bottom, Y.top)
    mor = ArrMor(X, Y, ml.compose(X.arrow, diag), ml.compose(diag, Y.arrow))
    return ArrNull(mor, diag)


def gen_arr_cone(cfg: GenConfig, K: KernelTriple, index: int = 0):
    """Random ``(f, phi)`` with ``f: A -> X`` and ``phi`` a nullhomotopy on ``f . g``."""
    rng = rng_for(cfg, "arr_cone", index)
    g = K.g
    X, Y = g.source, g.target
    A = K.obj if _coin(rng, 0.3) else random_arr_obj(rng, cfg)
    sys = LinearSystem(cfg.ring)
    t, b = _arr_mor_system(sys, A, X)
    p = sys.hom(A.bottom, Y.top)
    sys.congruence([(A.arrow.matrix, p, None), (None, t, -g.top.matrix)], Y.top)
    sys.congruence([(None, p, Y.arrow.matrix), (None, b, -g.bottom.matrix)], Y.bottom)
    sol = sys.sample(rng, cfg)
    f = ArrMor(A, X, ModMap(A.top, X.top, sol[t]), ModMap(A.bottom, X.bottom, sol[b]))
    fg = ArrMor(A, Y, ml.compose(f.top, g.top), ml.compose(f.bottom, g.bottom))
    return f, ArrNull(fg, ModMap(A.bottom, Y.top, sol[p]))


def gen_arr_strong_cone(cfg: GenConfig, K: KernelTriple, index: int = 0):
    """Random ``f: A -> N(g)`` and ``phi`` on ``f . n_g`` with ``phi o g == f o nu_g``."""
    rng = rng_for(cfg, "arr_strong_cone", index)
    g, N = K.g, K.obj
    X = g.source
    A = random_arr_obj(rng, cfg)
    sys = LinearSystem(cfg.ring)
    t, b = _arr_mor_system(sys, A, N)
    p = sys.hom(A.bottom, X.top)
    p_x0, p_y = K.n.bottom.matrix, K.nu.diag.matrix
    sys.congruence([(A.arrow.matrix, p, None), (None, t, -ExactMatrix.identity(cfg.ring, X.top.ngens))], X.top)
    sys.congruence([(None, p, X.arrow.matrix), (None, b, -p_x0)], X.bottom)
    sys.congruence([(None, p, g.top.matrix), (None, b, -p_y)], g.target.top)
    sol = sys.sample(rng, cfg)
    f = ArrMor(A, N, ModMap(A.top, N.top, sol[t]), ModMap(A.bottom, N.bottom, sol[b]))
    fn = ArrMor(A, X, f.top, ml.compose(f.bottom, K.n.bottom))
    return f, ArrNull(fn, ModMap(A.bottom, X.top, sol[p]))


# ---------------------------------------------------------------------------
# sequentiable families

def random_seq_family(rng, cfg: GenConfig, lo: Optional[int] = None, width: Optional[int] = None) -> SeqFamily:
    ring = cfg.ring
    w = cfg.support_width if width is None else width
    if w == 0:
        return SeqFamily(ring, 0, -1, {})
    lo = _int(rng, -1, 0) if lo is None else lo
    hi = lo + w - 1
    maps = {}
    for n in range(lo, hi + 1):
        maps[n] = random_hom(rng, cfg, random_module(rng, cfg), random_module(rng, cfg))
    bare = SeqFamily(ring, lo, hi, maps)
    conns = {}
    for n in range(lo, hi):
        if _coin(rng, cfg.degenerate):
            continue
        conns[n] = random_hom(rng, cfg, bare.cok(n + 1)[0], bare.ker(n)[0])
    return SeqFamily(ring, lo, hi, maps, conns)


def _seq_mor_system(sys: LinearSystem, X: SeqFamily, Y: SeqFamily, cod_targets=None):
    """Unknown level maps ``X -> Y`` with squares and connector equations."""
    win = list(X.window(Y))
    bars = {n: sys.hom(X.dom(n), Y.dom(n)) for n in win}
    unders = {n: sys.hom(X.cod(n), Y.cod(n)) for n in win}
    for n in win:
        sys.congruence([(None, bars[n], Y.h(n).matrix), (-X.h(n).matrix, unders[n], None)], Y.cod(n))
    for n in win:
        if n + 1 not in unders:
            continue
        Cs, q = X.cok(n + 1)
        if not Cs.ngens or not Y.dom(n).ngens:
            continue
        S = _section(q)
        tail = ml.compose_all(Y.cok(n + 1)[1], Y.conn(n), Y.ker(n)[1]).matrix
        head = ml.compose(X.conn(n), X.ker(n)[1]).matrix
        # C(f)_{n+1} . i'_n . k'_n == i_n . k_n . bar_n in dom'_n
        sys.congruence([(S, unders[n + 1], tail), (-head, bars[n], None)], Y.dom(n))
    return bars, unders


def _seq_mor_from(sol, X, Y, bars, unders, check=True) -> SeqMor:
    return SeqMor(X, Y, {n: ModMap(X.dom(n), Y.dom(n), sol[k]) for n, k in bars.items()},
                  {n: ModMap(X.cod(n), Y.cod(n), sol[k]) for n, k in unders.items()}, check=check)


def random_seq_mor(rng, cfg: GenConfig, X: SeqFamily, Y: SeqFamily) -> SeqMor:
    sys = LinearSystem(cfg.ring)
    bars, unders = _seq_mor_system(sys, X, Y)
    return _seq_mor_from(sys.sample(rng, cfg), X, Y, bars, unders)


def gen_seq_morphism(cfg: GenConfig, index: int = 0, isoseq: bool = False) -> SeqMor:
    """A random morphism of families; with ``isoseq`` it is ``F`` of a random chain morphism."""
    if isoseq:
        from .chaincx import functor_F_on_morphism
        B = gen_complex(cfg, index, stream="seq.B")
        rng = rng_for(cfg, "seq.kind", index)
        C = B if _coin(rng, cfg.degenerate / 2) else gen_complex(cfg, index, stream="seq.C")
        return functor_F_on_morphism(gen_chain_morphism(cfg, B, C, index))
    rng = rng_for(cfg, "seq_morphism", index)
    X = random_seq_family(rng, cfg)
    r = float(rng.random())
    if r < cfg.degenerate / 3:
        from .seqfam import SeqCategory
        return SeqCategory(cfg.ring).identity(X)
    Y = random_seq_family(rng, cfg, lo=X.lo if X.lo <= X.hi else None)
    if r < 2 * cfg.degenerate / 3:
        return SeqMor(X, Y, {}, {})
    return random_seq_mor(rng, cfg, X, Y)


def random_seq_null(rng, cfg: GenConfig, X: SeqFamily, Y: SeqFamily) -> SeqNull:
    """A random family of diagonals whose induced morphism is automatically compatible."""
    lams = {n: random_hom(rng, cfg, X.cod(n), Y.dom(n)) for n in X.window(Y)}
    bars = {n: ml.compose(X.h(n), lam) for n, lam in lams.items()}
    unders = {n: ml.compose(lam, Y.h(n)) for n, lam in lams.items()}
    return SeqNull(SeqMor(X, Y, bars, unders), lams)


def gen_seq_cone(cfg: GenConfig, K: KernelTriple, index: int = 0):
    """Random ``(f, phi)`` with ``f: A -> X`` and ``phi`` a nullhomotopy on ``f . g`` in Seq."""
    rng = rng_for(cfg, "seq_cone", index)
    g = K.g
    X, Y = g.source, g.target
    A = K.obj if _coin(rng, 0.3) else random_seq_family(rng, cfg, lo=X.lo if X.lo <= X.hi else None)
    sys = LinearSystem(cfg.ring)
    bars, unders = _seq_mor_system(sys, A, X)
    lams = {}
    for n in A.window(X):
        lams[n] = sys.hom(A.cod(n), Y.dom(n))
        sys.congruence([(A.h(n).matrix, lams[n], None), (None, bars[n], -g.bar(n).matrix)], Y.dom(n))
        sys.congruence([(None, lams[n], Y.h(n).matrix), (None, unders[n], -g.under(n).matrix)], Y.cod(n))
    sol = sys.sample(rng, cfg)
    f = _seq_mor_from(sol, A, X, bars, unders)
    from .seqfam import SeqCategory
    fg = SeqCategory(cfg.ring).compose(f, g)
    return f, SeqNull(fg, {n: ModMap(A.cod(n), Y.dom(n), sol[k]) for n, k in lams.items()})


def gen_seq_strong_cone(cfg: GenConfig, K: KernelTriple, index: int = 0):
    """Random ``f: A -> N(g)`` with ``phi`` on ``f . n_g`` such that ``phi o g == f o nu_g``."""
    rng = rng_for(cfg, "seq_strong_cone", index)
    g, N = K.g, K.obj
    X = g.source
    A = random_seq_family(rng, cfg, lo=X.lo if X.lo <= X.hi else None)
    sys = LinearSystem(cfg.ring)
    bars, unders = _seq_mor_system(sys, A, N)
    lams = {}
    for n in A.window(N):
        lams[n] = sys.hom(A.cod(n), X.dom(n))
        sys.congruence([(A.h(n).matrix, lams[n], None),
                        (None, bars[n], -ExactMatrix.identity(cfg.ring, X.dom(n).ngens))], X.dom(n))
        sys.congruence([(None, lams[n], X.h(n).matrix), (None, unders[n], -K.n.under(n).matrix)], X.cod(n))
        sys.congruence([(None, lams[n], g.bar(n).matrix), (None, unders[n], -K.nu.lam(n).matrix)],
                       g.target.dom(n))
    sol = sys.sample(rng, cfg)
    f = _seq_mor_from(sol, A, N, bars, unders)
    from .seqfam import SeqCategory
    fn = SeqCategory(cfg.ring).compose(f, K.n)
    return f, SeqNull(fn, {n: ModMap(A.cod(n), X.dom(n), sol[k]) for n, k in lams.items()})


def gen_cone(cfg: GenConfig, K: KernelTriple, index: int = 0, strong: bool = False):
    """Dispatch on the instance category of ``K``."""
    if isinstance(K.g, ArrMor):
        return (gen_arr_strong_cone if strong else gen_arr_cone)(cfg, K, index)
    return (gen_seq_strong_cone if strong else gen_seq_cone)(cfg, K, index)
