"""Textbook snake lemma and long homology sequence, used as an independent oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

from . import modules as ml
from .chaincx import ChainMor, Complex, functor_F, functor_F_on_morphism, long_homology_sequence
from .homotopy import PreconditionError, checked_factor
from .matrix import ExactMatrix, solve_left
from .modules import ModMap
from .seqfam import LongSeq, SeqCategory, SeqNull


@dataclass
class Extension:
    """``0 -> A -f-> B -g-> C -> 0`` degree-wise."""

    f: ChainMor
    g: ChainMor

    def __post_init__(self):
        if self.f.target != self.g.source:
            raise ml.ShapeMismatch("f and g are not composable")
        bad = self.failed_degree()
        if bad is not None:
            raise PreconditionError(f"not a short exact sequence in degree {bad}")

    @property
    def A(self) -> Complex:
        return self.f.source

    @property
    def B(self) -> Complex:
        return self.f.target

    @property
    def C(self) -> Complex:
        return self.g.target

    def failed_degree(self):
        for n in self.B.degrees(self.C):
            fn, gn = self.f.g(n), self.g.g(n)
            if not (ml.is_mono(fn) and ml.is_regular_epi(gn) and ml.is_exact_at(fn, gn)):
                return n
        return None


@dataclass
class SnakeInput:
    """Rows ``A -a1-> B -b1-> C -> 0`` and ``0 -> A' -a2-> B' -b2-> C'`` with verticals."""

    a1: ModMap
    b1: ModMap
    a2: ModMap
    b2: ModMap
    alpha: ModMap
    beta: ModMap
    gamma: ModMap

    def __post_init__(self):
        if not (ml.is_exact_at(self.a1, self.b1) and ml.is_regular_epi(self.b1)):
            raise PreconditionError("top row is not exact")
        if not (ml.is_exact_at(self.a2, self.b2) and ml.is_mono(self.a2)):
            raise PreconditionError("bottom row is not exact")
        if not ml.maps_equal(ml.compose(self.a1, self.beta), ml.compose(self.alpha, self.a2)):
            raise PreconditionError("left square does not commute")
        if not ml.maps_equal(ml.compose(self.b1, self.gamma), ml.compose(self.beta, self.b2)):
            raise PreconditionError("right square does not commute")


@dataclass
class SnakeResult:
    objects: list
    maps: List[ModMap]

    @property
    def boundary(self) -> ModMap:
        return self.maps[2]

    def exact_points(self):
        return [ml.is_exact_at(a, b) for a, b in zip(self.maps, self.maps[1:])]


def _preimages(target_rows: ExactMatrix, through: ModMap) -> ExactMatrix:
    """Raw coordinates ``X`` with ``X . through == target_rows`` modulo the target relations."""
    M = through.target
    X = solve_left(through.matrix.vstack(M.relations), target_rows)
    if X is None:
        raise PreconditionError("element has no preimage")
    return X.take_cols(range(through.source.ngens))


def snake(s: SnakeInput, perturb: bool = True) -> SnakeResult:
    """``Ker a -> Ker b -> Ker c -d-> Cok a -> Cok b -> Cok c`` via the zig-zag."""
    Ka, ka = ml.kernel(s.alpha)
    Kb, kb = ml.kernel(s.beta)
    Kc, kc = ml.kernel(s.gamma)
    Ca, ca = ml.cokernel(s.alpha)
    Cb, cb = ml.cokernel(s.beta)
    Cc, cc = ml.cokernel(s.gamma)
    m1 = ml.lift_through_mono(ml.compose(ka, s.a1), kb)
    m2 = ml.lift_through_mono(ml.compose(kb, s.b1), kc)
    m4 = ml.colift_through_epi(ml.compose(s.a2, cb), ca)
    m5 = ml.colift_through_epi(ml.compose(s.b2, cc), cb)

    def zigzag(pre):
        pushed = pre @ s.beta.matrix
        Y = _preimages(pushed, s.a2)
        return ModMap(Kc, Ca, Y @ ca.matrix)

    pre = _preimages(kc.matrix, s.b1)
    d = zigzag(pre)
    if perturb:
        # a different choice of preimages differs by an element of Ker(b1)
        _, kb1 = ml.kernel(s.b1)
        if kb1.source.ngens and Kc.ngens:
            W = ExactMatrix.from_rows(s.b1.ring, [[((i + 2 * j) % 3) - 1 for j in range(kb1.source.ngens)]
                                                  for i in range(Kc.ngens)])
            d2 = zigzag(pre + W @ kb1.matrix)
            if not ml.maps_equal(d, d2):
                raise AssertionError("connecting map depends on the choice of preimages")
    return SnakeResult([Ka, Kb, Kc, Ca, Cb, Cc], [m1, m2, d, m4, m5])


def snake_rows_of_extension(e: Extension, n: int) -> SnakeInput:
    """The factored rows in degree ``n``: cokernels of ``d_{n+1}`` over kernels of ``d_{n-1}``."""
    Ff, Fg = functor_F_on_morphism(e.f), functor_F_on_morphism(e.g)
    FA, FB, FC = Ff.source, Ff.target, Fg.target
    return SnakeInput(Ff.bar(n), Fg.bar(n), Ff.under(n), Fg.under(n), FA.h(n), FB.h(n), FC.h(n))


def classical_les(e: Extension) -> LongSeq:
    """``... H_n(C) -d-> H_{n-1}(A) -> H_{n-1}(B) -> H_{n-1}(C) ...`` from the degree-wise snakes.

    Homology is represented by ``Ker(h^F_n)``; the connecting map is the snake
    boundary followed by the connector ``i^{FA}_{n-1}``.
    """
    FA = functor_F(e.A)
    win = list(functor_F_on_morphism(e.g).window)
    snakes = {n: snake(snake_rows_of_extension(e, n)) for n in win + [win[0] - 1]} if win else {}
    objs, maps, labels = [], [], []
    for n in reversed(win):
        sn, below = snakes[n], snakes[n - 1]
        objs += [sn.objects[2], below.objects[0], below.objects[1]]
        labels += [f"H_{n}(C)", f"H_{n - 1}(A)", f"H_{n - 1}(B)"]
        maps += [ml.compose(sn.boundary, FA.conn(n - 1)), below.maps[0], below.maps[1]]
    if win:
        objs.append(snakes[win[0] - 1].objects[2])
        labels.append(f"H_{win[0] - 1}(C)")
    return LongSeq(objs, maps, labels)


# ---------------------------------------------------------------------------

def comparison_sigma(e: Extension):
    """``sigma: F(A) -> N(F(g))``: the factorization of ``F(f)`` with the zero nullhomotopy."""
    S = SeqCategory(e.A.ring)
    Ff, Fg = functor_F_on_morphism(e.f), functor_F_on_morphism(e.g)
    K = S.kernel_of(Fg)
    zero = SeqNull(S.compose(Ff, Fg), {})
    return checked_factor(S, Ff, zero, K, "sigma"), K


def sigma_quasi_iso(e: Extension) -> bool:
    sigma, _ = comparison_sigma(e)
    return all(ml.is_iso(sigma.K(n)) and ml.is_iso(sigma.C(n)) for n in sigma.window)


@dataclass
class CompareReport:
    ok: bool
    snail: LongSeq
    classical: LongSeq
    isomorphisms: List[Optional[ModMap]] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)


def compare_with_snail(e: Extension) -> CompareReport:
    """Degree-wise isomorphism between the long sequence of ``F(g)`` and the classical one.

    On ``H_n(C)`` the comparison is ``(-1)^n``; on ``Cok(h^P_n)`` and
    ``Cok(h^{FB}_n)`` it is ``(-1)^{n-1}`` times ``C(sigma)_n^{-1} . i^{FA}_{n-1}``
    and ``i^{FB}_{n-1}``. The signs absorb the sign of the connecting map.
    """
    fails = []
    Fg = functor_F_on_morphism(e.g)
    for n in Fg.window:
        if not ml.is_regular_epi(Fg.bar(n)):
            fails.append(f"F(g) is not a regular epi on domains in degree {n}")
    snail = long_homology_sequence(e.g)
    classical = classical_les(e)
    FA, FB = functor_F(e.A), functor_F(e.B)
    sigma, _ = comparison_sigma(e)
    win = list(Fg.window)
    isos: List[Optional[ModMap]] = []
    for n in reversed(win):
        s = -1 if n % 2 else 1
        isos.append(ml.identity(snail.objects[len(isos)]).scale(s))
        try:
            inv = ml.inverse(sigma.C(n))
        except ml.ExactLinError:
            fails.append(f"C(sigma)_{n} is not invertible")
            inv = None
        isos.append(ml.compose(inv, FA.conn(n - 1)).scale(-s) if inv is not None else None)
        isos.append(FB.conn(n - 1).scale(-s))
    if win:
        n = win[0] - 1
        isos.append(ml.identity(snail.objects[-1]).scale(-1 if n % 2 else 1))
    if len(snail.objects) != len(classical.objects):
        fails.append("sequences have different lengths")
    if not fails:
        for i, phi in enumerate(isos):
            if phi.source != snail.objects[i] or phi.target != classical.objects[i]:
                fails.append(f"{snail.labels[i]}: comparison has the wrong ends")
            elif not ml.is_iso(phi):
                fails.append(f"{snail.labels[i]}: comparison is not an isomorphism")
    if not fails:
        for i, (p, c) in enumerate(zip(snail.maps, classical.maps)):
            if not ml.maps_equal(ml.compose(p, isos[i + 1]), ml.compose(isos[i], c)):
                fails.append(f"square at {snail.labels[i]} -> {snail.labels[i + 1]} does not commute")
    return CompareReport(not fails, snail, classical, isos, fails)
