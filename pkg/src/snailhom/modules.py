"""Finitely presented modules over a Euclidean domain and the maps between them.

A module is a number of generators plus a relations matrix whose rows are the
relations. Every kernel, cokernel and pullback returned here is pruned to a
Smith presentation (one generator per invariant factor), with the structure
maps expressed against that presentation.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional, Sequence

from .matrix import ExactMatrix, hermite, reduce_rows, smith, solve_left, left_kernel
from .ring import Ring


class ExactLinError(Exception):
    code = "EXACTLIN"


class ShapeMismatch(ExactLinError, ValueError):
    code = "SHAPE"


class NotWellDefined(ExactLinError, ValueError):
    code = "NOT_WELL_DEFINED"


class NoLift(ExactLinError):
    code = "NO_LIFT"


class NoColift(ExactLinError):
    code = "NO_COLIFT"


class FpModule:
    """Module with ``ngens`` generators subject to the rows of ``relations``."""

    __slots__ = ("ring", "ngens", "relations", "_hash")

    def __init__(self, ring: Ring, ngens: int, relations: Optional[ExactMatrix] = None):
        if relations is None:
            relations = ExactMatrix.zeros(ring, 0, ngens)
        if relations.cols != ngens:
            raise ShapeMismatch(f"relations have {relations.cols} columns for {ngens} generators")
        if relations.ring != ring:
            raise ShapeMismatch("relations over a different ring")
        self.ring = ring
        self.ngens = ngens
        self.relations = relations
        self._hash = None

    @classmethod
    def free(cls, ring: Ring, n: int) -> "FpModule":
        return cls(ring, n)

    @classmethod
    def zero(cls, ring: Ring) -> "FpModule":
        return cls(ring, 0)

    @classmethod
    def cyclic(cls, ring: Ring, d) -> "FpModule":
        return cls(ring, 1, ExactMatrix.from_rows(ring, [[d]]))

    @classmethod
    def from_invariants(cls, ring: Ring, torsion: Sequence = (), free: int = 0) -> "FpModule":
        g = len(torsion) + free
        rows = []
        for i, d in enumerate(torsion):
            row = [0] * g
            row[i] = d
            rows.append(row)
        return cls(ring, g, ExactMatrix.from_rows(ring, rows, g))

    def __eq__(self, other):
        if not isinstance(other, FpModule):
            return NotImplemented
        return self.ring == other.ring and self.ngens == other.ngens and self.relations == other.relations

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.ngens, self.relations))
        return self._hash

    def __repr__(self):
        return f"FpModule({describe(self)}; {self.ngens} gens, {self.relations.rows} rels)"

    def reduce(self, m: ExactMatrix) -> ExactMatrix:
        """Canonical representatives of the rows of ``m`` as elements of this module."""
        return reduce_rows(m, hermite(self.relations))

    def contains_zero_rows(self, m: ExactMatrix) -> bool:
        """Are all rows of ``m`` zero in this module?"""
        return self.reduce(m).is_zero()


class ModMap:
    """Morphism ``source -> target``; generator ``i`` maps to row ``i`` of ``matrix``."""

    __slots__ = ("source", "target", "matrix", "_hash")

    def __init__(self, source: FpModule, target: FpModule, matrix: ExactMatrix, check: bool = True):
        if matrix.rows != source.ngens or matrix.cols != target.ngens:
            raise ShapeMismatch(
                f"map matrix is {matrix.rows}x{matrix.cols}, expected {source.ngens}x{target.ngens}")
        if source.ring != target.ring or matrix.ring != source.ring:
            raise ShapeMismatch("ring mismatch in map")
        matrix = target.reduce(matrix)
        if check and source.relations.rows:
            if not target.contains_zero_rows(source.relations @ matrix):
                raise NotWellDefined("map does not respect the source relations")
        self.source = source
        self.target = target
        self.matrix = matrix
        self._hash = None

    @property
    def ring(self) -> Ring:
        return self.source.ring

    def __eq__(self, other):
        # presentation-level equality; use maps_equal for equality in the category
        if not isinstance(other, ModMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.matrix == other.matrix

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.source, self.target, self.matrix))
        return self._hash

    def __repr__(self):
        return f"ModMap({describe(self.source)} -> {describe(self.target)}, {self.matrix!r})"

    def then(self, other: "ModMap") -> "ModMap":
        return compose(self, other)

    def __add__(self, other: "ModMap") -> "ModMap":
        _same_ends(self, other)
        return ModMap(self.source, self.target, self.matrix + other.matrix, check=False)

    def __sub__(self, other: "ModMap") -> "ModMap":
        _same_ends(self, other)
        return ModMap(self.source, self.target, self.matrix - other.matrix, check=False)

    def __neg__(self) -> "ModMap":
        return ModMap(self.source, self.target, -self.matrix, check=False)

    def scale(self, c) -> "ModMap":
        return ModMap(self.source, self.target, self.matrix.scale(c), check=False)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()


def _same_ends(f: ModMap, g: ModMap):
    if f.source != g.source or f.target != g.target:
        raise ShapeMismatch("maps have different source or target")


# ---------------------------------------------------------------------------
# basic arrows

def identity(M: FpModule) -> ModMap:
    return ModMap(M, M, ExactMatrix.identity(M.ring, M.ngens), check=False)


def zero_map(M: FpModule, N: FpModule) -> ModMap:
    return ModMap(M, N, ExactMatrix.zeros(M.ring, M.ngens, N.ngens), check=False)


def compose(f: ModMap, g: ModMap) -> ModMap:
    """Diagrammatic composite ``f . g`` (first ``f``, then ``g``)."""
    if f.target != g.source:
        raise ShapeMismatch(f"cannot compose: {f.target!r} is not {g.source!r}")
    return ModMap(f.source, g.target, f.matrix @ g.matrix, check=False)


def compose_all(*maps: ModMap) -> ModMap:
    out = maps[0]
    for m in maps[1:]:
        out = compose(out, m)
    return out


def maps_equal(f: ModMap, g: ModMap) -> bool:
    """Equality as morphisms: the difference lies in the span of the target relations."""
    if f.source != g.source or f.target != g.target:
        raise ShapeMismatch("maps_equal: different source or target")
    diff = f.matrix - g.matrix
    if diff.is_zero():
        return True
    return solve_left(f.target.relations, diff) is not None


def is_zero_map(f: ModMap) -> bool:
    return maps_equal(f, zero_map(f.source, f.target))


# ---------------------------------------------------------------------------
# presentations

def invariants(M: FpModule):
    """``(torsion, free_rank)``: the non-unit invariant factors and the rank."""
    sd = smith(M.relations)
    ring = M.ring
    torsion = tuple(d for d in sd.diagonal[:sd.rank] if not ring.is_unit(d))
    return torsion, M.ngens - sd.rank


def is_zero_module(M: FpModule) -> bool:
    torsion, free = invariants(M)
    return not torsion and free == 0


def describe(M: FpModule) -> str:
    torsion, free = invariants(M)
    base = M.ring.name()
    parts = [f"{base}/{d}" for d in torsion] + [base] * free
    return " ⊕ ".join(parts) if parts else "0"


def modules_isomorphic(M: FpModule, N: FpModule) -> bool:
    if M.ring != N.ring:
        raise ShapeMismatch("modules over different rings")
    return invariants(M) == invariants(N)


@lru_cache(maxsize=32768)
def _prune(ring: Ring, ngens: int, rels: ExactMatrix):
    sd = smith(rels)
    diag = sd.diagonal
    keep = [j for j in range(ngens) if j >= sd.rank or not ring.is_unit(diag[j])]
    rows = []
    for pos, j in enumerate(keep):
        if j < sd.rank:
            row = [ring.zero] * len(keep)
            row[pos] = diag[j]
            rows.append(row)
    P = FpModule(ring, len(keep), ExactMatrix.from_rows(ring, rows, len(keep)))
    to_p = sd.V.take_cols(keep)
    from_p = sd.Vinv.take_rows(keep)
    return P, to_p, from_p


def prune(M: FpModule):
    """Smith presentation ``P`` of ``M`` with mutually inverse maps ``M -> P`` and ``P -> M``."""
    P, to_p, from_p = _prune(M.ring, M.ngens, M.relations)
    return P, ModMap(M, P, to_p, check=False), ModMap(P, M, from_p, check=False)


def direct_sum(M: FpModule, N: FpModule) -> FpModule:
    return FpModule(M.ring, M.ngens + N.ngens, M.relations.block_diag(N.relations))


def sum_injections(M: FpModule, N: FpModule):
    S = direct_sum(M, N)
    r = M.ring
    i1 = ExactMatrix.identity(r, M.ngens).hstack(ExactMatrix.zeros(r, M.ngens, N.ngens))
    i2 = ExactMatrix.zeros(r, N.ngens, M.ngens).hstack(ExactMatrix.identity(r, N.ngens))
    return S, ModMap(M, S, i1, check=False), ModMap(N, S, i2, check=False)


def sum_projections(M: FpModule, N: FpModule):
    S = direct_sum(M, N)
    r = M.ring
    p1 = ExactMatrix.identity(r, M.ngens).vstack(ExactMatrix.zeros(r, N.ngens, M.ngens))
    p2 = ExactMatrix.zeros(r, M.ngens, N.ngens).vstack(ExactMatrix.identity(r, N.ngens))
    return S, ModMap(S, M, p1, check=False), ModMap(S, N, p2, check=False)


def pair_into(f: ModMap, g: ModMap) -> ModMap:
    """``<f, g>``: the map into ``f.target ⊕ g.target``."""
    if f.source != g.source:
        raise ShapeMismatch("pair_into needs a common source")
    S = direct_sum(f.target, g.target)
    return ModMap(f.source, S, f.matrix.hstack(g.matrix), check=False)


def copair_from(f: ModMap, g: ModMap) -> ModMap:
    """``[f, g]``: the map out of ``f.source ⊕ g.source``."""
    if f.target != g.target:
        raise ShapeMismatch("copair_from needs a common target")
    S = direct_sum(f.source, g.source)
    return ModMap(S, f.target, f.matrix.vstack(g.matrix), check=False)


# ---------------------------------------------------------------------------
# kernels, cokernels, pullbacks

def kernel(f: ModMap):
    """``(K, k)`` with ``k: K -> f.source`` the kernel embedding."""
    M, N = f.source, f.target
    ring = f.ring
    stacked = f.matrix.vstack(N.relations)
    L = left_kernel(stacked)
    preimage = L.take_cols(range(M.ngens))
    E = hermite(preimage).rows
    Q = solve_left(E, M.relations)
    if Q is None:  # pragma: no cover - the relations always lie in the preimage
        raise ExactLinError("relations of the source escaped the kernel")
    K0 = FpModule(ring, E.rows, Q)
    K, _, from_k = _prune_pair(K0)
    return K, ModMap(K, M, from_k @ E, check=False)


def _prune_pair(M0: FpModule):
    P, to_p, from_p = _prune(M0.ring, M0.ngens, M0.relations)
    return P, to_p, from_p


def cokernel(f: ModMap):
    """``(C, c)`` with ``c: f.target -> C`` the cokernel projection."""
    N = f.target
    C0 = FpModule(f.ring, N.ngens, N.relations.vstack(f.matrix))
    C, to_c, _ = _prune_pair(C0)
    return C, ModMap(N, C, to_c, check=False)


def pullback(f: ModMap, g: ModMap):
    """``(P, p_f, p_g)`` with ``p_f . f == p_g . g`` universal."""
    if f.target != g.target:
        raise ShapeMismatch("pullback needs a common target")
    A, B = f.source, g.source
    S, pA, pB = sum_projections(A, B)
    diff = ModMap(S, f.target, f.matrix.vstack(-g.matrix), check=False)
    P, k = kernel(diff)
    return P, compose(k, pA), compose(k, pB)


def image(f: ModMap):
    """``(I, e, m)`` with ``f == e . m``, ``e`` regular epi and ``m`` mono."""
    C, c = cokernel(f)
    I, m = kernel(c)
    e = lift_through_mono(f, m)
    return I, e, m


# ---------------------------------------------------------------------------
# factorizations

def lift_through_mono(t: ModMap, k: ModMap) -> ModMap:
    """The ``u`` with ``u . k == t``; raises :class:`NoLift` when none exists."""
    if t.target != k.target:
        raise ShapeMismatch("lift_through_mono: targets differ")
    M = k.target
    X = solve_left(k.matrix.vstack(M.relations), t.matrix)
    if X is None:
        raise NoLift("the map does not factor through the given arrow")
    u = X.take_cols(range(k.source.ngens))
    try:
        return ModMap(t.source, k.source, u)
    except NotWellDefined as exc:
        raise NoLift("the lift is not well defined; the receiving arrow is not mono") from exc


def colift_through_epi(t: ModMap, c: ModMap) -> ModMap:
    """The ``u`` with ``c . u == t``; raises :class:`NoColift` when none exists."""
    if t.source != c.source:
        raise ShapeMismatch("colift_through_epi: sources differ")
    C, T = c.target, t.target
    ring = t.ring
    sec = solve_left(c.matrix.vstack(C.relations), ExactMatrix.identity(ring, C.ngens))
    if sec is None:
        raise NoColift("the arrow to colift through is not an epimorphism")
    U = sec.take_cols(range(c.source.ngens)) @ t.matrix
    if C.relations.rows and not T.contains_zero_rows(C.relations @ U):
        raise NoColift("the map does not vanish on the kernel")
    if not T.contains_zero_rows(c.matrix @ U - t.matrix):
        raise NoColift("the map does not vanish on the kernel")
    return ModMap(C, T, U, check=False)


def is_mono(f: ModMap) -> bool:
    return kernel(f)[0].ngens == 0


def is_regular_epi(f: ModMap) -> bool:
    return cokernel(f)[0].ngens == 0


def is_iso(f: ModMap) -> bool:
    return is_mono(f) and is_regular_epi(f)


def inverse(f: ModMap) -> ModMap:
    """Two-sided inverse of an isomorphism."""
    if not is_mono(f):
        raise NoColift("not invertible: nonzero kernel")
    return colift_through_epi(identity(f.source), f)


def is_proper_arrow(f: ModMap) -> bool:
    """Is the factorization of ``f`` through the kernel of its cokernel a regular epi?"""
    _, c = cokernel(f)
    _, k = kernel(c)
    fbar = lift_through_mono(f, k)
    return is_regular_epi(fbar)


def induced_on_kernels(k1: ModMap, k2: ModMap, f: ModMap) -> ModMap:
    """Restriction of ``f`` to kernels: the ``u`` with ``u . k2 == k1 . f``."""
    return lift_through_mono(compose(k1, f), k2)


def induced_on_cokernels(c1: ModMap, c2: ModMap, f: ModMap) -> ModMap:
    """Map on cokernels: the ``u`` with ``c1 . u == f . c2``."""
    return colift_through_epi(compose(f, c2), c1)


def is_exact_at(f: ModMap, g: ModMap) -> bool:
    """``f . g == 0`` and ``f`` maps onto the kernel of ``g``."""
    if not is_zero_map(compose(f, g)):
        return False
    _, k = kernel(g)
    return is_regular_epi(lift_through_mono(f, k))
