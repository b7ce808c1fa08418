"""Immutable exact matrices and the normal forms built on them.

Matrices act on row vectors: a morphism with matrix ``M`` sends the row
vector ``v`` to ``v @ M``, so the diagrammatic composite ``f . g`` has
matrix ``M_f @ M_g``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .ring import PRIME_FIELD, Ring


class ExactMatrix:
    """A rows x cols matrix over a :class:`Ring`, stored as a tuple of row tuples."""

    __slots__ = ("ring", "rows", "cols", "data", "_hash")

    def __init__(self, ring: Ring, rows: int, cols: int, data: tuple):
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.data = data
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, ring: Ring, rows: Iterable[Sequence], cols: Optional[int] = None) -> "ExactMatrix":
        data = tuple(tuple(ring(x) for x in r) for r in rows)
        if cols is None:
            if not data:
                raise ValueError("column count needed for a matrix with no rows")
            cols = len(data[0])
        for i, r in enumerate(data):
            if len(r) != cols:
                raise ValueError(f"row {i} has {len(r)} entries, expected {cols}")
        return cls(ring, len(data), cols, data)

    @classmethod
    def _raw(cls, ring: Ring, rows: int, cols: int, lists) -> "ExactMatrix":
        # trusted constructor for already-canonical entries
        return cls(ring, rows, cols, tuple(tuple(r) for r in lists))

    @classmethod
    def zeros(cls, ring: Ring, rows: int, cols: int) -> "ExactMatrix":
        z = ring.zero
        return cls(ring, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "ExactMatrix":
        z, o = ring.zero, ring.one
        return cls(ring, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def scalar(cls, ring: Ring, n: int, c) -> "ExactMatrix":
        c = ring(c)
        z = ring.zero
        return cls(ring, n, n, tuple(tuple(c if i == j else z for j in range(n)) for i in range(n)))

    # value semantics ----------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.ring == other.ring and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(self.ring.format(x) for x in r) for r in self.data)
        return f"ExactMatrix[{self.ring}]({self.rows}x{self.cols}: [{body}])"

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def to_lists(self):
        return [list(r) for r in self.data]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    # arithmetic ---------------------------------------------------------

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_ring(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        p = self.ring.p if self.ring.tag == PRIME_FIELD else 0
        cols_b = list(zip(*other.data)) if other.rows else [()] * other.cols
        z = self.ring.zero
        out = []
        for r in self.data:
            row = []
            for c in cols_b:
                s = z
                for a, b in zip(r, c):
                    if a and b:
                        s += a * b
                row.append(s % p if p else s)
            out.append(tuple(row))
        return ExactMatrix(self.ring, self.rows, other.cols, tuple(out))

    def _zip(self, other, op):
        self._check_ring(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        p = self.ring.p if self.ring.tag == PRIME_FIELD else 0
        if p:
            data = tuple(tuple(op(a, b) % p for a, b in zip(r, s)) for r, s in zip(self.data, other.data))
        else:
            data = tuple(tuple(op(a, b) for a, b in zip(r, s)) for r, s in zip(self.data, other.data))
        return ExactMatrix(self.ring, self.rows, self.cols, data)

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "ExactMatrix":
        c = self.ring(c)
        r = self.ring
        return ExactMatrix(r, self.rows, self.cols, tuple(tuple(r.reduce(c * x) for x in row) for row in self.data))

    @property
    def T(self) -> "ExactMatrix":
        data = tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols))
        return ExactMatrix(self.ring, self.cols, self.rows, data)

    def take_rows(self, idx) -> "ExactMatrix":
        idx = list(idx)
        return ExactMatrix(self.ring, len(idx), self.cols, tuple(self.data[i] for i in idx))

    def take_cols(self, idx) -> "ExactMatrix":
        idx = list(idx)
        return ExactMatrix(self.ring, self.rows, len(idx), tuple(tuple(r[j] for j in idx) for r in self.data))

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_ring(other)
        if self.cols != other.cols:
            raise ValueError(f"vstack column mismatch {self.cols} vs {other.cols}")
        return ExactMatrix(self.ring, self.rows + other.rows, self.cols, self.data + other.data)

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_ring(other)
        if self.rows != other.rows:
            raise ValueError(f"hstack row mismatch {self.rows} vs {other.rows}")
        data = tuple(a + b for a, b in zip(self.data, other.data))
        return ExactMatrix(self.ring, self.rows, self.cols + other.cols, data)

    def block_diag(self, other: "ExactMatrix") -> "ExactMatrix":
        top = self.hstack(ExactMatrix.zeros(self.ring, self.rows, other.cols))
        bottom = ExactMatrix.zeros(self.ring, other.rows, self.cols).hstack(other)
        return top.vstack(bottom)


def vstack_all(ring: Ring, cols: int, mats: Sequence[ExactMatrix]) -> ExactMatrix:
    out = ExactMatrix.zeros(ring, 0, cols)
    for m in mats:
        out = out.vstack(m)
    return out


# ---------------------------------------------------------------------------
# Smith normal form

@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with ``D`` diagonal and ``d_1 | d_2 | ...``."""

    U: ExactMatrix
    D: ExactMatrix
    V: ExactMatrix
    Vinv: ExactMatrix
    rank: int

    @property
    def diagonal(self):
        return [self.D[i, i] for i in range(min(self.D.rows, self.D.cols))]


def _smith_lists(ring: Ring, a, m: int, n: int):
    p = ring.p if ring.tag == PRIME_FIELD else 0
    field = ring.is_field
    size = ring.size
    U = [[ring.one if i == j else ring.zero for j in range(m)] for i in range(m)]
    V = [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
    Vi = [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]

    def row_add(i, j, c):
        # row_i += c * row_j
        ri, rj = a[i], a[j]
        for k in range(n):
            if rj[k]:
                ri[k] = (ri[k] + c * rj[k]) % p if p else ri[k] + c * rj[k]
        ui, uj = U[i], U[j]
        for k in range(m):
            if uj[k]:
                ui[k] = (ui[k] + c * uj[k]) % p if p else ui[k] + c * uj[k]

    def col_add(i, j, c):
        # col_i += c * col_j
        for r in a:
            if r[j]:
                r[i] = (r[i] + c * r[j]) % p if p else r[i] + c * r[j]
        for r in V:
            if r[j]:
                r[i] = (r[i] + c * r[j]) % p if p else r[i] + c * r[j]
        ri, rj = Vi[j], Vi[i]
        for k in range(n):
            if rj[k]:
                ri[k] = (ri[k] - c * rj[k]) % p if p else ri[k] - c * rj[k]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            ri = a[i]
            for j in range(t, n):
                x = ri[j]
                if x and (best is None or size(x) < best[0]):
                    best = (size(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            row_swap(t, bi)
        if bj != t:
            col_swap(t, bj)
        while True:
            piv = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    row_add(i, t, -ring.quo(a[i][t], piv))
            rest = [(size(a[i][t]), i) for i in range(t + 1, m) if a[i][t]]
            if rest:
                row_swap(t, min(rest)[1])
                continue
            for j in range(t + 1, n):
                if a[t][j]:
                    col_add(j, t, -ring.quo(a[t][j], piv))
            rest = [(size(a[t][j]), j) for j in range(t + 1, n) if a[t][j]]
            if rest:
                col_swap(t, min(rest)[1])
                continue
            if not field:
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if a[i][j] % piv:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is not None:
                    row_add(t, bad, 1)
                    continue
            break
        u = ring.normal_unit(a[t][t])
        if u != ring.one:
            a[t] = [ring.reduce(u * x) for x in a[t]]
            U[t] = [ring.reduce(u * x) for x in U[t]]
        t += 1
    return U, V, Vi, t


@lru_cache(maxsize=65536)
def smith(m: ExactMatrix) -> SmithDecomposition:
    """Smith normal form; over a field this is the rank normal form."""
    ring = m.ring
    a = [list(r) for r in m.data]
    U, V, Vi, rank = _smith_lists(ring, a, m.rows, m.cols)
    return SmithDecomposition(
        U=ExactMatrix._raw(ring, m.rows, m.rows, U),
        D=ExactMatrix._raw(ring, m.rows, m.cols, a) if m.rows else ExactMatrix.zeros(ring, 0, m.cols),
        V=ExactMatrix._raw(ring, m.cols, m.cols, V),
        Vinv=ExactMatrix._raw(ring, m.cols, m.cols, Vi),
        rank=rank,
    )


def solve_left(B: ExactMatrix, C: ExactMatrix) -> Optional[ExactMatrix]:
    """A matrix ``X`` with ``X @ B == C``, or ``None`` if there is none."""
    if B.cols != C.cols:
        raise ValueError(f"solve_left: B has {B.cols} columns, C has {C.cols}")
    ring = B.ring
    if C.rows == 0:
        return ExactMatrix.zeros(ring, 0, B.rows)
    sd = smith(B)
    r = sd.rank
    CV = C @ sd.V
    Y = []
    for row in CV.data:
        if any(row[j] for j in range(r, B.cols)):
            return None
        y = []
        for j in range(r):
            d = sd.D[j, j]
            if not ring.divides(d, row[j]):
                return None
            y.append(ring.quo(row[j], d) if ring.is_field else row[j] // d)
        Y.append(y)
    Ym = ExactMatrix._raw(ring, C.rows, r, Y)
    return Ym @ sd.U.take_rows(range(r))


def left_kernel(B: ExactMatrix) -> ExactMatrix:
    """Rows spanning ``{x : x @ B == 0}`` (a basis, since the ring is a PID)."""
    sd = smith(B)
    return sd.U.take_rows(range(sd.rank, B.rows))


def right_kernel(B: ExactMatrix) -> ExactMatrix:
    """Columns (returned as rows) spanning ``{v : B @ v == 0}``."""
    sd = smith(B)
    return sd.V.take_cols(range(sd.rank, B.cols)).T


# ---------------------------------------------------------------------------
# Hermite normal form: canonical row bases and reduction modulo a row span

@dataclass(frozen=True)
class HermiteBasis:
    rows: ExactMatrix
    pivots: tuple


@lru_cache(maxsize=65536)
def hermite(m: ExactMatrix) -> HermiteBasis:
    """Row Hermite form (reduced row echelon form over a field), zero rows dropped."""
    ring = m.ring
    p = ring.p if ring.tag == PRIME_FIELD else 0
    a = [list(r) for r in m.data]
    nrows, ncols = m.rows, m.cols
    pivots = []
    r = 0
    for j in range(ncols):
        if r >= nrows:
            break
        while True:
            nz = [(ring.size(a[i][j]), i) for i in range(r, nrows) if a[i][j]]
            if not nz:
                break
            _, i0 = min(nz)
            a[r], a[i0] = a[i0], a[r]
            piv = a[r][j]
            clean = True
            for i in range(r + 1, nrows):
                if a[i][j]:
                    q = ring.quo(a[i][j], piv)
                    ri, rr = a[i], a[r]
                    for k in range(j, ncols):
                        if rr[k]:
                            ri[k] = (ri[k] - q * rr[k]) % p if p else ri[k] - q * rr[k]
                    if ri[j]:
                        clean = False
            if clean:
                break
        if r < nrows and a[r][j]:
            u = ring.normal_unit(a[r][j])
            if u != ring.one:
                a[r] = [ring.reduce(u * x) for x in a[r]]
            piv = a[r][j]
            for i in range(r):
                if a[i][j]:
                    q = a[i][j] // piv if not ring.is_field else ring.quo(a[i][j], piv)
                    ri, rr = a[i], a[r]
                    for k in range(j, ncols):
                        if rr[k]:
                            ri[k] = (ri[k] - q * rr[k]) % p if p else ri[k] - q * rr[k]
            pivots.append(j)
            r += 1
    return HermiteBasis(ExactMatrix._raw(ring, r, ncols, a[:r]), tuple(pivots))


def reduce_rows(m: ExactMatrix, basis: HermiteBasis) -> ExactMatrix:
    """Canonical representative of each row of ``m`` modulo the span of ``basis``."""
    if not basis.pivots or m.rows == 0:
        return m
    ring = m.ring
    p = ring.p if ring.tag == PRIME_FIELD else 0
    field = ring.is_field
    H = basis.rows.data
    out = []
    for row in m.data:
        v = list(row)
        for hr, j in zip(H, basis.pivots):
            if v[j]:
                piv = hr[j]
                q = ring.quo(v[j], piv) if field else v[j] // piv
                if q:
                    for k in range(j, m.cols):
                        if hr[k]:
                            v[k] = (v[k] - q * hr[k]) % p if p else v[k] - q * hr[k]
        out.append(tuple(v))
    return ExactMatrix(ring, m.rows, m.cols, tuple(out))
