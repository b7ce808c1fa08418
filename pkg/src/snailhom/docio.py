"""JSON documents for complexes, morphisms, families and extensions.

Matrices are lists of rows (row-vector convention). Degrees are string keys.
Rational entries may be written as ``"p/q"`` strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional

from . import modules as ml
from .arrcat import ArrMor, ArrObj
from .chaincx import ChainMor, Complex
from .classical import Extension
from .homotopy import PreconditionError
from .matrix import ExactMatrix
from .modules import FpModule, ModMap
from .ring import GF, QQ, ZZ, Ring
from .seqfam import SeqFamily, SeqMor

KINDS = ("complex", "complex_morphism", "arrow_morphism", "seq_family", "seq_morphism", "extension")


class DocumentError(ValueError):
    """Malformed input; ``path`` locates the offending field."""

    def __init__(self, path: str, msg: str):
        super().__init__(f"{path or '<root>'}: {msg}")
        self.path = path


@dataclass
class Document:
    ring: Ring
    kind: str
    obj: Any


# ---------------------------------------------------------------------------
# parsing

def _need(d, key, path):
    if not isinstance(d, dict):
        raise DocumentError(path, "expected an object")
    if key not in d:
        raise DocumentError(f"{path}.{key}" if path else key, "missing field")
    return d[key]


def _sub(path, key):
    return f"{path}.{key}" if path else str(key)


def parse_ring(v, path="ring") -> Ring:
    if v == "Z":
        return ZZ
    if v == "Q":
        return QQ
    if isinstance(v, dict) and set(v) == {"Fp"}:
        p = v["Fp"]
        if not isinstance(p, int) or isinstance(p, bool):
            raise DocumentError(path + ".Fp", "prime must be an integer")
        try:
            return GF(p)
        except ValueError as e:
            raise DocumentError(path + ".Fp", str(e)) from None
    raise DocumentError(path, 'expected "Z", "Q" or {"Fp": p}')


def _scalar(ring: Ring, x, path):
    if isinstance(x, bool):
        raise DocumentError(path, "booleans are not scalars")
    if isinstance(x, int):
        return ring(x)
    if isinstance(x, str):
        try:
            v = Fraction(x)
        except (ValueError, ZeroDivisionError):
            raise DocumentError(path, f"cannot read scalar {x!r}") from None
        if ring.tag == ZZ.tag:
            if v.denominator != 1:
                raise DocumentError(path, "fractions are not integers")
            return ring(int(v))
        try:
            return ring(v)
        except (ValueError, ZeroDivisionError) as e:
            raise DocumentError(path, str(e)) from None
    raise DocumentError(path, "expected a number or a \"p/q\" string")


def parse_matrix(ring: Ring, v, rows: Optional[int], cols: Optional[int], path: str) -> ExactMatrix:
    if not isinstance(v, list) or not all(isinstance(r, list) for r in v):
        raise DocumentError(path, "expected a list of rows")
    if rows is not None and len(v) != rows:
        raise DocumentError(path, f"expected {rows} rows, got {len(v)}")
    for i, r in enumerate(v):
        c = cols if cols is not None else len(v[0])
        if len(r) != c:
            raise DocumentError(f"{path}[{i}]", f"expected {c} columns, got {len(r)}")
    if cols is None:
        if not v:
            raise DocumentError(path, "cannot infer the column count of an empty matrix")
        cols = len(v[0])
    data = [[_scalar(ring, x, f"{path}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(v)]
    return ExactMatrix.from_rows(ring, data, cols)


def _degree(key, path) -> int:
    try:
        return int(key)
    except (TypeError, ValueError):
        raise DocumentError(path, f"degree key {key!r} is not an integer") from None


def _degree_map(d, path) -> Dict[int, Any]:
    if d is None:
        return {}
    if not isinstance(d, dict):
        raise DocumentError(path, "expected an object keyed by degree")
    return {_degree(k, _sub(path, k)): v for k, v in d.items()}


def parse_module(ring: Ring, v, path) -> FpModule:
    """An integer rank, or ``{"rank": g, "relations": matrix}``."""
    if isinstance(v, int) and not isinstance(v, bool):
        if v < 0:
            raise DocumentError(path, "rank must be non-negative")
        return FpModule.free(ring, v)
    if isinstance(v, dict):
        g = _need(v, "rank", path)
        if not isinstance(g, int) or g < 0:
            raise DocumentError(path + ".rank", "rank must be a non-negative integer")
        R = parse_matrix(ring, v.get("relations", []), None, g, path + ".relations") if v.get("relations") else \
            ExactMatrix.zeros(ring, 0, g)
        return FpModule(ring, g, R)
    raise DocumentError(path, "expected a rank or {\"rank\", \"relations\"}")


def _map(ring, M, N, v, path) -> ModMap:
    A = parse_matrix(ring, v, M.ngens, N.ngens, path)
    try:
        return ModMap(M, N, A)
    except ml.ExactLinError as e:
        raise DocumentError(path, f"not a well-defined map: {e}") from None


def parse_complex(ring: Ring, d, path="") -> Complex:
    sup = _need(d, "support", path)
    if not (isinstance(sup, list) and len(sup) == 2 and all(isinstance(x, int) for x in sup)):
        raise DocumentError(_sub(path, "support"), "expected [lo, hi]")
    lo, hi = sup
    if hi < lo:
        return Complex(ring, 0, -1, {})
    ranks = _degree_map(d.get("ranks"), _sub(path, "ranks"))
    rels = _degree_map(d.get("modules"), _sub(path, "modules"))
    diffs = _degree_map(d.get("differentials"), _sub(path, "differentials"))
    for n in list(ranks) + list(rels):
        if not lo <= n <= hi:
            raise DocumentError(path, f"degree {n} lies outside the support")
    for n in diffs:
        if not lo + 1 <= n <= hi:
            raise DocumentError(_sub(_sub(path, "differentials"), n), "differential outside the support")

    def rank(n):
        if n in ranks:
            return ranks[n]
        if n in rels and isinstance(rels[n], list) and rels[n]:
            return len(rels[n][0])
        if n in diffs and isinstance(diffs[n], list):
            return len(diffs[n])
        if n + 1 in diffs and isinstance(diffs[n + 1], list) and diffs[n + 1]:
            return len(diffs[n + 1][0])
        return 0

    mods = {}
    for n in range(lo, hi + 1):
        g = rank(n)
        if not isinstance(g, int) or g < 0:
            raise DocumentError(_sub(_sub(path, "ranks"), n), "rank must be a non-negative integer")
        p = _sub(_sub(path, "modules"), n)
        R = parse_matrix(ring, rels[n], None, g, p) if rels.get(n) else ExactMatrix.zeros(ring, 0, g)
        mods[n] = FpModule(ring, g, R)
    dm = {n: _map(ring, mods[n], mods[n - 1], v, _sub(_sub(path, "differentials"), n)) for n, v in diffs.items()}
    try:
        return Complex(ring, lo, hi, mods, dm)
    except PreconditionError as e:
        raise DocumentError(_sub(path, "differentials"), str(e)) from None


def parse_chain_morphism(ring: Ring, d, path="") -> ChainMor:
    B = parse_complex(ring, _need(d, "source", path), _sub(path, "source"))
    C = parse_complex(ring, _need(d, "target", path), _sub(path, "target"))
    return _chain_maps(ring, B, C, d.get("maps"), _sub(path, "maps"))


def _chain_maps(ring, B, C, v, path) -> ChainMor:
    raw = _degree_map(v, path)
    maps = {}
    for n, m in raw.items():
        maps[n] = _map(ring, B.C(n), C.C(n), m, _sub(path, n))
    try:
        return ChainMor(B, C, maps)
    except PreconditionError as e:
        raise DocumentError(path, f"non-commuting square: {e}") from None
    except ml.ShapeMismatch as e:
        raise DocumentError(path, str(e)) from None


def parse_extension(ring: Ring, d, path="") -> Extension:
    A = parse_complex(ring, _need(d, "A", path), _sub(path, "A"))
    B = parse_complex(ring, _need(d, "B", path), _sub(path, "B"))
    f = _chain_maps(ring, A, B, _need(d, "f", path), _sub(path, "f"))
    if "C" in d:
        C = parse_complex(ring, d["C"], _sub(path, "C"))
        g = _chain_maps(ring, B, C, _need(d, "g", path), _sub(path, "g"))
    else:
        from .genrand import _extension_from_mono
        try:
            return _extension_from_mono(f)
        except PreconditionError as e:
            raise DocumentError(_sub(path, "f"), str(e)) from None
    try:
        return Extension(f, g)
    except (PreconditionError, ml.ShapeMismatch) as e:
        raise DocumentError(path, str(e)) from None


def parse_arr_obj(ring: Ring, d, path) -> ArrObj:
    top = parse_module(ring, _need(d, "top", path), _sub(path, "top"))
    bottom = parse_module(ring, _need(d, "bottom", path), _sub(path, "bottom"))
    return ArrObj(_map(ring, top, bottom, _need(d, "arrow", path), _sub(path, "arrow")))


def parse_arr_morphism(ring: Ring, d, path="") -> ArrMor:
    X = parse_arr_obj(ring, _need(d, "source", path), _sub(path, "source"))
    Y = parse_arr_obj(ring, _need(d, "target", path), _sub(path, "target"))
    t = _map(ring, X.top, Y.top, _need(d, "top", path), _sub(path, "top"))
    b = _map(ring, X.bottom, Y.bottom, _need(d, "bottom", path), _sub(path, "bottom"))
    try:
        return ArrMor(X, Y, t, b)
    except PreconditionError as e:
        raise DocumentError(path, f"non-commuting square: {e}") from None


def parse_seq_family(ring: Ring, d, path="") -> SeqFamily:
    """Levels ``{"dom", "cod", "map"}``; a connector is given as a map ``Cod(h_{n+1}) -> Dom(h_n)``.

    The connector map must kill the image of ``h_{n+1}`` and land in ``Ker(h_n)``;
    it is re-based onto the computed cokernel and kernel presentations.
    """
    sup = _need(d, "support", path)
    if not (isinstance(sup, list) and len(sup) == 2 and all(isinstance(x, int) for x in sup)):
        raise DocumentError(_sub(path, "support"), "expected [lo, hi]")
    lo, hi = sup
    levels = _degree_map(d.get("levels"), _sub(path, "levels"))
    maps = {}
    for n, lv in levels.items():
        p = _sub(_sub(path, "levels"), n)
        if not lo <= n <= hi:
            raise DocumentError(p, "level outside the support")
        M = parse_module(ring, _need(lv, "dom", p), _sub(p, "dom"))
        N = parse_module(ring, _need(lv, "cod", p), _sub(p, "cod"))
        maps[n] = _map(ring, M, N, _need(lv, "map", p), _sub(p, "map"))
    bare = SeqFamily(ring, lo, hi, maps)
    conns = {}
    for n, v in _degree_map(d.get("connectors"), _sub(path, "connectors")).items():
        p = _sub(_sub(path, "connectors"), n)
        raw = _map(ring, bare.cod(n + 1), bare.dom(n), v, p)
        try:
            u = ml.colift_through_epi(raw, bare.cok(n + 1)[1])
            conns[n] = ml.lift_through_mono(u, bare.ker(n)[1])
        except ml.NoColift:
            raise DocumentError(p, "connector does not vanish on the image of h_{n+1}") from None
        except ml.NoLift:
            raise DocumentError(p, "connector does not land in Ker(h_n)") from None
    return SeqFamily(ring, lo, hi, maps, conns)


def parse_seq_morphism(ring: Ring, d, path="") -> SeqMor:
    X = parse_seq_family(ring, _need(d, "source", path), _sub(path, "source"))
    Y = parse_seq_family(ring, _need(d, "target", path), _sub(path, "target"))
    bars = {n: _map(ring, X.dom(n), Y.dom(n), v, _sub(_sub(path, "bars"), n))
            for n, v in _degree_map(d.get("bars"), _sub(path, "bars")).items()}
    unders = {n: _map(ring, X.cod(n), Y.cod(n), v, _sub(_sub(path, "unders"), n))
              for n, v in _degree_map(d.get("unders"), _sub(path, "unders")).items()}
    try:
        return SeqMor(X, Y, bars, unders)
    except (PreconditionError, ml.ShapeMismatch) as e:
        raise DocumentError(path, str(e)) from None


_PARSERS = {
    "complex": parse_complex,
    "complex_morphism": parse_chain_morphism,
    "arrow_morphism": parse_arr_morphism,
    "seq_family": parse_seq_family,
    "seq_morphism": parse_seq_morphism,
    "extension": parse_extension,
}


def parse_document(text: str) -> Document:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError("", f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(d, dict):
        raise DocumentError("", "expected a JSON object")
    ring = parse_ring(_need(d, "ring", ""))
    kind = _need(d, "kind", "")
    if kind not in _PARSERS:
        raise DocumentError("kind", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    try:
        obj = _PARSERS[kind](ring, d, "")
    except DocumentError:
        raise
    except ml.ExactLinError as e:
        raise DocumentError("", str(e)) from None
    return Document(ring, kind, obj)


# ---------------------------------------------------------------------------
# serialization

def ring_json(ring: Ring):
    if ring.tag == "Fp":
        return {"Fp": ring.p}
    return ring.tag


def scalar_json(ring: Ring, x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return int(x)


def matrix_json(A: ExactMatrix):
    return [[scalar_json(A.ring, x) for x in row] for row in A.data]


def module_json(M: FpModule):
    if not M.relations.rows:
        return M.ngens
    return {"rank": M.ngens, "relations": matrix_json(M.relations)}


def complex_json(C: Complex) -> dict:
    if C.lo > C.hi:
        return {"support": [0, -1]}
    out = {"support": [C.lo, C.hi], "ranks": {str(n): C.C(n).ngens for n in range(C.lo, C.hi + 1)}}
    rels = {str(n): matrix_json(C.C(n).relations) for n in range(C.lo, C.hi + 1) if C.C(n).relations.rows}
    if rels:
        out["modules"] = rels
    out["differentials"] = {str(n): matrix_json(C.d(n).matrix) for n in range(C.lo + 1, C.hi + 1)}
    return out


def _chain_maps_json(f: ChainMor):
    return {str(n): matrix_json(f.g(n).matrix) for n in f.source.degrees(f.target)
            if f.source.C(n).ngens and f.target.C(n).ngens}


def arr_obj_json(X: ArrObj):
    return {"top": module_json(X.top), "bottom": module_json(X.bottom), "arrow": matrix_json(X.arrow.matrix)}


def seq_family_json(h: SeqFamily) -> dict:
    if h.lo > h.hi:
        return {"support": [0, -1]}
    levels = {str(n): {"dom": module_json(h.dom(n)), "cod": module_json(h.cod(n)), "map": matrix_json(h.h(n).matrix)}
              for n in range(h.lo, h.hi + 1)}
    conns = {}
    for n in range(h.lo - 1, h.hi + 1):
        i = h.conn(n)
        if not ml.is_zero_map(i):
            raw = ml.compose_all(h.cok(n + 1)[1], i, h.ker(n)[1])
            conns[str(n)] = matrix_json(raw.matrix)
    out = {"support": [h.lo, h.hi], "levels": levels}
    if conns:
        out["connectors"] = conns
    return out


def serialize(ring: Ring, kind: str, obj) -> dict:
    out = {"ring": ring_json(ring), "kind": kind}
    if kind == "complex":
        out.update(complex_json(obj))
    elif kind == "complex_morphism":
        out.update(source=complex_json(obj.source), target=complex_json(obj.target), maps=_chain_maps_json(obj))
    elif kind == "arrow_morphism":
        out.update(source=arr_obj_json(obj.source), target=arr_obj_json(obj.target),
                   top=matrix_json(obj.top.matrix), bottom=matrix_json(obj.bottom.matrix))
    elif kind == "seq_family":
        out.update(seq_family_json(obj))
    elif kind == "seq_morphism":
        out.update(source=seq_family_json(obj.source), target=seq_family_json(obj.target),
                   bars={str(n): matrix_json(obj.bar(n).matrix) for n in obj.window},
                   unders={str(n): matrix_json(obj.under(n).matrix) for n in obj.window})
    elif kind == "extension":
        out.update(A=complex_json(obj.A), B=complex_json(obj.B), C=complex_json(obj.C),
                   f=_chain_maps_json(obj.f), g=_chain_maps_json(obj.g))
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return out


def dumps(ring: Ring, kind: str, obj) -> str:
    return json.dumps(serialize(ring, kind, obj), indent=1, ensure_ascii=False)
