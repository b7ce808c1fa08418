"""Named verification checks shared by the command line and the test-suite.

Every check returns a list of failure messages; an empty list means pass.
Checks that need random data take a ``GenConfig`` and an instance index.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Optional

from . import modules as ml
from .arrcat import ArrCategory, ArrMor, ArrNull, ArrObj, snail_matches_generic
from .chaincx import (
    ChainMor, Complex, check_F_whisker, functor_F, functor_F_on_morphism, functor_F_on_nullhomotopy, h_F,
    homology, long_homology_sequence, reduced_interchange_counterexample,
)
from .classical import Extension, compare_with_snail, sigma_quasi_iso
from .genrand import (
    GenConfig, LinearSystem, _arr_mor_system, _seq_mor_system, gen_chain_morphism, gen_chain_nullhomotopy,
    gen_cone, random_arr_mor, random_arr_null, random_arr_obj, random_hom, random_seq_family, random_seq_mor,
    random_seq_null, rng_for,
)
from .homotopy import (
    ConstructionError, HomotopyCategory, KernelTriple, build_snail, check_reduced_interchange, check_strong_zero,
    check_whisker_axioms, checked_factor, checked_strong, delta_is_categorical_kernel, snail_composites_zero,
    verify_snail_exactness,
)
from .matrix import ExactMatrix
from .modules import ModMap
from .seqfam import (
    NotIsoSeq, SeqCategory, SeqFamily, SeqMor, SeqNull, homology_of_family, is_isoseq, seq_snail_matches_generic,
    special_cases_match, unroll_long_sequence,
)

VERIFY_CHECKS = ("exactness", "universal", "interchange", "discreteness", "delta-kernel", "partkh", "functor-f")


def category_of(g) -> HomotopyCategory:
    if isinstance(g, ArrMor):
        return ArrCategory(g.top.ring)
    if isinstance(g, SeqMor):
        return SeqCategory(g.source.ring)
    raise TypeError(f"no homotopy category for {type(g).__name__}")


# ---------------------------------------------------------------------------
# random data matching an instance

def _random_obj(rng, cfg, like):
    if isinstance(like, ArrObj):
        return random_arr_obj(rng, cfg)
    lo = like.lo if like.lo <= like.hi else None
    return random_seq_family(rng, cfg, lo=lo)


def _random_mor(rng, cfg, X, Y):
    if isinstance(X, ArrObj):
        return random_arr_mor(rng, cfg, X, Y)
    return random_seq_mor(rng, cfg, X, Y)


def _random_null(rng, cfg, X, Y):
    if isinstance(X, ArrObj):
        return random_arr_null(rng, cfg, X, Y)
    return random_seq_null(rng, cfg, X, Y)


# ---------------------------------------------------------------------------
# nullhomotopy laws

def check_interchange(g, cfg: GenConfig, index: int = 0, trials: int = 1) -> List[str]:
    """Whiskering axioms, zero laws and reduced interchange around ``g: X -> Y``."""
    B = category_of(g)
    X, Y = g.source, g.target
    rng = rng_for(cfg, "check.interchange", index)
    fails = []
    for t in range(trials):
        W, Z = _random_obj(rng, cfg, X), _random_obj(rng, cfg, Y)
        alpha = _random_null(rng, cfg, X, Y)
        beta = _random_null(rng, cfg, Y, Z)
        if not check_reduced_interchange(B, alpha, beta):
            fails.append(f"trial {t}: reduced interchange fails")
        f = _random_mor(rng, cfg, W, X)
        h = _random_mor(rng, cfg, Y, Z)
        f2 = _random_mor(rng, cfg, _random_obj(rng, cfg, X), W)
        h2 = _random_mor(rng, cfg, Z, _random_obj(rng, cfg, Y))
        if not check_whisker_axioms(B, f2, f, alpha, h, h2):
            fails.append(f"trial {t}: whiskering is not associative or unital")
        if not check_strong_zero(B, f, g, h, alpha):
            fails.append(f"trial {t}: zero laws fail")
    return fails


# ---------------------------------------------------------------------------
# universal property of homotopy kernels, with an independent second route

def solve_factorization(f, phi, K: KernelTriple):
    """Solve ``u . n_g == f``, ``u o nu_g == phi`` as a linear system.

    Returns ``(u, unique)``; ``u`` is ``None`` when the system has no solution.
    """
    N, X = K.obj, K.g.source
    A = f.source
    ring = N.ring if isinstance(N, SeqFamily) else N.top.ring
    sys = LinearSystem(ring)
    if isinstance(A, ArrObj):
        t, b = _arr_mor_system(sys, A, N)
        sys.congruence([(None, t, K.n.top.matrix)], X.top, f.top.matrix)
        sys.congruence([(None, b, K.n.bottom.matrix)], X.bottom, f.bottom.matrix)
        sys.congruence([(None, b, K.nu.diag.matrix)], K.g.target.top, phi.diag.matrix)
        sol = sys.solve()
        if sol is None:
            return None, False
        u = ArrMor(A, N, ModMap(A.top, N.top, sol[t]), ModMap(A.bottom, N.bottom, sol[b]))
        unique = all(ml.is_zero_map(ModMap(A.top, N.top, h[t], check=False))
                     and ml.is_zero_map(ModMap(A.bottom, N.bottom, h[b], check=False)) for h in sys.homogeneous())
        return u, unique
    bars, unders = _seq_mor_system(sys, A, N)
    Y = K.g.target
    for n in bars:
        sys.congruence([(None, bars[n], K.n.bar(n).matrix)], X.dom(n), f.bar(n).matrix)
        sys.congruence([(None, unders[n], K.n.under(n).matrix)], X.cod(n), f.under(n).matrix)
        sys.congruence([(None, unders[n], K.nu.lam(n).matrix)], Y.dom(n), phi.lam(n).matrix)
    sol = sys.solve()
    if sol is None:
        return None, False
    u = SeqMor(A, N, {n: ModMap(A.dom(n), N.dom(n), sol[k]) for n, k in bars.items()},
               {n: ModMap(A.cod(n), N.cod(n), sol[k]) for n, k in unders.items()})
    unique = all(all(ml.is_zero_map(ModMap(A.dom(n), N.dom(n), h[k], check=False)) for n, k in bars.items())
                 and all(ml.is_zero_map(ModMap(A.cod(n), N.cod(n), h[k], check=False)) for n, k in unders.items())
                 for h in sys.homogeneous())
    return u, unique


def solve_strong(f, phi, K: KernelTriple):
    """Solve for ``phi'`` on ``f`` with ``phi' o n_g == phi``; returns ``(phi', unique)``."""
    N, X = K.obj, K.g.source
    A = f.source
    ring = X.top.ring if isinstance(X, ArrObj) else X.ring
    sys = LinearSystem(ring)
    if isinstance(A, ArrObj):
        d = sys.hom(A.bottom, N.top)
        sys.congruence([(A.arrow.matrix, d, None)], N.top, f.top.matrix)
        sys.congruence([(None, d, N.arrow.matrix)], N.bottom, f.bottom.matrix)
        sys.congruence([(None, d, K.n.top.matrix)], X.top, phi.diag.matrix)
        sol = sys.solve()
        if sol is None:
            return None, False
        out = ArrNull(f, ModMap(A.bottom, N.top, sol[d]))
        unique = all(ml.is_zero_map(ModMap(A.bottom, N.top, h[d], check=False)) for h in sys.homogeneous())
        return out, unique
    lams = {}
    for n in f.window:
        lams[n] = sys.hom(A.cod(n), N.dom(n))
        sys.congruence([(A.h(n).matrix, lams[n], None)], N.dom(n), f.bar(n).matrix)
        sys.congruence([(None, lams[n], N.h(n).matrix)], N.cod(n), f.under(n).matrix)
        sys.congruence([(None, lams[n], K.n.bar(n).matrix)], X.dom(n), phi.lam(n).matrix)
    sol = sys.solve()
    if sol is None:
        return None, False
    out = SeqNull(f, {n: ModMap(A.cod(n), N.dom(n), sol[k]) for n, k in lams.items()})
    unique = all(all(ml.is_zero_map(ModMap(A.cod(n), N.dom(n), h[k], check=False)) for n, k in lams.items())
                 for h in sys.homogeneous())
    return out, unique


def check_universal(g, cfg: GenConfig, index: int = 0, trials: int = 1) -> List[str]:
    """Factorization through ``N(g)`` and the strong clause on random cones, each solved two ways."""
    B = category_of(g)
    K = B.kernel_of(g)
    fails = []
    for t in range(trials):
        idx = index * max(trials, 1) + t
        f, phi = gen_cone(cfg, K, idx)
        try:
            u = checked_factor(B, f, phi, K)
        except ConstructionError as e:
            fails.append(f"cone {t}: {e}")
            continue
        u2, unique = solve_factorization(f, phi, K)
        if u2 is None:
            fails.append(f"cone {t}: the defining equations have no solution")
        elif not B.maps_equal(u, u2):
            fails.append(f"cone {t}: two factorizations disagree")
        elif not unique:
            fails.append(f"cone {t}: factorization is not unique")
        f, phi = gen_cone(cfg, K, idx, strong=True)
        try:
            p = checked_strong(B, f, phi, K)
        except ConstructionError as e:
            fails.append(f"strong cone {t}: {e}")
            continue
        p2, unique = solve_strong(f, phi, K)
        if p2 is None:
            fails.append(f"strong cone {t}: the defining equations have no solution")
        elif not B.nulls_equal(p, p2):
            fails.append(f"strong cone {t}: two strong factorizations disagree")
        elif not unique:
            fails.append(f"strong cone {t}: strong factorization is not unique")
    return fails


# ---------------------------------------------------------------------------
# snail sequence

def _snail(g):
    B = category_of(g)
    try:
        return B, build_snail(B, g), None
    except ConstructionError as e:
        return B, None, str(e)


def check_snail(g) -> List[str]:
    """Construction steps, zero composites and agreement with the explicit sequence."""
    B, res, err = _snail(g)
    if err:
        return [err]
    fails = [f"composite {i} is not zero" for i, z in enumerate(snail_composites_zero(B, res)) if not z]
    if isinstance(g, ArrMor):
        fails += snail_matches_generic(g, res).failures
    else:
        fails += seq_snail_matches_generic(g, res)
    return fails


def check_exactness(g) -> List[str]:
    """The four middle checkpoints; for isosequentiable ends also the pasted long sequence."""
    B, res, err = _snail(g)
    if err:
        return [err]
    fails = verify_snail_exactness(B, res).failures()
    if isinstance(g, SeqMor):
        L = unroll_long_sequence(g)
        if is_isoseq(g.source) and is_isoseq(g.target):
            fails += [f"long sequence not exact at {L.labels[i + 1]}" for i, ok in enumerate(L.exact_points()) if not ok]
        for n, row in L.row_exactness().items():
            if not all(row):
                fails.append(f"row {n} of the long sequence is not exact")
    return fails


def check_discreteness(g) -> List[str]:
    B, res, err = _snail(g)
    if err:
        return [err]
    names = ["N(0_N(g))", "N(0_X)", "N(0_Y)", "π₀(N(g))", "π₀(X)", "π₀(Y)"]
    return [f"{nm} is not discrete" for nm, obj in zip(names, res.objects) if not B.is_discrete(obj)]


def check_delta_kernel(g, cfg: Optional[GenConfig] = None, index: int = 0) -> List[str]:
    B, res, err = _snail(g)
    if err:
        return [err]
    cones = []
    if cfg is not None:
        # a random arrow into the ordinary kernel of n_g, pushed forward, is a test cone
        _, k = B.categorical_kernel(res.Kg.n)
        rng = rng_for(cfg, "check.delta", index)
        A = _random_obj(rng, cfg, k.source)
        cones.append(B.compose(_random_mor(rng, cfg, A, k.source), k))
    chk = delta_is_categorical_kernel(B, res, cones)
    return [] if chk.ok else [chk.reason]


def check_partkh(g) -> List[str]:
    fams = []
    for X in (g.source, g.target):
        if isinstance(X, ArrObj):
            X = SeqFamily(X.top.ring, 0, 0, {0: X.arrow})
        fams.append(X)
    return special_cases_match(fams[0]) + special_cases_match(fams[1])


# ---------------------------------------------------------------------------
# chain complexes

def check_homology(C: Complex) -> List[str]:
    """Chain-level homology against both descriptions through ``F(C)``."""
    fails = []
    FC = functor_F(C)
    if not is_isoseq(FC):
        fails.append("F(C) is not isosequentiable")
    lo, hi = (C.lo - 1, C.hi + 1) if C.lo <= C.hi else (0, 0)
    for n in range(lo, hi + 1):
        H = homology(C, n)
        K = FC.ker(n)[0]
        Q = FC.cok(n + 1)[0]
        if not (ml.modules_isomorphic(H, K) and ml.modules_isomorphic(H, Q)):
            fails.append(f"H_{n}: {ml.describe(H)} vs Ker {ml.describe(K)} vs Cok {ml.describe(Q)}")
    return fails


def check_functor_F(g: ChainMor, cfg: GenConfig, index: int = 0) -> List[str]:
    """``F`` preserves whiskering of random nullhomotopies around ``g``."""
    B, C = g.source, g.target
    fails = []
    phi = gen_chain_nullhomotopy(cfg, B, C, index)
    f = gen_chain_morphism(cfg, B, B, index)
    h = gen_chain_morphism(cfg, C, C, index)
    if not is_isoseq(functor_F(B)) or not is_isoseq(functor_F(C)):
        fails.append("F does not land in isosequentiable families")
    for a, b in ((f, h), (None, h), (f, None), (None, None)):
        if not check_F_whisker(a, phi, b):
            fails.append("F(f o phi o h) != F(f) o F(phi) o F(h)")
            break
    if not SeqCategory(B.ring).maps_equal(functor_F_on_morphism(f.then(g)),
                                          SeqCategory(B.ring).compose(functor_F_on_morphism(f),
                                                                      functor_F_on_morphism(g))):
        fails.append("F does not preserve composition")
    return fails


def check_negative_control(g: ChainMor, phi) -> List[str]:
    """Interchange fails in chain complexes for nonzero ``g`` yet holds after ``F``."""
    if g.is_zero():
        return []
    w = reduced_interchange_counterexample(g, phi)
    fails = []
    if ml.maps_equal(w.lhs, w.rhs):
        fails.append("witness does not violate interchange")
    if not w.seq_interchange_holds:
        fails.append("interchange fails in Seq after F")
    return fails


def check_longseq(g: ChainMor) -> List[str]:
    L = long_homology_sequence(g)
    return [f"not exact at {L.labels[i + 1]}" for i, ok in enumerate(L.exact_points()) if not ok]


def check_compare(e: Extension, quasi_iso: bool = True) -> List[str]:
    r = compare_with_snail(e)
    fails = list(r.failures)
    if quasi_iso and not sigma_quasi_iso(e):
        fails.append("sigma is not a quasi-isomorphism")
    return fails


def check_seq_homology(h: SeqFamily) -> List[str]:
    fails = []
    for n in h.window():
        try:
            homology_of_family(h, n)
        except NotIsoSeq as e:
            fails.append(str(e))
    return fails


def applicable_checks(kind: str) -> List[str]:
    """Verify checks that make sense for a document kind; functor-f needs chain data."""
    if kind in ("complex", "complex_morphism", "extension"):
        return list(VERIFY_CHECKS)
    return [c for c in VERIFY_CHECKS if c != "functor-f"]


def run_checks(obj, kind: str, names, cfg: GenConfig, index: int = 0) -> Dict[str, List[str]]:
    """Dispatch the named ``verify`` checks on a parsed document."""
    out: Dict[str, List[str]] = {}
    g = obj
    if kind == "complex_morphism":
        g = functor_F_on_morphism(obj)
    elif kind == "extension":
        g = functor_F_on_morphism(obj.g)
    for name in names:
        if name == "functor-f":
            if kind == "complex_morphism":
                out[name] = check_functor_F(obj, cfg, index)
            elif kind == "extension":
                out[name] = check_functor_F(obj.g, cfg, index) + check_functor_F(obj.f, cfg, index)
            elif kind == "complex":
                from .chaincx import chain_identity
                out[name] = check_functor_F(chain_identity(obj), cfg, index)
            else:
                raise ValueError(f"functor-f needs a complex, a complex morphism or an extension, not {kind}")
            continue
        if kind in ("complex", "seq_family"):
            X = functor_F(obj) if kind == "complex" else obj
            g = SeqCategory(X.ring).identity(X)
        fn: Callable = {
            "exactness": lambda: check_exactness(g),
            "universal": lambda: check_universal(g, cfg, index, trials=3),
            "interchange": lambda: check_interchange(g, cfg, index, trials=3),
            "discreteness": lambda: check_discreteness(g),
            "delta-kernel": lambda: check_delta_kernel(g, cfg, index),
            "partkh": lambda: check_partkh(g),
        }[name]
        out[name] = fn()
    return out
