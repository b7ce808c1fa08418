import pytest
from hypothesis import given, settings, strategies as st

from snailhom import modules as ml
from snailhom.arrcat import ArrCategory, ArrMor, ArrNull, ArrObj
from snailhom.genrand import GenConfig, gen_arr_morphism, gen_cone, gen_seq_morphism, rng_for
from snailhom.homotopy import (
    PreconditionError, build_snail, cancellation_equal, check_condition_sub, check_exact_discrete, check_s_exact,
    check_s_global, check_s_proper, check_strong_zero, check_whisker_axioms, delta_is_categorical_kernel,
    induced_kernel_arrow, induced_kernel_nullhomotopy, pi0_of, snail_composites_zero, verify_snail_exactness,
)
from snailhom.modules import FpModule
from snailhom.ring import GF, QQ, ZZ
from snailhom.seqfam import SeqCategory
from snailhom.suites import (_random_mor, _random_null, _random_obj, category_of, check_interchange,
                             check_universal, solve_factorization, solve_strong)

from helpers import cyclic, free, mp, quot, scalar_map

A = ArrCategory(ZZ)
RINGS = [ZZ, QQ, GF(5)]


def discrete(M):
    return ArrObj(ml.zero_map(FpModule.zero(M.ring), M))


def dmap(X, Y, f):
    return ArrMor(X, Y, ml.zero_map(X.top, Y.top), f)


def gen(kind, cfg, i):
    if kind == "arr":
        return gen_arr_morphism(cfg, i)
    return gen_seq_morphism(cfg, i, isoseq=(kind == "isoseq"))


# exactness at a point ---------------------------------------------------

def test_s_exact_multiplication_maps():
    Z, Z2 = discrete(free(1)), discrete(cyclic(2))
    g = dmap(Z, Z2, quot())
    assert check_exact_discrete(A, dmap(Z, Z, scalar_map(free(1), 2)), g).exact
    assert not check_exact_discrete(A, dmap(Z, Z, scalar_map(free(1), 4)), g).exact


def test_s_exact_mono():
    Z = discrete(free(1))
    f = A.zero_map(A.zero_object(), Z)
    g = dmap(Z, Z, scalar_map(free(1), 2))
    e = check_s_exact(A, f, A.star(A.zero_object(), Z), g)
    assert e.exact


def test_s_exact_kernel_at_itself():
    g = gen_arr_morphism(GenConfig(seed=3), 0)
    K = A.kernel_of(g)
    e = check_s_exact(A, K.n, K.nu, g)
    assert e.exact and A.maps_equal(e.sigma, A.identity(K.obj))


def test_s_exact_rejects_bad_null():
    Z = ArrObj(ml.identity(free(1)))
    f = A.identity(Z)
    with pytest.raises(PreconditionError):
        check_s_exact(A, f, A.star(Z, Z), f)


# condition (Sub) --------------------------------------------------------

def test_condition_sub_snake_square():
    Z = free(1)
    # g projects Z^2 onto the first factor, x kills that factor, y = 0
    X0 = free(2)
    g = mp(X0, Z, [[1], [0]])
    x = mp(X0, X0, [[0, 0], [0, 1]])
    y = ml.zero_map(Z, Z)
    assert check_condition_sub(g, g, x, y)


def test_condition_sub_degenerate():
    z = FpModule.zero(ZZ)
    i = ml.identity(z)
    assert check_condition_sub(i, i, i, i)


def test_condition_sub_guard():
    Z = free(1)
    two = scalar_map(Z, 2)
    with pytest.raises(PreconditionError):
        check_condition_sub(two, two, ml.identity(Z), ml.identity(Z))


# induced arrows --------------------------------------------------------

def test_induced_kernel_arrow_identity_square():
    g = gen_arr_morphism(GenConfig(seed=5), 2)
    K = A.kernel_of(g)
    idX, idY = A.identity(g.source), A.identity(g.target)
    n = induced_kernel_arrow(A, idX, idY, K, K)
    assert A.maps_equal(n, A.identity(K.obj))


def test_induced_kernel_arrow_zero_target():
    Y = ArrObj(ml.identity(free(1)))
    K0 = A.kernel_of(A.initial(Y))
    # N(0 -> Y) for Y = (Z, id, Z) is the zero object, so n(g, g') is zero
    assert ml.is_zero_module(K0.obj.top) and ml.is_zero_module(K0.obj.bottom)
    X = ArrObj(quot())
    KX = A.kernel_of(A.initial(X))
    f = ArrMor(X, Y, ml.zero_map(X.top, Y.top), ml.zero_map(X.bottom, Y.bottom))
    z = A.zero_object()
    assert A.is_zero_arrow(induced_kernel_arrow(A, A.identity(z), f, KX, K0))


def test_induced_kernel_arrow_needs_commuting_square():
    Z = ArrObj(ml.identity(free(1)))
    f = A.identity(Z)
    K = A.kernel_of(f)
    two = ArrMor(Z, Z, scalar_map(free(1), 2), scalar_map(free(1), 2))
    with pytest.raises(PreconditionError):
        induced_kernel_arrow(A, f, two, K, K)


def test_induced_nullhomotopy_star_case():
    Z = free(1)
    X = ArrObj(ml.identity(Z))
    z = A.zero_object()
    K0 = A.kernel_of(A.initial(X))
    phi = ArrNull(A.identity(X), ml.identity(Z))
    ngg, npsi = induced_kernel_nullhomotopy(
        A, A.star_terminal(K0.obj), phi, A.identity(z), A.identity(X), K0, K0)
    assert A.maps_equal(ngg, A.identity(K0.obj))
    assert A.nulls_equal(npsi, A.star(K0.obj, K0.obj))


# pi0, discreteness ------------------------------------------------------

@pytest.mark.parametrize("kind", ["arr", "seq"])
def test_pi0_and_kernels_of_zero_are_discrete(kind):
    cfg = GenConfig(seed=17)
    for i in range(6):
        g = gen(kind, cfg, i)
        B = category_of(g)
        for Y in (g.source, g.target):
            assert B.is_discrete(pi0_of(B, Y).obj)
            assert B.is_discrete(B.kernel_of(B.initial(Y)).obj)
            assert check_s_proper(B, Y) and check_s_global(B, Y)


def test_discrete_target_kernel_is_ordinary():
    # for a discrete codomain the homotopy kernel and ordinary kernel agree
    cfg = GenConfig(seed=2)
    for i in range(8):
        g = gen_arr_morphism(cfg, i)
        D = pi0_of(A, g.target)
        h = A.compose(g, D.eta)
        K = A.kernel_of(h)
        Kc, k = A.categorical_kernel(h)
        u = A.lift_through_mono(K.n, k)
        assert ml.is_iso(u.top) and ml.is_iso(u.bottom)


# laws on random data ----------------------------------------------------

@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["arr", "seq"]), st.sampled_from(RINGS))
def test_whisker_axioms_random(seed, kind, ring):
    cfg = GenConfig(seed=seed, ring=ring, count=1)
    g = gen(kind, cfg, 0)
    B = category_of(g)
    rng = rng_for(cfg, "test.whisker", 0)
    X, Y = g.source, g.target
    phi = _random_null(rng, cfg, X, Y)
    W = _random_obj(rng, cfg, X)
    V = _random_obj(rng, cfg, X)
    Z = _random_obj(rng, cfg, Y)
    U = _random_obj(rng, cfg, Y)
    f2, f = _random_mor(rng, cfg, V, W), _random_mor(rng, cfg, W, X)
    h, h2 = _random_mor(rng, cfg, Y, Z), _random_mor(rng, cfg, Z, U)
    assert check_whisker_axioms(B, f2, f, phi, h, h2)
    assert check_strong_zero(B, f, _random_mor(rng, cfg, X, Y), h, phi)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["arr", "seq"]))
def test_interchange_suite(seed, kind):
    cfg = GenConfig(seed=seed)
    assert check_interchange(gen(kind, cfg, 0), cfg, 0, trials=2) == []


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["arr", "seq"]), st.sampled_from(RINGS))
def test_universal_suite(seed, kind, ring):
    cfg = GenConfig(seed=seed, ring=ring)
    assert check_universal(gen(kind, cfg, 0), cfg, 0, trials=2) == []


def test_independent_solver_agrees_on_kernel_itself():
    g = gen_arr_morphism(GenConfig(seed=8), 1)
    K = A.kernel_of(g)
    u, unique = solve_factorization(K.n, K.nu, K)
    assert unique and A.maps_equal(u, A.identity(K.obj))


@pytest.mark.parametrize("kind", ["arr", "seq"])
def test_strong_solver_agrees(kind):
    cfg = GenConfig(seed=31)
    for i in range(4):
        g = gen(kind, cfg, i)
        B = category_of(g)
        K = B.kernel_of(g)
        f, phi = gen_cone(cfg, K, i, strong=True)
        out, unique = solve_strong(f, phi, K)
        assert unique and B.nulls_equal(out, B.strong_factor(f, phi, K))


@pytest.mark.parametrize("kind", ["arr", "seq", "isoseq"])
def test_snail_composites_and_delta(kind):
    cfg = GenConfig(seed=23)
    for i in range(5):
        g = gen(kind, cfg, i)
        B = category_of(g)
        res = build_snail(B, g)
        assert all(snail_composites_zero(B, res))
        assert delta_is_categorical_kernel(B, res).ok
        assert verify_snail_exactness(B, res).exact


def test_cancellation():
    g = gen_arr_morphism(GenConfig(seed=4), 0)
    K = A.kernel_of(g)
    assert cancellation_equal(A, A.identity(K.obj), A.identity(K.obj), K)
    z = A.zero_map(K.obj, K.obj)
    if not A.is_zero_arrow(A.identity(K.obj)):
        assert not cancellation_equal(A, A.identity(K.obj), z, K)
