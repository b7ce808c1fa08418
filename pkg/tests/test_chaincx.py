import pytest
import sympy
from hypothesis import given, settings, strategies as st

from snailhom import modules as ml
from snailhom.chaincx import (
    ChainMor, ChainNull, Complex, NoWitness, chain_identity, chain_maps_equal, chain_null_from_diagonals,
    chain_zero, check_F_whisker, functor_F, functor_F_on_morphism, functor_F_on_nullhomotopy, homology,
    is_proper_complex, long_homology_sequence, reduced_interchange_counterexample, zero_complex,
)
from snailhom.genrand import GenConfig, gen_chain_morphism, gen_chain_nullhomotopy, gen_complex
from snailhom.homotopy import PreconditionError
from snailhom.modules import FpModule
from snailhom.ring import GF, QQ, ZZ
from snailhom.seqfam import SeqCategory, is_isoseq
from snailhom.suites import check_functor_F, check_homology, check_negative_control

from helpers import cyclic, degree0, free, quot, scalar_map, times2_complex

RINGS = [ZZ, QQ, GF(5)]


def contractible(ring=ZZ):
    Z = free(1, ring)
    return Complex(ring, 0, 1, {0: Z, 1: Z}, {1: ml.identity(Z)})


def contraction(C):
    return ChainNull(chain_identity(C), {0: ml.identity(C.C(0))})


def test_d_squared_checked():
    Z = free(1)
    with pytest.raises(PreconditionError):
        Complex(ZZ, 0, 2, {0: Z, 1: Z, 2: Z}, {1: ml.identity(Z), 2: ml.identity(Z)})


def test_chain_map_checked():
    C = times2_complex()
    with pytest.raises(PreconditionError):
        ChainMor(C, C, {0: ml.identity(C.C(0))})


def test_homology_times2():
    C = times2_complex()
    assert ml.describe(homology(C, 0)) == "Z/2"
    assert ml.is_zero_module(homology(C, 1))
    assert ml.is_zero_module(homology(C, 2))


def test_homology_trivial_cases():
    Z = zero_complex(ZZ)
    assert all(ml.is_zero_module(homology(Z, n)) for n in range(-2, 3))
    Q = free(1, QQ)
    C = Complex(QQ, 0, 1, {0: Q, 1: Q}, {1: ml.identity(Q)})
    assert all(ml.is_zero_module(homology(C, n)) for n in range(-1, 3))


def test_F_of_times2():
    F = functor_F(times2_complex())
    assert ml.describe(F.dom(1)) == "Z" and ml.describe(F.cod(1)) == "Z"
    assert F.h(1).matrix[0, 0] == 2
    assert ml.describe(F.dom(0)) == "Z/2" and ml.is_zero_module(F.cod(0))
    assert ml.is_iso(F.conn(0))
    assert ml.describe(F.ker(0)[0]) == "Z/2"


def test_F_of_zero_complex():
    F = functor_F(zero_complex(ZZ))
    assert list(F.window()) == []


def test_F_of_degree0():
    M = FpModule.from_invariants(ZZ, [3], 1)
    C = degree0(M)
    F = functor_F(C)
    assert ml.modules_isomorphic(F.ker(0)[0], M)
    assert is_isoseq(F)
    assert ml.modules_isomorphic(F.cok(1)[0], M)


def test_F_on_morphisms():
    C = times2_complex()
    S = SeqCategory(ZZ)
    F = functor_F(C)
    assert S.maps_equal(functor_F_on_morphism(chain_identity(C)), S.identity(F))
    assert S.is_zero_arrow(functor_F_on_morphism(chain_zero(C, C)))
    g = ChainMor(degree0(free(1)), degree0(cyclic(2)), {0: quot()})
    Fg = functor_F_on_morphism(g)
    assert ml.is_regular_epi(Fg.bar(0)) and ml.describe(Fg.bar(0).target) == "Z/2"


def test_F_on_zero_nullhomotopy():
    C = times2_complex()
    phi = ChainNull(chain_zero(C, C), {})
    Fphi = functor_F_on_nullhomotopy(phi)
    assert all(ml.is_zero_map(Fphi.lam(n)) for n in Fphi.mor.window)


def test_F_on_two_term_nullhomotopy():
    C = times2_complex()
    # phi_0 = id: C_0 -> C_1 makes g = phi . d + d . phi
    phi = chain_null_from_diagonals(C, C, {0: ml.identity(C.C(0))})
    assert ml.maps_equal(phi.mor.g(0), scalar_map(free(1), 2))
    assert ml.maps_equal(phi.mor.g(1), scalar_map(free(1), 2))
    Fphi = functor_F_on_nullhomotopy(phi)
    Fg = Fphi.mor
    for n in Fg.window:
        assert ml.is_zero_map(Fg.K(n)) and ml.is_zero_map(Fg.C(n))


def test_F_on_contraction():
    C = contractible()
    Fphi = functor_F_on_nullhomotopy(contraction(C))
    S = SeqCategory(ZZ)
    assert S.maps_equal(Fphi.mor, S.identity(functor_F(C)))
    for n in Fphi.mor.window:
        assert ml.is_zero_map(Fphi.mor.K(n)) and ml.is_zero_map(Fphi.mor.C(n))


def test_interchange_counterexample_contractible():
    C = contractible()
    w = reduced_interchange_counterexample(chain_identity(C), contraction(C))
    assert not ml.maps_equal(w.lhs, w.rhs)
    assert w.seq_interchange_holds


def test_interchange_counterexample_needs_nonzero():
    C = contractible()
    with pytest.raises(NoWitness):
        reduced_interchange_counterexample(chain_zero(C, C), ChainNull(chain_zero(C, C), {}))


def test_proper_complexes():
    assert is_proper_complex(times2_complex())
    assert is_proper_complex(zero_complex(ZZ))
    cfg = GenConfig(seed=21, ring=GF(5))
    assert all(is_proper_complex(gen_complex(cfg, i)) for i in range(5))


def test_long_homology_sequence_quotient():
    g = ChainMor(degree0(free(1)), degree0(cyclic(2)), {0: quot()})
    L = long_homology_sequence(g)
    assert L.describe()[3:8] == ["0", "Z", "Z", "Z/2", "0"]
    assert L.is_exact()


def test_long_homology_sequence_identity():
    C = gen_complex(GenConfig(seed=5), 1)
    L = long_homology_sequence(chain_identity(C))
    assert L.is_exact()
    assert all(ml.is_zero_module(L.objects[i]) for i in range(1, len(L.objects), 3))


def test_acyclic_iff_kernel_of_initial_isoseq():
    S = SeqCategory(ZZ)
    for C, acyclic in ((contractible(), True), (times2_complex(), False)):
        F = functor_F(C)
        assert is_isoseq(S.kernel_of(S.initial(F)).obj) == acyclic


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(RINGS))
def test_homology_two_ways_random(seed, ring):
    C = gen_complex(GenConfig(seed=seed, ring=ring), 0)
    assert check_homology(C) == []


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([QQ, GF(5), GF(7)]))
def test_homology_rank_oracle(seed, ring):
    # over a field, dim H_n = dim C_n - rank d_n - rank d_{n+1}
    C = gen_complex(GenConfig(seed=seed, ring=ring), 0, free_only=True)

    def rank(d):
        if d.matrix.rows == 0 or d.matrix.cols == 0:
            return 0
        M = sympy.Matrix(d.matrix.to_lists())
        if ring.tag == "Fp":
            from sympy.polys.matrices import DomainMatrix
            return DomainMatrix.from_Matrix(M).convert_to(sympy.GF(ring.p)).rank()
        return M.rank()

    for n in C.degrees():
        dim = C.C(n).ngens - rank(C.d(n)) - rank(C.d(n + 1))
        assert len(ml.invariants(homology(C, n))[0]) == 0
        assert ml.invariants(homology(C, n))[1] == dim


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(RINGS))
def test_F_whiskering_random(seed, ring):
    cfg = GenConfig(seed=seed, ring=ring)
    B = gen_complex(cfg, 0)
    C = gen_complex(cfg, 1)
    g = gen_chain_morphism(cfg, B, C, 0)
    assert check_functor_F(g, cfg, 0) == []


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(RINGS))
def test_negative_control_random(seed, ring):
    cfg = GenConfig(seed=seed, ring=ring)
    B, C = gen_complex(cfg, 0), gen_complex(cfg, 1)
    phi = gen_chain_nullhomotopy(cfg, B, C, 0)
    assert check_negative_control(phi.mor, phi) == []
    if not phi.mor.is_zero():
        w = reduced_interchange_counterexample(phi.mor, phi)
        assert not ml.maps_equal(w.lhs, w.rhs)


def test_F_whisker_identity():
    C = contractible()
    assert check_F_whisker(None, contraction(C), None)
    assert check_F_whisker(chain_identity(C), contraction(C), chain_zero(C, C))
