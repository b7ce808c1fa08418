"""Generator determinism and basic shape guarantees.

The golden file was written once by running this module as a script:
``python3 tests/test_genrand.py``.
"""

import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from snailhom import modules as ml
from snailhom.chaincx import chain_maps_equal, chain_identity
from snailhom.docio import serialize
from snailhom.genrand import (
    GenConfig, LinearSystem, gen_arr_morphism, gen_chain_morphism, gen_chain_nullhomotopy, gen_complex, gen_cone,
    gen_extension, gen_seq_morphism, random_hom, random_module, rng_for,
)
from snailhom.matrix import ExactMatrix
from snailhom.ring import GF, QQ, ZZ
from snailhom.suites import category_of

GOLDEN = Path(__file__).parent / "golden" / "genrand.json"
RINGS = {"Z": ZZ, "Q": QQ, "F5": GF(5)}


def golden_cases():
    out = {}
    for tag, ring in RINGS.items():
        cfg = GenConfig(seed=1, ring=ring)
        for i in range(3):
            C = gen_complex(cfg, i)
            out[f"complex/{tag}/{i}"] = serialize(ring, "complex", C)
            out[f"chain/{tag}/{i}"] = serialize(ring, "complex_morphism", gen_chain_morphism(cfg, C, C, i))
            out[f"extension/{tag}/{i}"] = serialize(ring, "extension", gen_extension(cfg, i))
            out[f"arrow/{tag}/{i}"] = serialize(ring, "arrow_morphism", gen_arr_morphism(cfg, i))
            out[f"seq/{tag}/{i}"] = serialize(ring, "seq_morphism", gen_seq_morphism(cfg, i))
    return json.loads(json.dumps(out))


def test_golden_stream():
    expected = json.loads(GOLDEN.read_text())
    got = golden_cases()
    assert sorted(got) == sorted(expected)
    for key in expected:
        assert got[key] == expected[key], key


def test_same_stream_in_fresh_process():
    code = ("import json, sys; sys.path.insert(0, %r); from test_genrand import golden_cases; "
            "print(json.dumps(golden_cases(), sort_keys=True))" % str(Path(__file__).parent))
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True).stdout
    assert json.loads(out) == golden_cases()


def test_streams_are_independent_of_order():
    cfg = GenConfig(seed=5)
    late = serialize(ZZ, "arrow_morphism", gen_arr_morphism(cfg, 7))
    for i in range(7):
        gen_arr_morphism(cfg, i)
    assert serialize(ZZ, "arrow_morphism", gen_arr_morphism(cfg, 7)) == late


def test_config_validation():
    with pytest.raises(ValueError):
        GenConfig(entry_bound=-1)
    with pytest.raises(ValueError):
        GenConfig(degenerate=2)
    assert GenConfig(seed=3).with_(count=4).count == 4


def test_width_zero_gives_zero_complex():
    C = gen_complex(GenConfig(seed=2, support_width=0), 0)
    assert all(ml.is_zero_module(C.C(n)) for n in range(-3, 4))


def test_entry_bound_zero_gives_zero_differentials():
    for i in range(5):
        C = gen_complex(GenConfig(seed=2, entry_bound=0), i)
        assert all(ml.is_zero_map(C.d(n)) for n in C.degrees())


def test_identity_and_zero_morphisms():
    cfg = GenConfig(seed=4)
    C = gen_complex(cfg, 0)
    assert chain_maps_equal(gen_chain_morphism(cfg, C, C, 0, kind="identity"), chain_identity(C))
    assert gen_chain_morphism(cfg, C, C, 0, kind="zero").is_zero()


def test_extension_kinds():
    cfg = GenConfig(seed=8)
    assert gen_extension(cfg, 0, kind="zero").A.lo > gen_extension(cfg, 0, kind="zero").A.hi
    e = gen_extension(cfg, 1, kind="scalar")
    for n in e.B.degrees():
        assert ml.maps_equal(e.f.g(n), ml.identity(e.A.C(n)).scale(2))
    e = gen_extension(cfg, 2, kind="split")
    assert e.failed_degree() is None


def test_linear_system_solutions():
    sys_ = LinearSystem(ZZ)
    x = sys_.unknown(1, 1)
    sys_.equation([(ExactMatrix.from_rows(ZZ, [[2]]), x, None)], 1, 1, ExactMatrix.from_rows(ZZ, [[6]]))
    sol = sys_.solve()
    assert sol[x] == ExactMatrix.from_rows(ZZ, [[3]])
    assert list(sys_.homogeneous()) == []


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**63 - 1), st.sampled_from(list(RINGS.values())))
def test_generated_objects_are_valid(seed, ring):
    cfg = GenConfig(seed=seed, ring=ring)
    rng = rng_for(cfg, "test", 0)
    M, N = random_module(rng, cfg), random_module(rng, cfg)
    random_hom(rng, cfg, M, N)
    B, C = gen_complex(cfg, 0), gen_complex(cfg, 1)
    gen_chain_morphism(cfg, B, C, 0)
    phi = gen_chain_nullhomotopy(cfg, B, C, 0)
    assert phi.failed_degree() is None
    assert gen_extension(cfg, 0).failed_degree() is None
    for g in (gen_arr_morphism(cfg, 0), gen_seq_morphism(cfg, 0)):
        B_ = category_of(g)
        K = B_.kernel_of(g)
        f, nu = gen_cone(cfg, K, 0)
        assert B_.check_null(nu, B_.compose(f, g))
        f, nu = gen_cone(cfg, K, 0, strong=True)
        assert B_.check_null(nu, B_.compose(f, K.n))


if __name__ == "__main__":
    GOLDEN.write_text(json.dumps(golden_cases(), indent=1, sort_keys=True) + "\n")
