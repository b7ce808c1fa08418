"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as they
happen; they are also repeated in the terminal summary.
"""

import time

import pytest

from snailhom import modules as ml
from snailhom.arrcat import ArrCategory, ArrMor, ArrObj, explicit_snail_arr, snail_matches_generic
from snailhom.chaincx import (ChainMor, Complex, functor_F, functor_F_on_morphism, homology,
                              reduced_interchange_counterexample)
from snailhom.classical import compare_with_snail, comparison_sigma, sigma_quasi_iso
from snailhom.genrand import (GenConfig, gen_arr_morphism, gen_chain_morphism, gen_chain_nullhomotopy,
                              gen_complex, gen_extension, gen_seq_morphism, times_two_extension)
from snailhom.homotopy import build_snail, snail_composites_zero, verify_snail_exactness
from snailhom.modules import FpModule
from snailhom.ring import GF, QQ, ZZ
from snailhom.seqfam import is_isoseq, seq_snail_matches_generic, theta_kernel_seq, unroll_long_sequence
from snailhom.suites import (check_delta_kernel, check_exactness, check_functor_F, check_homology,
                             check_interchange, check_partkh, check_snail, check_universal)

RINGS = [ZZ, QQ, GF(5)]
RESULTS = {}


def report(ac, ok, detail):
    line = f"AC{ac:<2} {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[ac] = line
    print("\n" + line)
    return ok


def first(fails, limit=3):
    return "; ".join(fails[:limit])


def test_ac01_nullhomotopy_axioms_and_interchange():
    t0 = time.perf_counter()
    counts, fails = {}, []
    for kind in ("arr", "seq"):
        cfg = GenConfig(seed=101)
        for i in range(500):
            g = gen_arr_morphism(cfg, i) if kind == "arr" else gen_seq_morphism(cfg, i)
            fails += [f"{kind} {i}: {f}" for f in check_interchange(g, cfg, i)]
        counts[kind] = 500
    elapsed = time.perf_counter() - t0
    ok = not fails and elapsed < 60
    report(1, ok, f"Arr {counts['arr']} + Seq {counts['seq']} configurations, whisker laws and reduced "
                  f"interchange, {elapsed:.1f}s (budget 60s) {first(fails)}")
    assert not fails, first(fails)
    assert elapsed < 60


def test_ac02_kernel_universal_property():
    t0 = time.perf_counter()
    fails, cones = [], {}
    for kind in ("arr", "seq"):
        cfg = GenConfig(seed=202)
        n = 0
        for i in range(200):
            g = gen_arr_morphism(cfg, i) if kind == "arr" else gen_seq_morphism(cfg, i)
            fails += [f"{kind} {i}: {f}" for f in check_universal(g, cfg, i, trials=1)]
            n += 1
        cones[kind] = n
    elapsed = time.perf_counter() - t0
    ok = not fails
    report(2, ok, f"{cones['arr']} Arr + {cones['seq']} Seq cones, factorization and strong clause each "
                  f"solved two ways, {elapsed:.1f}s {first(fails)}")
    assert ok, first(fails)


def test_ac03_snail_construction():
    t0 = time.perf_counter()
    fails, total = [], 0
    for ring in RINGS:
        cfg = GenConfig(seed=303, ring=ring)
        for i in range(200):
            g = gen_arr_morphism(cfg, i)
            # build_snail asserts every step equation, including n(g).Delta = t_X.r_X.n_id
            fails += [f"{ring} {i}: {f}" for f in check_snail(g)]
            fails += [f"{ring} {i}: {f}" for f in check_delta_kernel(g, cfg, i)]
            total += 1
    # the connecting map of the explicit sequence on the quotient example is an isomorphism
    Z = FpModule.free(ZZ, 1)
    Y = ArrObj(ml.zero_map(FpModule.cyclic(ZZ, 2), FpModule.zero(ZZ)))
    g = ArrMor(ArrObj(ml.identity(Z)), Y, ml.ModMap(Z, Y.top, ml.identity(Z).matrix), ml.zero_map(Z, Y.bottom))
    ex = explicit_snail_arr(g)
    if not (ml.is_iso(ex.maps[2]) and snail_matches_generic(g).ok):
        fails.append("explicit delta_0 on the quotient example")
    elapsed = time.perf_counter() - t0
    ok = not fails
    report(3, ok, f"{total} Arr morphisms over Z, Q, F5: five zero composites, step-4 identity, "
                  f"Delta is a kernel, generic = explicit incl. delta_0, {elapsed:.1f}s {first(fails)}")
    assert ok, first(fails)


def _hand_examples():
    Z = FpModule.free(ZZ, 1)
    Z2 = FpModule.cyclic(ZZ, 2)
    z = FpModule.zero(ZZ)
    Y = ArrObj(ml.zero_map(Z2, z))
    g1 = ArrMor(ArrObj(ml.identity(Z)), Y, ml.ModMap(Z, Z2, ml.identity(Z).matrix), ml.zero_map(Z, z))
    X = ArrObj(ml.identity(Z).scale(2))
    g2 = ArrMor(X, X, ml.identity(Z), ml.identity(Z))
    return [(g1, ["0", "0", "Z/2", "Z/2", "0", "0"]), (g2, ["0", "0", "0", "0", "Z/2", "Z/2"])]


def test_ac04_snail_exactness():
    t0 = time.perf_counter()
    fails, total = [], 0
    for ring in RINGS:
        cfg = GenConfig(seed=404, ring=ring)
        for i in range(100):
            g = gen_arr_morphism(cfg, i)
            fails += [f"arr {ring} {i}: {f}" for f in check_exactness(g)]
            total += 1
        for i in range(30):
            g = gen_seq_morphism(cfg, i)
            fails += [f"seq {ring} {i}: {f}" for f in check_exactness(g)]
            total += 1
    A = ArrCategory(ZZ)
    for g, expected in _hand_examples():
        res = build_snail(A, g)
        got = [ml.describe(o.bottom) for o in res.objects]
        if got != expected:
            fails.append(f"hand example gives {got}")
        if not verify_snail_exactness(A, res).exact:
            fails.append(f"hand example {expected} not exact")
    elapsed = time.perf_counter() - t0
    ok = not fails
    report(4, ok, f"{total} fuzzed Arr/Seq instances S-exact at the four middle points; both hand examples "
                  f"reproduced, {elapsed:.1f}s {first(fails)}")
    assert ok, first(fails)


def test_ac05_seq_kernel_connectors():
    t0 = time.perf_counter()
    fails, total, conns = [], 0, 0
    for ring in RINGS:
        cfg = GenConfig(seed=505, ring=ring)
        for i in range(70):
            f = gen_seq_morphism(cfg, i, isoseq=(i % 2 == 1))
            kd = theta_kernel_seq(f)   # existence and uniqueness asserted while building
            for n, i_P in kd.iP.items():
                lhs = ml.compose(i_P, kd.Kpi[n])
                rhs = ml.compose(kd.Cpi[n + 1], f.source.conn(n))
                if not ml.maps_equal(lhs, rhs):
                    fails.append(f"{ring} {i}: degree {n} connector equation")
                conns += 1
            fails += [f"{ring} {i}: {x}" for x in check_partkh(f)]
            total += 1
    elapsed = time.perf_counter() - t0
    ok = not fails
    report(5, ok, f"{total} Seq morphisms, {conns} connectors i^P_n unique and satisfying their equation; "
                  f"special cases match, {elapsed:.1f}s {first(fails)}")
    assert ok, first(fails)


def test_ac06_long_sequence_exact():
    t0 = time.perf_counter()
    fails, total, nontrivial = [], 0, 0
    for ring in RINGS:
        cfg = GenConfig(seed=606, ring=ring)
        for i in range(100):
            f = gen_seq_morphism(cfg, i, isoseq=True)
            if not (is_isoseq(f.source) and is_isoseq(f.target)):
                fails.append(f"{ring} {i}: generator produced a non-isosequentiable family")
                continue
            L = unroll_long_sequence(f)
            bad = [L.labels[j + 1] for j, ok in enumerate(L.exact_points()) if not ok]
            if bad:
                fails.append(f"{ring} {i}: not exact at {bad}")
            if any(not ml.is_zero_map(m) for m in L.maps):
                nontrivial += 1
            total += 1
    elapsed = time.perf_counter() - t0
    ok = not fails
    report(6, ok, f"{total} isosequentiable morphisms ({nontrivial} with a nonzero map), pasted sequence exact "
                  f"at every point, {elapsed:.1f}s {first(fails)}")
    assert ok, first(fails)


def test_ac07_homology_agreement():
    t0 = time.perf_counter()
    fails, total = [], 0
    for ring in RINGS:
        cfg = GenConfig(seed=707, ring=ring)
        for i in range(200):
            fails += [f"{ring} {i}: {f}" for f in check_homology(gen_complex(cfg, i))]
            total += 1
    Z = FpModule.free(ZZ, 1)
    C = Complex(ZZ, 0, 1, {0: Z, 1: Z}, {1: ml.identity(Z).scale(2)})
    if ml.describe(homology(C, 0)) != "Z/2" or not ml.is_zero_module(homology(C, 1)):
        fails.append("times-two complex")
    elapsed = time.perf_counter() - t0
    ok = not fails
    report(7, ok, f"{total} complexes, H_n = Ker(h^F_n) = Cok(h^F_n+1) in every degree; times-two complex gives "
                  f"H_0 = Z/2, H_1 = 0, {elapsed:.1f}s {first(fails)}")
    assert ok, first(fails)


def test_ac08_classical_comparison():
    t0 = time.perf_counter()
    iso_fails, qi_fails, total = [], [], 0
    for ring in RINGS:
        cfg = GenConfig(seed=808, ring=ring)
        for i in range(100):
            e = gen_extension(cfg, i)
            r = compare_with_snail(e)
            if not r.ok:
                iso_fails.append(f"{ring} {i}: {first(r.failures, 1)}")
            if not sigma_quasi_iso(e):
                qi_fails.append(f"{ring} {i}")
            total += 1
    e = times_two_extension()
    r = compare_with_snail(e)
    if not (r.ok and [d for d in r.snail.describe() if d != "0"] == ["Z", "Z", "Z/2"] and sigma_quasi_iso(e)):
        iso_fails.append("times-two extension")
    elapsed = time.perf_counter() - t0
    ok = not iso_fails and not qi_fails and elapsed < 300
    report(8, ok, f"{total} extensions: long sequences isomorphic in {total - len(iso_fails)}/{total}; "
                  f"sigma quasi-iso in {total - len(qi_fails)}/{total}; times-two extension ok; "
                  f"{elapsed:.1f}s (budget 300s) {first(iso_fails)}"
                  + ("" if not qi_fails else " [sigma fails exactly when a boundary map is nonzero]"))
    assert not iso_fails, first(iso_fails)
    assert elapsed < 300
    assert not qi_fails, f"sigma is not a quasi-isomorphism on {len(qi_fails)} of {total} extensions"


def test_ac09_negative_control():
    t0 = time.perf_counter()
    fails, witnesses, zero = [], 0, 0
    for ring in RINGS:
        cfg = GenConfig(seed=909, ring=ring)
        for i in range(100):
            B, C = gen_complex(cfg, i, stream="ac9.B"), gen_complex(cfg, i, stream="ac9.C")
            phi = gen_chain_nullhomotopy(cfg, B, C, i)
            if phi.mor.is_zero():
                zero += 1
                continue
            w = reduced_interchange_counterexample(phi.mor, phi)
            if ml.maps_equal(w.lhs, w.rhs):
                fails.append(f"{ring} {i}: witness does not violate interchange")
            if not w.seq_interchange_holds:
                fails.append(f"{ring} {i}: interchange fails after F")
            witnesses += 1
    elapsed = time.perf_counter() - t0
    ok = not fails and witnesses > 0
    report(9, ok, f"{witnesses} nonzero null-homotopic chain maps each give a violation witness, all satisfy "
                  f"interchange after F ({zero} zero maps skipped), {elapsed:.1f}s {first(fails)}")
    assert ok, first(fails)


def test_ac10_F_preserves_whiskering():
    t0 = time.perf_counter()
    fails, total = [], 0
    for ring in RINGS:
        cfg = GenConfig(seed=1010, ring=ring)
        for i in range(70):
            B, C = gen_complex(cfg, i, stream="ac10.B"), gen_complex(cfg, i, stream="ac10.C")
            g = gen_chain_morphism(cfg, B, C, i)
            fails += [f"{ring} {i}: {f}" for f in check_functor_F(g, cfg, i)]
            total += 4  # each instance whiskers on both sides, one side each, and neither
    elapsed = time.perf_counter() - t0
    ok = not fails
    report(10, ok, f"{total} whiskered nullhomotopies, F(f o phi o h) = F(f) o F(phi) o F(h), "
                   f"{elapsed:.1f}s {first(fails)}")
    assert ok, first(fails)
