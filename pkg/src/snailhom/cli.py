"""Command line: homology, snail and long sequences, classical comparison, verification and fuzzing.

Exit codes: 0 when every check passes, 1 when a verification fails, 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List

from . import modules as ml
from .arrcat import ArrMor
from .chaincx import functor_F, functor_F_on_morphism, homology, long_homology_sequence
from .classical import compare_with_snail, sigma_quasi_iso
from .docio import Document, DocumentError, matrix_json, parse_document, ring_json
from .genrand import (
    GenConfig, gen_arr_morphism, gen_chain_morphism, gen_chain_nullhomotopy, gen_complex, gen_extension,
    gen_seq_morphism,
)
from .homotopy import ConstructionError, PreconditionError, build_snail, verify_snail_exactness
from .ring import GF, QQ, ZZ
from .seqfam import LongSeq, SeqMor, homology_of_family, is_isoseq, unroll_long_sequence, NotIsoSeq
from . import suites

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

FUZZ_CHECKS = ("interchange", "universal", "snail", "exactness", "delta-kernel", "partkh", "longseq",
               "homology", "functor-f", "negative-control", "compare")
OPTIONAL_FUZZ_CHECKS = ("quasi-iso",)


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers

def _read(path: str) -> Document:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except UnicodeDecodeError:
        raise InputError(f"{path} is not UTF-8 text") from None
    try:
        return parse_document(text)
    except DocumentError as e:
        raise InputError(str(e)) from None


def _need_kind(doc: Document, *kinds):
    if doc.kind not in kinds:
        raise InputError(f"expected a document of kind {' or '.join(kinds)}, got {doc.kind}")


def _as_morphism(doc: Document):
    """A morphism in Arr or Seq; complex morphisms and extensions go through F."""
    if doc.kind in ("arrow_morphism", "seq_morphism"):
        return doc.obj
    if doc.kind == "complex_morphism":
        return functor_F_on_morphism(doc.obj)
    if doc.kind == "extension":
        return functor_F_on_morphism(doc.obj.g)
    raise InputError(f"expected a morphism document, got {doc.kind}")


def _longseq_json(L: LongSeq) -> dict:
    pts = L.exact_points()
    return {
        "objects": [{"label": lab, "module": ml.describe(o)} for lab, o in zip(L.labels, L.objects)],
        "maps": [matrix_json(m.matrix) for m in L.maps],
        "exact": {L.labels[i + 1]: ok for i, ok in enumerate(pts)},
    }


def _arrow_line(mods: List[str]) -> str:
    return " → ".join(mods)


def _trim_zeros(mods: List[str]) -> List[str]:
    i, j = 0, len(mods)
    while i < j and mods[i] == "0":
        i += 1
    while j > i and mods[j - 1] == "0":
        j -= 1
    core = mods[i:j]
    return ["0"] + core + ["0"] if core else ["0"]


def _emit(args, report: dict, lines: List[str]):
    if args.json:
        print(json.dumps(report, indent=1, ensure_ascii=False, sort_keys=False))
    else:
        print("\n".join(lines))


def _mark(ok: bool) -> str:
    return "✓" if ok else "✗"


# ---------------------------------------------------------------------------
# commands

def cmd_homology(args) -> int:
    doc = _read(args.file)
    _need_kind(doc, "complex", "seq_family")
    rows, fails = [], []
    if doc.kind == "complex":
        C = doc.obj
        FC = functor_F(C)
        degs = [args.degree] if args.degree is not None else (
            list(range(C.lo - 1, C.hi + 2)) if C.lo <= C.hi else [0])
        for n in degs:
            H = homology(C, n)
            K, Q = FC.ker(n)[0], FC.cok(n + 1)[0]
            ok = ml.modules_isomorphic(H, K) and ml.modules_isomorphic(H, Q)
            rows.append({"degree": n, "homology": ml.describe(H), "ker_hF": ml.describe(K),
                         "cok_hF": ml.describe(Q), "agree": ok})
            if not ok:
                fails.append(f"degree {n}: the two descriptions of homology disagree")
    else:
        h = doc.obj
        degs = [args.degree] if args.degree is not None else list(h.window()) or [0]
        for n in degs:
            try:
                Q, K, _ = homology_of_family(h, n)
                rows.append({"degree": n, "homology": ml.describe(K), "ker": ml.describe(K),
                             "cok": ml.describe(Q), "agree": True})
            except NotIsoSeq as e:
                rows.append({"degree": n, "homology": None, "ker": ml.describe(h.ker(n)[0]),
                             "cok": ml.describe(h.cok(n + 1)[0]), "agree": False})
                fails.append(f"degree {n}: {e}")
    report = {"command": "homology", "ring": ring_json(doc.ring), "ok": not fails, "degrees": rows,
              "failures": fails}
    lines = [f"{'n':>4}  {'H_n':<16} check"]
    lines += [f"{r['degree']:>4}  {str(r['homology']):<16} {_mark(r['agree'])}" for r in rows]
    lines += [f"FAIL {f}" for f in fails]
    _emit(args, report, lines)
    return EXIT_OK if not fails else EXIT_FAIL


def cmd_snail(args) -> int:
    doc = _read(args.file)
    g = _as_morphism(doc)
    B = suites.category_of(g)
    try:
        res = build_snail(B, g)
    except ConstructionError as e:
        report = {"command": "snail", "ok": False, "failures": [str(e)]}
        _emit(args, report, [f"FAIL {e}"])
        return EXIT_FAIL
    fails = suites.check_snail(g)
    ex = verify_snail_exactness(B, res)
    fails += [f"not {p}" for p in ex.failures()]
    names = ["N(0_N(g))", "N(0_X)", "N(0_Y)", "π₀(N(g))", "π₀(X)", "π₀(Y)"]
    if isinstance(g, ArrMor):
        objs = [ml.describe(o.bottom) for o in res.objects]
        levels = {"0": objs}
    else:
        levels = {str(n): [ml.describe(o.cod(n)) for o in res.objects] for n in g.window}
    report = {"command": "snail", "ring": ring_json(doc.ring), "ok": not fails, "objects": names,
              "levels": levels,
              "exactness": {e.point: e.exact for e in ex.entries}, "hypotheses": ex.hypotheses,
              "failures": fails}
    lines = []
    for n, objs in levels.items():
        lines.append(f"level {n}: {_arrow_line(objs)}")
    lines += [f"{e.point}: {_mark(e.exact)}" for e in ex.entries]
    lines += [f"FAIL {f}" for f in fails]
    _emit(args, report, lines)
    return EXIT_OK if not fails else EXIT_FAIL


def cmd_longseq(args) -> int:
    doc = _read(args.file)
    if doc.kind == "seq_morphism":
        g = doc.obj
        L = unroll_long_sequence(g)
        need_all = is_isoseq(g.source) and is_isoseq(g.target)
    else:
        _need_kind(doc, "complex_morphism", "extension", "seq_morphism")
        cm = doc.obj if doc.kind == "complex_morphism" else doc.obj.g
        try:
            L = long_homology_sequence(cm)
        except PreconditionError as e:
            raise InputError(str(e)) from None
        need_all = True
    pts = L.exact_points()
    fails = []
    if need_all:
        fails = [f"not exact at {L.labels[i + 1]}" for i, ok in enumerate(pts) if not ok]
    else:
        fails = [f"row {n} not exact" for n, r in L.row_exactness().items() if not all(r)]
    mods = L.describe()
    report = {"command": "longseq", "ring": ring_json(doc.ring), "ok": not fails,
              "sequence": _longseq_json(L), "trimmed": _trim_zeros(mods), "failures": fails}
    lines = [_arrow_line(_trim_zeros(mods)), ""]
    for i, (lab, m) in enumerate(zip(L.labels, mods)):
        flag = "" if i == 0 or i == len(mods) - 1 else f"  exact {_mark(pts[i - 1])}"
        lines.append(f"{lab:<16} {m:<12}{flag}")
    lines += [f"FAIL {f}" for f in fails]
    _emit(args, report, lines)
    return EXIT_OK if not fails else EXIT_FAIL


def cmd_compare(args) -> int:
    doc = _read(args.file)
    _need_kind(doc, "extension")
    e = doc.obj
    r = compare_with_snail(e)
    qi = sigma_quasi_iso(e)
    fails = list(r.failures) + ([] if qi else ["sigma: F(A) -> N(F(g)) is not a quasi-isomorphism"])
    report = {"command": "compare", "ring": ring_json(doc.ring), "ok": not fails, "isomorphic": r.ok,
              "sigma_quasi_iso": qi, "snail_sequence": _longseq_json(r.snail),
              "classical_sequence": _longseq_json(r.classical), "failures": fails}
    lines = ["snail:     " + _arrow_line(r.snail.describe()),
             "classical: " + _arrow_line(r.classical.describe()),
             f"degree-wise isomorphic: {_mark(r.ok)}",
             f"sigma quasi-isomorphism: {_mark(qi)}"]
    lines += [f"FAIL {f}" for f in fails]
    _emit(args, report, lines)
    return EXIT_OK if not fails else EXIT_FAIL


def _parse_checks(text, allowed) -> List[str]:
    if text is None:
        return list(allowed)
    names = [c.strip() for c in text.split(",") if c.strip()]
    bad = [c for c in names if c not in allowed]
    if bad:
        raise InputError(f"unknown check(s) {', '.join(bad)}; choose from {', '.join(allowed)}")
    return names


def cmd_verify(args) -> int:
    doc = _read(args.file)
    names = _parse_checks(args.checks, suites.VERIFY_CHECKS) if args.checks else suites.applicable_checks(doc.kind)
    bad = [c for c in names if c not in suites.applicable_checks(doc.kind)]
    if bad:
        raise InputError(f"check(s) {', '.join(bad)} do not apply to document kind {doc.kind}")
    cfg = GenConfig(seed=args.seed, ring=doc.ring)
    try:
        results = suites.run_checks(doc.obj, doc.kind, names, cfg)
    except ConstructionError as e:
        results = {"construction": [str(e)]}
    ok = all(not v for v in results.values())
    report = {"command": "verify", "ring": ring_json(doc.ring), "kind": doc.kind, "ok": ok,
              "checks": {k: {"ok": not v, "failures": v} for k, v in results.items()}}
    lines = [f"{k:<14} {_mark(not v)}" + ("" if not v else "  " + "; ".join(v)) for k, v in results.items()]
    _emit(args, report, lines)
    return EXIT_OK if ok else EXIT_FAIL


def parse_ring_flag(text: str):
    t = text.strip()
    if t in ("Z", "ZZ"):
        return ZZ
    if t in ("Q", "QQ"):
        return QQ
    if t.lower().startswith(("fp:", "f")):
        digits = t.split(":", 1)[1] if ":" in t else t[1:]
        try:
            return GF(int(digits))
        except ValueError as e:
            raise InputError(f"bad ring {text!r}: {e}") from None
    raise InputError(f"bad ring {text!r}; use Z, Q or Fp:p")


def fuzz_instance(cfg: GenConfig, index: int, checks) -> Dict[str, List[str]]:
    """Run the selected checks on the instances of one index; failures per check."""
    out: Dict[str, List[str]] = {}

    def run(name, fn):
        if name not in checks:
            return
        try:
            out[name] = fn()
        except (ConstructionError, ml.ExactLinError, PreconditionError) as e:
            out[name] = [f"{type(e).__name__}: {e}"]

    arr = gen_arr_morphism(cfg, index)
    seq = gen_seq_morphism(cfg, index)
    iso = gen_seq_morphism(cfg, index, isoseq=True)
    C = gen_complex(cfg, index)
    run("interchange", lambda: suites.check_interchange(arr, cfg, index) + suites.check_interchange(seq, cfg, index))
    run("universal", lambda: suites.check_universal(arr, cfg, index) + suites.check_universal(seq, cfg, index))
    run("snail", lambda: suites.check_snail(arr) + suites.check_snail(seq))
    run("exactness", lambda: suites.check_exactness(arr) + suites.check_exactness(iso))
    run("delta-kernel", lambda: suites.check_delta_kernel(arr, cfg, index) + suites.check_delta_kernel(seq, cfg, index))
    run("partkh", lambda: suites.check_partkh(seq))
    run("homology", lambda: suites.check_homology(C))
    if "longseq" in checks or "functor-f" in checks or "negative-control" in checks:
        D = gen_complex(cfg, index, stream="fuzz.target")
        g = gen_chain_morphism(cfg, C, D, index)
        run("longseq", lambda: suites.check_longseq(g))
        run("functor-f", lambda: suites.check_functor_F(g, cfg, index))
        phi = gen_chain_nullhomotopy(cfg, C, D, index)
        run("negative-control", lambda: suites.check_negative_control(phi.mor, phi))
    if "compare" in checks or "quasi-iso" in checks:
        e = gen_extension(cfg, index)
        run("compare", lambda: suites.check_compare(e, quasi_iso=False))
        run("quasi-iso", lambda: [] if sigma_quasi_iso(e) else ["sigma is not a quasi-isomorphism"])
    return out


def _fuzz_job(job):
    cfg, index, checks = job
    return index, fuzz_instance(cfg, index, checks)


def threads() -> int:
    try:
        return max(1, int(os.environ.get("SNAILHOM_THREADS", "1")))
    except ValueError:
        return 1


def cmd_fuzz(args) -> int:
    ring = parse_ring_flag(args.ring)
    checks = _parse_checks(args.checks, FUZZ_CHECKS + OPTIONAL_FUZZ_CHECKS) if args.checks else list(FUZZ_CHECKS)
    if args.count < 0 or args.max_rank < 0 or args.support < 0:
        raise InputError("count, max-rank and support must be non-negative")
    cfg = GenConfig(seed=args.seed, ring=ring, max_generators=args.max_rank,
                    max_relations=min(2, args.max_rank), support_width=args.support)
    jobs = [(cfg, i, tuple(checks)) for i in range(args.count)]
    t0 = time.perf_counter()
    if threads() > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads()) as ex:
            results = list(ex.map(_fuzz_job, jobs))
    else:
        results = [_fuzz_job(j) for j in jobs]
    results.sort(key=lambda r: r[0])
    elapsed = time.perf_counter() - t0
    failed = [(i, r) for i, r in results if any(r.values())]
    per_check = {c: sum(1 for _, r in results if not r.get(c)) for c in checks}
    report = {"command": "fuzz", "seed": args.seed, "ring": ring_json(ring), "count": args.count,
              "checks": checks, "passed": args.count - len(failed), "ok": not failed,
              "per_check": per_check, "seconds": round(elapsed, 3),
              "failures": [{"index": i, "checks": {k: v for k, v in r.items() if v}} for i, r in failed]}
    lines = [f"{args.count - len(failed)}/{args.count} pass ({ring}, seed {args.seed}, {elapsed:.1f}s)"]
    lines += [f"  {c:<17} {n}/{args.count}" for c, n in per_check.items()]
    for i, r in failed[:20]:
        for k, v in r.items():
            if v:
                lines.append(f"FAIL instance {i} {k}: {v[0]}")
    _emit(args, report, lines)
    return EXIT_OK if not failed else EXIT_FAIL


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="snailhom", description="Snail sequences and long homology sequences.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_file=True):
        if with_file:
            sp.add_argument("file", help="JSON document, or - for standard input")
        sp.add_argument("--json", action="store_true", help="machine-readable report")

    sp = sub.add_parser("homology", help="homology of a complex or a family")
    common(sp)
    sp.add_argument("--degree", type=int, default=None)
    sp.set_defaults(fn=cmd_homology)

    sp = sub.add_parser("snail", help="six-term snail sequence of a morphism")
    common(sp)
    sp.set_defaults(fn=cmd_snail)

    sp = sub.add_parser("longseq", help="long sequence of a morphism")
    common(sp)
    sp.set_defaults(fn=cmd_longseq)

    sp = sub.add_parser("compare", help="compare with the classical snake-lemma sequence")
    common(sp)
    sp.set_defaults(fn=cmd_compare)

    sp = sub.add_parser("verify", help="run verification checks on a document")
    common(sp)
    sp.add_argument("--checks", default=None, help="comma-separated: " + ",".join(suites.VERIFY_CHECKS))
    sp.add_argument("--seed", type=int, default=0, help="seed for sampled test data")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("fuzz", help="seeded random campaign")
    common(sp, with_file=False)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--ring", default="Z", help="Z, Q or Fp:p")
    sp.add_argument("--max-rank", type=int, default=3)
    sp.add_argument("--support", type=int, default=3)
    sp.add_argument("--checks", default=None,
                    help="comma-separated: " + ",".join(FUZZ_CHECKS + OPTIONAL_FUZZ_CHECKS))
    sp.set_defaults(fn=cmd_fuzz)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.fn(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
