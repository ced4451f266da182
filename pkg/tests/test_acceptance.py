"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion.

All assertions are exact integer or set comparisons.
"""
import subprocess
import sys
import time

import numpy as np
import pytest

from conftest import by_name, corpus
from oracle import Oracle, exact_gram
from vanishing.characters import character_table, v_from_characters
from vanishing.series import camina_data, vanishing_off_subgroup
from vanishing.subgroups import center, conjugacy_classes, derived_subgroup
from vanishing.verify import CHECK_IDS, build_report, group_summary, run_suite

LEMMAS = ["lem-hone", "lem-classsize-p", "lem-quotient-V", "lem-classsize-H1", "lem-char-vanish", "lem-DleE",
          "lem-DiBound", "lem-G/K-iso", "cor-GiVi-bound", "lem-KleD", "cor-DleD", "lem-EBound"]
THEOREMS = ["thm1", "thm2a", "thm2b", "thm2c", "thm2d"]


@pytest.fixture
def verdict(capsys):
    def emit(n, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] acceptance {n}: {title}" + (f" ({detail})" if detail else ""))
        assert ok, detail
    return emit


@pytest.fixture(scope="module")
def report():
    results = [(group_summary(G), run_suite(G)) for _, G in corpus(1024)]
    return build_report(results, list(CHECK_IDS), {"source": "builtin", "maxOrder": 1024})


def statuses(report, ids):
    out = {}
    for r in report.records:
        if r.checkId in ids:
            out.setdefault(r.checkId, []).append(r.status)
    return out


def test_1_character_tables_exact(verdict):
    start = time.perf_counter()
    bad = []
    groups = [G for _, G in corpus(512)]
    for G in groups:
        T = character_table(G)
        r = len(T)
        if sum(d * d for d in T.degrees) != G.order:
            bad.append((G.name, "degrees"))
            continue
        rows = exact_gram(T)
        want = np.zeros_like(rows)
        want[np.arange(r), np.arange(r), 0] = G.order
        if not np.array_equal(rows, want):
            bad.append((G.name, "rows"))
        cols = exact_gram(T, columns=True)
        want = np.zeros_like(cols)
        want[np.arange(r), np.arange(r), 0] = T.class_data.centralizer_order
        if not np.array_equal(cols, want):
            bad.append((G.name, "columns"))
    took = time.perf_counter() - start
    verdict(1, "character tables exact on order <= 512", not bad and took < 300,
            f"{len(groups)} groups, {took:.1f}s, bad={bad}")


def test_2_v_double_definition(verdict, S3, Q8, D8):
    bad = [G.name for _, G in corpus(512) if v_from_characters(G) != vanishing_off_subgroup(G)]
    ok = not bad
    ok &= v_from_characters(S3) == derived_subgroup(S3) and derived_subgroup(S3).order == 3
    ok &= v_from_characters(Q8) == center(Q8) and center(Q8).order == 2
    ok &= v_from_characters(D8) == center(D8)
    ok &= all(v_from_characters(G).is_trivial for e, G in corpus(512) if derived_subgroup(G).is_trivial)
    verdict(2, "V(G) character and centralizer definitions agree", ok, f"mismatches={bad}")


def test_3_sandwich_and_sections(verdict, report):
    st = statuses(report, {"sandwich", "elem-abelian"})
    fails = sum(s == "fail" for v in st.values() for s in v)
    ok = fails == 0 and all(s == "pass" for s in st["sandwich"]) and "pass" in st["elem-abelian"]
    verdict(3, "sandwich and elementary abelian sections", ok,
            f"sandwich pass {st['sandwich'].count('pass')}, elem-abelian pass {st['elem-abelian'].count('pass')}")


def test_4_lewis_laws(verdict, report):
    ids = ["lewis-index", "lewis-D3", "H1-k3"]
    st = statuses(report, set(ids))
    fails = sum(s == "fail" for v in st.values() for s in v)
    hits = {cid: st[cid].count("pass") for cid in ids}
    verdict(4, "Lewis index laws", fails == 0 and all(hits.values()), f"non-vacuous {hits}")


def test_5_lemma_suite(verdict, report):
    st = statuses(report, set(LEMMAS))
    fails = {cid: v.count("fail") for cid, v in st.items() if "fail" in v}
    hits = {cid: st[cid].count("pass") for cid in LEMMAS}
    vac = [cid for cid, n in hits.items() if n == 0]
    verdict(5, "lemma suite", not fails and set(st) == set(LEMMAS), f"fails={fails}, vacuous={vac}")


def test_6_theorem_suite(verdict, report):
    st = statuses(report, set(THEOREMS))
    fails = {cid: v.count("fail") for cid, v in st.items() if "fail" in v}
    names = {g["name"] for g in report.groups}
    k4 = [r for r in report.records if r.checkId == "thm2a" and r.hypothesisFlags.get("k=4: V_k<G_k")]
    cov = report.to_json()["coverage"]
    ok = not fails and "UT(5,2)" in names and bool(k4) and all(c in cov for c in THEOREMS)
    ok &= all(r.status == "pass" for r in k4)
    passes = {c: cov[c]["pass"] for c in THEOREMS}
    verdict(6, "theorem suite incl. k=4 path", ok, f"k=4 instances {[r.groupName for r in k4]}, passes {passes}")


def test_7_camina(verdict, report):
    names = ["S3", "Q8", "D8", "3^(1+2)_exp3", "3^(1+2)_exp9", "5^(1+2)_exp5", "5^(1+2)_exp25"]
    detected = {n: camina_data(by_name(n)).is_camina for n in names}
    st = statuses(report, {"thm3", "macdonald-D3"})
    fails = sum(s == "fail" for v in st.values() for s in v)
    cl3 = [g["name"] for g in report.groups if g["camina"] and g["nilpotenceClass"] == 3]
    vac = report.to_json()["vacuous"]
    flagged = cl3 or {"thm3: vacuous", "macdonald-D3: vacuous"} <= set(vac)
    verdict(7, "Camina detection and class-3 laws", all(detected.values()) and fails == 0 and bool(flagged),
            f"class-3 Camina groups {cl3 or 'none, thm3: vacuous'}")


def test_8_determinism(verdict, tmp_path):
    outs = []
    for i in range(2):
        out = tmp_path / f"r{i}.json"
        proc = subprocess.run([sys.executable, "-m", "vanishing", "verify", "--corpus", "builtin", "--max-order",
                               "1024", "--format", "json", "--out", str(out)], capture_output=True)
        assert proc.returncode == 0, proc.stderr.decode()
        outs.append(out.read_bytes())
    verdict(8, "byte-identical JSON reports", outs[0] == outs[1], f"{len(outs[0])} bytes")


def test_9_oracle_equivalence(verdict):
    bad = []
    groups = [G for _, G in corpus(16)]
    for G in groups:
        O = Oracle.regular(G)
        cc = conjugacy_classes(G)
        if sorted(map(tuple, cc.classes)) != sorted(tuple(sorted(Oracle.indices(c))) for c in O.classes()):
            bad.append((G.name, "classes"))
        if set(center(G).elements.tolist()) != Oracle.indices(O.center()):
            bad.append((G.name, "center"))
        if set(derived_subgroup(G).elements.tolist()) != Oracle.indices(O.commutator(O.elements, O.elements)):
            bad.append((G.name, "derived"))
        if set(vanishing_off_subgroup(G).elements.tolist()) != Oracle.indices(O.vanishing_off()):
            bad.append((G.name, "V"))
    verdict(9, "oracle equivalence on order <= 16", not bad, f"{len(groups)} groups, bad={bad}")
