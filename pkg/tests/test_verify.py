import json

import pytest

from conftest import by_name
from vanishing import cli
from vanishing.verify import (
    CHECK_IDS,
    CHECKS,
    CheckRecord,
    build_report,
    emit_report,
    group_summary,
    parse_suite,
    render_markdown,
    run_suite,
)

SPEC_IDS = ["sandwich", "elem-abelian", "lewis-index", "lewis-D3", "H1-k3", "lem-hone", "lem-classsize-p",
            "lem-quotient-V", "lem-classsize-H1", "lem-char-vanish", "lem-DleE", "lem-DiBound", "lem-G/K-iso",
            "cor-GiVi-bound", "lem-KleD", "cor-DleD", "lem-EBound", "thm1", "thm2a", "thm2b", "thm2c", "thm2d",
            "thm3", "macdonald-D3"]


def by_id(records):
    return {r.checkId: r for r in records}


def test_all_documented_check_ids_registered():
    assert set(SPEC_IDS) <= set(CHECK_IDS)


def test_q8_records(Q8):
    recs = by_id(run_suite(Q8))
    assert recs["sandwich"].status == "pass"
    assert recs["thm2a"].status == "skipped-hypothesis"
    assert len(recs) == len(CHECK_IDS)


def test_s3_records(S3):
    recs = by_id(run_suite(S3))
    assert recs["sandwich"].status == "pass"
    assert recs["lem-quotient-V"].status == "skipped-hypothesis"
    assert recs["lem-classsize-p"].hypothesisFlags["i=3: nilpotent"] is False
    passed = {cid for cid, r in recs.items() if r.status == "pass"}
    assert passed == {"sandwich", "v-double"}


def test_k4_path_on_strict_ut52_subgroup():
    recs = by_id(run_suite(by_name("UT(5,2)>256")))
    r = recs["thm2a"]
    assert r.hypothesisFlags["k=4: V_k<G_k"] is True
    assert r.hypothesisFlags["k=4: G'/V_k abelian"] is True
    assert r.status == "pass"
    assert r.metrics["k=4"] == {"|G_{k-1}:V_{k-1}|": 4, "|G:D_3|": 4}
    assert recs["lem-KleD"].status == "pass" and "i=4" in recs["lem-KleD"].metrics["instances"]


def test_full_ut52_has_k4_flags():
    recs = by_id(run_suite(by_name("UT(5,2)")))
    assert "k=4: V_k<G_k" in recs["thm2b"].hypothesisFlags
    assert all(r.status != "fail" for r in recs.values())


def test_record_invariants():
    with pytest.raises(ValueError):
        CheckRecord("g", "x", "fail")
    with pytest.raises(ValueError):
        CheckRecord("g", "x", "skipped-hypothesis", {"a": True})
    with pytest.raises(ValueError):
        CheckRecord("g", "x", "maybe")


def test_parse_suite():
    assert parse_suite("all") == list(CHECK_IDS)
    assert parse_suite("thm1,sandwich") == ["sandwich", "thm1"]
    with pytest.raises(ValueError, match="nope"):
        parse_suite("sandwich,nope")


def test_char_cap_downgrades_to_skipped_cap():
    G = by_name("UT(4,2)>32")
    recs = by_id(run_suite(G, ["lem-char-vanish", "v-double", "sandwich"], char_cap=16))
    assert recs["lem-char-vanish"].status == "skipped-cap"
    assert recs["v-double"].status == "skipped-cap"
    assert recs["sandwich"].status == "pass"


def test_markdown_has_series_table(Q8):
    rep = build_report([(group_summary(Q8), run_suite(Q8))], list(CHECK_IDS), {"source": "t", "maxOrder": 8})
    text = render_markdown(rep)
    assert "| i | G_i | V_i | Y_i | D_i | E_i |" in text
    assert "thm3: vacuous" in text
    assert "|G:V1| 4, |G:D3| 1" in text


def test_emit_report_io_error(Q8, tmp_path):
    rep = build_report([(group_summary(Q8), run_suite(Q8, "sandwich"))], ["sandwich"], {})
    with pytest.raises(OSError, match="missing"):
        emit_report(rep, "json", tmp_path / "missing" / "r.json")


def test_cli_exit_zero_and_json(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = cli.main(["verify", "--max-order", "8", "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert data["reportFormat"] == 1
    assert data["summary"]["fail"] == 0
    assert "thm3: vacuous" in data["vacuous"]
    assert len(data["records"]) == len(data["groups"]) * len(CHECK_IDS)
    keys = [(r["groupName"], r["checkId"]) for r in data["records"]]
    assert keys == sorted(keys)


def test_cli_bad_output_path(tmp_path):
    assert cli.main(["verify", "--max-order", "8", "--out", str(tmp_path / "no" / "r.json")]) == 2


def test_cli_bad_manifest(tmp_path):
    assert cli.main(["verify", "--corpus", str(tmp_path / "none.json"), "--out", str(tmp_path / "r.json")]) == 2


def test_cli_bad_suite(tmp_path):
    assert cli.main(["verify", "--suite", "thm9", "--out", str(tmp_path / "r.json")]) == 2


def test_cli_failure_exit_and_witness_replay(tmp_path, monkeypatch):
    def broken(c, r):
        r.hyp("", always=True)
        r.fail(element=c.G.order - 1)

    monkeypatch.setitem(CHECKS, "sandwich", broken)
    out = tmp_path / "r.json"
    assert cli.main(["verify", "--max-order", "8", "--suite", "sandwich", "--out", str(out)]) == 1
    data = json.loads(out.read_text())
    rec = next(r for r in data["records"] if r["groupName"] == "Q8")
    assert rec["status"] == "fail" and rec["witness"] == {"element": 7}
    replay = run_suite(by_name("Q8"), [rec["checkId"]])[0]
    assert replay.status == "fail" and replay.witness == rec["witness"]


def test_cli_markdown(tmp_path):
    out = tmp_path / "r.md"
    assert cli.main(["verify", "--max-order", "8", "--format", "markdown", "--out", str(out)]) == 0
    assert out.read_text().startswith("# Verification report")
