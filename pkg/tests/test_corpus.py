import json

import pytest

from vanishing.corpus import (
    CorpusError,
    build_group,
    builtin_corpus,
    builtin_corpus_entries,
    load_group_file,
    load_manifest,
)
from vanishing.group import GroupError


def names(max_order):
    return [e.name for e in builtin_corpus_entries(max_order)]


def test_small_corpus_membership():
    got = set(names(8))
    for want in ["C2", "C3", "C4", "C5", "C6", "C7", "C8", "D8", "Q8", "UT(3,2)", "S3"]:
        assert want in got


def test_corpus_order_filter():
    assert "UT(4,3)" not in names(64)
    assert "UT(5,2)" in names(1024)
    for G in builtin_corpus(64):
        assert G.order <= 64


def test_corpus_is_deterministic_and_unique():
    a, b = names(1024), names(1024)
    assert a == b
    assert len(set(a)) == len(a)


def test_required_families_present():
    got = set(names(1024))
    required = {"C2xC2", "C3xC3", "D8", "Q8", "2^(1+2)+", "3^(1+2)_exp3", "5^(1+2)_exp5", "5^(1+2)_exp25",
                "UT(3,2)", "UT(3,3)", "UT(4,2)", "UT(4,3)", "UT(5,2)", "S3", "Q8xC2"}
    assert required <= got


def test_min_order():
    with pytest.raises(CorpusError):
        builtin_corpus_entries(4)


def test_expected_facts_checked():
    spec = {"format": 1, "name": "S3", "kind": "permutation", "degree": 3,
            "generators": [[1, 0, 2], [1, 2, 0]], "expected": {"order": 60}}
    with pytest.raises(CorpusError, match="expected-fact mismatch: order 6 ≠ 60"):
        build_group(spec)
    spec["expected"] = {"order": 6, "classCount": 3, "nilpotenceClass": None}
    assert build_group(spec).order == 6


def test_missing_field_named(tmp_path):
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"format": 1, "name": "x", "kind": "permutation", "generators": [[0]]}))
    with pytest.raises(CorpusError, match="degree"):
        load_group_file(p)


def test_parse_error_has_location(tmp_path):
    p = tmp_path / "g.json"
    p.write_text('{"format": 1,\n "kind": }')
    with pytest.raises(CorpusError, match=r"g\.json:2"):
        load_group_file(p)


def test_all_kinds_load(tmp_path):
    specs = {
        "perm.json": {"format": 1, "kind": "permutation", "degree": 4, "generators": [[1, 2, 3, 0]]},
        "tab.json": {"format": 1, "kind": "cayley", "table": [[0, 1], [1, 0]]},
        "ut.json": {"format": 1, "kind": "unitriangular", "n": 3, "p": 3, "expected": {"order": 27}},
        "fam.json": {"format": 1, "kind": "builtin", "family": "dihedral", "params": {"order": 10}},
        "prod.json": {"format": 1, "kind": "builtin", "family": "direct_product",
                      "params": {"left": {"kind": "builtin", "family": "cyclic", "params": {"n": 2}},
                                 "right": {"kind": "builtin", "family": "cyclic", "params": {"n": 3}}},
                      "expected": {"order": 6, "classCount": 6}},
    }
    for fname, spec in specs.items():
        (tmp_path / fname).write_text(json.dumps(spec))
    orders = [load_group_file(tmp_path / f).order for f in specs]
    assert orders == [4, 2, 27, 10, 6]
    manifest = {"format": 1, "groups": [{"path": f, "tags": ["t"]} for f in specs]}
    (tmp_path / "m.json").write_text(json.dumps(manifest))
    entries = load_manifest(tmp_path / "m.json")
    assert [e.name for e in entries] == ["perm", "tab", "ut", "fam", "prod"]
    assert entries[0].tags == ("t",)
    # loading twice gives the same groups
    again = [e.build().order for e in load_manifest(tmp_path / "m.json")]
    assert again == orders


def test_unknown_kind(tmp_path):
    with pytest.raises(CorpusError, match="unknown kind"):
        build_group({"format": 1, "kind": "presentation"})


def test_bad_permutation_is_group_error():
    with pytest.raises(GroupError):
        build_group({"format": 1, "kind": "permutation", "degree": 2, "generators": [[0, 0]]})


def test_duplicate_names_rejected(tmp_path):
    g = {"format": 1, "name": "same", "kind": "builtin", "family": "cyclic", "params": {"n": 2}}
    (tmp_path / "a.json").write_text(json.dumps(g))
    (tmp_path / "b.json").write_text(json.dumps(g))
    (tmp_path / "m.json").write_text(json.dumps({"format": 1, "groups": [{"path": "a.json"}, {"path": "b.json"}]}))
    with pytest.raises(CorpusError, match="duplicate"):
        load_manifest(tmp_path / "m.json")
