import pytest
from hypothesis import given, settings, strategies as st

from conftest import by_name, corpus
from oracle import Oracle
from vanishing.group import build_builtin, build_from_permutations, build_unitriangular
from vanishing.series import (
    IndexBeyondClass,
    camina_data,
    is_H1,
    lower_central_series,
    nilpotence_class,
    series_profile,
    series_subgroups,
    term,
    v_series,
    vanishing_off_subgroup,
)
from vanishing.subgroups import SubgroupSet, center, centralizer_mod, derived_subgroup, is_normal

# Frozen series data from the brute-force oracle (tests/oracle.py, Oracle.companions):
# (|G_i|), (|V_i|), {i: |Y_i|}, {i: |D_i|}, {i: |E_i|}.
# The two smallest rows are also re-derived live below.
FROZEN = {
    "UT(4,2)>32": ([32, 4, 2, 1], [8, 2, 1], {3: 2, 4: 2}, {3: 16, 4: 32}, {4: 32}),
    "D16": ([16, 4, 2, 1], [8, 4, 2, 1], {3: 4, 4: 2}, {3: 16, 4: 16}, {4: 16}),
    "UT(4,2)": ([64, 8, 2, 1], [64, 8, 2, 1], {3: 8, 4: 2}, {3: 64, 4: 64}, {4: 64}),
    "UT(4,3)>243": ([243, 9, 3, 1], [27, 3, 1], {3: 3, 4: 3}, {3: 81, 4: 243}, {4: 243}),
    "UT(5,2)>256": ([256, 16, 8, 2, 1], [64, 8, 2, 1], {3: 8, 4: 2, 5: 2}, {3: 64, 4: 64, 5: 256},
                    {4: 64, 5: 256}),
}


def orders(series):
    return [H.order for H in series]


def test_lower_central_examples(S3, Q8):
    assert orders(lower_central_series(Q8)) == [8, 2, 1]
    assert nilpotence_class(lower_central_series(Q8)) == 2
    assert orders(lower_central_series(S3)) == [6, 3, 3]
    assert nilpotence_class(lower_central_series(S3)) is None
    A = build_builtin("abelian", {"invariants": [2, 4]})
    assert orders(lower_central_series(A)) == [8, 1]


def test_vanishing_off_examples(S3, Q8, D8):
    assert vanishing_off_subgroup(S3) == derived_subgroup(S3)
    assert vanishing_off_subgroup(S3).order == 3
    assert vanishing_off_subgroup(Q8) == center(Q8)
    assert vanishing_off_subgroup(D8) == center(D8)
    assert vanishing_off_subgroup(build_builtin("cyclic", {"n": 6})).is_trivial


def test_v_series_examples(S3, Q8):
    assert orders(v_series(Q8)) == [2, 1]
    assert orders(v_series(S3)) == [3, 3]
    assert orders(v_series(build_builtin("cyclic", {"n": 5}))) == [1]


def test_term_past_end_is_stable(S3):
    lower = lower_central_series(S3)
    assert term(lower, 10).order == 3
    with pytest.raises(IndexError):
        term(lower, 0)


def test_series_subgroups_q8(Q8):
    Y, D, E = series_subgroups(Q8, 3)
    assert Y == center(Q8)
    assert D == SubgroupSet.whole(Q8)
    assert E is None
    with pytest.raises(IndexBeyondClass, match="beyond class"):
        series_subgroups(Q8, 4)
    with pytest.raises(IndexBeyondClass):
        series_subgroups(Q8, 2)


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_frozen_series_data(name):
    G = by_name(name)
    prof = series_profile(G)
    lower, van, Y, D, E = FROZEN[name]
    assert orders(prof.lower) == lower
    assert orders(prof.vanishing) == van
    assert {i: H.order for i, H in prof.Y.items()} == Y
    assert {i: H.order for i, H in prof.D.items()} == D
    assert {i: H.order for i, H in prof.E.items()} == E


@pytest.mark.parametrize("name", ["UT(4,2)>32", "D16"])
def test_series_against_oracle(name):
    G = by_name(name)
    O = Oracle.regular(G)
    prof = series_profile(G)

    def idx(series):
        return [set(H.elements.tolist()) for H in series]

    assert idx(prof.lower) == [Oracle.indices(H) for H in O.lower_central()]
    assert idx(prof.vanishing) == [Oracle.indices(H) for H in O.v_series()]
    Y, D, E = O.companions()
    for mine, ref in ((prof.Y, Y), (prof.D, D), (prof.E, E)):
        assert sorted(mine) == sorted(ref)
        for i in ref:
            assert set(mine[i].elements.tolist()) == Oracle.indices(ref[i])


def test_h1_ut42_and_strict_subgroup():
    ok, N = is_H1(build_unitriangular(4, 2), 3)
    assert ok and N is None
    ok, N = is_H1(by_name("UT(4,2)>32"), 3)
    assert ok


def test_h1_needs_index_two_or_more(Q8):
    with pytest.raises(IndexBeyondClass):
        is_H1(Q8, 1)


@pytest.mark.parametrize("name", ["S3", "Q8", "D8", "3^(1+2)_exp3", "3^(1+2)_exp9", "5^(1+2)_exp5", "5^(1+2)_exp25"])
def test_camina_detected(name):
    data = camina_data(by_name(name))
    assert data.is_camina and data.witness is None


def test_camina_negatives():
    assert not camina_data(by_name("C8")).is_camina
    assert camina_data(by_name("C8")).witness is None
    data = camina_data(by_name("UT(4,2)"))
    assert not data.is_camina and data.witness is not None
    G = by_name("UT(4,2)")
    assert data.witness not in derived_subgroup(G)


def _each_profile(max_order=1024):
    for e, G in corpus(max_order):
        yield e.name, G, series_profile(G)


def test_profile_invariants_on_corpus():
    for name, G, prof in _each_profile():
        for H in prof.lower + prof.vanishing + list(prof.Y.values()) + list(prof.D.values()) + list(prof.E.values()):
            assert is_normal(G, H), name
        depth = max(len(prof.lower), len(prof.vanishing)) + 1
        for i in range(1, depth + 1):
            assert prof.G_(i + 1) <= prof.V_(i) <= prof.G_(i), (name, i)
            if prof.strict(i):
                assert all(prof.strict(j) for j in range(1, i + 1)), (name, i)


def test_definition_collapse_and_e_bounds():
    for name, G, prof in _each_profile():
        Z = center(G)
        for i in range(3, prof.depth + 1):
            if prof.V_(i).is_trivial:
                assert prof.Y[i] == Z, (name, i)
                assert prof.D[i] == centralizer_mod(G, SubgroupSet.trivial(G), prof.G_(i - 1)), (name, i)
            if i >= 4:
                assert prof.D[i - 1] <= prof.E[i], (name, i)


def test_h1_consequences():
    hits = 0
    for name, G, prof in _each_profile():
        for i in range(3, prof.depth + 1):
            if not (prof.strict(i) and prof.h1(i)[0]):
                continue
            hits += 1
            assert prof.V_(i - 1) == prof.G_(i - 1) & prof.Y[i], (name, i)
            if i >= 4:
                assert prof.D[i - 1] == prof.E[i], (name, i)
    assert hits >= 4


perm_groups = st.integers(3, 5).flatmap(
    lambda d: st.lists(st.permutations(list(range(d))), min_size=1, max_size=2).map(lambda ps: (d, ps))
)


@settings(max_examples=30, deadline=None)
@given(perm_groups)
def test_sandwich_random_permutation_groups(arg):
    d, perms = arg
    G = build_from_permutations(perms, d)
    prof = series_profile(G)
    for i in range(1, prof.depth + 2):
        assert prof.G_(i + 1) <= prof.V_(i) <= prof.G_(i)
    O = Oracle.regular(G)
    assert set(prof.V_(1).elements.tolist()) == Oracle.indices(O.vanishing_off())
