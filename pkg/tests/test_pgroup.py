import pytest

from workbench import pgroup
from workbench.errors import BadDegree, NotDihedral, TypeUnavailable
from workbench.groups import builtin_group
from workbench.perm import mul, identity, perm_order

_frames = {}
_exts = {}


def frame(d):
    if d not in _frames:
        _frames[d] = pgroup.build_dihedral(d)
    return _frames[d]


def ext(d, ty):
    if (d, ty) not in _exts:
        _exts[(d, ty)] = pgroup.build_extension(frame(d), ty)
    return _exts[(d, ty)]


def test_build_dihedral_basics():
    f = frame(3)
    assert f.group.order == 8
    assert len(f.group.involution_indices()) == 6
    f4 = frame(4)
    t_cent = f4.group.centralizer(f4.t)
    assert t_cent.order == 4
    f5 = frame(5)
    z = f5.s_i(1)
    assert perm_order(z) == 2
    assert f5.group.centralizer(z).order == 32


def test_build_dihedral_bad_degree():
    with pytest.raises(BadDegree):
        pgroup.build_dihedral(2)


def test_build_extension_relations():
    for d in (3, 4, 5):
        for ty in pgroup._available_types(d):
            e = ext(d, ty)
            assert e.E.order == 2 ** (d + 1)
            assert len(e.D_set) == 2 ** d


def test_extension_c_is_d16_for_d3():
    E = ext(3, "c").E
    assert E.order == 16
    assert len(E.involution_indices()) == 10  # 9 involutions + identity


def test_extension_d_is_sd16_for_d3():
    E = ext(3, "d").E
    assert E.order == 16
    assert len(E.involution_indices()) == 6  # 5 involutions + identity
    # matches the concrete SD16 builtin
    sd = builtin_group("sd16")
    assert pgroup._abstract_fingerprint(E) == pgroup._abstract_fingerprint(sd)


def test_extension_e_centralizer():
    e4 = ext(4, "e")
    cd = e4.centralizer_in_D(e4.e)
    assert cd == e4.named_subgroup("X_3")
    assert len(cd) == 8


def test_type_e_unavailable_for_d3():
    with pytest.raises(TypeUnavailable):
        pgroup.build_extension(frame(3), "e")


def test_census_counts():
    assert len(pgroup.census_degree2_extensions(frame(3))) == 4
    assert [t for t, _ in pgroup.census_degree2_extensions(frame(3))] == ["a", "b", "c", "d"]
    for d in (4, 5):
        cs = pgroup.census_degree2_extensions(frame(d))
        assert [t for t, _ in cs] == ["a", "b", "c", "d", "e"]


def test_fingerprints_pairwise_distinct():
    for d in (3, 4, 5, 6, 7):
        fps = [pgroup._relative_fingerprint(ext(d, ty))
               for ty in pgroup._available_types(d)]
        assert len(set(fps)) == len(fps)


def test_classify_roundtrip():
    for d in (3, 4, 5, 6, 7):
        for ty in pgroup._available_types(d):
            e = ext(d, ty)
            D = e.E.subgroup([e.s, e.t])
            assert pgroup.classify_extension(D, e.E) == ty
            assert pgroup.classify_extension(D, D) == "principal"


def test_classify_d_times_c2_is_a():
    e = ext(4, "a")
    D = e.E.subgroup([e.s, e.t])
    assert pgroup.classify_extension(D, e.E) == "a"


def test_classify_not_dihedral():
    G = builtin_group("c16")
    with pytest.raises(NotDihedral):
        pgroup.classify_extension(G, G)


def test_eclass_table_matches_reference_rows():
    for d in (3, 4, 5, 6):
        for ty in pgroup._available_types(d):
            rows = pgroup.eclass_table(ext(d, ty))
            expected = pgroup.expected_table1_rows(d, ty)
            assert len(rows) == len(expected)
            for (label, inv, cname, size), (elabel, _spec, einv, ecname) in zip(rows, expected):
                assert label == elabel
                assert inv == einv, (d, ty, label)
                assert cname == ecname, (d, ty, label)


def test_eclass_table_examples_d4():
    rows = {r[0]: r for r in pgroup.eclass_table(ext(4, "a"))}
    assert rows["t*e"][2] == "X_2" and rows["t*e"][1] is True
    rows_c = {r[0]: r for r in pgroup.eclass_table(ext(4, "c"))}
    assert rows_c["e"][2] == "S_1" and rows_c["e"][1] is True
    rows_e = {r[0]: r for r in pgroup.eclass_table(ext(4, "e"))}
    assert rows_e["s2*e"][2] == "Y_3" and rows_e["s2*e"][1] is False


def test_reality_pattern_matches_reference():
    for d in (3, 4, 5, 6):
        for ty in pgroup._available_types(d):
            got = pgroup.reality_pattern(ext(d, ty))
            want = pgroup.expected_reality(d, ty)
            assert got == want, (d, ty, {k: (got[k], want[k]) for k in got if got[k] != want[k]})


def test_strongly_real_implies_real():
    for d in (3, 4, 5):
        for ty in pgroup._available_types(d):
            for name, (real, strong) in pgroup.reality_pattern(ext(d, ty)).items():
                if strong:
                    assert real, (d, ty, name)


def test_real_condition_examples():
    assert pgroup.real_condition(ext(4, "c"), "S_1") is True
    assert pgroup.real_condition(ext(4, "c"), "D") is False
    assert pgroup.real_condition(ext(4, "e"), "S") is False
    assert pgroup.strongly_real_condition(ext(4, "a"), "Y_2") is True
    assert pgroup.strongly_real_condition(ext(4, "d"), "S_1") is False
    assert pgroup.strongly_real_condition(ext(4, "b"), "S_2") is True


def test_real_condition_constant_on_conjugates():
    # conjugating Q inside D does not change the predicate
    e = ext(4, "c")
    t_conj = mul(mul(pgroup.inverse(e.s), e.embed(e.frame.t)), e.s)
    assert pgroup.real_condition(e, [e.embed(e.frame.t)]) == pgroup.real_condition(e, [t_conj])


def test_named_subgroups_cover_all_subgroups_up_to_conjugacy():
    # brute subgroup census for small d: every subgroup of D is D-conjugate
    # to a named one
    for d in (3, 4):
        e = ext(d, "a")
        D = e.E.subgroup([e.s, e.t])
        named = [e.named_subgroup(n) for n in e.named_subgroup_names()]
        seen = set()
        for a in D.elements:
            for b in D.elements:
                sub = D.subgroup([a, b]).element_set()
                seen.add(sub)
        for sub in seen:
            conjugates = []
            for g in D.elements:
                gi = pgroup.inverse(g)
                conjugates.append(frozenset(mul(mul(gi, x), g) for x in sub))
            assert any(c in named for c in conjugates)


def test_count_real_columns():
    for d in (3, 4, 5, 6):
        out = pgroup.count_real_columns(d, "a", "aa")
        assert out["total"] == 2 ** (d - 2) + 3
        assert out["real"] == out["total"]
    out = pgroup.count_real_columns(5, "e", "aa")
    assert out["nonreal"] == 2 ** (5 - 3)
    out = pgroup.count_real_columns(4, "c", "bb")
    assert out["nonreal"] == 2
    assert out["real"] == 2 ** (4 - 2) + 1
