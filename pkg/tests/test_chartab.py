import pytest

from workbench.chartab import dixon_table
from workbench.cyclotomic import Cyclotomic
from workbench.errors import CapExceeded
from workbench.groups import builtin_group

from oracles import psl2_degree_multiset

_cache = {}


def table(name):
    if name not in _cache:
        _cache[name] = dixon_table(builtin_group(name))
    return _cache[name]


def test_s3_degrees():
    assert sorted(table("s3").degrees) == [1, 1, 2]


def test_psl27_degrees_against_formula_oracle():
    assert sorted(table("psl27").degrees) == psl2_degree_multiset(7)


def test_psl2q_degrees_more_q():
    assert sorted(dixon_table(builtin_group("psl2_5")).degrees) == psl2_degree_multiset(5)
    assert sorted(dixon_table(builtin_group("psl2_11")).degrees) == psl2_degree_multiset(11)


def test_a7_degrees():
    # pinned by exact orthogonality of the computed table (checked below);
    # multiset agrees with the brute-force class-algebra computation
    assert sorted(table("a7").degrees) == [1, 6, 10, 10, 14, 14, 15, 21, 35]


def test_orthogonality_exact():
    for name in ("s3", "s4", "d16", "sd16", "psl27", "c16", "a7"):
        T = table(name)
        for i in range(T.k):
            for l in range(i, T.k):
                expect = 1 if i == l else 0
                assert T.inner_product(i, l) == expect, (name, i, l)


def test_degrees_divide_order():
    for name in ("s5", "psl27", "a7"):
        T = table(name)
        assert all(T.group.order % d == 0 for d in T.degrees)


def test_fs_trivial_char():
    T = table("s4")
    triv = next(i for i in range(T.k)
                if all(v == Cyclotomic.rational(1) for v in T.chars[i]))
    assert T.fs_indicator(triv) == 1


def test_fs_psl27():
    T = table("psl27")
    by_degree = {}
    for i, d in enumerate(T.degrees):
        by_degree.setdefault(d, []).append(T.fs_indicator(i))
    assert by_degree[3] == [0, 0]
    assert by_degree[1] == [1] and by_degree[6] == [1]
    assert by_degree[7] == [1] and by_degree[8] == [1]


def test_fs_s5_all_plus_one():
    T = table("s5")
    assert T.fs_vector() == (1,) * T.k


def test_fs_involution_count_identity():
    for name in ("s3", "s4", "s5", "d8", "d16", "sd16", "c16", "psl27", "c2xs3"):
        T = table(name)
        total = sum(e * d for e, d in zip(T.fs_vector(), T.degrees))
        assert total == len(T.group.involution_indices()), name


def test_real_and_two_rational_flags():
    T = table("psl27")
    for i, d in enumerate(T.degrees):
        if d == 3:
            # values in Q(sqrt(-7)): odd-conductor irrationality, so the
            # pair is 2-rational yet nonreal
            assert not T.is_real_char(i)
            assert T.is_two_rational(i)
        if d in (1, 6, 7, 8):
            assert T.is_real_char(i) and T.is_two_rational(i)
    # rational-valued characters carry both flags
    T4 = table("s4")
    assert all(T4.is_real_char(i) and T4.is_two_rational(i) for i in range(T4.k))


def test_two_rational_c16_and_d16():
    # C16: the faithful linear characters are neither real nor 2-rational
    T = table("c16")
    faithful = [i for i in range(T.k)
                if any(v == Cyclotomic.root(16) for v in T.chars[i])]
    assert faithful
    for i in faithful:
        assert not T.is_two_rational(i)
        assert not T.is_real_char(i)
    # D16: the sqrt(2)-valued degree-2 character is real but not 2-rational
    T2 = table("d16")
    wit = [i for i in range(T2.k)
           if T2.degrees[i] == 2 and T2.is_real_char(i) and not T2.is_two_rational(i)]
    assert wit


def test_conj_char_pairs():
    T = table("psl27")
    threes = [i for i, d in enumerate(T.degrees) if d == 3]
    assert T.conj_char(threes[0]) == threes[1]
    assert T.conj_char(threes[1]) == threes[0]


def test_fs_constant_on_galois_families():
    T = table("d16")
    fams = T.two_conjugacy_families(range(T.k))
    for fam in fams:
        vals = {T.fs_indicator(i) for i in fam}
        assert len(vals) == 1


def test_class_cap():
    with pytest.raises(CapExceeded):
        dixon_table(builtin_group("c64"))
