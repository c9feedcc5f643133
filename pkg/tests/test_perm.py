import pytest

from workbench import perm
from workbench.errors import CapExceeded, NotMember
from workbench.groups import builtin_group


def test_mul_convention():
    p = perm.parse_cycles("(1 2)")
    q = perm.parse_cycles("(2 3)")
    # apply p then q: 1 -> 2 -> 3
    assert perm.mul(p, q)[0] == 2


def test_parse_and_render_cycles():
    p = perm.parse_cycles("(1 2 3 4)(5 6)")
    assert p == (1, 2, 3, 0, 5, 4)
    assert perm.cycle_notation(p) == "(1 2 3 4)(5 6)"
    assert perm.parse_cycles("()", degree=3) == (0, 1, 2)
    with pytest.raises(ValueError):
        perm.parse_cycles("(1 2)(2 3)")


def test_generate_d8_order():
    G = builtin_group("d8")
    assert G.order == 8
    assert len(G.involution_indices()) == 6


def test_generate_psl27_order():
    G = builtin_group("psl27")
    assert G.order == 168
    assert len(G.involution_indices()) == 22


def test_generate_trivial():
    G = perm.generate([], degree=1)
    assert G.order == 1


def test_cap_exceeded():
    gens = [perm.parse_cycles("(1 2)"), perm.parse_cycles("(1 2 3 4 5 6 7 8)")]
    with pytest.raises(CapExceeded):
        perm.PermGroup(gens, cap=100)


def test_class_counts_s3():
    G = builtin_group("s3")
    cls = G.conjugacy_classes()
    assert len(cls) == 3
    assert all(c.is_real for c in cls)


def test_class_counts_c3():
    G = builtin_group("c3")
    cls = G.conjugacy_classes()
    assert len(cls) == 3
    assert sum(1 for c in cls if not c.is_real) == 2


def test_class_counts_a7():
    G = builtin_group("a7")
    cls = G.conjugacy_classes()
    assert len(cls) == 9
    nonreal = [c for c in cls if not c.is_real]
    assert len(nonreal) == 2
    assert all(c.order == 7 for c in nonreal)


def test_class_reality_against_inversion_closure():
    # flags must agree with an independently recomputed inversion check
    for name in ("s4", "psl27", "c7"):
        G = builtin_group(name)
        for c in G.conjugacy_classes():
            closed = all(G.inv_idx(m) in c.members for m in c.members)
            touched = any(G.inv_idx(m) in c.members for m in c.members)
            assert c.is_real == closed == touched


def test_class_size_times_centralizer():
    for name in ("s4", "d16", "psl27"):
        G = builtin_group(name)
        for c in G.conjugacy_classes():
            cent = G.centralizer(G.elements[c.rep])
            assert c.size() * cent.order == G.order


def test_centralizers_order7():
    # In PSL(2,7) the 7-classes are non-real, so C*(c) = C(c); the index-2
    # jump appears in PGL(2,7) where c ~ c^-1.
    G = builtin_group("psl27")
    g = next(p for p in G.elements if perm.perm_order(p) == 7)
    assert G.centralizer(g).order == 7
    assert G.extended_centralizer(g).order == 7
    H = builtin_group("pgl27")
    h = next(p for p in H.elements if perm.perm_order(p) == 7)
    assert H.centralizer(h).order == 7
    assert H.extended_centralizer(h).order == 14


def test_extended_centralizer_index():
    G = builtin_group("s4")
    for c in G.conjugacy_classes():
        g = G.elements[c.rep]
        cg = G.centralizer(g).order
        cs = G.extended_centralizer(g).order
        assert cs % cg == 0 and cs // cg in (1, 2)
        # index 2 iff g is real and g != g^-1
        expect2 = c.is_real and perm.inverse(g) != g
        assert (cs // cg == 2) == expect2


def test_extended_centralizer_central_element():
    G = builtin_group("d8")
    z = next(p for p in G.elements
             if p != perm.identity(G.degree) and G.centralizer(p).order == G.order)
    assert G.extended_centralizer(z).order == G.order


def test_not_member():
    G = builtin_group("c3")
    with pytest.raises(NotMember):
        G.centralizer(perm.parse_cycles("(1 2)", degree=3))


def test_sylow2_psl27_and_s5():
    for name in ("psl27", "s5"):
        G = builtin_group(name)
        P = G.sylow2()
        assert P.order == 8
        assert P.exponent() == 4
        assert len(P.involution_indices()) == 6  # dihedral fingerprint


def test_sylow2_odd_group():
    G = builtin_group("c7")
    assert G.sylow2().order == 1


def test_sylow2_conjugacy_small():
    # Sylow subgroups grown by independent normalizer ascents inside
    # conjugate subgroups must be conjugate in G (exhaustive search)
    G = builtin_group("s5")
    # transpositions: centralizer C2 x S3 of order 12, Sylow-2 Klein four
    x = next(p for p in G.elements
             if perm.perm_order(p) == 2 and G.centralizer(p).order == 12)
    g = next(p for p in G.elements if perm.conj(x, p) != x)
    y = perm.conj(x, g)
    P1 = G.centralizer(x).sylow2()
    P2 = G.centralizer(y).sylow2()
    assert P1.order == P2.order == 4
    conjugators = [h for h in G.elements
                   if all(perm.conj(p, h) in P2.index for p in P1.elements)]
    assert conjugators


def test_sylow2_translates_are_conjugate():
    G = builtin_group("s4")
    P = G.sylow2()
    for g in G.elements[:6]:
        Q = G._from_elements([perm.conj(p, g) for p in P.elements])
        found = any(
            all(perm.conj(p, x) in Q.index for p in P.elements)
            for x in G.elements
        )
        assert found


def test_nu():
    assert perm.nu(8) == 3
    assert perm.nu(168) == 3
    assert perm.nu(1) == 0


def test_involution_counts():
    assert len(builtin_group("c3").involution_indices()) == 1
    assert len(builtin_group("d8").involution_indices()) == 6


def test_generator_file_roundtrip(tmp_path):
    path = tmp_path / "gens.txt"
    path.write_text("# D8\n(1 2 3 4)\n\n(1 3)\n")
    gens = perm.read_generator_file(str(path))
    G = perm.generate(gens)
    assert G.order == 8
