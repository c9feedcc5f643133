"""2-block partition, block idempotents mod 2, and defect couples.

Blocks are cut out by equality of reduced central characters
omega_B(C+) = |C| chi(c) / chi(1) mod 2, computed exactly in a common
field GF(2^F).  Defect couples (D, E) follow the construction from a real
defect class element c: E a Sylow 2-subgroup of C*(c), D = E n C(c).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .chartab import CharacterTable
from .errors import NotRealBlock
from .gf2 import multiplicative_order_of_2
from .perm import PermGroup, conj, inverse, nu
from .pgroup import classify_extension, is_dihedral_2group


def _is_trivial_row(table: CharacterTable, i: int) -> bool:
    return table.degrees[i] == 1 and all(
        v.is_rational() and v.rational_value() == 1 for v in table.chars[i])


def omega_field(table: CharacterTable) -> int:
    """Common field degree F: lcm of ord_2 over odd parts of class orders."""
    f = 1
    for c in table.classes:
        m = c.order
        while m % 2 == 0:
            m //= 2
        o = multiplicative_order_of_2(m)
        f = f * o // gcd(f, o)
    return f


@dataclass
class BlockData:
    rows: tuple                 # character row indices
    omega: tuple                # central character mod 2, per class (GF(2^F) ints)
    field_f: int
    defect: int
    is_real: bool
    is_principal: bool
    real_defect_class_ids: tuple | None = None
    couple: tuple | None = None      # (D, E) as PermGroups
    etype: str | None = None

    def degrees(self, table: CharacterTable) -> list:
        return sorted(table.degrees[i] for i in self.rows)


def block_partition(table: CharacterTable) -> list:
    """Partition Irr(G) into 2-blocks by reduced central characters."""
    F = omega_field(table)
    buckets = {}
    for i in range(table.k):
        vec = []
        for j, c in enumerate(table.classes):
            val = table.chars[i][j] * Fraction(len(c.members), table.degrees[i])
            vec.append(val.reduce_mod2(F).value)
        buckets.setdefault(tuple(vec), []).append(i)
    nuG = nu(table.group.order)
    blocks = []
    for vec, rows in buckets.items():
        defect = nuG - min(nu(table.degrees[i]) for i in rows)
        row_set = set(rows)
        is_real = all(table.conj_char(i) in row_set for i in rows)
        principal = any(_is_trivial_row(table, i) for i in rows)
        blocks.append(BlockData(
            rows=tuple(rows), omega=vec, field_f=F, defect=defect,
            is_real=is_real, is_principal=principal))
    blocks.sort(key=lambda b: (not b.is_principal, -len(b.rows),
                               [table.degrees[i] for i in b.rows]))
    assert sum(len(b.rows) for b in blocks) == table.k
    return blocks


def block_idempotent_support(table: CharacterTable, block: BlockData) -> list:
    """Coefficients of e_B per class: reduce((1/|G|) sum chi(1) chi(c^-1)).

    Nonzero only on 2-regular classes; returned as GF(2^F) ints in
    the table's class order.
    """
    F = block.field_f
    coeffs = []
    for j in range(table.k):
        jinv = table.inverse_map[j]
        total = None
        for i in block.rows:
            term = table.chars[i][jinv] * table.degrees[i]
            total = term if total is None else total + term
        total = total * Fraction(1, table.group.order)
        val = total.reduce_mod2(F).value
        coeffs.append(val)
    for j, a in enumerate(coeffs):
        if a and not table.classes[j].is_2regular:
            raise AssertionError("idempotent supported on a 2-singular class")
    return coeffs


def idempotent_square_check(table: CharacterTable, coeffs) -> bool:
    """Verify (sum a_C C+)^2 = itself in Z(kG), via structure constants mod 2."""
    from .gf2 import GF2Field
    G = table.group
    k = table.k
    F = GF2Field(omega_field(table))
    from .perm import mul
    reps = [G.elements[c.rep] for c in table.classes]
    sq = [0] * k
    for i, ci in enumerate(table.classes):
        if coeffs[i] == 0:
            continue
        for jj, cj in enumerate(table.classes):
            if coeffs[jj] == 0:
                continue
            prod = F.mul(coeffs[i], coeffs[jj])
            if prod == 0:
                continue
            # a_{i jj}^l mod 2
            inv_members = [inverse(G.elements[m]) for m in ci.members]
            for l, gl in enumerate(reps):
                cnt = sum(1 for u_inv in inv_members
                          if G.class_of(G.idx(mul(u_inv, gl))) == jj)
                if cnt % 2:
                    sq[l] = F.add(sq[l], prod)
    return sq == list(coeffs)


def real_defect_classes(table: CharacterTable, block: BlockData) -> list:
    """Class ids that are real, 2-regular, in supp(e_B), with omega != 0."""
    if not block.is_real:
        raise NotRealBlock("real defect classes need a real block")
    supp = block_idempotent_support(table, block)
    out = []
    nuG = nu(table.group.order)
    for j, c in enumerate(table.classes):
        if not (c.is_real and c.is_2regular):
            continue
        if supp[j] == 0 or block.omega[j] == 0:
            continue
        # such a class is automatically a defect class
        assert nu(len(c.members)) == nuG - block.defect
        out.append(j)
    return out


@dataclass
class DefectCouple:
    c_index: int            # element index of the chosen class element
    D: PermGroup
    E: PermGroup
    etype: str | None


def defect_couple(table: CharacterTable, block: BlockData) -> DefectCouple:
    """Couple from the first real defect class: E Sylow in C*(c), D = E n C(c)."""
    classes = real_defect_classes(table, block)
    if not classes:
        raise NotRealBlock("no real defect class found")
    j = classes[0]
    c_idx = table.classes[j].rep
    return _couple_from_element(table, block, c_idx)


def _couple_from_element(table: CharacterTable, block: BlockData, c_idx: int) -> DefectCouple:
    G = table.group
    c = G.elements[c_idx]
    cent = G.centralizer(c)
    ext = G.extended_centralizer(c)
    assert ext.order % cent.order == 0 and ext.order // cent.order in (1, 2)
    E = ext.sylow2()
    D = E.intersection(cent)
    # D is automatically Sylow in C(c) since [C*(c):C(c)] <= 2
    assert D.order == 1 << nu(cent.order)
    assert D.order == 1 << block.defect
    etype = None
    if is_dihedral_2group(D):
        etype = classify_extension(D, E)
    return DefectCouple(c_index=c_idx, D=D, E=E, etype=etype)


def couple_conjugacy_check(table: CharacterTable, block: BlockData) -> bool:
    """Couples from every real defect class element are simultaneously conjugate."""
    G = table.group
    couples = []
    for j in real_defect_classes(table, block):
        for m in table.classes[j].members:
            couples.append(_couple_from_element(table, block, m))
    if len(couples) <= 1:
        return True
    base = couples[0]
    base_D = base.D.element_set()
    base_E = base.E.element_set()
    for other in couples[1:]:
        oD = other.D.element_set()
        oE = other.E.element_set()
        found = False
        for g in G.elements:
            gi = inverse(g)
            if all(_cnj(gi, x, g) in base_D for x in oD) and \
                    all(_cnj(gi, x, g) in base_E for x in oE):
                found = True
                break
        if not found:
            return False
    return True


def _cnj(gi, x, g):
    from .perm import mul
    return mul(mul(gi, x), g)


def analyze_blocks(table: CharacterTable) -> list:
    """Full block report: partition plus couples for real blocks."""
    blocks = block_partition(table)
    for b in blocks:
        if not b.is_real:
            continue
        rdc = real_defect_classes(table, b)
        b.real_defect_class_ids = tuple(rdc)
        if rdc:
            cpl = defect_couple(table, b)
            b.couple = (cpl.D, cpl.E)
            b.etype = cpl.etype
    return blocks
