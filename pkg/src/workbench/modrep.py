"""GF(2) permutation modules on involutions, block cuts, and summands.

Row-vector modules over GF(2); coordinates of a permutation module are
labelled by element indices of the underlying G-set.  The endomorphism
algebra of a permutation module is spanned by its orbital matrices, which
is what makes the Fitting decomposition affordable: block cuts inherit the
spanning set e*O*e.
"""

from __future__ import annotations

import random

from .blocks import BlockData, block_idempotent_support, block_partition
from .chartab import CharacterTable
from .errors import CapExceeded, FieldTooSmall, NotIdempotent, NotInO2
from .gf2 import BitMatrix, CoordSolver, Echelon, GF2Field, GFMatrix
from .meataxe import chop, group_constituents
from .perm import PermGroup, conj, identity, inverse, mul, nu

OMEGA_CAP = 2048
MEATAXE_DIM_CAP = 512
SUMMAND_DIM_CAP = 256
COMMUTANT_DIM_CAP = 48


class GF2Module:
    """A GF(2)-module given by generator action matrices (row convention).

    Permutation modules keep their point labels and a reference to the
    group so orbital endomorphisms stay available through block cuts.
    """

    def __init__(self, mats, dim, group: PermGroup | None = None,
                 labels=None, endo_spanning=None):
        self.mats = mats if mats else [BitMatrix.identity(dim)]
        self.dim = dim
        self.group = group
        self.labels = labels
        self._endo_spanning = endo_spanning  # callable yielding BitMatrix spans
        for m in self.mats:
            assert m.nrows == m.ncols == dim
            assert m.rank() == dim, "action matrix not invertible"

    def verify_action(self, rng=None) -> bool:
        """Spot-check rho(g)rho(h) = rho(gh) on random generator products."""
        if self.group is None or self.labels is None:
            return True
        rng = rng or random.Random(0)
        gens = self.group.generators
        if not gens:
            return True
        for _ in range(6):
            g = gens[rng.randrange(len(gens))]
            h = gens[rng.randrange(len(gens))]
            lhs = _perm_action_matrix(self.group, self.labels, g) * \
                _perm_action_matrix(self.group, self.labels, h)
            rhs = _perm_action_matrix(self.group, self.labels, mul(g, h))
            if lhs != rhs:
                return False
        return True

    def export_text(self) -> str:
        parts = [f"# module dim={self.dim} generators={len(self.mats)}"]
        parts += [m.export_text() for m in self.mats]
        return "\n".join(parts)


def _perm_action_matrix(G: PermGroup, labels, g) -> BitMatrix:
    pos = {lab: n for n, lab in enumerate(labels)}
    rows = [0] * len(labels)
    for n, lab in enumerate(labels):
        img = G.idx(conj(G.elements[lab], g))
        rows[n] = 1 << pos[img]
    return BitMatrix(rows, len(labels))


def conjugation_module(G: PermGroup, labels) -> GF2Module:
    """Permutation module on a conjugation-stable set of element indices."""
    labels = sorted(labels)
    mats = [_perm_action_matrix(G, labels, g) for g in G.generators]
    module = GF2Module(mats or None, len(labels), group=G, labels=labels)
    return module


def involution_perm_module(G: PermGroup) -> GF2Module:
    """k-Omega: the conjugation module on {g : g^2 = 1}."""
    omega = G.involution_indices()
    if len(omega) > OMEGA_CAP:
        raise CapExceeded(f"|Omega| = {len(omega)} exceeds {OMEGA_CAP}")
    return conjugation_module(G, omega)


def class_sum_matrix(G: PermGroup, labels, members) -> BitMatrix:
    """Sum over the class of permutation matrices, mod 2."""
    pos = {lab: n for n, lab in enumerate(labels)}
    rows = [0] * len(labels)
    for m in members:
        g = G.elements[m]
        for n, lab in enumerate(labels):
            rows[n] ^= 1 << pos[G.idx(conj(G.elements[lab], g))]
    return BitMatrix(rows, len(labels))


def block_projector(table: CharacterTable, block: BlockData, module: GF2Module):
    """The matrix of e_B on a permutation module.

    Returns a BitMatrix when the idempotent is GF(2)-rational (the fast
    path), otherwise a GFMatrix over the block's GF(2^F) (the lifted
    module k^F (x) M)."""
    coeffs = block_idempotent_support(table, block)
    n = module.dim
    if all(c in (0, 1) for c in coeffs):
        acc = BitMatrix.zero(n, n)
        for j, c in enumerate(coeffs):
            if c:
                acc = acc + class_sum_matrix(table.group, module.labels,
                                             table.classes[j].members)
        if acc * acc != acc:
            raise NotIdempotent("block projector is not idempotent")
        return acc
    if n > 64:
        return None  # caller falls back to the Frobenius-orbit route
    F = GF2Field(block.field_f)
    acc = GFMatrix.zero(F, n, n)
    for j, c in enumerate(coeffs):
        if c:
            s = class_sum_matrix(table.group, module.labels,
                                 table.classes[j].members)
            add = GFMatrix(F, [[c if s.get(i, jj) else 0 for jj in range(n)]
                               for i in range(n)])
            acc = acc + add
    if acc * acc != acc:
        raise NotIdempotent("block projector is not idempotent")
    return acc


def block_cut(table: CharacterTable, block: BlockData, module: GF2Module):
    """The component e_B * M of a permutation module M.

    For non-GF(2)-rational idempotents the result is a GFModule over
    GF(2^F) carrying only dimensions and action matrices."""
    proj = block_projector(table, block, module)
    if proj is None:
        return _frobenius_orbit_cut(table, block, module)
    if isinstance(proj, GFMatrix):
        return _gf_cut(table, module, proj)
    ech = Echelon()
    for r in proj.rows:
        ech.add(r, tag=len(ech))
    basis = _ordered_basis(ech)
    cut_mats = []
    for m in module.mats:
        rows = []
        for vec in basis:
            tags = ech.solve(m.mul_vec(vec))
            assert tags is not None, "cut not G-stable"
            r = 0
            for t in tags:
                r |= 1 << t
            rows.append(r)
        cut_mats.append(BitMatrix(rows, len(basis)))

    def endo_spanning():
        for O in _orbital_matrices(module):
            eoe = proj * O * proj
            rows = []
            ok = True
            for vec in basis:
                tags = ech.solve(eoe.mul_vec(vec))
                if tags is None:
                    ok = False
                    break
                r = 0
                for t in tags:
                    r |= 1 << t
                rows.append(r)
            if ok:
                yield BitMatrix(rows, len(basis))

    cut = GF2Module(cut_mats or None, len(basis), group=module.group,
                    labels=None, endo_spanning=endo_spanning)
    cut._ambient_basis = basis
    return cut


def _ordered_basis(ech: Echelon):
    entries = sorted(ech.entries, key=lambda e: e[2])
    return [vec for _p, vec, _t in entries]


class GFModule:
    """Minimal module data over GF(2^f) (dim + action matrices).

    mats is None when only the dimension was derived (Frobenius-orbit
    route for large permutation modules)."""

    def __init__(self, field: GF2Field, mats, dim):
        self.field = field
        self.mats = mats
        self.dim = dim


def _frobenius_orbit_cut(table: CharacterTable, block: BlockData,
                         module: GF2Module) -> GFModule:
    """Dimension of e_B * M for a non-GF(2)-rational idempotent.

    The Frobenius orbit sum of e_B is GF(2)-rational, so its cut is a fast
    bit-matrix computation; the conjugate blocks cut out summands of equal
    dimension, so dim(e_B M) = (orbit cut dim) / (orbit length)."""
    F = GF2Field(block.field_f)
    coeffs = block_idempotent_support(table, block)
    orbit = [list(coeffs)]
    cur = [F.mul(c, c) for c in coeffs]
    while cur != orbit[0]:
        orbit.append(cur)
        cur = [F.mul(c, c) for c in cur]
    total = [0] * table.k
    for vec in orbit:
        total = [a ^ b for a, b in zip(total, vec)]
    assert all(c in (0, 1) for c in total), "orbit sum must be rational"
    n = module.dim
    acc = BitMatrix.zero(n, n)
    for j, c in enumerate(total):
        if c:
            acc = acc + class_sum_matrix(table.group, module.labels,
                                         table.classes[j].members)
    if acc * acc != acc:
        raise NotIdempotent("orbit projector is not idempotent")
    orbit_dim = acc.rank()
    assert orbit_dim % len(orbit) == 0
    return GFModule(F, None, orbit_dim // len(orbit))


def _gf_cut(table: CharacterTable, module: GF2Module, proj: GFMatrix) -> GFModule:
    F = proj.field
    basis, pivots = proj.row_space()
    mats = []
    for m in module.mats:
        rows = []
        for vec in basis:
            img = [0] * module.dim
            for j, a in enumerate(vec):
                if a:
                    r = m.rows[j]
                    for t in range(module.dim):
                        if (r >> t) & 1:
                            img[t] ^= a
            coords = proj.solve_coords(img, basis, pivots)
            assert coords is not None, "GF(2^f) cut not G-stable"
            rows.append(coords)
        mats.append(GFMatrix(F, rows) if basis else GFMatrix(F, []))
    return GFModule(F, mats, len(basis))


def _orbital_matrices(module: GF2Module):
    """Adjacency matrices of the G-orbits on labels x labels."""
    G = module.group
    labels = module.labels
    pos = {lab: n for n, lab in enumerate(labels)}
    n = len(labels)
    seen = [[False] * n for _ in range(n)]
    for i0 in range(n):
        for j0 in range(n):
            if seen[i0][j0]:
                continue
            rows = [0] * n
            frontier = [(i0, j0)]
            seen[i0][j0] = True
            rows[i0] |= 1 << j0
            while frontier:
                nxt = []
                for (i, j) in frontier:
                    for g in G.generators:
                        i2 = pos[G.idx(conj(G.elements[labels[i]], g))]
                        j2 = pos[G.idx(conj(G.elements[labels[j]], g))]
                        if not seen[i2][j2]:
                            seen[i2][j2] = True
                            rows[i2] |= 1 << j2
                            nxt.append((i2, j2))
                frontier = nxt
            yield BitMatrix(rows, n)


# ---------------------------------------------------------------------------
# composition factors and summands
# ---------------------------------------------------------------------------

def meataxe_factors(module, seed=0):
    """Iso-classes of composition factors: [(Constituent, dim, multiplicity)]."""
    if isinstance(module, GFModule):
        raise FieldTooSmall("MeatAxe implemented over GF(2) modules only")
    if module.dim > MEATAXE_DIM_CAP:
        raise CapExceeded(f"dim {module.dim} exceeds {MEATAXE_DIM_CAP}")
    factors = chop(module.mats, module.dim, seed=seed)
    grouped = group_constituents(factors, seed=seed)
    return [(c, c.dim, mult) for c, mult in grouped]


def dual_module(module: GF2Module) -> GF2Module:
    """The contragredient module: g acts by rho(g^-1)^T."""
    mats = [m.inverse().transpose() for m in module.mats]
    return GF2Module(mats, module.dim, group=module.group)


def endomorphism_basis(module: GF2Module):
    """Basis of End_kG(M) as BitMatrices."""
    flat = Echelon()
    out = []

    def consider(mat):
        v = 0
        for i, r in enumerate(mat.rows):
            v |= r << (i * module.dim)
        if flat.add(v, tag=len(out)):
            out.append(mat)

    if module._endo_spanning is not None:
        for mat in module._endo_spanning():
            consider(mat)
    elif module.group is not None and module.labels is not None:
        for mat in _orbital_matrices(module):
            consider(mat)
    else:
        if module.dim > COMMUTANT_DIM_CAP:
            raise CapExceeded(
                f"generic commutant solve capped at dim {COMMUTANT_DIM_CAP}")
        for mat in _commutant_basis(module.mats, module.dim):
            consider(mat)
    # closure sanity: End is closed under multiplication
    return out


def _commutant_basis(mats, n):
    """Solve X A = A X for all generators; X as n x n over GF(2)."""
    rows = []
    nn = n * n
    for A in mats:
        At = A.transpose()
        for i in range(n):
            for j in range(n):
                # constraint_(i,j): sum_a A[i][a] X[a][j] + sum_b X[i][b] A[b][j] = 0
                v = 0
                for a_ in range(n):
                    if A.get(i, a_):
                        v ^= 1 << (a_ * n + j)
                for b_ in range(n):
                    if At.get(j, b_):
                        v ^= 1 << (i * n + b_)
                rows.append(v)
    # we need {x : constraint . x = 0 for every constraint row}
    sols = BitMatrix(rows, nn).transpose().kernel()
    out = []
    for x in sols:
        mrows = [(x >> (i * n)) & ((1 << n) - 1) for i in range(n)]
        out.append(BitMatrix(mrows, n))
    return out


def summand_split(module: GF2Module, seed=0, max_tries=60):
    """Indecomposable direct summands via idempotents of End(M).

    Random elements of the endomorphism algebra are split through the
    idempotents of GF(2)[a] (found linearly: x -> x^2 + x); components where
    no proper idempotent appears within the retry budget are reported
    indecomposable, with a local-endomorphism-ring certificate attempt.
    """
    if module.dim > SUMMAND_DIM_CAP:
        raise CapExceeded(f"dim {module.dim} exceeds {SUMMAND_DIM_CAP}")
    if module.dim == 0:
        return []
    rng = random.Random(seed)
    endo = endomorphism_basis(module)
    ident = BitMatrix.identity(module.dim)
    work = [ident]
    final = []
    while work:
        eps = work.pop()
        found = None
        for _ in range(max_tries):
            a = _corner_random(endo, eps, rng)
            k = _proper_corner_idempotent(a, eps)
            if k is not None:
                found = k
                break
        if found is None:
            final.append(eps)
        else:
            work.append(found)
            work.append(eps + found)
    summands = []
    for eps in final:
        ech = Echelon()
        for r in eps.rows:
            ech.add(r, tag=len(ech))
        basis = _ordered_basis(ech)
        mats = []
        for m in module.mats:
            rows = []
            for vec in basis:
                tags = ech.solve(m.mul_vec(vec))
                assert tags is not None, "summand not G-stable"
                r = 0
                for t in tags:
                    r |= 1 << t
                rows.append(r)
            mats.append(BitMatrix(rows, len(basis)))
        summands.append(GF2Module(mats or None, len(basis), group=module.group))
    assert sum(s.dim for s in summands) == module.dim
    summands.sort(key=lambda s: s.dim)
    return summands


def _corner_random(endo, eps, rng):
    acc = None
    for b in endo:
        if rng.randrange(2):
            acc = b if acc is None else acc + b
    if acc is None:
        acc = endo[rng.randrange(len(endo))]
    return eps * acc * eps


def _corner_minpoly(a, eps):
    """Minimal polynomial of a inside the corner algebra eps*End*eps."""
    n = a.nrows
    solver = CoordSolver()

    def flatten(m):
        v = 0
        for i, r in enumerate(m.rows):
            v |= r << (i * n)
        return v

    solver.add(flatten(eps))
    cur = eps
    k = 0
    while True:
        k += 1
        cur = cur * a
        mask = solver.solve(flatten(cur))
        if mask is not None:
            return (1 << k) | mask
        solver.add(flatten(cur))
        if k > 2 * n:
            raise ArithmeticError("corner minpoly runaway")


def _proper_corner_idempotent(a, eps):
    """An idempotent k with 0 != k != eps in GF(2)[a], if one exists.

    In char 2 the idempotents of the commutative ring GF(2)[x]/(m) form the
    kernel of the linear map q -> q^2 + q, so they are found by linear
    algebra over GF(2)."""
    from .gf2 import poly_mulmod
    m = _corner_minpoly(a, eps)
    deg = m.bit_length() - 1
    if deg < 2:
        return None
    # squaring matrix on GF(2)[x]/(m): column i = x^(2i) mod m
    rows = []
    for i in range(deg):
        sq = poly_mulmod(1 << i, 1 << i, m)
        rows.append(sq ^ (1 << i))  # (x^i)^2 + x^i
    ker = BitMatrix(rows, deg).kernel()
    for q in ker:
        if q == 0 or q == 1:
            continue
        cand = _eval_in(a, eps, q)
        if cand.is_zero() or cand == eps:
            continue
        assert cand * cand == cand
        return cand
    return None


def _eval_in(a, eps, qpoly):
    out = None
    cur = eps
    q = qpoly
    while q:
        if q & 1:
            out = cur if out is None else out + cur
        cur = cur * a
        q >>= 1
    return out if out is not None else BitMatrix.zero(a.nrows, a.nrows)


def hom_space(m1: GF2Module, m2: GF2Module):
    """Basis of Hom_kG(M1, M2) (X with A_g X = X B_g), as BitMatrices."""
    n1, n2 = m1.dim, m2.dim
    if n1 * n2 > COMMUTANT_DIM_CAP ** 2 * 4:
        raise CapExceeded("hom space solve too large")
    rows = []
    for A, B in zip(m1.mats, m2.mats):
        Bt = B.transpose()
        for i in range(n1):
            for j in range(n2):
                v = 0
                for a_ in range(n1):
                    if A.get(i, a_):
                        v ^= 1 << (a_ * n2 + j)
                for b_ in range(n2):
                    if Bt.get(j, b_):
                        v ^= 1 << (i * n2 + b_)
                rows.append(v)
    sols = BitMatrix(rows, n1 * n2).transpose().kernel()
    out = []
    for x in sols:
        mrows = [(x >> (i * n2)) & ((1 << n2) - 1) for i in range(n1)]
        out.append(BitMatrix(mrows, n2))
    return out


def modules_isomorphic(m1: GF2Module, m2: GF2Module) -> bool:
    """Explicit isomorphism search through the hom space."""
    if m1.dim != m2.dim:
        return False
    homs = hom_space(m1, m2)
    if not homs:
        return m1.dim == 0
    if len(homs) > 16:
        raise CapExceeded("hom space too large to enumerate")
    for mask in range(1, 1 << len(homs)):
        acc = None
        for t, h in enumerate(homs):
            if (mask >> t) & 1:
                acc = h if acc is None else acc + h
        if acc is not None and acc.rank() == m1.dim:
            return True
    return False


def group_summands(summands):
    """[(dim, multiplicity)] with explicit-hom isomorphism grouping."""
    classes = []
    for s in summands:
        for entry in classes:
            if modules_isomorphic(entry[0], s):
                entry[1] += 1
                break
        else:
            classes.append([s, 1])
    classes.sort(key=lambda e: (e[0].dim, -e[1]))
    return [(s, m) for s, m in classes]


# ---------------------------------------------------------------------------
# structural checks
# ---------------------------------------------------------------------------

def o2_principal_check(table: CharacterTable, t_index: int) -> bool:
    """Every component of k[cl(t)] for t an involution in O_2(G) lies in the
    principal block: all non-principal cuts must vanish."""
    G = table.group
    t = G.elements[t_index]
    if mul(t, t) != identity(G.degree):
        raise NotInO2("element is not an involution")
    core = G.o2_core()
    if t not in core.index:
        raise NotInO2("element is not in O_2(G)")
    cls = G.conjugacy_classes()[G.class_of(t_index)]
    module = conjugation_module(G, cls.members)
    for b in block_partition(table):
        if b.is_principal:
            continue
        cut = block_cut(table, b, module)
        if cut.dim != 0:
            return False
    return True


def dimension_valuation_check(table: CharacterTable, block: BlockData,
                              couple, summands) -> dict:
    """Necessary vertex bounds: nu(dim M) >= nu[G:D] and
    nu(dim M) >= nu|G| - max_t nu|C_D(t)| over involutions t with E = D<t>."""
    G = table.group
    D, E = couple.D, couple.E
    nuG = nu(G.order)
    bound1 = nuG - nu(D.order)
    cents = []
    ident = identity(G.degree)
    if E.order == D.order:
        pool = [x for x in D.elements if mul(x, x) == ident]
    else:
        pool = [x for x in E.elements if x not in D.index and mul(x, x) == ident]
    for t in pool:
        cd = sum(1 for g in D.elements if mul(g, t) == mul(t, g))
        cents.append(cd)
    bound2 = nuG - nu(max(cents)) if cents else None
    rows = []
    ok = True
    for s in summands:
        v = nu(s.dim)
        passed = v >= bound1 and (bound2 is None or v >= bound2)
        ok = ok and passed
        rows.append({"dim": s.dim, "nu": v, "pass": passed})
    return {"bound_index": bound1, "bound_centralizer": bound2,
            "summands": rows, "ok": ok}
