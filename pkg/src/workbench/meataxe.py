"""Norton/Parker MeatAxe over GF(2) plus standard-basis isomorphism testing.

Modules are row-vector spaces: vectors act on the right by BitMatrix
generators.  chop() returns the composition factors; the irreducibility
certificate is Norton's test applied to an irreducible factor p of a local
minimal polynomial whose kernel has dimension deg(p).
"""

from __future__ import annotations

import random

from .gf2 import BitMatrix, CoordSolver, Echelon, poly_factor

MAX_THETA_TRIES = 60
FACTOR_DEGREE_CAP = 80


def spin(vectors, mats) -> Echelon:
    """Smallest module-closed subspace containing the vectors."""
    ech = Echelon()
    queue = []
    for v in vectors:
        if ech.add(v):
            queue.append(v)
    while queue:
        v = queue.pop()
        for m in mats:
            w = m.mul_vec(v)
            if ech.add(w):
                queue.append(w)
    return ech


def _restrict_action(mats, ech: Echelon):
    """Action matrices on the subspace spanned by an echelon basis."""
    basis = [(tag, vec) for _p, vec, tag in ech.entries]
    basis.sort()
    vecs = [vec for _t, vec in basis]
    order = {tag: n for n, (tag, _vec) in enumerate(basis)}
    out = []
    for m in mats:
        rows = []
        for _t, vec in basis:
            tags = ech.solve(m.mul_vec(vec))
            assert tags is not None, "subspace not closed under the action"
            r = 0
            for tg in tags:
                r |= 1 << order[tg]
            rows.append(r)
        out.append(BitMatrix(rows, len(basis)))
    return out, vecs


def sub_quotient(mats, dim, ech: Echelon):
    """(sub_mats, sub_basis, quot_mats, quot_proj) for a proper submodule."""
    sub_mats, sub_basis = _restrict_action(mats, ech)
    # complement coordinates: non-pivot positions
    pivots = {p for p, _v, _t in ech.entries}
    free = [c for c in range(dim) if c not in pivots]
    pos = {c: n for n, c in enumerate(free)}

    def project(v):
        v = ech.reduce(v)
        out = 0
        for c in free:
            if (v >> c) & 1:
                out |= 1 << pos[c]
        return out

    quot = []
    for m in mats:
        rows = [project(m.mul_vec(1 << c)) for c in free]
        quot.append(BitMatrix(rows, len(free)))
    return sub_mats, sub_basis, quot, project


def _matrix_minpoly(A: BitMatrix, rng) -> int:
    """Minimal polynomial of A on a few Krylov subspaces (monic, as bits)."""
    from .gf2 import poly_mul, poly_divmod, poly_gcd
    n = A.nrows
    m = 1  # poly "1"
    for _ in range(3):
        v = rng.getrandbits(n)
        if v == 0:
            v = 1
        solver = CoordSolver()
        solver.add(v)
        k = 0
        while True:
            k += 1
            v = A.mul_vec(v)
            mask = solver.solve(v)
            if mask is not None:
                local = (1 << k) | mask  # x^k + sum of earlier powers
                break
            solver.add(v)
        # m = lcm(m, local)
        g = poly_gcd(m, local)
        m = poly_divmod(poly_mul(m, local), g)[0]
        if n and len(solver) == n:
            break
    return m


def _eval_poly_at(A: BitMatrix, poly: int) -> BitMatrix:
    """poly(A) by Horner."""
    n = A.nrows
    out = BitMatrix.zero(n, n)
    bit = poly.bit_length() - 1
    for i in range(bit, -1, -1):
        out = out * A
        if (poly >> i) & 1:
            out = out + BitMatrix.identity(n)
    return out


def _random_algebra_element(mats, rng) -> BitMatrix:
    n = mats[0].nrows
    acc = BitMatrix.zero(n, n)
    for _ in range(rng.randrange(2, 4)):
        w = mats[rng.randrange(len(mats))]
        for _ in range(rng.randrange(0, 2)):
            w = w * mats[rng.randrange(len(mats))]
        acc = acc + w
    if rng.randrange(2):
        acc = acc + BitMatrix.identity(n)
    return acc


class Constituent:
    """One irreducible composition factor: dim + action matrices."""

    def __init__(self, mats):
        self.mats = mats
        self.dim = mats[0].nrows if mats else 0

    def fingerprint(self) -> tuple:
        n = self.dim
        ident = BitMatrix.identity(n)
        ranks = [(m + ident).rank() for m in self.mats]
        extra = []
        if len(self.mats) >= 2:
            w = self.mats[0] * self.mats[1]
            extra.append((w + ident).rank())
            extra.append((w * self.mats[0] + ident).rank())
        return (n, tuple(ranks), tuple(extra))


def chop(mats, dim, seed=0) -> list:
    """Composition factors (with repetition) of the module (dim, mats)."""
    if dim == 0:
        return []
    assert mats, "modules need at least one action matrix"
    rng = random.Random(seed)
    out = []
    _chop_rec([m.copy() for m in mats], dim, rng, out)
    assert sum(c.dim for c in out) == dim
    return out


def _chop_rec(mats, dim, rng, out):
    if dim == 0:
        return
    if dim == 1:
        out.append(Constituent(mats))
        return
    for _try in range(MAX_THETA_TRIES):
        theta = _random_algebra_element(mats, rng)
        mp = _matrix_minpoly(theta, rng)
        factors = sorted(poly_factor(mp, rng), key=lambda p: p.bit_length())
        for p in factors:
            degp = p.bit_length() - 1
            if degp > FACTOR_DEGREE_CAP:
                continue
            P = _eval_poly_at(theta, p)
            ker = P.kernel()
            if not ker:
                continue
            # try to split with kernel vectors
            for w in ker:
                s = spin([w], mats)
                if len(s) < dim:
                    _split(mats, dim, s, rng, out)
                    return
            if len(ker) == degp:
                # Norton: dual side with the same p
                Pt = P.transpose()
                kert = Pt.kernel()
                tmats = [m.transpose() for m in mats]
                st = spin([kert[0]], tmats)
                if len(st) < dim:
                    perp = BitMatrix(st.vectors(), dim).transpose().kernel()
                    sperp = spin(perp, mats)
                    assert 0 < len(sperp) < dim
                    _split(mats, dim, sperp, rng, out)
                    return
                out.append(Constituent(mats))
                return
        # inconclusive theta; retry
    raise ArithmeticError("meataxe failed to certify after retries")


def _split(mats, dim, ech, rng, out):
    sub_mats, _basis, quot_mats, _proj = sub_quotient(mats, dim, ech)
    _chop_rec(sub_mats, len(ech), rng, out)
    _chop_rec(quot_mats, dim - len(ech), rng, out)


# ---------------------------------------------------------------------------
# isomorphism testing via standard bases
# ---------------------------------------------------------------------------

def _standard_rep(mats, w):
    """Spin w with a fixed schedule; return the dependency shape and the
    per-generator matrices in the canonical spin basis."""
    solver = CoordSolver()
    solver.add(w)
    basis = [w]
    shape = []
    i = 0
    while i < len(basis):
        for gi, m in enumerate(mats):
            v = m.mul_vec(basis[i])
            if solver.add(v):
                basis.append(v)
                shape.append((i, gi, True))
            else:
                shape.append((i, gi, False))
        i += 1
    reps = []
    for m in mats:
        rows = [solver.solve(m.mul_vec(b)) for b in basis]
        reps.append(tuple(rows))
    return tuple(shape), tuple(reps), len(basis)


def isomorphic_irreducibles(c1: Constituent, c2: Constituent, seed=0) -> bool:
    """Exact isomorphism test for two irreducible modules."""
    if c1.dim != c2.dim or len(c1.mats) != len(c2.mats):
        return False
    if c1.dim == 0:
        return True
    if c1.fingerprint() != c2.fingerprint():
        return False
    rng = random.Random(seed)
    for _try in range(MAX_THETA_TRIES):
        # same word evaluated in both modules
        state = rng.getstate()
        A1 = _random_algebra_element(c1.mats, rng)
        rng.setstate(state)
        A2 = _random_algebra_element(c2.mats, rng)
        k1 = A1.kernel()
        k2 = A2.kernel()
        if len(k1) != len(k2):
            return False
        if not k1 or len(k1) > 8:
            continue
        shape1, reps1, n1 = _standard_rep(c1.mats, k1[0])
        if n1 != c1.dim:
            continue  # not actually irreducible-spanning from this vector
        # try every nonzero kernel vector on the other side
        for mask in range(1, 1 << len(k2)):
            w2 = 0
            for t in range(len(k2)):
                if (mask >> t) & 1:
                    w2 ^= k2[t]
            shape2, reps2, n2 = _standard_rep(c2.mats, w2)
            if n2 == c2.dim and shape1 == shape2 and reps1 == reps2:
                return True
        return False
    raise ArithmeticError("isomorphism test inconclusive")


def group_constituents(constituents, seed=0):
    """Group a factor list into iso-classes: [(representative, multiplicity)]."""
    classes = []
    for c in constituents:
        for entry in classes:
            if isomorphic_irreducibles(entry[0], c, seed=seed):
                entry[1] += 1
                break
        else:
            classes.append([c, 1])
    classes.sort(key=lambda e: e[0].dim)
    return [(c, m) for c, m in classes]
