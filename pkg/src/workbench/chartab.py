"""Exact ordinary character tables via Dixon's method.

Class-algebra structure constants are diagonalized over GF(p) for a prime
p = 1 mod exp(G) (least such prime above 4*sqrt|G|), degrees are recovered
from orthogonality mod p, and values are lifted exactly to Q(zeta_n) from
eigenvalue multiplicities.  Everything downstream of the lift is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .cyclotomic import Cyclotomic
from .errors import CapExceeded, NonIndicatorValue
from .perm import PermGroup, perm_power, nu

CLASS_CAP = 60


# ---------------------------------------------------------------------------
# mod-p helpers
# ---------------------------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _dixon_prime(exponent: int, order: int) -> int:
    bound = 4 * isqrt(order) + 1
    p = exponent + 1
    while p <= bound or not _is_prime(p):
        p += exponent
    return p


def _primitive_root(p: int) -> int:
    factors = []
    n = p - 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    for z in range(2, p):
        if all(pow(z, (p - 1) // q, p) != 1 for q in factors):
            return z
    raise ArithmeticError("no primitive root")


def _sqrt_modp(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise ArithmeticError("not a quadratic residue")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = next(x for x in range(2, p) if pow(x, (p - 1) // 2, p) == p - 1)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _poly_trim(f):
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    return f


def _poly_mul_modp(f, g, p):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = (out[i + j] + a * b) % p
    return _poly_trim(out)


def _poly_mod(f, m, p):
    f = f[:]
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(f) - 1 >= dm and any(f):
        if f[-1] == 0:
            f.pop()
            continue
        c = f[-1] * inv_lead % p
        shift = len(f) - 1 - dm
        for j in range(len(m)):
            f[shift + j] = (f[shift + j] - c * m[j]) % p
        f.pop()
    return _poly_trim(f if f else [0])


def _poly_gcd_modp(f, g, p):
    f, g = _poly_trim(f[:]), _poly_trim(g[:])
    while g != [0]:
        f, g = g, _poly_mod(f, g, p)
    if f[-1] != 1:
        inv = pow(f[-1], p - 2, p)
        f = [c * inv % p for c in f]
    return f


def _poly_powmod_x(e: int, m, p):
    """x^e mod m over GF(p)."""
    result = [1]
    base = _poly_mod([0, 1], m, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul_modp(result, base, p), m, p)
        base = _poly_mod(_poly_mul_modp(base, base, p), m, p)
        e >>= 1
    return result


def _roots_modp(f, p):
    """All roots in GF(p) of f (multiplicities collapsed)."""
    f = _poly_trim(f[:])
    if f == [0]:
        raise ArithmeticError("zero polynomial")
    roots = set()
    while len(f) > 1 and f[0] == 0:
        roots.add(0)
        f = _poly_trim(f[1:])
    if len(f) <= 1:
        return sorted(roots)
    xp = _poly_powmod_x(p, f, p)          # x^p mod f
    g = xp + [0] * max(0, 2 - len(xp))
    g[1] = (g[1] - 1) % p                 # x^p - x mod f
    g = _poly_trim(g)
    if g == [0]:
        inv = pow(f[-1], p - 2, p)
        lin = [c * inv % p for c in f]    # f itself splits into linears
    else:
        lin = _poly_gcd_modp(g, f, p)

    def split(h, c0):
        h = _poly_trim(h[:])
        if len(h) == 2:
            roots.add((-h[0] * pow(h[1], p - 2, p)) % p)
            return
        if len(h) <= 1:
            return
        c = c0
        while True:
            # gcd((x+c)^((p-1)/2) - 1, h) separates roots by quadratic character
            acc = [1]
            e = (p - 1) // 2
            b = _poly_mod([c, 1], h, p)
            while e:
                if e & 1:
                    acc = _poly_mod(_poly_mul_modp(acc, b, p), h, p)
                b = _poly_mod(_poly_mul_modp(b, b, p), h, p)
                e >>= 1
            acc = acc + [0] * max(0, 1 - len(acc))
            acc[0] = (acc[0] - 1) % p
            acc = _poly_trim(acc)
            if acc != [0]:
                w = _poly_gcd_modp(acc, h, p)
                if 0 < len(w) - 1 < len(h) - 1:
                    split(w, c + 1)
                    split(_poly_divide_exact(h, w, p), c + 1)
                    return
            c += 1

    if len(lin) > 1:
        split(lin, 0)
    return sorted(roots)


def _poly_divide_exact(f, g, p):
    q = [0] * (len(f) - len(g) + 1)
    rem = f[:]
    inv = pow(g[-1], p - 2, p)
    for i in range(len(q) - 1, -1, -1):
        c = rem[i + len(g) - 1] * inv % p
        q[i] = c
        if c:
            for j in range(len(g)):
                rem[i + j] = (rem[i + j] - c * g[j]) % p
    assert all(r == 0 for r in rem[:len(g) - 1])
    return _poly_trim(q)


def _charpoly_modp(A, p):
    """Characteristic polynomial det(xI - A) over GF(p) via Hessenberg form."""
    n = len(A)
    H = [row[:] for row in A]
    for c in range(n - 2):
        pr = next((r for r in range(c + 1, n) if H[r][c] % p), None)
        if pr is None:
            continue
        if pr != c + 1:
            H[pr], H[c + 1] = H[c + 1], H[pr]
            for i in range(n):
                H[i][pr], H[i][c + 1] = H[i][c + 1], H[i][pr]
        inv = pow(H[c + 1][c], p - 2, p)
        for r in range(c + 2, n):
            f = H[r][c] * inv % p
            if f:
                for j in range(n):
                    H[r][j] = (H[r][j] - f * H[c + 1][j]) % p
                for i in range(n):
                    H[i][c + 1] = (H[i][c + 1] + f * H[i][r]) % p
    polys = [[1]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = [0] + prev
        for i in range(len(prev)):
            cur[i] = (cur[i] - H[m - 1][m - 1] * prev[i]) % p
        prod = 1
        for i in range(m - 1, 0, -1):
            prod = prod * H[i][i - 1] % p
            coef = H[i - 1][m - 1] * prod % p
            if coef:
                low = polys[i - 1]
                for j in range(len(low)):
                    cur[j] = (cur[j] - coef * low[j]) % p
        polys.append(cur)
    return polys[n]


# ---------------------------------------------------------------------------
# character table
# ---------------------------------------------------------------------------

class CharacterTable:
    """Irreducible characters x conjugacy classes, exactly over Q(zeta)."""

    def __init__(self, group: PermGroup, classes, chars, degrees, prime):
        self.group = group
        self.classes = classes
        self.chars = chars              # list of tuples of Cyclotomic
        self.degrees = degrees
        self.k = len(classes)
        self.prime = prime
        self._power_maps = {}
        self.inverse_map = tuple(self._power_map(-1))
        self.powermap2 = tuple(self._power_map(2))

    # -- class/power bookkeeping -----------------------------------------

    def _power_map(self, r: int):
        r_key = r
        if r_key in self._power_maps:
            return self._power_maps[r_key]
        out = []
        for c in self.classes:
            rep = self.group.elements[c.rep]
            out.append(self.group.class_of(self.group.idx(perm_power(rep, r))))
        self._power_maps[r_key] = out
        return out

    def class_order(self, j: int) -> int:
        return self.classes[j].order

    def value(self, i: int, j: int) -> Cyclotomic:
        return self.chars[i][j]

    # -- derived data -------------------------------------------------------

    def fs_indicator(self, i: int) -> int:
        """Average of chi(g^2) over G, computed exactly; in {-1, 0, +1}."""
        total = Cyclotomic.rational(0)
        for j, c in enumerate(self.classes):
            total = total + len(c.members) * self.chars[i][self.powermap2[j]]
        total = total * Fraction(1, self.group.order)
        if not total.is_rational():
            raise NonIndicatorValue(f"chi_{i}: {total!r}")
        v = total.rational_value()
        if v not in (-1, 0, 1):
            raise NonIndicatorValue(f"chi_{i}: {v}")
        return int(v)

    def fs_vector(self):
        return tuple(self.fs_indicator(i) for i in range(self.k))

    def is_real_char(self, i: int) -> bool:
        return all(v.is_real() for v in self.chars[i])

    def conj_char(self, i: int) -> int:
        """Row index of the complex conjugate character."""
        inv = self.inverse_map
        target = [self.chars[i][inv[j]] for j in range(self.k)]
        for l in range(self.k):
            if self.degrees[l] != self.degrees[i]:
                continue
            if all(self.chars[l][j] == target[j] for j in range(self.k)):
                return l
        raise ArithmeticError("conjugate character not found")

    def _two_galois_exponents(self):
        """Exponents r = 1 mod (odd part) generating Galois fixing odd roots."""
        n = self.group.exponent()
        m = n
        while m % 2 == 0:
            m //= 2
        from math import gcd
        return n, [r for r in range(1, n + 1) if r % m == 1 % max(m, 1) and gcd(r, n) == 1]

    def is_two_rational(self, i: int) -> bool:
        """Fixed by every Galois map that fixes all odd-order roots of unity."""
        n, exps = self._two_galois_exponents()
        for r in exps:
            pm = self._power_map(r)
            if any(self.chars[i][pm[j]] != self.chars[i][j] for j in range(self.k)):
                return False
        return True

    def two_conjugacy_families(self, rows):
        """Partition the given rows into 2-conjugacy (Galois) orbits."""
        rows = list(rows)
        n, exps = self._two_galois_exponents()
        fams = []
        remaining = set(rows)
        for i in rows:
            if i not in remaining:
                continue
            orbit = {i}
            for r in exps:
                pm = self._power_map(r)
                img = [self.chars[i][pm[j]] for j in range(self.k)]
                for l in remaining:
                    if l not in orbit and self.degrees[l] == self.degrees[i] and \
                            all(self.chars[l][j] == img[j] for j in range(self.k)):
                        orbit.add(l)
            # orbit closure
            changed = True
            while changed:
                changed = False
                for m in list(orbit):
                    for r in exps:
                        pm = self._power_map(r)
                        img = [self.chars[m][pm[j]] for j in range(self.k)]
                        for l in remaining:
                            if l not in orbit and self.degrees[l] == self.degrees[m] and \
                                    all(self.chars[l][j] == img[j] for j in range(self.k)):
                                orbit.add(l)
                                changed = True
            fams.append(tuple(sorted(orbit)))
            remaining -= orbit
        return fams

    def inner_product(self, i: int, l: int) -> Fraction:
        total = Cyclotomic.rational(0)
        for j, c in enumerate(self.classes):
            total = total + len(c.members) * (self.chars[i][j] * self.chars[l][j].conj())
        total = total * Fraction(1, self.group.order)
        return total.rational_value()

    def to_json(self):
        return {
            "order": self.group.order,
            "classes": [{"order": c.order, "size": c.size(), "real": c.is_real,
                         "two_regular": c.is_2regular} for c in self.classes],
            "degrees": list(self.degrees),
            "fs_vector": list(self.fs_vector()),
            "real_flags": [self.is_real_char(i) for i in range(self.k)],
            "two_rational_flags": [self.is_two_rational(i) for i in range(self.k)],
            "values": [[v.to_json() for v in row] for row in self.chars],
        }


def dixon_table(G: PermGroup) -> CharacterTable:
    """Compute the exact ordinary character table of G."""
    classes = G.conjugacy_classes()
    k = len(classes)
    if k > CLASS_CAP:
        raise CapExceeded(f"{k} classes exceeds cap {CLASS_CAP}")
    order = G.order
    reps = [G.elements[c.rep] for c in classes]
    sizes = [c.size() for c in classes]
    id_class = G.class_of(G.identity_idx())

    # structure constants: a[i][j][l] = #{u in C_i : u^-1 g_l in C_j}
    a = [[[0] * k for _ in range(k)] for _ in range(k)]
    from .perm import inverse, mul
    for i, ci in enumerate(classes):
        inv_members = [inverse(G.elements[m]) for m in ci.members]
        for l, gl in enumerate(reps):
            row = a[i]
            for u_inv in inv_members:
                j = G.class_of(G.idx(mul(u_inv, gl)))
                row[j][l] += 1

    exponent = G.exponent()
    p = _dixon_prime(exponent, order)
    mats = [[[a[i][j][l] % p for l in range(k)] for j in range(k)] for i in range(k)]

    # simultaneous eigenvectors of all M_i (columns w with M_i w = omega_i w)
    spaces = [[_unit(k, j) for j in range(k)]]
    for i in range(k):
        if all(len(b) == 1 for b in spaces):
            break
        M = mats[i]
        new_spaces = []
        for basis in spaces:
            if len(basis) == 1:
                new_spaces.append(basis)
                continue
            A = _restrict(M, basis, p)
            f = _charpoly_modp(A, p)
            split_dim = 0
            for lam in _roots_modp(f, p):
                B = [[(A[r][c] - (lam if r == c else 0)) % p for c in range(len(A))]
                     for r in range(len(A))]
                vecs = []
                for coord in _nullspace_modp(B, p):
                    vec = [0] * k
                    for t, cv in enumerate(coord):
                        if cv:
                            for idx2 in range(k):
                                vec[idx2] = (vec[idx2] + cv * basis[t][idx2]) % p
                    vecs.append(vec)
                if vecs:
                    new_spaces.append(vecs)
                    split_dim += len(vecs)
            # the class algebra is semisimple mod p, so eigenspaces fill up
            assert split_dim == len(basis)
        spaces = new_spaces
    assert len(spaces) == k and all(len(b) == 1 for b in spaces)

    omegas = []
    for (w,) in spaces:
        scale = pow(w[id_class], p - 2, p)
        omegas.append([x * scale % p for x in w])

    inv_class = []
    for c in classes:
        rep = G.elements[c.rep]
        inv_class.append(G.class_of(G.idx(inverse(rep))))

    degrees = []
    inv_sizes = [pow(s, p - 2, p) for s in sizes]
    for w in omegas:
        f = 0
        for j in range(k):
            f = (f + w[j] * w[inv_class[j]] % p * inv_sizes[j]) % p
        d2 = order * pow(f, p - 2, p) % p
        r = _sqrt_modp(d2, p)
        d = min(r, p - r)
        assert 1 <= d <= isqrt(order), "degree out of range"
        degrees.append(d)
    assert sum(d * d for d in degrees) == order

    # exact value lift per class from eigenvalue multiplicities
    z = _primitive_root(p)
    power_classes = []
    for j, c in enumerate(classes):
        n = c.order
        rep = reps[j]
        pcs = []
        cur = G.identity_idx()
        for r in range(n):
            pcs.append(G.class_of(cur))
            cur = G.idx(mul(G.elements[cur], rep))
        power_classes.append(pcs)

    chars = []
    for w, d in zip(omegas, degrees):
        row = []
        chi_p = [d * w[j] % p * inv_sizes[j] % p for j in range(k)]
        for j, c in enumerate(classes):
            n = c.order
            lam = pow(z, (p - 1) // n, p)
            lam_inv = pow(lam, p - 2, p)
            inv_n = pow(n, p - 2, p)
            counts = {}
            for m in range(n):
                s = 0
                lm = pow(lam_inv, m, p)
                t = 1
                for r in range(n):
                    s = (s + chi_p[power_classes[j][r]] * t) % p
                    t = t * lm % p
                c_m = s * inv_n % p
                assert c_m <= d, "eigenvalue multiplicity out of range"
                if c_m:
                    counts[m] = c_m
            assert sum(counts.values()) == d
            row.append(Cyclotomic.from_exponent_counts(n, counts))
        chars.append(tuple(row))

    # deterministic row order: degree, then the mod-p value vector
    key = sorted(range(k), key=lambda i: (degrees[i],
                                          tuple(degrees[i] * omegas[i][j] % p for j in range(k))))
    chars = [chars[i] for i in key]
    degrees = [degrees[i] for i in key]

    table = CharacterTable(G, classes, chars, degrees, p)
    for i in range(k):
        assert table.chars[i][id_class].rational_value() == degrees[i]
    return table


def _unit(k, j):
    v = [0] * k
    v[j] = 1
    return v


def _restrict(M, basis, p):
    """Matrix of w -> M w on span(basis), in basis coordinates."""
    k = len(M)
    cols = []
    for b in basis:
        img = [sum(M[r][c] * b[c] for c in range(k)) % p for r in range(k)]
        cols.append(_coords_in(basis, img, p))
    n = len(basis)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _coords_in(basis, vec, p):
    """Solve vec = sum c_t basis[t] over GF(p)."""
    k = len(vec)
    n = len(basis)
    aug = [[basis[t][r] for t in range(n)] + [vec[r]] for r in range(k)]
    coords = [0] * n
    r = 0
    piv = []
    for c in range(n):
        pr = next((i for i in range(r, k) if aug[i][c] % p), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = pow(aug[r][c], p - 2, p)
        aug[r] = [x * inv % p for x in aug[r]]
        for i in range(k):
            if i != r and aug[i][c] % p:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        piv.append(c)
        r += 1
    for i in range(r, k):
        assert aug[i][n] % p == 0, "vector outside span"
    for row_i, c in enumerate(piv):
        coords[c] = aug[row_i][n]
    return coords


def _nullspace_modp(B, p):
    """Basis of {v : B v = 0} over GF(p) (column vectors as lists)."""
    n = len(B)
    rows = [row[:] for row in B]
    piv_cols = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, n) if rows[i][c] % p), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    free = [c for c in range(n) if c not in piv_cols]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for row_i, pc in enumerate(piv_cols):
            v[pc] = (-rows[row_i][fc]) % p
        basis.append(v)
    return basis
