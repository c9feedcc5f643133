"""Builtin group catalog.

Every builtin is constructed from explicit standard generators:
dihedral/semidihedral groups act on Z_n, symmetric and alternating groups
use adjacent cycles, PSL/PGL(2,q) act as Mobius maps on the projective
line over GF(q) (q odd, q <= 11).
"""

from __future__ import annotations

import re

from .perm import PermGroup, generate, parse_cycles

_Q_ALLOWED = (3, 5, 7, 9, 11)


def _gf(q: int):
    """Addition/multiplication tables for GF(q), q an odd prime or 9."""
    if q == 9:
        # GF(9) = GF(3)[x]/(x^2 + 1); element a + b*x encoded as a + 3b
        def enc(a, b):
            return (a % 3) + 3 * (b % 3)

        add = [[enc((i % 3) + (j % 3), (i // 3) + (j // 3)) for j in range(9)]
               for i in range(9)]
        mul = [[0] * 9 for _ in range(9)]
        for i in range(9):
            for j in range(9):
                a, b = i % 3, i // 3
                c, d = j % 3, j // 3
                mul[i][j] = enc(a * c - b * d, a * d + b * c)
        return add, mul
    add = [[(i + j) % q for j in range(q)] for i in range(q)]
    mul = [[(i * j) % q for j in range(q)] for i in range(q)]
    return add, mul


def _mobius_perm(mat, q: int) -> tuple:
    """Permutation of P^1(GF(q)) = {0..q-1, infinity=q} induced by a 2x2 matrix."""
    add, mul = _gf(q)
    inv = [0] * q
    for i in range(1, q):
        inv[i] = next(j for j in range(1, q) if mul[i][j] == 1)
    neg = [next(j for j in range(q) if add[i][j] == 0) for i in range(q)]
    a, b, c, d = mat
    images = []
    for z in range(q):
        num = add[mul[a][z]][b]
        den = add[mul[c][z]][d]
        images.append(q if den == 0 else mul[num][inv[den]])
    # image of infinity: a/c
    images.append(q if c == 0 else mul[a][inv[c]])
    assert sorted(images) == list(range(q + 1))
    return tuple(images)


def _primitive_element(q: int) -> int:
    add, mul = _gf(q)
    for x in range(2, q):
        seen = {x}
        y = x
        while True:
            y = mul[y][x]
            if y in seen:
                break
            seen.add(y)
        if len(seen) == q - 1:
            return x
    raise ValueError(f"no primitive element for q={q}")


def _psl2(q: int) -> PermGroup:
    if q not in _Q_ALLOWED:
        raise ValueError(f"builtin PSL(2,q) supports odd q <= 11, got {q}")
    add, mul = _gf(q)
    neg1 = next(j for j in range(q) if add[1][j] == 0)
    t = _mobius_perm((1, 1, 0, 1), q)        # z -> z + 1
    w = _mobius_perm((0, neg1, 1, 0), q)     # z -> -1/z
    nu = _primitive_element(q)
    nu2 = mul[nu][nu]
    dd = _mobius_perm((nu2, 0, 0, 1), q)     # z -> nu^2 z
    return generate([t, w, dd])


def _pgl2(q: int) -> PermGroup:
    if q not in _Q_ALLOWED:
        raise ValueError(f"builtin PGL(2,q) supports odd q <= 11, got {q}")
    add, mul = _gf(q)
    neg1 = next(j for j in range(q) if add[1][j] == 0)
    t = _mobius_perm((1, 1, 0, 1), q)
    w = _mobius_perm((0, neg1, 1, 0), q)
    nu = _primitive_element(q)
    d = _mobius_perm((nu, 0, 0, 1), q)       # z -> nu z  (non-square det)
    return generate([t, w, d])


def _dihedral(n: int) -> PermGroup:
    """Dihedral group of order n acting on Z_{n/2}."""
    m = n // 2
    rot = tuple((i + 1) % m for i in range(m))
    ref = tuple((-i) % m for i in range(m))
    return generate([rot, ref])


def _semidihedral16() -> PermGroup:
    # <r, x | r^8 = x^2 = 1, r^x = r^3> acting on Z_8
    r = tuple((i + 1) % 8 for i in range(8))
    x = tuple((3 * i) % 8 for i in range(8))
    return generate([r, x])


def _cyclic(n: int) -> PermGroup:
    return generate([tuple((i + 1) % n for i in range(n))])


def _direct_product(parts) -> PermGroup:
    """Direct product acting on the disjoint union of the factors' points."""
    degree = sum(p.degree for p in parts)
    gens = []
    offset = 0
    for p in parts:
        for g in p.generators:
            images = list(range(degree))
            for i, im in enumerate(g):
                images[offset + i] = offset + im
            gens.append(tuple(images))
        offset += p.degree
    return generate(gens, degree=degree)


def builtin_group(name: str) -> PermGroup:
    """Look up a builtin group by its catalog name; 'AxB' builds products."""
    name = name.lower()
    if "x" in name and name != "c2xs3" and not name.startswith("x"):
        parts = name.split("x")
        if all(parts):
            return _direct_product([builtin_group(p) for p in parts])
    if name == "d8":
        return _dihedral(8)
    if name == "d16":
        return _dihedral(16)
    if name == "sd16":
        return _semidihedral16()
    if name == "s3":
        return generate([parse_cycles("(1 2 3)"), parse_cycles("(1 2)")])
    if name == "s4":
        return generate([parse_cycles("(1 2 3 4)"), parse_cycles("(1 2)")])
    if name == "s5":
        return generate([parse_cycles("(1 2 3 4 5)"), parse_cycles("(1 2)")])
    if name == "a7":
        return generate([parse_cycles("(1 2 3)"), parse_cycles("(3 4 5 6 7)", degree=7)])
    if name == "psl27":
        return _psl2(7)
    if name == "pgl27":
        return _pgl2(7)
    if name == "c2xs3":
        return generate([parse_cycles("(1 2)", degree=5),
                         parse_cycles("(3 4 5)"), parse_cycles("(3 4)", degree=5)])
    m = re.fullmatch(r"c(\d+)", name)
    if m:
        return _cyclic(int(m.group(1)))
    m = re.fullmatch(r"psl2q\((\d+)\)|psl2_?(\d+)", name)
    if m:
        return _psl2(int(m.group(1) or m.group(2)))
    m = re.fullmatch(r"pgl2q\((\d+)\)|pgl2_?(\d+)", name)
    if m:
        return _pgl2(int(m.group(1) or m.group(2)))
    raise ValueError(f"unknown builtin group: {name}")


# Morita-family hints for classification matching; the pipeline records these as a
# labeled hypothesis and verifies them against the block's degree profile.
MORITA_HINTS = {
    "psl27": "vi",
    "s5": "ii",
    "pgl27": "iii",
    "a7": "iv",
}


def morita_hint(name: str) -> str | None:
    name = name.lower()
    if name in MORITA_HINTS:
        return MORITA_HINTS[name]
    m = re.fullmatch(r"psl2q\((\d+)\)|psl2_?(\d+)", name)
    if m:
        q = int(m.group(1) or m.group(2))
        return "v" if q % 4 == 1 else "vi"
    m = re.fullmatch(r"pgl2q\((\d+)\)|pgl2_?(\d+)", name)
    if m:
        q = int(m.group(1) or m.group(2))
        return "ii" if q % 4 == 1 else "iii"
    return None
