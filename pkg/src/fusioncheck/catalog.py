"""Constructors for small groups: cyclic, abelian, dihedral, dicyclic,
(semi)direct and central products, plus the standard permutation groups.

small_groups(24) enumerates one Cayley table per isomorphism class of every
group of order at most 24 (74 classes); the test suite pins the counts and a
distinguishing fingerprint per class.
"""

from __future__ import annotations

from functools import reduce
from math import gcd

import numpy as np

from .errors import StructureError
from .groups import CayleyTable, cayley_from_generators, cayley_table


def cyclic(n: int) -> CayleyTable:
    if n < 1:
        raise StructureError("cyclic group needs order >= 1")
    idx = np.arange(n)
    return cayley_table((idx[:, None] + idx[None, :]) % n, name=f"C{n}")


def direct_product(a: CayleyTable, b: CayleyTable, name: str = "") -> CayleyTable:
    """Pairs (x, y) with index x * |B| + y."""
    na, nb = a.order, b.order
    am = np.repeat(np.repeat(a.mul, nb, axis=0), nb, axis=1)
    bm = np.tile(np.tile(b.mul, (na, 1)), (1, na))
    return cayley_table(am * nb + bm, name=name or f"{a.name}x{b.name}")


def abelian(*orders: int) -> CayleyTable:
    tabs = [cyclic(n) for n in orders]
    out = reduce(lambda x, y: direct_product(x, y), tabs)
    return cayley_table(out.mul, name="x".join(f"C{n}" for n in orders))


def semidirect_product(
    n_tab: CayleyTable, h_tab: CayleyTable, action: np.ndarray, name: str = ""
) -> CayleyTable:
    """N x| H with (x1, h1)(x2, h2) = (x1 * phi_{h1}(x2), h1 h2).

    action[h] is the permutation of N realised by phi_h; it must be a
    homomorphism from H into Aut(N), which is checked exactly.
    """
    act = np.asarray(action, dtype=np.int64)
    nn, nh = n_tab.order, h_tab.order
    if act.shape != (nh, nn):
        raise StructureError(f"action must have shape ({nh}, {nn})")
    if not np.array_equal(act[h_tab.identity], np.arange(nn)):
        raise StructureError("action of the identity is not trivial")
    for h in range(nh):
        img = act[h]
        if sorted(img) != list(range(nn)):
            raise StructureError(f"action of {h} is not a permutation")
        if not np.array_equal(img[n_tab.mul], n_tab.mul[np.ix_(img, img)]):
            raise StructureError(f"action of {h} is not an automorphism")
    for h1 in range(nh):
        for h2 in range(nh):
            if not np.array_equal(act[h_tab.mul[h1, h2]], act[h1][act[h2]]):
                raise StructureError("action is not a homomorphism")

    order = nn * nh
    mul = np.empty((order, order), dtype=np.int64)
    for x1 in range(nn):
        for h1 in range(nh):
            i = x1 * nh + h1
            tx2 = act[h1]  # phi_{h1}
            for x2 in range(nn):
                for h2 in range(nh):
                    mul[i, x2 * nh + h2] = (
                        n_tab.mul[x1, tx2[x2]] * nh + h_tab.mul[h1, h2]
                    )
    return cayley_table(mul, name=name or f"{n_tab.name}:{h_tab.name}")


def power_action(n: int, k: int, h_order: int) -> np.ndarray:
    """Action of C_{h_order} on C_n where the generator maps x to k*x."""
    if gcd(k, n) != 1:
        raise StructureError(f"{k} is not invertible mod {n}")
    if pow(k, h_order, n) != 1:
        raise StructureError(f"{k}^{h_order} != 1 mod {n}: not a homomorphism")
    act = np.empty((h_order, n), dtype=np.int64)
    x = np.arange(n)
    for t in range(h_order):
        act[t] = (pow(k, t, n) * x) % n
    return act


def dihedral(n: int) -> CayleyTable:
    """Dihedral group of order 2n."""
    tab = semidirect_product(
        cyclic(n), cyclic(2), power_action(n, n - 1 if n > 1 else 0, 2) if n > 1
        else np.zeros((2, 1), dtype=np.int64),
        name=f"D{n}",
    )
    return tab


def generalized_dihedral(ab: CayleyTable, name: str = "") -> CayleyTable:
    """A x| C2 with the inversion automorphism."""
    act = np.stack([np.arange(ab.order), np.asarray(ab.inv)])
    return semidirect_product(ab, cyclic(2), act, name=name or f"Dih({ab.name})")


def dicyclic(n: int) -> CayleyTable:
    """Dicyclic group of order 4n: a of order 2n, b^2 = a^n, b a b^-1 = a^-1."""
    if n < 1:
        raise StructureError("dicyclic group needs n >= 1")
    two_n = 2 * n
    order = 4 * n
    mul = np.empty((order, order), dtype=np.int64)
    for i1 in range(two_n):
        for j1 in range(2):
            a = i1 * 2 + j1
            for i2 in range(two_n):
                for j2 in range(2):
                    if j1 == 0:
                        i, j = (i1 + i2) % two_n, j2
                    elif j2 == 0:
                        i, j = (i1 - i2) % two_n, 1
                    else:
                        i, j = (i1 - i2 + n) % two_n, 0
                    mul[a, i2 * 2 + j2] = i * 2 + j
    return cayley_table(mul, name=f"Dic{n}")


def quotient(tab: CayleyTable, normal: set[int] | frozenset[int], name: str = "") -> CayleyTable:
    """Quotient by a normal subgroup, with exact well-definedness checks."""
    sub = sorted(set(int(x) for x in normal))
    sset = set(sub)
    if tab.identity not in sset:
        raise StructureError("subgroup must contain the identity")
    for a in sub:
        for b in sub:
            if int(tab.mul[a, b]) not in sset:
                raise StructureError("subset is not a subgroup")
    for g in range(tab.order):
        for h in sub:
            if int(tab.mul[tab.mul[g, h], tab.inv[g]]) not in sset:
                raise StructureError("subgroup is not normal")

    coset_of = np.full(tab.order, -1, dtype=np.int64)
    reps = []
    for g in range(tab.order):
        if coset_of[g] >= 0:
            continue
        members = sorted(int(tab.mul[g, h]) for h in sub)
        idx = len(reps)
        reps.append(members[0])
        for x in members:
            coset_of[x] = idx
    m = len(reps)
    mul = np.empty((m, m), dtype=np.int64)
    for i, gi in enumerate(reps):
        for j, gj in enumerate(reps):
            mul[i, j] = coset_of[tab.mul[gi, gj]]
    # well-definedness across all coset members
    for i in range(m):
        for j in range(m):
            ci = [g for g in range(tab.order) if coset_of[g] == i]
            cj = [g for g in range(tab.order) if coset_of[g] == j]
            for g in ci:
                for h in cj:
                    if coset_of[tab.mul[g, h]] != mul[i, j]:
                        raise StructureError("quotient product not well defined")
    return cayley_table(mul, name=name or f"{tab.name}/N")


def central_product(
    a: CayleyTable, b: CayleyTable, za: int, zb: int, name: str = ""
) -> CayleyTable:
    """(A x B) / <(za, zb)> for central elements za, zb of equal order."""
    prod = direct_product(a, b)
    gen = za * b.order + zb
    sub = {prod.identity}
    x = gen
    while x not in sub:
        sub.add(x)
        x = int(prod.mul[x, gen])
    return quotient(prod, sub, name=name or f"{a.name}o{b.name}")


def symmetric(n: int) -> CayleyTable:
    if n == 1:
        return cyclic(1)
    gens = [(1, 0) + tuple(range(2, n))]
    if n > 2:
        gens.append(tuple(range(1, n)) + (0,))
    return cayley_from_generators(gens, name=f"S{n}")


def alternating(n: int) -> CayleyTable:
    if n < 3:
        return cyclic(1)
    if n == 3:
        return cayley_from_generators([(1, 2, 0)], name="A3")
    three_cycle = (1, 2, 0) + tuple(range(3, n))
    if n % 2 == 1:
        long_cycle = tuple(range(1, n)) + (0,)
    else:
        long_cycle = (0,) + tuple(range(2, n)) + (1,)
    return cayley_from_generators([three_cycle, long_cycle], name=f"A{n}")


def sl23() -> CayleyTable:
    """SL(2, 3) acting on the eight non-zero vectors of F_3^2."""
    points = [(x, y) for x in range(3) for y in range(3) if (x, y) != (0, 0)]
    index = {v: i for i, v in enumerate(points)}

    def mat_perm(m):
        return tuple(
            index[((m[0][0] * x + m[0][1] * y) % 3, (m[1][0] * x + m[1][1] * y) % 3)]
            for (x, y) in points
        )

    s = mat_perm([[0, 2], [1, 0]])
    t = mat_perm([[1, 1], [0, 1]])
    tab = cayley_from_generators([s, t], name="SL(2,3)")
    if tab.order != 24:
        raise StructureError(f"SL(2,3) construction has order {tab.order}")
    return tab


def pauli16() -> CayleyTable:
    """Central product of the order-8 dihedral group and C4 (order 16)."""
    d4 = dihedral(4)
    r2 = 2 * 2  # rotation part 2, reflection part 0: index x * 2 + h
    return central_product(d4, cyclic(4), r2, 2, name="D4oC4")


def _swap_action_c2c2() -> np.ndarray:
    """C4 acting on C2 x C2 by swapping the coordinates (through C2)."""
    swap = np.array([0, 2, 1, 3])  # (x, y) index x * 2 + y -> (y, x)
    ident = np.arange(4)
    return np.stack([ident, swap, ident, swap])


def _c3_by_d4_action() -> np.ndarray:
    """D4 acting on C3: rotations of odd exponent invert, reflections fixed
    by the Klein kernel {e, r^2, s, r^2 s}."""
    ident = np.arange(3)
    invert = np.array([0, 2, 1])
    act = np.empty((8, 3), dtype=np.int64)
    for x in range(4):
        for h in range(2):
            act[x * 2 + h] = invert if x % 2 == 1 else ident
    return act


def named_group(name: str) -> CayleyTable:
    """The groups the command line and the corpus refer to by name."""
    builders = {
        "S3": lambda: symmetric(3),
        "S4": lambda: symmetric(4),
        "A4": lambda: alternating(4),
        "A5": lambda: alternating(5),
        "D4": lambda: dihedral(4),
        "D5": lambda: dihedral(5),
        "Q8": lambda: dicyclic(2),
    }
    try:
        return builders[name]()
    except KeyError:
        raise StructureError(f"unknown group name {name!r}") from None


def small_groups(max_order: int = 24) -> list[CayleyTable]:
    """One Cayley table per isomorphism class of groups of order <= max_order
    (supported up to 24)."""
    if max_order > 24:
        raise StructureError("catalog covers orders up to 24")
    by_order: dict[int, list[CayleyTable]] = {
        1: [cyclic(1)],
        2: [cyclic(2)],
        3: [cyclic(3)],
        4: [cyclic(4), abelian(2, 2)],
        5: [cyclic(5)],
        6: [cyclic(6), symmetric(3)],
        7: [cyclic(7)],
        8: [
            cyclic(8),
            abelian(4, 2),
            abelian(2, 2, 2),
            dihedral(4),
            dicyclic(2),  # Q8
        ],
        9: [cyclic(9), abelian(3, 3)],
        10: [cyclic(10), dihedral(5)],
        11: [cyclic(11)],
        12: [
            cyclic(12),
            abelian(6, 2),
            dihedral(6),
            alternating(4),
            dicyclic(3),
        ],
        13: [cyclic(13)],
        14: [cyclic(14), dihedral(7)],
        15: [cyclic(15)],
        16: [
            cyclic(16),
            abelian(4, 4),
            semidirect_product(abelian(2, 2), cyclic(4), _swap_action_c2c2(),
                               name="(C2xC2):C4"),
            semidirect_product(cyclic(4), cyclic(4), power_action(4, 3, 4),
                               name="C4:C4"),
            abelian(8, 2),
            semidirect_product(cyclic(8), cyclic(2), power_action(8, 5, 2),
                               name="M4(2)"),
            dihedral(8),
            semidirect_product(cyclic(8), cyclic(2), power_action(8, 3, 2),
                               name="SD16"),
            dicyclic(4),  # Q16
            abelian(4, 2, 2),
            direct_product(dihedral(4), cyclic(2)),
            direct_product(dicyclic(2), cyclic(2), name="Q8xC2"),
            pauli16(),
            abelian(2, 2, 2, 2),
        ],
        17: [cyclic(17)],
        18: [
            cyclic(18),
            dihedral(9),
            abelian(3, 6),
            direct_product(symmetric(3), cyclic(3), name="S3xC3"),
            generalized_dihedral(abelian(3, 3), name="(C3xC3):C2"),
        ],
        19: [cyclic(19)],
        20: [
            cyclic(20),
            abelian(10, 2),
            dihedral(10),
            dicyclic(5),
            semidirect_product(cyclic(5), cyclic(4), power_action(5, 2, 4),
                               name="F20"),
        ],
        21: [
            cyclic(21),
            semidirect_product(cyclic(7), cyclic(3), power_action(7, 2, 3),
                               name="C7:C3"),
        ],
        22: [cyclic(22), dihedral(11)],
        23: [cyclic(23)],
        24: [
            cyclic(24),
            abelian(12, 2),
            abelian(6, 2, 2),
            dihedral(12),
            dicyclic(6),
            symmetric(4),
            sl23(),
            direct_product(alternating(4), cyclic(2), name="A4xC2"),
            direct_product(dihedral(4), cyclic(3)),
            direct_product(dicyclic(2), cyclic(3), name="Q8xC3"),
            direct_product(symmetric(3), cyclic(4), name="S3xC4"),
            direct_product(dihedral(6), cyclic(2)),
            direct_product(dicyclic(3), cyclic(2), name="Dic3xC2"),
            semidirect_product(cyclic(3), cyclic(8),
                               np.stack([np.arange(3) if t % 2 == 0 else
                                         np.array([0, 2, 1]) for t in range(8)]),
                               name="C3:C8"),
            semidirect_product(cyclic(3), dihedral(4), _c3_by_d4_action(),
                               name="C3:D4"),
        ],
    }
    out: list[CayleyTable] = []
    for order in range(1, max_order + 1):
        out.extend(by_order.get(order, []))
    return out
