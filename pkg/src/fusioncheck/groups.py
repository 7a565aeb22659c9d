"""Exact finite-group engine: Cayley tables, conjugacy classes, commutator
subgroups, class-algebra constants, and the exact product-of-class-sums
identity.

All arithmetic on this side is exact (Python integers and Fractions); the
identity checks carry no tolerance at all.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import report
from .chartable import compute_table
from .errors import SizeError, StructureError
from .report import Verdict
from .rings import BasedRing, based_ring, validate
from .util import snap_positive_int

CLOSURE_CAP = 10000
GROUP_RING_CAP = 500


@dataclass(frozen=True, eq=False)
class CayleyTable:
    """A finite group as an explicit multiplication table; identity index 0."""

    mul: np.ndarray
    inv: np.ndarray
    identity: int = 0
    name: str = ""

    @property
    def order(self) -> int:
        return self.mul.shape[0]

    def validate(self) -> list[str]:
        """Exact check of the group axioms (associativity exhaustively)."""
        bad = []
        n = self.order
        mul, inv, e = self.mul, self.inv, self.identity
        if mul.shape != (n, n) or np.any(mul < 0) or np.any(mul >= n):
            return ["multiplication table entries out of range"]
        if not (np.array_equal(mul[e], np.arange(n)) and np.array_equal(mul[:, e], np.arange(n))):
            bad.append("identity law fails")
        if np.any(mul[np.arange(n), inv] != e) or np.any(mul[inv, np.arange(n)] != e):
            bad.append("inverse law fails")
        # (ab)c == a(bc), chunked over the first index to bound memory
        for a0 in range(0, n, 64):
            a1 = min(n, a0 + 64)
            lhs = mul[mul[a0:a1], :]
            rhs = mul[a0:a1][:, mul]
            if not np.array_equal(lhs, rhs):
                bad.append("associativity fails")
                break
        return bad

    def __repr__(self) -> str:
        return f"CayleyTable({self.name or 'group'}, order={self.order})"


def cayley_table(mul, name: str = "") -> CayleyTable:
    arr = np.asarray(mul, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise StructureError(f"Cayley table must be square, got shape {arr.shape}")
    n = arr.shape[0]
    if np.any(arr < 0) or np.any(arr >= n):
        raise StructureError("Cayley table entries out of range")
    inv = np.full(n, -1, dtype=np.int64)
    for g in range(n):
        hits = np.nonzero(arr[g] == 0)[0]
        if len(hits) != 1:
            raise StructureError(f"element {g} has {len(hits)} inverses")
        inv[g] = hits[0]
    arr.setflags(write=False)
    inv.setflags(write=False)
    tab = CayleyTable(mul=arr, inv=inv, identity=0, name=name)
    bad = tab.validate()
    if bad:
        raise StructureError("not a group: " + "; ".join(bad))
    return tab


# ---------------------------------------------------------------------------
# Permutations and closure
# ---------------------------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> tuple[int, ...]:
    """Parse cycle notation like "(0 1 2)(3 4)" into a one-line image tuple."""
    chunks = _CYCLE_RE.findall(text)
    if not chunks and text.strip() not in ("", "()"):
        raise StructureError(f"cannot parse permutation {text!r}")
    moved: dict[int, int] = {}
    top = -1
    for chunk in chunks:
        pts = [int(t) for t in re.split(r"[,\s]+", chunk.strip()) if t]
        if len(pts) != len(set(pts)):
            raise StructureError(f"repeated point in cycle {chunk!r}")
        for p in pts:
            top = max(top, p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            if a in moved:
                raise StructureError(f"point {a} appears in two cycles of {text!r}")
            moved[a] = b
    n = degree if degree is not None else top + 1
    if any(p >= n for p in moved):
        raise StructureError(f"permutation {text!r} exceeds degree {n}")
    return tuple(moved.get(i, i) for i in range(max(n, 1)))


def _as_perm(p, degree: int | None) -> tuple[int, ...]:
    if isinstance(p, str):
        return parse_cycles(p, degree)
    images = tuple(int(x) for x in p)
    if degree is not None and len(images) < degree:
        images = images + tuple(range(len(images), degree))
    if sorted(images) != list(range(len(images))):
        raise StructureError(f"{p!r} is not a permutation")
    return images


def cayley_from_generators(
    perms: Sequence, cap: int = CLOSURE_CAP, name: str = ""
) -> CayleyTable:
    """Close a set of permutations under composition and tabulate the result.

    Elements are numbered breadth-first from the identity, taking generators
    in the order given, so the numbering is reproducible.
    """
    if not perms:
        raise StructureError("need at least one generator")
    degree = None
    for p in perms:
        if not isinstance(p, str):
            degree = max(degree or 0, len(list(p)))
    gens = [_as_perm(p, degree) for p in perms]
    degree = max(len(g) for g in gens)
    gens = [g + tuple(range(len(g), degree)) for g in gens]

    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                prod = tuple(e[g[x]] for x in range(degree))  # e o g
                if prod not in index:
                    if len(elements) >= cap:
                        raise SizeError(f"closure exceeded the cap of {cap} elements")
                    index[prod] = len(elements)
                    elements.append(prod)
                    nxt.append(prod)
        frontier = nxt

    n = len(elements)
    mul = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            mul[i, j] = index[tuple(a[b[x]] for x in range(degree))]
    return cayley_table(mul, name=name)


# ---------------------------------------------------------------------------
# Conjugacy classes and class-algebra constants
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ClassData:
    """Conjugacy classes (class 0 = identity), class sizes, the inverse-class
    permutation, the commutator subgroup, and the class-algebra constants
    a[i, j, k] = #{(x, y) in C_i x C_j : x y = rep_k}."""

    classes: tuple[tuple[int, ...], ...]
    sizes: tuple[int, ...]
    class_of: np.ndarray
    reps: tuple[int, ...]
    inverse_class: tuple[int, ...]
    commutator: tuple[int, ...]
    a: np.ndarray

    @property
    def num_classes(self) -> int:
        return len(self.classes)


def class_data(tab: CayleyTable) -> ClassData:
    mul, inv, n = tab.mul, tab.inv, tab.order
    class_of = np.full(n, -1, dtype=np.int64)
    classes: list[tuple[int, ...]] = []
    for g in range(n):
        if class_of[g] >= 0:
            continue
        orbit = sorted({int(mul[mul[x, g], inv[x]]) for x in range(n)})
        idx = len(classes)
        classes.append(tuple(orbit))
        for h in orbit:
            class_of[h] = idx
    m = len(classes)
    sizes = tuple(len(c) for c in classes)
    reps = tuple(c[0] for c in classes)
    inverse_class = tuple(int(class_of[inv[rep]]) for rep in reps)
    if any(inverse_class[inverse_class[j]] != j for j in range(m)):
        raise StructureError("inverse-class map is not an involution")

    # commutator subgroup: closure of all [g, h] = g^-1 h^-1 g h
    comm = {int(mul[mul[inv[g], inv[h]], mul[g, h]]) for g in range(n) for h in range(n)}
    comm.add(tab.identity)
    members = sorted(comm)
    while True:
        new = set(members)
        arr = np.array(members)
        prods = mul[np.ix_(arr, arr)].ravel()
        new.update(int(x) for x in prods)
        if len(new) == len(members):
            break
        members = sorted(new)
    commutator = tuple(members)
    cset = set(commutator)
    for j in range(m):
        inside = [g in cset for g in classes[j]]
        if any(inside) and not all(inside):
            raise StructureError("commutator subgroup is not a union of classes")

    a = np.zeros((m, m, m), dtype=np.int64)
    for k, rep in enumerate(reps):
        for x in range(n):
            y = int(mul[inv[x], rep])
            a[class_of[x], class_of[y], k] += 1
    # well-definedness: recount against a second representative where one exists
    for k, cls in enumerate(classes):
        if len(cls) < 2:
            continue
        alt = np.zeros((m, m), dtype=np.int64)
        rep2 = cls[1]
        for x in range(n):
            y = int(mul[inv[x], rep2])
            alt[class_of[x], class_of[y]] += 1
        if not np.array_equal(alt, a[:, :, k]):
            raise StructureError(
                f"class-algebra constants disagree between representatives of class {k}"
            )
    a.setflags(write=False)
    class_of.setflags(write=False)
    return ClassData(
        classes=tuple(classes),
        sizes=sizes,
        class_of=class_of,
        reps=reps,
        inverse_class=inverse_class,
        commutator=commutator,
        a=a,
    )


# ---------------------------------------------------------------------------
# Exact product-of-class-sums identity
# ---------------------------------------------------------------------------


def _mul_class_vectors(
    a: np.ndarray, u: list[Fraction], v: list[Fraction]
) -> list[Fraction]:
    m = len(u)
    out = [Fraction(0)] * m
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, vj in enumerate(v):
            if not vj:
                continue
            w = ui * vj
            for k in range(m):
                c = int(a[i, j, k])
                if c:
                    out[k] += w * c
    return out


def product_normalized_class_sums(cls: ClassData) -> list[Fraction]:
    """Coefficients of prod_j C_j / |C_j| in the class basis, exactly."""
    m = cls.num_classes
    vec = [Fraction(0)] * m
    vec[0] = Fraction(1)
    for j in range(m):
        basis = [Fraction(0)] * m
        basis[j] = Fraction(1, cls.sizes[j])
        vec = _mul_class_vectors(cls.a, vec, basis)
    return vec


def verify_harada_group(tab: CayleyTable, cls: ClassData | None = None) -> Verdict:
    """Exact check: (prod_j C_j/|C_j|)^2 = (1/|G'|) sum over classes inside
    the commutator subgroup of C_j."""
    if cls is None:
        cls = class_data(tab)
    m = cls.num_classes
    p = product_normalized_class_sums(cls)
    p2 = _mul_class_vectors(cls.a, p, p)
    cset = set(cls.commutator)
    rhs = [
        Fraction(1, len(cls.commutator)) if cls.reps[j] in cset else Fraction(0)
        for j in range(m)
    ]
    bad = [(j, p2[j], rhs[j]) for j in range(m) if p2[j] != rhs[j]]
    if bad:
        j, got, want = bad[0]
        return report.failed(
            "harada-exact",
            exact=True,
            details=f"class {j}: coefficient {got} != {want} "
            f"({len(bad)} classes disagree)",
        )
    return report.passed(
        "harada-exact", exact=True,
        details=f"{m} classes, |G'| = {len(cls.commutator)}",
    )


def product_class_sums_group_ring(
    tab: CayleyTable,
    cls: ClassData,
    normalized: bool = True,
    cap: int = GROUP_RING_CAP,
) -> list[Fraction]:
    """The same product computed by direct convolution in the full group ring."""
    n = tab.order
    if n > cap:
        raise SizeError(f"group-ring oracle capped at order {cap}")
    mul = tab.mul
    vec = [Fraction(0)] * n
    vec[tab.identity] = Fraction(1)
    for j, members in enumerate(cls.classes):
        nxt = [Fraction(0)] * n
        scale = Fraction(1, cls.sizes[j]) if normalized else Fraction(1)
        for x, vx in enumerate(vec):
            if not vx:
                continue
            w = vx * scale
            for g in members:
                nxt[int(mul[x, g])] += w
        vec = nxt
    return vec


def group_ring_oracle(tab: CayleyTable, cls: ClassData | None = None,
                      cap: int = GROUP_RING_CAP) -> Verdict:
    """Exact comparison of the class-basis product with the group-ring
    convolution product (the class-basis vector expanded elementwise)."""
    if cls is None:
        cls = class_data(tab)
    p = product_normalized_class_sums(cls)
    conv = product_class_sums_group_ring(tab, cls, normalized=True, cap=cap)
    expanded = [p[int(cls.class_of[g])] for g in range(tab.order)]
    if expanded != conv:
        bad = next(g for g in range(tab.order) if expanded[g] != conv[g])
        return report.failed(
            "group-ring-oracle", exact=True,
            details=f"element {bad}: {expanded[bad]} != {conv[bad]}",
        )
    return report.passed("group-ring-oracle", exact=True)


def coset_support_check(tab: CayleyTable, cls: ClassData | None = None,
                        cap: int = GROUP_RING_CAP) -> Verdict:
    """The unnormalised product of all class sums must be supported on exactly
    one coset of the commutator subgroup."""
    if cls is None:
        cls = class_data(tab)
    conv = product_class_sums_group_ring(tab, cls, normalized=False, cap=cap)
    supp = {g for g, c in enumerate(conv) if c}
    s = min(supp)
    coset = {int(tab.mul[s, h]) for h in cls.commutator}
    ok = supp == coset
    return report.from_bool(
        "coset-support", ok, exact=True,
        details=f"support size {len(supp)}, |G'| = {len(cls.commutator)}",
    )


# ---------------------------------------------------------------------------
# Bridges to the ring side
# ---------------------------------------------------------------------------


def class_algebra_as_ring(cls: ClassData, name: str = "") -> BasedRing:
    """The class algebra as a based-profile ring: basis = class sums,
    structure constants = the a tensor, duality = the inverse-class map."""
    labels = [f"K{j}" for j in range(cls.num_classes)]
    ring = based_ring(cls.a, labels=labels, unit=0, dual=cls.inverse_class, name=name)
    bad = validate(ring, profile="based")
    if bad:
        raise StructureError("class algebra failed validation: " + "; ".join(bad))
    return ring


def character_ring(
    tab: CayleyTable,
    cls: ClassData | None = None,
    seed: int = 0,
    snap: float = 1e-6,
    name: str = "",
) -> BasedRing:
    """The character ring of a finite group as a fusion-profile based ring.

    The central characters come out of the class-algebra table; degrees and
    tensor-product multiplicities are recovered from them, snapped to
    integers, and the result is validated exactly.
    """
    if cls is None:
        cls = class_data(tab)
    n = tab.order
    ring_cls = class_algebra_as_ring(cls, name=f"Z({tab.name or 'G'})")
    table = compute_table(ring_cls, seed=seed)
    m = cls.num_classes
    sizes = np.array(cls.sizes, dtype=float)

    # row j is |C_i| chi_j(g_i) / chi_j(1); recover degrees from the norm
    omega = table.values
    deg = []
    for j in range(m):
        s = float((np.abs(omega[j]) ** 2 / sizes).sum())
        dj = snap_positive_int(np.sqrt(n / s), snap)
        if dj is None:
            raise StructureError(f"character degree of row {j} did not snap to an integer")
        deg.append(dj)
    if sum(d * d for d in deg) != n:
        raise StructureError("squared character degrees do not sum to the group order")
    degs = np.array(deg, dtype=float)
    chi = omega * degs[:, None] / sizes[None, :]

    # multiplicities N[a, b, c] = (1/|G|) sum_i |C_i| chi_a chi_b conj(chi_c)
    weighted = chi * sizes[None, :]
    N = np.einsum("ai,bi,ci->abc", weighted, chi, chi.conj()) / n
    if np.abs(N.imag).max() > snap:
        raise StructureError("tensor multiplicities are not real within the snap threshold")
    Nr = N.real
    Ni = np.round(Nr).astype(np.int64)
    if np.abs(Nr - Ni).max() > snap or Ni.min() < 0:
        raise StructureError("tensor multiplicities did not snap to non-negative integers")

    dual = []
    for a in range(m):
        hits = [
            b for b in range(m) if np.abs(chi[b] - chi[a].conj()).max() < 1e-6
        ]
        if len(hits) != 1:
            raise StructureError(f"conjugate character of row {a} not unique")
        dual.append(hits[0])

    labels = [f"chi{j}_d{deg[j]}" for j in range(m)]
    ring = based_ring(Ni, labels=labels, unit=0, dual=dual, name=name or f"R({tab.name or 'G'})")
    bad = validate(ring, profile="fusion")
    if bad:
        raise StructureError("character ring failed validation: " + "; ".join(bad))
    return ring
