"""Based rings with duality: validation, Frobenius-Perron data, subrings, grading.

A based ring of rank r has basis b_0 .. b_{r-1}, a unit basis element,
non-negative integer structure constants N[i, j, k] (the coefficient of b_k
in b_i * b_j) and an involution i -> dual[i] with N[i, dual[i], unit] >= 1.
Two validation profiles share this type:

* "based"  - the axioms above; group class algebras live here, where
  N[i, dual[i], unit] equals the conjugacy class size.
* "fusion" - additionally N[i, dual[i], unit] == 1, the fusion-ring axiom.

All operations treat rings as immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import NumericError, StructureError

PROFILES = ("based", "fusion")

INTEGER = "integer"
SQRT_INTEGER = "sqrt-integer"
OTHER = "other"


def _infer_dual(N: np.ndarray, unit: int) -> tuple[int, ...]:
    """Read the duality involution off the unit component of the products."""
    rank = N.shape[0]
    dual = []
    for i in range(rank):
        js = np.nonzero(N[i, :, unit])[0]
        if len(js) != 1:
            raise StructureError(
                f"cannot infer dual of basis index {i}: "
                f"{len(js)} partners hit the unit component"
            )
        dual.append(int(js[0]))
    return tuple(dual)


@dataclass(frozen=True, eq=False)
class BasedRing:
    """Immutable based ring; see module docstring for the axioms."""

    N: np.ndarray
    labels: tuple[str, ...]
    unit: int
    dual: tuple[int, ...]
    name: str = ""

    @property
    def rank(self) -> int:
        return self.N.shape[0]

    def fusion_matrix(self, i: int) -> np.ndarray:
        """Matrix of left multiplication by b_i: entry (k, j) is N[i, j, k]."""
        if not 0 <= i < self.rank:
            raise IndexError(f"basis index {i} out of range for rank {self.rank}")
        return self.N[i].T.copy()

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.N, self.N.transpose(1, 0, 2)))

    def norms(self) -> np.ndarray:
        """The vector N[i, dual[i], unit]; all ones on the fusion profile."""
        r = self.rank
        return self.N[np.arange(r), np.array(self.dual), self.unit].copy()

    def product(self, i: int, j: int) -> np.ndarray:
        """Coefficient vector of b_i * b_j."""
        return self.N[i, j].copy()

    def __repr__(self) -> str:
        tag = self.name or "ring"
        return f"BasedRing({tag}, rank={self.rank})"


def based_ring(
    N,
    labels: Sequence[str] | None = None,
    unit: int = 0,
    dual: Sequence[int] | None = None,
    name: str = "",
) -> BasedRing:
    """Build a BasedRing, checking structure (shapes, integrality) but not axioms.

    Axiom violations are reported by validate(); structural problems raise
    StructureError immediately because no operation can run on such data.
    """
    arr = np.asarray(N)
    if arr.ndim != 3 or len(set(arr.shape)) != 1:
        raise StructureError(f"structure constants must be rank^3, got shape {arr.shape}")
    if arr.dtype.kind not in "iu":
        if not np.all(arr == np.round(arr)):
            raise StructureError("structure constants must be integers")
        arr = np.round(arr).astype(np.int64)
    else:
        arr = arr.astype(np.int64)
    if np.any(arr < 0):
        raise StructureError("structure constants must be non-negative")
    rank = arr.shape[0]
    if not 0 <= unit < rank:
        raise StructureError(f"unit index {unit} out of range for rank {rank}")
    if labels is None:
        labels = tuple(f"b{i}" for i in range(rank))
    else:
        labels = tuple(str(s) for s in labels)
        if len(labels) != rank:
            raise StructureError(f"{len(labels)} labels for rank {rank}")
    if dual is None:
        dual_t = _infer_dual(arr, unit)
    else:
        dual_t = tuple(int(d) for d in dual)
        if sorted(dual_t) != list(range(rank)):
            raise StructureError("dual must be a permutation of the basis indices")
    arr.setflags(write=False)
    return BasedRing(N=arr, labels=labels, unit=unit, dual=dual_t, name=name)


def validate(ring: BasedRing, profile: str = "fusion") -> list[str]:
    """Check every based-ring axiom; return the list of violations (empty = valid)."""
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}, expected one of {PROFILES}")
    N, r, u, dual = ring.N, ring.rank, ring.unit, ring.dual
    bad: list[str] = []

    eye = np.eye(r, dtype=N.dtype)
    if not np.array_equal(N[u], eye):
        bad.append("unit law fails: N[unit, j, k] != delta_{jk}")
    if not np.array_equal(N[:, u, :], eye):
        bad.append("unit law fails: N[j, unit, k] != delta_{jk}")

    lhs = np.einsum("ijm,mkl->ijkl", N, N)
    rhs = np.einsum("jkm,iml->ijkl", N, N)
    if not np.array_equal(lhs, rhs):
        i, j, k, _ = np.argwhere(lhs != rhs)[0]
        bad.append(
            f"associativity fails at (b_{i} b_{j}) b_{k} != b_{i} (b_{j} b_{k})"
        )

    if dual[u] != u:
        bad.append(f"dual(unit) = {dual[u]} != unit")
    if any(dual[dual[i]] != i for i in range(r)):
        bad.append("dual is not an involution")
    for i in range(r):
        for j in range(r):
            n0 = int(N[i, j, u])
            if j == dual[i]:
                if n0 < 1:
                    bad.append(f"duality fails: N[{i}, {j}, unit] = 0 but {j} = dual({i})")
                elif profile == "fusion" and n0 != 1:
                    bad.append(
                        f"fusion profile fails: N[{i}, {j}, unit] = {n0} != 1"
                    )
            elif n0 != 0:
                bad.append(f"duality fails: N[{i}, {j}, unit] = {n0} but {j} != dual({i})")
    return bad


def permute_basis(ring: BasedRing, perm: Sequence[int]) -> BasedRing:
    """Relabel the basis: new index x corresponds to old index perm[x]."""
    p = list(perm)
    if sorted(p) != list(range(ring.rank)):
        raise StructureError("perm must be a permutation of the basis indices")
    inv = [0] * ring.rank
    for x, old in enumerate(p):
        inv[old] = x
    N = ring.N[np.ix_(p, p, p)]
    return based_ring(
        N,
        labels=[ring.labels[old] for old in p],
        unit=inv[ring.unit],
        dual=[inv[ring.dual[old]] for old in p],
        name=ring.name,
    )


# ---------------------------------------------------------------------------
# Frobenius-Perron dimensions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DimensionData:
    """Perron-Frobenius dimensions d_i with integrality snapping applied.

    dims_sq holds d_i^2 with snapped entries stored exactly (so that totals of
    weakly-integral rings come out as exact floats); flags holds one of
    "integer", "sqrt-integer", "other" per basis index.
    """

    dims: np.ndarray
    dims_sq: np.ndarray
    total: float
    flags: tuple[str, ...]

    def is_integral(self) -> bool:
        return all(f == INTEGER for f in self.flags)

    def is_weakly_integral(self) -> bool:
        return all(f in (INTEGER, SQRT_INTEGER) for f in self.flags)


def spectral_radius(M: np.ndarray, tol: float = 1e-9, max_iter: int = 50000) -> float:
    """Perron-Frobenius eigenvalue of a non-negative matrix by power iteration.

    Iterates on M + I to kill periodicity and stops once the Collatz-Wielandt
    enclosure min_j (Av)_j/v_j <= rho(A) <= max_j (Av)_j/v_j is tight.
    """
    A = np.asarray(M, dtype=float)
    if np.any(A < 0):
        raise ValueError("spectral_radius expects a non-negative matrix")
    n = A.shape[0]
    A = A + np.eye(n)
    v = np.full(n, 1.0 / np.sqrt(n))
    gap = np.inf
    for _ in range(max_iter):
        w = A @ v
        ratios = w / v
        lo, hi = ratios.min(), ratios.max()
        gap = hi - lo
        if gap <= tol * max(1.0, hi):
            return 0.5 * (lo + hi) - 1.0
        v = w / np.linalg.norm(w)
    raise NumericError(
        f"power iteration did not converge within {max_iter} iterations", residual=gap
    )


def _snap_dim(d: float, M: np.ndarray, snap: float) -> tuple[float, float, str]:
    """Snap d to an integer or sqrt-of-integer when that re-verifies as an eigenvalue."""
    candidates: list[tuple[float, float, str]] = []
    r = round(d)
    if r >= 1 and abs(d - r) < snap:
        candidates.append((float(r), float(r * r), INTEGER))
    r2 = round(d * d)
    if r2 >= 1 and abs(d * d - r2) < snap:
        s = float(np.sqrt(r2))
        flag = INTEGER if round(s) ** 2 == r2 else SQRT_INTEGER
        candidates.append((float(round(s)) if flag == INTEGER else s,
                           float(r2), flag))
    for dv, dsq, flag in candidates:
        sigma = np.linalg.svd(M - dv * np.eye(M.shape[0]), compute_uv=False)[-1]
        if sigma < 1e-7 * max(1.0, dv):
            return dv, dsq, flag
    return d, d * d, OTHER


def fp_dims(ring: BasedRing, tol: float = 1e-9, snap: float = 1e-6) -> DimensionData:
    """Perron-Frobenius dimension of every basis element.

    d_i is the spectral radius of the fusion matrix of b_i; d_unit is 1
    exactly.  Values within the snap threshold of an integer (or of a square
    root of an integer) are snapped after re-verifying the snapped value is an
    eigenvalue.
    """
    r = ring.rank
    dims = np.ones(r)
    dims_sq = np.ones(r)
    flags = [INTEGER] * r
    for i in range(r):
        if i == ring.unit:
            continue
        M = ring.fusion_matrix(i).astype(float)
        d = spectral_radius(M, tol=tol)
        dv, dsq, flag = _snap_dim(d, M, snap)
        dims[i], dims_sq[i], flags[i] = dv, dsq, flag
    return DimensionData(
        dims=dims, dims_sq=dims_sq, total=float(dims_sq.sum()), flags=tuple(flags)
    )


# ---------------------------------------------------------------------------
# Subrings, grading, nilpotency
# ---------------------------------------------------------------------------


def invertibles(ring: BasedRing) -> frozenset[int]:
    """Indices whose product with their dual is exactly the unit."""
    out = []
    unit_vec = np.zeros(ring.rank, dtype=ring.N.dtype)
    unit_vec[ring.unit] = 1
    for i in range(ring.rank):
        if np.array_equal(ring.N[i, ring.dual[i]], unit_vec):
            out.append(i)
    return frozenset(out)


def subring_closure(ring: BasedRing, seed: Iterable[int]) -> frozenset[int]:
    """Smallest index set containing seed and the unit, closed under duality
    and under taking the support of products."""
    s = set(int(i) for i in seed)
    s.add(ring.unit)
    while True:
        grown = set(s)
        grown.update(ring.dual[i] for i in s)
        idx = sorted(grown)
        support = np.nonzero(ring.N[np.ix_(idx, idx)].any(axis=(0, 1)))[0]
        grown.update(int(k) for k in support)
        if grown == s:
            return frozenset(s)
        s = grown


def adjoint_subring(ring: BasedRing) -> frozenset[int]:
    """Closure of the union of supports of b_i * b_{i*} over all i."""
    seeds: set[int] = set()
    for i in range(ring.rank):
        seeds.update(int(k) for k in np.nonzero(ring.N[i, ring.dual[i]])[0])
    return subring_closure(ring, seeds)


def pointed_subring(ring: BasedRing) -> frozenset[int]:
    """Closure of the invertible basis elements."""
    return subring_closure(ring, invertibles(ring))


def restrict(ring: BasedRing, indices: Iterable[int]) -> BasedRing:
    """Restriction of the ring to a closed index set (re-indexed)."""
    idx = sorted(set(int(i) for i in indices))
    if ring.unit not in idx:
        raise ValueError("restriction must contain the unit")
    outside = [k for k in range(ring.rank) if k not in idx]
    if outside and np.any(ring.N[np.ix_(idx, idx, outside)]):
        raise ValueError("index set is not closed under products")
    if any(ring.dual[i] not in idx for i in idx):
        raise ValueError("index set is not closed under duality")
    pos = {old: new for new, old in enumerate(idx)}
    return based_ring(
        ring.N[np.ix_(idx, idx, idx)],
        labels=[ring.labels[i] for i in idx],
        unit=pos[ring.unit],
        dual=[pos[ring.dual[i]] for i in idx],
        name=f"{ring.name}|{{{','.join(str(i) for i in idx)}}}" if ring.name else "",
    )


@dataclass(frozen=True)
class GradingData:
    """Universal grading: the adjoint part, the partition into graded
    components, and the group law on components."""

    adjoint: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    group_table: np.ndarray
    order: int

    def class_of(self, i: int) -> int:
        for c, members in enumerate(self.classes):
            if i in members:
                return c
        raise IndexError(i)


def universal_grading(ring: BasedRing) -> GradingData:
    """Partition the basis into grading components and verify the group law.

    Components are the orbits of i ~ j whenever some adjoint element a has
    N[a, i, j] > 0; the product of components is read off the support of
    b_i * b_j and must be single-valued.
    """
    r = ring.rank
    ad = sorted(adjoint_subring(ring))

    parent = list(range(r))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for a in ad:
        for i in range(r):
            for j in np.nonzero(ring.N[a, i])[0]:
                union(i, int(j))

    roots = sorted(set(find(i) for i in range(r)))
    classes = tuple(
        tuple(sorted(i for i in range(r) if find(i) == root)) for root in roots
    )
    cls_of = {}
    for c, members in enumerate(classes):
        for i in members:
            cls_of[i] = c

    unit_class = cls_of[ring.unit]
    if set(classes[unit_class]) != set(ad):
        raise ValueError(
            "grading inconsistency: the unit component differs from the adjoint part"
        )

    m = len(classes)
    table = -np.ones((m, m), dtype=int)
    for ci, members_i in enumerate(classes):
        for cj, members_j in enumerate(classes):
            targets = set()
            for i in members_i:
                for j in members_j:
                    targets.update(cls_of[int(k)] for k in np.nonzero(ring.N[i, j])[0])
            if len(targets) != 1:
                raise ValueError(
                    f"grading product of components {ci} and {cj} is not "
                    f"single-valued (fusion data inconsistent)"
                )
            table[ci, cj] = targets.pop()

    # group axioms on the component table
    for ci in range(m):
        if table[unit_class, ci] != ci or table[ci, unit_class] != ci:
            raise ValueError("grading component table has no identity")
    for ci in range(m):
        if unit_class not in table[ci]:
            raise ValueError(f"grading component {ci} has no inverse")
    for a in range(m):
        for b in range(m):
            for c in range(m):
                if table[table[a, b], c] != table[a, table[b, c]]:
                    raise ValueError("grading component table is not associative")

    return GradingData(
        adjoint=tuple(ad), classes=classes, group_table=table, order=m
    )


def nilpotency_chain(ring: BasedRing) -> tuple[bool, list[tuple[int, ...]]]:
    """Iterate the adjoint construction until it stabilises.

    Returns (nilpotent, chain) where chain lists index sets in the original
    numbering, starting with the full basis; nilpotent means the chain ends
    at the unit alone.
    """
    chain: list[tuple[int, ...]] = [tuple(range(ring.rank))]
    current = ring
    current_idx = list(range(ring.rank))
    while True:
        sub = sorted(adjoint_subring(current))
        original = tuple(current_idx[i] for i in sub)
        if original == chain[-1]:
            break
        chain.append(original)
        current = restrict(current, sub)
        current_idx = list(original)
        if len(sub) == 1:
            break
    nilpotent = chain[-1] == (ring.unit,)
    return nilpotent, chain
