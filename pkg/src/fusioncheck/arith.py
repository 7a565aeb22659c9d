"""Square-free splits, divisibility filters on category types, dimension-shape
detection, and a pruned enumerator of candidate types.

A type is a list of (d, n) pairs: n_i simples of integer dimension d_i, with
d_1 = 1 present and total N = sum n_i d_i^2.  The square-free split writes
N = N1 * Nrest with N1 the product of primes dividing N exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterable, Sequence

from . import report
from .errors import SizeError, StructureError
from .report import Verdict
from .rings import (
    BasedRing,
    adjoint_subring,
    fp_dims,
    invertibles,
    nilpotency_chain,
    universal_grading,
)
from .util import snap_positive_int

ENUM_CAP = 10**6
FACTOR_CAP = 10**12


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division (desk scale)."""
    if n < 1:
        raise StructureError(f"cannot factor {n}")
    if n > FACTOR_CAP:
        raise SizeError(f"factorisation capped at {FACTOR_CAP}")
    out: dict[int, int] = {}
    m = n
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def squarefree_split(n: int) -> tuple[int, int]:
    """(N1, Nrest): N1 = product of primes dividing n exactly once."""
    if n < 1:
        raise StructureError(f"square-free split needs n >= 1, got {n}")
    n1 = 1
    for p, e in factorize(n).items():
        if e == 1:
            n1 *= p
    return n1, n // n1


@dataclass(frozen=True)
class CategoryType:
    """Sorted (dimension, multiplicity) pairs with d_1 = 1."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        es = self.entries
        if not es:
            raise StructureError("a type needs at least one entry")
        ds = [d for d, _ in es]
        if ds[0] != 1:
            raise StructureError("a type must contain dimension 1")
        if any(d2 <= d1 for d1, d2 in zip(ds, ds[1:])):
            raise StructureError("dimensions must be strictly increasing")
        if any(d < 1 or n < 1 for d, n in es):
            raise StructureError("dimensions and multiplicities must be positive")

    @property
    def total(self) -> int:
        return sum(n * d * d for d, n in self.entries)

    @property
    def n1(self) -> int:
        return self.entries[0][1]

    def sqfree(self) -> tuple[int, int]:
        return squarefree_split(self.total)

    def __str__(self) -> str:
        return "; ".join(f"({d},{n})" for d, n in self.entries)


def category_type(entries: Iterable[Sequence[int]]) -> CategoryType:
    return CategoryType(tuple((int(d), int(n)) for d, n in entries))


def type_of_ring(ring: BasedRing, snap: float = 1e-6) -> CategoryType | None:
    """The type of an integral ring, or None when some dimension is not an
    integer."""
    dd = fp_dims(ring, snap=snap)
    if not dd.is_integral():
        return None
    counts: dict[int, int] = {}
    for d in dd.dims:
        di = int(round(d))
        counts[di] = counts.get(di, 0) + 1
    return category_type(sorted(counts.items()))


# ---------------------------------------------------------------------------
# Filters
# ---------------------------------------------------------------------------


def check_theorem42(t: CategoryType) -> Verdict:
    """The square-free part of the total must divide every multiplicity."""
    n1, _ = t.sqfree()
    bad = [(d, n) for d, n in t.entries if n % n1 != 0]
    if bad:
        d, n = bad[0]
        return report.failed(
            "thm42", exact=True, details=f"{n1} does not divide n = {n} at d = {d}"
        )
    return report.passed("thm42", exact=True, details=f"N1 = {n1} divides every n_i")


def check_remark41(t: CategoryType, integral_modular: bool = True) -> Verdict:
    """On integral modular types, d^2 | N and gcd(d, N1) = 1 for every d > 1."""
    if not integral_modular:
        return report.not_applicable("remark41", details="type not flagged integral modular")
    total = t.total
    n1, _ = t.sqfree()
    for d, _ in t.entries:
        if d == 1:
            continue
        if total % (d * d) != 0:
            return report.failed(
                "remark41", exact=True, details=f"{d}^2 does not divide {total}"
            )
        if gcd(d, n1) != 1:
            return report.failed(
                "remark41", exact=True, details=f"gcd({d}, N1 = {n1}) > 1"
            )
    return report.passed("remark41", exact=True)


def check_prop43(t: CategoryType) -> Verdict:
    """N1 must divide the multiplicity of dimension 1, provided every d > 1
    is coprime to N1 (otherwise the hypothesis fails and the check is n/a)."""
    n1, _ = t.sqfree()
    for d, _ in t.entries:
        if d > 1 and gcd(d, n1) != 1:
            return report.not_applicable(
                "prop43", details=f"hypothesis fails: gcd({d}, N1 = {n1}) > 1"
            )
    ok = t.n1 % n1 == 0
    return report.from_bool(
        "prop43", ok, exact=True,
        details=f"N1 = {n1} {'divides' if ok else 'does not divide'} n_1 = {t.n1}",
    )


def check_g_orbit(t: CategoryType) -> Verdict:
    """Optional intermediate filter: n_1 must divide n_i d_i^2 for all i."""
    for d, n in t.entries:
        if (n * d * d) % t.n1 != 0:
            return report.failed(
                "g-orbit", exact=True,
                details=f"n_1 = {t.n1} does not divide n d^2 = {n * d * d} at d = {d}",
            )
    return report.passed("g-orbit", exact=True)


def check_prop45(ring: BasedRing, snap: float = 1e-6) -> Verdict:
    """On an integral, nilpotent, non-pointed, commutative ring: the adjoint
    part has no square-free part and the square-free part of the total
    divides the order of the universal grading group."""
    if not ring.is_commutative():
        return report.not_applicable("prop45", details="ring not commutative")
    dd = fp_dims(ring, snap=snap)
    if not dd.is_integral():
        return report.not_applicable("prop45", details="ring not integral")
    if len(invertibles(ring)) == ring.rank:
        return report.not_applicable("prop45", details="ring is pointed")
    nilpotent, _ = nilpotency_chain(ring)
    if not nilpotent:
        return report.not_applicable("prop45", details="ring not nilpotent")

    ad = sorted(adjoint_subring(ring))
    fp_ad = snap_positive_int(float(dd.dims_sq[ad].sum()), snap)
    total = snap_positive_int(dd.total, snap)
    if fp_ad is None or total is None:
        return report.not_applicable("prop45", details="dimensions did not snap")
    order = universal_grading(ring).order
    ad_free, _ = squarefree_split(fp_ad)
    n1, _ = squarefree_split(total)
    if ad_free != 1:
        return report.failed(
            "prop45", exact=True,
            details=f"FPdim(adjoint) = {fp_ad} has square-free part {ad_free}",
        )
    if order % n1 != 0:
        return report.failed(
            "prop45", exact=True,
            details=f"N1 = {n1} does not divide |U| = {order}",
        )
    return report.passed(
        "prop45", exact=True,
        details=f"FPdim(adjoint) = {fp_ad}, N1 = {n1} | |U| = {order}",
    )


def detect_dimension_shape(n: int) -> tuple[int, int, int, int] | None:
    """Detect n = p^2 q^2 r^2 d with p < q < r prime and d square-free coprime
    to pqr; returns (p, q, r, d) or None."""
    if n < 1:
        return None
    fac = factorize(n)
    squares = sorted(p for p, e in fac.items() if e == 2)
    if len(squares) != 3 or any(e not in (1, 2) for e in fac.values()):
        return None
    d = 1
    for p, e in fac.items():
        if e == 1:
            d *= p
    return squares[0], squares[1], squares[2], d


# ---------------------------------------------------------------------------
# Enumerator
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TypeRecord:
    type: CategoryType
    provenance: dict

    def to_dict(self) -> dict:
        return {
            "entries": [list(e) for e in self.type.entries],
            "total": self.type.total,
            "filters": self.provenance,
        }


def enumerate_types(
    N: int,
    *,
    dsq_divides: bool = False,
    gcd_sqfree: bool = False,
    thm42: bool = False,
    prop43: bool = False,
    g_orbit: bool = False,
    cap: int = ENUM_CAP,
) -> list[TypeRecord]:
    """Depth-first enumeration of integral types of total N, in lexicographic
    order of the entry list, with the enabled filters applied as pruning
    predicates.  Every emitted record carries the verdict of each filter
    (enabled or not) as provenance.
    """
    if N < 1:
        raise StructureError(f"total must be positive, got {N}")
    if N > cap:
        raise SizeError(f"enumeration capped at N = {cap}")
    n1_free, _ = squarefree_split(N)

    results: list[CategoryType] = []

    def multiplicities(limit: int, force_multiple: bool) -> range:
        if force_multiple and n1_free > 1:
            return range(n1_free, limit + 1, n1_free)
        return range(1, limit + 1)

    def extend(prefix: list[tuple[int, int]], d_prev: int, remaining: int) -> None:
        if remaining == 0:
            results.append(category_type(prefix))
            return
        d = d_prev + 1
        while d * d <= remaining:
            ok = True
            if dsq_divides and N % (d * d) != 0:
                ok = False
            if ok and gcd_sqfree and gcd(d, n1_free) != 1:
                ok = False
            if ok:
                for n in multiplicities(remaining // (d * d), thm42):
                    if g_orbit and (n * d * d) % prefix[0][1] != 0:
                        continue
                    extend(prefix + [(d, n)], d, remaining - n * d * d)
            d += 1

    for n1 in multiplicities(N, thm42 or prop43):
        extend([(1, n1)], 1, N - n1)

    out = []
    for t in results:
        prov = {
            "thm42": not check_theorem42(t).failed,
            "remark41": not check_remark41(t).failed,
            "prop43": not check_prop43(t).failed,
            "g_orbit": not check_g_orbit(t).failed,
        }
        out.append(TypeRecord(type=t, provenance=prov))
    return out
