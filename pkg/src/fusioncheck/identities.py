"""Central elements, class sums, fusion-subring supports, the Harada product
identity for weakly-integral fusion rings, and its divisibility corollaries.

Central elements are stored by their action tuple: entry i is the scalar by
which the element acts on the i-th simple.  In these coordinates products are
entrywise, the normalised class sum of homomorphism j acts by
mu_j(chi_i)/d_i, and both sides of the product identity are plain arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import report
from .chartable import CharacterTable
from .errors import PreconditionError
from .report import Verdict
from .rings import BasedRing, adjoint_subring, fp_dims, invertibles, pointed_subring, subring_closure
from .util import snap_positive_int


@dataclass(frozen=True)
class CentralElement:
    """Element of the centre, represented by its action on each simple."""

    action: np.ndarray

    def __mul__(self, other: "CentralElement") -> "CentralElement":
        return CentralElement(self.action * other.action)

    @staticmethod
    def unit(rank: int) -> "CentralElement":
        return CentralElement(np.ones(rank, dtype=complex))

    @staticmethod
    def idempotent(rank: int, i: int) -> "CentralElement":
        a = np.zeros(rank, dtype=complex)
        a[i] = 1.0
        return CentralElement(a)


def class_sum(table: CharacterTable, j: int) -> CentralElement:
    """Class sum of homomorphism j: acts on simple i by
    class_dims[j] * mu_j(chi_i) / d_i."""
    return CentralElement(table.class_dims[j] * table.values[j] / table.dims)


@dataclass(frozen=True)
class SupportData:
    """Evaluations mu_j(lambda_D) of the normalised integral of a fusion
    subring D, and the set of indices where the value is 1."""

    subring: tuple[int, ...]
    lambda_values: np.ndarray
    support: frozenset[int]


def support_data(
    ring: BasedRing,
    table: CharacterTable,
    subring: Iterable[int],
    tol: float = 1e-6,
) -> SupportData:
    """Support of a closed subring: mu_j(lambda_D) must land on 0 or 1.

    Values off {0, 1} mean the index set was not closed (or the table is
    numerically bad) and raise PreconditionError.
    """
    idx = sorted(set(int(i) for i in subring))
    d = table.dims[idx]
    total_d = float((d * d).sum())
    vals = (table.values[:, idx] * d[None, :]).sum(axis=1) / total_d
    support = set()
    for j, v in enumerate(vals):
        if abs(v - 1.0) < tol:
            support.add(j)
        elif abs(v) >= tol:
            raise PreconditionError(
                f"lambda_D evaluates to {v:.6g} at row {j}: subring not closed "
                f"or numeric failure"
            )
    if table.fp_index not in support:
        raise PreconditionError("support does not contain the Frobenius-Perron row")
    return SupportData(
        subring=tuple(idx), lambda_values=vals, support=frozenset(support)
    )


def harada_lhs(table: CharacterTable) -> CentralElement:
    """Square of the product of all normalised class sums."""
    norm = table.values / table.dims[None, :]
    return CentralElement(np.prod(norm, axis=0) ** 2)


def verify_harada(
    ring: BasedRing, table: CharacterTable, tol: float = 1e-7
) -> list[Verdict]:
    """Three numeric checks of the product identity on a commutative
    fusion-profile ring:

    a) the squared product of normalised class sums equals the indicator of
       the invertible simples;
    b) it equals FPdim(pointed)/FPdim(total) times the sum of class sums over
       the support of the pointed part;
    c) cross identity: FPdim(total)/FPdim(pointed) times the indicator equals
       that same sum of class sums.
    """
    r = ring.rank
    inv = invertibles(ring)
    indicator = np.zeros(r, dtype=complex)
    for i in inv:
        indicator[i] = 1.0
    lhs = harada_lhs(table).action

    pointed = sorted(pointed_subring(ring))
    dims = table.dims
    fp_total = float(table.total)
    fp_pt = float((dims[pointed] ** 2).sum())

    out = []

    res_a = float(np.abs(lhs - indicator).max())
    coord_a = int(np.abs(lhs - indicator).argmax())
    out.append(
        report.from_bool(
            "harada-a",
            res_a < tol,
            residual=res_a,
            details="" if res_a < tol else f"worst coordinate {coord_a}",
        )
    )

    try:
        supp = support_data(ring, table, pointed)
    except PreconditionError as exc:
        out.append(report.failed("harada-b", details=str(exc)))
        out.append(report.failed("harada-c", details=str(exc)))
        return out

    sum_cj = np.zeros(r, dtype=complex)
    for j in sorted(supp.support):
        sum_cj += class_sum(table, j).action

    rhs_b = (fp_pt / fp_total) * sum_cj
    res_b = float(np.abs(lhs - rhs_b).max())
    coord_b = int(np.abs(lhs - rhs_b).argmax())
    out.append(
        report.from_bool(
            "harada-b",
            res_b < tol,
            residual=res_b,
            details="" if res_b < tol else f"worst coordinate {coord_b}",
        )
    )

    lhs_c = (fp_total / fp_pt) * indicator
    res_c = float(np.abs(lhs_c - sum_cj).max())
    coord_c = int(np.abs(lhs_c - sum_cj).argmax())
    out.append(
        report.from_bool(
            "harada-c",
            res_c < tol,
            residual=res_c,
            details="" if res_c < tol else f"worst coordinate {coord_c}",
        )
    )
    return out


# ---------------------------------------------------------------------------
# Divisibility corollaries
# ---------------------------------------------------------------------------


def check_divisibility_cor31(
    ring: BasedRing, table: CharacterTable, snap: float = 1e-6
) -> Verdict:
    """FPdim(total)/FPdim(pointed) must divide the product of all class
    dimensions, provided everything in sight is integral."""
    dims = table.dims
    pointed = sorted(pointed_subring(ring))
    fp_pt = float((dims[pointed] ** 2).sum())
    ratio = snap_positive_int(table.total / fp_pt, snap)
    cds = [snap_positive_int(c, snap) for c in table.class_dims]
    if ratio is None or any(c is None for c in cds):
        return report.not_applicable(
            "cor31", details="class dimensions or dimension ratio not integral"
        )
    prod = 1
    for c in cds:
        prod *= c
    ok = prod % ratio == 0
    return report.from_bool(
        "cor31", ok, exact=True,
        details=f"{ratio} | {prod}" if ok else f"{ratio} does not divide {prod}",
    )


def check_divisibility_cor32(
    ring: BasedRing,
    table: CharacterTable,
    modular: bool,
    snap: float = 1e-6,
) -> Verdict:
    """On a ring declared modular, FPdim(adjoint) must equal
    FPdim(total)/FPdim(pointed) and divide the product of class dimensions
    (which under modularity is the product of the squared dimensions)."""
    if not modular:
        return report.not_applicable("cor32", details="ring not flagged modular")
    dims = table.dims
    ad = sorted(adjoint_subring(ring))
    pointed = sorted(pointed_subring(ring))
    fp_ad = snap_positive_int(float((dims[ad] ** 2).sum()), snap)
    fp_pt = float((dims[pointed] ** 2).sum())
    ratio = snap_positive_int(table.total / fp_pt, snap)
    cds = [snap_positive_int(c, snap) for c in table.class_dims]
    if fp_ad is None or ratio is None or any(c is None for c in cds):
        return report.not_applicable("cor32", details="inputs not integral")
    if fp_ad != ratio:
        return report.failed(
            "cor32", exact=True,
            details=f"FPdim(adjoint) = {fp_ad} != FPdim(total)/FPdim(pointed) = {ratio}",
        )
    prod = 1
    for c in cds:
        prod *= c
    ok = prod % fp_ad == 0
    return report.from_bool(
        "cor32", ok, exact=True,
        details=f"{fp_ad} | {prod}" if ok else f"{fp_ad} does not divide {prod}",
    )
