"""Character tables of commutative based rings, codegrees, the dual
hypergroup, and the Burnside vanishing check.

The algebra homomorphisms mu_j of a commutative based ring are recovered as
the common left eigenvectors of the fusion matrices, normalised so that
mu_j(b_unit) = 1; with that normalisation the value vector of mu_j is itself
the eigenvector, so the table row j literally lists mu_j(b_i).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericError, PreconditionError
from .rings import BasedRing, fp_dims, invertibles
from .util import fnum

COEFF_LO, COEFF_HI = 1, 2**20
MAX_RETRIES = 8
ZERO_TOL = 1e-7  # absolute threshold for "character value vanishes"


@dataclass(frozen=True, eq=False)
class CharacterTable:
    """values[j, i] = mu_j(b_i); row 0 is the Frobenius-Perron homomorphism.

    codegrees c_j are Sum_i mu_j(b_i) mu_j(b_{i*}) / N[i, i*, unit]; the norm
    weights are all 1 on the fusion profile, so there the formula is the plain
    dual-orthogonality codegree.  class_dims[j] = total / c_j where
    total = c_0.
    """

    ring: BasedRing
    values: np.ndarray
    dims: np.ndarray
    codegrees: np.ndarray
    class_dims: np.ndarray
    total: float
    hom_residual: float
    orth_residual: float
    fp_index: int = 0

    @property
    def rank(self) -> int:
        return self.values.shape[1]

    @property
    def num_rows(self) -> int:
        return self.values.shape[0]

    def to_dict(self) -> dict:
        return {
            "labels": list(self.ring.labels),
            "rows": [[[fnum(z.real), fnum(z.imag)] for z in row] for row in self.values],
            "dims": [fnum(d) for d in self.dims],
            "codegrees": [fnum(c) for c in self.codegrees],
            "class_dims": [fnum(c) for c in self.class_dims],
            "hom_residual": fnum(self.hom_residual),
            "orth_residual": fnum(self.orth_residual),
            "fp_index": self.fp_index,
        }


def _hom_residual(N: np.ndarray, rows: np.ndarray) -> float:
    """max |mu(b_i) mu(b_k) - Sum_l N[i,k,l] mu(b_l)| over rows and (i, k)."""
    direct = rows[:, :, None] * rows[:, None, :]
    expanded = np.einsum("ikl,jl->jik", N.astype(float), rows)
    return float(np.abs(direct - expanded).max())


def _canonical_order(rows: np.ndarray, fp: int) -> np.ndarray:
    """fp row first, remaining rows sorted lexicographically on rounded values."""
    keys = []
    for j in range(rows.shape[0]):
        if j == fp:
            continue
        row = rows[j]
        key = tuple(
            v for z in row for v in (round(float(z.real), 9) + 0.0, round(float(z.imag), 9) + 0.0)
        )
        keys.append((key, j))
    keys.sort()
    return np.array([fp] + [j for _, j in keys], dtype=int)


def compute_table(
    ring: BasedRing,
    seed: int | None = 0,
    tol: float = 1e-9,
    retries: int = MAX_RETRIES,
) -> CharacterTable:
    """Simultaneously diagonalise the fusion matrices of a commutative ring.

    A generic integer combination of the left-multiplication matrices is
    diagonalised; colliding eigenvalues trigger a retry with fresh random
    coefficients, and the returned table is certified by its homomorphism
    residual.  Raises PreconditionError on non-commutative input and
    NumericError after the retry budget is exhausted.
    """
    if not ring.is_commutative():
        raise PreconditionError("character table requires a commutative ring")
    r = ring.rank
    N = ring.N
    # the value vector of a homomorphism is a right eigenvector of every
    # transposed fusion matrix, and those transposes are the slices N[i]
    slices = N.astype(float)
    rng = np.random.default_rng(seed)

    rows = None
    failure = "no attempt ran"
    best_res = np.inf
    for _ in range(max(1, retries)):
        coeff = rng.integers(COEFF_LO, COEFF_HI + 1, size=r).astype(float)
        A = np.einsum("i,ijk->jk", coeff, slices)
        w, V = np.linalg.eig(A)
        scale = max(1.0, float(np.abs(w).max()))
        sep = min(
            (abs(w[a] - w[b]) for a in range(r) for b in range(a + 1, r)),
            default=np.inf,
        )
        if sep < 1e-8 * scale:
            failure = f"eigenvalue collision (separation {sep:.3e})"
            continue
        unit_row = V[ring.unit, :]
        if np.any(np.abs(unit_row) < 1e-12):
            failure = "eigenvector vanishes at the unit index"
            continue
        cand = (V / unit_row[None, :]).T  # row j = mu_j value vector
        res = _hom_residual(N, cand)
        if res <= tol * max(1.0, float(np.abs(cand).max()) ** 2):
            rows = cand
            best_res = res
            break
        failure = f"homomorphism residual {res:.3e} above tolerance"
        best_res = min(best_res, res)
    if rows is None:
        raise NumericError(
            f"character table failed after {retries} retries: {failure}",
            residual=None if best_res is np.inf else best_res,
        )

    # identify the Frobenius-Perron row: the unique all-real, all-positive one
    scale = max(1.0, float(np.abs(rows).max()))
    fp_candidates = [
        j
        for j in range(r)
        if np.abs(rows[j].imag).max() < 1e-7 * scale and np.all(rows[j].real > 0.5)
    ]
    if len(fp_candidates) != 1:
        raise NumericError(
            f"expected exactly one positive row, found {len(fp_candidates)}"
        )
    order = _canonical_order(rows, fp_candidates[0])
    rows = rows[order]

    dims = rows[0].real.copy()
    dims[ring.unit] = 1.0

    # cross-check against the power-iteration dimensions
    pf = fp_dims(ring, tol=max(tol, 1e-12))
    if np.abs(dims - pf.dims).max() > 1e-6 * max(1.0, pf.dims.max()):
        raise NumericError("Frobenius-Perron row disagrees with power iteration")
    dims = pf.dims.copy()  # snapped values are the cleaner representative

    nu = ring.norms().astype(float)
    dual = np.array(ring.dual)
    cod = (rows * rows[:, dual] / nu[None, :]).sum(axis=1)
    if np.abs(cod.imag).max() > 1e-7 * max(1.0, np.abs(cod).max()):
        raise NumericError("codegrees are not real within tolerance")
    codegrees = cod.real.copy()
    if np.any(codegrees <= 0):
        raise NumericError("non-positive codegree")
    total = float(codegrees[0])
    class_dims = total / codegrees

    U = rows / np.sqrt(nu)[None, :] / np.sqrt(codegrees)[:, None]
    gram = U @ U[:, dual].T
    orth_residual = float(np.abs(gram - np.eye(r)).max())

    return CharacterTable(
        ring=ring,
        values=rows,
        dims=dims,
        codegrees=codegrees,
        class_dims=class_dims,
        total=total,
        hom_residual=float(best_res),
        orth_residual=orth_residual,
    )


def match_rows(a: CharacterTable, b: CharacterTable, tol: float = 1e-6) -> list[int]:
    """Permutation p with a.values[j] == b.values[p[j]] within tol, or raise."""
    if a.values.shape != b.values.shape:
        raise ValueError("tables have different shapes")
    used = set()
    perm = []
    for j in range(a.num_rows):
        hits = [
            k
            for k in range(b.num_rows)
            if k not in used and np.abs(a.values[j] - b.values[k]).max() < tol
        ]
        if len(hits) != 1:
            raise ValueError(f"row {j} matches {len(hits)} rows of the other table")
        used.add(hits[0])
        perm.append(hits[0])
    return perm


# ---------------------------------------------------------------------------
# Dual hypergroup
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DualHypergroup:
    """Structure constants of the pointwise product on normalised rows:
    mu_a * mu_b = Sum_c p[a, b, c] mu_c."""

    p: np.ndarray
    nonneg: bool


def dual_hypergroup(table: CharacterTable, tol: float = 1e-9) -> DualHypergroup:
    """Expand pointwise products of normalised rows back in the row basis."""
    r = table.rank
    vals = table.values
    dims = table.dims
    norm = vals / dims[None, :]  # norm[j, i] = mu_j(chi_i) / d_i
    M = norm.T  # M[i, c] = mu_c(chi_i)/d_i
    Y = (norm[:, None, :] * norm[None, :, :]).reshape(r * r, r).T
    P = np.linalg.solve(M, Y)
    residual = float(np.abs(M @ P - Y).max())
    scale = max(1.0, float(np.abs(norm).max()) ** 2)
    if residual > max(tol * scale, 1e-10 * scale):
        raise NumericError("dual hypergroup expansion failed", residual=residual)
    p = P.T.reshape(r, r, r)  # p[a, b, c]
    if np.abs(p.imag).max() > 1e-7:
        raise NumericError("dual hypergroup constants are not real within tolerance")
    preal = p.real.copy()
    sums = preal.sum(axis=2)
    if np.abs(sums - 1.0).max() > 1e-7:
        raise NumericError("dual hypergroup rows do not sum to 1")
    return DualHypergroup(p=preal, nonneg=bool(preal.min() >= -max(tol, 1e-9)))


# ---------------------------------------------------------------------------
# Burnside vanishing property
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BurnsideEntry:
    index: int
    label: str
    invertible: bool
    has_zero: bool
    min_abs: float

    @property
    def consistent(self) -> bool:
        return self.invertible != self.has_zero


@dataclass(frozen=True)
class BurnsideReport:
    entries: tuple[BurnsideEntry, ...]
    holds: bool


def burnside_check(
    ring: BasedRing, table: CharacterTable, zero_tol: float = ZERO_TOL
) -> BurnsideReport:
    """Per-simple verdicts of the vanishing property: a basis element is
    invertible iff its column has no zero among the mu_j values."""
    inv = invertibles(ring)
    entries = []
    for i in range(ring.rank):
        col = np.abs(table.values[:, i])
        entries.append(
            BurnsideEntry(
                index=i,
                label=ring.labels[i],
                invertible=i in inv,
                has_zero=bool(col.min() < zero_tol),
                min_abs=float(col.min()),
            )
        )
    return BurnsideReport(
        entries=tuple(entries), holds=all(e.consistent for e in entries)
    )
