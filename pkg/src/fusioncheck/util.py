"""Small numeric helpers used across modules."""

from __future__ import annotations


def snap_int(x: float, tol: float) -> int | None:
    """Nearest integer if x is within tol of one, else None."""
    r = round(float(x))
    return r if abs(x - r) <= tol else None


def snap_positive_int(x: float, tol: float) -> int | None:
    r = snap_int(x, tol)
    return r if r is not None and r >= 1 else None


def fnum(x: float) -> float:
    """Round-trip a float through 12 significant digits for stable report output."""
    return float(f"{float(x):.12g}")
