"""Input files: rings, groups (generators or explicit Cayley tables), and
category types, all JSON documents distinguished by a top-level "kind" field.

Ring files carry rank, optional labels, optional dual (inferred from the
structure constants when omitted), unit (default 0), and N either dense
(rank^3 nested arrays) or sparse (a list of [i, j, k, value] rows).
Metadata fields: name, profile ("based" or "fusion"), modular (bool), and
expect_fail (check names a sweep expects to fail, for negative controls).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .arith import CategoryType, category_type
from .errors import StructureError
from .groups import CayleyTable, cayley_from_generators, cayley_table
from .rings import BasedRing, based_ring

KINDS = ("ring", "group-generators", "cayley", "type")


@dataclass(frozen=True)
class RingFile:
    ring: BasedRing
    profile: str = "fusion"
    modular: bool = False
    expect_fail: tuple[str, ...] = ()


@dataclass(frozen=True)
class GroupFile:
    table: CayleyTable
    expect_fail: tuple[str, ...] = ()


@dataclass(frozen=True)
class TypeFile:
    type: CategoryType
    modular: bool = False
    integral: bool = False
    expect_fail: tuple[str, ...] = ()


def _meta(doc: dict) -> tuple[str, tuple[str, ...]]:
    name = str(doc.get("name", ""))
    expect = tuple(str(x) for x in doc.get("expect_fail", []))
    return name, expect


def _parse_structure_constants(doc: dict, rank: int) -> np.ndarray:
    raw = doc.get("N")
    if raw is None:
        raise StructureError("ring file is missing the structure constants N")
    if isinstance(raw, dict):
        raw = raw.get("sparse", raw.get("dense"))
        if raw is None:
            raise StructureError("N must hold a 'sparse' or 'dense' entry")
    if not isinstance(raw, list) or not raw:
        raise StructureError("N must be a non-empty array")
    first = raw[0]
    if isinstance(first, list) and first and isinstance(first[0], list):
        arr = np.asarray(raw)
        if arr.shape != (rank, rank, rank):
            raise StructureError(
                f"dense N has shape {arr.shape}, expected ({rank}, {rank}, {rank})"
            )
        return arr
    # sparse rows [i, j, k, value]
    arr = np.zeros((rank, rank, rank), dtype=np.int64)
    for row in raw:
        if not isinstance(row, list) or len(row) != 4:
            raise StructureError(f"sparse N row {row!r} is not [i, j, k, value]")
        i, j, k, v = (int(x) for x in row)
        if not (0 <= i < rank and 0 <= j < rank and 0 <= k < rank):
            raise StructureError(f"sparse N row {row!r} out of range")
        arr[i, j, k] = v
    return arr


def parse_ring(doc: dict) -> RingFile:
    try:
        rank = int(doc["rank"])
    except (KeyError, TypeError, ValueError):
        raise StructureError("ring file needs an integer 'rank'") from None
    name, expect = _meta(doc)
    N = _parse_structure_constants(doc, rank)
    ring = based_ring(
        N,
        labels=doc.get("labels"),
        unit=int(doc.get("unit", 0)),
        dual=doc.get("dual"),
        name=name,
    )
    profile = str(doc.get("profile", "fusion"))
    if profile not in ("based", "fusion"):
        raise StructureError(f"unknown profile {profile!r}")
    return RingFile(
        ring=ring,
        profile=profile,
        modular=bool(doc.get("modular", False)),
        expect_fail=expect,
    )


def parse_group(doc: dict) -> GroupFile:
    name, expect = _meta(doc)
    kind = doc.get("kind")
    if kind == "cayley":
        try:
            order = int(doc["order"])
            mul = doc["mul"]
        except (KeyError, TypeError, ValueError):
            raise StructureError("cayley file needs 'order' and 'mul'") from None
        arr = np.asarray(mul)
        if arr.shape != (order, order):
            raise StructureError(f"mul has shape {arr.shape}, expected square of {order}")
        return GroupFile(table=cayley_table(arr, name=name), expect_fail=expect)
    gens = doc.get("generators")
    if not gens:
        raise StructureError("group file needs non-empty 'generators'")
    degree = doc.get("degree")
    if degree is not None:
        gens = [
            g if isinstance(g, str) else list(g) + list(range(len(g), int(degree)))
            for g in gens
        ]
    table = cayley_from_generators(gens, name=name)
    return GroupFile(table=table, expect_fail=expect)


def parse_type(doc: dict) -> TypeFile:
    _, expect = _meta(doc)
    entries = doc.get("entries")
    if not isinstance(entries, list) or not entries:
        raise StructureError("type file needs non-empty 'entries'")
    t = category_type(entries)
    return TypeFile(
        type=t,
        modular=bool(doc.get("modular", False)),
        integral=bool(doc.get("integral", False)),
        expect_fail=expect,
    )


def load_document(path: str | Path) -> dict:
    p = Path(path)
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise StructureError(f"{p}: not valid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise StructureError(f"{p}: expected a JSON object")
    return doc


def load_file(path: str | Path) -> RingFile | GroupFile | TypeFile:
    doc = load_document(path)
    kind = doc.get("kind")
    if kind == "ring":
        return parse_ring(doc)
    if kind in ("group-generators", "cayley"):
        return parse_group(doc)
    if kind == "type":
        return parse_type(doc)
    raise StructureError(f"{path}: unknown kind {kind!r}, expected one of {KINDS}")
