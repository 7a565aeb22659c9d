#!/usr/bin/env python3
"""Regenerate the bundled corpus under src/fusioncheck/corpus/.

Hand-written rings (pointed, Ising, Fibonacci, toric code, Tambara-Yamagami)
are emitted directly; the representation rings are derived from their groups
through the class-algebra pipeline and frozen.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from fusioncheck.catalog import named_group
from fusioncheck.groups import character_ring
from fusioncheck.rings import BasedRing, validate

ROOT = Path(__file__).resolve().parent.parent / "src" / "fusioncheck" / "corpus"


def dump(path: Path, doc: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")
    print(f"wrote {path}")


def sparse(N: np.ndarray) -> list[list[int]]:
    return [
        [i, j, k, int(N[i, j, k])]
        for i in range(N.shape[0])
        for j in range(N.shape[0])
        for k in range(N.shape[0])
        if N[i, j, k]
    ]


def ring_doc(name: str, ring: BasedRing, modular: bool = False,
             expect_fail: list[str] | None = None) -> dict:
    bad = validate(ring, "fusion")
    if bad:
        raise SystemExit(f"{name}: {bad}")
    doc = {
        "kind": "ring",
        "name": name,
        "rank": ring.rank,
        "labels": list(ring.labels),
        "unit": ring.unit,
        "dual": list(ring.dual),
        "N": sparse(ring.N),
        "profile": "fusion",
        "modular": modular,
    }
    if expect_fail:
        doc["expect_fail"] = expect_fail
    return doc


def group_ring(n: int) -> np.ndarray:
    N = np.zeros((n, n, n), dtype=int)
    for i in range(n):
        for j in range(n):
            N[i, j, (i + j) % n] = 1
    return N


def abelian_ring(orders: list[int]) -> tuple[np.ndarray, list[str], list[int]]:
    from itertools import product

    elems = list(product(*[range(n) for n in orders]))
    idx = {e: i for i, e in enumerate(elems)}
    r = len(elems)
    N = np.zeros((r, r, r), dtype=int)
    for a in elems:
        for b in elems:
            c = tuple((x + y) % n for x, y, n in zip(a, b, orders))
            N[idx[a], idx[b], idx[c]] = 1
    labels = ["g" + "".join(str(x) for x in e) for e in elems]
    dual = [idx[tuple((-x) % n for x, n in zip(e, orders))] for e in elems]
    return N, labels, dual


def tambara_yamagami_z2z2() -> tuple[np.ndarray, list[str], list[int]]:
    # four invertibles forming C2 x C2 plus one object of dimension 2
    N = np.zeros((5, 5, 5), dtype=int)
    ab, labels, dual = abelian_ring([2, 2])
    N[:4, :4, :4] = ab
    for g in range(4):
        N[g, 4, 4] = 1
        N[4, g, 4] = 1
    for g in range(4):
        N[4, 4, g] = 1
    return N, labels + ["sigma"], dual + [4]


def ising() -> np.ndarray:
    N = np.zeros((3, 3, 3), dtype=int)
    for i in range(3):
        N[0, i, i] = 1
        N[i, 0, i] = 1
    N[1, 1, 0] = 1
    N[1, 2, 2] = 1
    N[2, 1, 2] = 1
    N[2, 2, 0] = 1
    N[2, 2, 1] = 1
    return N


def fibonacci() -> np.ndarray:
    N = np.zeros((2, 2, 2), dtype=int)
    N[0, 0, 0] = 1
    N[0, 1, 1] = 1
    N[1, 0, 1] = 1
    N[1, 1, 0] = 1
    N[1, 1, 1] = 1
    return N


def main() -> None:
    from fusioncheck.rings import based_ring

    rings = ROOT / "rings"
    for n in (2, 3, 4, 5):
        labels = [f"g{i}" for i in range(n)]
        r = based_ring(group_ring(n), labels=labels, name=f"pointed_z{n}")
        dump(rings / f"pointed_z{n}.json", ring_doc(f"pointed_z{n}", r, modular=True))

    r = based_ring(ising(), labels=["1", "eps", "sigma"], name="ising")
    dump(rings / "ising.json", ring_doc("ising", r, modular=True))

    r = based_ring(fibonacci(), labels=["1", "tau"], name="fibonacci")
    dump(
        rings / "fibonacci.json",
        ring_doc("fibonacci", r, modular=True,
                 expect_fail=["burnside", "harada-a", "harada-b"]),
    )

    N, labels, dual = abelian_ring([2, 2])
    r = based_ring(N, labels=["1", "e", "m", "f"], dual=dual, name="toric_code")
    dump(rings / "toric_code.json", ring_doc("toric_code", r, modular=True))

    N, labels, dual = tambara_yamagami_z2z2()
    r = based_ring(N, labels=labels, dual=dual, name="ty_z2z2")
    dump(rings / "ty_z2z2.json", ring_doc("ty_z2z2", r, modular=False))

    for gname in ("S3", "D4", "Q8", "A4", "S4"):
        tab = named_group(gname)
        ring = character_ring(tab, name=f"rep_{gname.lower()}")
        dump(
            rings / f"rep_{gname.lower()}.json",
            ring_doc(f"rep_{gname.lower()}", ring, modular=False),
        )

    groups = ROOT / "groups"
    dump(groups / "s3.json", {
        "kind": "group-generators", "name": "S3", "degree": 3,
        "generators": [[1, 0, 2], [1, 2, 0]],
    })
    dump(groups / "d4.json", {
        "kind": "group-generators", "name": "D4", "degree": 4,
        "generators": ["(0 1 2 3)", "(0 2)"],
    })
    dump(groups / "d5.json", {
        "kind": "group-generators", "name": "D5", "degree": 5,
        "generators": ["(0 1 2 3 4)", "(1 4)(2 3)"],
    })
    dump(groups / "q8.json", {
        "kind": "group-generators", "name": "Q8", "degree": 8,
        "generators": ["(0 1 2 3)(4 7 6 5)", "(0 4 2 6)(1 5 3 7)"],
    })
    dump(groups / "a4.json", {
        "kind": "group-generators", "name": "A4", "degree": 4,
        "generators": [[1, 2, 0, 3], [1, 0, 3, 2]],
    })
    dump(groups / "s4.json", {
        "kind": "group-generators", "name": "S4", "degree": 4,
        "generators": [[1, 0, 2, 3], [1, 2, 3, 0]],
    })
    dump(groups / "a5.json", {
        "kind": "group-generators", "name": "A5", "degree": 5,
        "generators": ["(0 1 2 3 4)", "(0 1 2)"],
    })
    z4 = [[(i + j) % 4 for j in range(4)] for i in range(4)]
    dump(groups / "z4_cayley.json", {
        "kind": "cayley", "name": "Z4", "order": 4, "mul": z4,
    })

    types = ROOT / "types"
    dump(types / "pointed36.json", {
        "kind": "type", "name": "pointed36",
        "entries": [[1, 36]], "modular": True, "integral": True,
    })
    dump(types / "n12_rejected.json", {
        "kind": "type", "name": "n12_rejected",
        "entries": [[1, 4], [2, 2]], "modular": True, "integral": True,
        "expect_fail": ["thm42"],
    })
    dump(types / "n6300_shape.json", {
        "kind": "type", "name": "n6300_shape",
        "entries": [[1, 6300]], "modular": True, "integral": True,
    })


if __name__ == "__main__":
    main()
