"""Command-line front end.

Subcommands: validate, chartab, burnside, harada, support, class-sums,
typecheck, enumerate, group, sweep.  Reports are JSON Lines on stdout
(one object per verdict) or a single JSON document with --json; elapsed
time goes to stderr so reports stay byte-identical across runs.

Exit codes: 0 all checks passed, 1 at least one check failed, 2 input or
parse error, 3 numeric non-convergence.
"""

from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import arith, identities, report
from .chartable import burnside_check, compute_table
from .errors import NumericError, PreconditionError, SizeError, StructureError
from .fileio import GroupFile, RingFile, TypeFile, load_file
from .groups import (
    GROUP_RING_CAP,
    class_data,
    character_ring,
    coset_support_check,
    group_ring_oracle,
    verify_harada_group,
)
from .report import RunReport, Verdict
from .rings import fp_dims, validate
from .util import fnum, snap_positive_int

COSET_CHECK_CAP = 16


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fusioncheck",
        description="verification toolkit for fusion rings and group class algebras",
    )
    p.add_argument("--tol", type=float, default=1e-9, help="numeric tolerance")
    p.add_argument("--snap", type=float, default=1e-6, help="integer snap threshold")
    p.add_argument("--seed", type=int, default=0, help="seed for the randomized diagonalization")
    p.add_argument("--json", action="store_true", help="emit one JSON document instead of JSON lines")
    p.add_argument("--profile", choices=["based", "fusion"], default=None,
                   help="override the validation profile of ring files")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", help="validate a ring file").add_argument("file")
    sub.add_parser("chartab", help="character table of a ring file").add_argument("file")
    sub.add_parser("burnside", help="vanishing-property check").add_argument("file")
    sub.add_parser("harada", help="product-of-class-sums identity (ring or group file)").add_argument("file")

    sp = sub.add_parser("support", help="support of a fusion subring")
    sp.add_argument("file")
    sp.add_argument("--subring", required=True,
                    help="comma-separated seed indices, closed automatically")

    sub.add_parser("class-sums", help="export all class sums of a ring").add_argument("file")

    tp = sub.add_parser("typecheck", help="divisibility filters on a type file or an integer total")
    tp.add_argument("target", help="type file or integer")
    tp.add_argument("--modular", action="store_true", help="treat a bare integer/type as modular")
    tp.add_argument("--integral", action="store_true", help="treat the type as integral")

    ep = sub.add_parser("enumerate", help="enumerate candidate types of a given total")
    ep.add_argument("total", type=int)
    ep.add_argument("--dsq-divides", action="store_true", help="require d^2 | N")
    ep.add_argument("--gcd-sqfree", action="store_true", help="require gcd(d, N1) = 1")
    ep.add_argument("--thm42", action="store_true", help="require N1 | n_i")
    ep.add_argument("--prop43", action="store_true", help="require N1 | n_1")
    ep.add_argument("--g-orbit", action="store_true", help="require n_1 | n_i d_i^2")

    gp = sub.add_parser("group", help="class data and exact identity checks for a group file")
    gp.add_argument("file")
    gp.add_argument("--oracle-cap", type=int, default=GROUP_RING_CAP)
    gp.add_argument("--emit-character-ring", metavar="PATH",
                    help="write the character ring as a ring file")

    sw = sub.add_parser("sweep", help="run all applicable checks over a corpus directory")
    sw.add_argument("directory")
    sw.add_argument("--jobs", type=int, default=1)
    return p


# ---------------------------------------------------------------------------
# Per-kind pipelines (shared between single-file commands and sweep)
# ---------------------------------------------------------------------------


def _ring_pipeline(rf: RingFile, args) -> tuple[list[Verdict], list[dict]]:
    """Everything we can check about one ring file."""
    profile = args.profile or rf.profile
    verdicts: list[Verdict] = []
    extra: list[dict] = []
    bad = validate(rf.ring, profile=profile)
    if bad:
        verdicts.append(report.failed("validate", details="; ".join(bad)))
        return verdicts, extra
    verdicts.append(report.passed("validate", details=f"profile {profile}"))
    if not rf.ring.is_commutative():
        verdicts.append(report.not_applicable(
            "chartab", details="ring not commutative, table checks skipped"))
        return verdicts, extra

    table = compute_table(rf.ring, seed=args.seed, tol=args.tol)
    verdicts.append(report.from_bool(
        "table-hom", table.hom_residual < 1e-9, residual=table.hom_residual))
    verdicts.append(report.from_bool(
        "table-orth", table.orth_residual < 1e-8, residual=table.orth_residual))
    sum_res = abs(float(table.class_dims.sum()) - table.total)
    verdicts.append(report.from_bool("table-class-dims", sum_res < 1e-8, residual=sum_res))

    b = burnside_check(rf.ring, table)
    dd = fp_dims(rf.ring, tol=args.tol, snap=args.snap)
    note = "" if dd.is_weakly_integral() else "ring not weakly integral"
    verdicts.append(report.from_bool("burnside", b.holds, details=note))

    if profile == "fusion":
        verdicts.extend(identities.verify_harada(rf.ring, table, tol=1e-7))
        verdicts.append(identities.check_divisibility_cor31(rf.ring, table, snap=args.snap))
        verdicts.append(identities.check_divisibility_cor32(
            rf.ring, table, modular=rf.modular, snap=args.snap))
        verdicts.append(arith.check_prop45(rf.ring, snap=args.snap))
    return verdicts, extra


def _group_pipeline(gf: GroupFile, args, oracle_cap: int = GROUP_RING_CAP
                    ) -> tuple[list[Verdict], list[dict]]:
    tab = gf.table
    verdicts: list[Verdict] = []
    extra: list[dict] = []
    bad = tab.validate()
    if bad:
        verdicts.append(report.failed("cayley-valid", details="; ".join(bad)))
        return verdicts, extra
    verdicts.append(report.passed("cayley-valid", exact=True, details=f"order {tab.order}"))
    cls = class_data(tab)
    extra.append({
        "kind": "class-data",
        "order": tab.order,
        "class_sizes": list(cls.sizes),
        "commutator_order": len(cls.commutator),
    })
    verdicts.append(verify_harada_group(tab, cls))
    if tab.order <= oracle_cap:
        verdicts.append(group_ring_oracle(tab, cls, cap=oracle_cap))
    if tab.order <= COSET_CHECK_CAP:
        verdicts.append(coset_support_check(tab, cls))

    ring = character_ring(tab, cls, seed=args.seed, snap=args.snap)
    table = compute_table(ring, seed=args.seed, tol=args.tol)
    snapped = [snap_positive_int(c, args.snap) for c in table.class_dims]
    ok = None not in snapped and sorted(snapped) == sorted(cls.sizes)
    verdicts.append(report.from_bool(
        "class-dims-oracle", ok, exact=True,
        details="table class dimensions match conjugacy class sizes" if ok
        else f"class_dims {snapped} != sizes {sorted(cls.sizes)}"))
    return verdicts, extra


def _type_pipeline(tf: TypeFile, args) -> tuple[list[Verdict], list[dict]]:
    t = tf.type
    verdicts = [
        arith.check_theorem42(t),
        arith.check_remark41(t, integral_modular=tf.modular and tf.integral),
        arith.check_prop43(t),
    ]
    shape = arith.detect_dimension_shape(t.total)
    n1, rest = t.sqfree()
    extra = [{
        "kind": "type-info",
        "entries": [list(e) for e in t.entries],
        "total": t.total,
        "sqfree": [n1, rest],
        "dimension_shape": list(shape) if shape else None,
    }]
    return verdicts, extra


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _load_ring(path: str, args) -> RingFile:
    obj = load_file(path)
    if not isinstance(obj, RingFile):
        raise StructureError(f"{path}: expected a ring file")
    return obj


def cmd_validate(args) -> RunReport:
    rep = RunReport("validate", seed=args.seed, tol=args.tol, snap=args.snap)
    rep.add_input(args.file)
    rf = _load_ring(args.file, args)
    profile = args.profile or rf.profile
    bad = validate(rf.ring, profile=profile)
    if bad:
        rep.verdicts.extend(report.failed("validate", details=msg) for msg in bad)
    else:
        rep.verdicts.append(report.passed("validate", details=f"profile {profile}"))
    return rep


def cmd_chartab(args) -> RunReport:
    rep = RunReport("chartab", seed=args.seed, tol=args.tol, snap=args.snap)
    rep.add_input(args.file)
    rf = _load_ring(args.file, args)
    table = compute_table(rf.ring, seed=args.seed, tol=args.tol)
    rep.verdicts.append(report.from_bool(
        "table-hom", table.hom_residual < 1e-9, residual=table.hom_residual))
    rep.verdicts.append(report.from_bool(
        "table-orth", table.orth_residual < 1e-8, residual=table.orth_residual))
    rep.extra.append({"kind": "table", **table.to_dict()})
    return rep


def cmd_burnside(args) -> RunReport:
    rep = RunReport("burnside", seed=args.seed, tol=args.tol, snap=args.snap)
    rep.add_input(args.file)
    rf = _load_ring(args.file, args)
    table = compute_table(rf.ring, seed=args.seed, tol=args.tol)
    b = burnside_check(rf.ring, table)
    dd = fp_dims(rf.ring, tol=args.tol, snap=args.snap)
    note = "" if dd.is_weakly_integral() else "ring not weakly integral"
    rep.verdicts.append(report.from_bool("burnside", b.holds, details=note))
    rep.extra.append({
        "kind": "burnside",
        "entries": [
            {"label": e.label, "invertible": e.invertible, "has_zero": e.has_zero,
             "min_abs": fnum(e.min_abs)}
            for e in b.entries
        ],
    })
    return rep


def cmd_harada(args) -> RunReport:
    rep = RunReport("harada", seed=args.seed, tol=args.tol, snap=args.snap)
    rep.add_input(args.file)
    obj = load_file(args.file)
    if isinstance(obj, GroupFile):
        cls = class_data(obj.table)
        rep.verdicts.append(verify_harada_group(obj.table, cls))
        return rep
    if not isinstance(obj, RingFile):
        raise StructureError(f"{args.file}: expected a ring or group file")
    table = compute_table(obj.ring, seed=args.seed, tol=args.tol)
    verdicts = identities.verify_harada(obj.ring, table, tol=1e-7)
    dd = fp_dims(obj.ring, tol=args.tol, snap=args.snap)
    if not dd.is_weakly_integral() and any(v.failed for v in verdicts):
        verdicts = [
            Verdict(v.check, v.status, v.residual, v.exact,
                    (v.details + "; " if v.details else "") + "ring not weakly integral")
            if v.failed else v
            for v in verdicts
        ]
    rep.verdicts.extend(verdicts)
    return rep


def cmd_support(args) -> RunReport:
    rep = RunReport("support", seed=args.seed, tol=args.tol, snap=args.snap)
    rep.add_input(args.file)
    rf = _load_ring(args.file, args)
    try:
        seed_idx = [int(tok) for tok in args.subring.split(",") if tok.strip() != ""]
    except ValueError:
        raise StructureError(f"--subring {args.subring!r} is not a comma-separated index list")
    from .rings import subring_closure

    closed = sorted(subring_closure(rf.ring, seed_idx))
    table = compute_table(rf.ring, seed=args.seed, tol=args.tol)
    data = identities.support_data(rf.ring, table, closed)
    rep.verdicts.append(report.passed(
        "support", details=f"subring {closed}, support {sorted(data.support)}"))
    rep.extra.append({
        "kind": "support",
        "subring": list(data.subring),
        "lambda_values": [[fnum(v.real), fnum(v.imag)] for v in data.lambda_values],
        "support": sorted(data.support),
    })
    return rep


def cmd_class_sums(args) -> RunReport:
    rep = RunReport("class-sums", seed=args.seed, tol=args.tol, snap=args.snap)
    rep.add_input(args.file)
    rf = _load_ring(args.file, args)
    table = compute_table(rf.ring, seed=args.seed, tol=args.tol)
    sums = [identities.class_sum(table, j) for j in range(table.num_rows)]
    rep.verdicts.append(report.passed("class-sums", details=f"{len(sums)} class sums"))
    rep.extra.append({
        "kind": "class-sums",
        "class_dims": [fnum(c) for c in table.class_dims],
        "actions": [[[fnum(z.real), fnum(z.imag)] for z in s.action] for s in sums],
    })
    return rep


def cmd_typecheck(args) -> RunReport:
    rep = RunReport("typecheck", seed=args.seed, tol=args.tol, snap=args.snap)
    target = args.target
    if Path(target).exists():
        rep.add_input(target)
        obj = load_file(target)
        if not isinstance(obj, TypeFile):
            raise StructureError(f"{target}: expected a type file")
        verdicts, extra = _type_pipeline(obj, args)
        rep.verdicts.extend(verdicts)
        rep.extra.extend(extra)
        return rep
    try:
        total = int(target)
    except ValueError:
        raise StructureError(f"{target!r} is neither a file nor an integer") from None
    n1, rest = arith.squarefree_split(total)
    shape = arith.detect_dimension_shape(total)
    rep.verdicts.append(report.passed(
        "squarefree-split", exact=True, details=f"{total} = {n1} * {rest}"))
    if shape:
        p, q, r, d = shape
        rep.verdicts.append(report.passed(
            "dimension-shape", exact=True,
            details=f"{total} = {p}^2 {q}^2 {r}^2 * {d}; candidate splits off a "
                    f"pointed modular factor of dimension {d}"))
    else:
        rep.verdicts.append(report.not_applicable(
            "dimension-shape", details="total is not of the form p^2 q^2 r^2 d"))
    return rep


def cmd_enumerate(args) -> RunReport:
    rep = RunReport("enumerate", seed=args.seed, tol=args.tol, snap=args.snap)
    records = arith.enumerate_types(
        args.total,
        dsq_divides=args.dsq_divides,
        gcd_sqfree=args.gcd_sqfree,
        thm42=args.thm42,
        prop43=args.prop43,
        g_orbit=args.g_orbit,
    )
    rep.verdicts.append(report.passed(
        "enumerate", exact=True, details=f"{len(records)} types of total {args.total}"))
    rep.extra.append({
        "kind": "enumeration",
        "total": args.total,
        "count": len(records),
        "types": [r.to_dict() for r in records],
    })
    return rep


def cmd_group(args) -> RunReport:
    rep = RunReport("group", seed=args.seed, tol=args.tol, snap=args.snap)
    rep.add_input(args.file)
    obj = load_file(args.file)
    if not isinstance(obj, GroupFile):
        raise StructureError(f"{args.file}: expected a group file")
    verdicts, extra = _group_pipeline(obj, args, oracle_cap=args.oracle_cap)
    rep.verdicts.extend(verdicts)
    rep.extra.extend(extra)
    if args.emit_character_ring:
        ring = character_ring(obj.table, seed=args.seed, snap=args.snap)
        _write_ring_file(ring, Path(args.emit_character_ring))
    return rep


def _write_ring_file(ring, path: Path) -> None:
    import json

    sparse = [
        [i, j, k, int(ring.N[i, j, k])]
        for i in range(ring.rank)
        for j in range(ring.rank)
        for k in range(ring.rank)
        if ring.N[i, j, k]
    ]
    doc = {
        "kind": "ring",
        "name": ring.name,
        "rank": ring.rank,
        "labels": list(ring.labels),
        "unit": ring.unit,
        "dual": list(ring.dual),
        "N": sparse,
        "profile": "fusion",
    }
    path.write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")


def _sweep_one(path: Path, args) -> tuple[str, list[Verdict], list[dict], str | None]:
    """Run the pipeline for one corpus file; returns (name, verdicts, extra, error)."""
    try:
        obj = load_file(path)
        if isinstance(obj, RingFile):
            verdicts, extra = _ring_pipeline(obj, args)
        elif isinstance(obj, GroupFile):
            verdicts, extra = _group_pipeline(obj, args)
        else:
            verdicts, extra = _type_pipeline(obj, args)
        expected = set(obj.expect_fail)
    except StructureError as exc:
        return path.name, [report.failed("load", details=str(exc))], [], str(exc)
    except (NumericError, PreconditionError) as exc:
        return path.name, [report.failed("compute", details=str(exc))], [], str(exc)

    adjusted = []
    for v in verdicts:
        if v.check in expected:
            if v.failed:
                adjusted.append(Verdict(v.check, report.PASS, v.residual, v.exact,
                                        "expected failure (negative control)"))
            else:
                adjusted.append(Verdict(v.check, report.FAIL, v.residual, v.exact,
                                        "negative control unexpectedly passed"))
        else:
            adjusted.append(v)
    return path.name, adjusted, extra, None


def cmd_sweep(args) -> RunReport:
    rep = RunReport("sweep", seed=args.seed, tol=args.tol, snap=args.snap)
    root = Path(args.directory)
    if not root.is_dir():
        raise StructureError(f"{root} is not a directory")
    files = sorted(root.rglob("*.json"), key=lambda p: p.as_posix())
    if not files:
        rep.verdicts.append(report.passed(
            "sweep", details="warning: no corpus files found"))
        return rep
    for f in files:
        rep.add_input(f)

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(lambda f: _sweep_one(f, args), files))
    else:
        results = [_sweep_one(f, args) for f in files]

    failing_files = []
    for name, verdicts, extra, _err in sorted(results, key=lambda r: r[0]):
        for v in verdicts:
            rep.verdicts.append(Verdict(f"{name}:{v.check}", v.status, v.residual,
                                        v.exact, v.details))
        if any(v.failed for v in verdicts):
            failing_files.append(name)
    rep.extra.append({
        "kind": "sweep-summary",
        "files": len(files),
        "failing_files": failing_files,
    })
    return rep


COMMANDS = {
    "validate": cmd_validate,
    "chartab": cmd_chartab,
    "burnside": cmd_burnside,
    "harada": cmd_harada,
    "support": cmd_support,
    "class-sums": cmd_class_sums,
    "typecheck": cmd_typecheck,
    "enumerate": cmd_enumerate,
    "group": cmd_group,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        rep = COMMANDS[args.command](args)
    except (StructureError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3
    except PreconditionError as exc:
        rep = RunReport(args.command, seed=args.seed, tol=args.tol, snap=args.snap)
        rep.verdicts.append(report.failed("precondition", details=str(exc)))

    if args.json:
        print(rep.to_json())
    else:
        for line in rep.to_lines():
            print(line)
    print(f"elapsed: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return rep.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
