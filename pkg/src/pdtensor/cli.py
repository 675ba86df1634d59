"""Command-line driver: run session files, replay the encoded instance
suite, hunt for counterexample pairs, and cross-check with the dense
degreewise oracle.

Exit codes: 0 all tasks completed, 1 usage or parse error, 2 an engine
bound was exceeded, 3 a met-hypothesis/failed-conclusion (CRITICAL)
verdict appeared.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import __version__, lab
from .fields import field_from_name
from .oracle import ModuleData, oracle_for, tensor_data
from .session import (
    ExecFlags,
    Report,
    SessionError,
    execute,
    parse_session,
    _verdict_json,
)


def _threads_default():
    env = os.environ.get("PDTENSOR_THREADS")
    if env and env.isdigit():
        return max(1, int(env))
    return 1


def _add_common(p):
    p.add_argument("--bound", type=int, default=None,
                   help="homological bound override for windowed tasks")
    p.add_argument("--degree-cap", type=int, default=None,
                   help="internal degree cap for basis computations")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--field", default="QQ", help="QQ or GF <p> (default QQ)")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="pdtensor",
        description="exact homological algebra engine for graded modules "
                    "over quotient rings",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    runp = sub.add_parser("run", help="execute a .hca session file")
    runp.add_argument("file")
    _add_common(runp)

    paperp = sub.add_parser("paper", help="replay the encoded instance suite")
    group = paperp.add_mutually_exclusive_group()
    group.add_argument("--example", help="run a single instance id")
    group.add_argument("--all", action="store_true", help="run everything")
    _add_common(paperp)

    huntp = sub.add_parser("hunt", help="search for finite-pd tensor products "
                                        "of infinite-pd pairs")
    huntp.add_argument("--ring", required=True, help="catalog ring id")
    huntp.add_argument("--trials", type=int, default=25)
    _add_common(huntp)

    oraclep = sub.add_parser("oracle", help="dense degreewise cross-check of "
                                            "a session's modules")
    oraclep.add_argument("file")
    oraclep.add_argument("--dmax", type=int, default=6)
    _add_common(oraclep)
    return ap


def _flags(args) -> ExecFlags:
    threads = args.threads if args.threads is not None else _threads_default()
    return ExecFlags(
        bound=args.bound,
        degree_cap=args.degree_cap,
        fmt=args.format,
        seed=args.seed,
        threads=max(1, threads),
    )


def _emit(report: Report, fmt: str):
    if fmt == "machine":
        sys.stdout.write(report.machine())
    else:
        sys.stdout.write(report.human())
    return report.exit_code


def _cmd_run(args) -> int:
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    try:
        session = parse_session(text)
    except SessionError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 1
    report = execute(session, _flags(args))
    return _emit(report, args.format)


def _paper_instances(args):
    if args.example:
        return [args.example]
    return lab.example_ids()


def _curated_theorem_checks(field):
    """Cheap curated theorem instances replayed by `paper`."""
    checks = []
    r1 = lab.catalog_ring("r1", field)
    r6 = lab.catalog_ring("r6", field)
    k1 = lab.catalog_ring
    from .modules import cyclic_module, residue_field
    from .resolution import syzygy_module

    checks.append(("thm-1.2", {"ring": r1}))
    checks.append(("thm-1.2", {"ring": lab.catalog_ring("poly2", field)}))
    checks.append(("thm-1.6", {
        "ring": r1, "L": cyclic_module(r1, ["x"]), "N": residue_field(r1),
    }))
    checks.append(("fact-a.3", {"ring": r1, "sequence": ["x + y", "x - y"]}))
    i6 = syzygy_module(cyclic_module(r6, ["x", "y"]), 1)
    checks.append(("prop-a.7", {"M": i6, "assume_locally_free": True}))
    checks.append(("fact-3.9", {"M": cyclic_module(r6, ["x"])}))
    checks.append(("cor-3.13", {
        "M": cyclic_module(r1, ["x"]), "N": residue_field(r1),
    }))
    checks.append(("fact-a.1", {
        "M": lab.free_module(r1, (0,)), "N": lab.free_module(r1, (0, -1)),
    }))
    return checks


def _cmd_paper(args) -> int:
    field = field_from_name(args.field)
    flags = _flags(args)
    ids = _paper_instances(args)
    records = []
    exit_code = 0

    def run_instance(idx_id):
        idx, iid = idx_id
        verdict = lab.run_example(iid, field)
        return idx, iid, verdict

    jobs = list(enumerate(ids))
    if flags.threads > 1:
        with ThreadPoolExecutor(max_workers=flags.threads) as pool:
            results = list(pool.map(run_instance, jobs))
    else:
        results = [run_instance(j) for j in jobs]
    results.sort(key=lambda r: r[0])
    for idx, iid, verdict in results:
        rec = {
            "index": idx,
            "task": "example",
            "inputs": [iid],
            "status": "ok" if verdict.passed else "failed",
            "result": _verdict_json(verdict),
            "wall_ms": verdict.wall_ms,
        }
        records.append(rec)
        if not verdict.passed:
            exit_code = max(exit_code, 2)
        if verdict.critical:
            exit_code = 3
    if args.all or not args.example:
        base = len(records)
        for off, (tid, inputs) in enumerate(_curated_theorem_checks(field)):
            verdict = lab.check_theorem_instance(tid, inputs)
            records.append({
                "index": base + off,
                "task": "theorem",
                "inputs": [tid],
                "status": "ok",
                "result": {
                    "theorem": verdict.theorem_id,
                    "hypothesis_met": verdict.hypothesis_met,
                    "conclusion_ok": verdict.conclusion_ok,
                    "critical": verdict.critical,
                    "notes": {k: str(v) for k, v in sorted(verdict.notes.items())},
                },
                "wall_ms": verdict.wall_ms,
            })
            if verdict.critical:
                exit_code = 3
    report = Report(records=records, seed=flags.seed, exit_code=exit_code,
                    version=__version__)
    return _emit(report, args.format)


def _cmd_hunt(args) -> int:
    field = field_from_name(args.field)
    flags = _flags(args)
    try:
        ring = lab.catalog_ring(args.ring, field)
    except KeyError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    rep = lab.hunt(ring, args.trials, lab.RandomModuleParams(), seed=flags.seed)
    record = {
        "index": 0,
        "task": "hunt",
        "inputs": [args.ring, str(args.trials)],
        "status": "ok",
        "result": {
            "ring": rep.ring,
            "trials": rep.trials,
            "seed": rep.seed,
            "finds": [vars(f) for f in rep.finds],
            "audits_passed": rep.audits_passed,
        },
        "wall_ms": 0.0,
    }
    report = Report(records=[record], seed=flags.seed,
                    exit_code=0 if rep.audits_passed else 3,
                    version=__version__)
    return _emit(report, args.format)


def _cmd_oracle(args) -> int:
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            session = parse_session(fh.read())
    except (OSError, SessionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    records = []
    for idx, (name, module) in enumerate(sorted(session.modules.items())):
        oracle = oracle_for(module.ring)
        data = ModuleData.of(module)
        dims = oracle.module_dims(data, args.dmax)
        records.append({
            "index": idx,
            "task": "oracle-dims",
            "inputs": [name],
            "status": "ok",
            "result": {"dims": {str(d): v for d, v in sorted(dims.items())}},
            "wall_ms": 0.0,
        })
    # tensor tasks get oracle dimensions too
    base = len(records)
    off = 0
    for t in session.tasks:
        if t.op != "tensor" or len(t.args) < 3:
            continue
        a, b = t.args[1], t.args[2]
        if a not in session.modules or b not in session.modules:
            continue
        ma, mb = session.modules[a], session.modules[b]
        oracle = oracle_for(ma.ring)
        td = tensor_data(ModuleData.of(ma), ModuleData.of(mb))
        dims = oracle.module_dims(td, args.dmax)
        tor_dims = oracle.tor_dims(ModuleData.of(ma), ModuleData.of(mb), 2,
                                   args.dmax)
        records.append({
            "index": base + off,
            "task": "oracle-tensor",
            "inputs": [t.args[0], a, b],
            "status": "ok",
            "result": {
                "dims": {str(d): v for d, v in sorted(dims.items())},
                "tor1": {str(d): v for d, v in sorted(tor_dims[1].items())},
                "tor2": {str(d): v for d, v in sorted(tor_dims[2].items())},
            },
            "wall_ms": 0.0,
        })
        off += 1
    report = Report(records=records, seed=args.seed, exit_code=0,
                    version=__version__)
    return _emit(report, args.format)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "paper":
        return _cmd_paper(args)
    if args.command == "hunt":
        return _cmd_hunt(args)
    if args.command == "oracle":
        return _cmd_oracle(args)
    return 1


if __name__ == "__main__":
    sys.exit(main())
