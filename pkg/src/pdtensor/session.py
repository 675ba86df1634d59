"""Plain-text session language and executor.

Grammar (line oriented, # comments):

    field (QQ | GF <prime>)
    ring <name> vars <ident>+
    quotient <name> = <ring> / ( <poly>, ... )
    module <name> over <ring> gens <int>+ rels ( <poly>, ... )*
    task <op> <args...>

Tasks: pd, id, depth, dim, betti, resolve, tensor, hom, tor, ext,
transpose, syzygy, canonical, trace, trcheck, cmprofile, example, theorem,
hunt.  Constructive tasks (tensor, hom, transpose, syzygy, canonical) bind
their first argument as a new name.  Names are single-assignment and must
be declared before use.

The machine report is a single JSON document; timings are kept out of it
so equal seeds give byte-identical output.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field as dc_field

from . import __version__
from .fields import QQ, FieldError, field_from_name
from .groebner import BoundExceededError
from .poly import InhomogeneousError, PolyParseError, PolynomialRing
from .modules import (
    PresentedModule,
    QuotientRing,
    hom_module,
    auslander_transpose,
    minimal_presentation,
    tensor_product,
    trace_submodule,
)
from .resolution import (
    NEG_INF,
    POS_INF,
    betti_table,
    cm_profile,
    decide_pd,
    depth,
    depth_ring,
    dim_module,
    dim_ring,
    minimal_resolution,
    render_betti,
    ring_as_module,
    syzygy_module,
)
from .homology import (
    canonical_module,
    decide_id,
    ext,
    tor,
    totally_reflexive_check,
)
from . import lab


class SessionError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


TASK_OPS = (
    "pd", "id", "depth", "dim", "betti", "resolve", "tensor", "hom", "tor",
    "ext", "transpose", "syzygy", "canonical", "trace", "trcheck",
    "cmprofile", "example", "theorem", "hunt",
)

_CONSTRUCTIVE = {"tensor", "hom", "transpose", "syzygy", "canonical"}


@dataclass
class Declaration:
    kind: str         # "ring" | "quotient" | "module"
    name: str
    payload: dict


@dataclass
class Task:
    op: str
    args: tuple
    line: int = 0


@dataclass
class Session:
    field_name: str
    declarations: list
    tasks: list
    rings: dict = dc_field(default_factory=dict)       # name -> PolynomialRing
    quotients: dict = dc_field(default_factory=dict)   # name -> QuotientRing
    modules: dict = dc_field(default_factory=dict)     # name -> PresentedModule

    @property
    def field(self):
        return field_from_name(self.field_name)


def _split_groups(text, line_no):
    """Split '(a, b) (c, d)' into [['a','b'], ['c','d']]."""
    groups = []
    depth_ = 0
    cur = None
    for ch in text:
        if ch == "(":
            if depth_ == 0:
                cur = ""
            else:
                cur += ch
            depth_ += 1
        elif ch == ")":
            depth_ -= 1
            if depth_ < 0:
                raise SessionError("unbalanced parentheses", line_no)
            if depth_ == 0:
                groups.append([p.strip() for p in cur.split(",")])
                cur = None
            else:
                cur += ch
        elif cur is not None:
            cur += ch
        elif not ch.isspace():
            raise SessionError(f"unexpected text {ch!r} outside parentheses",
                               line_no)
    if depth_ != 0:
        raise SessionError("unbalanced parentheses", line_no)
    return groups


def parse_session(text: str) -> Session:
    """Parse and eagerly build the declared objects (so inhomogeneous data
    is reported at parse time, with the offending entry)."""
    field_name = "QQ"
    declarations = []
    tasks = []
    session = Session(field_name, declarations, tasks)
    declared: set = set()

    def declare(name, line_no):
        if name in declared:
            raise SessionError(f"name {name!r} already assigned", line_no)
        declared.add(name)

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        head = words[0]
        if head == "field":
            if len(words) not in (2, 3):
                raise SessionError("usage: field (QQ | GF <prime>)", line_no)
            try:
                field_from_name(" ".join(words[1:]))
            except FieldError as e:
                raise SessionError(str(e), line_no)
            session.field_name = " ".join(words[1:])
        elif head == "ring":
            if len(words) < 4 or words[2] != "vars":
                raise SessionError("usage: ring <name> vars <ident>+", line_no)
            name = words[1]
            declare(name, line_no)
            variables = tuple(words[3:])
            try:
                ring = PolynomialRing(session.field, variables)
            except ValueError as e:
                raise SessionError(str(e), line_no)
            session.rings[name] = ring
            declarations.append(Declaration("ring", name,
                                            {"vars": list(variables)}))
        elif head == "quotient":
            # quotient <name> = <ring> / ( ... )
            rest = line[len("quotient"):].strip()
            if "=" not in rest or "/" not in rest:
                raise SessionError(
                    "usage: quotient <name> = <ring> / ( <poly list> )", line_no)
            name, rhs = [p.strip() for p in rest.split("=", 1)]
            ring_name, ideal_part = [p.strip() for p in rhs.split("/", 1)]
            declare(name, line_no)
            if ring_name not in session.rings:
                raise SessionError(f"undeclared ring {ring_name!r}", line_no)
            groups = _split_groups(ideal_part, line_no)
            gens = groups[0] if groups else []
            gens = [g for g in gens if g]
            ambient = session.rings[ring_name]
            try:
                qring = QuotientRing(ambient, gens, name=name)
            except (PolyParseError, InhomogeneousError, ValueError) as e:
                raise SessionError(str(e), line_no)
            session.quotients[name] = qring
            declarations.append(Declaration("quotient", name,
                                            {"ring": ring_name, "gens": gens}))
        elif head == "module":
            # module <name> over <ring> gens <ints> rels ( ... ) ( ... )
            if len(words) < 5 or words[2] != "over":
                raise SessionError(
                    "usage: module <name> over <ring> gens <twists> "
                    "rels ( <poly vector> )*", line_no)
            name = words[1]
            ring_name = words[3]
            declare(name, line_no)
            if ring_name not in session.quotients:
                raise SessionError(f"undeclared quotient ring {ring_name!r}",
                                   line_no)
            if "gens" not in words:
                raise SessionError("module needs a gens clause", line_no)
            gi = words.index("gens")
            twists = []
            ri = len(words)
            for idx in range(gi + 1, len(words)):
                if words[idx] == "rels":
                    ri = idx
                    break
                try:
                    twists.append(int(words[idx]))
                except ValueError:
                    raise SessionError(f"bad twist {words[idx]!r}", line_no)
            if not twists:
                raise SessionError("module needs at least one generator twist",
                                   line_no)
            rel_part = ""
            if ri < len(words):
                rel_part = line.split("rels", 1)[1]
            groups = _split_groups(rel_part, line_no) if rel_part.strip() else []
            qring = session.quotients[ring_name]
            cols = []
            for g in groups:
                if len(g) != len(twists):
                    raise SessionError(
                        f"relation {g} has {len(g)} entries for "
                        f"{len(twists)} generators", line_no)
                cols.append(tuple(g))
            try:
                mod = PresentedModule(
                    qring, tuple(twists),
                    [tuple(qring.ambient.from_string(e) if e else
                           qring.ambient.zero() for e in col) for col in cols],
                    name=name,
                )
            except (PolyParseError, InhomogeneousError) as e:
                raise SessionError(str(e), line_no)
            session.modules[name] = mod
            declarations.append(Declaration("module", name, {
                "ring": ring_name, "gens": twists, "rels": [list(g) for g in groups],
            }))
        elif head == "task":
            if len(words) < 2:
                raise SessionError("empty task", line_no)
            op = words[1]
            if op not in TASK_OPS:
                raise SessionError(f"unknown task op {op!r}", line_no)
            args = tuple(words[2:])
            if op in _CONSTRUCTIVE:
                if not args:
                    raise SessionError(f"task {op} needs a result name", line_no)
                declare(args[0], line_no)
            for a in args[1:] if op in _CONSTRUCTIVE else args:
                pass
            tasks.append(Task(op=op, args=args, line=line_no))
        else:
            raise SessionError(f"unknown declaration {head!r}", line_no)
    # validate task name references where they are clearly names
    known = set(session.modules) | set(session.quotients) | set(session.rings)
    produced = set()
    for t in tasks:
        refs = t.args[1:] if t.op in _CONSTRUCTIVE else t.args
        if t.op in ("example", "theorem", "hunt"):
            continue
        for a in refs:
            if a.isidentifier() and not a.isdigit():
                if a not in known and a not in produced:
                    raise SessionError(f"undeclared name {a!r}", t.line)
        if t.op in _CONSTRUCTIVE:
            produced.add(t.args[0])
    return session


def render_session(session: Session) -> str:
    """Canonical printer; parse(render(s)) rebuilds an equal session."""
    out = [f"field {session.field_name}"]
    for d in session.declarations:
        if d.kind == "ring":
            out.append(f"ring {d.name} vars {' '.join(d.payload['vars'])}")
        elif d.kind == "quotient":
            gens = ", ".join(d.payload["gens"])
            out.append(f"quotient {d.name} = {d.payload['ring']} / ({gens})")
        elif d.kind == "module":
            twists = " ".join(str(t) for t in d.payload["gens"])
            rels = " ".join(f"({', '.join(col)})" for col in d.payload["rels"])
            text = f"module {d.name} over {d.payload['ring']} gens {twists}"
            if rels:
                text += f" rels {rels}"
            out.append(text)
    for t in session.tasks:
        out.append(f"task {t.op} {' '.join(t.args)}".rstrip())
    return "\n".join(out) + "\n"


def session_signature(session: Session):
    """Structural identity used by the round-trip test."""
    return (
        session.field_name,
        tuple((d.kind, d.name, json.dumps(d.payload, sort_keys=True))
              for d in session.declarations),
        tuple((t.op, t.args) for t in session.tasks),
    )


# -- execution ----------------------------------------------------------------


@dataclass
class ExecFlags:
    bound: int = None             # homological bound override
    degree_cap: int = None
    fmt: str = "text"
    seed: int = 42
    threads: int = 1


def _num(value):
    if value == NEG_INF:
        return "-inf"
    if value == POS_INF:
        return "inf"
    return value


def _pd_json(v):
    out = {"kind": v.kind}
    if v.finite:
        out["value"] = _num(v.value)
    else:
        out["certificate_index"] = v.certificate_index
        out["certificate_betti"] = v.certificate_betti
    return out


def _id_json(v):
    out = {"kind": v.kind}
    if v.finite:
        out["value"] = _num(v.value)
        out["bass_index_tested"] = v.certificate_index
    else:
        out["certificate_index"] = v.certificate_index
        out["certificate_dim"] = v.certificate_dim
    return out


class _Executor:
    def __init__(self, session: Session, flags: ExecFlags):
        self.session = session
        self.flags = flags
        self.env_modules = dict(session.modules)
        self.env_rings = dict(session.quotients)
        self.records = []
        self.exit_code = 0

    def module(self, name, line=0):
        if name in self.env_modules:
            return self.env_modules[name]
        if name in self.env_rings:
            return ring_as_module(self.env_rings[name])
        raise SessionError(f"unknown module {name!r}", line)

    def ring(self, name, line=0):
        if name in self.env_rings:
            return self.env_rings[name]
        raise SessionError(f"unknown ring {name!r}", line)

    def run(self):
        for idx, task in enumerate(self.session.tasks):
            started = time.monotonic()
            record = {
                "index": idx,
                "task": task.op,
                "inputs": list(task.args),
                "status": "ok",
                "result": None,
            }
            try:
                record["result"] = self.dispatch(task)
            except BoundExceededError as e:
                record["status"] = "bound-exceeded"
                record["result"] = {"message": str(e)}
                self.exit_code = max(self.exit_code, 2)
            except (SessionError, KeyError, ValueError) as e:
                record["status"] = "error"
                record["result"] = {"message": str(e)}
                self.exit_code = max(self.exit_code, 1)
            record["wall_ms"] = (time.monotonic() - started) * 1000.0
            if record["result"] and isinstance(record["result"], dict) \
                    and record["result"].get("critical"):
                self.exit_code = 3
            self.records.append(record)
        return self

    def window(self, args, pos, default):
        if len(args) > pos:
            try:
                return int(args[pos])
            except ValueError:
                pass
        return self.flags.bound if self.flags.bound is not None else default

    def dispatch(self, task: Task):
        op, args, line = task.op, task.args, task.line
        if op == "pd":
            v = decide_pd(self.module(args[0], line))
            return _pd_json(v)
        if op == "id":
            v = decide_id(minimal_presentation(self.module(args[0], line)))
            return _id_json(v)
        if op == "depth":
            return {"depth": _num(depth(self.module(args[0], line)))}
        if op == "dim":
            return {"dim": _num(dim_module(self.module(args[0], line)))}
        if op == "betti":
            t = self.window(args, 1, 4)
            table = betti_table(self.module(args[0], line), t,
                                degree_cap=self.flags.degree_cap)
            return {
                "bound": t,
                "totals": table.totals(),
                "entries": {f"{i},{j}": v for (i, j), v in
                            sorted(table.entries.items())},
                "rendered": render_betti(table),
            }
        if op == "resolve":
            t = self.window(args, 1, 4)
            cx, table = minimal_resolution(self.module(args[0], line), t,
                                           degree_cap=self.flags.degree_cap)
            return {
                "bound": t,
                "totals": table.totals(),
                "dd_zero": cx.check_composition(),
                "minimal": cx.entries_in_maximal_ideal(),
                "rendered": render_betti(table),
            }
        if op == "tensor":
            name, a, b = args[0], args[1], args[2]
            t = tensor_product(self.module(a, line), self.module(b, line))
            t.name = name
            self.env_modules[name] = t
            tm = minimal_presentation(t)
            return {"defined": name, "mu": tm.rank0,
                    "relations": len(tm.relations)}
        if op == "hom":
            name, a, b = args[0], args[1], args[2]
            h = hom_module(self.module(a, line), self.module(b, line))
            h.module.name = name
            self.env_modules[name] = h.module
            hm = minimal_presentation(h.module)
            return {"defined": name, "mu": hm.rank0}
        if op == "transpose":
            name, a = args[0], args[1]
            t = auslander_transpose(self.module(a, line))
            t.name = name
            self.env_modules[name] = t
            return {"defined": name, "mu": minimal_presentation(t).rank0}
        if op == "syzygy":
            name, a = args[0], args[1]
            i = int(args[2]) if len(args) > 2 else 1
            s = syzygy_module(self.module(a, line), i)
            s.name = name
            self.env_modules[name] = s
            return {"defined": name, "index": i,
                    "mu": minimal_presentation(s).rank0}
        if op == "canonical":
            name, rname = args[0], args[1]
            w = canonical_module(self.ring(rname, line))
            self.env_modules[name] = w
            return {"defined": name, "mu": minimal_presentation(w).rank0}
        if op == "tor":
            a, b = args[0], args[1]
            t = self.window(args, 2, 4)
            prof = tor(self.module(a, line), self.module(b, line), t)
            return {
                "window": t,
                "zero": {str(i): z for i, z in prof.zero.items()},
                "dims": {str(i): {str(d): v for d, v in sorted(dd.items())}
                         for i, dd in prof.dims.items()},
            }
        if op == "ext":
            a, b = args[0], args[1]
            t = self.window(args, 2, 4)
            prof = ext(self.module(a, line), self.module(b, line), t)
            return {
                "window": t,
                "zero": {str(i): z for i, z in prof.zero.items()},
                "dims": {str(i): {str(d): v for d, v in sorted(dd.items())}
                         for i, dd in prof.dims.items()},
            }
        if op == "trace":
            a, b = args[0], args[1]
            res = trace_submodule(self.module(a, line), self.module(b, line))
            return {
                "trace_equals_target": res.equals_target,
                "trace_mu": minimal_presentation(res.trace.module).rank0,
            }
        if op == "trcheck":
            b = int(args[1]) if len(args) > 1 else 4
            v = totally_reflexive_check(self.module(args[0], line), b)
            out = {"confirmed": v.confirmed, "bound": v.bound}
            if not v.confirmed:
                out["refuted_at"] = v.refuted_at
                out["side"] = v.side
            return out
        if op == "cmprofile":
            prof = cm_profile(self.module(args[0], line))
            return {
                "mcm": prof.is_mcm, "ulrich": prof.is_ulrich,
                "depth": _num(prof.depth), "dim_ring": _num(prof.dim_ring),
                "multiplicity": prof.multiplicity, "mu": prof.mu,
            }
        if op == "example":
            verdict = lab.run_example(args[0], self.session.field)
            return _verdict_json(verdict)
        if op == "theorem":
            return self._theorem(args, line)
        if op == "hunt":
            ring_id = args[0]
            trials = int(args[1]) if len(args) > 1 else 10
            ring = lab.catalog_ring(ring_id, self.session.field) \
                if ring_id in lab.catalog_ring_ids() else self.ring(ring_id, line)
            rep = lab.hunt(ring, trials, lab.RandomModuleParams(),
                           seed=self.flags.seed)
            return {
                "ring": rep.ring, "trials": rep.trials, "seed": rep.seed,
                "finds": [vars(f) for f in rep.finds],
                "audits_passed": rep.audits_passed,
            }
        raise SessionError(f"unhandled task {op!r}", line)

    def _theorem(self, args, line):
        tid = args[0]
        rest = args[1:]
        inputs: dict = {}
        if tid in ("thm-1.2",):
            inputs["ring"] = self.ring(rest[0], line) if rest else None
        elif tid in ("thm-1.6", "cor-3.10"):
            inputs["L"] = self.module(rest[0], line)
            inputs["N"] = self.module(rest[1], line)
            inputs["ring"] = inputs["L"].ring
        elif tid == "fact-a.3":
            ring = self.ring(rest[0], line)
            inputs["ring"] = ring
            inputs["sequence"] = [s.strip("()") for s in rest[1:]]
        elif tid == "prop-a.7":
            inputs["M"] = self.module(rest[0], line)
            inputs["assume_locally_free"] = True
        elif tid in ("fact-3.9",):
            inputs["M"] = self.module(rest[0], line)
        else:
            inputs["M"] = self.module(rest[0], line)
            if len(rest) > 1:
                inputs["N"] = self.module(rest[1], line)
        verdict = lab.check_theorem_instance(tid, inputs)
        return {
            "theorem": verdict.theorem_id,
            "hypothesis_met": verdict.hypothesis_met,
            "conclusion_ok": verdict.conclusion_ok,
            "critical": verdict.critical,
            "notes": {k: str(v) for k, v in sorted(verdict.notes.items())},
        }


def _verdict_json(verdict):
    return {
        "instance": verdict.instance_id,
        "passed": verdict.passed,
        "critical": verdict.critical,
        "assertions": [
            {
                "key": r.key,
                "description": r.description,
                "pinned": r.pinned,
                "passed": r.passed,
                "value": r.value,
            }
            for r in verdict.records
        ],
    }


@dataclass
class Report:
    records: list
    seed: int
    exit_code: int
    schema: str = "pdtensor-report/1"
    version: str = ""

    def machine(self) -> str:
        doc = {
            "schema": self.schema,
            "engine_version": self.version,
            "seed": self.seed,
            "exit_code": self.exit_code,
            "tasks": [
                {
                    "index": r["index"],
                    "task": r["task"],
                    "inputs": r["inputs"],
                    "status": r["status"],
                    "result": r["result"],
                    "timing_ms": None,   # kept out of the byte-stable report
                }
                for r in self.records
            ],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def human(self) -> str:
        lines = [f"pdtensor {self.version} report (seed {self.seed})"]
        for r in self.records:
            head = f"[{r['index']}] {r['task']} {' '.join(r['inputs'])}: {r['status']}"
            lines.append(head + f"  ({r['wall_ms']:.0f} ms)")
            result = r["result"]
            if isinstance(result, dict):
                for key, value in result.items():
                    if key == "rendered":
                        lines.append(_indent(str(value), 4))
                    elif key == "assertions":
                        for a in value:
                            mark = ("pass" if a["passed"]
                                    else "FAIL" if a["passed"] is False
                                    else "info")
                            lines.append(f"    {mark:4} {a['key']}: "
                                         f"{a['description']} = {a['value']}")
                    else:
                        lines.append(f"    {key} = {value}")
        lines.append(f"exit code: {self.exit_code}")
        return "\n".join(lines) + "\n"


def _indent(text, n):
    pad = " " * n
    return "\n".join(pad + l for l in text.splitlines())


def execute(session: Session, flags: ExecFlags = None) -> Report:
    flags = flags or ExecFlags()
    ex = _Executor(session, flags).run()
    return Report(records=ex.records, seed=flags.seed,
                  exit_code=ex.exit_code, version=__version__)
