"""Circuit readers (truth vector, Espresso PLA, combinational BLIF) and
report writers (text, JSON, CSV).

Inputs are numbered in declaration order: the first declared input is x_1.
"""

from __future__ import annotations

import csv
import io as _stdio
import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .bdd import MAX_VARS, TRUTH_TABLE_LIMIT, FuncHandle, Manager
from .entropy import EntropyProfile
from .errors import CycleError, LimitError, ParseError, SequentialUnsupportedError
from .symmetry import SymmetryKind, SymmetryReport, format_summary


@dataclass
class CircuitSpec:
    name: str
    inputs: list[str]
    outputs: list[str]
    manager: Manager
    functions: list[FuncHandle]
    fmt: str
    warnings: list[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.inputs)

    def var_name(self, i: int) -> str:
        return self.inputs[i - 1]


def _new_manager(n: int, max_vars: int, backend: str | None) -> Manager:
    if n > max_vars:
        raise LimitError(f"{n} inputs exceeds the configured maximum of {max_vars}")
    return Manager(n, max_vars=max_vars, backend=backend)


def _logical_lines(text: str):
    """(line number, content) with comments stripped and '\\' continuations joined."""
    pending, start = "", None
    for no, raw in enumerate(text.replace("\r\n", "\n").replace("\r", "\n").split("\n"), 1):
        line = raw.split("#", 1)[0].rstrip()
        if line.endswith("\\"):
            if start is None:
                start = no
            pending += line[:-1] + " "
            continue
        if pending:
            line, no_out = pending + line, start
            pending, start = "", None
        else:
            no_out = no
        line = line.strip()
        if line:
            yield no_out, line
    if pending.strip():
        yield start, pending.strip()


# -- truth vectors ----------------------------------------------------------


def parse_truth_vector(text: str, name: str = "f", max_vars: int = MAX_VARS,
                       backend: str | None = None) -> CircuitSpec:
    bits = []
    for ch in text:
        if ch in "01":
            bits.append(int(ch))
        elif not (ch.isspace() or ch in "[]"):
            raise ParseError(f"illegal character {ch!r} in truth vector")
    size = len(bits)
    if size == 0 or size & (size - 1):
        raise ParseError(f"truth vector length {size} is not a power of two")
    n = size.bit_length() - 1
    if n > TRUTH_TABLE_LIMIT:
        raise LimitError(f"truth vectors are limited to {TRUTH_TABLE_LIMIT} variables")
    mgr = _new_manager(n, max_vars, backend)
    f = mgr.from_truth_table(bits)
    return CircuitSpec(name, [f"x{i}" for i in range(1, n + 1)], [name], mgr, [f], "tt")


# -- PLA ----------------------------------------------------------------------

_PLA_BENIGN = {"p"}


def parse_pla(text: str, name: str = "pla", max_vars: int = MAX_VARS,
              backend: str | None = None) -> CircuitSpec:
    """Espresso PLA, types f and fd.  Output '1' adds the cube to the ON-set;
    '0' and '~' add nothing; '-' is treated as 0 with a warning."""
    ni = no = None
    ilb = ob = None
    cubes = []
    warnings = []
    for lineno, line in _logical_lines(text):
        if line.startswith("."):
            parts = line[1:].split()
            key, args = parts[0] if parts else "", parts[1:]
            if key in ("e", "end"):
                break
            if key in ("i", "o"):
                try:
                    value = int(args[0])
                except (IndexError, ValueError):
                    raise ParseError(f".{key} needs an integer argument", lineno) from None
                if value < 0:
                    raise ParseError(f".{key} must be non-negative", lineno)
                if key == "i":
                    ni = value
                else:
                    no = value
            elif key == "ilb":
                ilb = args
            elif key == "ob":
                ob = args
            elif key == "type":
                if args[:1] not in (["f"], ["fd"]):
                    raise ParseError(f"unsupported PLA type {' '.join(args) or '(none)'}; only f and fd", lineno)
            elif key in _PLA_BENIGN:
                warnings.append(f"line {lineno}: ignored directive .{key}")
            else:
                raise ParseError(f"unknown directive .{key}", lineno)
            continue
        if ni is None or no is None:
            raise ParseError("cube before .i/.o declarations", lineno)
        field_ = "".join(line.split())
        if len(field_) != ni + no:
            raise ParseError(f"cube width {len(field_)} does not match .i {ni} + .o {no}", lineno)
        inp, out = field_[:ni], field_[ni:]
        if bad := set(inp) - set("01-"):
            raise ParseError(f"illegal input character(s) {''.join(sorted(bad))!r}", lineno)
        if bad := set(out) - set("01-~"):
            raise ParseError(f"illegal output character(s) {''.join(sorted(bad))!r}", lineno)
        cubes.append((lineno, inp, out))
    if ni is None or no is None:
        raise ParseError("missing .i or .o declaration")
    inputs = ilb if ilb is not None else [f"x{i}" for i in range(1, ni + 1)]
    outputs = ob if ob is not None else [f"f{k}" for k in range(1, no + 1)] if no > 1 else ["f"]
    if len(inputs) != ni:
        raise ParseError(f".ilb lists {len(inputs)} names for {ni} inputs")
    if len(outputs) != no:
        raise ParseError(f".ob lists {len(outputs)} names for {no} outputs")
    if len(set(inputs)) != len(inputs):
        raise ParseError("duplicate input names")

    mgr = _new_manager(ni, max_vars, backend)
    funcs = [mgr.false] * no
    for lineno, inp, out in cubes:
        cube = None
        for k, ch in enumerate(out):
            if ch == "-":
                warnings.append(f"line {lineno}: output don't-care for {outputs[k]} treated as 0")
            if ch != "1":
                continue
            if cube is None:
                cube = mgr.cube((v + 1, int(c)) for v, c in enumerate(inp) if c != "-")
            funcs[k] = funcs[k] | cube
    return CircuitSpec(name, list(inputs), list(outputs), mgr, funcs, "pla", warnings)


# -- BLIF ---------------------------------------------------------------------

_BLIF_SEQUENTIAL = {"latch", "mlatch", "clock", "clock_event"}
_BLIF_TIMING = re.compile(r"^(default_)?(input_arrival|output_required|input_drive|output_load|max_input_load)$|^wire_load_slope$|^wire$")


@dataclass
class _Cover:
    fanins: list[str]
    output: str
    line: int
    rows: list[tuple[str, str]] = field(default_factory=list)


def parse_blif(text: str, name: str | None = None, max_vars: int = MAX_VARS,
               backend: str | None = None) -> CircuitSpec:
    """Combinational BLIF: .model/.inputs/.outputs/.names/.end."""
    model = None
    inputs: list[str] = []
    outputs: list[str] = []
    covers: dict[str, _Cover] = {}
    current = None
    warnings = []
    for lineno, line in _logical_lines(text):
        if line.startswith("."):
            parts = line[1:].split()
            key, args = parts[0] if parts else "", parts[1:]
            current = None
            if key == "model":
                if model is not None:
                    raise ParseError("multiple models are not supported", lineno)
                model = args[0] if args else "blif"
            elif key == "inputs":
                inputs.extend(args)
            elif key == "outputs":
                outputs.extend(args)
            elif key == "names":
                if not args:
                    raise ParseError(".names without signals", lineno)
                out = args[-1]
                if out in covers:
                    raise ParseError(f"signal {out!r} defined twice", lineno)
                current = covers[out] = _Cover(args[:-1], out, lineno)
            elif key == "end":
                break
            elif key in _BLIF_SEQUENTIAL:
                raise SequentialUnsupportedError(f"sequential unsupported: .{key}", lineno)
            elif _BLIF_TIMING.match(key):
                warnings.append(f"line {lineno}: ignored directive .{key}")
            else:
                raise ParseError(f"unsupported construct .{key}", lineno)
            continue
        if current is None:
            raise ParseError(f"unexpected line {line!r}", lineno)
        tokens = line.split()
        width = len(current.fanins)
        if width == 0:
            if len(tokens) != 1 or tokens[0] not in ("0", "1"):
                raise ParseError("constant cover row must be 0 or 1", lineno)
            current.rows.append(("", tokens[0]))
            continue
        if len(tokens) != 2 or len(tokens[0]) != width:
            raise ParseError(f"cover row does not match {width} fanins", lineno)
        pattern, value = tokens
        if set(pattern) - set("01-") or value not in ("0", "1"):
            raise ParseError(f"malformed cover row {line!r}", lineno)
        current.rows.append((pattern, value))

    if len(set(inputs)) != len(inputs):
        raise ParseError("duplicate input names")
    for sig in inputs:
        if sig in covers:
            raise ParseError(f"primary input {sig!r} is also driven by .names", covers[sig].line)
    for cover in covers.values():
        if len({v for _, v in cover.rows}) > 1:
            raise ParseError(f"cover for {cover.output!r} mixes ON and OFF rows", cover.line)

    mgr = _new_manager(len(inputs), max_vars, backend)
    signals: dict[str, FuncHandle] = {sig: mgr.var(i) for i, sig in enumerate(inputs, 1)}

    def build(cover: _Cover) -> FuncHandle:
        acc = mgr.false
        for pattern, _ in cover.rows:
            term = mgr.true
            for sig, ch in zip(cover.fanins, pattern):
                if ch == "1":
                    term = term & signals[sig]
                elif ch == "0":
                    term = term & ~signals[sig]
            acc = acc | term
        if cover.rows and cover.rows[0][1] == "0":
            acc = ~acc
        return acc

    # iterative DFS so deep netlists do not hit the recursion limit
    visiting = set()
    for out in outputs:
        stack = [(out, False)]
        while stack:
            sig, expanded = stack.pop()
            if sig in signals:
                continue
            cover = covers.get(sig)
            if cover is None:
                raise ParseError(f"undefined signal {sig!r}")
            if expanded:
                visiting.discard(sig)
                signals[sig] = build(cover)
                continue
            if sig in visiting:
                raise CycleError(f"combinational cycle through {sig!r}", cover.line)
            visiting.add(sig)
            stack.append((sig, True))
            for fanin in cover.fanins:
                if fanin not in signals:
                    if fanin in visiting:
                        raise CycleError(f"combinational cycle through {fanin!r}", cover.line)
                    stack.append((fanin, False))
    funcs = [signals[o] for o in outputs]
    return CircuitSpec(name or model or "blif", inputs, outputs, mgr, funcs, "blif", warnings)


def detect_format(path: str | Path) -> str:
    suffix = Path(path).suffix.lower()
    return {".pla": "pla", ".blif": "blif"}.get(suffix, "tt")


def load_circuit(path: str | Path, fmt: str = "auto", max_vars: int = MAX_VARS,
                 backend: str | None = None) -> CircuitSpec:
    path = Path(path)
    if fmt == "auto":
        fmt = detect_format(path)
    try:
        text = path.read_text()
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not a text file ({exc.reason})") from None
    name = path.stem
    if fmt == "tt":
        return parse_truth_vector(text, name=name, max_vars=max_vars, backend=backend)
    if fmt == "pla":
        return parse_pla(text, name=name, max_vars=max_vars, backend=backend)
    if fmt == "blif":
        return parse_blif(text, name=name, max_vars=max_vars, backend=backend)
    raise ValueError(f"unknown format {fmt!r}")


# -- reports ------------------------------------------------------------------


@dataclass
class ReportDocument:
    circuit: str
    inputs: list[str]
    outputs: list[str]
    report: SymmetryReport
    output_reports: list[SymmetryReport]
    profiles: list[EntropyProfile | None]
    time_seconds: float
    version: str = __version__

    @classmethod
    def build(cls, spec: CircuitSpec, report: SymmetryReport) -> "ReportDocument":
        per_output = list(report.outputs) if report.outputs else [report]
        return cls(
            circuit=spec.name,
            inputs=list(spec.inputs),
            outputs=list(spec.outputs),
            report=report,
            output_reports=per_output,
            profiles=[r.profile for r in per_output],
            time_seconds=report.time_seconds,
        )

    @classmethod
    def empty(cls, circuit: str = "") -> "ReportDocument":
        from .symmetry import assemble_report
        return cls(circuit, [], [], assemble_report(0, []), [], [], 0.0)

    def name(self, i: int) -> str:
        return self.inputs[i - 1] if i <= len(self.inputs) else f"x{i}"


def _pair_label(doc: ReportDocument, p) -> str:
    # '*' marks a vacuous pair: the function ignores both variables
    return f"{p.kind.value}{{{doc.name(p.i)},{doc.name(p.j)}}}" + ("*" if p.vacuous else "")


def _group_label(doc: ReportDocument, g) -> str:
    names = ",".join(("~" if m.phase == "-" else "") + doc.name(m.var) for m in g.members)
    return f"{{{names}}} {g.kind}"


def _groups_json(doc, groups):
    return [
        {"members": [{"var": doc.name(m.var), "phase": m.phase} for m in g.members], "kind": g.kind}
        for g in groups
    ]


def _profile_json(prof):
    if prof is None:
        return None
    return {
        "entropy": prof.h,
        "count": prof.count,
        "vars": [
            {"var": r.var, "count0": r.count0, "count1": r.count1, "h0": r.h0, "h1": r.h1, "hcond": r.hcond}
            for r in prof.rows
        ],
    }


def document_to_dict(doc: ReportDocument) -> dict:
    outputs = []
    for name, rep, prof in zip(doc.outputs, doc.output_reports, doc.profiles):
        outputs.append({
            "name": name,
            "pairs": [
                {"i": p.i, "j": p.j, "kind": p.kind.value, "vacuous": p.vacuous}
                for p in rep.pairs if p.kind is not SymmetryKind.NONE
            ],
            "groups": _groups_json(doc, rep.groups),
            "profile": _profile_json(prof),
        })
    return {
        "version": doc.version,
        "circuit": doc.circuit,
        "outputs": outputs,
        "circuit_groups": _groups_json(doc, doc.report.groups),
        "summary": [{"size": s, "count": c} for s, c in doc.report.summary],
        "total_symmetry": doc.report.totally_symmetric.value,
        "time_seconds": doc.time_seconds,
    }


def _text(doc: ReportDocument, per_output: bool) -> str:
    out = []
    rep = doc.report
    out.append(f"circuit: {doc.circuit} ({len(doc.inputs)}/{len(doc.outputs)})")
    show_outputs = per_output or len(doc.outputs) == 1
    if show_outputs:
        for name, orep, prof in zip(doc.outputs, doc.output_reports, doc.profiles):
            out.append(f"output {name}:")
            if prof is not None:
                out.append(f"  H = {prof.h:.2f}")
                out.append("  var        H(f_x')  H(f_x)  H(f|x)")
                for r in prof.rows:
                    out.append(f"  {doc.name(r.var):<10} {r.h0:7.2f} {r.h1:7.2f} {r.hcond:7.2f}")
            pairs = " ".join(_pair_label(doc, p) for p in orep.symmetric_pairs()) or "none"
            out.append(f"  pairs: {pairs}")
            groups = "; ".join(_group_label(doc, g) for g in orep.groups) or "none"
            out.append(f"  groups: {groups}")
    if len(doc.outputs) != 1:
        pairs = " ".join(_pair_label(doc, p) for p in rep.symmetric_pairs()) or "none"
        out.append(f"circuit pairs: {pairs}")
        groups = "; ".join(_group_label(doc, g) for g in rep.groups) or "none"
        out.append(f"circuit groups: {groups}")
    out.append(f"summary: {format_summary(rep.summary) or 'none'}")
    out.append(f"total symmetry: {rep.totally_symmetric.value}")
    out.append(f"time: {doc.time_seconds:.1f} s")
    return "\n".join(out) + "\n"


CSV_HEADER = ["circuit", "inputs", "outputs", "summary", "total_symmetry", "time_seconds"]


def csv_row(doc: ReportDocument) -> list:
    return [doc.circuit, len(doc.inputs), len(doc.outputs), format_summary(doc.report.summary),
            doc.report.totally_symmetric.value, repr(doc.time_seconds)]


def write_csv(rows, header=CSV_HEADER) -> str:
    buf = _stdio.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def emit_report(doc: ReportDocument, fmt: str = "text", per_output: bool = False) -> bytes:
    if fmt == "json":
        return (json.dumps(document_to_dict(doc), sort_keys=True, indent=2) + "\n").encode()
    if fmt == "csv":
        return write_csv([csv_row(doc)]).encode()
    if fmt == "text":
        return _text(doc, per_output).encode()
    raise ValueError(f"unknown report format {fmt!r}")
