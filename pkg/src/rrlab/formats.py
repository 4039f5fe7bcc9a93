"""Readers and writers for the on-disk formats.

Every writer is deterministic and every reader rejects malformed input with
a :class:`FormatError` naming where the problem is (a line number or a JSON
path).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .arrows import ArrowCertificate
from .colourings import Colouring
from .encoding import seq_name
from .gluing import Triple
from .sequences import Seq, SeqSet, seq_key
from .structures import Label, SimpleBinaryStructure, validate

__all__ = [
    "FormatError",
    "dumps_json",
    "structure_to_json",
    "structure_from_json",
    "read_structure",
    "write_structure",
    "parse_seq",
    "seqset_to_text",
    "seqset_from_text",
    "read_seqset",
    "colouring_to_json",
    "colouring_from_json",
    "read_colouring",
    "triple_to_json",
    "triple_from_json",
    "read_triple",
    "certificate_to_json",
    "certificate_from_json",
]


class FormatError(ValueError):
    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def dumps_json(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _load(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}:{exc.lineno}:{exc.colno}", exc.msg) from None


def _expect(cond: bool, where: str, message: str) -> None:
    if not cond:
        raise FormatError(where, message)


def _is_int(x: Any) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


# --- structures ---------------------------------------------------------------

def structure_to_json(s: SimpleBinaryStructure) -> dict:
    edges = []
    for u, v, lab in s.edges():
        label: dict[str, Any] = {"kind": lab.kind, "i": lab.i}
        if lab.kind == "dir":
            label["head"] = lab.head
        edges.append({"u": u, "v": v, "label": label})
    return {"n": s.n, "m": s.m, "vertices": list(s.vertices), "edges": edges}


def structure_from_json(obj: Any, source: str = "structure") -> SimpleBinaryStructure:
    _expect(isinstance(obj, dict), source, "expected a JSON object")
    for key in ("n", "m"):
        _expect(_is_int(obj.get(key)), f"{source}.{key}", "expected an integer")
    vertices = obj.get("vertices")
    _expect(isinstance(vertices, list), f"{source}.vertices", "expected a list")
    for a, v in enumerate(vertices):
        _expect(isinstance(v, str), f"{source}.vertices[{a}]", "vertex identifiers are strings")
    _expect(len(set(vertices)) == len(vertices), f"{source}.vertices", "duplicate vertex")
    edges = obj.get("edges", [])
    _expect(isinstance(edges, list), f"{source}.edges", "expected a list")
    labels: dict[tuple[str, str], Label] = {}
    known = set(vertices)
    for a, e in enumerate(edges):
        where = f"{source}.edges[{a}]"
        _expect(isinstance(e, dict), where, "expected an object")
        u, v, lab = e.get("u"), e.get("v"), e.get("label")
        for name, val in (("u", u), ("v", v)):
            _expect(isinstance(val, str), f"{where}.{name}", "expected a vertex identifier")
            _expect(val in known, f"{where}.{name}", f"unknown vertex {val!r}")
        _expect(u != v, where, "a vertex cannot be related to itself")
        _expect(isinstance(lab, dict), f"{where}.label", "expected an object")
        kind, i = lab.get("kind"), lab.get("i")
        _expect(kind in ("sym", "dir"), f"{where}.label.kind", "expected 'sym' or 'dir'")
        _expect(_is_int(i), f"{where}.label.i", "expected an integer")
        if kind == "dir":
            head = lab.get("head")
            _expect(head in (u, v), f"{where}.label.head", "head must be u or v")
            label = Label.dir(i, head)
        else:
            _expect("head" not in lab, f"{where}.label.head", "symmetric labels have no head")
            label = Label.sym(i)
        pair = (min(u, v), max(u, v))
        _expect(pair not in labels, where, f"pair {pair} labelled twice")
        labels[pair] = label
    s = SimpleBinaryStructure(obj["n"], obj["m"], tuple(sorted(vertices)), labels)
    report = validate(s)
    if not report:
        first = report.violations[0]
        where = f"{source}.edges" if first.pair is None else f"{source} pair {first.pair}"
        raise FormatError(where, f"{first.message} ({len(report.violations)} problem(s))")
    return s


def read_structure(path: str | Path) -> SimpleBinaryStructure:
    p = Path(path)
    return structure_from_json(_load(p.read_text(), str(p)), str(p))


def write_structure(s: SimpleBinaryStructure, path: str | Path) -> None:
    Path(path).write_text(dumps_json(structure_to_json(s)))


# --- sequence sets ------------------------------------------------------------

def parse_seq(text: str, d: int | None = None, where: str = "sequence") -> Seq:
    text = text.strip()
    if text == "()":
        return ()
    try:
        digits = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise FormatError(where, f"cannot read {text!r} as comma-separated digits") from None
    for c in digits:
        if c < 0 or (d is not None and c >= d):
            raise FormatError(where, f"digit {c} is outside [0, {d})")
    return digits


def seqset_to_text(S: SeqSet) -> str:
    return "".join([f"d={S.d}\n"] + [seq_name(s) + "\n" for s in S.sorted()])


def seqset_from_text(text: str, source: str = "sequences") -> SeqSet:
    lines = text.splitlines()
    _expect(bool(lines), f"{source}:1", "empty file; expected 'd=<int>'")
    head = lines[0].strip()
    _expect(head.startswith("d="), f"{source}:1", "first line must be 'd=<int>'")
    try:
        d = int(head[2:])
    except ValueError:
        raise FormatError(f"{source}:1", f"cannot read alphabet size from {head!r}") from None
    _expect(d >= 2, f"{source}:1", "alphabet size must be at least 2")
    seen: set[Seq] = set()
    for no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        s = parse_seq(line, d, f"{source}:{no}")
        _expect(s not in seen, f"{source}:{no}", f"duplicate sequence {line.strip()!r}")
        seen.add(s)
    return SeqSet(d, frozenset(seen))


def read_seqset(path: str | Path) -> SeqSet:
    p = Path(path)
    return seqset_from_text(p.read_text(), str(p))


# --- colourings ---------------------------------------------------------------

def colouring_to_json(c: Colouring) -> dict:
    return {"copies": [list(x) for x in c.copies], "colours": list(c.colours)}


def colouring_from_json(obj: Any, source: str = "colouring") -> Colouring:
    _expect(isinstance(obj, dict), source, "expected a JSON object")
    copies, colours = obj.get("copies"), obj.get("colours")
    _expect(isinstance(copies, list), f"{source}.copies", "expected a list")
    _expect(isinstance(colours, list), f"{source}.colours", "expected a list")
    _expect(len(copies) == len(colours), source, "copies and colours differ in length")
    out = []
    for a, c in enumerate(copies):
        where = f"{source}.copies[{a}]"
        _expect(isinstance(c, list) and all(isinstance(v, str) for v in c), where, "expected a list of vertices")
        _expect(c == sorted(c) and len(set(c)) == len(c), where, "vertices must be sorted and distinct")
        out.append(tuple(c))
    _expect(out == sorted(out), f"{source}.copies", "copies must be sorted canonically")
    _expect(len(set(out)) == len(out), f"{source}.copies", "duplicate copy")
    for a, col in enumerate(colours):
        _expect(_is_int(col) and col >= 0, f"{source}.colours[{a}]", "expected a nonnegative integer")
    return Colouring(tuple(out), tuple(colours))


def read_colouring(path: str | Path) -> Colouring:
    p = Path(path)
    return colouring_from_json(_load(p.read_text(), str(p)), str(p))


# --- triples ------------------------------------------------------------------

def triple_to_json(t: Triple) -> dict:
    return {part: [seq_name(s) for s in sorted(getattr(t, part), key=seq_key)] for part in ("B", "X", "Y")}


def triple_from_json(obj: Any, d: int | None = None, source: str = "triple") -> Triple:
    _expect(isinstance(obj, dict), source, "expected a JSON object")
    parts = {}
    for part in ("B", "X", "Y"):
        items = obj.get(part)
        _expect(isinstance(items, list), f"{source}.{part}", "expected a list of sequences")
        parts[part] = frozenset(
            parse_seq(item, d, f"{source}.{part}[{a}]") if isinstance(item, str)
            else _fail(f"{source}.{part}[{a}]", "expected a sequence string")
            for a, item in enumerate(items)
        )
    _expect(parts["B"] == parts["X"] | parts["Y"], f"{source}.B", "B must be the union of X and Y")
    return Triple(parts["B"], parts["X"], parts["Y"])


def _fail(where: str, message: str):
    raise FormatError(where, message)


def read_triple(path: str | Path, d: int | None = None) -> Triple:
    p = Path(path)
    return triple_from_json(_load(p.read_text(), str(p)), d, str(p))


# --- certificates -------------------------------------------------------------

def certificate_to_json(cert: ArrowCertificate, timing: bool = True) -> dict:
    out: dict[str, Any] = {
        "verdict": cert.verdict,
        "witnesses": [list(w) for w in cert.witnesses],
    }
    if cert.counterexample is not None:
        out["counterexample"] = colouring_to_json(cert.counterexample)
    stats: dict[str, int] = {"colourings": cert.colourings}
    if timing and cert.ms is not None:
        stats["ms"] = cert.ms
    out["stats"] = stats
    return out


def certificate_from_json(obj: Any, copies: tuple[tuple[str, ...], ...] = (), source: str = "certificate"
                          ) -> ArrowCertificate:
    _expect(isinstance(obj, dict), source, "expected a JSON object")
    verdict = obj.get("verdict")
    _expect(verdict in ("holds", "fails"), f"{source}.verdict", "expected 'holds' or 'fails'")
    witnesses = obj.get("witnesses", [])
    _expect(isinstance(witnesses, list), f"{source}.witnesses", "expected a list")
    counter = None
    if "counterexample" in obj:
        counter = colouring_from_json(obj["counterexample"], f"{source}.counterexample")
        copies = counter.copies
    _expect((verdict == "fails") == (counter is not None), source,
            "a counterexample is present exactly when the verdict is 'fails'")
    stats = obj.get("stats", {})
    _expect(isinstance(stats, dict) and _is_int(stats.get("colourings")), f"{source}.stats.colourings",
            "expected an integer")
    return ArrowCertificate(
        verdict == "holds",
        copies,
        [tuple(w) for w in witnesses],
        counter,
        stats["colourings"],
        stats.get("ms"),
    )
