"""Command-line front end: ``rrlab <command> [flags]``.

Exit codes: 0 on success (or a holding arrow), 1 when an arrow fails or a
search finds nothing, 2 on usage, format or precondition errors.  The
primary result goes to standard output as JSON unless ``--out`` is given;
diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

from . import formats
from .arrows import BOUNDED, DELTA, ArrowQuery, BudgetExceeded, default_budget, min_host_search, verify_arrow
from .colourings import is_delta_system, rainbow_copy_search, reduce_colouring
from .encoding import EncodingParams, decode, seq_name
from .gluing import TripleError, stretch_sets, stretch_variants, triple_equiv
from .sequences import SeqSet, StrongDiagonalization, classify_set, full_tree, seq_key, strongly_similar_subsets
from .structures import Label, SimpleBinaryStructure, complete, enumerate_copies, generate_random

log = logging.getLogger("rrlab")

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args: argparse.Namespace, payload: Any) -> None:
    text = payload if isinstance(payload, str) else formats.dumps_json(payload)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _write_csv(path: str | None, header: list[str], rows: list[list[Any]]) -> None:
    if not path:
        return
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def _budget(args: argparse.Namespace) -> int:
    return args.budget if args.budget is not None else default_budget()


# --- commands -------------------------------------------------------------------

def cmd_gen(args: argparse.Namespace) -> int:
    if args.kind == "complete":
        s = complete(args.vertices, args.n, args.m)
    else:
        s = generate_random(args.n, args.m, args.vertices, args.seed)
    _emit(args, formats.structure_to_json(s))
    return OK


def cmd_decode(args: argparse.Namespace) -> int:
    S = formats.read_seqset(args.seqs)
    s = decode(S, EncodingParams(args.n, args.m), strict=args.strict_paper_formula)
    _emit(args, formats.structure_to_json(s))
    return OK


def _names(xs) -> list[str]:
    return [seq_name(x) for x in sorted(xs, key=seq_key)]


def cmd_classify(args: argparse.Namespace) -> int:
    S = formats.read_seqset(args.seqs)
    report = classify_set(S)
    payload = {"d": S.d, "closure": _names(report.closure), "levels": sorted(report.levels)}
    payload.update(report.flags())
    _emit(args, payload)
    return OK


def cmd_sims(args: argparse.Namespace) -> int:
    F = formats.read_seqset(args.pattern)
    if args.within:
        T = formats.read_seqset(args.within)
        if T.d != F.d:
            raise UsageError(f"alphabet sizes differ: pattern d={F.d}, within d={T.d}")
    elif args.depth is not None:
        T = full_tree(F.d, args.depth)
    else:
        raise UsageError("sims needs --within or --depth")
    found = strongly_similar_subsets(F, T)
    _emit(args, {"d": F.d, "count": len(found), "subsets": [_names(s) for s in found]})
    return OK if found else FAILED


def cmd_stretch(args: argparse.Namespace) -> int:
    t = formats.read_triple(args.triple, args.d)
    stretched = stretch_sets(t)
    deepest = max(len(s) for v in stretched for s in v.B)
    diag = StrongDiagonalization(args.d, max(deepest, args.depth or 0))
    variants = stretch_variants(t, diag)
    checks = {
        "equivalent": all(triple_equiv(t, v) for v in variants),
        "delta_system": is_delta_system(v.X for v in variants),
        "same_Y": len({v.Y for v in variants}) == 1,
    }
    _emit(args, {
        "stretched": [formats.triple_to_json(v) for v in stretched],
        "variants": [formats.triple_to_json(v) for v in variants],
        "checks": checks,
    })
    return OK if all(checks.values()) else FAILED


def cmd_reduce(args: argparse.Namespace) -> int:
    c = formats.read_colouring(args.colouring)
    _emit(args, formats.colouring_to_json(reduce_colouring(c, args.k)))
    return OK


def cmd_rainbow(args: argparse.Namespace) -> int:
    host = formats.read_structure(args.host)
    B, C = formats.read_structure(args.B), formats.read_structure(args.C)
    c = formats.read_colouring(args.colouring)
    expected = enumerate_copies(host, C).copies
    if c.copies != expected:
        raise UsageError("colouring copies do not match the copies of C in the host")
    found = rainbow_copy_search(host, B, C, c)
    _emit(args, {"copy": list(found) if found is not None else None})
    return OK if found is not None else FAILED


def cmd_arrow(args: argparse.Namespace) -> int:
    A, B, C = (formats.read_structure(p) for p in (args.A, args.B, args.C))
    cert = verify_arrow(ArrowQuery(A, B, C, args.k, args.mode), budget=_budget(args), workers=args.workers)
    log.info("arrow %s after %d colourings in %d ms", cert.verdict, cert.colourings, cert.ms)
    _emit(args, formats.certificate_to_json(cert, timing=args.timing))
    _write_csv(args.csv, ["vertices", "copies", "colourings", "verdict", "ms"],
               [[len(A), len(cert.copies), cert.colourings, cert.verdict, cert.ms]])
    return OK if cert.holds else FAILED


def _uniform_label(s: SimpleBinaryStructure) -> Label | None:
    labels = set(s.labels.values())
    if len(labels) == 1:
        (lab,) = labels
        return lab if lab.kind == "sym" else None
    return None


def cmd_min_host(args: argparse.Namespace) -> int:
    B, C = formats.read_structure(args.B), formats.read_structure(args.C)
    if args.family == "complete":
        label = _uniform_label(B) or _uniform_label(C)
        if label is None:
            if B.m < 1:
                raise UsageError("the complete family needs a symmetric relation")
            label = Label.sym(B.m - 1)

        def family(N: int) -> SimpleBinaryStructure:
            return complete(N, B.n, B.m, label)
    else:
        def family(N: int) -> SimpleBinaryStructure:
            return generate_random(B.n, B.m, N, args.seed)

    rows: list[list[Any]] = []

    def record(index: int, A: SimpleBinaryStructure, cert) -> None:
        log.info("host %d: %s (%d colourings, %d ms)", index, cert.verdict, cert.colourings, cert.ms)
        rows.append([index, len(A), len(cert.copies), cert.colourings, cert.verdict, cert.ms])

    result = min_host_search(B, C, args.k, args.mode, family, args.limit, start=args.start,
                             budget=_budget(args), workers=args.workers, on_result=record)
    _write_csv(args.csv, ["index", "vertices", "copies", "colourings", "verdict", "ms"], rows)
    if result is None:
        _emit(args, {"family": args.family, "index": None})
        return FAILED
    index, cert = result
    _emit(args, {"family": args.family, "index": index,
                 "certificate": formats.certificate_to_json(cert, timing=args.timing)})
    return OK


# --- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rrlab", description="Rainbow Ramsey experiments on simple binary structures.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to standard error")
    sub = p.add_subparsers(dest="command", required=True)

    def out(sp):
        sp.add_argument("--out", help="write the primary result here instead of standard output")

    g = sub.add_parser("gen", help="generate a structure")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--vertices", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--kind", choices=("random", "complete"), default="random")
    out(g)
    g.set_defaults(func=cmd_gen)

    d = sub.add_parser("decode", help="decode a sequence set into a structure")
    d.add_argument("--seqs", required=True)
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--m", type=int, required=True)
    d.add_argument("--strict-paper-formula", action="store_true",
                   help="use the literal oriented index m + q/2, failing where it is not defined")
    out(d)
    d.set_defaults(func=cmd_decode)

    c = sub.add_parser("classify", help="report the set predicates of a sequence set")
    c.add_argument("--seqs", required=True)
    out(c)
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("sims", help="list subsets strongly similar to a pattern")
    s.add_argument("--pattern", required=True)
    s.add_argument("--within", help="sequence-set file to search")
    s.add_argument("--depth", type=int, help="search every sequence up to this length instead")
    out(s)
    s.set_defaults(func=cmd_sims)

    st = sub.add_parser("stretch", help="build the three stretched variants of a triple")
    st.add_argument("--triple", required=True)
    st.add_argument("--d", type=int, required=True, help="alphabet size")
    st.add_argument("--depth", type=int, help="domain depth of the diagonalization (default: just enough)")
    out(st)
    st.set_defaults(func=cmd_stretch)

    r = sub.add_parser("reduce", help="recolour a (k+1)-delta colouring into a k-delta one")
    r.add_argument("--colouring", required=True)
    r.add_argument("--k", type=int, required=True)
    out(r)
    r.set_defaults(func=cmd_reduce)

    rb = sub.add_parser("rainbow", help="find a copy of B whose C-copies all have distinct colours")
    rb.add_argument("--host", required=True)
    rb.add_argument("--B", required=True)
    rb.add_argument("--C", required=True)
    rb.add_argument("--colouring", required=True)
    out(rb)
    rb.set_defaults(func=cmd_rainbow)

    def search_flags(sp):
        sp.add_argument("--B", required=True)
        sp.add_argument("--C", required=True)
        sp.add_argument("--k", type=int, required=True)
        sp.add_argument("--mode", choices=(BOUNDED, DELTA), default=BOUNDED)
        sp.add_argument("--budget", type=int, help="maximum colourings examined (env RRLAB_BUDGET)")
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--csv", help="write a stats table here")
        sp.add_argument("--timing", action="store_true", help="include elapsed milliseconds in the JSON")
        out(sp)

    a = sub.add_parser("arrow", help="certify A -> (B)^C for k-bounded or k-delta colourings")
    a.add_argument("--A", required=True)
    search_flags(a)
    a.set_defaults(func=cmd_arrow)

    mh = sub.add_parser("min-host", help="least host in a family for which the arrow holds")
    mh.add_argument("--family", choices=("complete", "random"), default="complete")
    mh.add_argument("--limit", type=int, required=True)
    mh.add_argument("--start", type=int, default=0)
    mh.add_argument("--seed", type=int, default=0)
    search_flags(mh)
    mh.set_defaults(func=cmd_min_host)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (formats.FormatError, UsageError, BudgetExceeded, TripleError, ValueError, KeyError, OSError) as exc:
        print(f"rrlab {args.command}: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
