"""Command line entry point: ``tnw classify|explore|count|group``.

Exit codes: 0 success, 1 a property check failed (a ``≠`` cell or a
nontrivial relator), 2 usage or parse error, 3 budget truncation.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from .errors import TnwError
from .explorer import (TRUNCATED, Budget, enumerate_exchange, enumerate_mutation_class, export_graph,
                       face_count_tsv, face_counts)
from .families import (TnwSignature, affine_signature, build_dynkin, build_signature, build_special_framing,
                       classify, double_signature, dynkin_diagram, parse_signature)
from .framing import frame_principal
from .mcg import WordContext, is_trivial, parse_words
from .quiver import WeightedQuiver
from .tables import TABLES, build_table

__all__ = ["main", "resolve", "EXIT_OK", "EXIT_MISMATCH", "EXIT_USAGE", "EXIT_TRUNCATED"]

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_TRUNCATED = 0, 1, 2, 3

_DBL = re.compile(r"dbl:([A-Z]+)_(\d)(?:\((\d),(\d)\))?")
_APQ = re.compile(r"A_\{(\d+),(\d+)\}")
_AFF = re.compile(r"aff:([A-G])_(\d+)")
_BCAFF = re.compile(r"BCaff_(\d+)")
_FIN = re.compile(r"([A-G])_(\d+)")


def resolve(name: str) -> tuple[WeightedQuiver, TnwSignature | None, str | None]:
    """Quiver, signature (if any) and finite label (if any) for a catalog name."""
    name = name.strip()
    if name.startswith("T:") or name.startswith("TBC:"):
        sig = parse_signature(name)
        return build_signature(sig), sig, None
    if "^(" in name:
        sig = double_signature(name)
        return build_signature(sig), sig, None
    m = _DBL.fullmatch(name)
    if m:
        sig = double_signature(f"{m.group(1)}{m.group(2)}^({m.group(3) or 1},{m.group(4) or 1})")
        return build_signature(sig), sig, None
    m = _APQ.fullmatch(name)
    if m:
        p, q = int(m.group(1)), int(m.group(2))
        sig = affine_signature("A", (p, q)) if p > 1 or q > 1 else TnwSignature((), ())
        return build_dynkin(name), sig, None
    m = _AFF.fullmatch(name)
    if m:
        X, k = m.group(1), int(m.group(2))
        if X == "A":
            sig = affine_signature("A", (k, 1)) if k > 1 else TnwSignature((), ())
        elif X in "EFG":
            sig = affine_signature(f"{X}{k}")
        else:
            sig = affine_signature(X, k)
        return build_signature(sig), sig, None
    m = _BCAFF.fullmatch(name)
    if m:
        sig = affine_signature("BC", int(m.group(1)))
        return build_signature(sig), sig, None
    m = _FIN.fullmatch(name)
    if m:
        dynkin_diagram(name)
        return build_dynkin(name), None, name
    raise TnwError(f"unknown quiver name {name!r}")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def cmd_classify(args) -> int:
    _, sig, finite = resolve(args.name)
    if finite is not None:
        text = f"finite {finite}\n"
    else:
        lab = classify(sig)
        text = f"{lab.family} {lab.name}\n" if lab.name else f"{lab.family}\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_explore(args) -> int:
    q, sig, _ = resolve(args.seed)
    budget = Budget(args.budget_vertices, args.budget_depth)
    if args.framing == "none":
        g = enumerate_mutation_class(q, budget)
        summary = [f"status\t{g.status}", f"classes\t{len(g.classes)}",
                   f"edges\t{len(g.undirected_edges())}"]
        if g.status != TRUNCATED:
            summary.append(f"diameter\t{g.diameter()}")
        export, status = export_graph(g), g.status
    else:
        if args.framing == "special":
            if sig is None or sig.bc:
                raise TnwError("special framing needs a non-BC T signature")
            fq = build_special_framing(sig)
        else:
            fq = frame_principal(q)
        ec = enumerate_exchange(fq, budget, jobs=args.jobs)
        summary = [f"status\t{ec.status}", f"vertices\t{ec.vertex_count}", f"edges\t{len(ec.edges)}"]
        if ec.status != TRUNCATED:
            summary += [f"codim{k}\t{c}" for k, c in face_counts(ec).items()]
        export, status = export_graph(ec), ec.status
        if args.format == "tsv" and ec.status != TRUNCATED:
            summary = [face_count_tsv(ec).rstrip("\n")]
    if args.out:
        Path(args.out).write_text(export, encoding="utf-8", newline="\n")
    sys.stdout.write("\n".join(summary) + "\n")
    return EXIT_TRUNCATED if status == TRUNCATED else EXIT_OK


def cmd_count(args) -> int:
    kw = {}
    if args.max is not None:
        if args.table == "apq":
            kw["max_pq"] = args.max
        elif args.table == "dn":
            kw["max_n"] = args.max
        elif args.table == "series":
            kw["order"] = args.max
        else:
            raise TnwError(f"--max does not apply to {args.table}")
    t = build_table(args.table, **kw)
    _emit(t.tsv() if args.format == "tsv" else t.text(), args.out)
    return EXIT_MISMATCH if t.mismatches else EXIT_OK


def cmd_group(args) -> int:
    _, sig, _ = resolve(args.signature)
    if sig is None:
        raise TnwError("group words need a T signature")
    text = Path(args.words).read_text(encoding="utf-8")
    ctx = WordContext.for_signature(sig)
    lines, bad = [], 0
    for label, g in parse_words(text, ctx):
        ok = is_trivial(g)
        bad += not ok
        lines.append(f"{label}\t{'TRIVIAL' if ok else 'NONTRIVIAL'}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_MISMATCH if bad else EXIT_OK


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-vertices", type=int, default=1_000_000)
    common.add_argument("--budget-depth", type=int, default=10_000)
    common.add_argument("--format", choices=("text", "tsv"), default="text")
    common.add_argument("--out", default=None)
    common.add_argument("--jobs", type=int, default=1)

    p = argparse.ArgumentParser(prog="tnw", description="T_{n,w} quivers: mutation, groups and counts.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="family and catalog name")
    c.add_argument("name")
    c.set_defaults(func=cmd_classify)

    e = sub.add_parser("explore", parents=[common], help="mutation class or exchange graph")
    e.add_argument("seed")
    e.add_argument("--framing", choices=("none", "principal", "special"), default="none")
    e.set_defaults(func=cmd_explore)

    n = sub.add_parser("count", parents=[common], help="reference tables")
    n.add_argument("table", choices=sorted(TABLES))
    n.add_argument("--max", type=int, default=None)
    n.set_defaults(func=cmd_count)

    g = sub.add_parser("group", parents=[common], help="check relators on a signature")
    g.add_argument("signature")
    g.add_argument("words")
    g.set_defaults(func=cmd_group)
    return p


def main(argv: list[str] | None = None) -> int:
    p = _parser()
    try:
        args = p.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.budget_vertices < 1 or args.budget_depth < 0 or args.jobs < 1:
        sys.stderr.write("tnw: budgets and --jobs must be positive\n")
        return EXIT_USAGE
    try:
        return args.func(args)
    except (TnwError, OSError) as exc:
        sys.stderr.write(f"tnw: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
