"""Command-line front door.

Exit codes: 0 on success, 1 when a verification fails, 2 on input errors.
Quiver arguments accept a JSON file path or a bundled catalog name
(``x7``, ``catalog/x7.json`` and ``x7.json`` all resolve to the bundled
entry when no such file exists).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import catalog as cat
from .abelian import abelianize, abelianize_matrix
from .analysis import find_dehn_twist_candidates, verify_relation
from .brown import assemble_presentation
from .errors import QuiverError
from .matrix import ExchangeMatrix
from .mutclass import enumerate_class
from .relcatalog import load_catalog
from .seed import Seed
from .words import MutationWord

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2


def resolve_quiver(arg) -> ExchangeMatrix:
    if os.path.exists(arg):
        with open(arg) as fh:
            return ExchangeMatrix.from_json(fh.read())
    name = os.path.basename(arg)
    if name.endswith(".json"):
        name = name[:-5]
    return cat.load_quiver(name)


def quiver_word_base(arg):
    name = os.path.basename(arg)
    if name.endswith(".json"):
        name = name[:-5]
    return cat.WORD_BASE.get(name, 0)


def cmd_mutate(args):
    matrix = resolve_quiver(args.quiver)
    base = args.base if args.base is not None else quiver_word_base(args.quiver)
    word = MutationWord.parse(args.word, matrix.n, base=base)
    seed = Seed.initial(matrix).apply_word(word)
    print(seed.matrix.to_json(indent=2))
    if args.variables:
        for i, a in enumerate(seed.a_vars):
            print(f"A{i} = {a.to_string([f'a{j}' for j in range(matrix.n)])}")
        for i, x in enumerate(seed.x_vars):
            print(f"X{i} = {x.to_string([f'x{j}' for j in range(matrix.n)])}")
    return EXIT_OK


def cmd_enumerate(args):
    matrix = resolve_quiver(args.quiver)
    mclass = enumerate_class(matrix, cap=args.cap)
    print(f"class size: {len(mclass)}")
    edges = mclass.edge_orbits()
    faces = mclass.face_counts()
    print(f"edge orbits: {len(edges)}")
    if faces:
        print("face orbits: "
              + ", ".join(f"{v} {k}(s)" for k, v in sorted(faces.items())))
    else:
        print("face orbits: none")
    if args.json:
        print(json.dumps(mclass.to_document(), indent=2))
    if args.dot:
        print(mclass.to_dot())
    if args.report:
        from .report import enumerate_report
        enumerate_report(mclass, args.report)
        print(f"report written to {args.report}")
    return EXIT_OK


def cmd_present(args):
    matrix = resolve_quiver(args.quiver)
    mclass = enumerate_class(matrix, cap=args.cap)
    pres = assemble_presentation(mclass, certify=True, full_check=args.full_check,
                                 simplify=not args.raw)
    inv = abelianize(pres)
    from .report import presentation_text

    print(presentation_text(pres, inv), end="")
    if args.report:
        from .report import present_report
        present_report(mclass, pres, inv, args.report)
        print(f"report written to {args.report}")
    return EXIT_OK


def cmd_abelianize(args):
    try:
        with open(args.target) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError):
        data = None
    if data is not None and "relators" in data and "generators" in data:
        rows = []
        gens = data["generators"]
        pos = {g: i for i, g in enumerate(gens)}
        for rel in data["relators"]:
            row = [0] * len(gens)
            for sym, exp in rel:
                row[pos[sym]] += exp
            rows.append(row)
        inv = abelianize_matrix(rows, len(gens))
    else:
        matrix = resolve_quiver(args.target)
        mclass = enumerate_class(matrix, cap=args.cap)
        pres = assemble_presentation(mclass, certify=True)
        inv = abelianize(pres)
    print(f"free rank: {inv.free_rank}")
    print(f"torsion {list(inv.torsion)}")
    print(f"group: {inv.describe()}")
    if args.report:
        from .report import abelianize_report
        abelianize_report(inv, args.report)
        print(f"report written to {args.report}")
    return EXIT_OK


def cmd_verify(args):
    if os.path.exists(args.relations):
        # treat as a relation file path next to an explicit quiver
        import json as _json
        with open(args.relations) as fh:
            data = _json.load(fh)
        from .relcatalog import CatalogRelation, parse_expression

        matrix = resolve_quiver(data["quiver"]) if args.quiver is None \
            else resolve_quiver(args.quiver)
        base = data.get("base", 0)
        words = {name: MutationWord.parse(text, matrix.n, base=base)
                 for name, text in data.get("words", {}).items()}
        for gname, expr in data.get("defs", []):
            words[gname] = parse_expression(expr, words, matrix.n)
        relations = [CatalogRelation(r["name"],
                                     parse_expression(r["lhs"], words, matrix.n),
                                     parse_expression(r.get("rhs", "1"), words, matrix.n))
                     for r in data["relations"]]
    else:
        catalog = load_catalog(args.relations)
        matrix = catalog.matrix
        relations = catalog.relations
    results = []
    all_ok = True
    for rel in relations:
        trivial, report = verify_relation(matrix, rel.lhs, rel.rhs, mode=args.mode)
        report["name"] = rel.name
        report["trivial"] = trivial
        results.append(report)
        all_ok = all_ok and trivial
        print(f"{'PASS' if trivial else 'FAIL'}  {rel.name}  "
              f"(mode={args.mode}, {report['word_length']} tokens, "
              f"{report['elapsed']:.3f}s)")
    if args.report:
        from .report import verify_report
        verify_report(results, args.report)
        print(f"report written to {args.report}")
    return EXIT_OK if all_ok else EXIT_VERIFICATION


def cmd_dehn(args):
    matrix = resolve_quiver(args.quiver)
    mclass = enumerate_class(matrix, cap=args.cap)
    hits = find_dehn_twist_candidates(mclass)
    for hit in hits:
        extra = ""
        if "input_pair" in hit:
            extra = f"  input pair {hit['input_pair']}"
        print(f"class {hit['class']}  pair {hit['pair']}{extra}")
        print(f"  word: {hit['word'].format()}")
    if not hits:
        print("no double-arrow pairs in this class")
    return EXIT_OK


def cmd_serve(args):
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def cmd_catalog(args):
    for name in cat.catalog_names():
        matrix = cat.load_quiver(name)
        print(f"{name}\tn={matrix.n}\tweights={list(matrix.weights)}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quivermod",
        description="Exact quiver mutation and saturated cluster modular groups")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mutate", help="apply a mutation word to a quiver")
    p.add_argument("quiver")
    p.add_argument("word", help="word text, read right to left; may be empty")
    p.add_argument("--base", type=int, default=None,
                   help="label base of the word (defaults to the catalog convention)")
    p.add_argument("--variables", action="store_true",
                   help="also print the cluster variables")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("enumerate", help="enumerate the mutation class")
    p.add_argument("quiver")
    p.add_argument("--cap", type=int, default=50000)
    p.add_argument("--json", action="store_true")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--report")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("present", help="derive a finite presentation")
    p.add_argument("quiver")
    p.add_argument("--cap", type=int, default=50000)
    p.add_argument("--full-check", action="store_true",
                   help="cross-check every relator with the full variable oracle")
    p.add_argument("--raw", action="store_true",
                   help="skip the Tietze cleanup pass")
    p.add_argument("--report")
    p.set_defaults(func=cmd_present)

    p = sub.add_parser("abelianize", help="abelianization invariants")
    p.add_argument("target", help="quiver (file or catalog) or presentation JSON")
    p.add_argument("--cap", type=int, default=50000)
    p.add_argument("--report")
    p.set_defaults(func=cmd_abelianize)

    p = sub.add_parser("verify", help="verify a relation catalog")
    p.add_argument("relations", help="bundled catalog name or relation file path")
    p.add_argument("--quiver", default=None,
                   help="override the quiver for a relation file path")
    p.add_argument("--mode", choices=["cmatrix", "full"], default="cmatrix")
    p.add_argument("--report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dehn", help="list cluster Dehn twist candidates")
    p.add_argument("quiver")
    p.add_argument("--cap", type=int, default=50000)
    p.set_defaults(func=cmd_dehn)

    p = sub.add_parser("serve", help="run the local HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8640)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("catalog", help="list bundled quivers")
    p.set_defaults(func=cmd_catalog)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except QuiverError as exc:
        pos = getattr(exc, "position", None)
        where = f" (at position {pos})" if pos is not None else ""
        print(f"error: {exc}{where}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
