"""Command-line front end.

Exit codes: 0 when every verdict passes, 1 when some check is falsified,
2 on any input error (unreadable file, malformed ring file, invalid tables, a
permutation that is not an automorphism).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import CATALOG, catalog_automorphisms, catalog_ring, get_entry, named_automorphism
from .errors import RingLinksError
from .harness import CHECKS, run_report
from .ideals import DEFAULT_MAX_IDEALS, enumerate_ideals, is_prime, is_semiprime
from .links import build_link_graph, graph_to_dict, graph_to_dot
from .ring import construct_ring
from .sigma import validate_automorphism

EXIT_OK, EXIT_FALSIFIED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read_json(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _load_rings(arg: str | None):
    """[(name, ring, builtin automorphism names or None)] for a --ring value."""
    if arg is None or arg == "builtin:all":
        return [(e.name, catalog_ring(e.name), e.automorphisms) for e in CATALOG]
    if arg.startswith("builtin:"):
        name = arg.split(":", 1)[1]
        entry = get_entry(name)
        return [(name, catalog_ring(name), entry.automorphisms)]
    try:
        ring = construct_ring(_read_json(arg))
    except RingLinksError as exc:
        raise InputError(f"{arg}: {exc}") from None
    return [(Path(arg).stem, ring, None)]


def _load_sigmas(name, ring, builtin, sigma_arg):
    if sigma_arg is None:
        if builtin is not None:
            return catalog_automorphisms(name)
        return [named_automorphism(ring, "identity")]
    if sigma_arg in ("identity", "swap"):
        return [named_automorphism(ring, sigma_arg)]
    data = _read_json(sigma_arg)
    if not isinstance(data, dict) or not isinstance(data.get("perm"), list):
        raise InputError(f'{sigma_arg}: expected an object {{"perm": [...]}}')
    return [validate_automorphism(ring, data["perm"], Path(sigma_arg).stem)]


def _emit(text: str, out_dir: str | None, filename: str) -> None:
    if out_dir is None:
        sys.stdout.write(text)
        return
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / filename).write_text(text, encoding="utf-8")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def cmd_catalog(args) -> int:
    rows = []
    for e in CATALOG:
        ring = catalog_ring(e.name)
        rows.append({"name": e.name, "ring": ring.label, "size": ring.size,
                     "spec": e.ring_spec.to_dict(), "automorphisms": list(e.automorphisms)})
    if args.format == "json":
        _emit(_dump(rows), args.out, "catalog.json")
    else:
        text = "".join(f"{r['name']:<12} {r['ring']:<22} N={r['size']:<4} "
                       f"sigma: {', '.join(r['automorphisms'])}\n" for r in rows)
        _emit(text, args.out, "catalog.txt")
    return EXIT_OK


def cmd_ideals(args) -> int:
    blocks, text = [], []
    for name, ring, _ in _load_rings(args.ring):
        rows = []
        for i, I in enumerate(enumerate_ideals(ring, args.max_ideals)):
            proper = I.is_proper
            rows.append({"id": f"I{i}", "size": len(I), "elements": list(I.elements),
                         "prime": proper and is_prime(ring, I),
                         "semiprime": proper and is_semiprime(ring, I)})
        blocks.append({"name": name, "ring": ring.label, "size": ring.size, "ideals": rows})
        text.append(f"{ring.label} ({len(rows)} ideals)\n")
        for row in rows:
            flags = " ".join(f for f in ("prime", "semiprime") if row[f])
            text.append(f"  {row['id']:<5} |I|={row['size']:<4} {flags:<16} {row['elements']}\n")
    if args.format == "json":
        _emit(_dump(blocks), args.out, "ideals.json")
    else:
        _emit("".join(text), args.out, "ideals.txt")
    return EXIT_OK


def cmd_links(args) -> int:
    for name, ring, _ in _load_rings(args.ring):
        graph = build_link_graph(ring, args.max_ideals)
        if args.format == "dot":
            _emit(graph_to_dot(graph), args.out, f"{name}.dot")
        elif args.format == "json":
            _emit(_dump(graph_to_dict(graph)), args.out, f"{name}.json")
        else:
            d = graph_to_dict(graph)
            lines = [f"{ring.label}: {len(d['nodes'])} primes, {len(d['edges'])} links\n"]
            lines += [f"  {e['source']} -> {e['target']}  |A|={e['bridge_size']} "
                      f"|Q∩P/A|={e['bimodule_size']}\n" for e in d["edges"]]
            _emit("".join(lines), args.out, f"{name}.txt")
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = CHECKS if args.check == "all" else (args.check,)
    runs = []
    for name, ring, builtin in _load_rings(args.ring):
        runs.append((name, ring, _load_sigmas(name, ring, builtin, args.sigma)))
    report = run_report(runs, checks, args.max_ideals, with_timing=args.timing)
    if args.format == "text":
        lines = []
        for rep in report["reports"]:
            inst = rep["instance"]
            lines.append(f"{rep['verdict'].upper():<8}{rep['theorem']:<7}{rep['entry']:<12}"
                         f"{inst['sigma'] or '-':<10}{json.dumps(inst['ideals'])}\n")
        s = report["summary"]
        lines.append(f"pass={s['pass']} fail={s['fail']} skipped={s['skipped']}\n")
        _emit("".join(lines), args.out, "report.txt")
    else:
        _emit(_dump(report), args.out, "report.json")
    return EXIT_FALSIFIED if report["summary"]["fail"] else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringlinks",
        description="Ideal lattices, prime links and automorphism checks for small finite rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats, default):
        p.add_argument("--out", help="write files into this directory instead of stdout")
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--max-ideals", type=int, default=DEFAULT_MAX_IDEALS)

    p = sub.add_parser("catalog", help="list the built-in rings")
    common(p, ("text", "json"), "text")
    p.set_defaults(func=cmd_catalog)

    ring_help = "ring-spec JSON file, builtin:NAME, or builtin:all (default)"
    p = sub.add_parser("ideals", help="list all ideals with prime/semiprime flags")
    p.add_argument("--ring", help=ring_help)
    common(p, ("text", "json"), "text")
    p.set_defaults(func=cmd_ideals)

    p = sub.add_parser("links", help="link graph of the prime ideals")
    p.add_argument("--ring", help=ring_help)
    common(p, ("dot", "json", "text"), "dot")
    p.set_defaults(func=cmd_links)

    p = sub.add_parser("verify", help="run the theorem checks")
    p.add_argument("--ring", help=ring_help)
    p.add_argument("--sigma", help="automorphism JSON file, identity or swap "
                                   "(default: the entry's built-ins, identity for files)")
    p.add_argument("--check", choices=CHECKS + ("all",), default="all")
    p.add_argument("--timing", action="store_true",
                   help="add per-phase wall-clock timings (makes output non-reproducible)")
    common(p, ("json", "text"), "json")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, RingLinksError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
