"""Command line driver: ``latql build | query | export``.

Exit codes: 0 success, 1 usage or query syntax, 2 data integrity,
3 internal invariant violation (including an ``--oracle`` mismatch).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import oracle
from .approximation import ApproxResult
from .context import Relation
from .errors import InvariantError, LatqlError
from .io import approx_record, load_context, write_csv_relation, write_lattice
from .lattice import build_lattice
from .query import Catalog, execute, parse_query, result_lattice


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="latql", description="Query formal contexts and concept lattices.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", choices=("text", "json", "dot"), default="text")
        sp.add_argument("--oracle", action="store_true",
                        help="re-enumerate concepts by brute force and compare")
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")

    b = sub.add_parser("build", help="build and print the lattice of a context file")
    b.add_argument("context", help="Burmeister .cxt or CSV table")
    common(b)

    q = sub.add_parser("query", help="evaluate a query against a session config")
    q.add_argument("-f", "--config", required=True, help="session config (TOML)")
    q.add_argument("expr", help="query expression")
    common(q)

    e = sub.add_parser("export", help="render a lattice as a diagram or listing")
    e.add_argument("context", nargs="?", help="context file")
    e.add_argument("-f", "--config", help="session config (TOML)")
    e.add_argument("-q", "--query", help="query whose result is exported")
    common(e)
    return p


def _check_oracle(lat):
    missing, extra = oracle.lattice_diff(lat)
    if missing or extra:
        raise InvariantError(f"oracle mismatch: {len(missing)} missing, "
                             f"{len(extra)} unexpected concepts")
    print(f"oracle: {len(lat)} concepts agree", file=sys.stderr)


def _render(value, fmt: str, use_oracle: bool) -> bytes:
    if isinstance(value, Relation):
        return write_csv_relation(value).encode()
    shown = result_lattice(value)
    if shown is None:
        raise InvariantError(f"cannot render a {type(value).__name__}")
    lat, region = shown
    if use_oracle:
        _check_oracle(lat)
    if isinstance(value, ApproxResult):
        if fmt == "json":
            record = approx_record(value)
            return (json.dumps(record, indent=2, ensure_ascii=False) + "\n").encode()
        if fmt == "text":
            head = (f"{value.kind}: L = c{value.lower.index}, H = c{value.upper.index}, "
                    f"interval = {list(value.interval.ids)}\n")
            return head.encode() + write_lattice(lat, fmt, region)
    return write_lattice(lat, fmt, region)


def run(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "build":
            value = build_lattice(load_context(args.context))
        elif args.command == "query":
            value = execute(parse_query(args.expr), Catalog.from_config(args.config))
        elif args.query is not None:
            if args.config is None:
                print("latql export: --query needs --config", file=sys.stderr)
                return 1
            value = execute(parse_query(args.query), Catalog.from_config(args.config))
        elif args.context is not None:
            value = build_lattice(load_context(args.context))
        else:
            print("latql export: give a context file or --config with --query",
                  file=sys.stderr)
            return 1
        out = _render(value, args.format, args.oracle)
    except LatqlError as exc:
        print(f"latql: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"latql: {exc}", file=sys.stderr)
        return 2
    if args.output:
        Path(args.output).write_bytes(out)
    else:
        sys.stdout.buffer.write(out)
        sys.stdout.flush()
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
