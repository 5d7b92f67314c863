"""
Command-line front end: batch reports over the exact tables.

Every subcommand computes from scratch (or from an on-disk cache, see
``--cache-dir`` / the CELLKIT_CACHE variable) and writes one report to
stdout in the requested format.  Exit codes: 0 success, 1 a verification
failure (the report carries a witness), 2 usage error, 3 unrecoverable
cache I/O.  Commands that build rank-wide tables refuse n >= 7 unless
``--force`` is given; the desk scale this tool is built for is n <= 5.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import sys
import time
from typing import Optional

from .cache import load_or_build_kl
from .cells import cell_partition
from .coxeter import Partition, Perm, all_partitions, rsk, std_tableaux
from .errors import VerificationError
from .hecke import HeckeElt, convert_basis
from .lusztig import (
    PROPERTY_NAMES,
    SamplingBudget,
    build_adata,
    j_ring,
    verify_properties,
)
from .murphy import TableauPair, base_change, index_map, murphy_element, z_element, shape_of

__all__ = ["main", "dispatch"]

REPORT_SCHEMA = "cellkit-report/1"
_SIDES = {"left": "L", "right": "R", "two": "LR"}


class UsageError(Exception):
    """Bad arguments detected after argparse (malformed perms, shapes, ...)."""


def _parse_perm(text: str, n: Optional[int] = None) -> Perm:
    """A permutation from one-line form "[2,1,3]" or word form "s1 s2" / "e"."""
    try:
        w = Perm.parse(text, n)
    except (ValueError, KeyError, IndexError) as exc:
        raise UsageError(f"bad permutation {text.strip()!r}: {exc}")
    if n is not None and len(w.images) != n:
        raise UsageError(f"{text.strip()!r} does not live in rank {n}")
    return w


def _parse_pair(text: str, n: int) -> tuple[Perm, Perm]:
    if "],[" in text:
        left, right = text.split("],[", 1)
        return _parse_perm(left + "]", n), _parse_perm("[" + right, n)
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError("--pair wants Y,W (two words or two one-line forms)")
    return _parse_perm(parts[0], n), _parse_perm(parts[1], n)


def _parse_partition(text: str, n: int) -> Partition:
    try:
        lam = Partition.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc))
    if sum(lam.parts) != n:
        raise UsageError(f"shape {lam.render()} is not a partition of {n}")
    return lam


def _require_desk_scale(args) -> None:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    if args.n >= 7 and not args.force:
        raise UsageError(
            f"n = {args.n} builds rank-wide tables far beyond desk scale; "
            "pass --force to proceed anyway"
        )


def _laurent_json(p) -> list[list]:
    return [[e, str(c)] for e, c in sorted(p.terms.items())]


def _element_rows(h: HeckeElt) -> list[tuple[str, str]]:
    return [(w.word_str(), a.render()) for w, a in h.sorted_terms()]


# -- subcommand handlers --------------------------------------------------------
# Each returns (results payload for JSON, text lines, (csv header, csv rows)).


def _cmd_kl(args, table):
    if args.pair:
        y, w = _parse_pair(args.pair, args.n)
        p = table.p(y, w)
        payload = {
            "pairs": [
                {"y": y.word_str(), "w": w.word_str(), "p": _laurent_json(p)}
            ]
        }
        lines = [f"p[{y.word_str()} ; {w.word_str()}] = {p.render()}"]
        rows = [(y.word_str(), w.word_str(), p.render())]
    else:
        payload = {"pairs": []}
        lines = []
        rows = []
        for y, w, p in table.items():
            payload["pairs"].append(
                {"y": y.word_str(), "w": w.word_str(), "p": _laurent_json(p)}
            )
            lines.append(f"p[{y.word_str()} ; {w.word_str()}] = {p.render()}")
            rows.append((y.word_str(), w.word_str(), p.render()))
    return payload, lines, (("y", "w", "p"), rows)


def _cmd_cells(args, table):
    part = cell_partition(args.n, _SIDES[args.side], table)
    payload = {"side": args.side, "cells": []}
    lines = [f"{len(part.cells)} {args.side} cells for n = {args.n}"]
    rows = []
    for i in range(len(part.cells)):
        members = part.sorted_members(i)
        shape = shape_of(members[0]).render()
        names = [w.word_str() for w in members]
        payload["cells"].append({"id": i, "shape": shape, "members": names})
        lines.append(f"  cell {i} (shape {shape}): " + ", ".join(names))
        rows.extend((str(i), shape, name) for name in names)
    return payload, lines, (("cell", "shape", "member"), rows)


def _cmd_murphy(args, table):
    lam = _parse_partition(args.lam, args.n)
    tabs = std_tableaux(lam)
    payload = {"shape": lam.render(), "elements": []}
    lines = []
    rows = []
    for s, t in itertools.product(tabs, repeat=2):
        pair = TableauPair(lam, s, t)
        ds, dt = pair.words()
        label = f"y[{ds} | {dt}]"
        elt = murphy_element(pair, "y_st", table)
        if args.to_c:
            base_change(pair, table)  # validates the triangular shape
            elt = convert_basis(elt, "C", table)
        payload["elements"].append(
            {
                "s": ds,
                "t": dt,
                "basis": elt.basis,
                "terms": [
                    {"w": name, "coeff": coeff}
                    for name, coeff in _element_rows(elt)
                ],
            }
        )
        lines.append(f"{label} = {elt.render()}")
        rows.extend((ds, dt, w, c) for w, c in _element_rows(elt))
    return payload, lines, (("s", "t", "term", "coeff"), rows)


def _cmd_zelem(args, table):
    w = _parse_perm(args.w, args.n)
    imap = index_map(shape_of(w), table=table)
    z = z_element(w, imap, table)
    payload = {
        "w": w.word_str(),
        "shape": shape_of(w).render(),
        "basis": z.basis,
        "terms": [{"w": name, "coeff": c} for name, c in _element_rows(z)],
    }
    lines = [f"Z[{w.word_str()}] = {z.render()}"]
    return payload, lines, (("term", "coeff"), _element_rows(z))


def _cmd_afn(args, table):
    adata = build_adata(args.n, table)
    payload = {"elements": []}
    lines = []
    rows = []
    order = sorted(adata.a, key=lambda w: (w.length, w.images))
    for w in order:
        name = w.word_str()
        shape = adata.shape[w].render()
        a, d, c = adata.a[w], adata.delta[w], adata.leading[w]
        payload["elements"].append(
            {"w": name, "shape": shape, "a": a, "delta": d, "leading": c}
        )
        lines.append(f"a[{name}] = {a}   delta = {d}   shape = {shape}")
        rows.append((name, shape, str(a), str(d), str(c)))
    return payload, lines, (("w", "shape", "a", "delta", "leading"), rows)


def _cmd_verify(args, table):
    budget = SamplingBudget(p15_samples=args.sample, seed=args.seed)
    which = None
    if args.props:
        which = [p.strip().upper() for p in args.props.split(",") if p.strip()]
        bad = [p for p in which if p not in PROPERTY_NAMES]
        if bad:
            raise UsageError(f"unknown properties: {', '.join(bad)}")
    report = verify_properties(args.n, which=which, budget=budget, table=table)
    reproduce = (
        f"cellkit verify --n {args.n}"
        + (f" --props {args.props}" if args.props else "")
        + f" --sample {args.sample} --seed {args.seed}"
        + (f" --cache-dir {args.cache_dir}" if args.cache_dir else "")
    )
    payload = report.to_json()
    payload["reproduce"] = reproduce
    lines = [report.render()]
    rows = []
    for name in PROPERTY_NAMES:
        check = report.checks.get(name)
        if check is None:
            continue
        witness = " ".join(check.counterexample or ())
        rows.append((name, check.status, check.scope, witness))
    if not report.passed:
        lines.append(f"reproduce: {reproduce}")
    return payload, lines, (("property", "status", "scope", "witness"), rows)


def _cmd_jring(args, table):
    adata = build_adata(args.n, table)
    samples = 20000 if args.n >= 5 else None
    j_ring(args.n, adata=adata, table=table, assoc_samples=samples)
    blocks = []
    total = 0
    for lam in all_partitions(args.n):
        dim = index_map(lam, table=table).dim
        blocks.append({"shape": lam.render(), "degree": dim})
        total += dim * dim
    payload = {"blocks": blocks, "total_rank": total, "verified": True}
    lines = [f"ring J for n = {args.n}: direct sum of integer matrix rings"]
    lines += [
        f"  shape {b['shape']}: degree {b['degree']} block" for b in blocks
    ]
    lines.append(f"total rank {total}")
    rows = [(b["shape"], str(b["degree"])) for b in blocks]
    return payload, lines, (("shape", "degree"), rows)


def _cmd_rsk(args, _table):
    w = _parse_perm(args.perm)
    res = rsk(w)
    payload = {
        "perm": w.one_line_str(),
        "shape": res.shape.render(),
        "p": [list(row) for row in res.p.rows],
        "q": [list(row) for row in res.q.rows],
    }
    lines = [f"shape: {res.shape.render()}"]
    lines.append("P: " + " / ".join(",".join(map(str, r)) for r in res.p.rows))
    lines.append("Q: " + " / ".join(",".join(map(str, r)) for r in res.q.rows))
    rows = [
        ("shape", res.shape.render()),
        ("P", " / ".join(",".join(map(str, r)) for r in res.p.rows)),
        ("Q", " / ".join(",".join(map(str, r)) for r in res.q.rows)),
    ]
    return payload, lines, (("field", "value"), rows)


_HANDLERS = {
    "kl": _cmd_kl,
    "cells": _cmd_cells,
    "murphy": _cmd_murphy,
    "zelem": _cmd_zelem,
    "afn": _cmd_afn,
    "verify": _cmd_verify,
    "jring": _cmd_jring,
    "rsk": _cmd_rsk,
}
_NEEDS_TABLE = {"kl", "cells", "murphy", "zelem", "afn", "verify", "jring"}


def _build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subcommand's unset globals from clobbering values
    # parsed before the subcommand name; dispatch applies the defaults.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--cache-dir",
        default=argparse.SUPPRESS,
        help="directory for binary table caches (falls back to $CELLKIT_CACHE)",
    )
    common.add_argument(
        "--format",
        choices=("text", "json", "csv"),
        default=argparse.SUPPRESS,
        help="output format (default text)",
    )
    common.add_argument(
        "--force",
        action="store_true",
        default=argparse.SUPPRESS,
        help="allow n >= 7 despite the desk-scale guardrail",
    )
    parser = argparse.ArgumentParser(
        prog="cellkit",
        parents=[common],
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name != "rsk":
            p.add_argument("--n", type=int, required=True, help="symmetric group rank")
        return p

    p = add("kl", "base-change polynomials of one rank")
    p.add_argument("--pair", help="one pair Y,W (words or one-line forms)")
    p = add("cells", "the cell partition of one rank")
    p.add_argument("--side", choices=tuple(_SIDES), required=True)
    p = add("murphy", "pair-basis elements of one shape")
    p.add_argument("--lambda", dest="lam", required=True, help='shape, e.g. "3,1"')
    p.add_argument(
        "--to-c",
        action="store_true",
        dest="to_c",
        help="expand in the canonical basis instead of the T basis",
    )
    p = add("zelem", "product-form canonical element for one group element")
    p.add_argument("--w", required=True, help="the element (word or one-line form)")
    add("afn", "degree-bound function table")
    p = add("verify", "run the structural property checks P1..P15")
    p.add_argument("--props", help='comma list, e.g. "P1,P7,P15" (default all)')
    p.add_argument(
        "--sample",
        type=int,
        default=SamplingBudget().p15_samples,
        help="sampled quadruples for P15 at n = 5 (default 1000000)",
    )
    p.add_argument(
        "--seed", type=int, default=SamplingBudget().seed, help="sampling seed"
    )
    add("jring", "build and verify the based ring of one rank")
    p = add("rsk", "insertion tableaux of one permutation")
    p.add_argument("--perm", required=True, help='one-line form, e.g. "[4,3,2,1]"')
    return parser


def _emit(args, argv, payload, lines, csv_spec, ok, elapsed) -> None:
    if args.format == "json":
        doc = {
            "schema": REPORT_SCHEMA,
            "command": " ".join(argv),
            "rank": getattr(args, "n", None),
            "elapsed_s": round(elapsed, 3),
            "ok": ok,
            "results": payload,
        }
        print(json.dumps(doc, sort_keys=True, indent=2))
    elif args.format == "csv":
        header, rows = csv_spec
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        print(out.getvalue(), end="")
    else:
        for line in lines:
            print(line)


def dispatch(argv: list[str]) -> int:
    """Run one command line; print the report; return the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    args.cache_dir = getattr(args, "cache_dir", None)
    args.format = getattr(args, "format", "text")
    args.force = getattr(args, "force", False)
    cache_dir = args.cache_dir or os.environ.get("CELLKIT_CACHE") or None
    start = time.perf_counter()
    try:
        if args.command in _NEEDS_TABLE:
            _require_desk_scale(args)
            table, _ = load_or_build_kl(
                args.n, cache_dir, warn=lambda m: print(m, file=sys.stderr)
            )
        else:
            table = None
        payload, lines, csv_spec = _HANDLERS[args.command](args, table)
        ok = bool(payload.get("passed", True))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        print(f"reproduce: cellkit {' '.join(argv)}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"cache I/O failure: {exc}", file=sys.stderr)
        return 3
    _emit(args, argv, payload, lines, csv_spec, ok, time.perf_counter() - start)
    return 0 if ok else 1


def main() -> None:
    raise SystemExit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
