"""waring: compute Waring numbers of Z_p[p^(1/e)] from the command line.

Exit status: 0 success (for ``compute``: resolved), 2 unresolved, 1 usage
error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from . import ring
from .cache import ResultCache, decomposition_to_dict, to_record
from .engine import (
    DEFAULT_N_CAP,
    RingTooLarge,
    WaringResult,
    decomposition_table,
    default_lb_precision,
    render_decomposition,
    scan_conjecture,
    waring_number,
)
from .powers import PrecisionTooLow, power_residues
from .primefield import prime_power_data
from .ring import RingSpec
from .tables import LAYOUTS, Axis, known_value, parse_range

EXIT_OK, EXIT_USAGE, EXIT_UNRESOLVED = 0, 1, 2


class UsageError(Exception):
    pass


# -- helpers ------------------------------------------------------------------


def _spec(args, need_k=True) -> RingSpec:
    if args.p is None or (need_k and args.k is None):
        raise UsageError("-p and -k are required")
    try:
        return RingSpec(args.p, args.e, args.k if args.k is not None else 1)
    except ValueError as ex:
        raise UsageError(str(ex)) from None


def _check_lb(spec: RingSpec, lb: int | None):
    if lb is not None and lb < spec.hensel_precision:
        raise UsageError(f"--lb-precision {lb} is below the Hensel precision M = {spec.hensel_precision}")


def _range(text: str) -> list[int]:
    try:
        return parse_range(text)
    except ValueError as ex:
        raise UsageError(f"bad range {text!r}: {ex}") from None


def _elem(spec: RingSpec, a, raw: bool, folded: bool = True) -> str:
    if raw:
        return ring.to_text(a)
    return ring.folded(spec, a) if folded else ring.pretty(a)


class Runner:
    """waring_number with an optional cache in front of it."""

    def __init__(self, args):
        self.lb = args.lb_precision
        self.n_cap = args.n_cap
        self.direct = getattr(args, "direct", False)
        self.cache = None if args.no_cache else ResultCache(args.cache)

    def key(self, spec: RingSpec):
        if spec.k % spec.p and spec.e > 1 and not self.direct:
            base = RingSpec(spec.p, 1, spec.k)
        else:
            base = spec
        return base.hensel_precision, default_lb_precision(base)

    def __call__(self, spec: RingSpec) -> WaringResult:
        _check_lb(spec, self.lb)
        M, cap = self.key(spec)
        if self.cache is not None:
            hit = self.cache.get(spec.p, spec.e, spec.k, M, self.lb, auto_cap=cap)
            if hit is not None:
                return hit
        r = waring_number(spec, lb_precision=self.lb, n_cap=self.n_cap, direct=self.direct)
        if self.cache is not None:
            self.cache.put(r)
        return r


def _emit_csv(rows: list[dict], out):
    if not rows:
        return
    w = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (" ".join(map(str, v)) if isinstance(v, list) else v) for k, v in r.items()})


def _emit(args, payload, rows: list[dict], text: str):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        buf = io.StringIO()
        _emit_csv(rows, buf)
        sys.stdout.write(buf.getvalue())
    else:
        print(text)


# -- commands -----------------------------------------------------------------


def cmd_compute(args) -> int:
    spec = _spec(args)
    if spec.k < 2:
        raise UsageError("k must be >= 2")
    try:
        r = Runner(args)(spec)
    except RingTooLarge as ex:
        print(f"unresolved: {ex}", file=sys.stderr)
        return EXIT_UNRESOLVED
    rec = to_record(r)
    cspec = r.certificate_spec.at(r.N_prime)
    dec = r.worst_class_decomposition
    head = f"g = {r.g}" if r.resolved else f"unresolved: {r.lower} <= g <= {r.upper}"
    lines = [
        f"g_{{{r.p},{r.e}}}({r.k}): {head}",
        f"  M = {r.M}, N' = {r.N_prime}",
        f"  lower {r.lower}: {_elem(cspec, r.witness.witness, args.raw)} is not a sum of "
        f"{r.witness.m} k-th powers mod w^{r.N_prime}",
        f"  upper {r.upper}: worst class {_elem(cspec, dec.target, args.raw)} = "
        + render_decomposition(r.certificate_spec, dec),
    ]
    if r.delegated_from is not None:
        lines.append(f"  p does not divide k: value taken from e = {r.delegated_from}")
    _emit(args, rec, [{k: v for k, v in rec.items() if k != "decomposition"}], "\n".join(lines))
    return EXIT_OK if r.resolved else EXIT_UNRESOLVED


def _grid_axes(args):
    if args.e_range or args.k_range:
        if args.p is None or not (args.e_range and args.k_range):
            raise UsageError("a custom grid needs -p, --e-range and --k-range")
        ks = _range(args.k_range)[:: args.step]
        return args.p, [Axis(str(e), e) for e in _range(args.e_range)], [Axis(str(k), k) for k in ks]
    if args.p not in LAYOUTS:
        raise UsageError("canned tables exist for p = 2 and p = 3; pass --e-range and --k-range otherwise")
    lay = LAYOUTS[args.p]
    return args.p, list(lay.rows), list(lay.cols)


def cmd_table(args) -> int:
    p, rows, cols = _grid_axes(args)
    lay = LAYOUTS.get(p)
    run = Runner(args)
    cells = [(r, c) for r in rows for c in cols]

    def one(cell):
        r, c = cell
        known = lay.values.get((r.label, c.label)) if lay else None
        if known is None and not (r.family or c.family):
            known = known_value(p, r.sample, c.sample)
        try:
            res = run(RingSpec(p, r.sample, c.sample))
        except RingTooLarge:
            res = None
        return known, res

    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        results = list(pool.map(one, cells))

    status = EXIT_OK
    out_cells, text_grid = [], {}
    for (r, c), got in zip(cells, results):
        known, res = got
        g = res.g if res else None
        if known is not None and g != known:
            status = EXIT_UNRESOLVED
        if g is None:
            shown = "?" if res is None else f"{res.lower}..{res.upper}"
        else:
            shown = str(g)
        if known is None:
            shown += " [new]"
        elif g != known:
            shown += f" (known {known})"
        text_grid[(r.label, c.label)] = shown
        out_cells.append({
            "e": r.sample, "k": c.sample, "row": r.label, "col": c.label,
            "g": g, "lower": res.lower if res else None, "upper": res.upper if res else None,
            "known": known, "new": known is None,
            "record": to_record(res) if res else None,
        })

    width = max(len(v) for v in text_grid.values()) + 2
    lw = max(len(r.label) for r in rows) + 2
    head = " " * lw + "".join(c.label.rjust(max(width, len(c.label) + 2)) for c in cols)
    lines = [f"g_{{{p},e}}(k)   rows: e, columns: k", head]
    for r in rows:
        lines.append(r.label.ljust(lw) + "".join(
            text_grid[(r.label, c.label)].rjust(max(width, len(c.label) + 2)) for c in cols))
    fam = [a for a in rows + cols if a.family]
    if fam:
        lines.append("families checked at: " + ", ".join(f"{a.label} -> {a.sample}" for a in fam))
    if any(v.startswith("?") for v in text_grid.values()):
        lines.append("? : ring too large for the dense residue bitmap (unresolved)")
    rows_csv = [{k: v for k, v in c.items() if k != "record"} for c in out_cells]
    _emit(args, {"p": p, "cells": out_cells}, rows_csv, "\n".join(lines))
    return status


def cmd_powers(args) -> int:
    spec = _spec(args)
    N = args.precision or spec.hensel_precision
    try:
        pr = power_residues(spec, N)
    except PrecisionTooLow as ex:
        raise UsageError(str(ex)) from None
    s = spec.at(N)
    units = [pr.space.didx_element(d) for d in pr.unit_didx.tolist()]
    scales = [j for j in range(1, N) if spec.k * j < N]
    lines = [_elem(s, u, args.raw, folded=False) for u in units]
    lines += [f"w^{spec.k * j} * U" for j in scales]
    payload = {
        "p": spec.p, "e": spec.e, "k": spec.k, "N": N,
        "units": [
            {"digits": list(u.digits), "root": list(pr.root_of(u).digits)} for u in units
        ],
        "scaled": [spec.k * j for j in scales],
    }
    rows = [{"kind": "unit", "digits": list(u.digits), "text": ring.pretty(u)} for u in units]
    rows += [{"kind": "scaled", "digits": [], "text": f"w^{spec.k * j} * U"} for j in scales]
    _emit(args, payload, rows, "\n".join(lines))
    return EXIT_OK


def cmd_decompose(args) -> int:
    spec = _spec(args)
    try:
        table = decomposition_table(spec)
    except RingTooLarge as ex:
        raise UsageError(str(ex)) from None
    out, rows, lines = [], [], []
    for a, pretty, dec in table:
        cls = ring.to_text(a) if args.raw else pretty
        line = render_decomposition(spec, dec)
        lines.append(f"{cls:>16} | {dec.size:>2} | {line}")
        out.append({"class": list(a.digits), "text": pretty, "size": dec.size,
                    "decomposition": decomposition_to_dict(dec)})
        rows.append({"class": ring.to_text(a), "text": pretty, "size": dec.size, "decomposition": line})
    _emit(args, {"p": spec.p, "e": spec.e, "k": spec.k, "M": spec.hensel_precision, "rows": out},
          rows, "\n".join(lines))
    return EXIT_OK


def cmd_scan(args) -> int:
    p = args.p or 2
    if not (args.e_range and args.k_range):
        raise UsageError("scan needs --e-range and --k-range")
    es = _range(args.e_range)
    ks = _range(args.k_range)[:: args.step]
    run = Runner(args)
    cells = scan_conjecture(p, es, ks, compute=run)
    out, lines = [], [f"g_{{{p},e}}(k) < g_{{{p},1}}(k) when k even and gcd(e, k) > 1"]
    for c in cells:
        new = known_value(p, c.e, c.k) is None
        tag = " [new]" if new else ""
        note = "" if c.applies else " (hypothesis not met)"
        lines.append(f"e={c.e:<3} k={c.k:<3} g={c.g}{tag}  base={c.base}  {c.verdict}{note}")
        out.append({"e": c.e, "k": c.k, "g": c.g, "base": c.base, "verdict": c.verdict,
                    "applies": c.applies, "new": new})
    bad = any(c.verdict == "violation" for c in cells)
    unresolved = any(c.verdict == "unresolved" for c in cells)
    lines.append("violations found" if bad else "no violations found (not a proof)")
    _emit(args, {"p": p, "cells": out}, out, "\n".join(lines))
    return EXIT_UNRESOLVED if unresolved else EXIT_OK


def cmd_g0(args) -> int:
    if args.p is None or args.k is None:
        raise UsageError("-p and -k are required")
    try:
        d = prime_power_data(args.p, args.k)
    except ValueError as ex:
        raise UsageError(str(ex)) from None
    payload = {"p": d.p, "k": d.k, "g0": d.g0, "residues": sorted(d.residues)}
    _emit(args, payload, [{"p": d.p, "k": d.k, "g0": d.g0}], str(d.g0))
    return EXIT_OK


COMMANDS = {
    "compute": cmd_compute,
    "table": cmd_table,
    "powers": cmd_powers,
    "decompose": cmd_decompose,
    "scan": cmd_scan,
    "g0": cmd_g0,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-p", type=int)
    common.add_argument("-e", type=int, default=1)
    common.add_argument("-k", type=int)
    common.add_argument("--e-range", "--rows", dest="e_range", metavar="A..B")
    common.add_argument("--k-range", "--cols", dest="k_range", metavar="A..B")
    common.add_argument("--step", type=int, default=1)
    common.add_argument("--precision", type=int, help="residue precision N (powers)")
    common.add_argument("--lb-precision", type=int, help="precision N' for the lower bound")
    common.add_argument("--n-cap", type=int, default=DEFAULT_N_CAP)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--cache", help="result cache file (default $WARING_CACHE or ~/.cache/waring)")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--raw", action="store_true", help="print digit vectors")
    common.add_argument("--direct", action="store_true",
                        help="compute p-free exponents directly instead of reducing to e = 1")

    parser = _Parser(prog="waring", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "compute": "bounds and value of g_{p,e}(k)",
        "table": "grid of values (canned layouts for p = 2, 3)",
        "powers": "unit k-th power residues",
        "decompose": "one decomposition per residue class mod w^M",
        "scan": "check the gcd conjecture on a grid",
        "g0": "fewest nonzero k-th powers summing to 0 mod p",
    }
    for name, h in helps.items():
        sub.add_parser(name, parents=[common], help=h)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.step < 1 or args.n_cap < 1 or args.threads < 1:
            raise UsageError("--step, --n-cap and --threads must be positive")
        return COMMANDS[args.command](args)
    except UsageError as ex:
        print(f"waring: {ex}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
