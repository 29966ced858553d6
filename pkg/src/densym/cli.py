"""Command-line surface: classify, table, verify, figures.

Output is deterministic byte-for-byte for a fixed invocation: no timestamps,
fixed orderings, and a fixed seed for the representative-point sampling.

Exit codes: 0 success, 1 identity failure, 2 bad input, 3 internal
assertion (oracle disagreement or span mismatch).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from fractions import Fraction

from .errors import DensymError, SpanMismatchError, SpanNotClosedError
from .identities import CATALOG_HOMES, CheckConfig, IDENTITIES, check_catalog_op, run_identity
from .recurrence import classify, sweep
from .rings import CIRCLE, LINE

OUTDIR_ENV = "DENSYM_OUT"

_RAT_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Accept only integers and p/q; decimal input is rejected as inexact."""
    text = text.strip()
    if not _RAT_RE.match(text):
        raise ValueError(
            f"not an exact rational: {text!r} (use p/q or an integer)"
        )
    q = Fraction(text)
    return q


def _add_common(p):
    p.add_argument("-k", "--order", type=int, default=None,
                   help="operator order k")
    p.add_argument("--lambda", dest="lam", default=None,
                   help="source weight, as p/q")
    p.add_argument("--mu", default=None, help="target weight, as p/q")
    p.add_argument("--space", choices=[CIRCLE, LINE], default=None)
    p.add_argument("-M", "--truncation", type=int, default=None,
                   help="coefficient degree / frequency window (default k+6)")
    p.add_argument("--format", dest="fmt", default=None,
                   choices=["json", "csv", "svg"])
    p.add_argument("-o", "--out", default=None, help="output file or directory")
    p.add_argument("--config", default=None,
                   help="key=value file mirroring the flags")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="densym",
        description="Exact symmetry calculus for modules of differential "
                    "operators on tensor densities",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify one module")
    _add_common(p)

    p = sub.add_parser("table", help="reproduce the dimension table")
    _add_common(p)
    p.add_argument("--samples", type=int, default=3)
    p.add_argument("--no-kinds", action="store_true",
                   help="dimensions only (faster)")

    p = sub.add_parser("verify", help="run a named exact identity check")
    _add_common(p)
    p.add_argument("identity", nargs="?", default=None)
    p.add_argument("--op", default=None,
                   help="equivariance check of one cataloged map")
    p.add_argument("--list", action="store_true", help="list known names")

    p = sub.add_parser("figures", help="emit the exceptional loci for one order")
    _add_common(p)
    return parser


def load_config(path):
    conf = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            conf[key.strip()] = value.strip()
    return conf


def merge_config(args):
    if not getattr(args, "config", None):
        return args
    conf = load_config(args.config)
    mapping = {
        "order": ("order", int), "k": ("order", int),
        "lambda": ("lam", str), "mu": ("mu", str),
        "space": ("space", str), "truncation": ("truncation", int),
        "M": ("truncation", int), "format": ("fmt", str),
        "out": ("out", str), "samples": ("samples", int),
    }
    for key, raw in conf.items():
        if key not in mapping:
            raise ValueError(f"unknown config key {key!r}")
        attr, conv = mapping[key]
        if getattr(args, attr, None) is None:
            setattr(args, attr, conv(raw))
    return args


def _write(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _check_order(k):
    if k is None or k < 0:
        raise ValueError("the order -k must be a nonnegative integer")
    return k


def cmd_classify(args) -> int:
    if args.order is None or args.lam is None or args.mu is None:
        raise ValueError("classify needs -k, --lambda and --mu")
    lam, mu = parse_rational(args.lam), parse_rational(args.mu)
    space = args.space or CIRCLE
    report = classify(_check_order(args.order), lam, mu, space,
                      M=args.truncation)
    _write(report.to_json(), args.out)
    return 0


def cmd_table(args) -> int:
    kmax = _check_order(args.order if args.order is not None else 6)
    space = args.space or CIRCLE
    rows = sweep(kmax=kmax, space=space, samples=args.samples,
                 with_kinds=not args.no_kinds)
    fmt = args.fmt or "csv"
    if fmt == "json":
        _write(json.dumps(rows, sort_keys=True, indent=2), args.out)
        return 0
    buf = io.StringIO()
    writer = csv.writer(buf)
    header = ["row", "points"] + [f"k={k}" for k in range(kmax + 1)]
    if not args.no_kinds:
        header += [f"kind k={k}" for k in range(kmax + 1)]
    writer.writerow(header)
    for row in rows:
        points = ";".join(f"({l},{m})" for l, m in row["points"])
        record = [row["row"], points] + [str(d) for d in row["dims"]]
        if not args.no_kinds:
            record += row["kinds"]
        writer.writerow(record)
    _write(buf.getvalue(), args.out)
    return 0


def cmd_verify(args) -> int:
    if args.list:
        names = sorted(IDENTITIES) + sorted(f"op:{n}" for n in CATALOG_HOMES)
        _write("\n".join(names) + "\n", args.out)
        return 0
    cfg = CheckConfig(
        k=args.order,
        lam=parse_rational(args.lam) if args.lam else None,
        mu=parse_rational(args.mu) if args.mu else None,
        space=args.space or CIRCLE,
        M=args.truncation,
    )
    if args.op:
        result = check_catalog_op(args.op, cfg)
    elif args.identity:
        result = run_identity(args.identity, cfg)
    else:
        raise ValueError("verify needs an identity name or --op NAME")
    _write(result.line() + "\n", args.out)
    return 0 if result.passed else 1


# ----------------------------------------------------------------------
# figures: exceptional loci in the weight plane
# ----------------------------------------------------------------------

LINE_EQS = {
    "lambda=0": (1, 0, 0),
    "mu=1": (0, 1, 1),
    "lambda+mu=1": (1, 1, 1),
    "mu-lambda=1": (-1, 1, 1),
    "mu-lambda=2": (-1, 1, 2),
}

FIGURE_LOCI = {
    2: {
        "lines": ["lambda=0", "mu=1", "mu-lambda=1", "mu-lambda=2"],
        "hyperbola": False,
        "points": ["-1/2,3/2", "0,2", "-1,1", "0,1"],
    },
    3: {
        "lines": ["lambda=0", "mu=1", "lambda+mu=1", "mu-lambda=2"],
        "hyperbola": True,
        "points": ["-1/2,3/2", "-2/3,5/3", "0,1", "0,2", "0,3", "-1,1", "-2,1"],
    },
    4: {
        "lines": ["lambda=0", "mu=1", "lambda+mu=1"],
        "hyperbola": False,
        "points": ["1,1", "0,5/4", "0,0", "-1/4,1", "-2/3,5/3", "0,3",
                   "-2,1", "0,1"],
    },
    5: {
        "lines": ["lambda=0", "mu=1", "lambda+mu=1"],
        "hyperbola": False,
        "points": ["0,0", "1,1", "0,1"],
    },
}

WINDOW = (-3.0, 2.5, -2.5, 4.0)  # lam_min, lam_max, mu_min, mu_max
SIZE = 640.0


def _to_screen(lam: float, mu: float):
    l0, l1, m0, m1 = WINDOW
    x = (lam - l0) / (l1 - l0) * SIZE
    y = SIZE - (mu - m0) / (m1 - m0) * SIZE
    return x, y


def _clip_line(a, b, c):
    """Segment of a*lam + b*mu = c inside the window, as endpoints."""
    l0, l1, m0, m1 = WINDOW
    pts = []
    if b != 0:
        for lam in (l0, l1):
            mu = (c - a * lam) / b
            if m0 - 1e-9 <= mu <= m1 + 1e-9:
                pts.append((lam, mu))
    if a != 0:
        for mu in (m0, m1):
            lam = (c - b * mu) / a
            if l0 - 1e-9 <= lam <= l1 + 1e-9:
                pts.append((lam, mu))
    uniq = []
    for p in pts:
        if all(abs(p[0] - q[0]) + abs(p[1] - q[1]) > 1e-9 for q in uniq):
            uniq.append(p)
    return uniq[:2] if len(uniq) >= 2 else None


def _hyperbola_paths(n: int = 160):
    """The two branches of (3L+1)(3M-4) = -1 inside the window."""
    l0, l1, m0, m1 = WINDOW
    paths = []
    for lo, hi in ((l0, -1.0 / 3 - 1e-3), (-1.0 / 3 + 1e-3, l1)):
        pts = []
        for i in range(n + 1):
            lam = lo + (hi - lo) * i / n
            mu = (4.0 - 1.0 / (3.0 * lam + 1.0)) / 3.0
            if m0 <= mu <= m1:
                pts.append((lam, mu))
        if len(pts) >= 2:
            paths.append(pts)
    return paths


def figure_svg(k: int) -> str:
    loci = FIGURE_LOCI[k]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{int(SIZE)}" '
        f'height="{int(SIZE)}" viewBox="0 0 {int(SIZE)} {int(SIZE)}">',
        f'<rect width="{int(SIZE)}" height="{int(SIZE)}" fill="white"/>',
    ]
    # axes
    for a, b, c in ((1, 0, 0), (0, 1, 0)):
        seg = _clip_line(a, b, c)
        if seg:
            (x1, y1), (x2, y2) = (_to_screen(*p) for p in seg)
            parts.append(
                f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
                f'stroke="#bbbbbb" stroke-width="1"/>'
            )
    for name in loci["lines"]:
        seg = _clip_line(*LINE_EQS[name])
        if seg:
            (x1, y1), (x2, y2) = (_to_screen(*p) for p in seg)
            parts.append(
                f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
                f'stroke="#1f6fb2" stroke-width="1.5"/>'
            )
            lx, ly = _to_screen(*seg[0])
            parts.append(
                f'<text x="{min(max(lx, 12), SIZE - 90):.1f}" '
                f'y="{min(max(ly - 4, 12), SIZE - 6):.1f}" font-size="11" '
                f'fill="#1f6fb2">{name}</text>'
            )
    if loci["hyperbola"]:
        for pts in _hyperbola_paths():
            coords = " ".join(
                f"{x:.1f},{y:.1f}" for x, y in (_to_screen(*p) for p in pts)
            )
            parts.append(
                f'<polyline points="{coords}" fill="none" stroke="#b23a1f" '
                f'stroke-width="1.5"/>'
            )
        parts.append(
            '<text x="12" y="24" font-size="11" fill="#b23a1f">'
            "(3*lambda+1)(3*mu-4)=-1</text>"
        )
    for pt in loci["points"]:
        lam_s, mu_s = pt.split(",")
        x, y = _to_screen(float(Fraction(lam_s)), float(Fraction(mu_s)))
        parts.append(
            f'<circle cx="{x:.1f}" cy="{y:.1f}" r="4" fill="#222222"/>'
        )
        parts.append(
            f'<text x="{x + 6:.1f}" y="{y - 6:.1f}" font-size="10" '
            f'fill="#222222">({lam_s},{mu_s})</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def figure_csv(k: int) -> str:
    loci = FIGURE_LOCI[k]
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["kind", "equation", "lambda", "mu"])
    for name in loci["lines"]:
        writer.writerow(["line", name, "", ""])
    if loci["hyperbola"]:
        writer.writerow(["hyperbola", "(3*lambda+1)*(3*mu-4)=-1", "", ""])
    for pt in loci["points"]:
        lam_s, mu_s = pt.split(",")
        writer.writerow(["point", "", lam_s, mu_s])
    return buf.getvalue()


def cmd_figures(args) -> int:
    k = args.order
    if k not in FIGURE_LOCI:
        raise ValueError(f"figures support k in {sorted(FIGURE_LOCI)}, got {k}")
    outdir = args.out or os.environ.get(OUTDIR_ENV) or "."
    os.makedirs(outdir, exist_ok=True)
    svg_path = os.path.join(outdir, f"loci_k{k}.svg")
    csv_path = os.path.join(outdir, f"loci_k{k}.csv")
    with open(svg_path, "w", encoding="utf-8") as fh:
        fh.write(figure_svg(k))
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(figure_csv(k))
    sys.stdout.write(svg_path + "\n" + csv_path + "\n")
    return 0


COMMANDS = {
    "classify": cmd_classify,
    "table": cmd_table,
    "verify": cmd_verify,
    "figures": cmd_figures,
}


def _join_rational_flags(argv):
    """Rewrite ['--lambda', '-1/2'] as ['--lambda=-1/2'] so argparse does not
    mistake negative rationals for option names."""
    out = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg in ("--lambda", "--mu") and i + 1 < len(argv):
            out.append(f"{arg}={argv[i + 1]}")
            i += 2
        else:
            out.append(arg)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_rational_flags(
        list(sys.argv[1:] if argv is None else argv)))
    try:
        args = merge_config(args)
        return COMMANDS[args.command](args)
    except (SpanMismatchError, SpanNotClosedError) as exc:
        print(f"internal assertion failed: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, DensymError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
