"""Command-line front end: alphafarey <command> [options]."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys

from . import __version__
from .arith import (
    DEFAULT_PRECISION,
    AlphaFareyError,
    DomainError,
    PrecisionError,
    format_real,
    parse_real,
    sqrt_surd,
    to_float,
)
from .expansions import alpha_expand, rcf_expand
from .extension import (
    SYSTEMS,
    Box,
    CloudRegion,
    cloud_svg,
    measure_estimate,
    sample_domain,
)
from .farey import (
    alpha_farey_step,
    flat_mediant_sequence,
    flat_step,
    mediant_sequence,
    sharp_step,
    symbol_of,
)
from .lab import (
    FAMILIES,
    CylinderSpec,
    DeltaSymbol,
    NotFound,
    cylinder_frequency,
    cylinder_measure,
    farey_normality_report,
    matching_detect,
    thin_cylinder_search,
)
from .suites import SUITES

EXIT_OK, EXIT_FAIL, EXIT_DOMAIN, EXIT_PRECISION, EXIT_IO = 0, 1, 2, 3, 4

_R2 = math.sqrt(2)
_A = _R2 - 1
# (system, window x0, x1, y0, y1) for alpha = sqrt2 - 1, one per figure label
FIGURES = {
    1: ("omega-star", (_A - 1, _A, -6.0, -1.0)),
    2: ("v", (_A - 1, 1 / _A, -6.0, 0.0)),
    3: ("v", (_A - 2, 1 / _A - 1, -7.0, -1.0)),
    4: ("v", (_A - 1, 1 / _A, -12.0, -1.0)),
    5: ("v", (_A - 1, 1 / _A, -12.0, 0.0)),
    6: ("vflat", (_A - 1, 1.0, -12.0, 0.0)),
    7: ("vflat", (_A - 1, 1.0, -12.0, 0.0)),
    8: ("vflat", (_A - 1, 1.0, -12.0, 0.0)),
}


def _header(args, **extra) -> dict:
    h = {"version": __version__, "command": args.command,
         "alpha": getattr(args, "alpha", None), "seed": args.seed, "precision": args.precision}
    h.update(extra)
    return h


def _csv(header: dict, columns: list[str], rows) -> str:
    buf = io.StringIO()
    for k, v in header.items():
        buf.write(f"# {k}: {v}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(rows)
    return buf.getvalue()


def _json(header: dict, body: dict) -> str:
    return json.dumps({**header, **body}, indent=2) + "\n"


def _num(args, name):
    return parse_real(getattr(args, name), args.precision)


# ---------------------------------------------------------------------------

def cmd_expand(args) -> str:
    x = _num(args, "x")
    if args.rcf:
        body = rcf_expand(x, args.n).to_dict()
        rows = [[i + 1, 1, a, *body["convergents"][i + 1]] for i, a in enumerate(body["digits"])]
    else:
        exp = alpha_expand(_num(args, "alpha"), x, args.n)
        body = exp.to_dict()
        rows = [[i + 1, e, a, *exp.convergents[i + 1], format_real(exp.orbit[i + 1])]
                for i, (e, a) in enumerate(zip(exp.eps, exp.digits))]
    h = _header(args, x=args.x)
    if args.format == "csv":
        cols = ["n", "eps", "a", "p", "q"] + ([] if args.rcf else ["orbit"])
        return _csv(h, cols, rows)
    return _json(h, {"expansion": body})


def cmd_mediants(args) -> str:
    alpha, x = _num(args, "alpha"), _num(args, "x")
    fn = flat_mediant_sequence if args.flat else mediant_sequence
    stream = fn(alpha, x, args.k)
    h = _header(args, x=args.x, flat=args.flat)
    if args.format == "json":
        return stream.to_json(h) + "\n"
    return stream.to_csv(h)


def cmd_farey_orbit(args) -> str:
    alpha, x = _num(args, "alpha"), _num(args, "x")
    rows = [[0, format_real(x), ""]]
    for k in range(1, args.k + 1):
        if args.map == "alpha":
            sym = str(symbol_of(alpha, x))
            x = alpha_farey_step(alpha, x)
        elif args.map == "flat":
            x, step = flat_step(alpha, x)
            sym = f"K={step}"
        else:
            x = sharp_step(alpha, x)
            sym = ""
        rows.append([k, format_real(x), sym])
    h = _header(args, x=args.x, map=args.map)
    if args.format == "json":
        return _json(h, {"orbit": [{"k": r[0], "x": r[1], "symbol": r[2]} for r in rows]})
    return _csv(h, ["k", "x", "symbol"], rows)


def cmd_domain(args) -> str:
    alpha = _num(args, "alpha")
    system, window = args.system, None
    if args.figure is not None:
        system, window = FIGURES[args.figure]
        alpha = sqrt_surd(2) - 1
    if args.points == 0:
        return ""
    cloud = sample_domain(alpha, system, args.points, args.seed, args.orbit_length)
    h = _header(args, figure=args.figure)
    h["alpha"] = format_real(alpha)
    if args.format == "svg":
        return cloud_svg(cloud, window, header=h)
    if args.format == "json":
        return cloud.to_json(h) + "\n"
    return cloud.to_csv(h)


def _parse_box(text: str) -> Box:
    parts = [float(p) for p in text.split(",")]
    if len(parts) != 4:
        raise DomainError("--box needs x0,x1,y0,y1")
    return Box(*parts)


def cmd_measure(args) -> str:
    box = _parse_box(args.box)
    region = None
    if args.region:
        alpha = _num(args, "alpha")
        cloud = sample_domain(alpha, args.region, args.cloud_points, args.seed)
        region = CloudRegion(cloud)
    res = measure_estimate(box, region, args.samples, args.seed, args.method)
    h = _header(args, box=args.box, method=args.method, region=args.region)
    return _json(h, res.to_dict())


def _parse_spec(text: str) -> CylinderSpec:
    fam, _, word = text.partition(":")
    if fam not in FAMILIES or not word:
        raise DomainError(f"bad cylinder spec {text!r}; use Family:w1,w2,... with Family in {FAMILIES}")
    items = word.split(",")
    if fam == "AlphaCF":
        return CylinderSpec(fam, tuple(int(w) for w in items))
    return CylinderSpec(fam, tuple(DeltaSymbol.parse(w) for w in items))


def cmd_normality(args) -> str:
    alpha = _num(args, "alpha")
    x = to_float(_num(args, "x")) if args.float else _num(args, "x")
    specs = [_parse_spec(s) for s in args.spec]
    rows = []
    for spec in specs:
        f = cylinder_frequency(alpha, x, spec, args.N)
        try:
            mu, se = cylinder_measure(alpha, spec, seed=args.seed)
        except DomainError:
            mu, se = None, None
        verdict = "no-estimate"
        if mu is not None:
            sigma = math.sqrt(se * se + f.freq * (1 - f.freq) / args.N)
            verdict = "consistent" if abs(f.freq - mu) <= max(3 * sigma, args.tol) else "inconsistent"
        rows.append({"spec": str(spec), "N": args.N, "freq": f.freq, "mu_estimate": mu,
                     "stderr": se, "verdict": verdict})
    body = {"reports": rows}
    if args.n2:
        body["n2"] = farey_normality_report(alpha, x, [], args.N, args.seed)
    h = _header(args, x=args.x)
    return _json(h, body)


def cmd_matching(args) -> str:
    m = matching_detect(_num(args, "alpha"), args.max_steps, args.precision, args.tail)
    if m is None:
        raise NotFound("no matching found within max_steps")
    return _json(_header(args), m.to_dict())


def cmd_thin_cylinder(args) -> str:
    alpha = _num(args, "alpha")
    x = _num(args, "x") if args.x is not None else None
    res = thin_cylinder_search(alpha, _num(args, "eps"), args.max_len, x, args.measure)
    return _json(_header(args, eps=args.eps), res.to_dict())


def cmd_verify(args) -> tuple[str, int]:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        kwargs = {"seed": args.seed} if name != "matching" else {}
        if args.samples is not None:
            key = {"induced": "samples", "products": "samples", "skips": "samples",
                   "conjugacy": "points", "density": "points", "vahlen": "samples",
                   "geometry": "points", "recoding": "words", "measure": "n_samples"}.get(name)
            if key:
                kwargs[key] = args.samples
        if args.alpha is not None and name in ("induced", "products", "skips", "conjugacy"):
            kwargs["alphas"] = [_num(args, "alpha")]
        results.append(SUITES[name](**kwargs))
    lines = [r.line() for r in results]
    report = _json(_header(args), {"results": [r.to_dict() for r in results]})
    ok = all(r.passed for r in results)
    return "\n".join(lines) + "\n" + report, EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="alphafarey", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="bits for decimal input")
    common.add_argument("--output", "-o", help="write here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fmt_default="json", formats=("csv", "json"), alpha_default="1"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("--format", choices=formats, default=fmt_default)
        if alpha_default is not ...:
            sp.add_argument("--alpha", default=alpha_default)
        return sp

    sp = add("expand")
    sp.add_argument("--x", required=True)
    sp.add_argument("--n", type=int, default=20)
    sp.add_argument("--rcf", action="store_true", help="regular continued fraction")
    sp.set_defaults(func=cmd_expand)

    sp = add("mediants", fmt_default="csv")
    sp.add_argument("--x", required=True)
    sp.add_argument("--k", type=int, default=20)
    sp.add_argument("--flat", action="store_true")
    sp.set_defaults(func=cmd_mediants)

    sp = add("farey-orbit", fmt_default="csv")
    sp.add_argument("--x", required=True)
    sp.add_argument("--k", type=int, default=20)
    sp.add_argument("--map", choices=("alpha", "flat", "sharp"), default="alpha")
    sp.set_defaults(func=cmd_farey_orbit)

    sp = add("domain", fmt_default="csv", formats=("csv", "json", "svg"))
    sp.add_argument("--system", choices=SYSTEMS, default="omega-star")
    sp.add_argument("--points", type=int, default=10_000)
    sp.add_argument("--orbit-length", type=int, default=1000)
    sp.add_argument("--figure", type=int, choices=sorted(FIGURES))
    sp.set_defaults(func=cmd_domain)

    sp = add("measure", formats=("json",))
    sp.add_argument("--box", required=True, help="x0,x1,y0,y1 (y0 may be -inf)")
    sp.add_argument("--method", choices=("mc", "quad"), default="mc")
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--region", choices=SYSTEMS, help="restrict to a sampled domain")
    sp.add_argument("--cloud-points", type=int, default=200_000)
    sp.set_defaults(func=cmd_measure)

    sp = add("normality", formats=("json",))
    sp.add_argument("--x", required=True)
    sp.add_argument("--N", type=int, default=100_000)
    sp.add_argument("--spec", action="append", default=[], help="e.g. AlphaCF:1 or Flat1:d-3")
    sp.add_argument("--float", action="store_true", help="iterate in double precision")
    sp.add_argument("--tol", type=float, default=0.01)
    sp.add_argument("--n2", action="store_true", help="add the N2-fraction diagnostic")
    sp.set_defaults(func=cmd_normality)

    sp = add("matching", formats=("json",))
    sp.add_argument("--max-steps", type=int, default=200)
    sp.add_argument("--tail", type=int, default=100)
    sp.set_defaults(func=cmd_matching)

    sp = add("thin-cylinder", formats=("json",))
    sp.add_argument("--eps", required=True)
    sp.add_argument("--max-len", type=int, default=200)
    sp.add_argument("--x", help="follow this orbit instead of alpha-1 and alpha")
    sp.add_argument("--measure", choices=("image", "cylinder"), default="image")
    sp.set_defaults(func=cmd_thin_cylinder)

    sp = add("verify", formats=("json",), alpha_default=None)
    sp.add_argument("suite", choices=sorted(SUITES) + ["all"])
    sp.add_argument("--samples", type=int)
    sp.set_defaults(func=cmd_verify)
    return p


_NEGATIVE = re.compile(r"^-[\d.(]|^-sqrt")


def _glue_negatives(argv: list[str]) -> list[str]:
    """Turn '--x -3/8' into '--x=-3/8' so argparse accepts negative values."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if (tok.startswith("--") and "=" not in tok and i + 1 < len(argv)
                and _NEGATIVE.match(argv[i + 1])):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_negatives(argv))
    try:
        out = args.func(args)
    except PrecisionError as exc:
        print(f"precision error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except NotFound as exc:
        print(f"not found: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (AlphaFareyError, ValueError, ZeroDivisionError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    code = EXIT_OK
    if isinstance(out, tuple):
        out, code = out
    try:
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(out)
        else:
            sys.stdout.write(out)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return code


if __name__ == "__main__":
    raise SystemExit(main())
