"""Command line front end.

    repdim certify CONFIG [--output FILE]
    repdim catalog CONFIG
    repdim approx CONFIG --module REF

Exit codes: 0 when a verdict (or table) was produced, 1 on malformed
input, 2 when the hypotheses fail and no verdict can be reached.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import gldim, krull
from .category import direct_sum
from .config import ConfigError, JobConfig, load_config

EXIT_OK, EXIT_PARSE, EXIT_HYPOTHESIS = 0, 1, 2


def _apply_overrides(cfg: JobConfig, args) -> JobConfig:
    from .config import parse_field

    if args.field_p is not None:
        cfg.field = parse_field({"p": args.field_p}, "--field-p")
    if args.catalog_bound is not None:
        cfg.bound = args.catalog_bound
    if args.pd_cutoff is not None:
        cfg.pd_cutoff = args.pd_cutoff
    if args.seed is not None:
        cfg.seed = args.seed
    if args.format is not None:
        cfg.output_format = args.format
    if args.regulars is not None:
        with open(args.regulars) as fh:
            regs = json.load(fh)
        if not isinstance(regs, list):
            raise ConfigError(args.regulars, "expected a JSON list of representations")
        cfg.regulars = list(cfg.regulars) + regs
    cfg.parts()
    cfg.regular_modules()
    return cfg


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def build_certificate(cfg: JobConfig) -> gldim.Certificate:
    parts = cfg.parts()
    M = direct_sum(parts)[0]
    opts = gldim.Options(cfg.bound, cfg.pd_cutoff, cfg.seed, cfg.pd_suite, cfg.strategy)
    config = cfg.to_json()
    cert = gldim.repdim_certificate(M, parts, opts, cfg.regular_modules(), gldim.digest(config))
    cert.data["config"] = config
    return cert


def render_text(cert: gldim.Certificate) -> str:
    lines = [f"verdict: {cert.verdict}"]
    for c in cert.checks:
        lines.append(f"  [{'ok' if c['pass'] else 'FAIL'}] {c['name']}: {c['detail']}")
    if "ghat" in cert.data:
        lines.append("G-hat: " + ", ".join(d["module"] for d in cert.data["ghat"]))
    if "gamma" in cert.data:
        lines.append(f"gl.dim End(G-hat) = {cert.data['gamma']['gl_dim']}")
    lines.append(f"input digest: {cert.input_digest}")
    return "\n".join(lines) + "\n"


def cmd_certify(cfg: JobConfig, output: str | None = None) -> int:
    cert = build_certificate(cfg)
    text = cert.dumps()
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    sys.stdout.write(text if cfg.output_format == "json" else render_text(cert))
    return EXIT_HYPOTHESIS if cert.verdict == gldim.INCONCLUSIVE else EXIT_OK


def cmd_catalog(cfg: JobConfig) -> int:
    from .reps import catalog

    cat = catalog(cfg.quiver, cfg.strategy, cfg.bound, cfg.field, cfg.regular_modules())
    rows = [{"module": e.orbit, "dim": list(e.module.dim), "region": e.region, "provenance": e.provenance}
            for e in cat.entries]
    if cfg.output_format == "json":
        out = {"kind": cat.kind, "complete": cat.complete, "bound": cat.bound, "notes": cat.notes, "rows": rows}
        sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
    else:
        for r in rows:
            sys.stdout.write(f"{r['module']:<16} {str(tuple(r['dim'])):<12} {r['region'] or '-'}\n")
        for n in cat.notes:
            sys.stdout.write(f"warning: {n}\n")
        if not cat.complete:
            sys.stdout.write(f"warning: catalog is incomplete (bound {cat.bound})\n")
    return EXIT_OK


def cmd_approx(cfg: JobConfig, ref: str) -> int:
    from .auslander import add_g_resolution, build_generator
    from .reps import catalog

    cat = catalog(cfg.quiver, cfg.strategy, cfg.bound, cfg.field, cfg.regular_modules())
    X = None
    for e in cat.entries:
        if ref in (e.orbit, e.module.label):
            X = e.module
    if X is None:
        try:
            spec = json.loads(ref) if ref.lstrip().startswith("{") else ref
        except json.JSONDecodeError as exc:
            raise ConfigError("--module", exc.msg) from exc
        X = cfg.module(spec, "--module")
    M = direct_sum(cfg.parts())[0]
    gen = build_generator(M, cat)
    try:
        rec = add_g_resolution(gen, X)
    except krull.NonSplitField as exc:
        raise krull.NonSplitField(exc.module, f"module {ref}: {exc}") from exc
    out = rec.to_json()
    if cfg.output_format == "json":
        sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(f"{out['module']} {tuple(out['dim'])}\n  map from: {' + '.join(out['domain']) or '0'}\n"
                         f"  kernel: {' + '.join(out['kernel']) or '0'}\n  pass: {out['pass']}\n")
    return EXIT_OK if rec.passed else EXIT_HYPOTHESIS


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("config", help="job configuration (JSON file, '-' for stdin)")
    common.add_argument("--field-p", type=int, default=None, help="prime for the ground field")
    common.add_argument("--catalog-bound", type=int, default=None)
    common.add_argument("--pd-cutoff", type=int, default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--format", choices=("json", "text"), default=None)
    common.add_argument("--regulars", default=None, help="JSON list of extra regular modules")
    p = argparse.ArgumentParser(prog="repdim", description="Representation dimension certificates "
                                "for one-point style extensions of hereditary algebras.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("certify", parents=[common], help="run the full certificate pipeline")
    c.add_argument("--output", default=None, help="also write the certificate JSON here")
    sub.add_parser("catalog", parents=[common], help="list the catalog of indecomposables")
    a = sub.add_parser("approx", parents=[common], help="right add(G)-approximation of one module")
    a.add_argument("--module", required=True, help="catalog label, P(v)/I(v)/S(v) or representation JSON")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        cfg = _apply_overrides(load_config(_read(args.config)), args)
    except (ConfigError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    try:
        if args.command == "certify":
            return cmd_certify(cfg, args.output)
        if args.command == "catalog":
            return cmd_catalog(cfg)
        return cmd_approx(cfg, args.module)
    except ConfigError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except (krull.NonSplitField, ValueError, ArithmeticError) as exc:
        sys.stderr.write(f"hypothesis failure: {exc}\n")
        return EXIT_HYPOTHESIS


if __name__ == "__main__":
    sys.exit(main())
