"""Command-line front end: spec generation, point analysis, theorem audits.

Exit codes for `analyze`: 0 success, 2 unreadable or invalid spec,
3 invalid chart point, 4 internal invariant violation.  `audit` exits
nonzero only when a theorem is violated on a stable sample.  The seed
falls back to the OSCULATA_SEED environment variable when no --seed flag
is given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import InternalInvariantError, PointError, SpecError
from .invariants import SamplerConfig, build_invariant_report, cor_tm06_check, vanishing_check
from .report import audit_to_text, render_text, report_to_dict, to_json
from .variety import (
    VarietySpec,
    builtin_corpus,
    canonical_spec_json,
    gen_cone,
    gen_projection,
    gen_rnc,
    gen_segre,
    gen_veronese,
    parse_spec,
    spec_digest,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_POINT = 3
EXIT_INTERNAL = 4

DEFAULT_SEED = 1


def _env_seed() -> int | None:
    raw = os.environ.get("OSCULATA_SEED")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise SpecError(f"OSCULATA_SEED must be an integer, got {raw!r}") from exc


def _resolve_seed(flag_value) -> int:
    if flag_value is not None:
        return flag_value
    env = _env_seed()
    return DEFAULT_SEED if env is None else env


def _load_spec(path: str) -> VarietySpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(f"cannot read spec file {path!r}: {exc}") from exc
    return parse_spec(text)


def _parse_rational_list(raw: str):
    from fractions import Fraction
    import re

    out = []
    for piece in raw.split(","):
        piece = piece.strip()
        if not re.fullmatch(r"-?\d+(/\d+)?", piece):
            raise SpecError(f"coordinates must be exact rationals like -3 or 1/2, got {piece!r}")
        out.append(Fraction(piece))
    return out


def _parse_int_list(raw: str) -> list[int]:
    try:
        return [int(p.strip()) for p in raw.split(",") if p.strip()]
    except ValueError as exc:
        raise SpecError(f"expected a comma-separated integer list, got {raw!r}") from exc


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------


def cmd_gen(args) -> int:
    try:
        if args.kind == "veronese":
            spec = gen_veronese(args.n, args.d)
        elif args.kind == "rnc":
            spec = gen_rnc(args.d)
        elif args.kind == "segre":
            spec = gen_segre(_parse_int_list(args.dims))
        elif args.kind == "projection":
            src = _load_spec(args.spec)
            seed = _resolve_seed(args.seed)
            spec = gen_projection(src, args.target, seed, bound=args.coord_bound)
        elif args.kind == "cone":
            spec = gen_cone(_load_spec(args.spec))
        else:  # pragma: no cover - argparse restricts choices
            raise SpecError(f"unknown generator {args.kind!r}")
    except (SpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = canonical_spec_json(spec)
    digest = spec_digest(spec)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"{digest}  {args.out}")
    else:
        sys.stdout.write(text)
        print(f"digest: {digest}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------


def cmd_analyze(args) -> int:
    try:
        spec = _load_spec(args.specfile)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.max_order < 2:
        print("error: --max-order must be >= 2", file=sys.stderr)
        return EXIT_USAGE
    try:
        seed = _resolve_seed(args.seed)
        sampler = SamplerConfig(seed, args.trials, args.coord_bound)
        chart = args.chart if args.chart == "auto" else int(args.chart)
        point = _parse_rational_list(args.point) if args.point else None
    except (SpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        report = build_invariant_report(
            spec, sampler, max_order=args.max_order, point=point, chart=chart
        )
    except PointError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_POINT
    except InternalInvariantError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    source = "given" if point is not None else "sampled"
    doc = report_to_dict(spec, sampler, report, source, chart)
    if args.format == "json":
        sys.stdout.write(to_json(doc))
    else:
        sys.stdout.write(render_text(doc))
    return EXIT_OK


# ---------------------------------------------------------------------------
# audit
# ---------------------------------------------------------------------------


def _audit_specs(corpus_arg) -> list[tuple[str, VarietySpec | None, str | None]]:
    """(label, spec, error) triples in deterministic input order."""
    if corpus_arg is None:
        return [(name, spec, None) for name, spec in builtin_corpus().items()]
    root = Path(corpus_arg)
    if not root.is_dir():
        raise SpecError(f"corpus directory {corpus_arg!r} does not exist")
    out = []
    for path in sorted(root.glob("*.json")):
        try:
            out.append((path.stem, _load_spec(str(path)), None))
        except SpecError as exc:
            out.append((path.stem, None, str(exc)))
    if not out:
        raise SpecError(f"no .json specs found in {corpus_arg!r}")
    return out


def run_audit(corpus_arg, seeds, max_order, trials=3, coord_bound=10) -> dict:
    specs = _audit_specs(corpus_arg)
    rows = []
    violations = 0
    errors = 0
    for label, spec, error in specs:
        if error is not None:
            rows.append({"variety": label, "error": error})
            errors += 1
            continue
        for seed in seeds:
            sampler = SamplerConfig(seed, trials, coord_bound)
            checks = []
            for k in range(1, max_order - 1):
                v = vanishing_check(spec, k, sampler)
                checks.append(("vanishing", k, v.hypothesis_holds, v.conclusion_holds,
                               v.theorem_respected, v.stable))
            if max_order >= 3:
                t = cor_tm06_check(spec, sampler)
                checks.append(("tangent=secant", 1, t.hypothesis_holds, t.conclusion_holds,
                               t.theorem_respected, t.stable))
            for check, k, hyp, concl, resp, stable in checks:
                rows.append(
                    {
                        "variety": label,
                        "seed": seed,
                        "check": check,
                        "k": k,
                        "hypothesis_holds": hyp,
                        "conclusion_holds": concl,
                        "theorem_respected": resp,
                        "stable": stable,
                    }
                )
                if stable and not resp:
                    violations += 1
    return {
        "tool": {"name": "osculata", "version": "0.1.0"},
        "config": {
            "seeds": list(seeds),
            "trials": trials,
            "coord_bound": coord_bound,
            "max_order": max_order,
        },
        "rows": rows,
        "summary": {
            "rows": len(rows),
            "errors": errors,
            "stable_violations": violations,
        },
    }


def cmd_audit(args) -> int:
    try:
        seeds = _parse_int_list(args.seeds)
        if not seeds:
            raise SpecError("--seeds must list at least one seed")
        if args.max_order < 2:
            raise SpecError("--max-order must be >= 2")
        doc = run_audit(args.corpus, seeds, args.max_order)
    except (SpecError, PointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalInvariantError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(audit_to_text(doc))
    return 1 if doc["summary"]["stable_violations"] else EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="osculata",
        description=(
            "Exact computation of osculating spaces, fundamental forms, and "
            "contact invariants for parametrized projective varieties."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a variety spec file")
    gen_sub = gen.add_subparsers(dest="kind", required=True)
    g_ver = gen_sub.add_parser("veronese", help="degree-d embedding of n-space")
    g_ver.add_argument("--n", type=int, required=True)
    g_ver.add_argument("--d", type=int, required=True)
    g_rnc = gen_sub.add_parser("rnc", help="rational normal curve of degree d")
    g_rnc.add_argument("--d", type=int, required=True)
    g_seg = gen_sub.add_parser("segre", help="Segre product of projective spaces")
    g_seg.add_argument("--dims", required=True, help="factor dimensions, e.g. 1,2")
    g_proj = gen_sub.add_parser("projection", help="seeded random linear projection")
    g_proj.add_argument("--spec", required=True, help="source spec file")
    g_proj.add_argument("--target", type=int, required=True, help="target ambient dimension")
    g_proj.add_argument("--seed", type=int, default=None)
    g_proj.add_argument("--coord-bound", type=int, default=10)
    g_cone = gen_sub.add_parser("cone", help="cone over an existing spec")
    g_cone.add_argument("--spec", required=True, help="base spec file")
    for g in (g_ver, g_rnc, g_seg, g_proj, g_cone):
        g.add_argument("--out", default=None, help="output file (default: stdout)")
    gen.set_defaults(func=cmd_gen)

    analyze = sub.add_parser("analyze", help="full invariant report for one spec")
    analyze.add_argument("specfile")
    point_group = analyze.add_mutually_exclusive_group()
    point_group.add_argument("--point", default=None, help="chart coordinates, e.g. 1,2/3")
    point_group.add_argument(
        "--sample", action="store_true", help="sample the chart point (default)"
    )
    analyze.add_argument("--max-order", type=int, default=4)
    analyze.add_argument("--seed", type=int, default=None)
    analyze.add_argument("--trials", type=int, default=3)
    analyze.add_argument("--coord-bound", type=int, default=10)
    analyze.add_argument("--chart", default="auto", help="'auto' or a coordinate index")
    analyze.add_argument("--format", choices=("json", "text"), default="json")
    analyze.set_defaults(func=cmd_analyze)

    audit = sub.add_parser("audit", help="theorem audit over a spec corpus")
    audit.add_argument(
        "corpus", nargs="?", default=None, help="directory of spec files (default: built-ins)"
    )
    audit.add_argument("--seeds", default="1,2,3", help="comma-separated seed list")
    audit.add_argument("--max-order", type=int, default=4)
    audit.add_argument("--format", choices=("json", "text"), default="json")
    audit.set_defaults(func=cmd_audit)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
