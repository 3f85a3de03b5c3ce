"""Report documents: canonical JSON serialization and the derived text view.

JSON is the authoritative format.  Keys are emitted in a fixed order,
every rational value is serialized as an exact "numerator/denominator"
string (never a float), multi-indices appear as integer arrays in the
fixed graded order, and identical inputs produce byte-identical output.
The text format is rendered from the JSON dictionary, so the two always
carry the same numeric content.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .forms import FormSystem, form_rank
from .invariants import InvariantReport, Sampled, SamplerConfig
from .variety import VarietySpec, poly_to_string, spec_digest

TOOL_NAME = "osculata"
TOOL_VERSION = "0.1.0"


def fmt_rational(x) -> str:
    q = Fraction(x)
    return f"{q.numerator}/{q.denominator}"


def _vector(v) -> list[str]:
    return [fmt_rational(c) for c in v]


def _sampled(s: Sampled) -> dict:
    return {
        "value": s.value,
        "trials": list(s.trial_values),
        "stable": s.stable,
    }


def _form_system(fs: FormSystem) -> dict:
    names = [f"S{i + 1}" for i in range(fs.nvars)]
    return {
        "order": fs.degree,
        "rank": form_rank(fs),
        "zero": fs.is_zero,
        "forms": [poly_to_string(f, names) for f in fs.forms],
        "annihilators": [_vector(a) for a in fs.annihilators],
    }


def report_to_dict(
    spec: VarietySpec,
    sampler: SamplerConfig,
    report: InvariantReport,
    point_source: str,
    chart,
) -> dict:
    """Assemble the canonical report dictionary (fixed key order)."""
    doc = {
        "tool": {"name": TOOL_NAME, "version": TOOL_VERSION},
        "spec": {
            "name": spec.name,
            "digest": spec_digest(spec),
            "params": list(spec.param_names),
            "ambient": spec.ambient_dim,
            "dim": spec.nparams,
        },
        "config": {
            "seed": sampler.seed,
            "trials": sampler.trials,
            "coord_bound": sampler.coord_bound,
            "max_order": report.max_order,
            "chart": str(chart),
            "point_source": point_source,
        },
        "point": {
            "coords": _vector(report.point.coords),
            "chart_index": report.point.chart_index,
        },
        "tower": {
            "dims": list(report.dims),
            "conormal_ranks": list(report.conormal_ranks),
            "span": (
                None
                if report.span is None
                else {
                    "stable_order": report.span.order,
                    "span_corank": report.span.span_corank,
                    "span_dim": report.span.span_dim,
                    "degenerate": report.span.span_corank > 0,
                    "annihilator_basis": [_vector(v) for v in report.span.annihilator_basis],
                }
            ),
        },
        "forms": [_form_system(fs) for fs in report.form_systems],
        "theta": {str(k): _sampled(s) for k, s in sorted(report.theta.items())},
        "delta": {str(k): _sampled(s) for k, s in sorted(report.delta.items())},
        "tangent": {
            str(k): {
                "osc_dim": tr.osc_dim,
                "rank": _sampled(tr.rank),
                "dim": _sampled(tr.dim),
                "defect": tr.defect,
            }
            for k, tr in sorted(report.tangent.items())
        },
        "secant": {
            "dim": _sampled(report.secant.dim_sec),
            "delta_x": report.secant.delta_x,
            "delta_1": _sampled(report.secant.delta_1),
        },
        "verdicts": {
            "vanishing": {
                str(k): {
                    "osc_dim": v.osc_dim,
                    "theta": _sampled(v.theta),
                    "delta": _sampled(v.delta),
                    "osc_dim_k1": v.osc_dim_k1,
                    "osc_dim_k2": v.osc_dim_k2,
                    "hypothesis_holds": v.hypothesis_holds,
                    "conclusion_holds": v.conclusion_holds,
                    "theorem_respected": v.theorem_respected,
                    "stable": v.stable,
                }
                for k, v in sorted(report.vanishing.items())
            },
            "tangent_equals_secant": (
                None
                if report.tm06 is None
                else {
                    "dim_tau": _sampled(report.tm06.dim_tau),
                    "dim_sec": _sampled(report.tm06.dim_sec),
                    "osc_dim_2": report.tm06.osc_dim_2,
                    "osc_dim_3": report.tm06.osc_dim_3,
                    "hypothesis_holds": report.tm06.hypothesis_holds,
                    "conclusion_holds": report.tm06.conclusion_holds,
                    "theorem_respected": report.tm06.theorem_respected,
                    "stable": report.tm06.stable,
                }
            ),
            "second_form_bound": {
                "rank_ii": report.tm07.rank_ii,
                "bound": report.tm07.bound,
                "satisfied": report.tm07.satisfied,
                "advisory": report.tm07.advisory,
                "dim_tau": _sampled(report.tm07.dim_tau),
                "stable": report.tm07.stable,
            },
            "tangent_dim_consistency": {
                "rank_map": _sampled(report.p09.rank_map),
                "rank_polarized": _sampled(report.p09.rank_polarized),
                "consistent": report.p09.consistent,
                "stable": report.p09.stable,
            },
        },
        "warnings": list(report.warnings),
    }
    return doc


def to_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _flag(value: bool) -> str:
    return "yes" if value else "no"


def _sampled_line(entry: dict) -> str:
    tag = "stable" if entry["stable"] else f"UNSTABLE trials={entry['trials']}"
    return f"{entry['value']} ({tag})"


def render_text(doc: dict) -> str:
    """Human-readable view carrying the same numbers as the JSON document."""
    lines: list[str] = []
    add = lines.append
    add(f"{doc['tool']['name']} analyze report (version {doc['tool']['version']})")
    add("=" * 60)
    spec = doc["spec"]
    add(f"spec:   {spec['name']}  (dim {spec['dim']}, ambient P^{spec['ambient']})")
    add(f"digest: {spec['digest']}")
    cfg = doc["config"]
    add(
        "config: seed={seed} trials={trials} coord_bound={coord_bound} "
        "max_order={max_order} chart={chart} point={point_source}".format(**cfg)
    )
    pt = doc["point"]
    add(f"point:  ({', '.join(pt['coords'])})  chart index {pt['chart_index']}")
    add("")
    tower = doc["tower"]
    add(f"osculating dims:  {tuple(tower['dims'])}")
    add(f"conormal ranks:   {tuple(tower['conormal_ranks'])}")
    span = tower["span"]
    if span is None:
        add("linear span:      not detected within max_order")
    elif span["degenerate"]:
        add(
            f"linear span:      stabilized at order {span['stable_order']}; "
            f"corank {span['span_corank']}, contained in a P^{span['span_dim']}"
        )
    else:
        add(
            f"linear span:      stabilized at order {span['stable_order']}; "
            "corank 0 (spans the ambient space)"
        )
    add("")
    add("fundamental form systems")
    for fs in doc["forms"]:
        shown = [f for f in fs["forms"] if f != "0"] or ["0"]
        add(f"  order {fs['order']}: rank {fs['rank']}  {{{'; '.join(shown)}}}")
    add("")
    add("invariants")
    for k, s in doc["theta"].items():
        add(f"  theta[{k}] = {_sampled_line(s)}")
    for k, s in doc["delta"].items():
        add(f"  delta[{k}] = {_sampled_line(s)}")
    for k, tr in doc["tangent"].items():
        add(
            f"  tangent variety k={k}: dim = {_sampled_line(tr['dim'])}, "
            f"osc_dim = {tr['osc_dim']}, rank = {_sampled_line(tr['rank'])}, "
            f"defect = {tr['defect']}"
        )
    sec = doc["secant"]
    add(
        f"  secant variety: dim = {_sampled_line(sec['dim'])}, "
        f"delta_X = {sec['delta_x']}, delta_1 = {_sampled_line(sec['delta_1'])}"
    )
    add("")
    add("verdicts")
    for k, v in doc["verdicts"]["vanishing"].items():
        add(
            f"  vanishing k={k}: osc_dim={v['osc_dim']} "
            f"theta={v['theta']['value']} delta={v['delta']['value']} "
            f"t[k+1]={v['osc_dim_k1']} t[k+2]={v['osc_dim_k2']} "
            f"hypothesis={_flag(v['hypothesis_holds'])} "
            f"conclusion={_flag(v['conclusion_holds'])} "
            f"respected={_flag(v['theorem_respected'])} stable={_flag(v['stable'])}"
        )
    tm06 = doc["verdicts"]["tangent_equals_secant"]
    if tm06 is not None:
        add(
            f"  tangent=secant: dim_tau={tm06['dim_tau']['value']} "
            f"dim_sec={tm06['dim_sec']['value']} t2={tm06['osc_dim_2']} "
            f"t3={tm06['osc_dim_3']} hypothesis={_flag(tm06['hypothesis_holds'])} "
            f"conclusion={_flag(tm06['conclusion_holds'])} "
            f"respected={_flag(tm06['theorem_respected'])} stable={_flag(tm06['stable'])}"
        )
    tm07 = doc["verdicts"]["second_form_bound"]
    add(
        f"  second-form bound: rank_ii={tm07['rank_ii']} bound={tm07['bound']} "
        f"satisfied={_flag(tm07['satisfied'])} advisory={_flag(tm07['advisory'])} "
        f"dim_tau={tm07['dim_tau']['value']} stable={_flag(tm07['stable'])}"
    )
    p09 = doc["verdicts"]["tangent_dim_consistency"]
    add(
        f"  tangent-dim consistency: rank_map={p09['rank_map']['value']} "
        f"rank_polarized={p09['rank_polarized']['value']} "
        f"consistent={_flag(p09['consistent'])} stable={_flag(p09['stable'])}"
    )
    add("")
    if doc["warnings"]:
        add("warnings")
        for w in doc["warnings"]:
            add(f"  - {w}")
    else:
        add("warnings: none")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Audit summaries
# ---------------------------------------------------------------------------


def audit_to_text(doc: dict) -> str:
    header = (
        f"{'variety':<28} {'seed':>4}  {'check':<16} {'k':>2}  "
        f"{'hypothesis':<10} {'conclusion':<10} {'respected':<9} {'stable':<6}"
    )
    lines = [header, "-" * len(header)]
    for row in doc["rows"]:
        if row.get("error"):
            lines.append(f"{row['variety']:<28} {'-':>4}  error: {row['error']}")
            continue
        lines.append(
            f"{row['variety']:<28} {row['seed']:>4}  {row['check']:<16} {row['k']:>2}  "
            f"{_flag(row['hypothesis_holds']):<10} {_flag(row['conclusion_holds']):<10} "
            f"{_flag(row['theorem_respected']):<9} {_flag(row['stable']):<6}"
        )
    lines.append("")
    lines.append(
        f"summary: {doc['summary']['rows']} rows, "
        f"{doc['summary']['errors']} errors, "
        f"{doc['summary']['stable_violations']} stable violations"
    )
    return "\n".join(lines) + "\n"
