"""Subcommand dispatch.

Every handler returns a JSON-native payload dict and `render` turns a payload into
the pretty text. `render` reads nothing but the payload, so `render(json.loads(
json.dumps(p)))` is the same text as `render(p)`.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable

from . import bordism, chiexpr, forms, jets, milnor, reference, ricci
from .config import Config, load_run_config, resolve_run_config
from .errors import NotTabulated, ParseError
from .exactnum import bernoulli, format_rational
from .genus import format_over_denominator, l_polynomial, l_series
from .symmpoly import Partition, s_polynomial
from .trace import TraceLogger


logger = logging.getLogger("exotica.commands")

Payload = dict[str, Any]

RANKS_RE = re.compile(r"^\s*\d+(?:\s*,\s*\d+)*\s*$")
VERIFY_SCOPES = ("tables", "properties", "all")


def help_text() -> str:
    return (
        "Commands:\n"
        "bernoulli N\n"
        "spoly I...\n"
        "lpoly K\n"
        "lseries N\n"
        "signature FILE|JSON\n"
        "arf FILE|JSON\n"
        "e8 [--printed]\n"
        "milnor K\n"
        "cp-signature K\n"
        "chi EXPR\n"
        "bordism N [--ranks r0,r1,...]\n"
        "theta N [--annotate]\n"
        "groups N\n"
        "bp-order M\n"
        "lgroup N\n"
        "jetdims N SMAX\n"
        "ricci-run CONFIG\n"
        "verify [tables|properties|all]\n"
    )


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    payload: Payload


@dataclass(frozen=True)
class Context:
    config: Config
    tracer: TraceLogger | None = None


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise ParseError(message)


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected an integer >= 0, got {value}")
    return value


def _integer(text: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc


def _ranks(text: str) -> list[int]:
    if not RANKS_RE.match(text):
        raise argparse.ArgumentTypeError(f"expected comma-separated ranks, got {text!r}")
    return [int(part) for part in text.split(",")]


def _global_flags(parser: argparse.ArgumentParser, default: Any) -> None:
    parser.add_argument("--json", action="store_true", default=False if default is None else default)
    parser.add_argument("--log-level", default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="exotica", add_help=False)
    _global_flags(parser, None)
    # Subcommands accept the global flags too; SUPPRESS keeps them from resetting the top-level values.
    common = _ArgumentParser(add_help=False)
    _global_flags(common, argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", parser_class=_ArgumentParser)

    def add(name: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], add_help=False)

    add("bernoulli").add_argument("n", type=_non_negative)
    add("spoly").add_argument("parts", type=_non_negative, nargs="*")
    add("lpoly").add_argument("k", type=_integer)
    add("lseries").add_argument("order", type=_non_negative)
    add("signature").add_argument("matrix")
    add("arf").add_argument("form")
    e8 = add("e8")
    e8.add_argument("--printed", action="store_true")
    add("milnor").add_argument("k", type=_integer)
    add("cp-signature").add_argument("k", type=_integer)
    add("chi").add_argument("expr")
    bord = add("bordism")
    bord.add_argument("n", type=_integer)
    bord.add_argument("--ranks", type=_ranks, default=None)
    th = add("theta")
    th.add_argument("n", type=_integer)
    th.add_argument("--annotate", action="store_true")
    add("groups").add_argument("n", type=_integer)
    add("bp-order").add_argument("m", type=_integer)
    add("lgroup").add_argument("n", type=_integer)
    jd = add("jetdims")
    jd.add_argument("n", type=_integer)
    jd.add_argument("smax", type=_integer)
    add("ricci-run").add_argument("config")
    add("verify").add_argument("scope", nargs="?", default="all", choices=VERIFY_SCOPES)
    return parser


def parse_args(argv: list[str]) -> argparse.Namespace:
    args = build_parser().parse_args(argv)
    if not args.command:
        raise ParseError("missing subcommand")
    return args


def _load_json(source: str, what: str) -> Any:
    text = source
    if not source.lstrip().startswith(("{", "[")):
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read {what} file {source}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{what} is not valid JSON: {exc}") from exc


def _form_payload(command: str, form: forms.IntegerSymmetricForm) -> Payload:
    inertia = forms.inertia(form)
    return {
        "command": command,
        "matrix": form.to_json(),
        "rank": form.rank,
        "signature": inertia.signature,
        "inertia": [inertia.positive, inertia.negative, inertia.nullity],
        "determinant": forms.determinant(form),
        "even": forms.is_even(form),
        "nonsingular": forms.is_nonsingular(form),
    }


def cmd_bernoulli(args: argparse.Namespace, ctx: Context) -> Payload:
    return {"command": "bernoulli", "n": args.n, "value": format_rational(bernoulli(args.n))}


def cmd_spoly(args: argparse.Namespace, ctx: Context) -> Payload:
    partition = Partition.of(*args.parts)
    return {"command": "spoly", "partition": list(partition), "polynomial": str(s_polynomial(partition))}


def cmd_lpoly(args: argparse.Namespace, ctx: Context) -> Payload:
    return {"command": "lpoly", "k": args.k, "polynomial": format_over_denominator(l_polynomial(args.k))}


def cmd_lseries(args: argparse.Namespace, ctx: Context) -> Payload:
    series = l_series(args.order)
    return {
        "command": "lseries",
        "order": args.order,
        "coefficients": [format_rational(c) for c in series.coefficients],
        "series": str(series),
    }


def cmd_signature(args: argparse.Namespace, ctx: Context) -> Payload:
    return _form_payload("signature", forms.IntegerSymmetricForm(forms.load_matrix(args.matrix)))


def cmd_arf(args: argparse.Namespace, ctx: Context) -> Payload:
    q = forms.Z2QuadraticForm.from_json(_load_json(args.form, "quadratic form"))
    return {"command": "arf", "form": q.to_json(), "dim": q.dim, "arf": forms.arf(q)}


def cmd_e8(args: argparse.Namespace, ctx: Context) -> Payload:
    form = forms.e8_form_as_printed() if args.printed else forms.e8_form()
    payload = _form_payload("e8", form)
    payload["printed"] = args.printed
    return payload


def cmd_milnor(args: argparse.Namespace, ctx: Context) -> Payload:
    payload = {"command": "milnor", **milnor.milnor_detect(args.k).to_json()}
    payload["constraint"] = milnor.signature_constraint(args.k)
    return payload


def cmd_cp_signature(args: argparse.Namespace, ctx: Context) -> Payload:
    pn = milnor.cp_pontrjagin_numbers(args.k)
    terms, denominator = milnor.hirzebruch_terms(pn)
    return {
        "command": "cp-signature",
        "k": args.k,
        "pontrjagin": milnor.pontrjagin_cp(2 * args.k),
        "terms": terms,
        "denominator": denominator,
        "signature": format_rational(milnor.hirzebruch_signature(pn)),
    }


def cmd_chi(args: argparse.Namespace, ctx: Context) -> Payload:
    return {"command": "chi", "expr": args.expr, "chi": chiexpr.evaluate(args.expr)}


def cmd_bordism(args: argparse.Namespace, ctx: Context) -> Payload:
    if args.ranks is not None:
        if len(args.ranks) != args.n + 1:
            raise ParseError(f"--ranks needs {args.n + 1} values for n={args.n}, got {len(args.ranks)}")
        group = bordism.singular_integral_bordism(args.ranks)
    else:
        group = bordism.homotopy_sphere_bordism(args.n)
    return {"command": "bordism", "n": args.n, "ranks": args.ranks, "group": group.to_json()}


def cmd_theta(args: argparse.Namespace, ctx: Context) -> Payload:
    return {
        "command": "theta",
        "n": args.n,
        "group": bordism.theta(args.n).to_json(),
        "annotations": bordism.annotations(n=args.n) if args.annotate else [],
    }


def cmd_groups(args: argparse.Namespace, ctx: Context) -> Payload:
    column = bordism.groups_column(args.n)
    rows = [
        {"row": row, "label": reference.ROW_LABELS[row], "group": g.to_json() if g else None}
        for row, g in column.items()
    ]
    checks: dict[str, bool | None] = {}
    for name, check in (
        ("exactness", bordism.exactness_check),
        ("injection", bordism.injection_check),
        ("stem", bordism.stem_exactness_check),
    ):
        try:
            checks[name] = check(args.n)
        except NotTabulated:
            checks[name] = None
    return {"command": "groups", "n": args.n, "rows": rows, "checks": checks}


def cmd_bp_order(args: argparse.Namespace, ctx: Context) -> Payload:
    return {"command": "bp-order", "m": args.m, "order": bordism.bp_order(args.m)}


def cmd_lgroup(args: argparse.Namespace, ctx: Context) -> Payload:
    return {"command": "lgroup", "n": args.n, "group": bordism.l_group(args.n).to_json()}


def cmd_jetdims(args: argparse.Namespace, ctx: Context) -> Payload:
    return {
        "command": "jetdims",
        "n": args.n,
        "rows": [row.to_json() for row in jets.jet_table(args.n, args.smax)],
        "applicable": jets.applicability_check(args.n),
    }


def cmd_ricci_run(args: argparse.Namespace, ctx: Context) -> Payload:
    path = resolve_run_config(args.config, ctx.config)
    run_config = load_run_config(path)
    if run_config.output:
        output_dir = Path(run_config.output).expanduser()
    else:
        stamp = datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%SZ")
        output_dir = Path(ctx.config.output_dir) / f"{path.stem}-{stamp}"
    result = ricci.run_flow(run_config, output_dir, ctx.tracer)
    last = result.records[-1]
    return {
        "command": "ricci-run",
        "config": str(path),
        "initial": str(run_config.initial),
        "n": run_config.n,
        "m": run_config.m,
        "steps": run_config.steps,
        "dt": result.dt,
        "csv": str(result.csv_path),
        "dump": str(result.dump_path) if result.dump_path else None,
        "final": {
            "max_abs_S": last.max_abs_s,
            "min_det_g": last.min_det_g,
            "residual_norm": last.residual_norm,
            "perturbation_norm": ricci.perturbation_norm(result.final),
        },
    }


def cmd_verify(args: argparse.Namespace, ctx: Context) -> Payload:
    from .verify import run_verify

    return run_verify(args.scope, ctx.tracer)


Handler = Callable[[argparse.Namespace, Context], Payload]

COMMANDS: dict[str, Handler] = {
    "bernoulli": cmd_bernoulli,
    "spoly": cmd_spoly,
    "lpoly": cmd_lpoly,
    "lseries": cmd_lseries,
    "signature": cmd_signature,
    "arf": cmd_arf,
    "e8": cmd_e8,
    "milnor": cmd_milnor,
    "cp-signature": cmd_cp_signature,
    "chi": cmd_chi,
    "bordism": cmd_bordism,
    "theta": cmd_theta,
    "groups": cmd_groups,
    "bp-order": cmd_bp_order,
    "lgroup": cmd_lgroup,
    "jetdims": cmd_jetdims,
    "ricci-run": cmd_ricci_run,
    "verify": cmd_verify,
}


def execute(args: argparse.Namespace, ctx: Context) -> CommandResult:
    handler = COMMANDS[args.command]
    logger.debug("dispatching %s", args.command)
    payload = handler(args, ctx)
    exit_code = 0 if payload.get("passed", True) else 1
    return CommandResult(exit_code=exit_code, payload=payload)


def _yes_no(flag: bool | None) -> str:
    if flag is None:
        return "n/a"
    return "yes" if flag else "no"


def _render_form(p: Payload) -> str:
    width = max((len(str(x)) for row in p["matrix"] for x in row), default=1)
    lines = [" ".join(str(x).rjust(width) for x in row) for row in p["matrix"]]
    if p.get("printed"):
        lines.append("(as printed)")
    positive, negative, nullity = p["inertia"]
    lines.append(f"signature: {p['signature']}")
    lines.append(f"rank: {p['rank']}  inertia: ({positive}, {negative}, {nullity})")
    lines.append(f"determinant: {p['determinant']}")
    lines.append(f"even: {_yes_no(p['even'])}  nonsingular: {_yes_no(p['nonsingular'])}")
    return "\n".join(lines)


def _render_cp_signature(p: Payload) -> str:
    numerator = str(p["terms"][0])
    for term in p["terms"][1:]:
        numerator += f" - {-term}" if term < 0 else f" + {term}"
    classes = ", ".join(str(c) for c in p["pontrjagin"])
    return f"p(CP^{2 * p['k']}) = ({classes})\n({numerator})/{p['denominator']} = {p['signature']}"


def _render_groups(p: Payload) -> str:
    width = max(len(row["label"]) for row in p["rows"])
    lines = [f"n = {p['n']}"]
    for row in p["rows"]:
        value = bordism.format_group(row["group"]) if row["group"] is not None else "-"
        lines.append(f"{row['label'].ljust(width)}  {value}")
    checks = p["checks"]
    lines.append(
        f"exactness: {_yes_no(checks['exactness'])}  injection: {_yes_no(checks['injection'])}"
        f"  stem: {_yes_no(checks['stem'])}"
    )
    return "\n".join(lines)


def _render_jetdims(p: Payload) -> str:
    header = ("s", "dim_jet", "dim_rf", "dim_symbol", "recurrence")
    rows = [
        (str(r["s"]), str(r["dim_jet"]), str(r["dim_rf"]), str(r["dim_symbol"]), _yes_no(r["recurrence_ok"]))
        for r in p["rows"]
    ]
    widths = [max(len(header[i]), *(len(row[i]) for row in rows)) for i in range(len(header))]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines.extend("  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in rows)
    lines.append(f"applicable (dim RF > 2(n+1)+1): {_yes_no(p['applicable'])}")
    return "\n".join(lines)


def _render_ricci(p: Payload) -> str:
    final = p["final"]
    lines = [
        f"ricci flow n={p['n']} m={p['m']} steps={p['steps']} dt={p['dt']:.6g} initial={p['initial']}",
        f"max|S| = {final['max_abs_S']:.6e}",
        f"min det g = {final['min_det_g']:.12f}",
        f"residual norm = {final['residual_norm']:.3e}",
        f"perturbation norm = {final['perturbation_norm']:.6e}",
        f"time series: {p['csv']}",
    ]
    if p["dump"]:
        lines.append(f"field dump: {p['dump']}")
    return "\n".join(lines)


def _render_theta(p: Payload) -> str:
    return "\n".join([bordism.format_group(p["group"]), *p["annotations"]])


def _render_bordism(p: Payload) -> str:
    return bordism.format_group(p["group"])


def render_verify(p: Payload) -> str:
    """Two-column printed/computed report, one line per check."""
    width = max((len(c["name"]) for c in p["checks"]), default=0)
    lines: list[str] = []
    for check in p["checks"]:
        status = "PASS" if check["ok"] else "FAIL"
        line = f"{status}  {check['name'].ljust(width)}  printed: {check['printed']}  computed: {check['computed']}"
        if check.get("note"):
            line += f"  ({check['note']})"
        lines.append(line)
    for note in p.get("annotations", []):
        lines.append(f"note  {note}")
    failed = sum(1 for c in p["checks"] if not c["ok"])
    covered = ", ".join(p["covered"])
    if failed:
        lines.append(f"{failed} of {len(p['checks'])} checks failed ({p['scope']}: {covered})")
    else:
        lines.append(f"all {len(p['checks'])} checks matched ({p['scope']}: {covered})")
    return "\n".join(lines)


RENDERERS: dict[str, Callable[[Payload], str]] = {
    "bernoulli": lambda p: p["value"],
    "spoly": lambda p: p["polynomial"],
    "lpoly": lambda p: p["polynomial"],
    "lseries": lambda p: p["series"],
    "signature": _render_form,
    "arf": lambda p: str(p["arf"]),
    "e8": _render_form,
    "milnor": lambda p: f"{p['verdict']}\np1 = {p['p1']}\np2 = {p['p2']}\n{p['constraint']}",
    "cp-signature": _render_cp_signature,
    "chi": lambda p: str(p["chi"]),
    "bordism": _render_bordism,
    "theta": _render_theta,
    "groups": _render_groups,
    "bp-order": lambda p: str(p["order"]),
    "lgroup": lambda p: bordism.format_group(p["group"]),
    "jetdims": _render_jetdims,
    "ricci-run": _render_ricci,
    "verify": render_verify,
}


def render(payload: Payload) -> str:
    return RENDERERS[payload["command"]](payload)
