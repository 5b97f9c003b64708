"""Command-line interface.

Every command prints a deterministic text report (key: value lines) and exits
0 when every result on the certified/exact path, 2 when any verdict is
heuristic or undecided, and 1 on errors.  ``--csv`` writes a per-stage table
next to the text verdict.
"""

from __future__ import annotations

import argparse
import csv
import sys
from fractions import Fraction

from .asymptotics import DYADIC_RATIONALS, SequenceAnalyzer, rational_dependence
from .config import RunConfig, apply_overrides, load_config
from .errors import ConfigError, LabError
from .families import SigmaBlockSequence, verify_block_sums
from .polynomials import Polynomial, format_polynomial
from .quadratics import QuadraticIrrational
from .values import ValueEstimate

COMMANDS = (
    "track",
    "e",
    "w",
    "tau",
    "classify",
    "boundary",
    "witness",
    "cic",
    "construct",
    "verify",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lqtlab",
        description="exact finite-horizon invariants of quadratic-transform sequences",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="TOML config file")
    parser.add_argument(
        "--element", action="append", help="polynomial expression (repeatable)"
    )
    parser.add_argument("--normalizer", help="normalizing element (default: first variable)")
    parser.add_argument("--uniformizer", help="uniformizer for non-archimedean boundary pairs")
    parser.add_argument("--horizon", type=int)
    parser.add_argument("--window", type=int)
    parser.add_argument("--guard", type=int)
    parser.add_argument("--sigma", help='quadratic irrational, e.g. "sqrt(8)" or "(1+sqrt(5))/2"')
    parser.add_argument("--family", help="sequence family name")
    parser.add_argument("--blocks", type=int, help="number of blocks to build/verify")
    parser.add_argument("--csv", help="write the per-stage table to this path")
    parser.add_argument("--format", choices=("text", "csv"))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else RunConfig()
        cfg = apply_overrides(cfg, args)
        cfg.validate()
        return _dispatch(args.command, cfg)
    except ConfigError as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return 1
    except LabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def _dispatch(command: str, cfg: RunConfig) -> int:
    if command == "construct":
        return _cmd_construct(cfg)
    if command == "verify":
        return _cmd_verify(cfg)

    seq = cfg.build_sequence()
    analyzer = SequenceAnalyzer(
        seq,
        normalizer=cfg.parsed_normalizer(),
        horizon=cfg.horizon,
        window=cfg.window,
        guard=cfg.guard,
    )
    handler = {
        "track": _cmd_track,
        "e": _cmd_e,
        "w": _cmd_w,
        "tau": _cmd_tau,
        "classify": _cmd_classify,
        "boundary": _cmd_boundary,
        "witness": _cmd_witness,
        "cic": _cmd_cic,
    }[command]
    return handler(cfg, analyzer)


def _exit_code(certified: bool) -> int:
    return 0 if certified else 2


def _print(lines) -> None:
    for line in lines:
        print(line)


def _require_elements(cfg: RunConfig, count: int | None = None):
    elements = cfg.parsed_elements()
    if not elements:
        raise ConfigError("at least one --element is required")
    if count is not None and len(elements) != count:
        raise ConfigError(f"this command needs exactly {count} elements")
    for text, poly in zip(cfg.elements, elements):
        if poly.is_zero():
            raise ConfigError(f"element {text!r} is zero")
    return elements


def _maybe_write_csv(cfg: RunConfig, analyzer: SequenceAnalyzer, elements) -> None:
    if not cfg.output_path and cfg.output_format != "csv":
        return
    target = cfg.output_path
    rows = []
    for text, poly in zip(cfg.elements, elements):
        rows.extend(_track_rows(cfg, analyzer, text, poly))
    header = [
        "element",
        "n",
        "ord_n_a",
        "ord_n_transform",
        "partial_w_series_lo",
        "ratio_num",
        "ratio_den",
    ]
    if target:
        with open(target, "w", newline="") as fp:
            writer = csv.writer(fp)
            writer.writerow(header)
            writer.writerows(rows)
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(header)
        writer.writerows(rows)


def _track_rows(cfg: RunConfig, analyzer: SequenceAnalyzer, label: str, poly: Polynomial):
    tracked = analyzer.tracked(poly)
    norm = analyzer.tracked(analyzer.normalizer)
    partial = Fraction(0)
    has_values = analyzer.seq.has_exact_pivot_values
    rows = []
    for rec in tracked.stages:
        series_cell = ""
        if has_values:
            value = analyzer.seq.pivot_value(rec.stage)
            partial = partial + value * rec.order_of_transform
            series_cell = _cell(partial)
        rows.append(
            [
                label,
                rec.stage,
                rec.order_of_element,
                rec.order_of_transform,
                series_cell,
                rec.order_of_element,
                norm.order_at(rec.stage),
            ]
        )
    return rows


def _cell(value) -> str:
    if isinstance(value, QuadraticIrrational):
        return ValueEstimate.exact(value).midpoint_decimal()
    return str(value)


# -- commands --------------------------------------------------------------------


def _cmd_track(cfg: RunConfig, analyzer: SequenceAnalyzer) -> int:
    elements = _require_elements(cfg)
    lines = [f"command: track", f"horizon: {cfg.horizon}"]
    for text, poly in zip(cfg.elements, elements):
        tracked = analyzer.tracked(poly)
        orders = [rec.order_of_element for rec in tracked.stages]
        transform_orders = tracked.transform_orders()
        lines.append(f"element: {format_polynomial(poly, cfg.var_names)}")
        lines.append(f"  orders: {_preview(orders)}")
        lines.append(f"  transform orders: {_preview(transform_orders)}")
    _print(lines)
    _maybe_write_csv(cfg, analyzer, elements)
    return 0


def _preview(values, head: int = 12) -> str:
    shown = ", ".join(str(v) for v in values[:head])
    return f"[{shown}{', ...' if len(values) > head else ''}]"


def _cmd_e(cfg: RunConfig, analyzer: SequenceAnalyzer) -> int:
    elements = _require_elements(cfg)
    certified = True
    lines = ["command: e", "rule: transform-order-stabilization"]
    for text, poly in zip(cfg.elements, elements):
        result = analyzer.e_value(poly)
        certified = certified and result.certified
        suffix = "certified" if result.certified else f"heuristic(window={result.window})"
        lines.append(f"e({text}) = {result.value} [{suffix}]")
    _print(lines)
    _maybe_write_csv(cfg, analyzer, elements)
    return _exit_code(certified)


def _cmd_w(cfg: RunConfig, analyzer: SequenceAnalyzer) -> int:
    elements = _require_elements(cfg)
    certified = True
    lines = ["command: w", "rule: order-ratio-limit"]
    for text, poly in zip(cfg.elements, elements):
        est = analyzer.w_estimate(poly)
        certified = certified and est.certified
        lines.append(f"w({text}) = {est} [{est.status}]")
    _print(lines)
    _maybe_write_csv(cfg, analyzer, elements)
    return _exit_code(certified)


def _cmd_tau(cfg: RunConfig, analyzer: SequenceAnalyzer) -> int:
    est = analyzer.tau()
    _print(
        [
            "command: tau",
            "rule: pivot-value-series",
            f"tau = {est} [{est.status}]",
        ]
    )
    return _exit_code(est.certified)


def _cmd_classify(cfg: RunConfig, analyzer: SequenceAnalyzer) -> int:
    result = analyzer.classify()
    _print(
        [
            "command: classify",
            "rule: archimedean-dichotomy",
            f"classification: {result.kind}",
            f"certainty: {'certified' if result.certified else 'heuristic'}",
            f"tau = {result.tau} [{result.tau.status}]",
        ]
    )
    return _exit_code(result.certified)


def _cmd_boundary(cfg: RunConfig, analyzer: SequenceAnalyzer) -> int:
    elements = _require_elements(cfg)
    cls = analyzer.classify()
    lines = ["command: boundary"]
    certified = cls.certified
    if cls.is_non_archimedean():
        uniformizer = cfg.parsed_uniformizer()
        if uniformizer is None:
            raise ConfigError("non-archimedean boundary pairs need --uniformizer")
        lines.append("rule: boundary-composite-pair")
        for text, poly in zip(cfg.elements, elements):
            bv = analyzer.boundary_value_nonarch(poly, uniformizer)
            certified = certified and bv.second.certified
            lines.append(f"v({text}) = {bv}")
    else:
        lines.append("rule: boundary-lex-pair")
        if len(elements) == 2:
            bv = analyzer.boundary_value_arch(elements[0], elements[1])
            certified = certified and bv.first.certified
            lines.append(f"v({cfg.elements[0]} / {cfg.elements[1]}) = {bv}")
        else:
            for text, poly in zip(cfg.elements, elements):
                bv = analyzer.boundary_value_arch(poly)
                certified = certified and bv.first.certified
                lines.append(f"v({text}) = {bv}")
    _print(lines)
    return _exit_code(certified)


def _cmd_witness(cfg: RunConfig, analyzer: SequenceAnalyzer) -> int:
    elements = _require_elements(cfg, count=2)
    a, y = elements
    verdict = analyzer.almost_integral_witness(a, y)
    lines = [
        "command: witness",
        "rule: almost-integral-equal-w",
        f"witness({cfg.elements[0]}, {cfg.elements[1]}): {'true' if verdict else 'false'}",
    ]
    if verdict:
        lines.append(
            f"quotient ({cfg.elements[0]})/({cfg.elements[1]}) is almost integral and lies outside the union"
        )
        lines.append("conclusion: the union is not completely integrally closed")
    _print(lines)
    exact_route = analyzer.w_exact(a) is not None and analyzer.w_exact(y) is not None
    return _exit_code(exact_route)


def _cmd_cic(cfg: RunConfig, analyzer: SequenceAnalyzer) -> int:
    cls = analyzer.classify()
    lines = ["command: cic", "rule: tau-rational-dependence"]
    if cls.is_non_archimedean():
        lines.append("classification: non-archimedean")
        lines.append("verdict: not completely integrally closed (the hull is the closure)")
        _print(lines)
        return _exit_code(cls.certified)
    tau = analyzer.tau()
    group = analyzer.seq.unit_value_group()
    if group is None:
        lines.append("verdict: undecided (no value-group description for this sequence)")
        _print(lines)
        return 2
    group_label = "dyadic rationals" if group == DYADIC_RATIONALS else "generators " + ", ".join(
        str(g) for g in group
    )
    dep = rational_dependence(tau, group)
    lines.append(f"tau = {tau} [{tau.status}]")
    lines.append(f"value group: {group_label}")
    if dep.kind == "independent":
        lines.append("dependence: independent")
        lines.append("verdict: completely integrally closed")
        _print(lines)
        return _exit_code(tau.certified)
    if dep.kind == "dependent":
        lines.append(f"dependence: dependent (least multiple {dep.multiple})")
        lines.append("verdict: not completely integrally closed")
        _print(lines)
        return _exit_code(tau.certified)
    lines.append("dependence: unknown")
    lines.append("verdict: undecided")
    _print(lines)
    return 2


def _cmd_construct(cfg: RunConfig) -> int:
    seq = cfg.build_sequence()
    if isinstance(seq, SigmaBlockSequence):
        seq.ensure_blocks(cfg.blocks)
        upto = seq.block_record(cfg.blocks - 1).end
    else:
        upto = cfg.horizon
    rows = []
    for n in range(upto):
        mv = seq.move(n)
        shifts = ";".join(
            f"{cfg.var_names[i]}={s}" for i, s in enumerate(mv.shifts) if s != 0
        )
        value = _cell(seq.pivot_value(n)) if seq.has_exact_pivot_values else ""
        rows.append([n, cfg.var_names[mv.pivot], shifts, value])
    header = ["n", "pivot", "shifts", "pivot_value"]
    if cfg.output_path:
        with open(cfg.output_path, "w", newline="") as fp:
            writer = csv.writer(fp)
            writer.writerow(header)
            writer.writerows(rows)
        print(f"wrote {len(rows)} stages to {cfg.output_path}")
    elif cfg.output_format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(header)
        writer.writerows(rows)
    else:
        print("command: construct")
        print(f"stages: {len(rows)}")
        for row in rows:
            print(f"  n={row[0]} pivot={row[1]} shifts=({row[2]}) value={row[3]}")
    return 0


def _cmd_verify(cfg: RunConfig) -> int:
    seq = cfg.build_sequence()
    if not isinstance(seq, SigmaBlockSequence):
        raise ConfigError("verify requires a sigma-driven sequence kind")
    report = verify_block_sums(seq, cfg.blocks)
    print("command: verify")
    print("rule: block-sum-identities")
    _print(report.lines())
    if cfg.output_path:
        with open(cfg.output_path, "w", newline="") as fp:
            writer = csv.writer(fp)
            writer.writerow(
                ["block", "d", "e", "floor", "sub_block_sum", "block_sum", "exit_value", "defect_bound", "passed"]
            )
            for check in report.checks:
                writer.writerow(
                    [
                        check.index,
                        check.d,
                        check.e,
                        check.floor,
                        check.sub_block_sum,
                        check.block_sum,
                        check.exit_value,
                        check.defect_upper,
                        "pass" if check.passed else "fail",
                    ]
                )
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
