"""Command-line client for the inference toolkit.

Thin wrapper over the same handler layer the HTTP service uses: parse
flags, build the request model, call the handler, print text or JSON.
Exit codes: 0 success, 1 domain/data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .errors import WeibullRecordsError
from .regions import BOUNDARY_CSV_HEADER
from .service import handlers
from .service import schemas as sm
from .simulate import SimulationConfig, write_report_csv

SEED_ENV_VAR = "WEIBULL_RECORDS_SEED"


def _default_seed() -> int:
    env = os.environ.get(SEED_ENV_VAR)
    return int(env) if env else sm.DEFAULT_SEED


def _parse_numbers(text: str) -> list[float]:
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise WeibullRecordsError("no numeric values supplied")
    try:
        return [float(t) for t in tokens]
    except ValueError as exc:
        raise WeibullRecordsError(f"non-numeric value in input: {exc}") from exc


def _read_data(args) -> list[float]:
    if args.data is not None:
        return _parse_numbers(args.data)
    if args.input is not None:
        try:
            text = Path(args.input).read_text(encoding="utf-8")
        except OSError as exc:
            raise WeibullRecordsError(f"cannot read {args.input}: {exc}") from exc
        return _parse_numbers(text)
    raise WeibullRecordsError("supply data with --data or --input")


def _payload_fields(args) -> dict:
    data = _read_data(args)
    return {"raw": data} if args.raw else {"records": data}


def _add_data_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--data", help="inline comma- or space-separated values")
    parser.add_argument("--input", help="path to a file of newline- or comma-separated values")
    parser.add_argument("--raw", action="store_true",
                        help="treat input as a raw sequence and extract its records first")


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="print the JSON document instead of text")
    parser.add_argument("--out", help="also write the output to this file (UTF-8)")


def _add_sided_flags(parser: argparse.ArgumentParser, default: str) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--one-sided", dest="alternative", action="store_const",
                       const="one-sided-upper", help="one-sided upper alternative")
    group.add_argument("--two-sided", dest="alternative", action="store_const",
                       const="two-sided", help="two-sided alternative")
    parser.set_defaults(alternative=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weibull-records",
        description="Inference on Weibull parameters from upper record values.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="extract upper records from a raw sequence")
    _add_data_flags(p)
    _add_common_flags(p)

    p = sub.add_parser("fit", help="maximum likelihood estimates of shape and scale")
    _add_data_flags(p)
    _add_common_flags(p)

    p = sub.add_parser("ci-shape", help="confidence interval for the shape parameter")
    _add_data_flags(p)
    _add_common_flags(p)
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--method", choices=["exact", "wu"], default="exact")
    p.add_argument("--wstar-reps", type=int, default=100_000,
                   help="Monte Carlo size of the W* reference table (wu method)")
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("test-shape", help="exact test about the shape parameter")
    _add_data_flags(p)
    _add_common_flags(p)
    p.add_argument("--beta0", type=float, required=True, help="hypothesized shape value")
    p.add_argument("--level", type=float, default=0.05)
    _add_sided_flags(p, default="two-sided")

    p = sub.add_parser("ci-scale", help="generalized confidence interval for the scale parameter")
    _add_data_flags(p)
    _add_common_flags(p)
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--M", type=int, default=10_000, help="number of pivotal draws")
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("test-scale", help="generalized p-value test about the scale parameter")
    _add_data_flags(p)
    _add_common_flags(p)
    p.add_argument("--alpha0", type=float, required=True, help="hypothesized scale value")
    p.add_argument("--M", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=None)
    _add_sided_flags(p, default="one-sided-upper")

    p = sub.add_parser("region", help="joint confidence region bounds for (scale, shape)")
    _add_data_flags(p)
    _add_common_flags(p)
    p.add_argument("--method", choices=["b", "aj"], default="b")
    p.add_argument("--j", type=int, default=None, help="index for the aj family")
    p.add_argument("--level", type=float, default=0.95)

    p = sub.add_parser("area", help="area of a joint confidence region")
    _add_data_flags(p)
    _add_common_flags(p)
    p.add_argument("--method", choices=["b", "aj"], default="b")
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--tolerance", type=float, default=1e-4)

    p = sub.add_parser("boundary", help="emit region boundary curves as CSV")
    _add_data_flags(p)
    _add_common_flags(p)
    p.add_argument("--method", choices=["b", "aj"], default="b")
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--points", type=int, default=200)

    p = sub.add_parser("simulate", help="run a coverage/length/area simulation study")
    _add_common_flags(p)
    p.add_argument("--table", type=int, choices=[1, 2, 3], required=True)
    p.add_argument("--config", help="JSON config file mirroring SimulationConfig")
    p.add_argument("--reps", type=int, default=None)
    p.add_argument("--M", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--level", type=float, default=None)
    p.add_argument("--parallelism", type=int, default=None)
    p.add_argument("--method", default=None,
                   help="comma-separated method tags (defaults per table)")

    return parser


def _emit(args, model, text: str) -> None:
    doc = model.model_dump_json()
    if args.json:
        print(doc)
    else:
        print(text)
    if args.out:
        Path(args.out).write_text(doc + "\n", encoding="utf-8")


def _seed(args) -> int:
    return args.seed if args.seed is not None else _default_seed()


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _run_extract(args) -> None:
    req = sm.ExtractRequest(raw=_read_data(args))
    resp = handlers.handle_extract(req)
    _emit(args, resp, ",".join(_fmt(v) for v in resp.records))


def _run_fit(args) -> None:
    resp = handlers.handle_fit(sm.RecordsPayload(**_payload_fields(args)))
    text = (
        f"n = {resp.n} (records: {resp.n + 1})\n"
        f"shape = {_fmt(resp.shape)}\n"
        f"scale = {_fmt(resp.scale)}\n"
        f"last record = {_fmt(resp.last_record)}\n"
        f"log-ratio sum = {_fmt(resp.log_ratio_sum)}"
    )
    _emit(args, resp, text)


def _run_ci_shape(args) -> None:
    req = sm.ShapeIntervalRequest(
        **_payload_fields(args),
        level=args.level,
        method=args.method,
        wstar_reps=args.wstar_reps,
        seed=_seed(args),
    )
    resp = handlers.handle_shape_interval(req)
    _emit(args, resp,
          f"{100 * resp.level:g}% CI for shape [{resp.method}]: "
          f"({_fmt(resp.lower)}, {_fmt(resp.upper)})")


def _run_test_shape(args) -> None:
    req = sm.ShapeTestRequest(
        **_payload_fields(args),
        shape0=args.beta0,
        level=args.level,
        alternative=args.alternative,
    )
    resp = handlers.handle_shape_test(req)
    verdict = "reject" if resp.reject else "do not reject"
    _emit(args, resp,
          f"U0 = {_fmt(resp.statistic)}  p = {_fmt(resp.p_value)}  "
          f"[{resp.alternative}] -> {verdict} at level {resp.level:g}")


def _run_ci_scale(args) -> None:
    req = sm.ScaleIntervalRequest(
        **_payload_fields(args), level=args.level, draws=args.M, seed=_seed(args)
    )
    resp = handlers.handle_scale_interval(req)
    _emit(args, resp,
          f"{100 * resp.level:g}% CI for scale [{resp.method}]: "
          f"({_fmt(resp.lower)}, {_fmt(resp.upper)})")


def _run_test_scale(args) -> None:
    req = sm.ScaleTestRequest(
        **_payload_fields(args),
        scale0=args.alpha0,
        alternative=args.alternative,
        draws=args.M,
        seed=_seed(args),
    )
    resp = handlers.handle_scale_test(req)
    _emit(args, resp,
          f"generalized p = {_fmt(resp.p_value)} (MC se {_fmt(resp.mc_se)}) "
          f"for scale0 = {_fmt(resp.scale0)} [{resp.alternative}]")


def _region_request(args, cls, **extra):
    return cls(
        **_payload_fields(args), method=args.method, j=args.j, level=args.level, **extra
    )


def _region_text(resp: sm.RegionResponse) -> str:
    name = resp.method if resp.j is None else f"a{resp.j}"
    return (
        f"region {name} at level {resp.level:g}:\n"
        f"  shape in ({_fmt(resp.shape_lower)}, {_fmt(resp.shape_upper)})\n"
        f"  scale in {_fmt(resp.last_record)}*({_fmt(resp.multiplier_lower)})^(1/shape) "
        f"to {_fmt(resp.last_record)}*({_fmt(resp.multiplier_upper)})^(1/shape)"
    )


def _run_region(args) -> None:
    resp = handlers.handle_region(_region_request(args, sm.RegionRequest))
    _emit(args, resp, _region_text(resp))


def _run_area(args) -> None:
    resp = handlers.handle_area(
        _region_request(args, sm.AreaRequest, tolerance=args.tolerance)
    )
    _emit(args, resp,
          f"area = {resp.area:.4f} (abs tolerance {resp.abs_tolerance:g}, "
          f"{resp.evaluations} integrand evaluations)")


def _run_boundary(args) -> None:
    resp = handlers.handle_boundary(
        _region_request(args, sm.BoundaryRequest, points=args.points)
    )
    lines = [",".join(BOUNDARY_CSV_HEADER)]
    lines += [
        f"{row.shape!r},{row.scale_lower!r},{row.scale_upper!r}" for row in resp.rows
    ]
    csv_text = "\n".join(lines)
    if args.json:
        print(resp.model_dump_json())
    else:
        print(csv_text)
    if args.out:
        Path(args.out).write_text(
            resp.model_dump_json() + "\n" if args.json else csv_text + "\n",
            encoding="utf-8",
        )


def _run_simulate(args) -> None:
    base = SimulationConfig.from_file(args.config).__dict__ if args.config else {}
    overrides = {
        "reps": args.reps,
        "M": args.M,
        "seed": args.seed if args.seed is not None else base.get("seed", _default_seed()),
        "level": args.level,
        "parallelism": args.parallelism,
    }
    for key, value in overrides.items():
        if value is not None:
            base[key] = value
    if args.method is not None:
        base["methods"] = tuple(t.strip() for t in args.method.split(",") if t.strip())
    cfg_model = sm.SimulationConfigModel(**{k: v for k, v in base.items() if v is not None})
    req = sm.SimulateRequest(table=args.table, config=cfg_model)

    def progress(cell):
        if not args.json:
            print(
                f"cell scale={cell.scale:g} shape={cell.shape:g} n={cell.n} "
                f"method={cell.method}: coverage={cell.coverage:.4f} "
                f"(se {cell.coverage_se:.4f}) measure={cell.expected_measure:.4f} "
                f"(se {cell.measure_se:.4f})"
            )

    resp = handlers.handle_simulate(req, on_cell=progress)
    if args.json:
        print(resp.model_dump_json())
    else:
        print(f"{resp.kind}: {len(resp.cells)} cells, reps per cell = "
              f"{resp.cells[0].reps if resp.cells else 0}, seed = {resp.seed}")
    if args.out:
        if args.out.endswith(".csv"):
            from .simulate import SimulationCell, SimulationReport
            report = SimulationReport(
                cells=tuple(SimulationCell(**c.model_dump()) for c in resp.cells),
                seed=resp.seed, level=resp.level, M=resp.M, kind=resp.kind,
            )
            write_report_csv(report, args.out)
        else:
            Path(args.out).write_text(resp.model_dump_json() + "\n", encoding="utf-8")


_COMMANDS = {
    "extract": _run_extract,
    "fit": _run_fit,
    "ci-shape": _run_ci_shape,
    "test-shape": _run_test_shape,
    "ci-scale": _run_ci_scale,
    "test-scale": _run_test_scale,
    "region": _run_region,
    "area": _run_area,
    "boundary": _run_boundary,
    "simulate": _run_simulate,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _COMMANDS[args.command](args)
    except WeibullRecordsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        # pydantic validation failures on request models
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
