"""Command-line driver: parameter sweeps to CSV plus one-shot queries.

Subcommands: bec-scan, spdc-full, spdc-fixed-n, lhv-check, expand, bound.
Sweeps emit CSV with '#' provenance comments (tool version and the full
effective config); floats are written with shortest round-trip repr so
re-runs are byte-identical.  Options may come from a key=value config file
(--config); explicit flags win over the file, the file wins over defaults.
"""

from __future__ import annotations

import argparse
import enum
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import IO, Optional, Sequence

from . import __version__
from .bell import bound_single_log, bound_two_region_log, correlator_single, \
    expand_plus_power
from .hamiltonian import build_bose_hubbard, ground_state
from .lhv import brute_force_max
from .numerics import ConvergenceError
from .spdc import fixed_n_correlator, fixed_n_state, full_state_report


class CliError(Exception):
    """Bad usage or a failed sweep point; reported on stderr with exit 2."""


class Scenario(str, enum.Enum):
    BEC_SCAN = "bec_scan"
    SPDC_FULL = "spdc_full"
    SPDC_FIXED_N = "spdc_fixed_n"
    LHV_CHECK = "lhv_check"
    EXPAND = "expand"
    BOUND_QUERY = "bound_query"


@dataclass
class SweepConfig:
    scenario: Scenario
    out: Optional[str] = None
    tol: float = 1e-12
    workers: int = 1
    # bec_scan
    n: int = 100
    u_min: float = -1.3
    u_max: float = -0.7
    u_points: int = 121
    orders: Optional[tuple] = None  # scenario-dependent default, see __post_init__
    # spdc_full
    t_min: float = 0.04
    t_max: float = 2.0
    t_points: int = 50
    # spdc_fixed_n
    n_list: tuple = (2, 3, 6, 12)
    # lhv_check / expand
    m: int = 3
    # bound_query
    n_b: Optional[int] = None
    k: Optional[int] = None

    def __post_init__(self):
        if self.orders is None:
            self.orders = ((2, 3, 5, 6) if self.scenario is Scenario.SPDC_FULL
                           else (70, 80, 90, 100))

    def validate(self):
        if self.tol <= 0:
            raise CliError("tol must be positive")
        if self.workers < 1:
            raise CliError("workers must be >= 1")
        if self.scenario is Scenario.BEC_SCAN:
            if self.n < 1 or self.u_points < 1 or not self.orders:
                raise CliError("bec-scan needs n >= 1 and a nonempty grid")
            if any(not 1 <= m <= self.n for m in self.orders):
                raise CliError(f"orders must lie in [1, {self.n}]")
        elif self.scenario is Scenario.SPDC_FULL:
            if self.t_points < 1 or not self.orders:
                raise CliError("spdc-full needs a nonempty grid and orders")
            if self.t_min <= 0 or self.t_max < self.t_min:
                raise CliError("spdc-full needs 0 < t_min <= t_max")
            if any(m < 1 for m in self.orders):
                raise CliError("orders must be >= 1")
        elif self.scenario is Scenario.SPDC_FIXED_N:
            if not self.n_list or any(n < 1 for n in self.n_list):
                raise CliError("spdc-fixed-n needs positive region counts")
        elif self.scenario in (Scenario.LHV_CHECK, Scenario.EXPAND):
            if self.m < 1:
                raise CliError("m must be >= 1")
            if self.scenario is Scenario.LHV_CHECK and self.m > 16:
                raise CliError("lhv-check enumeration is guarded at m <= 16")
        elif self.scenario is Scenario.BOUND_QUERY:
            if not 0 <= self.m <= self.n:
                raise CliError("bound needs 0 <= m <= N")
            if (self.n_b is None) != (self.k is None):
                raise CliError("two-region bound needs both --nb and --k")
            if self.n_b is not None and not 0 <= self.k <= self.n_b:
                raise CliError("bound needs 0 <= k <= N_B")


def _grid(lo: float, hi: float, points: int) -> list[float]:
    if points == 1:
        return [lo]
    step = (hi - lo) / (points - 1)
    return [lo + i * step for i in range(points)]


def _report_row(report) -> tuple:
    log_corr = (report.log_correlator.log_magnitude
                if report.log_correlator.sign > 0 else float("-inf"))
    return (log_corr, report.log_bound, math.exp(report.log_ratio),
            report.violates_bell)


def _bec_point(args) -> list[tuple]:
    n, u, orders, tol = args
    try:
        result = ground_state(build_bose_hubbard(n, u), tol=tol)
    except ConvergenceError as exc:
        raise CliError(f"ground-state solve failed at U={u!r}: {exc}") from exc
    return [(u, m) + _report_row(correlator_single(result.state, m))
            for m in orders]


def run_bec_scan(config: SweepConfig) -> list[tuple]:
    """Rows (U, m, log_correlator, log_bound, ratio, violates) over the U grid."""
    tasks = [(config.n, u, config.orders, config.tol)
             for u in _grid(config.u_min, config.u_max, config.u_points)]
    return [row for point in _map_tasks(_bec_point, tasks, config.workers)
            for row in point]


def _spdc_full_point(args) -> list[tuple]:
    t, orders, tol = args
    rows = []
    for m in orders:
        try:
            rows.append((t, m) + _report_row(full_state_report(t, m, tol=tol)))
        except ConvergenceError as exc:
            raise CliError(f"f-factor failed at t={t!r}, m={m}: {exc}") from exc
    return rows


def run_spdc_full(config: SweepConfig) -> list[tuple]:
    """Rows (t, m, log_correlator, log_bound, ratio, violates) over the t grid."""
    tasks = [(t, config.orders, config.tol)
             for t in _grid(config.t_min, config.t_max, config.t_points)]
    return [row for point in _map_tasks(_spdc_full_point, tasks, config.workers)
            for row in point]


def run_spdc_fixed_n(config: SweepConfig) -> list[tuple]:
    """Rows (N, m, ratio, violates) with m swept 1..N for each region count."""
    rows = []
    for n in config.n_list:
        state = fixed_n_state(n)
        for m in range(1, n + 1):
            report = fixed_n_correlator(state, m)
            rows.append((n, m, math.exp(report.log_ratio), report.violates_bell))
    return rows


def _map_tasks(fn, tasks, workers):
    if workers == 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def run_lhv_check(config: SweepConfig) -> str:
    value = brute_force_max(config.m)
    bound = 2.0 ** -config.m
    return "\n".join([
        f"m={config.m}",
        f"max |<Sigma_m>|^2 over deterministic strategies: {value!r}",
        f"analytic local realistic bound 2^-m: {bound!r}",
        f"bound attained: {'yes' if value == bound else 'no'}",
    ]) + "\n"


_COEFF_NAMES = {(1, 0): "+1", (-1, 0): "-1", (0, 1): "+i", (0, -1): "-i"}


def run_expand(config: SweepConfig) -> str:
    lines = [f"J_+^{config.m} = sum of {2 ** config.m} ordered X/Y words:"]
    for word in expand_plus_power(config.m):
        key = (round(word.coefficient.real), round(word.coefficient.imag))
        lines.append(f"{word.letters}  {_COEFF_NAMES[key]}")
    return "\n".join(lines) + "\n"


def run_bound_query(config: SweepConfig) -> str:
    if config.n_b is None:
        log_value = bound_single_log(config.n, config.m)
        head = f"single-region bound, N={config.n} m={config.m}"
    else:
        log_value = bound_two_region_log(config.n, config.n_b, config.m, config.k)
        head = (f"two-region bound, N_A={config.n} N_B={config.n_b} "
                f"m={config.m} k={config.k}")
    return "\n".join([
        head,
        f"log bound: {log_value!r}",
        f"bound: {math.exp(log_value)!r}",
    ]) + "\n"


_CSV_COLUMNS = {
    Scenario.BEC_SCAN: ("U", "m", "log_correlator", "log_bound", "ratio", "violates"),
    Scenario.SPDC_FULL: ("t", "m", "log_correlator", "log_bound", "ratio", "violates"),
    Scenario.SPDC_FIXED_N: ("N", "m", "ratio", "violates"),
}

_ECHO_FIELDS = {
    Scenario.BEC_SCAN: ("n", "u_min", "u_max", "u_points", "orders", "tol", "workers"),
    Scenario.SPDC_FULL: ("t_min", "t_max", "t_points", "orders", "tol", "workers"),
    Scenario.SPDC_FIXED_N: ("n_list", "tol"),
}


def _fmt_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (tuple, list)):
        return ",".join(str(x) for x in v)
    return str(v)


def write_csv(stream: IO[str], config: SweepConfig, rows: Sequence[tuple]):
    stream.write(f"# bellboson {__version__}\n")
    stream.write(f"# scenario={config.scenario.value}\n")
    for name in _ECHO_FIELDS[config.scenario]:
        stream.write(f"# {name}={_fmt_value(getattr(config, name))}\n")
    stream.write(",".join(_CSV_COLUMNS[config.scenario]) + "\n")
    for row in rows:
        stream.write(",".join(_fmt_value(v) for v in row) + "\n")


_RUNNERS = {
    Scenario.BEC_SCAN: run_bec_scan,
    Scenario.SPDC_FULL: run_spdc_full,
    Scenario.SPDC_FIXED_N: run_spdc_fixed_n,
}


def _parse_orders(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise CliError(f"expected a comma-separated integer list, got {text!r}") from exc


def _read_config_file(path: str) -> dict:
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise CliError(f"{path}:{lineno}: expected key=value")
                key, _, value = line.partition("=")
                values[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise CliError(f"cannot read config file {path}: {exc}") from exc
    return values


_FIELD_PARSERS = {
    "tol": float, "workers": int, "n": int, "u_min": float, "u_max": float,
    "u_points": int, "orders": _parse_orders, "t_min": float, "t_max": float,
    "t_points": int, "n_list": _parse_orders, "m": int, "n_b": int, "k": int,
    "out": str,
}


def _build_config(scenario: Scenario, args: argparse.Namespace) -> SweepConfig:
    config = SweepConfig(scenario)
    file_values = _read_config_file(args.config) if args.config else {}
    for name, parser in _FIELD_PARSERS.items():
        flag = getattr(args, name, None)
        if flag is not None:
            setattr(config, name, flag)
        elif name in file_values:
            try:
                setattr(config, name, parser(file_values[name]))
            except ValueError as exc:
                raise CliError(f"bad config value for {name}: {exc}") from exc
    config.validate()
    return config


def _add_common(parser):
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--tol", type=float, help="numerical tolerance")
    parser.add_argument("--config", help="key=value config file; flags win")
    parser.add_argument("--workers", type=int, help="sweep worker processes")


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellboson",
        description="Many-body Bell correlators and local-realistic bounds "
                    "for bosonic qubits.")
    parser.add_argument("--version", action="version",
                        version=f"bellboson {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bec-scan", help="Bose-Hubbard ground-state U sweep")
    p.add_argument("--n", type=int, help="particle count (default 100)")
    p.add_argument("--u-min", dest="u_min", type=float)
    p.add_argument("--u-max", dest="u_max", type=float)
    p.add_argument("--u-points", dest="u_points", type=int)
    p.add_argument("--orders", type=_parse_orders,
                   help="comma-separated correlator orders, default 70,80,90,100")
    _add_common(p)
    p.set_defaults(scenario=Scenario.BEC_SCAN)

    p = sub.add_parser("spdc-full", help="full-state correlator vs squeezing time")
    p.add_argument("--t-min", dest="t_min", type=float)
    p.add_argument("--t-max", dest="t_max", type=float)
    p.add_argument("--t-points", dest="t_points", type=int)
    p.add_argument("--orders", type=_parse_orders,
                   help="comma-separated correlator orders, default 2,3,5,6")
    _add_common(p)
    p.set_defaults(scenario=Scenario.SPDC_FULL)

    p = sub.add_parser("spdc-fixed-n", help="post-selected fixed-N correlators")
    p.add_argument("--n-list", dest="n_list", type=_parse_orders,
                   help="comma-separated region counts, default 2,3,6,12")
    _add_common(p)
    p.set_defaults(scenario=Scenario.SPDC_FIXED_N)

    p = sub.add_parser("lhv-check", help="enumerate classical strategies")
    p.add_argument("--m", type=int, help="party count (default 3, max 16)")
    _add_common(p)
    p.set_defaults(scenario=Scenario.LHV_CHECK)

    p = sub.add_parser("expand", help="X/Y word expansion of the m-th power")
    p.add_argument("--m", type=int, help="operator order (default 3)")
    _add_common(p)
    p.set_defaults(scenario=Scenario.EXPAND)

    p = sub.add_parser("bound", help="local-realistic bound lookup")
    p.add_argument("--n", type=int, required=True, help="region particle count")
    p.add_argument("--m", type=int, required=True, help="correlator order")
    p.add_argument("--nb", dest="n_b", type=int, help="second region count")
    p.add_argument("--k", type=int, help="second region order")
    _add_common(p)
    p.set_defaults(scenario=Scenario.BOUND_QUERY)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _make_parser().parse_args(argv)
    try:
        config = _build_config(args.scenario, args)
        if config.scenario in _RUNNERS:
            rows = _RUNNERS[config.scenario](config)
            if config.out:
                with open(config.out, "w", encoding="utf-8") as fh:
                    write_csv(fh, config, rows)
            else:
                write_csv(sys.stdout, config, rows)
        else:
            text = {
                Scenario.LHV_CHECK: run_lhv_check,
                Scenario.EXPAND: run_expand,
                Scenario.BOUND_QUERY: run_bound_query,
            }[config.scenario](config)
            if config.out:
                with open(config.out, "w", encoding="utf-8") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
    except CliError as exc:
        print(f"bellboson: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
