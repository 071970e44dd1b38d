"""Command-line front end: character tables and verification suites
with JSON or CSV report output.

Exit codes: 0 all checks pass, 1 at least one check fails, 2 usage or
precondition error.  Suites may run in parallel worker processes; set
SWQ_WORKERS to cap the pool (1 forces sequential execution).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures.process import BrokenProcessPool
from dataclasses import dataclass
from fractions import Fraction
from typing import IO

from . import characters, fermionic, forms, gmverify, numeric, zhupoly
from .characters import SWModuleId
from .numeric import TauPoint
from .qseries import VerificationReport

__all__ = ["RunConfig", "UsageError", "run", "emit_report", "main"]

_COMMANDS = ("char", "superchar", "verify", "gm", "zhu", "numeric")
_SUITES = ("forms", "characters", "warnaar", "aux", "zhu", "gm", "numeric")
_DEFAULT_TAUS = ((0.0, 1.0), (0.3, 1.1), (-0.4, 0.9))
_CSV_HEADER = [
    "identity_id",
    "params",
    "order",
    "status",
    "mismatch_exponent",
    "lhs",
    "rhs",
    "runtime_ms",
]


class UsageError(ValueError):
    """Bad flags or violated preconditions; mapped to exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    """One resolved invocation.  tau holds (re, im) pairs."""

    command: str
    m: int = 1
    module: SWModuleId | None = None
    order: Fraction = Fraction(20)
    suite: str = "all"
    format: str = "json"
    tol: float = 1e-8
    tau: tuple[tuple[float, float], ...] = _DEFAULT_TAUS

    def __post_init__(self):
        if self.command not in _COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.suite not in ("all",) + _SUITES:
            raise UsageError(f"unknown suite {self.suite!r}")
        if self.format not in ("json", "csv"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.m < 1:
            raise UsageError("m must be positive")
        if self.order <= 0:
            raise UsageError("order must be positive")
        if self.command in ("char", "superchar") and self.module is None:
            raise UsageError(f"{self.command} requires --module")
        if not self.tau:
            raise UsageError("at least one tau point required")


def _json_value(v):
    return str(v) if isinstance(v, Fraction) else v


def _report_payload(r: VerificationReport) -> dict:
    mismatch = None
    if r.first_mismatch is not None:
        e, lhs, rhs = r.first_mismatch
        mismatch = {"exponent": str(e), "lhs": str(lhs), "rhs": str(rhs)}
    return {
        "identity_id": r.identity_id,
        "params": {k: _json_value(v) for k, v in r.params.items()},
        "order": str(r.order),
        "status": r.status,
        "first_mismatch": mismatch,
        "runtime_ms": round(r.runtime_ms, 3),
    }


def emit_report(reports: list[VerificationReport], format: str, sink: IO[str]) -> None:
    """JSON: array of objects with exactly the report fields, rationals
    as "num/den" strings.  CSV: fixed header, params as sorted k=v
    pairs joined by semicolons, empty mismatch columns on a pass."""
    if format == "json":
        json.dump([_report_payload(r) for r in reports], sink, separators=(",", ":"))
        sink.write("\n")
        return
    if format != "csv":
        raise UsageError(f"unknown format {format!r}")
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(_CSV_HEADER)
    for r in reports:
        params = ";".join(f"{k}={r.params[k]}" for k in sorted(r.params))
        e, lhs, rhs = ("", "", "")
        if r.first_mismatch is not None:
            e, lhs, rhs = (str(x) for x in r.first_mismatch)
        writer.writerow(
            [r.identity_id, params, str(r.order), r.status, e, lhs, rhs, f"{r.runtime_ms:.3f}"]
        )


def _rank_taus(n: int) -> list[TauPoint]:
    return [TauPoint(-0.37 + 0.11 * i, 0.83 + 0.05 * i) for i in range(n)]


def _rank_report(m: int, order: Fraction, tol: float) -> VerificationReport:
    t0 = time.perf_counter()
    n = 3 * m + 1
    rank, smallest = numeric.ns_space_rank(m, _rank_taus(n), order, tol)
    return VerificationReport(
        identity_id="ns-space-rank",
        params={"m": m, "rank": rank, "min_singular": float(f"{smallest:.6g}")},
        order=Fraction(order),
        status="pass" if rank == n else "fail",
        first_mismatch=None if rank == n else (Fraction(0), Fraction(rank), Fraction(n)),
        runtime_ms=(time.perf_counter() - t0) * 1000.0,
    )


def _suite_reports(task: tuple) -> list[VerificationReport]:
    name, m, order, tol, taus = task
    if name == "forms":
        return forms.verify_form_identities(order)
    if name == "characters":
        return characters.verify_character_suite(m, order)
    if name == "warnaar":
        return fermionic.verify_warnaar(2 * m + 1, order)
    if name == "aux":
        return fermionic.verify_aux_identities(order)
    if name == "zhu":
        return [*zhupoly.verify_phi_identities(m), zhupoly.verify_s_properties(m)]
    if name == "gm":
        reports = [gmverify.verify_gm_conjecture(m)]
        if gmverify._is_prime(2 * m + 1):
            reports.append(gmverify.gm_mod_p(m))
        return reports
    if name == "numeric":
        points = [TauPoint(re, im) for re, im in taus]
        reports = numeric.verify_s_t_laws(points, order, tol)
        reports.append(_rank_report(m, order, tol))
        return reports
    raise UsageError(f"unknown suite {name!r}")


def _worker_count() -> int:
    env = os.environ.get("SWQ_WORKERS")
    if env is None:
        return os.cpu_count() or 1
    try:
        n = int(env)
    except ValueError:
        raise UsageError(f"SWQ_WORKERS must be an integer, got {env!r}") from None
    if n < 1:
        raise UsageError("SWQ_WORKERS must be positive")
    return n


def _dispatch(tasks: list[tuple]) -> list[list[VerificationReport]]:
    n = min(_worker_count(), len(tasks))
    if n > 1:
        try:
            with ProcessPoolExecutor(max_workers=n) as pool:
                return list(pool.map(_suite_reports, tasks))
        except (OSError, BrokenProcessPool):
            pass
    return [_suite_reports(t) for t in tasks]


def _emit_series(config: RunConfig, sink: IO[str]) -> int:
    build = characters.sw_char if config.command == "char" else characters.sw_superchar_theta
    series = build(config.module, config.order)
    if config.format == "csv":
        writer = csv.writer(sink, lineterminator="\n")
        writer.writerow(["exponent", "coefficient"])
        for e, c in series.terms():
            writer.writerow([str(e), str(c)])
    else:
        payload = {
            "module": config.module.label,
            "order": str(config.order),
            "terms": [[str(e), str(c)] for e, c in series.terms()],
        }
        json.dump(payload, sink, separators=(",", ":"))
        sink.write("\n")
    return 0


def run(config: RunConfig, sink: IO[str]) -> int:
    """Execute one invocation, writing the report document to sink."""
    try:
        if config.command in ("char", "superchar"):
            return _emit_series(config, sink)
        names = _SUITES if config.suite == "all" else (config.suite,)
        tasks = [(name, config.m, config.order, config.tol, config.tau) for name in names]
        reports = [r for chunk in _dispatch(tasks) for r in chunk]
        emit_report(reports, config.format, sink)
        return 0 if all(r.status == "pass" for r in reports) else 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _parse_module(m: int, text: str) -> SWModuleId:
    kind, sep, index_text = text.partition(":")
    if not sep or kind not in ("lambda", "pi"):
        raise UsageError(f"bad module selector {text!r}; use lambda:N or pi:N")
    try:
        index = int(index_text)
    except ValueError:
        raise UsageError(f"bad module index {index_text!r}") from None
    try:
        return SWModuleId(m, kind, index)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parse_tau(text: str) -> tuple[float, float]:
    try:
        z = complex(text)
        TauPoint(z.real, z.imag)
    except ValueError as exc:
        raise UsageError(f"bad tau {text!r}: {exc}") from None
    return (z.real, z.imag)


def _parse_order(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad order {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swq",
        description="Exact q-series, polynomial, and numeric checks for the "
        "N=1 super-triplet family; see `swq verify --help` for the suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, order_default: str) -> None:
        p.add_argument("--m", type=int, default=1, help="family index, one per odd 2m+1")
        p.add_argument("--order", default=order_default, help="truncation order, e.g. 25 or 51/2")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    def numeric_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--tol", type=float, default=1e-8, help="numeric residual tolerance")
        p.add_argument("--tau", nargs="*", help="upper half-plane points, e.g. 0.3+1.1j")

    for name in ("char", "superchar"):
        p = sub.add_parser(name, help=f"print one {name}acter expansion")
        common(p, "10")
        p.add_argument("--module", required=True, help="module selector, lambda:N or pi:N")

    p = sub.add_parser("verify", help="run a verification suite")
    common(p, "20")
    p.add_argument("--suite", choices=("all",) + _SUITES, default="all")
    numeric_flags(p)

    p = sub.add_parser("gm", help="shortcut for verify --suite gm")
    common(p, "20")
    p = sub.add_parser("zhu", help="shortcut for verify --suite zhu")
    common(p, "20")
    p = sub.add_parser("numeric", help="shortcut for verify --suite numeric")
    common(p, "300")
    numeric_flags(p)

    return parser


def _config_from_args(ns: argparse.Namespace) -> RunConfig:
    command = ns.command
    suite = getattr(ns, "suite", None)
    if suite is None:
        suite = command if command in _SUITES else "all"
    module = None
    if getattr(ns, "module", None) is not None:
        module = _parse_module(ns.m, ns.module)
    taus = _DEFAULT_TAUS
    if getattr(ns, "tau", None):
        taus = tuple(_parse_tau(t) for t in ns.tau)
    return RunConfig(
        command=command,
        m=ns.m,
        module=module,
        order=_parse_order(ns.order),
        suite=suite,
        format=ns.format,
        tol=getattr(ns, "tol", 1e-8),
        tau=taus,
    )


def main(argv: list[str] | None = None) -> int:
    try:
        ns = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        config = _config_from_args(ns)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(config, sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
