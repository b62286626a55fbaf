"""Command-line front end.

Subcommands mirror the library surface: ``choi-build``, ``choi-check``,
``kraus-extract``, ``map-apply``, ``evolve``, ``battery-phi``,
``battery-sim``, ``metric-profile`` and ``selftest``.

Exit codes: 0 success, 1 I/O failure, 2 validation failure.  Every error
path emits one machine-readable line ``{"error": code, "detail": text}``
on standard error.  Identical arguments (and seed) produce byte-identical
outputs.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import battery, metric, selftest as selftest_mod, serialize
from .choi import ChoiMatrix, FixedPointSpec, build_fixed_point_choi, check_fixed_point, check_unital
from .dual_map import apply_dual_choi, apply_dual_kraus, evolve_linear, kraus_from_fixed_point, unitality_residual
from .errors import CpuMapError, DomainError
from .serialize import dumps, fmt


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as JSON validation errors."""

    def error(self, message):
        raise _UsageError(message)


def _emit_error(code: str, detail: str) -> None:
    sys.stderr.write(dumps({"error": code, "detail": detail}))


def _read_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def parse_grid(spec: str) -> np.ndarray:
    """Parse ``start:stop:count`` with inclusive endpoints."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise DomainError(f"grid must be start:stop:count, got {spec!r}")
    start, stop = float(parts[0]), float(parts[1])
    count = int(parts[2])
    if count < 1:
        raise DomainError(f"grid count must be >= 1, got {count}")
    if count == 1:
        return np.array([start])
    return np.linspace(start, stop, count)


def _load_spec(a_path: str, v_path: str) -> FixedPointSpec:
    a = serialize.matrix_from_json(_read_json(a_path))
    v = serialize.vector_from_json(_read_json(v_path))
    return FixedPointSpec(a=a, v=v)


def build_parser() -> _Parser:
    parser = _Parser(prog="cpumap", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("choi-build", help="build the fixed-point Choi matrix")
    p.add_argument("--A", required=True, help="matrix-json file with the observable")
    p.add_argument("--v", required=True, help="vector-json file with the unit vector")
    p.add_argument("--out", default=None)

    p = sub.add_parser("choi-check", help="verify unitality and the fixed point")
    p.add_argument("--Z", required=True, help="Choi-json file")
    p.add_argument("--A", required=True)
    p.add_argument("--tolerance", type=float, default=1e-9)

    p = sub.add_parser("kraus-extract", help="extract the tagged Kraus family")
    p.add_argument("--A", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--out", default=None)

    p = sub.add_parser("map-apply", help="apply the dual map to an observable")
    p.add_argument("--Z", default=None, help="Choi-json file")
    p.add_argument("--kraus", default=None, help="Kraus-json file")
    p.add_argument("--B", required=True, help="matrix-json observable")
    p.add_argument("--out", default=None)

    p = sub.add_parser("evolve", help="linear observable growth under the map")
    p.add_argument("--Z", required=True)
    p.add_argument("--A0", required=True)
    p.add_argument("--rho", required=True)
    p.add_argument("--times", required=True, help="grid start:stop:count")
    p.add_argument("--rate", type=float, default=1.0)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--out", default=None)

    p = sub.add_parser("battery-phi", help="charging constant of an environment")
    p.add_argument("--env", required=True, help="env-json file")

    p = sub.add_parser("battery-sim", help="charging trajectory <N(t)>")
    p.add_argument("--env", required=True)
    p.add_argument("--rho0", default=None, help="matrix-json initial state")
    p.add_argument("--times", required=True, help="grid start:stop:count")
    p.add_argument("--rate", type=float, default=1.0)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--out", default=None)

    p = sub.add_parser("metric-profile", help="singularity-free dilation profile")
    p.add_argument("--M", type=float, required=True)
    p.add_argument("--r0", type=float, default=None, help="offset, default 0.1*M")
    p.add_argument("--d", type=int, default=16)
    p.add_argument("--grid", required=True, help="radial grid start:stop:count")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--verbose", action="store_true", help="embed env states in JSON")
    p.add_argument("--out", default=None)

    p = sub.add_parser("selftest", help="run the full invariant suite")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", default=None)

    return parser


def _cmd_choi_build(args) -> int:
    z = build_fixed_point_choi(_load_spec(args.A, args.v))
    _write_text(args.out, dumps(serialize.choi_to_json(z)))
    return 0


def _cmd_choi_check(args) -> int:
    z = serialize.choi_from_json(_read_json(args.Z))
    a = serialize.matrix_from_json(_read_json(args.A))
    unital = check_unital(z)
    fixed = check_fixed_point(z, a)
    sys.stdout.write(f"unitality-residual {fmt(unital)}\n")
    sys.stdout.write(f"fixed-point-residual {fmt(fixed)}\n")
    if unital > args.tolerance or fixed > args.tolerance:
        _emit_error(
            "residual",
            f"residuals {fmt(unital)}/{fmt(fixed)} exceed {fmt(args.tolerance)}",
        )
        return 2
    return 0


def _cmd_kraus_extract(args) -> int:
    k = kraus_from_fixed_point(_load_spec(args.A, args.v))
    _write_text(args.out, dumps(serialize.kraus_to_json(k)))
    sys.stdout.write(f"unitality-residual {fmt(unitality_residual(k))}\n")
    return 0


def _cmd_map_apply(args) -> int:
    if (args.Z is None) == (args.kraus is None):
        raise DomainError("provide exactly one of --Z or --kraus")
    b = serialize.matrix_from_json(_read_json(args.B))
    if args.Z is not None:
        out = apply_dual_choi(serialize.choi_from_json(_read_json(args.Z)), b)
    else:
        out = apply_dual_kraus(serialize.kraus_from_json(_read_json(args.kraus)), b)
    _write_text(args.out, dumps(serialize.matrix_to_json(out)))
    return 0


def _cmd_evolve(args) -> int:
    z = serialize.choi_from_json(_read_json(args.Z))
    a0 = serialize.matrix_from_json(_read_json(args.A0))
    rho = serialize.matrix_from_json(_read_json(args.rho))
    trace = evolve_linear(z, a0, rho, parse_grid(args.times), rate=args.rate)
    if args.format == "json":
        _write_text(args.out, dumps(serialize.trace_to_json(trace)))
    else:
        _write_text(args.out, serialize.trace_to_csv(trace))
    return 0


def _cmd_battery_phi(args) -> int:
    env = serialize.env_from_json(_read_json(args.env))
    sys.stdout.write(fmt(battery.phi(env)) + "\n")
    return 0


def _cmd_battery_sim(args) -> int:
    env = serialize.env_from_json(_read_json(args.env))
    if args.rho0 is not None:
        rho0 = serialize.matrix_from_json(_read_json(args.rho0))
    else:
        rho0 = np.zeros((env.dim, env.dim), dtype=complex)
        rho0[0, 0] = 1.0
    cfg = battery.BatteryConfig(d=env.dim, env=env, rho0=rho0, rate=args.rate)
    trace = battery.simulate_charging(cfg, parse_grid(args.times))
    if args.format == "json":
        _write_text(args.out, dumps(serialize.trace_to_json(trace)))
    else:
        _write_text(args.out, serialize.trace_to_csv(trace))
    return 0


def _cmd_metric_profile(args) -> int:
    r0 = metric.default_r0(args.M) if args.r0 is None else args.r0
    params = metric.MetricParams(M=args.M, r0=r0, d=args.d, r_grid=parse_grid(args.grid))
    profile = metric.build_profile(params)
    if args.format == "json":
        _write_text(args.out, dumps(serialize.profile_to_json(profile, verbose=args.verbose)))
    else:
        _write_text(args.out, serialize.profile_to_csv(profile))
    return 0


def _cmd_selftest(args) -> int:
    report, ok = selftest_mod.run_selftest(seed=args.seed)
    _write_text(args.out, report)
    return 0 if ok else 2


_COMMANDS = {
    "choi-build": _cmd_choi_build,
    "choi-check": _cmd_choi_check,
    "kraus-extract": _cmd_kraus_extract,
    "map-apply": _cmd_map_apply,
    "evolve": _cmd_evolve,
    "battery-phi": _cmd_battery_phi,
    "battery-sim": _cmd_battery_sim,
    "metric-profile": _cmd_metric_profile,
    "selftest": _cmd_selftest,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        _emit_error("usage", str(exc))
        return 2
    except CpuMapError as exc:
        _emit_error(exc.code, str(exc))
        return 2
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        _emit_error("io", f"{type(exc).__name__}: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
