"""Command-line front end: sweeps, searches, density grids, verification.

Four subcommands share a small flag grammar:

* ``sweep``    — vary one family parameter over a range, tabulate moments.
* ``search``   — multi-start gradient ascent on F = R - n over a family's box.
* ``density``  — sample the energy density on a spacetime grid and report the
  refined minimum.
* ``verify``   — randomized closed-form-vs-oracle comparison plus the fixed
  matrix-element identity checks.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 numeric
failure.  Output is CSV (default) or a single JSON document; identical flags
and seeds give byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from . import energy_density as ed
from . import state_families as sf
from . import verification
from .fock_oracle import DegenerateSuperpositionError, TruncationError
from .optimizer import (
    AscentFailure,
    SearchConfig,
    SearchSpace,
    coherent_pair_space,
    multi_start,
    vacuum_squeezed_space,
)

__all__ = ["main", "parse_real", "FAMILY_NAMES", "SEARCH_FAMILY_NAMES"]


class UsageError(Exception):
    """Bad flag values detected after argparse (unknown key, bad range...)."""


def parse_real(text: str) -> float:
    """Parse a real number, allowing a trailing ``pi`` (``0.99pi``, ``-pi``)."""
    s = text.strip()
    if s.lower().endswith("pi"):
        head = s[:-2].strip()
        if head in ("", "+"):
            factor = 1.0
        elif head == "-":
            factor = -1.0
        else:
            try:
                factor = float(head)
            except ValueError:
                raise UsageError(f"cannot parse number {text!r}") from None
        return factor * math.pi
    try:
        return float(s)
    except ValueError:
        raise UsageError(f"cannot parse number {text!r}") from None


# --------------------------------------------------------------------------
# Family registry: parameter keys, defaults, and moment builders.
# --------------------------------------------------------------------------

Moments = "sf.OneModeMoments | sf.TwoModeMoments | float"


@dataclass(frozen=True)
class _Family:
    keys: tuple[str, ...]
    defaults: Mapping[str, float]
    kind: str  # "one" | "two" | "scalar"
    build: Callable[[Mapping[str, float]], object]


def _phased(mag: float, phase: float) -> complex:
    return mag * complex(math.cos(phase), math.sin(phase))


_FAMILIES: dict[str, _Family] = {
    "coherent-pair": _Family(
        keys=("alpha", "delta1", "beta", "delta2", "eta", "delta"),
        defaults={
            "alpha": 0.8,
            "delta1": 0.0,
            "beta": 0.8,
            "delta2": math.pi,
            "eta": 1.0,
            "delta": 0.0,
        },
        kind="one",
        build=lambda p: sf.coherent_superposition_moments(
            sf.CoherentPair(
                alpha=_phased(p["alpha"], p["delta1"]),
                beta=_phased(p["beta"], p["delta2"]),
                eta=_phased(p["eta"], p["delta"]),
            )
        ),
    ),
    "squeezed-vacuum": _Family(
        keys=("r", "delta"),
        defaults={"r": 1.0, "delta": 0.0},
        kind="one",
        build=lambda p: sf.squeezed_vacuum_moments(p["r"], p["delta"]),
    ),
    "superposed-squeezed": _Family(
        keys=("r", "eta", "eta_phase"),
        defaults={"r": 1.0, "eta": 0.0, "eta_phase": 0.0},
        kind="one",
        build=lambda p: sf.superposed_squeezed_moments(
            sf.SqueezedPair(r=p["r"], eta=_phased(p["eta"], p["eta_phase"]))
        ),
    ),
    "coherent-squeezed": _Family(
        keys=("r", "delta", "alpha", "alpha_phase", "eta", "eta_phase"),
        defaults={
            "r": 1.0,
            "delta": 0.0,
            "alpha": 0.6,
            "alpha_phase": 0.0,
            "eta": 1.0,
            "eta_phase": 0.0,
        },
        kind="one",
        build=lambda p: sf.coherent_plus_squeezed_moments(
            sf.CoherentSqueezed(
                r=p["r"],
                delta=p["delta"],
                alpha=_phased(p["alpha"], p["alpha_phase"]),
                eta=_phased(p["eta"], p["eta_phase"]),
            )
        ),
    ),
    "vacuum-squeezed": _Family(
        keys=("r", "eta", "eta_phase"),
        defaults={"r": 1.0, "eta": -1.0, "eta_phase": 0.0},
        kind="one",
        build=lambda p: sf.vacuum_plus_squeezed_moments(
            sf.VacuumSqueezed(r=p["r"], eta=_phased(p["eta"], p["eta_phase"]))
        ),
    ),
    "barnett-radmore": _Family(
        keys=("r", "delta"),
        defaults={"r": 1.0, "delta": 0.0},
        kind="two",
        build=lambda p: sf.barnett_radmore_moments(sf.BarnettRadmore(r=p["r"], delta=p["delta"])),
    ),
    "zhang": _Family(
        keys=("r", "theta"),
        defaults={"r": 0.007, "theta": 0.99 * math.pi},
        kind="two",
        build=lambda p: sf.zhang_moments(sf.ZhangReal(r=p["r"], theta=p["theta"])),
    ),
    "entangled-coherent": _Family(
        keys=("sigma", "theta", "delta1", "delta2"),
        defaults={"sigma": 0.7, "theta": 0.0, "delta1": 0.0, "delta2": 0.0},
        kind="two",
        build=lambda p: sf.entangled_coherent_moments(
            sf.EntangledCoherent(
                sigma=p["sigma"], theta=p["theta"], delta1=p["delta1"], delta2=p["delta2"]
            )
        ),
    ),
    "ecs-f": _Family(
        keys=("sigma",),
        defaults={"sigma": 0.7},
        kind="scalar",
        build=lambda p: sf.f_sigma(p["sigma"]),
    ),
    "vacuum": _Family(
        keys=(),
        defaults={},
        kind="two",
        build=lambda p: sf.TwoModeMoments(0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    ),
}

FAMILY_NAMES: tuple[str, ...] = tuple(_FAMILIES)

_SEARCH_SPACES: dict[str, Callable[[], SearchSpace]] = {
    "coherent-pair": coherent_pair_space,
    "coherent-pair-free": lambda: coherent_pair_space(free_delta1=True),
    "vacuum-squeezed": vacuum_squeezed_space,
}

SEARCH_FAMILY_NAMES: tuple[str, ...] = tuple(_SEARCH_SPACES)


# --------------------------------------------------------------------------
# Flag parsing helpers
# --------------------------------------------------------------------------


def _parse_assignments(family: _Family, pairs: Sequence[str]) -> dict[str, float]:
    params = dict(family.defaults)
    for item in pairs:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--set expects key=value, got {item!r}")
        key = key.strip()
        if key not in family.keys:
            raise UsageError(f"unknown parameter {key!r}; valid keys: {', '.join(family.keys) or '(none)'}")
        params[key] = parse_real(value)
    return params


def _parse_sweep(family: _Family, text: str) -> tuple[str, list[float]]:
    key, sep, rng = text.partition("=")
    if not sep:
        raise UsageError(f"--sweep expects key=lo:hi:steps, got {text!r}")
    key = key.strip()
    if key not in family.keys:
        raise UsageError(f"unknown sweep parameter {key!r}; valid keys: {', '.join(family.keys) or '(none)'}")
    parts = rng.split(":")
    if len(parts) != 3:
        raise UsageError(f"--sweep range must be lo:hi:steps, got {rng!r}")
    lo, hi = parse_real(parts[0]), parse_real(parts[1])
    try:
        steps = int(parts[2])
    except ValueError:
        raise UsageError(f"sweep steps must be an integer, got {parts[2]!r}") from None
    if steps < 1:
        raise UsageError("sweep steps must be >= 1")
    values = [float(v) for v in np.linspace(lo, hi, steps + 1)]
    return key, values


def _parse_geometry(text: str) -> ed.ModeGeometry:
    parts = text.split(":")
    if len(parts) != 4:
        raise UsageError(f"--geometry expects kind:omega1:omega2:cosangle, got {text!r}")
    kind = parts[0].strip()
    if kind not in ("traveling", "standing"):
        raise UsageError(f"geometry kind must be 'traveling' or 'standing', got {kind!r}")
    w1, w2, c = parse_real(parts[1]), parse_real(parts[2]), parse_real(parts[3])
    if not (w1 > 0 and w2 > 0):
        raise UsageError("geometry frequencies must be positive")
    if not -1.0 <= c <= 1.0:
        raise UsageError("geometry cosangle must lie in [-1, 1]")
    khat2 = (math.sqrt(max(0.0, 1.0 - c * c)), 0.0, c)
    return ed.ModeGeometry(kind=kind, omega1=w1, omega2=w2, khat2=khat2)


# --------------------------------------------------------------------------
# Output helpers
# --------------------------------------------------------------------------


def _fmt(value: object) -> str:
    """Cell formatting: floats at 9 significant digits, bools lowercase."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.9g}"
    return str(value)


def _render_csv(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(cell) for cell in row])
    return buf.getvalue()


def _render_json(doc: Mapping[str, object]) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _json_rows(header: Sequence[str], rows: Sequence[Sequence[object]]) -> list[dict[str, object]]:
    return [dict(zip(header, row)) for row in rows]


# --------------------------------------------------------------------------
# Subcommand implementations
# --------------------------------------------------------------------------


def _cmd_sweep(args: argparse.Namespace) -> int:
    family = _FAMILIES[args.family]
    params = _parse_assignments(family, args.set or [])
    key, values = _parse_sweep(family, args.sweep)

    if family.kind == "one":
        header = [key, "n", "R", "F"]
    elif family.kind == "two":
        header = [key, "n1", "n2", "R1", "R2", "R3", "R4", "F"]
    else:
        header = [key, "f"]

    rows: list[list[object]] = []
    for v in values:
        point = dict(params)
        point[key] = v
        try:
            m = family.build(point)
        except sf.DegenerateStateError:
            rows.append([v] + [None] * (len(header) - 1))
            continue
        if family.kind == "one":
            rows.append([v, m.n, m.pair_mag, m.pair_mag - m.n])
        elif family.kind == "two":
            rows.append([v, m.n1, m.n2, m.R1, m.R2, m.R3, m.R4, m.R1 - m.n1])
        else:
            rows.append([v, float(m)])

    if args.format == "csv":
        _emit(_render_csv(header, rows), args.out)
    else:
        doc = {
            "command": "sweep",
            "seed": None,
            "config": {
                "family": args.family,
                "sweep": {"key": key, "lo": values[0], "hi": values[-1], "steps": len(values) - 1},
                "params": params,
            },
            "rows": _json_rows(header, rows),
        }
        _emit(_render_json(doc), args.out)
    return 0


def _cmd_search(args: argparse.Namespace) -> int:
    space = _SEARCH_SPACES[args.family]()
    cfg = SearchConfig(starts=args.starts, seed=args.seed)
    report = multi_start(space, cfg)

    header = ["rank", "members", "iterations", "converged", "grad_norm", "F", "n", "R", "gamma"]
    header += list(space.names)
    rows: list[list[object]] = []
    for rank, ext in enumerate(report.extrema, start=1):
        rows.append(
            [rank, ext.members, ext.iterations, ext.converged, ext.grad_norm, ext.F, ext.n, ext.R, ext.gamma]
            + [float(p) for p in ext.params]
        )

    if args.format == "csv":
        _emit(_render_csv(header, rows), args.out)
    else:
        doc = {
            "command": "search",
            "seed": args.seed,
            "config": {
                "family": args.family,
                "starts": args.starts,
                "fd_step": cfg.fd_step,
                "step_init": cfg.step_init,
                "armijo_c": cfg.armijo_c,
                "grad_tol": cfg.grad_tol,
                "max_iters": cfg.max_iters,
            },
            "extrema": [
                {
                    "rank": rank,
                    "params": dict(zip(space.names, (float(p) for p in ext.params))),
                    "F": ext.F,
                    "n": ext.n,
                    "R": ext.R,
                    "gamma": ext.gamma,
                    "grad_norm": ext.grad_norm,
                    "iterations": ext.iterations,
                    "converged": ext.converged,
                    "members": ext.members,
                }
                for rank, ext in enumerate(report.extrema, start=1)
            ],
            "failed_starts": report.failed_starts,
        }
        _emit(_render_json(doc), args.out)
    return 0


def _lift_to_two_mode(m: object, kind: str) -> sf.TwoModeMoments:
    """Embed a one-mode family as mode 1 of a two-mode grid (mode 2 empty)."""
    if kind == "two":
        return m  # type: ignore[return-value]
    if kind == "one":
        return sf.TwoModeMoments(
            n1=m.n, n2=0.0, R1=m.pair_mag, R2=0.0, R3=0.0, R4=0.0,
            gamma1=m.pair_phase, gamma2=0.0, gamma3=0.0, gamma4=0.0,
        )
    raise UsageError("this family has no spatial density (scalar figure-of-merit only)")


def _cmd_density(args: argparse.Namespace) -> int:
    family = _FAMILIES[args.family]
    params = _parse_assignments(family, args.set or [])
    geometry = _parse_geometry(args.geometry)
    if args.grid_n < 16:
        raise UsageError("--grid-n must be at least 16")
    if not args.window > 0:
        raise UsageError("--window must be positive")

    moments = _lift_to_two_mode(family.build(params), family.kind)
    profile = ed.density_profile(moments, geometry, args.window, args.grid_n)

    header = ["kind", "x1", "x2", "x3", "t", "rho"]
    rows: list[list[object]] = [
        ["sample", p.x[0], p.x[1], p.x[2], p.t, rho] for p, rho in profile.samples
    ]
    pmin, vmin = profile.min_found
    rows.append(["min", pmin.x[0], pmin.x[1], pmin.x[2], pmin.t, vmin])

    if args.format == "csv":
        _emit(_render_csv(header, rows), args.out)
    else:
        doc = {
            "command": "density",
            "seed": None,
            "config": {
                "family": args.family,
                "params": params,
                "geometry": {
                    "kind": geometry.kind,
                    "omega1": geometry.omega1,
                    "omega2": geometry.omega2,
                    "cosangle": geometry.cos_angle(),
                },
                "window": args.window,
                "grid_n": args.grid_n,
            },
            "rows": _json_rows(header, rows),
        }
        _emit(_render_json(doc), args.out)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    families = tuple(args.family) if args.family else verification.FAMILIES
    reports = verification.verify_all(families, draws=args.draws, seed=args.seed, cutoff_cap=args.cutoff)
    identities = verification.appendix_identity_report(cutoff_cap=max(args.cutoff, 8192)) if args.draws > 0 else []

    header = ["kind", "name", "detail", "deviation", "tolerance", "tail_bound", "passed", "note"]
    rows: list[list[object]] = []
    failed = False
    for rep in reports:
        worst = "; ".join(f"{k}={v:.9g}" for k, v in rep.worst_params.items())
        rows.append(
            [
                "family",
                rep.family,
                f"draws={rep.draws}",
                rep.max_abs_deviation,
                max(1e-8, 10.0 * rep.tail_bound),
                rep.tail_bound,
                rep.passed,
                worst,
            ]
        )
        failed = failed or not rep.passed
    for row in identities:
        rows.append(
            ["identity", row.name, f"r={row.r:g}", row.deviation, row.tolerance, None, row.passed, row.note]
        )
        failed = failed or (row.required and not row.passed)

    if args.format == "csv":
        _emit(_render_csv(header, rows), args.out)
    else:
        doc = {
            "command": "verify",
            "seed": args.seed,
            "config": {"families": list(families), "draws": args.draws, "cutoff": args.cutoff},
            "rows": _json_rows(header, rows),
        }
        _emit(_render_json(doc), args.out)
    return 2 if failed else 0


# --------------------------------------------------------------------------
# Parser assembly
# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """ArgumentParser variant whose usage errors exit with status 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_io_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="subvacuum",
        description="Energy-density bounds of one- and two-mode scalar field states.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p_sweep = sub.add_parser(
        "sweep",
        help="tabulate moments while one parameter varies",
        description="Vary one family parameter over lo..hi and tabulate n, R and F = R - n "
        "(two-mode families: occupations and all four channels, F = R1 - n1).",
    )
    p_sweep.add_argument("--family", required=True, choices=FAMILY_NAMES)
    p_sweep.add_argument("--set", action="append", metavar="KEY=VALUE", help="fix a parameter (repeatable)")
    p_sweep.add_argument("--sweep", required=True, metavar="KEY=LO:HI:STEPS", help="parameter to vary")
    _add_io_flags(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_search = sub.add_parser(
        "search",
        help="multi-start ascent on F = R - n",
        description="Run seeded multi-start projected gradient ascent and list the clustered extrema.",
    )
    p_search.add_argument("--family", required=True, choices=SEARCH_FAMILY_NAMES)
    p_search.add_argument("--starts", type=int, default=64)
    p_search.add_argument("--seed", type=int, default=0)
    _add_io_flags(p_search)
    p_search.set_defaults(func=_cmd_search)

    p_density = sub.add_parser(
        "density",
        help="energy density on a spacetime grid",
        description="Sample the density over t and the wave-vector span, then refine and append "
        "the minimum found.  One-mode families occupy mode 1; mode 2 stays empty.",
    )
    p_density.add_argument("--family", required=True, choices=FAMILY_NAMES)
    p_density.add_argument("--set", action="append", metavar="KEY=VALUE", help="fix a parameter (repeatable)")
    p_density.add_argument(
        "--geometry",
        default="traveling:1:1:1",
        metavar="KIND:W1:W2:COSANGLE",
        help="mode kind, frequencies and propagation angle (default traveling:1:1:1)",
    )
    p_density.add_argument("--window", type=float, default=8.0, help="scan window in t and space")
    p_density.add_argument("--grid-n", type=int, default=64, dest="grid_n", help="grid points per axis")
    _add_io_flags(p_density)
    p_density.set_defaults(func=_cmd_density)

    p_verify = sub.add_parser(
        "verify",
        help="closed forms vs the truncated number-basis oracle",
        description="Randomized moment comparison per family plus fixed matrix-element identity "
        "checks; exits 2 if any required row fails.",
    )
    p_verify.add_argument(
        "--family", action="append", choices=verification.FAMILIES, help="restrict to a family (repeatable)"
    )
    p_verify.add_argument("--draws", type=int, default=100)
    p_verify.add_argument("--seed", type=int, default=7)
    p_verify.add_argument("--cutoff", type=int, default=4096, help="hard cap on the oracle truncation")
    _add_io_flags(p_verify)
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"subvacuum {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except (
        TruncationError,
        DegenerateSuperpositionError,
        sf.DegenerateStateError,
        AscentFailure,
        ValueError,
        ZeroDivisionError,
        FloatingPointError,
    ) as exc:
        print(f"subvacuum {args.command}: numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
