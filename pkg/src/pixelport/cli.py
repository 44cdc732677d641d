"""Command-line front end.

Subcommands:

* ``teleport``: run a whole image through the channel per a config file.
* ``profile``: emit the squeezing-ring radial cut as CSV.
* ``fidelity-curve``: emit radial fidelity curves for one or more Xi.
* ``oracle-verify``: run the Fock-space oracle suite and print a table.

Exit codes: 0 success, 1 invalid configuration or arguments, 2 unreadable
or unwritable files, 3 oracle check failure.  The env var PIXELPORT_THREADS
caps worker threads for the per-pixel channels (default: single-threaded;
results are identical either way).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import channel, fock, spdc
from .config import ConfigError, RunConfig, load_config
from .grid import GridGeometry, decompose, synthesize
from .imagefile import ImageFormatError, read_image, write_image

FIG3_PAIRS = ((1.0, 0.5), (1.0, 0.7), (0.7, 0.5))
FIG4_XIS = (1.0, 10.0)


def _fmt(x: float) -> str:
    return repr(float(x))


def _thread_cap() -> int | None:
    raw = os.environ.get("PIXELPORT_THREADS")
    if raw is None:
        return None
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"PIXELPORT_THREADS must be an integer, got {raw!r}") from None
    if n < 1:
        raise ConfigError("PIXELPORT_THREADS must be at least 1")
    return n


def _write_csv(path, comments: list[str], header: str, rows) -> None:
    lines = [f"# {c}" for c in comments]
    lines.append(header)
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def _run_params(cfg: RunConfig, geometry: GridGeometry, raw_plane: bool) -> list[tuple[str, str]]:
    params: list[tuple[str, str]] = [("mode", cfg.mode)]
    if cfg.mode == "ideal":
        params.append(("ideal_r", _fmt(cfg.ideal_r)))
    elif cfg.ring is not None:
        params += [("ring_r0", _fmt(cfg.ring.r0)), ("ring_width", _fmt(cfg.ring.R)), ("ring_xi", _fmt(cfg.ring.Xi))]
    else:
        s = cfg.spdc
        params += [
            ("spdc_pump_waist", _fmt(s.w_p)),
            ("spdc_mode_waist", _fmt(s.w_0)),
            ("spdc_length", _fmt(s.L)),
            ("spdc_pump_k", _fmt(s.k_p)),
            ("spdc_signal_k", _fmt(s.k_d)),
            ("spdc_angle", _fmt(s.theta_d)),
            ("spdc_focal", _fmt(s.f)),
            ("spdc_xi", _fmt(s.Xi)),
        ]
    params += [
        ("seed", str(cfg.seed)),
        ("n_shots", str(cfg.n_shots)),
        ("width", str(geometry.width)),
        ("height", str(geometry.height)),
        ("pitch", _fmt(geometry.pitch)),
        ("origin_x", _fmt(geometry.origin[0])),
        ("origin_y", _fmt(geometry.origin[1])),
        ("raw_plane", str(raw_plane).lower()),
        ("input", cfg.input_path),
    ]
    return params


def cmd_teleport(args) -> int:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.shots is not None:
        if args.shots < 0:
            raise ConfigError("--shots must be non-negative")
        cfg.n_shots = args.shots

    samples, _, _ = read_image(cfg.input_path)
    height, width = samples.shape
    geometry = GridGeometry(width=width, height=height, pitch=cfg.pitch, origin=cfg.origin)
    field = decompose(samples, geometry)

    if cfg.mode == "ideal":
        profile = spdc.SqueezingProfile.uniform(geometry, cfg.ideal_r)
    else:
        ring = cfg.ring if cfg.ring is not None else spdc.ring_from_spdc(cfg.spdc)
        profile = spdc.profile_for_grid(geometry, ring)

    out_field, fmap = channel.teleport_image(
        field,
        profile,
        seed=cfg.seed,
        n_shots=cfg.n_shots,
        raw_plane=args.raw_plane,
        max_workers=_thread_cap(),
    )

    params = _run_params(cfg, geometry, args.raw_plane)
    comments = [f"{k}={v}" for k, v in params]
    write_image(cfg.output_path, synthesize(out_field), encoding="re_im", comments=tuple(comments))
    _write_csv(
        cfg.fidelity_map_path,
        comments + [f"image_fidelity={_fmt(fmap.image_fidelity)}"],
        ",".join(f"col{i}" for i in range(geometry.width)),
        fmap.per_pixel,
    )

    summary = dict(params)
    summary["image_fidelity"] = _fmt(fmap.image_fidelity)
    summary["output"] = cfg.output_path
    summary["fidelity_map"] = cfg.fidelity_map_path
    if args.json:
        Path(cfg.summary_path).write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    else:
        Path(cfg.summary_path).write_text("".join(f"{k}={v}\n" for k, v in summary.items()))
    print(f"image_fidelity={_fmt(fmap.image_fidelity)}")
    return 0


def _ring_from_args(args, xi: float = 1.0) -> spdc.RingParams:
    try:
        return spdc.RingParams(r0=args.r0, R=args.ring_width, Xi=xi)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _profile_comments(ring: spdc.RingParams, samples: int) -> list[str]:
    return [
        f"r0={_fmt(ring.r0)}",
        f"ring_width={_fmt(ring.R)}",
        f"xi={_fmt(ring.Xi)}",
        f"samples={samples}",
    ]


def cmd_profile(args) -> int:
    if args.preset:
        outdir = Path(args.out_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        for r0, width in FIG3_PAIRS:
            ring = spdc.RingParams(r0=r0, R=width, Xi=1.0)
            x, eta, eta_norm = spdc.radial_profile(ring, args.samples)
            path = outdir / f"ring_profile_r0-{r0}_R-{width}.csv"
            _write_csv(path, _profile_comments(ring, args.samples), "x,eta,eta_sq_norm", zip(x, eta, eta_norm))
            print(path)
        return 0
    if args.r0 is None or args.ring_width is None:
        raise ConfigError("profile needs --r0 and --ring-width (or --preset fig3)")
    ring = _ring_from_args(args, xi=args.xi)
    x, eta, eta_norm = spdc.radial_profile(ring, args.samples)
    _write_csv(args.out, _profile_comments(ring, args.samples), "x,eta,eta_sq_norm", zip(x, eta, eta_norm))
    print(args.out)
    return 0


def cmd_fidelity_curve(args) -> int:
    if args.preset:
        outdir = Path(args.out_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        for r0, width in FIG3_PAIRS:
            path = outdir / f"fidelity_curve_r0-{r0}_R-{width}.csv"
            _emit_fidelity_curve(path, r0, width, FIG4_XIS, args.samples)
            print(path)
        return 0
    if args.r0 is None or args.ring_width is None:
        raise ConfigError("fidelity-curve needs --r0 and --ring-width (or --preset fig4)")
    try:
        xis = tuple(float(v) for v in args.xi.split(","))
    except ValueError:
        raise ConfigError(f"--xi must be a comma-separated number list, got {args.xi!r}") from None
    _emit_fidelity_curve(args.out, args.r0, args.ring_width, xis, args.samples)
    print(args.out)
    return 0


def _emit_fidelity_curve(path, r0: float, width: float, xis, samples: int) -> None:
    cols = []
    x = None
    for xi in xis:
        ring = spdc.RingParams(r0=r0, R=width, Xi=xi)
        x, eta, _ = spdc.radial_profile(ring, samples)
        cols.append((1.0 + np.tanh(np.abs(eta))) / 2.0)
    comments = [
        f"r0={_fmt(r0)}",
        f"ring_width={_fmt(width)}",
        f"xi_list={','.join(_fmt(v) for v in xis)}",
        f"samples={samples}",
    ]
    header = "x," + ",".join(f"fidelity_xi_{_fmt(v)}" for v in xis)
    _write_csv(path, comments, header, zip(x, *cols))


def cmd_oracle_verify(args) -> int:
    overrides: dict[str, float] = {}
    for spec_str in args.tol or ():
        name, sep, value = spec_str.partition("=")
        if not sep:
            raise ConfigError(f"--tol expects NAME=VALUE, got {spec_str!r}")
        try:
            overrides[name.strip()] = float(value)
        except ValueError:
            raise ConfigError(f"--tol {name}: bad value {value!r}") from None
    try:
        results = fock.run_all_checks(dim=args.dim, photo_dim=args.photo_dim, tolerances=overrides or None)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    failing = [r.name for r in results if not r.passed]
    if args.json:
        payload = {
            "dim": args.dim,
            "photo_dim": args.photo_dim,
            "checks": [
                {"name": r.name, "value": r.value, "tolerance": r.tolerance, "passed": r.passed}
                for r in results
            ],
            "passed": not failing,
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        name_w = max(len(r.name) for r in results)
        print(f"{'check':<{name_w}}  {'value':>12}  {'tolerance':>12}  status")
        for r in results:
            status = "pass" if r.passed else "FAIL"
            print(f"{r.name:<{name_w}}  {r.value:>12.4e}  {r.tolerance:>12.4e}  {status}")
    if failing:
        print(f"failing: {', '.join(failing)}", file=sys.stderr)
        return 3
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pixelport", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("teleport", help="teleport an image per a config file")
    p.add_argument("--config", required=True, help="path to the key=value run config")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.add_argument("--shots", type=int, default=None, help="override the config n_shots")
    p.add_argument("--raw-plane", action="store_true", help="emit the physical (point-reflected) plane")
    p.add_argument("--json", action="store_true", help="write the summary as JSON")
    p.set_defaults(func=cmd_teleport)

    p = sub.add_parser("profile", help="emit the squeezing-ring radial profile")
    p.add_argument("--r0", type=float, default=None, help="ring radius")
    p.add_argument("--ring-width", type=float, default=None, help="ring width R")
    p.add_argument("--xi", type=float, default=1.0, help="squeezing scale Xi")
    p.add_argument("--samples", type=int, default=512, help="radial sample count")
    p.add_argument("--out", default="ring_profile.csv", help="output CSV path")
    p.add_argument("--preset", choices=("fig3",), default=None, help="emit all reference parameter sets")
    p.add_argument("--out-dir", default=".", help="output directory for --preset")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("fidelity-curve", help="emit radial fidelity curves")
    p.add_argument("--r0", type=float, default=None, help="ring radius")
    p.add_argument("--ring-width", type=float, default=None, help="ring width R")
    p.add_argument("--xi", default="1", help="comma-separated Xi list")
    p.add_argument("--samples", type=int, default=512, help="radial sample count")
    p.add_argument("--out", default="fidelity_curve.csv", help="output CSV path")
    p.add_argument("--preset", choices=("fig4",), default=None, help="emit all reference parameter sets")
    p.add_argument("--out-dir", default=".", help="output directory for --preset")
    p.set_defaults(func=cmd_fidelity_curve)

    p = sub.add_parser("oracle-verify", help="run the Fock-oracle check suite")
    p.add_argument("--dim", type=int, default=30, help="one/two-mode truncation (default 30)")
    p.add_argument("--photo-dim", type=int, default=10, help="three-mode truncation (default 10)")
    p.add_argument("--tol", action="append", metavar="NAME=VALUE", help="override a check tolerance")
    p.add_argument("--json", action="store_true", help="emit machine-readable results")
    p.set_defaults(func=cmd_oracle_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ImageFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
