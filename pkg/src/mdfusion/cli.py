"""Command-line front end: ``mdfusion <subcommand> ...``.

Experiments are described by a manifest written by ``simulate``; every
later step reads that manifest, so a run is reproducible from one JSON
file plus its seeds.  Emitted files carry no timestamps or wall times
(timing goes to stderr), which keeps reruns byte-identical.

Exit codes: 0 success, 2 configuration or usage error, 1 runtime error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import jsonschema
import numpy as np

from .baselines import bicubic_interpolate, shepard_interpolate
from .denoise import DSG_NLM_LABEL, DenoiserConfig, internal_nlm_denoise, lbnlm_denoise
from .forward import InversionProblem, invert
from .imagecore import MeasurementSet, SparseSample, SuperResolution
from .imageio import ImageFormatError, load_image, load_mask, save_image, save_mask
from .metrics import acquisition_stats, rmse_percent
from .patchlib import (DEFAULT_MAX_PATCHES, DEFAULT_PATCH_SIZE, DEFAULT_STRIDE, PatchLibrary,
                       build_library, load_library, save_library)
from .pnp import BETA_DEFAULTS, PnPConfig, pnp_reconstruct
from .synthbench import Region, SparseMode, gen_experiment, gen_lattice_scene, gen_texture_scene

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_CONFIG = 2

MANIFEST_VERSION = 1

_NUMBER = {"type": "number"}

CONFIG_SCHEMA = {
    "type": "object",
    "required": ["scene", "mode", "library_region"],
    "additionalProperties": False,
    "properties": {
        "scene": {
            "type": "object",
            "required": ["kind", "width", "height"],
            "additionalProperties": False,
            "properties": {
                "kind": {"enum": ["lattice", "texture"]},
                "width": {"type": "integer", "minimum": 1},
                "height": {"type": "integer", "minimum": 1},
                "seed": {"type": "integer", "minimum": 0},
                "spot_spacing": {"type": "number", "exclusiveMinimum": 0},
                "spot_sigma": {"type": "number", "exclusiveMinimum": 0},
                "amplitude": _NUMBER,
                "jitter": {"type": "number", "minimum": 0},
                "background": _NUMBER,
                "n_waves": {"type": "integer", "minimum": 1},
                "n_cracks": {"type": "integer", "minimum": 0},
                "contrast": _NUMBER,
            },
        },
        "mode": {
            "type": "object",
            "required": ["kind"],
            "additionalProperties": False,
            "properties": {
                "kind": {"enum": ["sr", "sparse"]},
                "factor": {"type": "integer", "minimum": 2},
                "fraction": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
                "seed": {"type": "integer", "minimum": 0},
            },
            "if": {"properties": {"kind": {"const": "sr"}}},
            "then": {"required": ["factor"]},
            "else": {"required": ["fraction"]},
        },
        "library_region": {
            "type": "object",
            "required": ["x", "y", "width", "height"],
            "additionalProperties": False,
            "properties": {
                "x": {"type": "integer", "minimum": 0},
                "y": {"type": "integer", "minimum": 0},
                "width": {"type": "integer", "minimum": 1},
                "height": {"type": "integer", "minimum": 1},
            },
        },
        "sigma_w": {"type": "number", "minimum": 0},
        "noise_seed": {"type": "integer", "minimum": 0},
    },
}


class ConfigError(Exception):
    """Bad configuration, manifest or arguments (exit code 2)."""


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")


def _locate(text: str, path) -> int | None:
    """Best-effort line number of the JSON key at ``path``."""
    pos, line = 0, None
    for key in path:
        if not isinstance(key, str):
            continue
        hit = text.find(json.dumps(key), pos)
        if hit < 0:
            return line
        pos = hit
        line = text.count("\n", 0, hit) + 1
    return line


def _schema_message(err: jsonschema.ValidationError, text: str, source: str) -> str:
    path = list(err.absolute_path)
    if err.validator == "required":
        missing = err.message.split("'")[1] if "'" in err.message else err.message
        field = ".".join(str(p) for p in path + [missing])
        what = f"missing required field '{field}'"
    else:
        field = ".".join(str(p) for p in path) or "<root>"
        what = f"field '{field}': {err.message}"
    line = _locate(text, path)
    where = f"{source}:{line}" if line else source
    return f"{where}: {what}"


def load_config(path: Path) -> dict:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    validator = jsonschema.Draft7Validator(CONFIG_SCHEMA)
    errors = sorted(validator.iter_errors(cfg), key=lambda e: list(e.absolute_path))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise ConfigError(_schema_message(err, text, str(path)))
    return cfg


def _make_scene(spec: dict) -> np.ndarray:
    kw = {k: v for k, v in spec.items() if k not in ("kind", "width", "height")}
    gen = gen_lattice_scene if spec["kind"] == "lattice" else gen_texture_scene
    try:
        return gen(spec["width"], spec["height"], **kw)
    except TypeError:
        raise ConfigError(f"scene kind {spec['kind']!r} does not take "
                          f"{sorted(kw)}") from None


class Manifest:
    """Parsed experiment manifest; file entries are relative to its directory."""

    def __init__(self, path: Path):
        self.path = Path(path)
        self.root = self.path.parent
        try:
            self.data = json.loads(self.path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read manifest {path}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
        for key in ("mode", "files", "counts"):
            if key not in self.data:
                raise ConfigError(f"{path}: manifest lacks '{key}'")

    def file(self, key: str) -> Path | None:
        name = self.data["files"].get(key)
        return None if name is None else self.root / name

    def require(self, key: str) -> Path:
        p = self.file(key)
        if p is None or not p.exists():
            raise ConfigError(f"{self.path}: manifest file '{key}' is missing")
        return p

    @property
    def kind(self) -> str:
        return self.data["mode"]["kind"]

    @property
    def counts(self) -> dict:
        return self.data["counts"]

    def measurements(self) -> MeasurementSet:
        sigma_w = float(self.data.get("sigma_w", 0.0))
        y = load_image(self.require("measurements"))
        if self.kind == "sr":
            return MeasurementSet(y, SuperResolution(int(self.data["mode"]["factor"])), sigma_w)
        mask = load_mask(self.require("mask"))
        return MeasurementSet(y.ravel(), SparseSample(mask), sigma_w)

    def ground_truth(self) -> np.ndarray | None:
        p = self.file("ground_truth")
        return load_image(p) if p is not None and p.exists() else None


def _library_from(args, manifest: Manifest) -> PatchLibrary:
    if getattr(args, "library", None):
        return load_library(args.library)
    image = load_image(manifest.require("library_image"))
    return build_library([image], args.patch_size, args.stride, args.max_patches, args.seed,
                         names=[manifest.data["files"]["library_image"]])


def _baseline(meas: MeasurementSet, method: str) -> np.ndarray:
    if method == "cubic":
        if not isinstance(meas.model, SuperResolution):
            raise ConfigError("method 'cubic' needs a super-resolution manifest")
        return bicubic_interpolate(meas.y, meas.model.factor)
    if not isinstance(meas.model, SparseSample):
        raise ConfigError("method 'shepard' needs a sparse-sampling manifest")
    return shepard_interpolate(meas)


def _default_beta(manifest: Manifest) -> float:
    return BETA_DEFAULTS["sparse"] if manifest.kind == "sparse" else BETA_DEFAULTS["gold"]


def _run_method(args, manifest: Manifest, method: str, beta: float | None = None):
    """Run one reconstruction; returns ``(image, report dict)``."""
    meas = manifest.measurements()
    counts = manifest.counts
    rho, speedup = acquisition_stats(counts["n_recon"], counts["m_low"], counts["m_high"])
    gt = manifest.ground_truth()
    if method in ("cubic", "shepard"):
        out = _baseline(meas, method)
        report = {"method": method}
    else:
        init = _baseline(meas, "cubic" if manifest.kind == "sr" else "shepard")
        if method == "mdf":
            lib = _library_from(args, manifest)
            prior = lambda v, s: lbnlm_denoise(v, lib, s)  # noqa: E731
            label = "mdf"
        else:
            def prior(v, s):
                return internal_nlm_denoise(v, DenoiserConfig(
                    s, "internal_nlm", args.patch_size, args.search_radius, True,
                    args.sinkhorn_iters))
            label = DSG_NLM_LABEL
        sigma_lambda = "auto" if args.sigma_lambda is None else args.sigma_lambda
        pcfg = PnPConfig(beta if beta is not None else
                         (args.beta if args.beta is not None else _default_beta(manifest)),
                         sigma_lambda, None, args.max_iters, args.residual_tol)
        out, rep = pnp_reconstruct(meas, prior, pcfg, init)
        print(f"{label}: {rep.iterations} iterations in {rep.wall_time:.2f} s",
              file=sys.stderr)
        report = rep.to_json(include_timing=False)
        report["method"] = label
    report["rho"] = rho
    report["speedup"] = speedup
    report["rmse_percent"] = None if gt is None else rmse_percent(out, gt)
    return out, report


def _residual_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "r_running", "r_eq18"])
    for k, (run, exact) in enumerate(zip(report["running_residuals"],
                                         report["residual_history"]), start=1):
        w.writerow([k, repr(float(run)), repr(float(exact))])
    return buf.getvalue()


def residual_svg(history, width: int = 480, height: int = 320) -> str:
    """Log-scale residual curve drawn with raw SVG path elements."""
    pad = 48
    vals = [max(float(r), 1e-300) for r in history] or [1.0]
    logs = [math.log10(v) for v in vals]
    lo, hi = math.floor(min(logs)), math.ceil(max(logs))
    if hi == lo:
        hi = lo + 1
    n = len(vals)

    def px(i):
        return pad + (width - 2 * pad) * (i / (n - 1) if n > 1 else 0.0)

    def py(v):
        return height - pad - (height - 2 * pad) * (v - lo) / (hi - lo)

    d = " ".join(f"{'M' if i == 0 else 'L'}{px(i):.2f},{py(v):.2f}" for i, v in enumerate(logs))
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<path d="M{pad},{pad} L{pad},{height - pad} L{width - pad},{height - pad}" '
        'stroke="black" fill="none"/>',
    ]
    for e in range(lo, hi + 1):
        y = py(e)
        lines.append(f'<path d="M{pad - 4},{y:.2f} L{pad},{y:.2f}" stroke="black"/>')
        lines.append(f'<text x="{pad - 6}" y="{y + 4:.2f}" font-size="10" '
                     f'text-anchor="end">1e{e}</text>')
    lines.append(f'<text x="{width / 2:.0f}" y="{height - 12}" font-size="12" '
                 'text-anchor="middle">iteration</text>')
    lines.append(f'<path d="{d}" stroke="steelblue" stroke-width="1.5" fill="none"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_simulate(args) -> int:
    cfg = load_config(Path(args.config))
    out = Path(args.out_dir)
    scene = _make_scene(cfg["scene"])
    mode_cfg = cfg["mode"]
    if mode_cfg["kind"] == "sr":
        mode = SuperResolution(mode_cfg["factor"])
    else:
        mode = SparseMode(mode_cfg["fraction"], mode_cfg.get("seed", 0))
    reg = cfg["library_region"]
    region = Region(reg["x"], reg["y"], reg["width"], reg["height"])
    if not region.contains(scene.shape):
        raise ConfigError(f"library_region {reg} lies outside the "
                          f"{scene.shape[1]}x{scene.shape[0]} scene")
    if mode_cfg["kind"] == "sr":
        L = mode_cfg["factor"]
        if scene.shape[0] % L or scene.shape[1] % L:
            raise ConfigError(f"scene size is not divisible by factor {L}")
    exp = gen_experiment(scene, mode, region, cfg.get("sigma_w", 0.0), cfg.get("noise_seed", 0))

    out.mkdir(parents=True, exist_ok=True)
    files = {"ground_truth": "ground_truth.f64", "library_image": "library_image.f64",
             "measurements": "measurements.f64"}
    save_image(exp.ground_truth, out / files["ground_truth"])
    save_image(exp.library_image, out / files["library_image"])
    y = exp.measurements.y
    save_image(y if y.ndim == 2 else y[None, :], out / files["measurements"])
    if exp.mask is not None:
        files["mask"] = "mask.json"
        save_mask(exp.mask, out / files["mask"])
    manifest = {
        "manifest_version": MANIFEST_VERSION,
        "config": cfg,
        "mode": mode_cfg,
        "sigma_w": float(cfg.get("sigma_w", 0.0)),
        "files": files,
        "counts": {"n_recon": exp.n_recon, "m_low": exp.m_low, "m_high": exp.m_high},
    }
    _write_text(out / "manifest.json", _dump_json(manifest))
    print(out / "manifest.json")
    return EXIT_OK


def cmd_build_library(args) -> int:
    if args.manifest:
        manifest = Manifest(args.manifest)
        images = [load_image(manifest.require("library_image"))]
        names = [manifest.data["files"]["library_image"]]
    else:
        if not args.images:
            raise ConfigError("give --manifest or at least one image")
        images = [load_image(p) for p in args.images]
        names = [Path(p).name for p in args.images]
    lib = build_library(images, args.patch_size, args.stride, args.max_patches, args.seed, names)
    save_library(lib, args.output)
    print(f"{lib.n_patches} patches of {lib.patch_size}x{lib.patch_size} -> {args.output}")
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    manifest = Manifest(args.manifest)
    out_dir = Path(args.out_dir)
    out, report = _run_method(args, manifest, args.method)
    out_dir.mkdir(parents=True, exist_ok=True)
    save_image(out, out_dir / f"{args.method}.f64")
    _write_text(out_dir / f"{args.method}.report.json", _dump_json(report))
    if "residual_history" in report:
        _write_text(out_dir / f"{args.method}.residuals.csv", _residual_csv(report))
    print(_dump_json({"method": report["method"], "rmse_percent": report["rmse_percent"]}),
          end="")
    return EXIT_OK


def cmd_baseline(args) -> int:
    manifest = Manifest(args.manifest)
    out = _baseline(manifest.measurements(), args.method)
    save_image(out, args.output)
    gt = manifest.ground_truth()
    if gt is not None:
        print(f"rmse_percent {rmse_percent(out, gt)!r}")
    return EXIT_OK


def cmd_denoise(args) -> int:
    img = load_image(args.input)
    if args.prior == "lbnlm":
        if not args.library:
            raise ConfigError("--prior lbnlm needs --library")
        out = lbnlm_denoise(img, load_library(args.library), args.sigma_n)
    else:
        cfg = DenoiserConfig(args.sigma_n, "internal_nlm", args.patch_size, args.search_radius,
                             args.prior == "nlm-sym", args.sinkhorn_iters)
        out = internal_nlm_denoise(img, cfg)
    save_image(out, args.output)
    return EXIT_OK


def cmd_invert(args) -> int:
    manifest = Manifest(args.manifest)
    meas = manifest.measurements()
    if args.sigma_w is not None:
        meas = MeasurementSet(meas.y, meas.model, args.sigma_w)
    x_tilde = load_image(args.input)
    out = invert(x_tilde, InversionProblem(meas, args.sigma_lambda))
    save_image(out, args.output)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    out = load_image(args.output)
    manifest = Manifest(args.manifest) if args.manifest else None
    if args.ground_truth:
        gt = load_image(args.ground_truth)
    elif manifest is not None and manifest.ground_truth() is not None:
        gt = manifest.ground_truth()
    else:
        raise ConfigError("no ground truth: pass --ground-truth or a manifest that has one")
    row = {"label": args.label or Path(args.output).name, "rmse_percent": rmse_percent(out, gt),
           "rho": None, "speedup": None, "n_recon": None, "m_low": None, "m_high": None}
    if manifest is not None:
        c = manifest.counts
        row["rho"], row["speedup"] = acquisition_stats(c["n_recon"], c["m_low"], c["m_high"])
        row.update(n_recon=c["n_recon"], m_low=c["m_low"], m_high=c["m_high"])
    if args.results:
        path = Path(args.results)
        new = not path.exists() or path.stat().st_size == 0
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("a", newline="", encoding="utf-8") as fh:
            w = csv.DictWriter(fh, fieldnames=list(row), lineterminator="\n")
            if new:
                w.writeheader()
            w.writerow({k: ("" if v is None else repr(v) if isinstance(v, float) else v)
                        for k, v in row.items()})
    if args.svg:
        if not args.report:
            raise ConfigError("--svg needs --report with a residual history")
        report = json.loads(Path(args.report).read_text(encoding="utf-8"))
        if "residual_history" not in report:
            raise ConfigError(f"{args.report} has no residual history")
        _write_text(Path(args.svg), residual_svg(report["residual_history"]))
    print(_dump_json(row), end="")
    return EXIT_OK


def cmd_sweep_beta(args) -> int:
    manifest = Manifest(args.manifest)
    if manifest.ground_truth() is None:
        raise ConfigError("sweep-beta needs a manifest with ground truth")
    try:
        betas = [float(b) for b in args.betas.split(",") if b.strip()]
    except ValueError:
        raise ConfigError(f"--betas must be comma-separated numbers, got {args.betas!r}") from None
    if not betas:
        raise ConfigError("--betas is empty")
    rows = []
    for beta in betas:
        _, report = _run_method(args, manifest, args.method, beta=beta)
        rows.append({"beta": beta, "rmse_percent": report["rmse_percent"],
                     "iterations": report["iterations"],
                     "final_residual": report["final_residual"]})
    best = min(rows, key=lambda r: r["rmse_percent"])
    result = {"method": args.method, "sweep": rows, "best_beta": best["beta"],
              "best_rmse_percent": best["rmse_percent"]}
    if args.output:
        _write_text(Path(args.output), _dump_json(result))
    print(_dump_json(result), end="")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_library_args(p):
    p.add_argument("--library", help="prebuilt library (.f64 with .json sidecar)")
    p.add_argument("--patch-size", type=int, default=DEFAULT_PATCH_SIZE)
    p.add_argument("--stride", type=int, default=DEFAULT_STRIDE)
    p.add_argument("--max-patches", type=_optional_int, default=DEFAULT_MAX_PATCHES,
                   help="subsample cap; 'none' keeps every patch")
    p.add_argument("--seed", type=int, default=0, help="library subsampling seed")


def _add_pnp_args(p):
    _add_library_args(p)
    p.add_argument("--sigma-lambda", type=float, default=None,
                   help="fixed sigma_lambda (default: estimated from the baseline)")
    p.add_argument("--max-iters", type=int, default=100)
    p.add_argument("--residual-tol", type=float, default=1e-4)
    p.add_argument("--search-radius", type=int, default=5, help="nlm-sym search radius")
    p.add_argument("--sinkhorn-iters", type=int, default=10)


def _optional_int(text: str):
    if text.lower() in ("none", "all", "0"):
        return None
    return int(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mdfusion", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="generate a synthetic experiment and its manifest")
    p.add_argument("config")
    p.add_argument("--out-dir", "-o", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("build-library", help="extract a patch library")
    p.add_argument("images", nargs="*")
    p.add_argument("--manifest")
    p.add_argument("--output", "-o", required=True)
    p.add_argument("--patch-size", type=int, default=DEFAULT_PATCH_SIZE)
    p.add_argument("--stride", type=int, default=DEFAULT_STRIDE)
    p.add_argument("--max-patches", type=_optional_int, default=DEFAULT_MAX_PATCHES)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_build_library)

    p = sub.add_parser("reconstruct", help="reconstruct the full-resolution image")
    p.add_argument("manifest")
    p.add_argument("--method", choices=["mdf", "cubic", "shepard", "nlm-sym"], default="mdf")
    p.add_argument("--out-dir", "-o", required=True)
    p.add_argument("--beta", type=float, default=None)
    _add_pnp_args(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("baseline", help="cubic or Shepard reconstruction only")
    p.add_argument("manifest")
    p.add_argument("--method", choices=["cubic", "shepard"], required=True)
    p.add_argument("--output", "-o", required=True)
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("denoise", help="run one denoiser on an image")
    p.add_argument("input")
    p.add_argument("--prior", choices=["lbnlm", "nlm", "nlm-sym"], required=True)
    p.add_argument("--sigma-n", type=float, required=True)
    p.add_argument("--library")
    p.add_argument("--patch-size", type=int, default=DEFAULT_PATCH_SIZE)
    p.add_argument("--search-radius", type=int, default=5)
    p.add_argument("--sinkhorn-iters", type=int, default=10)
    p.add_argument("--output", "-o", required=True)
    p.set_defaults(func=cmd_denoise)

    p = sub.add_parser("invert", help="apply the inversion operator to one image")
    p.add_argument("manifest")
    p.add_argument("input")
    p.add_argument("--sigma-lambda", type=float, required=True)
    p.add_argument("--sigma-w", type=float, default=None)
    p.add_argument("--output", "-o", required=True)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("evaluate", help="score an output and append to a results CSV")
    p.add_argument("output")
    p.add_argument("--manifest")
    p.add_argument("--ground-truth")
    p.add_argument("--results", help="CSV that gains one row per call")
    p.add_argument("--label")
    p.add_argument("--report", help="report JSON for --svg")
    p.add_argument("--svg", help="write the residual curve here")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep-beta", help="pick beta by RMSE over a grid")
    p.add_argument("manifest")
    p.add_argument("--betas", required=True, help="comma-separated grid, e.g. 0.1,0.36,1")
    p.add_argument("--method", choices=["mdf", "nlm-sym"], default="mdf")
    p.add_argument("--output", "-o")
    _add_pnp_args(p)
    p.set_defaults(func=cmd_sweep_beta)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ImageFormatError, FileNotFoundError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, TypeError, FloatingPointError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
