import csv
import json
import os
import subprocess
import sys

import numpy as np
import pytest

from mdfusion.baselines import bicubic_interpolate
from mdfusion.cli import main
from mdfusion.imageio import load_image
from mdfusion.metrics import acquisition_stats

SR_CONFIG = {
    "scene": {"kind": "lattice", "width": 32, "height": 32, "spot_spacing": 8,
              "spot_sigma": 1.5, "jitter": 0.5, "seed": 1},
    "mode": {"kind": "sr", "factor": 2},
    "library_region": {"x": 8, "y": 8, "width": 16, "height": 16},
    "sigma_w": 1.0,
    "noise_seed": 3,
}
SPARSE_CONFIG = {
    "scene": {"kind": "lattice", "width": 24, "height": 24, "seed": 2},
    "mode": {"kind": "sparse", "fraction": 0.2, "seed": 5},
    "library_region": {"x": 4, "y": 4, "width": 12, "height": 12},
}
FAST = ["--patch-size", "5", "--stride", "2", "--max-patches", "none", "--max-iters", "8"]


def simulate(tmp_path, cfg, name="run"):
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps(cfg, indent=2))
    assert main(["simulate", str(path), "-o", str(tmp_path / name)]) == 0
    return tmp_path / name / "manifest.json"


def tree_bytes(root):
    return {p.relative_to(root).as_posix(): p.read_bytes()
            for p in sorted(root.rglob("*")) if p.is_file()}


def test_simulate_writes_declared_files(tmp_path):
    manifest_path = simulate(tmp_path, SR_CONFIG)
    manifest = json.loads(manifest_path.read_text())
    for name in manifest["files"].values():
        assert (manifest_path.parent / name).exists()
    assert manifest["counts"] == {"n_recon": 1024, "m_low": 256, "m_high": 256}
    assert load_image(manifest_path.parent / "measurements.f64").shape == (16, 16)


def test_simulate_is_byte_identical(tmp_path):
    simulate(tmp_path, SR_CONFIG, "a")
    simulate(tmp_path, SR_CONFIG, "b")
    assert tree_bytes(tmp_path / "a") == tree_bytes(tmp_path / "b")


def test_missing_field_named(tmp_path, capsys):
    cfg = json.loads(json.dumps(SR_CONFIG))
    del cfg["mode"]["factor"]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(cfg, indent=2))
    assert main(["simulate", str(path), "-o", str(tmp_path / "x")]) == 2
    err = capsys.readouterr().err
    assert "factor" in err
    del cfg["library_region"]
    path.write_text(json.dumps(cfg, indent=2))
    assert main(["simulate", str(path), "-o", str(tmp_path / "x")]) == 2
    assert "missing required field 'library_region'" in capsys.readouterr().err


def test_json_syntax_error_has_line(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "scene": {\n    "kind": "lattice",,\n  }\n}\n')
    assert main(["simulate", str(path), "-o", str(tmp_path / "x")]) == 2
    assert "broken.json:3:" in capsys.readouterr().err


def test_region_outside_scene_is_config_error(tmp_path):
    cfg = json.loads(json.dumps(SR_CONFIG))
    cfg["library_region"]["x"] = 30
    path = tmp_path / "c.json"
    path.write_text(json.dumps(cfg))
    assert main(["simulate", str(path), "-o", str(tmp_path / "x")]) == 2


def test_cubic_reconstruct_is_bicubic(tmp_path):
    manifest = simulate(tmp_path, SR_CONFIG)
    assert main(["reconstruct", str(manifest), "--method", "cubic", "-o", str(tmp_path / "o")]) == 0
    y = load_image(manifest.parent / "measurements.f64")
    assert np.array_equal(load_image(tmp_path / "o" / "cubic.f64"), bicubic_interpolate(y, 2))


def test_baseline_method_mismatch(tmp_path):
    manifest = simulate(tmp_path, SR_CONFIG)
    assert main(["baseline", str(manifest), "--method", "shepard", "-o",
                 str(tmp_path / "s.f64")]) == 2
    assert main(["baseline", str(manifest), "--method", "cubic", "-o",
                 str(tmp_path / "c.pgm")]) == 0


def test_mdf_residual_csv_has_one_row_per_iteration(tmp_path):
    manifest = simulate(tmp_path, SR_CONFIG)
    out = tmp_path / "o"
    assert main(["reconstruct", str(manifest), "--method", "mdf", "-o", str(out)] + FAST) == 0
    report = json.loads((out / "mdf.report.json").read_text())
    rows = list(csv.reader((out / "mdf.residuals.csv").open()))
    assert rows[0] == ["k", "r_running", "r_eq18"]
    assert len(rows) - 1 == report["iterations"]
    assert float(rows[-1][2]) == report["final_residual"]
    assert "wall_time" not in report


def test_sparse_pipeline_and_nlm_sym(tmp_path):
    manifest = simulate(tmp_path, SPARSE_CONFIG)
    out = tmp_path / "o"
    assert main(["reconstruct", str(manifest), "--method", "shepard", "-o", str(out)]) == 0
    assert main(["reconstruct", str(manifest), "--method", "nlm-sym", "-o", str(out),
                 "--patch-size", "3", "--search-radius", "2", "--max-iters", "3"]) == 0
    report = json.loads((out / "nlm-sym.report.json").read_text())
    assert report["method"] == "DSG-NLM-approx"
    assert main(["reconstruct", str(manifest), "--method", "cubic", "-o", str(out)]) == 2


def test_evaluate_rows_and_speedup(tmp_path):
    manifest = simulate(tmp_path, SR_CONFIG)
    gt = manifest.parent / "ground_truth.f64"
    results = tmp_path / "results.csv"
    for i in range(3):
        assert main(["evaluate", str(gt), "--manifest", str(manifest), "--results",
                     str(results), "--label", f"run{i}"]) == 0
    rows = list(csv.DictReader(results.open()))
    assert len(rows) == 3
    assert float(rows[0]["rmse_percent"]) == 0.0
    counts = json.loads(manifest.read_text())["counts"]
    rho, speedup = acquisition_stats(counts["n_recon"], counts["m_low"], counts["m_high"])
    assert float(rows[0]["speedup"]) == speedup and float(rows[0]["rho"]) == rho


def test_evaluate_without_ground_truth(tmp_path):
    manifest = simulate(tmp_path, SR_CONFIG)
    (manifest.parent / "ground_truth.f64").unlink()
    assert main(["evaluate", str(manifest.parent / "library_image.f64"),
                 "--manifest", str(manifest)]) == 2


def test_evaluate_svg(tmp_path):
    manifest = simulate(tmp_path, SR_CONFIG)
    out = tmp_path / "o"
    main(["reconstruct", str(manifest), "--method", "mdf", "-o", str(out)] + FAST)
    svg = tmp_path / "r.svg"
    assert main(["evaluate", str(out / "mdf.f64"), "--manifest", str(manifest),
                 "--report", str(out / "mdf.report.json"), "--svg", str(svg)]) == 0
    text = svg.read_text()
    assert text.startswith("<svg") and text.count("<path") >= 3


def test_sweep_matches_single_runs(tmp_path, capsys):
    manifest = simulate(tmp_path, SR_CONFIG)
    betas = [0.2, 0.5, 1.5]
    assert main(["sweep-beta", str(manifest), "--betas", ",".join(map(str, betas)),
                 "-o", str(tmp_path / "sweep.json")] + FAST) == 0
    sweep = json.loads((tmp_path / "sweep.json").read_text())
    manual = []
    for b in betas:
        out = tmp_path / f"b{b}"
        main(["reconstruct", str(manifest), "--method", "mdf", "--beta", str(b), "-o",
              str(out)] + FAST)
        manual.append(json.loads((out / "mdf.report.json").read_text())["rmse_percent"])
    assert [r["rmse_percent"] for r in sweep["sweep"]] == manual
    assert sweep["best_beta"] == betas[int(np.argmin(manual))]


def test_denoise_and_invert(tmp_path):
    manifest = simulate(tmp_path, SR_CONFIG)
    run = manifest.parent
    lib = tmp_path / "lib.f64"
    assert main(["build-library", "--manifest", str(manifest), "-o", str(lib),
                 "--patch-size", "5"]) == 0
    assert main(["denoise", str(run / "ground_truth.f64"), "--prior", "lbnlm", "--library",
                 str(lib), "--sigma-n", "10", "-o", str(tmp_path / "d.f64")]) == 0
    assert main(["denoise", str(run / "ground_truth.f64"), "--prior", "nlm", "--sigma-n",
                 "10", "--patch-size", "3", "-o", str(tmp_path / "n.f64")]) == 0
    assert main(["denoise", str(run / "ground_truth.f64"), "--prior", "lbnlm", "--sigma-n",
                 "10", "-o", str(tmp_path / "x.f64")]) == 2
    assert main(["invert", str(manifest), str(run / "ground_truth.f64"), "--sigma-lambda", "8",
                 "-o", str(tmp_path / "i.f64")]) == 0


def test_usage_errors_exit_two(tmp_path):
    assert main(["no-such-command"]) == 2
    assert main(["reconstruct", str(tmp_path / "missing.json"), "-o", str(tmp_path)]) == 2


def test_runtime_error_exits_one(tmp_path):
    manifest = simulate(tmp_path, SR_CONFIG)
    assert main(["reconstruct", str(manifest), "--method", "mdf", "-o", str(tmp_path / "o"),
                 "--beta", "-1"]) == 1


def run_pipeline(workdir, threads):
    workdir.mkdir()
    env = dict(os.environ, MDF_NUM_THREADS=str(threads))
    cfg = workdir / "cfg.json"
    cfg.write_text(json.dumps(SR_CONFIG))
    steps = [
        ["simulate", str(cfg), "-o", str(workdir / "run")],
        ["reconstruct", str(workdir / "run" / "manifest.json"), "--method", "mdf", "-o",
         str(workdir / "out")] + FAST,
        ["evaluate", str(workdir / "out" / "mdf.f64"), "--manifest",
         str(workdir / "run" / "manifest.json"), "--results", str(workdir / "results.csv"),
         "--label", "mdf", "--report", str(workdir / "out" / "mdf.report.json"),
         "--svg", str(workdir / "residuals.svg")],
    ]
    for step in steps:
        subprocess.run([sys.executable, "-m", "mdfusion"] + step, env=env, check=True,
                       capture_output=True)
    (workdir / "cfg.json").unlink()
    return tree_bytes(workdir)


@pytest.mark.slow
def test_pipeline_bytes_independent_of_thread_count(tmp_path):
    one = run_pipeline(tmp_path / "t1", 1)
    four = run_pipeline(tmp_path / "t4", 4)
    assert one == four
    assert any(k.endswith("mdf.residuals.csv") for k in one)
