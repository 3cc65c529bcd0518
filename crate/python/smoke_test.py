"""Smoke test for the kacflow_py extension module.

Builds the extension if needed, stages it under target/python, and
exercises one call from every binding family: the Kac matrix displays,
the spectrum prediction, the coefficient stacks, the moment system, the
lemma battery, the block table comparison, and the curvature scans.

Run from anywhere:

    python python/smoke_test.py
"""

import shutil
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def stage_extension() -> Path:
    """Builds the cdylib and copies it next to an importable name."""
    staging = ROOT / "target" / "python"
    module = staging / "kacflow_py.so"
    subprocess.run(
        ["cargo", "build", "--release", "-p", "kacflow-py"],
        cwd=ROOT,
        check=True,
    )
    built = None
    for name in ("libkacflow_py.so", "libkacflow_py.dylib", "kacflow_py.dll"):
        candidate = ROOT / "target" / "release" / name
        if candidate.exists():
            built = candidate
            break
    if built is None:
        raise FileNotFoundError("built extension not found under target/release")
    staging.mkdir(parents=True, exist_ok=True)
    shutil.copy2(built, module)
    return staging


def check_kac_displays(kf) -> None:
    grid = kf.kac_matrix(2, 2)
    assert grid == [
        ["0", "1", "1", "0"],
        ["y", "0", "0", "1"],
        ["x", "0", "0", "1"],
        ["0", "x", "y", "0"],
    ], grid

    spectrum = kf.predicted_spectrum(2, 2, 2, 3)
    assert spectrum["simple"], spectrum
    assert spectrum["char_poly_matches"], spectrum
    assert spectrum["rank"] == spectrum["parity_expected_rank"] == 4, spectrum
    assert set(spectrum["eigenvalues"]) == {"5", "1", "-1", "-5"}, spectrum

    coords = kf.e1_coordinates(2, 2, 2, 3)
    assert coords == ["1/4"] * 4, coords

    assert kf.chessboard_check(3, 4)
    assert kf.binomial_check(2, 3, 3)
    assert kf.block_power_check(2, 2, 5)

    cells = kf.block_table_comparison(2)
    assert len(cells) == 20, len(cells)
    mismatched = sorted((c["m"], c["l"]) for c in cells if not c["matches"])
    assert len(mismatched) == 8, mismatched


def check_expansion(kf) -> None:
    a = kf.ShapeMatrix.symbolic(2, 2)
    assert a.order == 3 and a.is_symbolic
    stack = kf.expansion_stack(a, "mixed")
    assert stack["order0"]["alpha[0,0]"] == "1", stack["order0"]
    assert stack["order0"]["alpha[0,1]"] == "-a33", stack["order0"]
    assert stack["order0"]["alpha[1,1]"] == "a22*a33 - a23^2", stack["order0"]

    rec = kf.recurrence_check(a, "mixed", k_max=3)
    assert rec["pass"] and rec["failure"] is None, rec
    ivp = kf.ivp_check(a, "mixed")
    assert ivp["pass"] and ivp["witness"] is None, ivp

    rows = [["0", "1/2", "0"], ["1/2", "0", "1/3"], ["0", "1/3", "0"]]
    m = kf.ShapeMatrix.from_rows(2, 2, rows)
    assert m.entries()[0][1] == "1/2", m.entries()
    assert m.trace() == "0", m.trace()


def check_moment_system(kf) -> None:
    r = kf.ShapeMatrix.random(2, 2, seed=7)
    wide = kf.moment_matrix(r, "flat")
    assert wide[0] == ["tau", "0", "0", "2", "2", "0"], wide[0]

    reports = kf.run_battery(2, 2, "mixed", tau_samples=5)
    assert len(reports) == 13, len(reports)
    statuses = {report["status"] for report in reports}
    assert statuses == {"verified"}, statuses
    ids = {report["lemma_id"] for report in reports}
    assert "system_singular" in ids, sorted(ids)


def check_geometry(kf) -> None:
    scan = kf.horospherical_scan(2, 2, -1.0, -1.0, 1.0)
    assert scan["is_horospherical"] and scan["constant"], scan
    assert abs(scan["h"]) < 1e-12, scan

    state = kf.product_curvatures(-1.0, 3, [1.0, 1.0], -1.0, 2, [1.0], 1.0, 0.5)
    assert abs(state["theta"]) < 1e-15, state
    assert state["w"] == 2.0 ** 0.5, state

    r = kf.ShapeMatrix.random(2, 2, seed=7)
    parallel = kf.parallel_state(r, 4.0, 9.0, 0.1)
    assert abs(parallel["h"] + parallel["d_prime"] / parallel["d"]) < 1e-8, parallel

    assert kf.riccati_residual(0.5, -1.0, 0.2) < 1e-6
    res1, res2 = kf.trace_residuals(-1.0, 3, [0.1, -0.2], -1.0, 3, [0.3, 0.0], 1.2, 0.25)
    assert res1 < 1e-6 and res2 < 1e-6, (res1, res2)


def main() -> None:
    sys.path.insert(0, str(stage_extension()))
    import kacflow_py as kf

    assert kf.REPORT_SCHEMA_VERSION == 1
    check_kac_displays(kf)
    check_expansion(kf)
    check_moment_system(kf)
    check_geometry(kf)
    print("smoke test passed")


if __name__ == "__main__":
    main()
