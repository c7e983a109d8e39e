#!/usr/bin/env python3
"""
Deterministic acceptance regression matrix.

Purpose:
- Run every acceptance criterion at full size: degree order, the worked
  n=2 chart, cocycle sweeps, chart-change lemma, action gluing and laws,
  transitivity, the algebra kernel and the corrupted-transition control.
- Exact arithmetic and fixed seeds only; the output is the same on every run.

Usage:
  python3 tools/acceptance_matrix.py
  SUPERGRASS_WORKERS=4 python3 tools/acceptance_matrix.py
"""

from __future__ import annotations

import contextlib
import io
import json
import os
import sys
import time
import traceback
from dataclasses import replace

_SCRIPT_PATH = globals().get("__file__", "")
if _SCRIPT_PATH and _SCRIPT_PATH != "<stdin>":
    ROOT_DIR = os.path.abspath(os.path.join(os.path.dirname(_SCRIPT_PATH), ".."))
else:
    ROOT_DIR = os.getcwd()
if ROOT_DIR not in sys.path:
    sys.path.insert(0, ROOT_DIR)

import main as cli
from algebra import series_str, verify_algebra_laws
from grading import enumerate_degrees
from grassmannian import beta_dims, build_chart, enumerate_charts, verify_cocycle, worked_example
from group_action import (verify_action_gluing, verify_action_laws, verify_chart_lemma,
                          verify_transitivity)
from sampling import SamplingConfig
from supermatrix import BlockDims, extract_minor

WORKERS = int(os.getenv("SUPERGRASS_WORKERS") or 1)
SEED = 0
K11, M22 = BlockDims((1, 1)), BlockDims((2, 2))

WORKED_LABEL = [
    ["1", "x1", "0", "0", "0", "xi2_2", "xi3_4", "0"],
    ["0", "xi1_1", "1", "0", "0", "xi3_2", "xi2_3", "0"],
    ["0", "xi1_2", "0", "1", "0", "xi3_3", "xi2_4", "0"],
    ["0", "xi2_1", "0", "0", "1", "x2", "xi1_4", "0"],
    ["0", "xi3_1", "0", "0", "0", "xi1_3", "x3", "1"],
]
WORKED_MINOR = [
    ["x1", "0", "0", "xi2_2", "xi3_4"],
    ["xi1_1", "1", "0", "xi3_2", "xi2_3"],
    ["xi1_2", "0", "1", "xi3_3", "xi2_4"],
    ["xi2_1", "0", "0", "x2", "xi1_4"],
    ["xi3_1", "0", "0", "xi1_3", "x3"],
]


def _grid(matrix):
    return [[series_str(e) for e in row] for row in matrix.entries]


def _require(report):
    assert report.passed, report.summary()
    return report.summary()


def case_degree_order():
    got = [str(d) for d in enumerate_degrees(3)]
    assert got == ["(0,0,0)", "(0,1,1)", "(1,0,1)", "(1,1,0)",
                   "(0,0,1)", "(0,1,0)", "(1,0,0)", "(1,1,1)"], got
    return " < ".join(got)


def case_worked_chart():
    k, m, i, j = worked_example()
    beta = beta_dims(k, m)
    assert beta == BlockDims((3, 4, 4, 4)), beta
    chart = build_chart(k, m, i, 3)
    assert len(chart.table.central) == 3 and len(chart.table.graded) == 12
    assert _grid(chart.label) == WORKED_LABEL
    assert _grid(extract_minor(chart.label, j)) == WORKED_MINOR
    return f"β = {beta}, {len(enumerate_charts(k, m))} charts"


def case_cocycle_full():
    return _require(verify_cocycle(K11, M22, 4, mode="all", seed=SEED, workers=WORKERS))


def case_cocycle_sampled():
    k, m, i, j = worked_example()
    report = verify_cocycle(k, m, 3, mode="triples", samples=10, seed=SEED,
                            include=[(i, j)], workers=WORKERS)
    assert len(report.cases) >= 11
    return _require(report)


def case_chart_lemma():
    return _require(verify_chart_lemma(K11, M22, 3, samples=20, seed=SEED, workers=WORKERS))


def case_action_gluing():
    every = replace(SamplingConfig(), samples=len(enumerate_charts(K11, M22)) ** 4)
    parts = [verify_action_gluing(K11, M22, 3, seed=SEED, cfg=every, p_seed=p, workers=WORKERS)
             for p in range(3)]
    k, m, _, _ = worked_example()
    parts.append(verify_action_gluing(k, m, 3, seed=SEED, cfg=replace(SamplingConfig(), samples=10),
                                      workers=WORKERS))
    return "; ".join(_require(r) for r in parts)


def case_action_laws():
    return _require(verify_action_laws(K11, M22, 3, samples=50, seed=SEED, workers=WORKERS))


def case_transitivity():
    return _require(verify_transitivity(K11, M22, 3, samples=3, seed=SEED, workers=WORKERS))


def case_algebra_kernel():
    return _require(verify_algebra_laws(checks=1000, seed=SEED, n=2, central=1, graded=2,
                                        trunc=3, sampling=SamplingConfig(), workers=WORKERS))


def case_negative_control():
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = cli.main(["verify", "cocycle", "--k", "1,1", "--m", "2,2", "--trunc", "2",
                         "--mode", "pairs", "--corrupt", "--output", "json"])
    data = json.loads(out.getvalue())
    assert code == 1, code
    failed = [c for c in data["cases"] if not c["pass"]]
    assert failed and all(c["residual"] for c in failed)
    return f"{len(failed)} perturbed pairs rejected, exit {code}"


CASES = [
    ("degree chain order for n=3", case_degree_order),
    ("worked n=2 chart and minor", case_worked_chart),
    ("cocycle G_{1|1}(2|2), N=4, all tuples", case_cocycle_full),
    ("cocycle G_{1|2|1|1}(2|2|2|2), N=3, sampled", case_cocycle_sampled),
    ("chart-change lemma, 20 T-points", case_chart_lemma),
    ("action gluing, 3 GL points + worked shape", case_action_gluing),
    ("action laws, 50 samples", case_action_laws),
    ("transitivity witness", case_transitivity),
    ("algebra kernel, 1000 checks per law", case_algebra_kernel),
    ("corrupted transition rejected", case_negative_control),
]


def main():
    cli.setup_logging("WARNING")
    failures = []
    print("Running acceptance regression matrix...")
    for name, fn in CASES:
        started = time.monotonic()
        try:
            detail = fn()
            print(f"PASS: {name} ({time.monotonic() - started:.1f}s) {detail}")
        except Exception as exc:
            failures.append((name, exc))
            print(f"FAIL: {name}: {exc}")
            traceback.print_exc()

    print("")
    print(f"Total: {len(CASES)}")
    print(f"Passed: {len(CASES) - len(failures)}")
    print(f"Failed: {len(failures)}")

    if failures:
        raise SystemExit(1)

    print("Acceptance regression matrix passed.")


if __name__ == "__main__":
    main()
