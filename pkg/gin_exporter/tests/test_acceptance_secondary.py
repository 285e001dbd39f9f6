"""Secondary acceptance criteria (run with -v -s for one line each).

Both need the MUTAG export on disk; they skip with an explicit reason when
it is absent because this environment cannot download datasets. The test
accuracy band (mean over 10 seeds >= 0.80) is pinned provisionally from
the documented expectation; re-pin after a calibration run once data is
available (see README).
"""

import json
import shutil
import subprocess
from contextlib import contextmanager

import pytest
from _pytest.outcomes import Skipped

from gin_exporter import TrainSpec, train_and_export

from conftest import benchmark_dir

SEEDS = list(range(10))
ACCURACY_BAND_MEAN = 0.80


@contextmanager
def criterion(name):
    try:
        yield
    except Skipped as exc:
        print(f"ACCEPTANCE SKIP  {name} [{exc}]")
        raise
    except BaseException:
        print(f"ACCEPTANCE FAIL  {name}")
        raise
    print(f"ACCEPTANCE PASS  {name}")


@pytest.fixture(scope="module")
def mutag_runs(tmp_path_factory):
    directory = benchmark_dir("MUTAG")
    if shutil.which("wlaudit") is None:
        pytest.skip("primary CLI not on PATH")
    out_root = tmp_path_factory.mktemp("mutag-runs")
    runs = []
    for seed in SEEDS:
        emb = out_root / f"emb_{seed}.csv"
        result = train_and_export(directory, "MUTAG", emb, seed=seed,
                                  spec=TrainSpec())
        align_out = out_root / f"align_{seed}"
        proc = subprocess.run(
            ["wlaudit", "align", "--dir", str(directory), "--name", "MUTAG",
             "--t", "4", "--embeddings", str(emb), "--out", str(align_out)],
            capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr
        doc = json.loads((align_out / "align.json").read_text())
        runs.append({
            "seed": seed,
            "test_accuracy": result.test_accuracy,
            "kernel_mi": doc["results"]["mi"]["kernel"],
            "embedding_mi": doc["results"]["mi"]["embedding"],
        })
    return runs


def test_embedding_mi_beats_kernel_mi(mutag_runs):
    with criterion("MUTAG 10 seeds: MI(embedding) > MI(kernel) in >= 8 runs"):
        wins = sum(1 for r in mutag_runs if r["embedding_mi"] > r["kernel_mi"])
        print(f"  wins: {wins}/10 "
              f"(kernel MI {mutag_runs[0]['kernel_mi']:.4f} every run)")
        assert wins >= 8


def test_accuracy_band(mutag_runs):
    with criterion(f"MUTAG mean test accuracy over 10 seeds >= {ACCURACY_BAND_MEAN}"):
        mean = sum(r["test_accuracy"] for r in mutag_runs) / len(mutag_runs)
        print(f"  per-seed: {[round(r['test_accuracy'], 3) for r in mutag_runs]}")
        assert mean >= ACCURACY_BAND_MEAN
