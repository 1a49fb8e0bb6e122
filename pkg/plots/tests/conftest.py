import subprocess
import sys

import pytest

PRESETS = {
    "fig-algs": ["--n", "100"],
    "fig-hot": ["--n", "100"],
    "fig-start-config": ["--n", "100"],
    "fig-r-vs-size": ["--n", "100", "--reps", "2"],
    "fig-swap-ratio": ["--n", "100", "--reps", "2"],
}


@pytest.fixture(scope="session")
def preset_csvs(tmp_path_factory):
    """Scaled-down preset outputs produced through the simulator's CLI."""
    outdir = tmp_path_factory.mktemp("preset-data")
    for preset, extra in PRESETS.items():
        cmd = [
            sys.executable, "-m", "evolvesort.cli", "reproduce", preset,
            "--out", str(outdir), "--workers", "2", *extra,
        ]
        proc = subprocess.run(cmd, capture_output=True, text=True)
        assert proc.returncode == 0, f"{preset} failed: {proc.stderr}"
    return outdir
