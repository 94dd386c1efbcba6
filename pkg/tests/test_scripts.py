import csv
import subprocess
import sys
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parents[1] / "scripts"


def test_run_scans_writes_csv(tmp_path):
    res = subprocess.run([sys.executable, str(SCRIPTS / "run_scans.py"), "--max-len", "2", "--out", str(tmp_path)],
                         capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    files = sorted(p.name for p in tmp_path.glob("*.csv"))
    assert len(files) == 7
    with (tmp_path / "scan_laguerre1.csv").open() as fh:
        rows = [r for r in csv.reader(fh) if not r[0].startswith("#")]
    assert rows[0][0] == "family" and len(rows) == 1 + 6 * 2


def test_sum_sign_table_runs():
    res = subprocess.run([sys.executable, str(SCRIPTS / "sum_sign_table.py"), "--max-len", "3"],
                         capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    assert "n=(1, 1) j=1 a=-1" in res.stdout
