import json
import subprocess
import sys
from pathlib import Path

PKG = Path(__file__).resolve().parents[1]
HOPF = "X[1,3,2,4] X[3,1,4,2]"


def run_cli(*args, expect: int = 0):
    proc = subprocess.run(
        [sys.executable, "-m", "skeinscan.cli", *args],
        capture_output=True, text=True, cwd=PKG,
    )
    assert proc.returncode == expect, (proc.returncode, proc.stdout, proc.stderr)
    return proc


def strip_timings(obj):
    if isinstance(obj, dict):
        return {k: strip_timings(v) for k, v in obj.items()
                if k != "timings" and not k.endswith("_s")}
    if isinstance(obj, list):
        return [strip_timings(x) for x in obj]
    return obj


def test_compute_unknot():
    proc = run_cli("compute", "--pd", "O", "--mode", "bracket")
    assert proc.stdout.strip() == "1"


def test_compute_hopf_json():
    proc = run_cli("compute", "--pd", HOPF, "--json")
    payload = json.loads(proc.stdout)
    assert payload["polynomial"] == {"4": "-1", "-4": "-1"}
    assert payload["girth"] == 4
    assert payload["checks"]["mod4"]["ok"]
    assert payload["checks"]["mod4_link"]["ok"]


def test_compute_bad_pd_exits_one():
    proc = run_cli("compute", "--pd", "X[1,2,3]", expect=1)
    assert "4 arc labels" in proc.stderr


def test_compute_multiplicity_error():
    proc = run_cli("compute", "--pd", "X[1,2,3,4] X[1,2,3,4] X[1,5,6,7]", expect=1)
    assert "arc 1" in proc.stderr


def test_compute_pkbp_and_jones():
    # positive mode: A^2*(A^2+A^-2) + 1 + 1 + A^-2*(A^2+A^-2), nothing cancels
    proc = run_cli("compute", "--pd", HOPF, "--mode", "pkbp")
    assert proc.stdout.strip() == "A^4 + 4 + A^-4"
    proc = run_cli("compute", "--pd", HOPF, "--mode", "jones", "--oriented", "++")
    assert proc.stdout.strip() == "-A^10 - A^2"
    proc = run_cli("compute", "--pd", HOPF, "--mode", "jones", "--oriented", "+-")
    assert proc.stdout.strip() == "-A^-2 - A^-10"


def test_jones_link_without_orientation_fails():
    run_cli("compute", "--pd", HOPF, "--mode", "jones", expect=1)


def test_compute_tangle_expansion():
    proc = run_cli("compute", "--pd", "X[1,2,3,4]o1 B[1,2,3,4]")
    lines = proc.stdout.strip().splitlines()
    assert lines == ["(0 1)(2 3) : A", "(0 3)(1 2) : A^-1"]


def test_strict_flag_passes_on_good_input():
    run_cli("compute", "--pd", HOPF, "--strict")


def test_trace_dumps_states():
    proc = run_cli("compute", "--pd", "O", "--trace")
    assert "Birth" in proc.stderr and "Cap" in proc.stderr


def test_girth_command():
    proc = run_cli("girth", "--pd", HOPF, "--order", "exact", "--json")
    payload = json.loads(proc.stdout)
    assert payload["girth"] == 4
    assert payload["within_bound"] is True
    assert payload["state_cap"] == "2"


def test_explicit_cutting_roundtrip(tmp_path):
    proc = run_cli("girth", "--pd", HOPF, "--json")
    cutting = json.loads(proc.stdout)["cutting"]
    path = tmp_path / "cut.json"
    path.write_text(json.dumps(cutting))
    proc = run_cli("compute", "--pd", HOPF, "--order", f"@{path}")
    assert proc.stdout.strip() == "-A^4 - A^-4"


def test_pd_from_file(tmp_path):
    path = tmp_path / "d.pd"
    path.write_text("# a hopf diagram\n" + HOPF + "\n")
    proc = run_cli("compute", "--pd", f"@{path}")
    assert proc.stdout.strip() == "-A^4 - A^-4"


def test_verify_subset():
    proc = run_cli("verify", "--max-n", "6", "--seed", "3")
    assert "all suites passed" in proc.stdout


def test_verify_json_deterministic_modulo_timings():
    a = run_cli("verify", "--seed", "7", "--json", "--max-n", "8").stdout
    b = run_cli("verify", "--seed", "7", "--json", "--max-n", "8").stdout
    ja, jb = strip_timings(json.loads(a)), strip_timings(json.loads(b))
    assert json.dumps(ja, sort_keys=True) == json.dumps(jb, sort_keys=True)


def test_bench_small():
    proc = run_cli("bench", "--kmax", "10", "--oracle-max-n", "10", "--json")
    rows = json.loads(proc.stdout)
    torus = [r for r in rows if r["family"].startswith("torus")]
    assert torus and all(r["girth"] == 4 for r in torus)
