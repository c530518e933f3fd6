import csv
import io
import json
import subprocess
import sys

import pytest

from kuramoto_eq import fixtures
from kuramoto_eq.cli import main, scan_point
from kuramoto_eq.counting import constants
from kuramoto_eq.model import ModelInput, residual


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, obj, name="m.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def test_solve_json(tmp_path, capsys):
    path = write(tmp_path, {"omega": [4, -4], "k": [5, 2]})
    code, out, _ = run(capsys, "solve", path)
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 2 and data["n"] == 2 and data["algorithm"] == "optimized"
    assert set(data["equilibria"][0]) == {"theta", "R", "sigma", "residual", "certified"}
    x = ModelInput([4, -4], [5, 2])
    for e in data["equilibria"]:
        assert residual(e["theta"], x) <= e["residual"] + 1e-15


def test_solve_fixture_and_algorithms(capsys):
    for alg in ("basic", "optimized", "oracle"):
        code, out, _ = run(capsys, "solve", "--fixture", "fourbus", "--algorithm", alg)
        assert code == 0 and json.loads(out)["count"] == 8


def test_solve_power_flow_form(tmp_path, capsys):
    path = write(tmp_path, {"P": list(fixtures.FOURBUS_P), "V": list(fixtures.FOURBUS_V)})
    code, out, _ = run(capsys, "solve", path)
    assert code == 0
    assert json.loads(out)["count"] == 2


def test_solve_csv(capsys):
    code, out, _ = run(capsys, "solve", "--fixture", "ex31", "--output", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["theta1", "theta2", "R", "sigma1", "sigma2", "residual", "certified"]
    assert len(rows) == 3


def test_solve_deterministic(capsys):
    outs = []
    for _ in range(2):
        _, out, _ = run(capsys, "solve", "--fixture", "table1-n9")
        d = json.loads(out)
        d.pop("wall_time_s")
        outs.append(json.dumps(d))
    assert outs[0] == outs[1]


def test_solve_ordering(capsys):
    _, out, _ = run(capsys, "solve", "--fixture", "fourbus")
    eqs = json.loads(out)["equilibria"]
    keys = [(tuple(e["sigma"]), e["R"]) for e in eqs]
    # descending pattern code, then descending R
    codes = [int("".join("1" if s > 0 else "0" for s in sig), 2) for sig, _ in keys]
    assert codes == sorted(codes, reverse=True)


def test_solve_exit_codes(tmp_path, capsys):
    assert run(capsys, "solve", write(tmp_path, {"omega": [1, 1], "k": [1, 1]}))[0] == 2
    code, _, err = run(capsys, "solve", write(tmp_path, {"omega": [1, -0.5], "k": [1, 1]}))
    assert code == 2 and "IC1" in err
    assert run(capsys, "solve", write(tmp_path, "{not json"))[0] == 3
    assert run(capsys, "solve", write(tmp_path, {"omega": [1, -1]}))[0] == 3
    assert run(capsys, "solve", write(tmp_path, [1, 2]))[0] == 3
    assert run(capsys, "solve", str(tmp_path / "missing.json"))[0] == 3
    assert run(capsys, "solve", "--fixture", "nope")[0] == 3
    assert run(capsys, "solve", "--fix-sum", write(tmp_path, {"omega": [1, -0.5], "k": [1, 1]}))[0] == 0


def test_count(capsys):
    code, out, _ = run(capsys, "count", "--n", "4")
    assert code == 0 and "14" in out and "10" in out
    _, out, _ = run(capsys, "count", "--n", "12", "--output", "json")
    assert json.loads(out)["upper_bound"] == 4094
    _, out, _ = run(capsys, "count", "--n", "3", "--q", "0.2", "--family", "odd")
    assert out.strip().splitlines()[-1].split()[-1] == "6"
    assert run(capsys, "count", "--n", "3", "--q", "0.4")[0] == 2
    assert run(capsys, "count", "--n", "3", "--q", "0.2", "--family", "even")[0] == 2


def test_scan_points():
    assert scan_point(0.1, -0.1) == "6"
    assert scan_point(0.9, 0.9) == "0"
    assert scan_point(0.0, 0.0) == "inf"
    # the three segments (a, 0), (0, a), (a, -a) carry 6 equilibria for |a| < q0 / 3
    edge = constants()[0] / 3
    for a in (0.01, 0.05, 0.1, edge - 1e-4, -edge + 1e-4):
        assert scan_point(a, 0.0) == "6"
        assert scan_point(0.0, a) == "6"
        assert scan_point(a, -a) == "6"
    for a in (edge + 1e-4, 0.2, 0.3):
        assert scan_point(a, 0.0) == "4"


def test_scan2d_symmetry(capsys):
    code, out, _ = run(capsys, "scan2d", "--min", "-1", "--max", "1", "--step", "0.25")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 81
    table = {(float(r["omega1"]), float(r["omega2"])): r["count"] for r in rows}
    for (a, b), c in table.items():
        assert table[(b, a)] == c


def test_scan2d_bad_grid(capsys):
    assert run(capsys, "scan2d", "--step", "0")[0] == 2
    assert run(capsys, "scan2d", "--min", "0.5", "--max", "0.1")[0] == 2
    assert run(capsys, "scan2d", "--max", "2")[0] == 2


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--fixtures", "table1", "--repetitions", "1", "--output", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    counts = {}
    for r in rows:
        counts.setdefault(r["fixture"], set()).add(int(r["count"]))
    expected = dict(zip(range(3, 13), (2, 2, 4, 4, 4, 4, 4, 4, 8, 8)))
    assert {k: v.pop() for k, v in counts.items()} == {f"table1-n{n}": c for n, c in expected.items()}
    code, out, _ = run(capsys, "bench", "--fixtures", "n60", "--algorithms", "basic", "optimized", "--repetitions", "1")
    assert "skip" in out
    assert run(capsys, "bench", "--fixtures", "bogus")[0] == 3


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "kuramoto_eq", "solve", "-"],
        input='{"omega": [4, -4], "k": [5, 2]}',
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(proc.stdout)["count"] == 2


def test_missing_subcommand():
    with pytest.raises(SystemExit):
        main([])
