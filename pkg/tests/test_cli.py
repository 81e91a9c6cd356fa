import csv
import io
import json

import numpy as np
import pytest

from sdsteer.cli import CommandError, main, parse_grid, parse_settings


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def table(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_parse_grid():
    assert parse_grid("0:1:0.05") == pytest.approx(np.linspace(0, 1, 21))
    assert parse_grid("0.1,0.2") == [0.1, 0.2]
    assert parse_grid("0.5") == [0.5]
    for bad in ("a", "0:1", "1:0:0.1", "0:2:0.5", "0:1:0"):
        with pytest.raises(CommandError):
            parse_grid(bad)


def test_parse_settings():
    assert parse_settings("all") == [2, 3, 4, 6, 10]
    with pytest.raises(CommandError):
        parse_settings("7")


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--settings", "all")
    assert code == 0
    rows = table(out)
    assert [float(r["bound"]) for r in rows] == pytest.approx(
        [0.853553, 0.788675, 0.788675, 0.769672, 0.761803], abs=1e-6
    )
    code, out, _ = run(capsys, "bounds", "--settings", "2")
    assert len(table(out)) == 1
    code, _, err = run(capsys, "bounds", "--settings", "7")
    assert code != 0 and "unsupported" in err


def test_werner_sweep(capsys):
    code, out, _ = run(capsys, "werner-sweep", "--eta", "0:1:0.05", "--settings", "10")
    rows = table(out)
    assert code == 0 and len(rows) == 21
    for r in rows:
        assert float(r["p_two_qubit"]) == pytest.approx(0.5 + float(r["eta"]) / 2, abs=1e-9)
    (r,) = table(run(capsys, "werner-sweep", "--eta", "0.6", "--settings", "10")[1])
    assert r["steerable"] == "true" and r["bell_local"] == "true"
    (r,) = table(run(capsys, "werner-sweep", "--eta", "0.45", "--settings", "10")[1])
    assert r["entangled"] == "true" and r["steerable"] == "false"
    code, _, _ = run(capsys, "werner-sweep", "--eta", "0:x:1")
    assert code != 0


def test_werner_sweep_monte_carlo_columns(capsys):
    _, out, _ = run(capsys, "werner-sweep", "--eta", "0.6", "--settings", "4", "--pairs", "1000", "--seed", "3")
    (r,) = table(out)
    assert "p_hat" in r and "std_error" in r


def test_bell_diagonal(capsys):
    (r,) = table(run(capsys, "bell-diagonal", "--tx", "0.9", "--tz", "-0.9")[1])
    assert float(r["p_two_qubit"]) == pytest.approx(0.95) and r["steerable"] == "true"
    (r,) = table(run(capsys, "bell-diagonal", "--tx", "0", "--tz", "0")[1])
    assert float(r["p_two_qubit"]) == pytest.approx(0.5) and r["steerable"] == "false"
    code, _, err = run(capsys, "bell-diagonal", "--tx", "0.99", "--tz", "0.5")
    assert code != 0 and "triangle" in err


def test_chsh(capsys):
    rows = table(run(capsys, "chsh", "--eta", f"0,1,{float(1 / np.sqrt(2))!r}")[1])
    assert float(rows[0]["S"]) == pytest.approx(0)
    assert float(rows[1]["S"]) == pytest.approx(2 * np.sqrt(2), abs=1e-8)
    assert float(rows[2]["S"]) == pytest.approx(2, abs=1e-8)
    assert float(rows[2]["p_two_qubit"]) == pytest.approx(0.8536, abs=1e-4)


def test_json_mirrors_csv(capsys):
    csv_rows = table(run(capsys, "chsh", "--eta", "0:1:0.5")[1])
    doc = json.loads(run(capsys, "chsh", "--eta", "0:1:0.5", "--format", "json")[1])
    assert [set(d) for d in doc] == [set(r) for r in csv_rows]
    assert all(not isinstance(v, (dict, list)) for d in doc for v in d.values())


def test_deterministic_output(capsys, tmp_path):
    args = ("montecarlo", "--eta", "0.7", "--settings", "6", "--pairs", "5000", "--seed", "9")
    first = run(capsys, *args)[1]
    assert first == run(capsys, *args)[1]
    out = tmp_path / "mc.csv"
    run(capsys, *args, "--out", str(out))
    assert out.read_text() == first


def test_fit_eta(capsys, tmp_path):
    from sdsteer.quantum import werner_state

    rho = werner_state(0.7)
    path = tmp_path / "rho.json"
    path.write_text(json.dumps({"rho": [[[z.real, z.imag] for z in row] for row in rho]}))
    (r,) = table(run(capsys, "fit-eta", str(path))[1])
    assert float(r["eta"]) == pytest.approx(0.7, abs=1e-6)
    assert float(r["fidelity"]) == pytest.approx(1, abs=1e-9)
    path.write_text("[[1, 0], [0, 0]]")
    assert run(capsys, "fit-eta", str(path))[0] != 0


def test_verify_groups(capsys):
    code, out, _ = run(capsys, "verify", "--waveplates", "10")
    assert code == 0 and len(table(out)) == 4
    code, out, _ = run(capsys, "verify", "--settings", "6")
    rows = table(out)
    assert code == 0
    assert sum(r["group"] == "strategy table n=6" for r in rows) == 12 * 4


def test_verify_all_reports_failures(capsys):
    code, out, err = run(capsys, "verify", "--all")
    failed = [r for r in table(out) if r["passed"] == "false"]
    assert code == (1 if failed else 0)
    assert [(r["group"], r["item"]) for r in failed] == [("waveplates n=6", "g3")]
    assert "g3" in err
