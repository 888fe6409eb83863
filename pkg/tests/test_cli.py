import csv
import io
import json

import pytest

from cigenus.cli import CSV_HEADER, main


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_bound_table_anchor():
    code, text = run(["bound", "--n", "4", "--degrees", "2,2", "--d", "20", "--mode", "all"])
    assert code == 0
    fields = dict(line.split() for line in text.splitlines()[2:11])
    assert fields["closed_form"] == "42"
    assert fields["relaxed"] == "42"
    assert fields["tight"] == "41"
    assert fields["m0"] == "5"
    assert fields["epsilon"] == "0"


def test_bound_json_envelope():
    code, text = run(["bound", "--n", "4", "--degrees", "2,2", "--d", "20", "--format", "json"])
    assert code == 0
    env = json.loads(text)
    assert env["schema_version"] == "1"
    assert env["hypothesis_ok"] is True
    assert env["results"]["closed_form"] == {"exact": "42", "approx": 42.0}
    assert env["results"]["tight"]["exact"] == "41"
    assert env["discrepancies"] == []
    assert "ms" in env["timing"]


def test_json_round_trip():
    _, text = run(["bound", "--n", "4", "--degrees", "2,2", "--d", "19", "--format", "json"])
    env = json.loads(text)
    assert env["results"]["closed_form"] == {"exact": "75/2", "approx": 37.5}
    assert json.dumps(env, indent=2, sort_keys=True) + "\n" == text


def test_bound_hypothesis_violation():
    code, text = run(["bound", "--n", "4", "--degrees", "2,2", "--d", "15"])
    assert code == 3
    assert text == ""


def test_bound_hypothesis_message_cites_threshold(capsys):
    main(["bound", "--n", "4", "--degrees", "2,2", "--d", "15"], out=io.StringIO())
    assert "16" in capsys.readouterr().err


def test_bound_force():
    code, text = run(["bound", "--n", "4", "--degrees", "2,2", "--d", "15", "--force", "--format", "json"])
    assert code == 0
    assert json.loads(text)["hypothesis_ok"] is False


def test_bound_small_force_case():
    code, text = run(["bound", "--n", "5", "--degrees", "1,1,1", "--d", "3", "--force", "--format", "json"])
    assert code == 0
    assert json.loads(text)["results"]["closed_form"]["exact"] == "1"


@pytest.mark.parametrize(
    "argv",
    [
        ["bound", "--n", "2", "--degrees", "2", "--d", "5"],
        ["bound", "--n", "4", "--degrees", "2", "--d", "5"],
        ["bound", "--n", "4", "--degrees", "2,2", "--d", "0"],
        ["bound", "--n", "4", "--degrees", "2,x", "--d", "20"],
        ["bound", "--n", "4", "--degrees", "2,2", "--d", "20", "--mode", "bogus"],
        ["sweep", "--n", "4", "--degrees", "2,2", "--d-range", "24:16"],
        ["sweep", "--n", "4", "--degrees", "2,2", "--d-range", "16:24:0"],
        ["compare", "--n", "4", "--threefold-degrees", "2,2", "--d", "10"],
        [],
    ],
)
def test_invalid_input_exit_2(argv):
    assert run(argv)[0] == 2


def profile_rows(text):
    return {int(r["i"]): r for r in csv.DictReader(io.StringIO(text))}


def test_profile_tight_rows():
    code, text = run(["profile", "--n", "4", "--degrees", "2,2", "--d", "20", "--m", "5", "--mode", "tight", "--format", "csv"])
    assert code == 0
    rows = profile_rows(text)
    assert (rows[5]["gamma"], rows[6]["gamma"]) == ("3", "1")
    assert (rows[5]["envelope"], rows[6]["envelope"]) == ("3", "1")
    assert [rows[i]["initial"] for i in range(5)] == ["1", "3", "4", "4", "4"]


def test_profile_relaxed_rows():
    _, text = run(["profile", "--n", "4", "--degrees", "2,2", "--d", "20", "--m", "5", "--mode", "relaxed", "--format", "csv"])
    rows = profile_rows(text)
    assert (rows[5]["gamma"], rows[6]["gamma"]) == ("2", "2")
    _, text = run(["profile", "--n", "4", "--degrees", "2,2", "--d", "16", "--m", "4", "--mode", "relaxed", "--format", "csv"])
    rows = profile_rows(text)
    assert (rows[4]["gamma"], rows[5]["gamma"]) == ("2", "2")


def test_profile_infeasible_exit_4(capsys):
    code, _ = run(["profile", "--n", "4", "--degrees", "2,2", "--d", "20", "--m", "3"])
    assert code == 4
    assert "smallest feasible m is 5" in capsys.readouterr().err


def sweep_csv(tmp_path, name, *extra):
    path = tmp_path / name
    code, _ = run(["sweep", "--n", "4", "--degrees", "2,2", "--d-range", "16:24", "-o", str(path), *extra])
    assert code == 0
    return path.read_bytes()


def test_sweep_csv(tmp_path):
    data = sweep_csv(tmp_path, "a.csv").decode()
    rows = list(csv.reader(io.StringIO(data)))
    assert rows[0] == CSV_HEADER
    assert data.splitlines()[0] == "n,degrees,d,m0,epsilon,hypothesis_ok,closed_form,relaxed,tight"
    assert len(rows) == 10
    by_d = {int(r[2]): r for r in rows[1:]}
    assert by_d[20][6] == "42"
    assert by_d[17][6] == "57/2"


def test_sweep_modes_subset(tmp_path):
    data = sweep_csv(tmp_path, "b.csv", "--modes", "closed-form").decode()
    for row in list(csv.reader(io.StringIO(data)))[1:]:
        assert row[6] and row[7] == "" and row[8] == ""


def test_sweep_deterministic_across_worker_counts(tmp_path, monkeypatch):
    args = ["sweep", "--n", "4", "--degrees", "2,2", "--d-range", "16:80"]
    monkeypatch.setenv("CIGENUS_THREADS", "1")
    serial = run(args)[1]
    monkeypatch.setenv("CIGENUS_THREADS", "3")
    pooled = run(args)[1]
    assert serial == pooled


def test_bad_thread_env(monkeypatch):
    monkeypatch.setenv("CIGENUS_THREADS", "0")
    assert run(["sweep", "--n", "4", "--degrees", "2,2", "--d-range", "16:20"])[0] == 2


def test_sweep_unwritable_exit_5(tmp_path):
    target = tmp_path / "missing" / "out.csv"
    assert run(["sweep", "--n", "4", "--degrees", "2,2", "--d-range", "16:18", "-o", str(target)])[0] == 5


def test_sweep_json(tmp_path):
    code, text = run(["sweep", "--n", "4", "--degrees", "2,2", "--d-range", "18:20", "--format", "json"])
    assert code == 0
    env = json.loads(text)
    assert [r["closed_form"]["exact"] for r in env["results"]] == ["33", "75/2", "42"]


def test_compare_columns():
    code, text = run(["compare", "--n", "5", "--threefold-degrees", "2,2", "--d", "40", "--format", "json"])
    env = json.loads(text)
    assert code == 0
    assert env["results"]["degrees"] == [2, 2, 10]
    assert env["hypothesis_ok"] is False
    for key in ("bms_castelnuovo", "bms_small_degree", "ci_curve_genus"):
        assert env["results"]["comparisons"][key] is not None
    for key in ("closed_form", "relaxed", "tight"):
        assert env["results"][key] is not None


def test_compare_quintic_threefold():
    code, text = run(["compare", "--n", "4", "--threefold-degrees", "5", "--d", "15", "--format", "json"])
    env = json.loads(text)
    assert code == 0
    assert env["results"]["comparisons"]["bms_castelnuovo"]["exact"] == "87/2"
    assert env["results"]["bms_small_degree_applicable"] is False


def test_compare_within_hypotheses():
    code, text = run(["compare", "--n", "4", "--threefold-degrees", "2", "--d", "20", "--m", "2", "--format", "json"])
    env = json.loads(text)
    assert code == 0
    assert env["hypothesis_ok"] is True
    assert env["results"]["closed_form"]["exact"] == "42"
    assert env["results"]["comparisons"]["ci_curve_genus"]["exact"] == "41"


def test_verify_identities_suite():
    code, text = run(["verify", "--suite", "identities"])
    assert code == 0
    assert "[PASS] (assert) binomial summation identity grid" in text
    assert "corrected  strict  -16  -16  True" in text


def test_verify_optimizer_suite_json():
    code, text = run(["verify", "--suite", "optimizer", "--format", "json"])
    assert code == 0
    checks = json.loads(text)["checks"]
    assert all(c["passed"] for c in checks if c["kind"] == "assert")
