import json

from bmw_e6.cli import EXIT_BUILD, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_semisimplicity(capsys):
    code, out = run(capsys, "semisimplicity", "--json")
    assert code == EXIT_OK
    assert len(json.loads(out.out)["values"]) == 8


def test_report_negative_value(capsys):
    code, out = run(capsys, "report", "--l", "-r^3", "--json")
    data = json.loads(out.out)
    assert code == EXIT_OK
    assert data["rank"] == 6 and data["kernel_dim"] == 30 and data["t"] == "-1"


def test_report_rejects_l_dependent_value(capsys):
    code, _ = run(capsys, "report", "--l", "l*r")
    assert code == EXIT_USAGE


def test_usage_error(capsys):
    code, _ = run(capsys, "nonsense")
    assert code == EXIT_USAGE


def test_verify_output_is_deterministic(capsys):
    code1, a = run(capsys, "verify", "--json")
    code2, b = run(capsys, "--json", "verify")
    assert code1 == code2 == EXIT_OK
    assert a.out == b.out
    assert all(r["passed"] for r in json.loads(a.out)["instances"])


def test_verify_cold_and_warm_cache_agree(capsys, tmp_path, rep):
    from bmw_e6.rep import save_cache
    path = tmp_path / "cache.json"
    save_cache(rep, path)
    _, warm = run(capsys, "verify", "--json", "--cache", str(path))
    _, packaged = run(capsys, "verify", "--json")
    assert warm.out == packaged.out


def test_stale_cache_exit_code(capsys, tmp_path):
    path = tmp_path / "cache.json"
    path.write_text(json.dumps({"format": "bmw-e6-matrix-cache", "version": 1, "digest": "x"}))
    code, out = run(capsys, "fixtures", "--cache", str(path))
    assert code == EXIT_BUILD
    assert "digest" in out.err


def test_fixtures(capsys):
    code, out = run(capsys, "fixtures")
    assert code == EXIT_OK
    assert "FAIL" not in out.out
