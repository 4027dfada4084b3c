"""Command-line interface: payload shapes, exit codes, determinism."""

import json

from idealizer.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _run_json(capsys, *argv):
    code, out, _ = _run(capsys, *argv)
    return code, json.loads(out)


COMMON = ("--max-degree", "6")


def test_verify_suite_default_passes(capsys):
    code, payload = _run_json(capsys, "verify-suite", *COMMON)
    assert code == 0
    assert payload["ok"] is True
    assert payload["schema"] == "idealizer-report/1"
    assert payload["counts"]["fail"] == 0
    names = [c["name"] for c in payload["checks"]]
    assert names[0] == "twist-normalization-pin"
    assert "segre-witness" in names


def test_verify_suite_csv_format(capsys):
    code, out, _ = _run(capsys, "verify-suite", "--format", "csv", *COMMON)
    assert code == 0
    lines = out.split("\n")
    assert lines[0].startswith("# schema:")
    assert "check,status" in lines
    assert any(line.startswith("twist-associativity,") for line in lines)


def test_hilbert_series_t(capsys):
    code, out, _ = _run(capsys, "hilbert", "--series", "T", *COMMON)
    assert code == 0
    rows = [line for line in out.split("\n") if line and not line.startswith("#")]
    assert rows[0] == "degree,dim"
    assert rows[1:] == ["0,1", "1,2", "2,5", "3,9", "4,14", "5,20", "6,27"]


def test_hilbert_series_s_mod_t_json(capsys):
    code, payload = _run_json(
        capsys, "hilbert", "--series", "S_mod_T", "--format", "json", *COMMON
    )
    assert code == 0
    assert payload["series"] == "S_mod_T"
    assert [r[1] for r in payload["rows"]] == [0, 1, 1, 1, 1, 1, 1]


def test_idealizer_gens(capsys):
    code, out, _ = _run(capsys, "idealizer-gens", *COMMON)
    assert code == 0
    rows = [line for line in out.split("\n") if line and not line.startswith("#")]
    assert rows[1] == "1,2"
    assert rows[2] == "2,1"
    assert rows[3] == "3,0"


def test_critdense_independent(capsys):
    code, payload = _run_json(capsys, "critdense")
    assert code == 0
    assert payload["certificate"]["verdict"] == "independent"


def test_critdense_dependent_with_relation(capsys):
    code, payload = _run_json(capsys, "critdense", "--p", "2,4")
    assert code == 0
    cert = payload["certificate"]
    assert cert["verdict"] == "dependent"
    assert cert["relation"] == [2, -1]
    assert cert["relation_verified"] is True


def test_critdense_window_evidence(capsys):
    code, payload = _run_json(capsys, "critdense", "--window", "4", "--degree", "2")
    assert code == 0
    ev = payload["window_evidence"]
    assert ev["distinct"] is True
    assert all(r["full"] for r in ev["ranks"])


def test_probe_two_point_vanishing(capsys):
    code, payload = _run_json(capsys, "probe", "--f", "x0 - 2*x1 + x2")
    assert code == 0
    assert payload["support"] == [1, 2]
    assert payload["totals"] == {"coker": 2, "torsion": 1}


def test_probe_rejects_non_member(capsys):
    code, out, err = _run(capsys, "probe", "--f", "x0 + x1")
    assert code == 2
    assert "config error" in err


def test_ext_table_zero_ideal(capsys):
    code, out, _ = _run(capsys, "ext-table", "--J", "0", "--max-degree", "4")
    assert code == 0
    rows = [line for line in out.split("\n") if line and not line.startswith("#")]
    # top row: constant 1 from degree -d on
    assert rows[-1] == "2,0,0,1,1,1,1,1,1,1"
    assert rows[1] == "0,0,0,0,0,0,0,0,0,0"


def test_hom_table_orbit_ideal(capsys):
    code, out, _ = _run(capsys, "hom-table", "--J", "orbit:3", *COMMON)
    assert code == 0
    rows = [line for line in out.split("\n") if line and not line.startswith("#")]
    assert rows[1:] == ["0,0", "1,0", "2,0", "3,1", "4,0", "5,0", "6,0"]
    assert "# total: 1" in out


def test_hom_table_point_spec(capsys):
    code, out, _ = _run(capsys, "hom-table", "--J", "point:1,5,7", *COMMON)
    assert code == 0
    assert "# total: 0" in out


def test_hom_table_gens_spec(capsys):
    code, out, _ = _run(
        capsys, "hom-table", "--J", "gens:x0 - x1;x0 - x2", "--max-degree", "4"
    )
    assert code == 0
    assert "# total: 1" in out


def test_bad_ideal_spec_exits_two(capsys):
    code, out, err = _run(capsys, "hom-table", "--J", "orbit:x", *COMMON)
    assert code == 2
    assert "config error" in err


def test_segre_witness(capsys):
    code, out, _ = _run(capsys, "segre", "--max-degree", "4")
    assert code == 0
    rows = [line for line in out.split("\n") if line and not line.startswith("#")]
    assert rows[0] == "m,witness_dim,meet_dim,product_dim"
    assert rows[1] == "1,1,1,0"
    assert rows[2] == "2,1,13,12"


def test_opposite_check(capsys):
    code, payload = _run_json(capsys, "opposite-check", "--total-degree", "4")
    assert code == 0
    assert payload["ok"] is True
    assert payload["checked_pairs"] == 210


def test_veronese(capsys):
    code, payload = _run_json(capsys, "veronese", "--n", "2", *COMMON)
    assert code == 0
    assert payload["generated_in_degree_one"]["generated"] is False
    assert payload["idealizer_agreement"]["least_agreement_degree"] == 0


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "report.csv"
    code, out, _ = _run(capsys, "hilbert", "--series", "T", "--out", str(target), *COMMON)
    assert code == 0
    assert out == ""
    assert target.read_text().startswith("# schema:")


def test_determinism_byte_identical(capsys):
    _, first, _ = _run(capsys, "verify-suite", *COMMON)
    _, second, _ = _run(capsys, "verify-suite", *COMMON)
    assert first == second


def test_bad_field_exits_two(capsys):
    code, out, err = _run(capsys, "verify-suite", "--field", "prime:9")
    assert code == 2
    assert "config error" in err


def test_missing_config_file_exits_two(capsys, tmp_path):
    code, out, err = _run(capsys, "hilbert", "--series", "T", "--config", str(tmp_path / "x.json"))
    assert code == 2


def test_config_file_with_flag_override(capsys, tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"d": 2, "max_degree": 9}))
    code, payload = _run_json(
        capsys, "hilbert", "--series", "T", "--config", str(path),
        "--max-degree", "3", "--format", "json",
    )
    assert code == 0
    # the flag wins over the file
    assert payload["config"]["max_degree"] == 3
    assert len(payload["rows"]) == 4


def test_suite_failure_maps_to_exit_one(capsys, monkeypatch):
    import idealizer.cli as cli_mod
    from idealizer.report import CheckRecord, VerificationReport

    def fake_suite(instance):
        return VerificationReport(
            instance.config.payload(),
            (CheckRecord("stub", "fail", "forced failure for exit-code wiring"),),
        )

    monkeypatch.setattr(cli_mod, "run_suite", fake_suite)
    code, payload = _run_json(capsys, "verify-suite")
    assert code == 1
    assert payload["ok"] is False
