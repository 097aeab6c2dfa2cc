import json
from pathlib import Path

import pytest

from repgraph.enumeration import Caps
from repgraph.errors import ArgumentError, ConfigError
from repgraph.harness import (
    CHECKS,
    Report,
    StepResult,
    default_config,
    emit_report,
    parse_report,
    run_pipeline,
    validate_config,
)
from repgraph.harness.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="module")
def default_report():
    return run_pipeline(default_config())


# --- configuration -----------------------------------------------------------


def test_minimal_config_gets_defaults():
    cfg = validate_config("")
    assert cfg.kind == "paths" and cfg.tol == 1e-9 and cfg.caps == Caps()
    assert cfg.preset == "paths-default" and cfg.family == "minus"


def test_all_errors_are_collected():
    raw = 'kind = "percolation"\nbogus = 1\n[phi]\nfamily = "table"\nvalues = [1, 2, 2]\n'
    with pytest.raises(ConfigError) as exc:
        validate_config(raw)
    msgs = exc.value.errors
    assert any("bogus" in m for m in msgs)
    assert any("seed is required" in m for m in msgs)
    assert any("phi not strictly increasing" in m for m in msgs)


def test_unknown_section_keys_and_syntax():
    with pytest.raises(ConfigError, match="unknown key 'x' in \\[caps\\]"):
        validate_config("[caps]\nx = 1\n")
    with pytest.raises(ConfigError, match="syntax"):
        validate_config("kind = ")
    with pytest.raises(ConfigError, match="unknown preset"):
        validate_config('preset = "nope"')


def test_divergence_warning():
    cfg = validate_config('kind = "animals"')
    assert any("divergent" in w for w in cfg.warnings)


def test_config_echo_is_plain_data():
    cfg = default_config()
    echo = cfg.echo()
    assert json.loads(json.dumps(echo)) == echo
    assert echo["graph"]["hub"]["hubs"][0] == [10, 5]


# --- reports -------------------------------------------------------------------


def test_empty_report_is_header_only():
    r = Report("0.0", None, {"kind": "paths"})
    text = emit_report(r, "csv").decode().splitlines()
    assert text[0].startswith("# repgraph 0.0") and text[1].startswith("step,check,N")
    assert len(text) == 2


def test_unknown_format():
    with pytest.raises(ArgumentError):
        emit_report(Report("0", None, {}), "xml")


def test_json_lines_round_trip(default_report):
    data = emit_report(default_report, "json-lines")
    back = parse_report(data)
    assert back == default_report
    assert emit_report(back, "json-lines") == data


def test_human_format_names_checks(default_report):
    text = emit_report(default_report, "human").decode()
    for label in ("path-growth", "ball-degree", "degree-average"):
        assert f"{label}: {CHECKS[label]}" in text


def test_overall_semantics():
    r = Report("0", 1, {})
    s = StepResult("x")
    s.add("path-growth", 3, 1, 2, True)
    r.steps.append(s)
    assert r.overall
    s.add("path-growth", 4, 5, 2, False)
    assert not r.overall and s.status == "fail"


# --- pipeline ------------------------------------------------------------------


def test_default_pipeline_passes(default_report):
    assert default_report.overall
    seq = default_report.step("sequence")
    assert seq.data["N_k"] == [29, 69, 129]
    checks = {v.check for v in default_report.verdicts}
    assert {"path-growth", "good-animals", "degree-average", "ball-degree"} <= checks


def test_golden_report(default_report):
    assert emit_report(default_report, "csv") == (FIXTURES / "default_paths.csv").read_bytes()


def test_non_repulsive_graph_fails_at_check():
    cfg = validate_config('family = "minus"\n[graph]\nsource = "grid"\nrows = 4\ncols = 4\n'
                          '[phi]\nfamily = "affine"\nslope = 3\n')
    r = run_pipeline(cfg)
    assert not r.overall
    assert r.steps[-1].name == "check" and r.steps[-1].status == "fail"
    assert r.step("check").data["witnesses"]


def test_divergent_preset_refused_at_gamma():
    r = run_pipeline(validate_config('kind = "animals"'))
    last = r.steps[-1]
    assert last.name == "gamma" and last.status == "error" and "divergent" in last.error


def test_file_source_errors_are_captured(tmp_path):
    cfg = validate_config(f'[graph]\nsource = "file"\npath = "{tmp_path / "missing.txt"}"\n')
    r = run_pipeline(cfg)
    assert r.steps[0].status == "error" and not r.overall


def test_pipeline_determinism():
    text = 'kind = "greedy"\nseed = 3\n[graph.hub]\nspine_length = 60\nhubs = [[10, 5], [40, 6]]\n' \
           '[phi]\nfamily = "power"\nexponent = 2\nshift = -16\nfloor = 0.5\n' \
           '[sequence]\nrule = "geometric"\nc = 2\nr = 2\n[greedy]\nreplications = 500\n'
    a = run_pipeline(validate_config(text))
    b = run_pipeline(validate_config(text))
    for fmt in ("csv", "json-lines", "human"):
        assert emit_report(a, fmt) == emit_report(b, fmt)


# --- command line --------------------------------------------------------------


def test_cli_pipeline_exit_code(tmp_path, capsys):
    out = tmp_path / "r.csv"
    assert main(["pipeline", "--out", str(out)]) == 0
    assert out.read_bytes() == (FIXTURES / "default_paths.csv").read_bytes()


def test_cli_generate_and_file_source(tmp_path):
    g = tmp_path / "g.txt"
    assert main(["generate", "--out", str(g)]) == 0
    cfg = tmp_path / "c.toml"
    cfg.write_text(f'[graph]\nsource = "file"\npath = "{g}"\n'
                   '[phi]\nfamily = "power"\nexponent = 2\nshift = -16\nfloor = 0.5\n'
                   '[sequence]\nrule = "geometric"\nc = 2\nr = 2\n')
    assert main(["check", "--config", str(cfg)]) == 0


def test_cli_enumerate_columns(tmp_path, capsys):
    cfg = tmp_path / "grid.toml"
    cfg.write_text('[graph]\nsource = "lattice"\nradius = 5\n')
    stream = tmp_path / "animals.txt"
    main(["enumerate", "--config", str(cfg), "--what", "animals", "--max-n", "3",
          "--stream", str(stream)])
    lines = capsys.readouterr().out.splitlines()
    assert lines[1] == "N,count,log_count,bound12,bound13,qN_verdict"
    assert [ln.split(",")[1] for ln in lines[2:]] == ["1", "4", "18"]
    assert len(stream.read_text().splitlines()) == 18


def test_cli_capacity_single_animal(tmp_path, capsys):
    cfg = tmp_path / "grid.toml"
    cfg.write_text('[graph]\nsource = "grid"\nrows = 3\ncols = 3\n')
    rc = main(["capacity", "--config", str(cfg), "--vertices", "0,1,2,5,8",
               "--lambda", "2", "--decompose"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "5,2.0,3,5.0,pass" in out and "backbone" in out


def test_cli_gamma_divergent_exit(capsys):
    assert main(["gamma", "--preset", "paths-default"]) == 0
    assert main(["gamma", "--config", "/nonexistent.toml"]) == 2


def test_cli_config_errors(tmp_path, capsys):
    bad = tmp_path / "bad.toml"
    bad.write_text('kind = "greedy"\n')
    assert main(["pipeline", "--config", str(bad)]) == 2
    assert "seed is required" in capsys.readouterr().err


def test_cli_seed_override_echoed(capsys):
    main(["percolate", "--seed", "77"])
    assert capsys.readouterr().out.startswith("# repgraph 0.1.0 seed=77 kind=percolation")
