"""CLI contract: config validation, report formats, determinism, exit codes."""

import json
import math

import pytest

from widomlab import chebyshev, cli, intervals, potential
from widomlab.errors import ConfigError

BANDS_CONFIG = """{
  "set": {"bands": [[-1.0, -0.3], [0.2, 1.0]]},
  "weight": {"variant": "sqrt_one_plus"},
  "degrees": [1, 2, 3],
  "output": {"format": "csv"}
}"""

PREIMAGE_CONFIG = """{
  "set": {"preimage": {"variant": "one_plus", "s_coeffs": [0, 3]}},
  "degrees": [1, 2]
}"""


def write(tmp_path, text, name="job.json"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_round_trip_is_idempotent():
    cfg = cli.parse_config(BANDS_CONFIG)
    once = cli.serialize_config(cfg)
    twice = cli.serialize_config(cli.parse_config(once))
    assert once == twice
    assert cli.config_digest(cfg) == cli.config_digest(cli.parse_config(once))


def test_unknown_field_reports_its_path():
    with pytest.raises(ConfigError, match=r"set\.bandz"):
        cli.parse_config('{"set": {"bandz": [[0, 1]]}}')
    with pytest.raises(ConfigError, match=r"tolerances\.foo"):
        cli.parse_config('{"tolerances": {"foo": 1}}')


def test_exactly_one_set_spec():
    with pytest.raises(ConfigError, match="exactly one"):
        cli.parse_config('{"set": {"bands": [[0, 1]], '
                         '"preimage": {"variant": "one_plus", "s_coeffs": [0, 1]}}}')
    with pytest.raises(ConfigError, match="exactly one"):
        cli.parse_config('{"set": {}}')


def test_degree_and_tolerance_validation():
    with pytest.raises(ConfigError, match=r"degrees\[1\]"):
        cli.parse_config('{"degrees": [1, 0]}')
    with pytest.raises(ConfigError, match="positive"):
        cli.parse_config('{"tolerances": {"remez_tol": -1e-9}}')
    with pytest.raises(ConfigError, match="endpoints out of order"):
        cli.parse_config('{"set": {"bands": [[1.0, 0.0]]}}')


def test_json_parse_error_carries_position():
    with pytest.raises(ConfigError, match="line 1"):
        cli.parse_config("nope")


def test_weight_variant_must_match_preimage():
    text = """{
      "set": {"preimage": {"variant": "one_plus", "s_coeffs": [0, 3]}},
      "weight": {"variant": "sqrt_one_minus"},
      "degrees": [1]
    }"""
    with pytest.raises(ConfigError, match="fixes the weight"):
        cli.run(cli.parse_config(text), "chebyshev")


def test_capacity_summary_matches_library():
    cfg = cli.parse_config(BANDS_CONFIG)
    report, code = cli.run(cfg, "capacity")
    assert code == 0
    summary = dict(report.summary)
    K = intervals.normalize([(-1.0, -0.3), (0.2, 1.0)])
    expected = math.exp(potential.log_capacity(potential.equilibrium(K)))
    assert summary["capacity"] == pytest.approx(expected, rel=1e-15)


def test_csv_is_byte_identical_and_has_fixed_columns():
    cfg = cli.parse_config(BANDS_CONFIG)
    r1, _ = cli.run(cfg, "chebyshev")
    r2, _ = cli.run(cfg, "chebyshev")
    text1, text2 = cli.render_csv(r1), cli.render_csv(r2)
    assert text1 == text2
    header = text1.splitlines()[0]
    assert header == "n,t_n,widom_inf,lower,upper,norm2,widom2_sq,two_S,eq_sup,eq_l2"
    assert len(text1.splitlines()) == 4


def test_json_report_round_trips():
    cfg = cli.parse_config(BANDS_CONFIG)
    report, _ = cli.run(cfg, "orthopoly")
    doc = cli.read_report(cli.render_json(report))
    assert doc["subcommand"] == "orthopoly"
    assert len(doc["rows"]) == 3
    row = doc["rows"][0]
    assert row["n"] == 1
    assert row["widom_inf"] >= row["lower"] - 1e-9
    assert doc["provenance"]["config_sha256"] == cli.config_digest(cfg)


def test_rows_respect_bound_sandwich():
    cfg = cli.parse_config(BANDS_CONFIG)
    report, code = cli.run(cfg, "chebyshev")
    assert code == 0
    for row in report.rows:
        assert not row.failed
        assert row.lower - 1e-9 <= row.widom_inf <= row.upper + 1e-9


def test_preimage_saturation_flags_degree_one():
    cfg = cli.parse_config(PREIMAGE_CONFIG)
    report, code = cli.run(cfg, "preimage")
    assert code == 0
    rows = {r.n: r for r in report.rows}
    assert rows[1].eq_sup and rows[1].eq_l2
    assert not rows[2].eq_sup and not rows[2].eq_l2
    assert rows[1].t_n == pytest.approx(1.0 / 3.0, rel=1e-12)


def test_verify_subcommand_on_preimage_spec():
    cfg = cli.parse_config(PREIMAGE_CONFIG)
    report, code = cli.run(cfg, "verify")
    assert code == 0
    assert dict(report.summary)["passed"] is True
    assert sum("[pass]" in line for line in report.lines) == 5


def test_main_exit_codes(tmp_path, capsys):
    good = write(tmp_path, PREIMAGE_CONFIG)
    assert cli.main(["verify", "--config", good]) == 0
    capsys.readouterr()

    bad = write(tmp_path, '{"unknown": 1}', "bad.json")
    assert cli.main(["capacity", "--config", bad]) == 2
    assert "unknown" in capsys.readouterr().err

    inadmissible = write(
        tmp_path,
        '{"set": {"preimage": {"variant": "one_plus", "s_coeffs": [0, 1]}}}',
        "inadmissible.json")
    assert cli.main(["preimage", "--config", inadmissible]) == 1
    out = capsys.readouterr().out
    assert "admissible = False" in out

    missing = str(tmp_path / "absent.json")
    assert cli.main(["capacity", "--config", missing]) == 2
    capsys.readouterr()


def test_main_exit_three_on_numerical_failure(tmp_path, capsys, monkeypatch):
    from widomlab.errors import ConvergenceError

    def boom(*args, **kwargs):
        raise ConvergenceError("forced failure")

    monkeypatch.setattr(cli.chebyshev, "remez", boom)
    path = write(tmp_path, BANDS_CONFIG)
    assert cli.main(["chebyshev", "--config", path]) == 3
    assert "numerical failure" in capsys.readouterr().err


def test_output_files_and_svg_determinism(tmp_path, capsys):
    path = write(tmp_path, BANDS_CONFIG)
    out1, svg1 = str(tmp_path / "a.csv"), str(tmp_path / "a.svg")
    out2, svg2 = str(tmp_path / "b.csv"), str(tmp_path / "b.svg")
    assert cli.main(["chebyshev", "--config", path,
                     "--out", out1, "--svg", svg1]) == 0
    assert cli.main(["chebyshev", "--config", path,
                     "--out", out2, "--svg", svg2]) == 0
    capsys.readouterr()
    assert open(out1).read() == open(out2).read()
    svg = open(svg1).read()
    assert svg == open(svg2).read()
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")


def test_format_flag_overrides_config(tmp_path, capsys):
    path = write(tmp_path, BANDS_CONFIG)  # config says csv
    assert cli.main(["chebyshev", "--config", path, "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["subcommand"] == "chebyshev"


def test_verify_without_set_runs_embedded_catalog():
    report, code = cli.run(cli.parse_config("{}"), "verify")
    assert code == 0
    assert len(report.lines) == 9
    assert all("[PASS]" in line for line in report.lines)
