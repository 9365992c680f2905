import io
import json

import pytest

from dcdeform import JobParseError, dump_job, load_job, parse_job
from dcdeform.cli import explain, fixture_dir, main, report_matches, run_job, selftest

FIXTURES = sorted(p.stem for p in fixture_dir().glob("*.job"))

SMALL = """\
ring: [x, y, z, t]
branch: (x^2 + y^2 + z^2 + t^2)*(x^2 + 2*y^2 + 3*z^2 + 4*t^2)
degree: 4
loci:
  - name: C
    generators: [x^2 + y^2 + z^2 + t^2, x^2 + 2*y^2 + 3*z^2 + 4*t^2]
    multiplicity: 2
"""


def write(tmp_path, text, name="job.job"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


# -- parsing ------------------------------------------------------------------------


def test_parse_small_job():
    job = parse_job(SMALL, name="small")
    assert job.name == "small"
    assert job.problem.degree == 4
    assert [L.name for L in job.problem.loci] == ["C"]
    assert job.options.saturate and not job.options.symbolic_powers


def test_point_loci_become_linear_ideals():
    job = load_job(fixture_dir() / "cube.job")
    P1 = job.problem.loci[0]
    assert len(P1.generators) == 3
    assert all(g.degree() == 1 for g in P1.generators)
    # every generator vanishes at (1, 1, 1, 1)
    assert all(sum(c for _, c in g.items()) == 0 for g in P1.generators)


@pytest.mark.parametrize(
    "text,line,column,fragment",
    [
        (SMALL + "colour: red\n", 8, 1, "unknown key 'colour'"),
        (SMALL.replace("multiplicity: 2", "multiplicity: 2\n    weight: 3"), 8, 5, "unknown key 'weight'"),
        (SMALL.replace("degree: 4", "degree: four"), 3, 9, "integer"),
        (SMALL.replace("branch: (x^2", "branch: (w^2"), 2, 9, "unknown variable"),
        (SMALL.replace("degree: 4", "degree: 4\ndegree: 4"), 4, 1, "duplicate key"),
        ("ring: [x, y\n", 2, 1, "YAML error"),
    ],
)
def test_parse_errors_carry_location(text, line, column, fragment):
    with pytest.raises(JobParseError) as err:
        parse_job(text)
    assert (err.value.line, err.value.column) == (line, column)
    assert fragment in str(err.value)


def test_parse_errors_for_bad_loci():
    both = SMALL.replace("    multiplicity: 2", "    point: [0, 0, 0, 1]\n    multiplicity: 2")
    with pytest.raises(JobParseError, match="exactly one"):
        parse_job(both)
    with pytest.raises(JobParseError, match="rational"):
        parse_job(SMALL + "  - {name: P, point: [x, 0, 0, 1], multiplicity: 4}\n")
    with pytest.raises(JobParseError, match="multiplicity must be positive"):
        parse_job(SMALL.replace("multiplicity: 2", "multiplicity: 0"))
    with pytest.raises(JobParseError, match="odd"):
        parse_job("ring: [x, y, z]\nbranch: x^3 + y^3 + z^3\ndegree: 3\n")


def test_missing_file_is_a_parse_error(tmp_path):
    with pytest.raises(JobParseError, match="cannot read"):
        load_job(tmp_path / "nope.job")


@pytest.mark.parametrize("name", FIXTURES)
def test_dump_round_trip(name):
    job = load_job(fixture_dir() / f"{name}.job")
    again = parse_job(dump_job(job), name=job.name)
    assert again == job


# -- explain ----------------------------------------------------------------------------


def test_explain_abelian_job():
    text = explain(fixture_dir() / "abelian14.job")
    assert "intersection of 8 summand ideals sat(I(C)^m + J_F^rule)" in text
    assert "C_x: 2 generators, multiplicity 2" in text
    assert "d/dy / y" in text
    assert "h11 = h12 + e/2 with e = 24" in text


def test_explain_smooth_branch(tmp_path):
    path = write(tmp_path, "ring: [x, y, z]\nbranch: x^6 + y^6 + z^6\ndegree: 6\n")
    text = explain(path)
    assert "smooth-branch mode, I_eq=(1)" in text
    assert "not a double octic" in text


def test_explain_reports_indivisible_rule(tmp_path, capsys):
    bad = "ring: [x, y]\nbranch: x^4 + x^2*y^2\ndegree: 4\nloci:\n" \
          "  - {name: L, generators: [x], multiplicity: 2, rule: {y: y^2}}\n"
    path = write(tmp_path, bad)
    assert main(["explain", str(path)]) == 1
    err = capsys.readouterr().err
    assert "NotDivisible" in err and "d/dy" in err


# -- running and reports ----------------------------------------------------------------


def test_report_fields_and_text():
    report = run_job(fixture_dir() / "cube.job")
    assert report["h12"] == 20 and report["h11"] == 16
    assert report["metadata"]["symmetric_picard_rank"] == 9
    text = report.to_text()
    assert "h12 = 20" in text and "h11 = 16" in text
    assert "P1: multiplicity 4, rule standard" in text


def test_non_octic_job_reports_only_equisingular_part(tmp_path):
    report = run_job(write(tmp_path, SMALL))
    assert report["dim_equisingular"] == 3
    assert "h12" not in report.data
    assert "scope" in report["notes"]


def test_reports_are_deterministic():
    path = fixture_dir() / "cube.job"
    first = run_job(path).to_json(timings=False)
    second = run_job(path).to_json(timings=False)
    assert first == second
    assert "timings" not in json.loads(first)


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_matches_expected_report(name):
    want = json.loads((fixture_dir() / f"{name}.expected.json").read_text(encoding="utf-8"))
    got = run_job(fixture_dir() / f"{name}.job").data
    assert report_matches(got, want)


def test_report_matching_is_strict_on_listed_fields():
    want = {"h12": 3, "per_locus": [{"name": "C", "quotient_dimension": 5}]}
    good = {"h12": 3, "extra": 1, "per_locus": [{"name": "C", "quotient_dimension": 5, "basis_size": 9}]}
    assert report_matches(good, want)
    assert not report_matches(dict(good, h12=4), want)
    assert not report_matches(dict(good, per_locus=[]), want)


def test_order_option_does_not_change_numbers():
    path = fixture_dir() / "two_quadrics.job"
    assert run_job(path, order="lex")["dim_equisingular"] == run_job(path)["dim_equisingular"] == 3


# -- command line ------------------------------------------------------------------------


def test_main_run_writes_json(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["run", str(fixture_dir() / "two_quadrics.job"), "--json", str(out)]) == 0
    assert "dim_equisingular = 3" in capsys.readouterr().out
    assert json.loads(out.read_text())["dim_equisingular"] == 3


def test_main_json_to_stdout(capsys):
    assert main(["run", str(fixture_dir() / "k3_sextic.job"), "--json", "-"]) == 0
    assert json.loads(capsys.readouterr().out)["dim_equisingular"] == 19


def test_main_parse_error_exit_code(tmp_path, capsys):
    assert main(["run", str(write(tmp_path, SMALL + "colour: red\n"))]) == 2
    assert "line 8, column 1" in capsys.readouterr().err


def test_main_math_error_exit_code(tmp_path):
    odd_euler = write(tmp_path, (fixture_dir() / "cube.job").read_text().replace("euler_number: -8", "euler_number: -7"))
    assert main(["run", str(odd_euler)]) == 1


def test_main_budget_exit_code(capsys):
    assert main(["run", str(fixture_dir() / "cube.job"), "--budget", "1e-9"]) == 3
    assert "budget" in capsys.readouterr().err.lower()


def test_main_explain_exit_code(capsys):
    assert main(["explain", str(fixture_dir() / "cube.job")]) == 0
    assert "8 summand ideals" in capsys.readouterr().out


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "dcdeform" in capsys.readouterr().out


def test_selftest_passes():
    stream = io.StringIO()
    assert selftest(quick=True, stream=stream)
    lines = stream.getvalue().splitlines()
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert lines[-1].endswith("checks passed")
