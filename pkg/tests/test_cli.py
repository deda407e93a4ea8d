import csv
import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest
from hypothesis import given, strategies as st

from stabbasis import cli
from stabbasis.cli import EXIT_OK, EXIT_USAGE, EXIT_VERIFY, JobError, JobSpec, job_from_args, run
from stabbasis.exactalg import k_ring, parse, to_str
from stabbasis.stablecalc import StabParams, stab_general
from stabbasis.weyl import AlcoveSpec, build_root_system

SCHEMA = json.loads(resources.files("stabbasis").joinpath("data/report.schema.json").read_text())

EXAMPLE = ["stab-k", "--type", "A", "--rank", "2", "--chamber", "e-", "--polarization", "cotangent",
           "--alcove", "e;0", "--format", "json"]


def job(argv):
    return job_from_args(cli.build_parser().parse_args(argv))


def report(argv):
    text, status = run(job(argv))
    return json.loads(text), status


def test_stab_k_example_matches_library():
    rep, status = report(EXAMPLE)
    assert status == EXIT_OK
    jsonschema.validate(rep, SCHEMA)
    rs = build_root_system("A", 2)
    W = rs.weyl
    fam = stab_general(StabParams(W.e * W.w0, "cotangent", AlcoveSpec(W.e, (0, 0))))
    assert rep["rows"] == [str(w) for w in W] == rep["cols"]
    assert rep["entries"] == [[to_str(c.vals[v.index]) for v in W] for c in fam.classes]


@pytest.mark.parametrize("argv", [
    ["stab-coh", "--rank", "2", "--chamber", "e+"],
    ["rootpoly", "--rank", "2", "--what", "stab"],
    ["rootpoly", "--type", "B", "--rank", "2"],
    ["csm", "--rank", "2", "--cell", "Y"],
    ["mc", "--rank", "1", "--what", "expansion"],
    ["mc", "--rank", "1", "--variable", "y"],
    ["padic", "--rank", "2"],
    ["wall", "--rank", "2", "--wall", "1,0"],
])
def test_reports_validate_against_schema(argv):
    rep, status = report(argv)
    assert status == EXIT_OK
    jsonschema.validate(rep, SCHEMA)
    assert len(rep["entries"]) == len(rep["rows"])
    assert all(len(r) == len(rep["cols"]) for r in rep["entries"])


def test_wall_report_checks_itself():
    rep, _ = report(["wall", "--rank", "2", "--wall", "1,0"])
    assert rep["ok"] and rep["extra"]["matches_direct"] and rep["extra"]["round_trip"]


def test_wall_requires_a_root():
    with pytest.raises(JobError, match="zero walls"):
        run(job(["wall", "--rank", "2"]))


def test_output_is_bytewise_deterministic():
    out = [subprocess.run([sys.executable, "-m", "stabbasis", *EXAMPLE], capture_output=True, check=True).stdout
           for _ in range(2)]
    assert out[0] == out[1]
    assert out[0] == run(job(EXAMPLE))[0].encode()


def test_padic_csv_has_gk_entry_and_verdicts():
    text, status = run(job(["padic", "--type", "A", "--rank", "1", "--format", "csv"]))
    assert status == EXIT_OK
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["", "e", "s1"]
    table = {r[0]: dict(zip(rows[0][1:], r[1:])) for r in rows[1:3]}
    ring = k_ring(build_root_system("A", 1))
    assert parse(ring, table["e"]["s1"]) == parse(ring, "(1 - q^{-1}*e[1])/(1 - e[1])")
    assert table["s1"]["e"] == "0" and table["e"]["e"] == table["s1"]["s1"] == "1"
    assert ["u", "w", "factorization", "smooth", "analytic", "smooth_label"] in rows
    assert rows[-1][:2] == ["s1", "s1"]


def test_latex_format():
    text, _ = run(job(["stab-k", "--rank", "1", "--format", "latex"]))
    assert text.startswith("\\begin{tabular}") and text.rstrip().endswith("\\end{tabular}")
    assert "q^{" in text


def test_substitution():
    rep, _ = report(["stab-k", "--rank", "1", "--subs", "q=1"])
    assert rep["entries"][1][0] == "0"
    rep, _ = report(["stab-k", "--rank", "1", "--subs", "q=4", "--subs", "e=1"])
    assert all("e" not in x and "q" not in x for row in rep["entries"] for x in row)
    with pytest.raises(JobError, match="square root"):
        run(job(["stab-k", "--rank", "1", "--subs", "q=2"]))
    with pytest.raises(JobError, match="no variable"):
        run(job(["stab-k", "--rank", "1", "--subs", "z=2"]))


def test_exit_codes(capsys):
    assert cli.main(["stab-k", "--type", "Q", "--rank", "2"]) == EXIT_USAGE
    assert "unsupported root system" in capsys.readouterr().err
    assert cli.main(["stab-coh", "--rank", "2", "--chamber", "s1-"]) == EXIT_USAGE
    assert cli.main(["verify", "--suite", "99"]) == EXIT_USAGE
    assert cli.main(["verify", "--suite", "2"]) == EXIT_OK
    assert cli.main(["verify", "--suite", "1"]) == EXIT_VERIFY


def test_output_file(tmp_path):
    target = tmp_path / "out.json"
    assert cli.main([*EXAMPLE, "--output", str(target)]) == EXIT_OK
    assert target.read_bytes() == run(job(EXAMPLE))[0].encode()


def test_verify_report_shape():
    rep, status = report(["verify", "--suite", "2,3"])
    assert status == EXIT_OK and rep["ok"]
    assert rep["rows"] == ["2", "3"] and rep["cols"] == ["passed", "title"]
    jsonschema.validate(rep, SCHEMA)


jobs = st.builds(
    JobSpec,
    task=st.sampled_from(["stab-k", "wall", "csm", "mc", "rootpoly"]),
    type_label=st.sampled_from("ABG"),
    rank=st.just(2),
    chamber=st.sampled_from(["e-", "e+", "s1-", "s1.s2+"]),
    polarization=st.sampled_from(["tangent", "cotangent"]),
    alcove=st.sampled_from(["e;0,0", "s1;1,-1"]),
    cell=st.sampled_from("XY"),
    what=st.sampled_from(["class", "expansion", "stab"]),
    sign=st.sampled_from("+-"),
    wall=st.sampled_from(["", "1,0", "1,1"]),
    fmt=st.sampled_from(cli.FORMATS),
    variable=st.sampled_from("qy"),
    subs=st.lists(st.sampled_from(["q=1", "e=1", "a=0"]), max_size=2).map(tuple),
)


@given(jobs)
def test_job_text_round_trip(j):
    assert JobSpec.from_text(j.to_text()) == j
