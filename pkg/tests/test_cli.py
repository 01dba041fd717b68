import pytest
from hypothesis import given, settings, strategies as st

from helpers import fresh_rng, random_laurent
from l2betti.cli import JobSpec, main, run
from l2betti.errors import ParseError
from l2betti.groups import FreeAbelianGroup, FreeGroup
from l2betti.group_ring import GroupRingElement, GroupRingMatrix
from l2betti.parsing import format_record, parse_matrix, parse_records, parse_report, parse_scalar, tokenize
from l2betti.scalars import GaussianRational

WEDGE = "group free 2\nranks 1 2\nd1 [x - e, y - e]\n"


def cli(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_betti_wedge(capsys):
    status, out, _ = cli(capsys, "betti", "--inline", WEDGE.replace("\n", ";"))
    assert status == 0
    assert out.splitlines() == ["b0 = 0", "b1 = 1", "euler = -1", "certainty = exact"]


def test_dim_circle_machine(capsys):
    status, out, _ = cli(capsys, "dim", "--machine", "--inline", "group abelian 1;matrix [z^1 - e]")
    assert status == 0
    assert parse_report(out) == [{"dim": "0", "engine": "abelian", "certainty": "exact"}]


def test_malformed_row_reports_location(capsys):
    status, out, err = cli(capsys, "dim", "--inline", "group abelian 1;matrix [z - , e]")
    assert status == 2 and out == ""
    assert "line 2, column 13" in err


def test_input_file_and_stdin(tmp_path, capsys, monkeypatch):
    path = tmp_path / "wedge.txt"
    path.write_text(WEDGE)
    status, from_file, _ = cli(capsys, "euler", str(path))
    assert status == 0 and "euler = -1" in from_file
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(WEDGE))
    status, from_stdin, _ = cli(capsys, "euler", "-")
    assert from_stdin == from_file
    assert cli(capsys, "euler", str(tmp_path / "missing.txt"))[0] == 1


def test_determinism(capsys):
    args = ("dim", "--machine", "--seed", "3", "--inline",
            "group free 2;matrix [x - e, y - e];[x - e, y - e]")
    first = cli(capsys, *args)
    second = cli(capsys, *args)
    assert first == second
    assert parse_report(first[1])[0]["certainty"] == "monte-carlo"


def test_torus_betti_machine(capsys):
    text = "group abelian 2;ranks 1 2 1;d1 [z - e, w - e];d2 [-(w - e)];[z - e]"
    status, out, _ = cli(capsys, "betti", "--machine", "--inline", text)
    rec, = parse_report(out)
    assert status == 0
    assert [rec[k] for k in ("b0", "b1", "b2", "euler")] == ["0", "0", "0", "0"]


def test_tor_free_group(capsys):
    status, out, _ = cli(capsys, "tor", "--machine", "--inline", WEDGE.replace("\n", ";"))
    rec = out.split()
    assert status == 0
    assert "tor0=0" in rec and "tor1=1" in rec
    assert "exactness not testable" in out


def test_computation_error_exit_code(capsys):
    # d1 alone is not generically exact over Z^2, so it cannot serve as a resolution
    status, out, err = cli(capsys, "tor", "--inline", "group abelian 2;ranks 1 2;d1 [z - e, w - e]")
    assert status == 1 and out == "" and err.startswith("error:")


def test_atiyah_batch(capsys):
    text = ("group finite cyclic 2\nmatrix [e + g]\n---\ngroup dihedral_inf\nmatrix [s - e]\n"
            "---\ngroup free 2\nmatrix [x - e, y - e]\n")
    job = JobSpec("atiyah", text, machine=True)
    status, out, _ = run(job)
    recs = parse_report(out)
    assert status == 0 and len(recs) == 3
    assert (recs[0]["dim"], recs[0]["lcm"], recs[0]["verdict"]) == ("1/2", "2", "pass")
    assert (recs[1]["dim"], recs[1]["conditional"]) == ("1/2", "true")
    assert recs[2]["dim"] == "0"


def test_ore_check(capsys):
    status, out, _ = cli(capsys, "ore-check", "--machine", "--inline", "vars 1;set powers z;f (1, z);g (z, z^2)")
    rec, = parse_report(out)
    assert status == 0 and rec["equal"] == "true"
    assert rec["sum"] == "(2*z^2, z^3)" and rec["product"] == "(z, z^3)"
    status, _, err = cli(capsys, "ore-check", "--inline", "vars 1;set powers z;f (1, z - 1);g (z, z^2)")
    assert status == 2 and "line" in err


def test_cramer_and_reduce(capsys):
    status, out, _ = cli(capsys, "cramer", "--machine", "--inline", "vars 1;matrix [1/(z-1)]")
    rec, = parse_report(out)
    assert status == 0 and rec["verified"] == "true"
    assert rec["s"] == "[[1, 0], [0, z - 1]]"
    status, out, _ = cli(capsys, "cramer", "--machine", "--reduce", "content", "--inline", "vars 1;matrix [(2*z)/2]")
    assert parse_report(out)[0]["b"] == "[[1, 0], [0, z]]"


def test_zero_denominator_is_a_parse_error(capsys):
    status, _, err = cli(capsys, "cramer", "--inline", "vars 1;matrix [1/0]")
    assert status == 2 and "division by zero" in err


def test_linearize(capsys):
    status, out, _ = cli(capsys, "linearize", "--machine", "--inline", "vars 1;f (z+1)/(z-1)")
    rec, = parse_report(out)
    assert status == 0
    assert rec["matrix"] == "[[z - 1, -z - 1], [0, 1]]"
    assert rec["in_sigma"] == "true" and rec["verified"] == "true"


def test_certify_ore_failure(capsys):
    status, out, _ = cli(capsys, "certify-ore-failure", "--radius", "2", "--machine")
    assert parse_report(out) == [{"radius": "2", "kernel_dimension": "0", "certified": "true"}]
    status, out, _ = cli(capsys, "certify-ore-failure", "--radius", "1", "--machine", "--inline",
                         "group free 2;columns [x - e, x - e]")
    rec, = parse_report(out)
    assert rec["certified"] == "false" and rec["kernel1"] == "(1, -1)"
    assert cli(capsys, "certify-ore-failure", "--radius", "0")[0] == 2


def test_bad_arguments(capsys):
    with pytest.raises(SystemExit):
        main(["nonsense"])
    with pytest.raises(SystemExit):
        main(["dim", "--ladder", "0,2"])
    assert main(["dim", "file.txt", "--inline", "x"]) == 2


# ---- parsing


def test_tokenize_positions():
    toks = tokenize("x^-2 + 3/4i", line=5, col=3)
    assert [(t.text, t.col) for t in toks[:-1]] == [("x", 3), ("^", 4), ("-", 5), ("2", 6), ("+", 8), ("3/4i", 10)]
    assert all(t.line == 5 for t in toks)
    with pytest.raises(ParseError) as info:
        tokenize("x $ y", line=2)
    assert (info.value.line, info.value.column) == (2, 3)


def test_records_and_comments():
    recs = parse_records("# header\ngroup abelian 1\nmatrix [z] # trailing\n---\nmatrix\n[z - e]\n[e]\n")
    assert len(recs) == 2
    assert recs[1].group == recs[0].group
    assert recs[1].matrix("matrix", recs[1].group).rows == 2


def test_matrix_round_trip_through_text():
    G = FreeAbelianGroup(2)
    z = GroupRingElement.of(G, (1, 0))
    w = GroupRingElement.of(G, (0, 1))
    A = GroupRingMatrix(G, [[z - 1, w ** -2 * 3], [GroupRingElement.zero(G), z * w / 2]])
    text = "[" + ", ".join("[" + ", ".join(str(v) for v in row) + "]" for row in A.entries) + "]"
    assert parse_matrix(text, G) == A


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_elements_round_trip(seed):
    rng = fresh_rng(seed)
    G = FreeAbelianGroup(2)
    rows = [[GroupRingElement.from_laurent(G, random_laurent(rng, 2)) for _ in range(2)] for _ in range(2)]
    A = GroupRingMatrix(G, rows)
    text = "[" + ", ".join("[" + ", ".join(str(v) for v in r) + "]" for r in A.entries) + "]"
    assert parse_matrix(text, G) == A


def test_free_group_words_parse():
    F2 = FreeGroup(2)
    x, y = GroupRingElement.of(F2, (1,)), GroupRingElement.of(F2, (2,))
    assert parse_matrix("[x*y^-1 - 2*e]", F2) == GroupRingMatrix(F2, [[x * y ** -1 - 2]])
    with pytest.raises(ParseError):
        parse_matrix("[x/y]", F2)


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50))
def test_scalar_round_trip(a, b):
    q = GaussianRational(a, b)
    assert parse_scalar(str(q)) == q


def test_machine_report_round_trip():
    pairs = [("a", 1), ("b", "two words"), ("c", True), ("note", "x=y 'q'")]
    text = format_record(pairs, machine=True)
    assert parse_report(text) == [{"a": "1", "b": "two words", "c": "true", "note": "x=y 'q'"}]
