import json

import pytest

import golden
from cubicrep import cli
from cubicrep.detrep import is_ldr_of


def write_curve(tmp_path, row, name="curve.json"):
    path = tmp_path / name
    path.write_text(json.dumps(cli.curve_to_obj(golden.row_curve(row))))
    return str(path)


def write_rep(tmp_path, rep, name="rep.json"):
    path = tmp_path / name
    path.write_text(json.dumps(cli.rep_to_obj(rep)))
    return str(path)


def test_points_unique_rep_f2(tmp_path, capsys):
    path = write_curve(tmp_path, golden.UNIQUE_REP_ROWS[0])
    assert cli.main(["points", path]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "[1:0:0] (flex), [0:0:1]"


def test_points_no_rep_f3(tmp_path, capsys):
    path = write_curve(tmp_path, golden.NO_REP_ROWS[1])
    assert cli.main(["points", path]) == 0
    assert capsys.readouterr().out.strip() == "[1:0:0] (flex)"


def test_points_singular_input_exit_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"field": "2", "coeffs": {"000": [1]}}))
    assert cli.main(["points", str(path)]) == 2


def test_parse_error_exit_3(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{ not json")
    assert cli.main(["points", str(path)]) == 3
    assert cli.main(["points", str(tmp_path / "missing.json")]) == 3


def test_detrep_two_classes(tmp_path, capsys):
    path = write_curve(tmp_path, golden.TWO_REP_ROWS[2][0])
    assert cli.main(["detrep", path, "--json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert len(obj["representations"]) == 2
    got = [cli.rep_from_obj(r["rep"]) for r in obj["representations"]]
    assert got == golden.row_matrices(golden.TWO_REP_ROWS[2][0])


def test_detrep_no_reps_exit_0(tmp_path, capsys):
    path = write_curve(tmp_path, golden.NO_REP_ROWS[2])
    assert cli.main(["detrep", path]) == 0
    assert capsys.readouterr().out.strip() == ""


def test_detrep_unique_f5_prints_lambda(tmp_path, capsys):
    path = write_curve(tmp_path, golden.UNIQUE_REP_ROWS[3])
    assert cli.main(["detrep", path]) == 0
    out = capsys.readouterr().out
    assert "lambda = 4" in out  # -u^3 at [0:0:1] over F_5


def test_detrep_witness_flag(tmp_path, capsys):
    path = write_curve(tmp_path, golden.TWO_REP_ROWS[2][0])
    assert cli.main(["detrep", path, "--witness"]) == 0
    out = capsys.readouterr().out
    assert "inequivalent" in out


def test_verify_golden_matrix(tmp_path, capsys):
    row = golden.UNIQUE_REP_ROWS[0]
    cpath = write_curve(tmp_path, row)
    rpath = write_rep(tmp_path, golden.row_matrices(row)[0])
    assert cli.main(["verify", cpath, rpath]) == 0
    assert "lambda = 1" in capsys.readouterr().out


def test_verify_failure_exit_1(tmp_path, capsys):
    row = golden.UNIQUE_REP_ROWS[0]
    cpath = write_curve(tmp_path, row)
    other = golden.row_matrices(golden.TWO_REP_ROWS[2][0])[0]
    rpath = write_rep(tmp_path, other)
    assert cli.main(["verify", cpath, rpath]) == 1


def test_verify_f7_second_matrix(tmp_path, capsys):
    row = golden.TWO_REP_ROWS[7][0]
    cpath = write_curve(tmp_path, row)
    rpath = write_rep(tmp_path, golden.row_matrices(row)[1])
    assert cli.main(["verify", cpath, rpath, "--json"]) == 0
    lam = json.loads(capsys.readouterr().out)["lambda"]
    assert lam == [6]


def test_classnum(capsys):
    assert cli.main(["classnum", "--", "-12"]) == 0
    assert capsys.readouterr().out.strip() == "2"


def test_count_report(capsys):
    assert cli.main(["count", "--q", "2", "--n", "3", "--json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["total"] == 2 and obj["e"] == 1 and obj["e3"] == 1


def test_count_table_alias(capsys):
    assert cli.main(["count", "--table", "1", "--json"]) == 0
    grid = json.loads(capsys.readouterr().out)
    assert grid[1] == ["Cub_q(0)", "1", "1", "1", "0", "0", "0"]


def test_tables_cub_grid(capsys):
    assert cli.main(["tables", "1", "--json"]) == 0
    grid = json.loads(capsys.readouterr().out)
    assert grid[1][1:] == ["1", "1", "1", "0", "0", "0"]
    assert grid[2][1:] == ["1", "1", "1", "1", "0", "0"]
    assert grid[3][1:] == ["2", "2", "4", "2", "2", "0"]
    capsys.readouterr()
    assert cli.main(["tables", "2", "--json"]) == 0
    assert json.loads(capsys.readouterr().out) == grid


def test_tables_ingredients(capsys):
    assert cli.main(["tables", "3", "--json"]) == 0
    g1, g2 = json.loads(capsys.readouterr().out)
    by_field = {row[0]: row[1:] for row in g1[1:]}
    assert by_field["F_4"] == ["1", "1", "2", "0", "0", "2"]
    by_field2 = {row[0]: row[1:] for row in g2[1:]}
    assert by_field2["F_7"][:5] == ["0", "0", "0", "-1", "∞"]


def _table_rows(selector, capsys):
    assert cli.main(["tables", selector, "--json"]) == 0
    return json.loads(capsys.readouterr().out)


@pytest.mark.parametrize("selector,rows", [
    ("5", golden.NO_REP_ROWS),
    ("0ldr", golden.NO_REP_ROWS),
    ("6", golden.UNIQUE_REP_ROWS),
    ("7", golden.TWO_REP_ROWS[2]),
    ("2ldr-3", golden.TWO_REP_ROWS[3]),
    ("8", golden.TWO_REP_ROWS[4]),
    ("9", golden.TWO_REP_ROWS[5]),
    ("10", golden.TWO_REP_ROWS[7]),
])
def test_curve_tables_match_published_rows(selector, rows, capsys):
    got = _table_rows(selector, capsys)
    assert len(got) == len(rows)
    for obj, row in zip(got, rows):
        F = golden.row_curve(row)
        assert cli.curve_from_obj(obj["curve"]) == F
        pts = [(cli.element_from_obj(F.spec, p["point"][0]),
                p["flex"]) for p in obj["points"]]
        assert [p["flex"] for p in obj["points"]] == [fl for _, fl in row["points"]]
        got_reps = [cli.rep_from_obj(r["rep"]) for r in obj["representations"]]
        assert got_reps == golden.row_matrices(row)


def test_sym_table_equivalent_to_published(capsys):
    got = _table_rows("sym", capsys)
    assert len(got) == len(golden.UNIQUE_REP_ROWS)
    from cubicrep.detrep import equivalent, is_symmetric

    for obj, row in zip(got, golden.UNIQUE_REP_ROWS):
        F = golden.row_curve(row)
        rep = cli.rep_from_obj(obj["representations"][0]["rep"])
        assert is_symmetric(rep)
        assert is_ldr_of(rep, F) is not None
        assert equivalent(rep, golden.row_sym_matrix(row)) is not None


def test_classify_summary(capsys):
    assert cli.main(["classify", "--q", "2"]) == 0
    out = capsys.readouterr().out
    assert "6 classes" in out and "ok" in out


def test_classify_too_large(capsys):
    assert cli.main(["classify", "--q", "5"]) == 2


def test_field_command(capsys):
    assert cli.main(["field", "2^2", "--json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["modulus"] == [1, 1, 1]
    assert obj["elements"] == [[0, 0], [1, 0], [0, 1], [1, 1]]


def test_determinism_tables(capsys):
    assert cli.main(["tables", "7"]) == 0
    first = capsys.readouterr().out
    assert cli.main(["tables", "7"]) == 0
    assert capsys.readouterr().out == first


def test_point_parsing_extension_field(tmp_path, capsys):
    row = golden.UNIQUE_REP_ROWS[2]  # F_4 curve
    path = write_curve(tmp_path, row)
    assert cli.main(["points", path, "--p0", "1:0,0:0"]) == 0
    out = capsys.readouterr().out
    assert "(base)" in out


def test_p0_not_on_curve_exit_2(tmp_path):
    path = write_curve(tmp_path, golden.UNIQUE_REP_ROWS[0])
    assert cli.main(["points", path, "--p0", "1:1:1"]) == 2
