import json

import pytest

from loopatlas import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


# --- weyl -------------------------------------------------------------------


def test_weyl_apply(capsys):
    obj = run_json(capsys, "weyl", "A2", "--word", "1", "--apply", "[1, 0]")
    assert obj == {
        "type": "A2",
        "word": [1],
        "matrix": [[-1, 1], [0, 1]],
        "length": 1,
        "image": [-1, 0],
    }


def test_weyl_reduces_the_word(capsys):
    obj = run_json(capsys, "weyl", "A2", "--word", "1,1,2,2")
    assert obj["word"] == []
    assert obj["length"] == 0
    obj = run_json(capsys, "weyl", "A1affine", "--word", "2,1,2")
    assert obj["length"] == 3


# --- godement ---------------------------------------------------------------


def test_godement_uniform(capsys):
    obj = run_json(capsys, "godement", "E6affine", "--uniform", "-3")
    assert obj == {"type": "E6affine", "region": "convergent", "nu_c": -36, "g": 12}


def test_godement_json_values(capsys):
    obj = run_json(capsys, "godement", "A2affine", "--nu", "[-1, -1, -1]")
    assert obj["region"] == "boundary"
    assert obj["nu_c"] == -3
    obj = run_json(capsys, "godement", "A1affine", "--nu", "[[-3, 1], [-3, -1]]")
    assert obj["region"] == "convergent"
    assert obj["nu_c"] == -6


# --- levi and associate -----------------------------------------------------


def test_levi_branch_node(capsys):
    obj = run_json(capsys, "levi", "E6affine", "--theta", "1,2,3,5,6,7")
    assert obj == {
        "type": "E6affine",
        "theta": [1, 2, 3, 5, 6, 7],
        "components": ["A2", "A2", "A2"],
        "center_rank": 1,
    }


def test_associate_verdict(capsys):
    obj = run_json(capsys, "associate", "E6affine", "--remove", "4", "--max-length", "4")
    assert obj["self_associate"] is False
    assert obj["trivial_constant_term"] is True
    assert obj["reason"] == "not self-associate and no other maximal subset shares its Levi type"
    assert obj["levi"] == ["A2", "A2", "A2"]
    assert obj["certificate"]["removed_node"] == 4
    assert obj["certificate"]["witness"] is None
    assert obj["certificate"]["search_bound"] == 4


def test_associate_versus(capsys):
    obj = run_json(capsys, "associate", "A1affine", "--remove", "1", "--versus", "2")
    assert obj == {
        "type": "A1affine",
        "removed_node": 1,
        "versus": 2,
        "associate_necessary": True,
        "levi": ["A1"],
        "levi_versus": ["A1"],
    }


def test_associate_versus_negative(capsys):
    obj = run_json(capsys, "associate", "E7affine", "--remove", "4", "--versus", "2")
    assert obj["associate_necessary"] is False
    assert obj["levi"] == ["A1", "A3", "A3"]
    assert obj["levi_versus"] == ["A7"]


# --- roots ------------------------------------------------------------------


def test_roots_finite(capsys):
    obj = run_json(capsys, "roots", "A2")
    assert obj == {
        "label": "A2",
        "positive_roots": [[0, 1], [1, 0], [1, 1]],
        "highest_root": [1, 1],
        "marks": [1, 1],
        "comarks": [1, 1],
        "dual_coxeter": 3,
    }


def test_roots_affine(capsys):
    obj = run_json(capsys, "roots", "A1affine", "--depth", "1")
    assert obj["label"] == "A1affine"
    assert obj["depth"] == 1
    assert obj["imaginary_multiplicity"] == 1
    assert [1, 1] in obj["imaginary"]
    assert [0, 1] in obj["real"] and [2, 1] in obj["real"]
    assert [1, 1] not in obj["real"]


# --- ms ---------------------------------------------------------------------


def test_ms_degenerate_value(capsys):
    obj = run_json(
        capsys, "ms", "A1affine", "--nu", "[-1.5, -1.5]", "--nu-prime", "[-1.5, -1.5]"
    )
    assert obj == {
        "type": "A1affine",
        "value": [0.5, 0.0],
        "pole": False,
        "denominator": -2,
    }


def test_ms_pole(capsys):
    obj = run_json(capsys, "ms", "A1affine", "--nu", "[-1, -1]", "--nu-prime", "[-1, -1]")
    assert obj["pole"] is True
    assert obj["value"] is None
    assert obj["denominator"] == 0


def test_ms_plain_sign(capsys):
    base = run_json(
        capsys, "ms", "A2affine", "--nu", "[-2, -2, -2]", "--nu-prime", "[-2, -2, -2]"
    )
    flipped = run_json(
        capsys,
        "ms",
        "A2affine",
        "--nu",
        "[-2, -2, -2]",
        "--nu-prime",
        "[-2, -2, -2]",
        "--plain-sign",
    )
    assert flipped["value"][0] == -base["value"][0]


def test_ms_kernel_truncation_denominator(capsys):
    obj = run_json(
        capsys,
        "ms",
        "A1affine",
        "--nu",
        "[-2, 0]",
        "--nu-prime",
        "[-2, 0]",
        "--kernel",
        "--denominator",
        "truncation",
        "--truncation",
        "[0.5, 0]",
        "--pairing",
        "2",
    )
    # shifted sum (-2, 2), truncation value -1, no leading minus
    assert obj["pole"] is False
    assert obj["denominator"] == -1
    assert abs(obj["value"][0] - 2 * 0.36787944117144233 / -1) <= 1e-15


# --- atlas ------------------------------------------------------------------


def test_atlas_json_small(capsys):
    obj = run_json(capsys, "atlas", "--max-rank", "2", "--max-length", "4")
    assert obj["max_rank"] == 2
    assert obj["search_bound"] == 4
    rows = obj["rows"]
    assert len(rows) == 11  # 2 + 3 + 3 + 3 maximal subsets
    assert {r["type"] for r in rows} == {"A1affine", "A2affine", "B2affine", "G2affine"}
    for r in rows:
        assert r["self_associate"] is False
        assert r["convergence_threshold"] == -2 * r["dual_coxeter"]
        assert r["continuation_threshold"] == -r["dual_coxeter"]
        assert r["search_bound"] == 4
    a2_rows = [r for r in rows if r["type"] == "A2affine"]
    assert all(r["levi"] == "A2" and not r["trivial_constant_term"] for r in a2_rows)
    b2_levis = sorted(r["levi"] for r in rows if r["type"] == "B2affine")
    assert b2_levis == ["A1+A1", "B2", "B2"]
    for r in rows:
        if r["type"] == "B2affine":
            assert r["trivial_constant_term"] == (r["levi"] == "A1+A1")
    g2_levis = sorted(r["levi"] for r in rows if r["type"] == "G2affine")
    assert g2_levis == ["A1+A1", "A2", "G2"]
    assert all(r["trivial_constant_term"] for r in rows if r["type"] == "G2affine")


def test_atlas_is_byte_identical(capsys):
    code1, out1, _ = run(capsys, "atlas", "--max-rank", "2", "--max-length", "3")
    code2, out2, _ = run(capsys, "atlas", "--max-rank", "2", "--max-length", "3")
    assert code1 == code2 == 0
    assert out1 == out2


def test_atlas_tsv(capsys):
    code, out, _ = run(
        capsys, "atlas", "--max-rank", "2", "--max-length", "2", "--format", "tsv"
    )
    assert code == 0
    lines = out.rstrip("\n").split("\n")
    assert lines[0] == "\t".join(cli.ATLAS_COLUMNS)
    assert len(lines) == 12
    first = dict(zip(cli.ATLAS_COLUMNS, lines[1].split("\t")))
    assert first["type"] == "A1affine"
    assert first["self_associate"] == "false"


def test_atlas_out_file(tmp_path, capsys):
    target = tmp_path / "atlas.tsv"
    code, out, _ = run(
        capsys,
        "atlas",
        "--max-rank",
        "2",
        "--max-length",
        "2",
        "--format",
        "tsv",
        "--out",
        str(target),
    )
    assert code == 0
    assert out == ""
    _, direct, _ = run(capsys, "atlas", "--max-rank", "2", "--max-length", "2", "--format", "tsv")
    assert target.read_text() == direct


# --- matrix files -----------------------------------------------------------


def test_matrix_file_by_fields(tmp_path, capsys):
    path = tmp_path / "type.json"
    path.write_text(json.dumps({"series": "A", "rank": 2, "affine": False}))
    obj = run_json(capsys, "weyl", "--matrix-file", str(path), "--word", "1,2,1")
    assert obj["type"] == "A2"
    assert obj["length"] == 3


def test_matrix_file_raw_entries(tmp_path, capsys):
    path = tmp_path / "raw.json"
    path.write_text(json.dumps({"matrix": [[2, -1], [-1, 2]]}))
    obj = run_json(capsys, "roots", "--matrix-file", str(path))
    assert obj["label"] == "A2"


# --- failure modes ----------------------------------------------------------


def test_unknown_type_is_a_domain_error(capsys):
    code, out, err = run(capsys, "roots", "Z9")
    assert code == 1
    assert out == ""
    assert err.startswith("error:")


def test_bad_json_is_a_usage_error(capsys):
    code, _, err = run(capsys, "godement", "A1affine", "--nu", "not json")
    assert code == 2
    assert err.startswith("usage error:")


def test_missing_parameter_source(capsys):
    code, _, err = run(capsys, "godement", "A1affine")
    assert code == 2
    assert "JSON or via --uniform" in err


def test_missing_type(capsys):
    code, _, err = run(capsys, "levi", "--theta", "1")
    assert code == 2
    assert "type label or --matrix-file" in err


def test_missing_matrix_file(capsys):
    code, _, err = run(capsys, "roots", "--matrix-file", "/nonexistent/file.json")
    assert code == 1
    assert err.startswith("error:")


def test_missing_required_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["weyl", "A2"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["atlas", "--format", "xml"])
    assert exc.value.code == 2


def test_out_of_range_node_is_a_domain_error(capsys):
    code, _, err = run(capsys, "associate", "A2affine", "--remove", "9")
    assert code == 1
    assert err.startswith("error:")
