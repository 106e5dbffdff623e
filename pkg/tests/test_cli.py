"""End-to-end tests for the command-line interface."""

import json

import pytest

from nvcalc.cli import main
from nvcalc.element_algebra import element_to_json, random_element


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, argv):
    code, out, err = run(capsys, argv)
    return code, json.loads(out), err


# ---------------------------------------------------------------------------
# exit codes


def test_equal_words_exit_zero(capsys):
    code, payload, _ = run_json(
        capsys, ["equal", "--n", "1", "--w1", "Pb[0] Pb[0]", "--w2", ""]
    )
    assert code == 0
    assert payload["ok"] is True
    assert payload["report"] == {"equal": True}


def test_unequal_words_exit_one(capsys):
    code, payload, _ = run_json(
        capsys, ["equal", "--n", "1", "--w1", "Pb[0]", "--w2", ""]
    )
    assert code == 1
    assert payload["ok"] is False
    assert payload["report"] == {"equal": False}


def test_long_flag_spellings(capsys):
    code, payload, _ = run_json(
        capsys,
        ["equal", "--n", "1", "--word1", "X[1,0]^-1 X[1,0]", "--word2", ""],
    )
    assert code == 0 and payload["report"]["equal"] is True


def test_bad_word_exit_two(capsys):
    code, out, err = run(capsys, ["equal", "--n", "1", "--w1", "X[1", "--w2", ""])
    assert code == 2
    assert out == ""
    assert "error" in err


def test_missing_word_exit_two(capsys):
    code, _, err = run(capsys, ["equal", "--n", "1", "--w1", "X[1,0]"])
    assert code == 2 and "word2" in err


def test_unknown_subcommand_exit_two(capsys):
    assert run(capsys, ["frobnicate"])[0] == 2


def test_missing_subcommand_exit_two(capsys):
    assert run(capsys, [])[0] == 2


def test_version_exit_zero(capsys):
    code, out, _ = run(capsys, ["--version"])
    assert code == 0
    assert out.startswith("nvcalc ")


def test_unknown_flag_exit_two(capsys):
    assert run(capsys, ["eval", "--n", "1", "--word", "X[1,0]", "--bogus"])[0] == 2


# ---------------------------------------------------------------------------
# computation commands


def test_eval_reports_reduced_table(capsys):
    code, payload, _ = run_json(capsys, ["eval", "--n", "1", "--word", "X[1,0]"])
    assert code == 0
    rep = payload["report"]
    assert rep["piece_count"] == 3
    assert rep["depth"] == 2
    assert rep["element"]["pieces"] == [
        {"dom": ["00"], "ran": ["0"]},
        {"dom": ["01"], "ran": ["10"]},
        {"dom": ["1"], "ran": ["11"]},
    ]


def test_eval_requires_n_with_word(capsys):
    assert run(capsys, ["eval", "--word", "X[1,0]"])[0] == 2


def test_apply_point(capsys):
    code, payload, _ = run_json(
        capsys,
        ["apply", "--n", "1", "--word", "P[0] X[1,0]", "--point", "5/8"],
    )
    assert code == 0
    assert payload["report"] == {"point": ["5/8"], "image": ["13/32"]}


def test_apply_point_validation(capsys):
    base = ["apply", "--n", "2", "--word", "Pb[0]"]
    assert run(capsys, base + ["--point", "1/2"])[0] == 2  # wrong arity
    assert run(capsys, base + ["--point", "3/2,0"])[0] == 2  # outside cube
    assert run(capsys, base + ["--point", "x,0"])[0] == 2  # not rational


def test_support_command(capsys):
    code, payload, _ = run_json(
        capsys, ["support", "--n", "1", "--word", "Pb[0]"]
    )
    assert code == 0
    assert payload["report"] == {"support": [["0"], ["1"]], "count": 2}


def test_cocycle_command_frozen(capsys):
    code, payload, _ = run_json(
        capsys, ["cocycle", "--n", "1", "--word", "X[1,0]", "--depth", "8"]
    )
    assert code == 0
    rep = payload["report"]
    assert rep["verdict"] == "STABLE(1)"
    assert rep["total"] == 2
    assert rep["out_side"] == [["1"]]
    assert rep["in_side"] == [["0"]]
    assert rep["open_finding"] is None


def test_probe_depth_ranges(capsys):
    code, payload, _ = run_json(
        capsys, ["probe", "--n", "2", "--word", "Pb[0]", "--depths", "2..4"]
    )
    assert code == 0
    surveys = payload["report"]["surveys"]
    assert [s["depth"] for s in surveys] == [2, 3, 4]
    assert [s["total"] for s in surveys] == [12, 28, 60]
    assert all(s["verdict"] == "GROWING" for s in surveys)
    assert all(s["open_finding"] for s in surveys)
    assert all("out_side" not in s for s in surveys)


def test_probe_single_depth_and_errors(capsys):
    code, payload, _ = run_json(
        capsys, ["probe", "--n", "1", "--word", "X[1,0]", "--depths", "3"]
    )
    assert code == 0
    assert [s["depth"] for s in payload["report"]["surveys"]] == [3]
    assert run(capsys, ["probe", "--n", "1", "--word", "X[1,0]", "--depths", "a..b"])[0] == 2
    assert run(capsys, ["probe", "--n", "1", "--word", "X[1,0]", "--depths", "4..2"])[0] == 2


def test_relations_corollaries_premises_commands(capsys):
    for cmd, extra in (("relations", []), ("corollaries", []), ("premises", [])):
        code, payload, _ = run_json(capsys, [cmd, "--n", "1"] + extra)
        assert code == 0
        assert payload["ok"] is True
        assert payload["report"]["all_pass"] is True
    code, payload, _ = run_json(capsys, ["relations", "--n", "1", "--imax", "4"])
    assert code == 0
    assert payload["report"]["params"] == {"i_max": 4}


def test_fprobe_command(capsys):
    code, payload, _ = run_json(
        capsys,
        ["fprobe", "--n", "2", "--word", "Pb[0]", "--depth", "1"],
    )
    assert code == 0
    rep = payload["report"]
    assert rep["members"] == [["", "0"], ["", "1"]]
    assert len(rep["grid_violations"]) == 3
    assert rep["injective"] is True
    code2, payload2, _ = run_json(
        capsys,
        [
            "fprobe", "--n", "2", "--word", "Pb[0]", "--depth", "1",
            "--corner-mode", "half_open",
        ],
    )
    assert code2 == 0
    assert payload2["config"]["corner_mode"] == "half_open"


def test_properness_command(capsys):
    code, payload, _ = run_json(capsys, ["properness", "--n", "1", "--ball", "2"])
    assert code == 0
    rep = payload["report"]
    assert rep["all_pass"] is True
    assert rep["params"]["num_elements"] == 44
    assert rep["params"]["depth"] == "adaptive"


def test_random_command_deterministic(capsys):
    a = run(capsys, ["random", "--n", "2", "--seed", "7"])
    b = run(capsys, ["random", "--n", "2", "--seed", "7"])
    c = run(capsys, ["random", "--n", "2", "--seed", "8"])
    assert a[0] == b[0] == c[0] == 0
    assert a[1] == b[1]
    assert a[1] != c[1]
    payload = json.loads(a[1])
    assert payload["report"]["piece_count_raw"] == 6  # default size


# ---------------------------------------------------------------------------
# element files


def test_element_file_roundtrip(tmp_path, capsys):
    g = random_element(2, 5, 21)
    path = tmp_path / "g.json"
    path.write_text(element_to_json(g), encoding="utf-8")
    code, payload, _ = run_json(
        capsys, ["simplify", "--element-file", str(path)]
    )
    assert code == 0
    assert payload["config"]["n"] == 2
    code2, payload2, _ = run_json(
        capsys,
        ["apply", "--element-file", str(path), "--point", "1/4,1/4"],
    )
    assert code2 == 0
    assert payload2["report"]["point"] == ["1/4", "1/4"]


def test_element_file_dimension_cross_check(tmp_path, capsys):
    path = tmp_path / "g.json"
    path.write_text(element_to_json(random_element(2, 4, 0)), encoding="utf-8")
    assert run(capsys, ["eval", "--n", "3", "--element-file", str(path)])[0] == 2


def test_element_file_errors(tmp_path, capsys):
    missing = tmp_path / "nope.json"
    assert run(capsys, ["eval", "--element-file", str(missing)])[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 1}', encoding="utf-8")
    assert run(capsys, ["eval", "--element-file", str(bad)])[0] == 2


def test_word_and_element_file_are_exclusive(tmp_path, capsys):
    path = tmp_path / "g.json"
    path.write_text(element_to_json(random_element(1, 3, 1)), encoding="utf-8")
    code = run(
        capsys,
        ["eval", "--n", "1", "--word", "X[1,0]", "--element-file", str(path)],
    )[0]
    assert code == 2


# ---------------------------------------------------------------------------
# output handling and determinism


def test_json_output_byte_identical_across_runs(capsys):
    argv = ["relations", "--n", "2"]
    _, out1, _ = run(capsys, argv)
    _, out2, _ = run(capsys, argv)
    assert out1 == out2
    argv2 = ["cocycle", "--n", "1", "--word", "X[1,0] Pb[0]", "--depth", "6"]
    _, o1, _ = run(capsys, argv2)
    _, o2, _ = run(capsys, argv2)
    assert o1 == o2


def test_envelope_shape(capsys):
    _, payload, _ = run_json(capsys, ["eval", "--n", "1", "--word", "P[0]"])
    assert set(payload) == {"tool", "version", "command", "config", "ok", "report"}
    assert payload["tool"] == "nvcalc"
    assert payload["command"] == "eval"
    assert payload["config"]["n"] == 1
    assert payload["config"]["word"] == "P[0]"
    assert payload["config"]["threads"] == 1


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run(
        capsys,
        ["eval", "--n", "1", "--word", "X[1,0]", "--output", str(target)],
    )
    assert code == 0
    assert out == ""  # everything went to the file
    on_disk = json.loads(target.read_text(encoding="utf-8"))
    assert on_disk["command"] == "eval"
    code2, out2, _ = run(capsys, ["eval", "--n", "1", "--word", "X[1,0]"])
    assert target.read_text(encoding="utf-8") == out2


def test_output_file_unwritable_exit_two(tmp_path, capsys):
    target = tmp_path / "no" / "such" / "dir" / "out.json"
    code = run(
        capsys,
        ["eval", "--n", "1", "--word", "X[1,0]", "--output", str(target)],
    )[0]
    assert code == 2


def test_text_format(capsys):
    code, out, _ = run(
        capsys,
        ["cocycle", "--n", "1", "--word", "X[1,0]", "--depth", "4",
         "--format", "text"],
    )
    assert code == 0
    assert "verdict: STABLE(1)" in out
    assert "RESULT: PASS" in out
    code2, out2, _ = run(
        capsys,
        ["equal", "--n", "1", "--w1", "Pb[0]", "--w2", "", "--format", "text"],
    )
    assert code2 == 1
    assert "RESULT: FAIL" in out2


def test_text_format_surfaces_open_finding(capsys):
    code, out, _ = run(
        capsys,
        ["probe", "--n", "2", "--word", "Pb[0]", "--depths", "2..3",
         "--format", "text"],
    )
    assert code == 0
    assert "open finding" in out


# ---------------------------------------------------------------------------
# NV_THREADS


def test_threads_echoed(monkeypatch, capsys):
    monkeypatch.setenv("NV_THREADS", "4")
    _, payload, _ = run_json(capsys, ["eval", "--n", "1", "--word", "P[0]"])
    assert payload["config"]["threads"] == 4


@pytest.mark.parametrize("value", ["abc", "0", "-2", ""])
def test_threads_invalid_exit_two(monkeypatch, capsys, value):
    monkeypatch.setenv("NV_THREADS", value)
    code, _, err = run(capsys, ["eval", "--n", "1", "--word", "P[0]"])
    assert code == 2
    assert "NV_THREADS" in err
