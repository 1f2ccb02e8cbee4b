import json

import pytest

from qhcount.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_line_formula(capsys):
    code, out, _ = run(capsys, "count", "--line", "6", "--method", "formula")
    assert code == 0
    report = json.loads(out)
    assert report["count"] == "132"
    assert report["quiver"]["shape"] == "line"


def test_count_auto_runs_both(capsys):
    code, out, _ = run(capsys, "count", "--branch", "2,2,1", "--method", "auto")
    assert code == 0
    report = json.loads(out)
    assert report["count"] == "130"
    assert report["engines"] == {"formula": "130", "brute": "130"}


def test_count_brute_degenerate_branch(capsys):
    code, out, _ = run(capsys, "count", "--branch", "1,0,0", "--method", "brute")
    assert code == 0 and json.loads(out)["count"] == "2"


def test_count_from_files(capsys, tmp_path):
    js = tmp_path / "q.json"
    js.write_text('{"vertices":3,"arrows":[[1,2],[3,2]]}')
    txt = tmp_path / "q.txt"
    txt.write_text("3\n1 -> 2\n3 -> 2\n")
    for path in (js, txt):
        code, out, _ = run(capsys, "count", "--file", str(path))
        assert code == 0 and json.loads(out)["count"] == "4"


def test_count_exit_codes(capsys, tmp_path):
    bad = tmp_path / "cycle.json"
    bad.write_text('{"vertices":3,"arrows":[[1,2],[2,3],[3,1]]}')
    assert run(capsys, "count", "--file", str(bad))[0] == 1
    assert run(capsys, "count", "--file", str(tmp_path / "missing.json"))[0] == 1
    star = tmp_path / "star.json"
    star.write_text('{"vertices":5,"arrows":[[1,5],[2,5],[3,5],[5,4]]}')
    code, _, err = run(capsys, "count", "--file", str(star), "--method", "formula")
    assert code == 2 and "no formula" in err
    # auto falls back to brute force for unrecognized shapes
    code, out, _ = run(capsys, "count", "--file", str(star), "--method", "auto")
    assert code == 0 and json.loads(out)["engines"].keys() == {"brute"}
    assert run(capsys, "count", "--line", "11", "--method", "brute")[0] == 1
    assert run(capsys, "count", "--line", "3", "--branch", "1,1,1")[0] == 1


def test_auto_large_shape_uses_formula_only(capsys):
    code, out, _ = run(capsys, "count", "--branch", "10,10,10")
    report = json.loads(out)
    assert code == 0 and report["engines"].keys() == {"formula"}


def test_list_line_two(capsys):
    code, out, _ = run(capsys, "list", "--line", "2")
    classes = json.loads(out)["classes"]
    assert code == 0
    assert [c["supports"] for c in classes] == [[[1], [2]], [[1, 2], [2]]]
    assert run(capsys, "list", "--line", "1")[0] == 0


def test_list_branch(capsys):
    _, out, _ = run(capsys, "list", "--branch", "1,1,1")
    classes = json.loads(out)["classes"]
    assert len(classes) == 13
    assert sum(c["class_size"] for c in classes) == 24
    assert set(classes[0]) == {"representative", "supports", "class_size"}


def test_output_is_deterministic_across_jobs(capsys):
    _, one, _ = run(capsys, "list", "--branch", "2,1,1")
    _, four, _ = run(capsys, "list", "--branch", "2,1,1", "--jobs", "4")
    assert one == four


def test_timing_is_opt_in(capsys):
    _, out, _ = run(capsys, "count", "--line", "3", "--timing")
    assert "elapsed_ms" in json.loads(out)


def test_check(capsys):
    code, out, _ = run(capsys, "check", "--line", "3", "--perm", "1,2,3")
    report = json.loads(out)
    assert code == 0 and report["verdict"]
    assert report["supports"] == [[1], [2], [3]]
    code, out, _ = run(capsys, "check", "--line", "3", "--perm", "3,2,1")
    assert json.loads(out)["supports"] == [[1, 2, 3], [2, 3], [3]]
    assert run(capsys, "check", "--line", "2", "--perm", "1,1")[0] == 1
    assert run(capsys, "check", "--line", "2", "--perm", "1,2,3")[0] == 1


def test_catalan(capsys):
    assert json.loads(run(capsys, "catalan", "0")[1])["catalan"] == "1"
    assert json.loads(run(capsys, "catalan", "5")[1])["catalan"] == "42"
    value = json.loads(run(capsys, "catalan", "30")[1])["catalan"]
    assert len(value) == 16
    assert run(capsys, "catalan", "5", "--no-json")[1].strip() == "42"


@pytest.mark.parametrize("max_n", [3, 6])
def test_cross_validate(capsys, max_n):
    code, out, _ = run(capsys, "cross-validate", "--max-n", str(max_n))
    lines = out.strip().splitlines()
    assert code == 0
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert lines[-1] == "10/10 checks passed"


def test_cross_validate_bounds(capsys):
    assert run(capsys, "cross-validate", "--max-n", "10")[0] == 1
