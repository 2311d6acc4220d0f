import json
import subprocess
import sys

import pytest

from ybx.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--format", "json", *argv)
    return code, json.loads(out), out


def test_element_r(capsys):
    code, out, _ = run(capsys, "element", "r", "--upper", "2,2,1", "--lower", "3,1,2")
    assert code == 0
    assert out.strip() == "1-q^4-2*q^6-q^8+q^10+q^12+q^14"


def test_element_r_conservation_zero(capsys):
    code, out, _ = run(capsys, "element", "r", "--upper", "1,0,0", "--lower", "0,0,0")
    assert (code, out.strip()) == (0, "0")


def test_element_l(capsys):
    code, out, _ = run(capsys, "element", "l", "--upper", "0,1,2", "--lower", "1,0,3")
    assert (code, out.strip()) == (0, "1-q^6")


def test_element_s_json(capsys):
    code, doc, _ = run_json(capsys, "element", "s", "--eps", "101", "--a", "0,4,0", "--b", "1,0,1",
                            "--i", "0,3,1", "--j", "1,1,0")
    assert code == 0
    assert doc["schema"] == "ybx/1"
    assert doc["slopes"] == [4, 6]
    assert doc["text"] == "[(-q^2+q^4)*z] / (1-q^4*z)(1-q^6*z)"


def test_env_selects_json(capsys, monkeypatch):
    monkeypatch.setenv("YBX_OUTPUT", "json")
    code, out, _ = run(capsys, "table", "crystal", "--eps", "101", "--l", "4")
    assert code == 0
    assert json.loads(out)["vectors"] == [[0, 3, 1], [0, 4, 0], [1, 2, 1], [1, 3, 0]]


@pytest.mark.parametrize("argv", [
    ["verify", "limit-theorem", "--eps", "101", "--l", "4", "--m", "2"],
    ["verify", "te-rrrr", "--input", "0,0,0,0,0,0"],
    ["verify", "te-rlll", "--input", "1,0,1,2,0,1"],
    ["verify", "te-n", "--eps", "10"],
    ["verify", "te-comb", "--kind", "rlll"],
    ["verify", "ybe-s", "--eps", "11", "--max-total", "3", "--points", "2"],
    ["verify", "ybe-s", "--eps", "101", "--levels", "1,2,1", "--point", "2/7,1/4,1/9"],
    ["verify", "intertwiner", "--eps", "10", "--l", "1", "--m", "1", "--point", "1/3,2,7"],
    ["verify", "intertwiner", "--eps", "01", "--max-total", "3", "--points", "1"],
    ["verify", "r-props", "--bound", "2"],
    ["verify", "inverse", "--eps", "0101", "--l", "3", "--m", "2"],
])
def test_verify_passes(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0, out
    assert out.startswith("[PASS]")


def test_verify_ybe_comb_replays_example(capsys):
    code, doc, _ = run_json(capsys, "verify", "ybe-comb", "--eps", "1010", "--levels", "4,2,1")
    assert code == 0
    replay = doc["report"]["replays"][0]
    assert replay["input"] == ["0211", "1010", "0001"]
    assert replay["lhs"] == ["0010[f]", "0011[e-1]", "1201[d+1]"]


def test_limit_theorem_column(capsys):
    code, doc, _ = run_json(capsys, "verify", "limit-theorem", "--eps", "01010", "--l", "8", "--m", "4",
                            "--column", "01313", "10210")
    assert code == 0
    assert doc["report"]["nonzero"] == [
        {"i": [0, 1, 3, 1, 3], "j": [1, 0, 2, 1, 0], "a": [1, 0, 5, 1, 1], "b": [0, 1, 0, 1, 2], "H": 2}]


def test_table_comb_r_map_file(capsys, tmp_path):
    path = tmp_path / "map.json"
    code, _, _ = run(capsys, "table", "comb-r-map", "--eps", "01010", "--l", "8", "--m", "4", "--out", str(path))
    assert code == 0
    doc = json.loads(path.read_text(encoding="utf-8"))
    entry = [e for e in doc["entries"] if e["i"] == [0, 1, 3, 1, 3] and e["j"] == [1, 0, 2, 1, 0]]
    assert entry == [{"i": [0, 1, 3, 1, 3], "j": [1, 0, 2, 1, 0], "b": [0, 1, 0, 1, 2],
                      "a": [1, 0, 5, 1, 1], "H": 2, "borders": [1, 2, 0, 0, 2]}]


def test_table_s_block_trivial(capsys):
    code, doc, _ = run_json(capsys, "table", "s-block", "--eps", "11", "--l", "0", "--m", "0")
    assert code == 0
    assert len(doc["entries"]) == 1
    assert doc["entries"][0]["value"] == [{"d": 0, "k": 0, "p": [[0, "1"]]}]


@pytest.mark.parametrize("argv", [
    ["element", "s", "--eps", "101", "--a", "0,4,0", "--b", "1,0,1", "--i", "0,3,1", "--j", "1,1,0"],
    ["table", "s-block", "--eps", "101", "--l", "2", "--m", "1"],
    ["verify", "limit-theorem", "--eps", "11", "--l", "1", "--m", "1"],
    ["verify", "intertwiner", "--eps", "10", "--l", "1", "--m", "1", "--point", "1/3,2,7"],
])
def test_json_is_canonical(capsys, argv):
    _, doc, out = run_json(capsys, *argv)
    again = json.dumps(json.loads(out), sort_keys=True, ensure_ascii=False)
    assert again == out.strip()
    assert json.loads(again) == doc


def test_jobs_do_not_change_output(capsys):
    argv = ["verify", "ybe-s", "--eps", "01", "--max-total", "3", "--points", "1"]
    _, one, _ = run_json(capsys, *argv)
    _, two, _ = run_json(capsys, *argv, "--jobs", "2")
    assert one == two


@pytest.mark.parametrize("argv, code", [
    (["element", "r", "--upper", "1,x", "--lower", "0,0,0"], 2),
    (["element", "r", "--upper", "1,0", "--lower", "0,0,0"], 2),
    (["element", "s", "--eps", "101"], 2),
    (["verify", "nonsense"], 2),
    (["verify", "inverse", "--eps", "101"], 2),
    (["verify", "ybe-comb", "--eps", "102", "--levels", "1,1,1"], 2),
    (["verify", "intertwiner", "--eps", "10", "--l", "1", "--m", "1", "--point", "1,2,3"], 3),
    (["element", "s", "--eps", "11", "--a", "2,0", "--b", "0,0", "--i", "2,0", "--j", "0,0"], 3),
    (["verify", "intertwiner", "--eps", "00", "--l", "1", "--m", "1", "--point", "1/2,3,3"], 3),
    ([], 2),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_mismatch_exit_code(capsys, monkeypatch):
    from ybx import threed

    def broken(eps, a, b, c, i, j, k):
        v = threed.layer_elem(eps, a, b, c, i, j, k)
        return v * 2 if eps == 0 and (a, b, c) == (0, 1, 0) else v

    # swap the element table the verifier uses by default
    monkeypatch.setattr(threed.verify_te_rrrr, "__defaults__", (broken,))
    code, out, _ = run(capsys, "verify", "te-rrrr", "--input", "1,0,1,0,1,0")
    assert code == 1
    assert out.startswith("[FAIL]")


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "ybx.cli", "element", "r", "--upper", "4,0,3",
                           "--lower", "3,1,2"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "q^6"
