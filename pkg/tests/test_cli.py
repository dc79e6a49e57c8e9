import json

import pytest

from ospq.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, run


def call(capsys, *argv):
    code = run(list(argv))
    return code, capsys.readouterr().out


def test_superdimension_of_vector_module(capsys):
    code, out = call(capsys, "superdim", "--n", "1", "--lambda", "1")
    assert code == EXIT_OK
    assert json.loads(out) == {"sd": "q - 1 + q^-1"}


def test_trivial_irrep(capsys):
    code, out = call(capsys, "irrep", "--n", "2", "--lambda", "0,0", "--verify")
    assert code == EXIT_OK
    assert json.loads(out)["dim"] == 1


@pytest.mark.parametrize("what", ["relations", "hopf", "self-duality"])
def test_checks_pass(capsys, what):
    code, out = call(capsys, "check", what, "--n", "1")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["ok"] and "conventions" in doc


@pytest.mark.parametrize(
    "argv",
    [
        ["superdim", "--n", "1", "--lambda", "-1"],
        ["superdim", "--n", "0", "--lambda", "1"],
        ["irrep", "--n", "1", "--lambda", "x"],
        ["sections", "--n", "1", "--theta", "3", "--module", "0"],
        ["nosuch"],
        ["decompose", "--power", "0"],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(argv) == EXIT_USAGE


def test_verification_failure_exits_one(capsys):
    # cutoff 1 is too small to see W(2) inside the sections of C_0
    code, out = call(capsys, "frobenius", "--n", "1", "--w-lambda", "2", "--v-weight", "0", "--cutoff", "1")
    assert code == EXIT_FAIL
    assert not json.loads(out)["ok"]


def test_output_is_deterministic(capsys):
    argv = ["sections", "--n", "1", "--module", "-1", "--cutoff", "2", "--expand"]
    _, a = call(capsys, *argv)
    _, b = call(capsys, *argv)
    assert a == b
    assert json.loads(a)["block dims"] == {"1": 3, "2": 5}


def test_module_file(capsys, tmp_path):
    from ospq.repcore import weight_module

    path = tmp_path / "c.json"
    path.write_text(json.dumps(weight_module(1, (-1,)).to_json()))
    code, out = call(capsys, "sections", "--n", "1", "--module", str(path), "--cutoff", "2")
    assert code == EXIT_OK
    assert json.loads(out)["dim"] == 8


def test_invariants_and_text_format(capsys):
    code, out = call(capsys, "invariants", "--n", "1", "--cutoff", "3", "--format", "text")
    assert code == EXIT_OK
    assert 'dims by cutoff: [1, 4, 9, 16]' in out


def test_borel_weil(capsys):
    code, out = call(capsys, "borel-weil", "--n", "1", "--mu", "-2")
    assert code == EXIT_OK
    assert json.loads(out)["data"]["dim O_q"] == 5


def test_evaluate(capsys):
    code, out = call(capsys, "evaluate", "--n", "1", "--element", "t(0;0,0)", "--word", "")
    assert code == EXIT_OK
    assert json.loads(out)["value"] == "1"


def test_cache_dir_is_populated(capsys, tmp_path, monkeypatch):
    from ospq import cache, repcore

    monkeypatch.setattr(repcore, "_IRREPS", {})
    try:
        code, _ = call(capsys, "irrep", "--n", "1", "--lambda", "3", "--cache-dir", str(tmp_path))
    finally:
        cache.set_cache_dir(None)
    assert code == EXIT_OK
    assert list(tmp_path.glob("*.json"))


def test_suite_rank_one(capsys):
    code, out = call(capsys, "suite", "--n", "1", "--cutoff", "2")
    assert code == EXIT_OK, out
