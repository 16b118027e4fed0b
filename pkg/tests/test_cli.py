import json

import pytest

from app import build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_sigma(capsys):
    code, out = run(capsys, "sigma", "--g", "3", "--subspace", "a1, b1")
    assert code == 0
    assert out.strip() == "a1*b1"


def test_sigma_boundary_mode(capsys):
    code, out = run(capsys, "sigma", "--g", "2", "--subspace", "a1, b1, a2, b2", "--mode", "boundary")
    assert code == 0
    assert out.strip() == "a1*b1 + a2*b2"


def test_enumerate_count(capsys):
    code, out = run(capsys, "enumerate", "--g", "2", "--count-only")
    assert code == 0
    assert out.strip() == "20"


def test_enumerate_lists_subspaces(capsys):
    code, out = run(capsys, "enumerate", "--g", "2")
    assert code == 0
    assert len(out.strip().splitlines()) == 20


def test_tree_vanishes(capsys):
    code, out = run(capsys, "tree", "--g", "4", "--tree", "0(1)(1)(2)", "--vanishes")
    assert code == 0
    assert json.loads(out)["payload"] == {"vanishes": True}


def test_tree_reduce(capsys):
    code, out = run(capsys, "tree", "--tree", "1(1(1(1)))", "--reduce")
    assert code == 0
    assert len(json.loads(out)["payload"]["systems"]) == 1


def test_tree_sigma_k_default(capsys):
    code, out = run(capsys, "tree", "--tree", "1(1(1(1)))")
    payload = json.loads(out)["payload"]
    assert code == 0
    assert payload["k"] == 3
    assert not payload["zero"]


def test_tree_genus_mismatch(capsys):
    code, out = run(capsys, "tree", "--g", "5", "--tree", "0(1)(1)(2)", "--vanishes")
    assert code == 1
    assert json.loads(out)["status"] == "error"


def test_decide_and_verify(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    code, out = run(capsys, "decide-equal", "--g", "4",
                    "--pair1", "a1, b1; a2, b2",
                    "--pair2", "a1, b1; a2 + 2a3, b2",
                    "--cert", str(cert))
    assert code == 0
    assert json.loads(out)["payload"]["verdict"] == "Equal"
    assert cert.exists()

    code, out = run(capsys, "verify-cert", str(cert))
    assert code == 0
    assert json.loads(out)["payload"] == {"valid": True}


def test_decide_distinct(capsys):
    code, out = run(capsys, "decide-equal", "--g", "4",
                    "--pair1", "a1, b1; a2, b2", "--pair2", "a1, b1; a3, b3")
    assert code == 0
    assert json.loads(out)["payload"]["verdict"] == "DistinctBySigma"


def test_verify_missing_file(capsys, tmp_path):
    code, out = run(capsys, "verify-cert", str(tmp_path / "missing.json"))
    assert code == 1
    assert "ParseError" in json.loads(out)["diagnostics"]


def test_census_csv(capsys):
    code, out = run(capsys, "census", "--g", "4", "--k", "2")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "tree,k,has_genus0,sigma_k_zero"
    assert len(lines) > 1


@pytest.mark.parametrize("argv", [
    ["census", "--g", "3", "--k", "4"],
    ["sigma", "--g", "3", "--subspace", "a1, a2"],
    ["enumerate", "--g", "0"],
])
def test_domain_errors(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 1
    assert json.loads(out)["status"] == "error"


@pytest.mark.parametrize("argv", [
    ["sigma"],
    ["tree", "--tree", "1(2)", "--vanishes", "--reduce"],
    ["nonsense"],
])
def test_usage_errors(argv):
    assert main(argv) == 2


def test_help_exits_cleanly():
    assert main(["--help"]) == 0


def test_parser_defaults():
    args = build_parser().parse_args(["selftest"])
    assert args.level == "quick"
    assert args.threads >= 1


@pytest.mark.parametrize("argv", [
    ["--threads", "4", "--seed", "9", "dim-bounds", "--g", "4"],
    ["dim-bounds", "--g", "4", "--threads", "4", "--seed", "9"],
])
def test_common_flags_on_either_side(argv):
    args = build_parser().parse_args(argv)
    assert (args.threads, args.seed) == (4, 9)


def test_common_flags_keep_defaults():
    args = build_parser().parse_args(["--seed", "5", "selftest", "--verbose"])
    assert args.seed == 5
    assert args.verbose


@pytest.mark.slow
def test_selftest_quick(capsys):
    code, out = run(capsys, "selftest", "--level", "quick")
    assert code == 0
    assert "subspace_counts" in out
