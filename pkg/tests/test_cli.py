import subprocess
import sys

import pytest

from forq.baformat import load_pair
from forq.cli import format_lasso, main
from forq.engine import EngineOptions, decide_inclusion
from forq.oracle import random_pair
from forq.baformat import print_ba


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out.splitlines(), err


def test_check_example(example_files, capsys):
    a, b = example_files
    code, out, _ = run(["check", str(a), str(b)], capsys)
    assert code == 1
    assert out == ["NOT_INCLUDED", "counterexample: a (a)^w"]


def test_check_same_file_twice(example_files, capsys):
    a, _ = example_files
    code, out, _ = run(["check", str(a), str(a)], capsys)
    assert (code, out) == (0, ["INCLUDED"])


def test_check_stats(example_files, capsys):
    a, b = example_files
    code, out, _ = run(["check", str(b), str(a), "--stats", "--picky", "--no-acc-reduce"], capsys)
    assert code == 0 and out[0] == "INCLUDED"
    stats = dict(line.split("=") for line in out[1:])
    assert {"queries", "stem_basis", "period_basis", "time_ms"} <= set(stats)


def test_missing_file(example_files, capsys):
    a, _ = example_files
    code, out, err = run(["check", str(a), str(a.parent / "missing.ba")], capsys)
    assert code == 2 and out == [] and "missing.ba" in err


def test_parse_error_and_usage(tmp_path, example_files, capsys):
    bad = tmp_path / "bad.ba"
    bad.write_text("q\na,q\n")
    code, _, err = run(["check", str(bad), str(example_files[0])], capsys)
    assert code == 2 and ":2:" in err
    assert run([], capsys)[0] == 2
    assert run(["check", "only-one.ba"], capsys)[0] == 2


def test_timeout_exit_code(example_files, capsys):
    a, b = example_files
    code, out, err = run(["check", str(a), str(b), "--timeout-ms", "-1"], capsys)
    assert code == 3 and "timeout" in err


def test_empty_stem_is_omitted():
    assert format_lasso(("a", "b"), (), (1,)) == "(b)^w"
    assert format_lasso(("a", "b"), (0, 1), (1, 0)) == "a b (b a)^w"


def test_cli_verdict_matches_library(tmp_path, capsys):
    for seed in range(30):
        a, b = random_pair(seed)
        pa, pb = tmp_path / f"{seed}a.ba", tmp_path / f"{seed}b.ba"
        if not a.transitions or not b.transitions:
            continue
        pa.write_text(print_ba(a))
        pb.write_text(print_ba(b))
        la, lb = load_pair(pa, pb)
        for flags, opts in (([], EngineOptions()), (["--picky", "--no-prune"],
                                                    EngineOptions(picky=True, prune=False))):
            expected = decide_inclusion(la, lb, opts).included
            code, _, _ = run(["check", str(pa), str(pb), *flags], capsys)
            assert code == (0 if expected else 1)


def test_selftest(capsys):
    code, out, _ = run(["selftest", "--seeds", "20"], capsys)
    assert code == 0 and out[-1] == "20 pairs, 0 disagreements"


def test_module_entry_point(example_files):
    a, b = example_files
    proc = subprocess.run([sys.executable, "-m", "forq.cli", "check", str(a), str(b)],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert proc.stdout.splitlines()[1] == "counterexample: a (a)^w"
