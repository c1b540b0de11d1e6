"""The nine end-to-end acceptance criteria; each prints one PASS/FAIL line."""

import filecmp
import subprocess
import sys

import pytest

from catkit.acceptance import CHECKS


@pytest.mark.parametrize("number", sorted(CHECKS))
def test_criterion(number, capsys):
    res = CHECKS[number]()
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.details


def _corpus_tree(directory):
    return subprocess.run(
        [sys.executable, "-m", "catkit.cli", "corpus", "run", "--skip-acceptance", "--tree", str(directory)],
        capture_output=True,
        check=False,
    )


def test_corpus_trees_are_byte_identical_across_processes(tmp_path):
    first, second = _corpus_tree(tmp_path / "a"), _corpus_tree(tmp_path / "b")
    assert first.returncode == second.returncode == 0, first.stdout.decode()
    assert first.stdout == second.stdout
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert names == sorted(p.name for p in (tmp_path / "b").iterdir())
    match, mismatch, errors = filecmp.cmpfiles(tmp_path / "a", tmp_path / "b", names, shallow=False)
    assert match == names and not mismatch and not errors
