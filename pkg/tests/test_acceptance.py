"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""
from __future__ import annotations

import subprocess
import sys
import time

import pytest

from complexbessel import acceptance

# runtime budget per criterion, seconds
BUDGET = {1: 10, 2: 5, 3: 5, 4: 60, 5: 60, 6: 300, 7: 300, 8: 120, 9: 5, 10: 900, 11: 60}
ELAPSED: dict = {}


@pytest.mark.parametrize("number", sorted(acceptance.CRITERIA))
def test_criterion(number, capsys):
    start = time.perf_counter()
    res = acceptance.CRITERIA[number]()
    elapsed = time.perf_counter() - start
    ELAPSED[number] = elapsed
    within = elapsed < BUDGET[number]
    with capsys.disabled():
        print(f"\n{res.line()} in {elapsed:.1f}s (budget {BUDGET[number]}s)")
        for f in res.failures[:10]:
            print(f"    {f}")
    assert res.passed, res.failures
    assert within, f"criterion {number} took {elapsed:.1f}s"


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "complexbessel", *args], capture_output=True, text=True)


EXIT_CASES = [
    (("verify", "main", "--mu", "0.6"), 3),
    (("verify", "lemma2", "--nu", "0.5"), 2),
    (("verify", "lemma2", "--nu", "0.5", "--a", "2", "--c", "0", "--tol", "1e-30"), 1),
]


def test_criterion_12_cli_determinism(capsys):
    start = time.perf_counter()
    subset = ",".join(str(n) for n in acceptance.FAST)
    first = _cli("selftest", "--criteria", subset, "--format", "json")
    second = _cli("selftest", "--criteria", subset, "--format", "json")
    identical = first.stdout == second.stdout and first.returncode == second.returncode == 0
    codes = [(_cli(*args).returncode, want) for args, want in EXIT_CASES]
    codes_ok = all(got == want for got, want in codes)
    elapsed = time.perf_counter() - start
    budget = sum(BUDGET.values())
    passed = identical and codes_ok and elapsed < budget
    with capsys.disabled():
        status = "PASS" if passed else "FAIL"
        print(f"\n[{status}] criterion 12 CLI determinism and exit codes: "
              f"selftest byte-identical={identical}, exit codes {[g for g, _ in codes]} "
              f"(want {[w for _, w in codes]}) in {elapsed:.1f}s")
    assert identical, (first.stdout, second.stdout, first.stderr)
    assert codes_ok, codes
    assert elapsed < budget
