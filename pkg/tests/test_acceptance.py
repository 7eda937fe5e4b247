"""Acceptance criteria 1–11, one line of output per criterion.

Run under pytest (lines appear in the log) or directly:
``python tests/test_acceptance.py``.
"""

import sys
import time

import pytest

from fgtorus import suites

SEED = 42

TITLES = {
    1: "vertex counts on the grid",
    2: "HK = nI on P3/P4 and K boundary rows = b(P4)",
    3: "b-vectors form a Z-basis of the kernel",
    4: "[B : B_d] = d^(2g)",
    5: "rank over the center at the listed towers",
    6: "normal form invariant factors",
    7: "three-way pairing agreement and |im zeta| = n^(2g)",
    8: "loop images central and equal to the d-form",
    9: "P-bar evaluation identity",
    10: "mutation: involution, flips, nu extends mu, Frobenius square",
    11: "irreps: dimension, relations, commutant, D^2 = rank, shadow",
}


def run_criterion(c: int) -> tuple[bool, str]:
    t = time.perf_counter()
    cases = suites.CRITERIA[c](SEED)
    bad = [x for x in cases if x.status == "fail"]
    skipped = sum(x.status == "skip" for x in cases)
    ok = not bad
    extra = f", {skipped} skipped" if skipped else ""
    line = f"criterion {c:2d}: {'PASS' if ok else 'FAIL'}  {len(cases) - len(bad)}/{len(cases)} cases{extra}  {time.perf_counter() - t:5.1f}s  {TITLES[c]}"
    for x in bad:
        line += f"\n    {x.name}: expected {x.expected}, got {x.actual} {x.detail}"
    return ok, line


@pytest.mark.parametrize("criterion", range(1, 12))
def test_criterion(criterion, capsys):
    ok, line = run_criterion(criterion)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(c) for c in range(1, 12)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
