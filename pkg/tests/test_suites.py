import pytest

from fgtorus import suites


def test_suite_table_covers_all_criteria():
    covered = sorted(c for name, cs in suites.SUITES.items() if name != "all" for c in cs)
    assert covered == list(range(1, 12)) == list(suites.SUITES["all"])


def test_unknown_suite():
    with pytest.raises(KeyError):
        suites.run_suite("nope")


def test_case_statuses():
    assert suites._case("ok", 3, lambda: 3).status == "pass"
    assert suites._case("bad", 3, lambda: 4).status == "fail"
    crashed = suites._case("boom", 3, lambda: 1 / 0)
    assert crashed.status == "fail" and "ZeroDivisionError" in crashed.detail


def test_threads_env(monkeypatch):
    monkeypatch.setenv("FG_THREADS", "4")
    assert suites.threads() == 4
    monkeypatch.setenv("FG_THREADS", "zero")
    assert suites.threads() == 1
    monkeypatch.delenv("FG_THREADS")
    assert suites.threads() == 1


def test_seed_changes_samples_only():
    a = suites.run_suite("sympoly", seed=1).to_json_obj()
    b = suites.run_suite("sympoly", seed=1).to_json_obj()
    c = suites.run_suite("sympoly", seed=2).to_json_obj()
    assert a == b
    assert len(a["cases"]) == len(c["cases"]) == 50
    assert a["pass"] and c["pass"]
