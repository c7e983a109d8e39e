from sweep import CaseResult, Report, case_rng, run_cases


def square_is_even(case: int, *, offset: int) -> CaseResult:
    if case < 0:
        raise ValueError("negative case")
    return CaseResult(key=[case], passed=(case * case + offset) % 2 == 0)


def skip(key, passed=True):
    return CaseResult(key=key, passed=passed, skipped=True, detail={"reason": "no draw"})


def test_report_counts_and_summary():
    report = Report("demo", {}, [CaseResult(["a"], True), CaseResult(["b"], False), skip(["c"]),
                                 CaseResult(["d"], False, error="ValueError: x")])
    assert report.counts() == {"total": 4, "passed": 1, "failed": 2, "skipped": 1, "errors": 1}
    assert report.summary() == "1/4 pass, 2 fail, 1 skipped, 1 errors"
    assert not report.passed


def test_skipped_cases_do_not_fail_a_report():
    report = Report("demo", {}, [CaseResult(["a"], True), skip(["b"])])
    assert report.passed
    assert report.to_json()["pass"] is True


def test_all_skipped_report_does_not_pass():
    report = Report("demo", {}, [skip(["a"]), skip(["b"])])
    assert not report.passed
    assert report.counts()["passed"] == 0


def test_empty_report_passes():
    assert Report("demo", {}, []).passed


def test_merge_prefixes_keys():
    first = Report("demo", {"p": 0}, [CaseResult(["a"], True)])
    second = Report("demo", {"p": 1}, [CaseResult("b", True)])
    merged = Report.merge("demo", {}, [first, second], tag="p")
    assert [c.key for c in merged.cases] == [[0, "a"], [1, "b"]]


def test_case_rng_is_reproducible():
    a = case_rng(3, "suite", [1, 2]).random()
    assert a == case_rng(3, "suite", [1, 2]).random()
    assert a != case_rng(4, "suite", [1, 2]).random()


def test_run_cases_isolates_failures():
    results = run_cases("demo", square_is_even, [2, -1, 3], offset=0)
    assert [r.passed for r in results] == [True, False, False]
    assert results[1].key == -1
    assert results[1].error == "ValueError: negative case"


def test_run_cases_pool_keeps_case_order():
    cases = list(range(12))
    serial = run_cases("demo", square_is_even, cases, workers=1, offset=1)
    pooled = run_cases("demo", square_is_even, cases, workers=3, offset=1)
    assert [r.to_json() for r in pooled] == [r.to_json() for r in serial]
    assert [r.key for r in pooled] == [[c] for c in cases]
