"""Prints one PASS/FAIL line per acceptance criterion at the end of the run."""

import re

_results = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = re.match(r"test_criterion_(\d+)_", item.name)
        if m and item.module.__name__.endswith("test_acceptance"):
            doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
            _results[item.nodeid] = {"num": int(m.group(1)), "doc": doc, "outcome": None, "props": []}


def pytest_runtest_logreport(report):
    entry = _results.get(report.nodeid)
    if entry is None:
        return
    if report.when == "call" or report.outcome != "passed":
        if entry["outcome"] in (None, "passed"):
            entry["outcome"] = report.outcome
        entry["props"] = report.user_properties


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for entry in sorted(_results.values(), key=lambda e: e["num"]):
        outcome = entry["outcome"]
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP", None: "NOT RUN"}[outcome]
        extra = ", ".join(f"{k}={v}" for k, v in entry["props"])
        line = f"criterion {entry['num']:2d}: {status}  {entry['doc']}"
        terminalreporter.write_line(line + (f"  [{extra}]" if extra else ""))
