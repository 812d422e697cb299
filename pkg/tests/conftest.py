import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", max_examples=300, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# criterion number -> (description, list of outcomes)
ACCEPTANCE: dict[int, tuple[str, list[str]]] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("acceptance")
        if mark:
            num, desc = mark.args
            ACCEPTANCE.setdefault(num, (desc, []))


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for num, (desc, outcomes) in ACCEPTANCE.items():
        if f"criterion_{num:02d}" in report.nodeid:
            if hasattr(report, "wasxfail"):
                outcomes.append("xfail:" + report.wasxfail)
            else:
                outcomes.append(report.outcome)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(num, description): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        desc, outcomes = ACCEPTANCE[num]
        if not outcomes:
            continue
        failed = [o for o in outcomes if o != "passed"]
        if not failed:
            terminalreporter.write_line(f"ACCEPTANCE {num}: PASS - {desc}")
        else:
            reasons = "; ".join(sorted({o.removeprefix("xfail:") for o in failed}))
            terminalreporter.write_line(f"ACCEPTANCE {num}: FAIL - {desc} ({reasons})")
