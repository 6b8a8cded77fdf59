import re
from collections import defaultdict

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

CRITERIA = {
    1: "Appendix table regression",
    2: "GL_n closed form E^m / S_m",
    3: "degree 0 gives the torus and the full Weyl group",
    4: "slope map of GL_n",
    5: "relative Weyl group vs brute-force stabilizer",
    6: "Burnside count vs orbit enumeration",
    7: "invariant suites",
    8: "non-reproducibility note",
}

_outcomes: dict[int, list[tuple[str, str]]] = defaultdict(list)
_pattern = re.compile(r"test_criterion_(\d+)_")


def pytest_runtest_logreport(report):
    m = _pattern.search(report.nodeid)
    if not m or "test_acceptance" not in report.nodeid:
        return
    if report.when == "call" or report.outcome in ("failed", "skipped") and report.when == "setup":
        _outcomes[int(m.group(1))].append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k, title in CRITERIA.items():
        results = _outcomes.get(k)
        if not results:
            tr.write_line(f"criterion {k}: NOT RUN  {title}")
            continue
        failed = [name for name, outcome in results if outcome != "passed"]
        status = "FAIL" if failed else "PASS"
        line = f"criterion {k}: {status}  {title}  ({len(results) - len(failed)}/{len(results)} checks)"
        tr.write_line(line)
        for name in failed:
            tr.write_line(f"    failed: {name}")
