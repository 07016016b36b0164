import os

from hypothesis import HealthCheck, settings

# 1000 examples x 10 cases per example = 10^4 cases per property and ring.
# WARING_QUICK=1 shrinks the suites for local iteration.
settings.register_profile(
    "full", max_examples=1_000, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("quick", max_examples=20, deadline=None)
settings.load_profile("quick" if os.environ.get("WARING_QUICK") else "full")


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
