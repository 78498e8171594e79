import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "strdist",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
    derandomize=True,
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "strdist"))


def pytest_terminal_summary(terminalreporter):
    # acceptance criteria report one line each, visible even with output captured
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "CRITERIA_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
