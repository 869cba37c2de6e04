import os

from hypothesis import settings

os.environ.setdefault("POLYWORK_TEST_MODE", "1")

settings.register_profile("polywork", deadline=None, max_examples=60)
settings.load_profile("polywork")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
