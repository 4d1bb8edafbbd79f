import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture
def ctx():
    from genbell import PrecisionContext

    return PrecisionContext()


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    verdicts = getattr(mod, "VERDICTS", None)
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(verdicts, key=lambda c: (int(c[1:].rstrip("ab")), c)):
        terminalreporter.write_line(verdicts[cid])
