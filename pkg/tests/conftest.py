import time

import pytest

ACCEPTANCE = pytest.StashKey[dict]()
STARTED = pytest.StashKey[float]()
SUITE_BUDGET_S = 120.0


def pytest_configure(config):
    config.stash[ACCEPTANCE] = {}
    config.stash[STARTED] = time.perf_counter()


@pytest.fixture
def acceptance_log(request):
    return request.config.stash[ACCEPTANCE]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(ACCEPTANCE, {})
    if not log:
        return
    elapsed = time.perf_counter() - config.stash[STARTED]
    terminalreporter.section("acceptance criteria")
    for k in sorted(log):
        ok, detail = log[k]
        if k == 11:
            ok = ok and elapsed < SUITE_BUDGET_S
            detail = f"{detail}; full suite {elapsed:.1f} s (budget {SUITE_BUDGET_S:.0f} s)"
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
