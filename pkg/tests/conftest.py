import os

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(autouse=True, scope="session")
def _no_disk_cache():
    # keep runs hermetic unless a test opts in
    from uglov_nsr import macdonald

    old = os.environ.pop(macdonald.CACHE_ENV, None)
    macdonald.set_cache_dir(None)
    yield
    if old is not None:
        os.environ[macdonald.CACHE_ENV] = old


ACCEPTANCE: dict = {}
_STARTED: set = set()


@pytest.fixture
def criterion(request):
    """Record a named acceptance result; printed in the terminal summary."""

    name = request.node.name
    number = int(name.split("_")[1][1:])
    _STARTED.add(number)

    def record(number, title, ok, detail=""):
        ACCEPTANCE[number] = (title, bool(ok), detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not (ACCEPTANCE or _STARTED):
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_STARTED | set(ACCEPTANCE)):
        title, ok, detail = ACCEPTANCE.get(n, ("raised before completing", False, ""))
        line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {title}"
        terminalreporter.write_line(line + (f" ({detail})" if detail else ""))
