import pytest

from eht import get_params, keygen


@pytest.fixture(scope="session")
def toy():
    return get_params("toy")


@pytest.fixture(scope="session")
def light_a():
    return get_params("EHT-light-A")


@pytest.fixture(scope="session")
def toy_keys(toy):
    return keygen(toy, bytes(32))


@pytest.fixture(scope="session")
def light_a_keys(light_a):
    return keygen(light_a, bytes(range(32)))


@pytest.fixture(scope="session")
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion and return the recorder."""
    lines = request.config.stash.setdefault(_LINES, [])

    def record(number: int, ok: bool, detail: str) -> bool:
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(line)
        lines.append((number, line))
        return ok

    return record


_LINES = pytest.StashKey[list]()


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
