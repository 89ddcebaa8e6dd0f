import pytest

from metacyclic.presentation import build_context, validate

ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def valid_presentations(max_order, normalized=True):
    """Every (n, m, t, r) with n*m <= max_order satisfying r^m = t(r-1) = 0 mod n."""
    for n in range(1, max_order + 1):
        for m in range(1, max_order // n + 1):
            for t in range(1, n + 1):
                if normalized and n % t:
                    continue
                for r in range(1, n + 1):
                    if (pow(r, m, n) - 1) % n == 0 and t * (r - 1) % n == 0:
                        yield validate(n, m, t, r)


def small_contexts(max_order):
    return [build_context(p) for p in valid_presentations(max_order)]


@pytest.fixture(scope="session")
def example_ctx():
    return build_context(validate(228, 30, 38, 7))


@pytest.fixture(scope="session")
def q8():
    return build_context(validate(4, 2, 2, 3))


@pytest.fixture(scope="session")
def d8():
    return build_context(validate(4, 2, 4, 3))


@pytest.fixture(scope="session")
def s3():
    return build_context(validate(3, 2, 3, 2))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k[1:])):
        ok, note = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{key}: {'PASS' if ok else 'FAIL'}  {note}")
