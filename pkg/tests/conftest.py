import pytest

from lefschetz import LinearSystem, PowerSequence, PrimeFieldConfig, compute_case_data

SECOND_PRIME = 1000003


@pytest.fixture(scope="session")
def cfg():
    return PrimeFieldConfig(seed=20240601)


def random_system(rng, max_degree=15, max_points=8, max_mult=6) -> LinearSystem:
    n = int(rng.integers(0, max_points + 1))
    return LinearSystem(int(rng.integers(0, max_degree + 1)), rng.integers(1, max_mult + 1, size=n).tolist())


def random_case_i(rng, r_range=(3, 10)) -> PowerSequence:
    """Balanced sequences: powers within a window of width 4, rejected until case I with p >= 1."""
    while True:
        r = int(rng.integers(r_range[0], r_range[1] + 1))
        c = int(rng.integers(2, 12))
        ps = PowerSequence([max(1, int(x)) for x in rng.integers(c - 2, c + 2, size=r)])
        cd = compute_case_data(ps)
        if cd.case == "I" and cd.p >= 1:
            return ps


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
