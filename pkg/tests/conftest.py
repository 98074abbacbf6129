import pytest

from riskfront.core import Scenario, StructuralProfile, SupplierSpec

_CRITERIA: list[tuple[str, bool, str]] = []


@pytest.fixture
def fig2():
    return Scenario.fig2()


@pytest.fixture
def zero_alpha_scenario():
    """Cheapest supplier carries no consequence of failure."""
    return Scenario(
        suppliers=(
            SupplierSpec(2.0, StructuralProfile.constant(0.0, 0.5)),
            SupplierSpec(3.0),
            SupplierSpec(7.0),
        ),
        demand=20,
        retailer_coefficient=4.0,
    )


@pytest.fixture
def criterion():
    """Record one acceptance line; printed in the terminal summary."""

    def record(name: str, passed: bool, detail: str = "") -> bool:
        _CRITERIA.append((name, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _CRITERIA:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status}  {name}  {detail}".rstrip())
