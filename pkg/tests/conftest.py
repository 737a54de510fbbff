import numpy as np
import pytest

from qtoda.measures import ModelParams

# q, p_plus, q_plus, p_minus, q_minus
PARAM_SETS = {
    "generic": ModelParams(0.3, 0.2, 0.2, 0.2, 0.2),
    "mixed": ModelParams(0.4, 0.3, -0.2, 0.3, -0.2),
    "asym": ModelParams(0.55, 0.5, 0.1, -0.4, 0.2),
    "negq": ModelParams(-0.5, 0.25, -0.5, 0.6, 0.25),
}


@pytest.fixture(params=sorted(PARAM_SETS))
def params(request):
    return PARAM_SETS[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(20230101)


# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(num: int, passed: bool, detail: str) -> None:
    ACCEPTANCE[num] = (bool(passed), detail)
    print(f"criterion {num:2d}: {'PASS' if passed else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
