from decimal import ROUND_DOWN, Decimal

import numpy as np
import pytest

# Published lambda = 1 convergence table, as printed (None = dash).
TABLE1 = {
    2: ["5.432610908", "20.24140009", None, None],
    4: ["5.432607957", "20.23986646", "44.91361286", "79.45797872"],
    6: ["5.432607865", "20.23986320", "44.91360984", "79.45707684"],
    8: ["5.432607857", "20.23986306", "44.91360969", "79.45707417"],
    10: ["5.432607855", "20.23986304", "44.91360967", "79.45707402"],
    12: ["5.432607855", "20.23986304", "44.91360966", "79.45707400"],
    14: [None, None, "44.91360966", "79.45707400"],
}

# Converged values as printed in the last row where each level appears.
TABLE1_LIMIT = [5.432607855, 20.23986304, 44.91360966, 79.45707400]


def truncated(x: float, cell: str) -> str:
    """``x`` cut (not rounded) to the number of decimals shown in ``cell``."""
    return str(Decimal(float(x)).quantize(Decimal(cell), rounding=ROUND_DOWN))


@pytest.fixture
def rng():
    return np.random.default_rng(0)


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
