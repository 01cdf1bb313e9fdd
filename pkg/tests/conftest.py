import random
import sys
from pathlib import Path

import pytest

from infosym.bdd import KERNELS, Manager, TruthTable

FIXTURES = Path(__file__).parent / "fixtures"

# NE in {x2,x3}, M in {x1,x4}
PAIRS4 = "1100000111000010"
# E in {x1,~x2} only
EPAIR3 = "11100011"
# majority of three
MAJ3 = "00010111"
# f = x1 + x2' x3', enumerated under the x1-most-significant convention
OR_NOR3 = "10001111"


@pytest.fixture(params=sorted(KERNELS))
def backend(request):
    return request.param


def build(bits, backend=None):
    """Function handle for a truth-vector string or bit sequence."""
    if isinstance(bits, str):
        t = TruthTable.from_string(bits)
    else:
        t = TruthTable((len(bits)).bit_length() - 1, tuple(bits))
    mgr = Manager(t.n, backend=backend)
    return mgr.from_truth_table(t)


def random_tables(seed, n, count):
    rng = random.Random(seed)
    for _ in range(count):
        yield TruthTable(n, tuple(rng.getrandbits(1) for _ in range(1 << n)))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
