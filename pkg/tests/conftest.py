import csv
from pathlib import Path

import pytest

from pauligeo import _accel

FIXTURES = Path(__file__).parent / "fixtures"


def read_commutator_fixture():
    with open(FIXTURES / "commutators.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    header = [int(h[1:]) for h in rows[0][1:]]
    return {(int(r[0][1:]), col): cell for r in rows[1:] for col, cell in zip(header, r[1:])}


def read_cayley(name):
    lines = (FIXTURES / name).read_text().splitlines()
    lines = [ln.split() for ln in lines if ln.strip()]
    return lines[0], lines[1:]


BACKENDS = ["numpy"] + (["numba"] if _accel.NUMBA_AVAILABLE else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    previous = _accel.set_backend(request.param)
    yield request.param
    _accel.set_backend(previous)
