import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings

from rank0quot.arith import BinaryForm
from rank0quot.models import WeierstrassCurve, validate_hyperelliptic, validate_quartic
from rank0quot.pipeline import parse_record

FIXTURES = Path(__file__).parent / "fixtures"

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


def load_jsonl(name):
    return [line for line in (FIXTURES / name).read_text().splitlines() if line.strip()]


@pytest.fixture(scope="session")
def example_lines():
    return load_jsonl("examples.jsonl")


@pytest.fixture(scope="session")
def curves():
    out = {}
    for name in ("examples.jsonl", "negative.jsonl"):
        for n, line in enumerate(load_jsonl(name), start=1):
            obj = json.loads(line)
            if "coeffs" not in obj and "f" not in obj or obj["id"] == "singular":
                continue
            out[obj["id"]] = parse_record(line, n).curve()
    return out


# the four example curves, built directly (not through the parser)
FERMAT = [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, -1]
EX2 = [15, 0, 0, -88, 0, -88, 0, 0, 0, 0, 112, 0, 288, 0, 112]
EX3 = [3, 0, 4, -2, 0, 2, 0, -4, 0, 2, -1, 0, -2, 0, 1]
EX4_F = [1, 0, -4, 0, 2, 0, 0, 0, 1]


@pytest.fixture(scope="session")
def fermat():
    return validate_quartic(FERMAT)


@pytest.fixture(scope="session")
def ex2():
    return validate_quartic(EX2)


@pytest.fixture(scope="session")
def ex3():
    return validate_quartic(EX3)


@pytest.fixture(scope="session")
def ex4():
    return validate_hyperelliptic(BinaryForm(8, EX4_F))


@pytest.fixture(scope="session")
def E_ex2():
    return WeierstrassCurve(0, Fraction(7, 2), 0, Fraction(-15, 16), 0)
