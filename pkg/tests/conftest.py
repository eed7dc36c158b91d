import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from convexcodes import NeuralCode, parse_code

# running examples used across test modules
C22_TEXT = "134, 1357, 257, 356, 13, 35, 57"
C24_TEXT = "123, 1246, 145, 356, 12, 14, 3, 5, 6"
C18A_TEXT = "345, 234, 356, 12, 34, 35, 2"
C18B_TEXT = "123, 1346, 145, 67, 13, 14, 6"
W3_TEXT = "123, 145, 246, 1356, 13, 15, 2, 4, 6"
C26_PRINTED_TEXT = "2345, 123, 134, 145, 13, 14, 23, 34, 45, 4, 5"
C26_CORRECTED_TEXT = C26_PRINTED_TEXT + ", 3"


def fs(compact: str) -> frozenset:
    """frozenset of single-digit neuron labels, fs('134') == {1,3,4}."""
    return frozenset(int(ch) for ch in compact)


@pytest.fixture(scope="session")
def c22() -> NeuralCode:
    return parse_code(C22_TEXT)


@pytest.fixture(scope="session")
def c24() -> NeuralCode:
    return parse_code(C24_TEXT)


@pytest.fixture(scope="session")
def c18a() -> NeuralCode:
    return parse_code(C18A_TEXT)


@pytest.fixture(scope="session")
def c18b() -> NeuralCode:
    return parse_code(C18B_TEXT)


@pytest.fixture(scope="session")
def w3() -> NeuralCode:
    return parse_code(W3_TEXT)


@pytest.fixture(scope="session")
def c26_printed() -> NeuralCode:
    return parse_code(C26_PRINTED_TEXT)


@pytest.fixture(scope="session")
def c26_corrected() -> NeuralCode:
    return parse_code(C26_CORRECTED_TEXT)


@pytest.fixture(scope="session")
def d28(c24) -> NeuralCode:
    # cone: a fresh neuron added to every nonempty codeword
    return NeuralCode(frozenset(w | {7} for w in c24.codewords if w) | {frozenset()})
