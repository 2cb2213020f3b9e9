import pytest

from yvroots.exactpoly import IntPoly
from yvroots.yvgen import YVCache, generate

# Reference values for Q_2..Q_8, transcribed by hand: {n: {exponent: coefficient}}
KNOWN_Q = {
    2: {0: 4, 3: 1},
    3: {0: -80, 3: 20, 6: 1},
    4: {1: 11200, 7: 60, 10: 1},
    5: {0: -6272000, 3: -3136000, 6: 78400, 9: 2800, 12: 140, 15: 1},
    6: {0: -38635520000, 3: 19317760000, 6: 1448832000, 9: -17248000,
        12: 627200, 15: 18480, 18: 280, 21: 1},
    7: {1: -3093932441600000, 7: -49723914240000, 10: -828731904000,
        13: 13039488000, 16: 62092800, 19: 5174400, 22: 75600, 25: 504, 28: 1},
    8: {0: -991048439693312000000, 3: -743286329769984000000,
        6: 37164316488499200000, 9: 1769729356595200000,
        12: 126696533483520000, 15: 407736096768000, 18: -6629855232000,
        21: 124309785600, 24: 2018016000, 27: 32771200, 30: 240240,
        33: 840, 36: 1},
}


def known_poly(n):
    terms = KNOWN_Q[n]
    coeffs = [0] * (max(terms) + 1)
    for e, c in terms.items():
        coeffs[e] = c
    return IntPoly(coeffs)


@pytest.fixture(scope="session")
def cache():
    c = YVCache()
    generate(26, c)
    return c


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key:>2}: {text}")
