import pytest

from latforge.order import as_lattice, boolean_square, chain, diamond, from_covers, pentagon
from latforge.rigid_family import default_catalog
from latforge.symmetry import cyclic, klein_four, symmetric3, trivial


def bounds_plus_antichain():
    return from_covers(["0", "p", "q", "1"], [("0", "p"), ("0", "q"), ("p", "1"), ("q", "1")])


def n_shape():
    # 0 < a, b;  a, b < c;  b < d;  c, d < 1
    return from_covers(
        ["0", "a", "b", "c", "d", "1"],
        [("0", "a"), ("0", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "1"), ("d", "1")],
    )


POSETS = {
    "2-chain": lambda: chain(2),
    "3-chain": lambda: chain(3),
    "4-chain": lambda: chain(4),
    "B2-order": boolean_square,
    "bounds-plus-2-antichain": bounds_plus_antichain,
}

GROUPS = {
    "trivial": trivial,
    "Z2": lambda: cyclic(2),
    "Z3": lambda: cyclic(3),
    "V4": klein_four,
    "S3": symmetric3,
}


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()


@pytest.fixture
def B2():
    return as_lattice(boolean_square())


@pytest.fixture
def M3():
    return as_lattice(diamond(3))


@pytest.fixture
def N5():
    return as_lattice(pentagon())


# one line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE: dict[int, str] = {}


def record(criterion: int, ok: bool, detail: str, seconds: float) -> None:
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} ({seconds:.1f}s) {detail}"
    ACCEPTANCE[criterion] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
