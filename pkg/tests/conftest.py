import pytest

from forq.automaton import Alphabet, Buchi

SIGMA = Alphabet(("a", "b"))

EXAMPLE_A_BA = "pI\na,pI->pI\nb,pI->pI\npI\n"
EXAMPLE_B_BA = ("qI\na,qI->q1\nb,qI->q1\na,q1->q1\nb,q1->q1\n"
             "a,q1->q2\nb,q1->q2\nb,q2->q2\nq2\n")

QI, Q1, Q2 = 0, 1, 2


def example_a() -> Buchi:
    return Buchi(1, 0, frozenset({(0, 0, 0), (0, 1, 0)}), frozenset({0}), SIGMA, ("pI",))


def example_b() -> Buchi:
    trans = {(QI, 0, Q1), (QI, 1, Q1), (Q1, 0, Q1), (Q1, 1, Q1), (Q1, 0, Q2), (Q1, 1, Q2), (Q2, 1, Q2)}
    return Buchi(3, QI, frozenset(trans), frozenset({Q2}), SIGMA, ("qI", "q1", "q2"))


def w(text: str):
    """Word over {a, b} from a string like ``"aab"``."""
    return SIGMA.encode(list(text))


@pytest.fixture
def A():
    return example_a()


@pytest.fixture
def B():
    return example_b()


@pytest.fixture
def example_files(tmp_path):
    a = tmp_path / "A.ba"
    b = tmp_path / "B.ba"
    a.write_text(EXAMPLE_A_BA)
    b.write_text(EXAMPLE_B_BA)
    return a, b


# -- acceptance report -----------------------------------------------------------

ACCEPTANCE: dict[int, str] = {}


def report(criterion: int, ok: bool, detail: str) -> None:
    line = f"criterion {criterion:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[criterion] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[key])
