import pytest

from forq.automaton import Buchi, MalformedAutomaton
from forq.baformat import BaParseError, load_pair, parse_ba, print_ba
from forq.engine import decide_inclusion
from forq.oracle import GenParams, generate

from conftest import EXAMPLE_A_BA, EXAMPLE_B_BA, SIGMA, example_a, example_b


def equivalent(x, y):
    return decide_inclusion(x, y).included and decide_inclusion(y, x).included


def test_grammar_example():
    p = parse_ba("[0]\na,[0]->[1]\nb,[1]->[1]\n[1]\n")
    assert p.states == ("[0]", "[1]")
    assert p.initials == ("[0]",) and p.accepting == ("[1]",)
    b = p.to_buchi()
    assert b.n_states == 2 and b.initial == 0 and b.accepting == frozenset({1})


def test_missing_sections_use_defaults():
    p = parse_ba("a,x->y\nb,y->x\n")
    assert p.initials == ("x",)
    assert p.accepting == ("x", "y")


def test_strict_mode_rejects_defaults():
    with pytest.raises(BaParseError):
        parse_ba("a,x->y\n", strict=True)
    with pytest.raises(BaParseError):
        parse_ba("x\na,x->y\n", strict=True)
    parse_ba("x\na,x->y\ny\n", strict=True)


def test_blank_lines_and_carriage_returns():
    p = parse_ba("\r\nq\r\n\r\na,q->q\r\n\nq\r\n")
    assert p.transitions == (("q", "a", "q"),)


@pytest.mark.parametrize("text, line", [
    ("a,q\n", 1),
    ("q\na,q->\n", 2),
    ("q\na,q->q\nq\nb,q->q\n", 4),
    ("a,q->q\nzz\n", 2),
    ("q\na b,q->q\n", 2),
])
def test_errors_report_line_numbers(text, line):
    with pytest.raises(BaParseError) as info:
        parse_ba(text)
    assert info.value.line == line


def test_no_transitions_is_an_error():
    with pytest.raises(BaParseError):
        parse_ba("q\n")


def test_several_initial_states_are_merged():
    b = parse_ba("x\ny\na,x->z\nb,y->z\nz\n").to_buchi()
    assert b.n_states == 4 and b.initial == 3


def test_example_files_parse_to_example_automata():
    a = parse_ba(EXAMPLE_A_BA).to_buchi(SIGMA)
    b = parse_ba(EXAMPLE_B_BA).to_buchi(SIGMA)
    assert a == example_a() and b == example_b()
    assert len(b.transitions) == 7 and b.accepting == frozenset({2})


def test_round_trip_example():
    for b in (example_a(), example_b()):
        text = print_ba(b)
        again = parse_ba(text).to_buchi(SIGMA)
        assert again == b
        assert print_ba(again) == text
        assert equivalent(again, b)


def test_output_is_sorted():
    text = print_ba(example_b())
    assert text.splitlines() == [
        "qI", "a,qI->q1", "b,qI->q1", "a,q1->q1", "a,q1->q2", "b,q1->q1", "b,q1->q2",
        "b,q2->q2", "q2"]


def test_empty_accepting_set_round_trips():
    b = Buchi(1, 0, frozenset({(0, 0, 0)}), frozenset(), SIGMA)
    again = parse_ba(print_ba(b)).to_buchi(SIGMA)
    assert equivalent(again, b)
    assert decide_inclusion(again, example_b()).included


def test_printing_without_transitions_fails():
    with pytest.raises(MalformedAutomaton):
        print_ba(Buchi(1, 0, frozenset(), frozenset({0}), SIGMA))


def test_unprintable_names_are_replaced():
    b = Buchi(2, 0, frozenset({(0, 0, 1)}), frozenset({1}), SIGMA, ("a b", "c,d"))
    assert "[0]" in print_ba(b)


def test_random_round_trips_preserve_language():
    for seed in range(40):
        b = generate(GenParams(seed % 4 + 1, 2, 1.5, 0.5, seed))
        if not b.transitions:
            continue
        again = parse_ba(print_ba(b)).to_buchi(b.alphabet)
        assert equivalent(again, b)


def test_load_pair_unions_alphabets(tmp_path):
    (tmp_path / "x.ba").write_text("p\na,p->p\np\n")
    (tmp_path / "y.ba").write_text("q\nc,q->q\nq\n")
    x, y = load_pair(tmp_path / "x.ba", tmp_path / "y.ba")
    assert x.alphabet == y.alphabet and x.alphabet.symbols == ("a", "c")
    assert not decide_inclusion(x, y).included
