import pytest
from hypothesis import given, strategies as st

from strdist import ResourceBounds, Transition, TuringMachine, Verdict, accepts_ntm_bounded, run_dtm_bounded, validate_machine
from strdist.errors import NondeterministicMachine
from strdist.harness import all_inputs, fixture_names, load_fixture
from strdist.symbols import BLANK, base
from strdist.turing import run_ntm_bounded

from helpers import w

q0, qf, q1 = base("q0"), base("qf"), base("q1")
A, B_ = base("a"), base("b")


def machine(delta, accept=(qf,), deterministic=True, bounds=ResourceBounds(2, (1,), (1, 1)), states=(q0, q1, qf)):
    return TuringMachine(states, (BLANK, A, B_), BLANK, (A, B_), tuple(delta), q0, frozenset(accept), bounds, deterministic)


ONE_STEP = machine([Transition(q0, A, qf, A, "R")])


def test_dtm_examples():
    assert run_dtm_bounded(ONE_STEP, w("a")) is Verdict.ACCEPT
    assert run_dtm_bounded(ONE_STEP, w("b")) is Verdict.REJECT
    loop = machine([Transition(q0, A, q1, A, "R"), Transition(q1, BLANK, q0, BLANK, "L")])
    assert run_dtm_bounded(loop, w("a")) is Verdict.TIME_EXCEEDED


def test_accept_on_entry():
    m = machine([], accept=(q0,))
    assert run_dtm_bounded(m, w("ab")) is Verdict.ACCEPT


def test_space_exceeded():
    walker = machine([Transition(q0, BLANK, q0, BLANK, "L"), Transition(q0, A, q0, A, "L")], bounds=ResourceBounds(2, (1,), (5,)))
    assert run_dtm_bounded(walker, w("a")) is Verdict.SPACE_EXCEEDED


def test_dtm_refuses_nondeterminism():
    m = machine([Transition(q0, A, qf, A, "R"), Transition(q0, A, q1, A, "R")], deterministic=False)
    with pytest.raises(NondeterministicMachine):
        run_dtm_bounded(m, w("a"))


def test_ntm_examples():
    guess = load_fixture("guess")
    assert accepts_ntm_bounded(guess, w("aa"))
    assert accepts_ntm_bounded(guess, w("ab"))
    assert not accepts_ntm_bounded(guess, w("ba"))
    assert accepts_ntm_bounded(ONE_STEP, w("a"))
    never = machine([Transition(q0, A, q1, A, "R")])
    assert not accepts_ntm_bounded(never, w("a"))


def test_ntm_time_exceeded():
    walker = machine([Transition(q0, A, q0, A, "R"), Transition(q0, BLANK, q0, BLANK, "R")], bounds=ResourceBounds(2, (2,), (1,)))
    assert run_ntm_bounded(walker, w("a")) is Verdict.TIME_EXCEEDED


def test_ntm_cycle_is_rejection():
    # the configuration graph is finite here, so exhausting it proves no branch accepts
    loop = machine([Transition(q0, A, q0, A, "R"), Transition(q0, BLANK, q0, BLANK, "L")], bounds=ResourceBounds(2, (2,), (1,)))
    assert run_ntm_bounded(loop, w("a")) is Verdict.REJECT


def test_validate_machine():
    assert validate_machine(ONE_STEP) == []
    bad_write = machine([Transition(q0, A, qf, base("z"), "R")])
    assert [v.kind for v in validate_machine(bad_write)] == ["AlphabetViolation"]
    bad_accept = machine([], accept=(base("zz"),))
    assert [v.kind for v in validate_machine(bad_accept)] == ["StateSetViolation"]
    lying = machine([Transition(q0, A, qf, A, "R"), Transition(q0, A, q1, A, "R")], deterministic=True)
    assert [v.kind for v in validate_machine(lying)] == ["DeterminismViolation"]
    overlap = TuringMachine((q0, A), (BLANK, A), BLANK, (A,), (), q0, frozenset())
    assert [v.kind for v in validate_machine(overlap)] == ["SymbolSetViolation"]


def test_fixtures_are_valid():
    for name in fixture_names():
        assert validate_machine(load_fixture(name)) == []


@pytest.mark.parametrize("name", ["accept_all", "even_a", "palindrome"])
def test_fixtures_stay_in_space(name):
    m = load_fixture(name)
    for x in all_inputs(m.input_alphabet, 4):
        assert run_dtm_bounded(m, x) in (Verdict.ACCEPT, Verdict.REJECT)


def test_fixture_languages():
    even = load_fixture("even_a")
    pal = load_fixture("palindrome")
    for x in all_inputs(even.input_alphabet, 4):
        assert (run_dtm_bounded(even, x) is Verdict.ACCEPT) == (x.count(A) % 2 == 0)
        assert (run_dtm_bounded(pal, x) is Verdict.ACCEPT) == (x == x[::-1])


def test_dtm_agrees_with_ntm_search():
    for name in ["accept_all", "even_a", "palindrome"]:
        m = load_fixture(name)
        for x in all_inputs(m.input_alphabet, 3):
            if run_dtm_bounded(m, x) is Verdict.ACCEPT:
                assert accepts_ntm_bounded(m, x, ResourceBounds(2, (6,), (1,)))


@given(st.integers(0, 3), st.integers(0, 2), st.integers(0, 2), st.sampled_from(["even_a", "palindrome", "guess"]), st.data())
def test_acceptance_monotone_in_bounds(dc, dp, dq, name, data):
    m = load_fixture(name)
    x = tuple(data.draw(st.lists(st.sampled_from(m.input_alphabet), max_size=3)))
    b = m.bounds
    bigger = ResourceBounds(b.c + dc, tuple(v + dp for v in b.p), tuple(v + dq for v in b.q))
    if m.is_deterministic():
        if run_dtm_bounded(m, x, b) is Verdict.ACCEPT:
            assert run_dtm_bounded(m, x, bigger) is Verdict.ACCEPT
    if accepts_ntm_bounded(m, x, b):
        assert accepts_ntm_bounded(m, x, bigger)


def test_resource_bounds():
    b = ResourceBounds(3, (1, 2), (0, 0, 1))
    assert b.space(2) == 5 and b.time_exponent(2) == 4 and b.dtm_steps(2) == 81 and b.ntm_steps(2) == 32
    with pytest.raises(ValueError):
        ResourceBounds(1, (1,), (1,))
