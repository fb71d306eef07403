"""Smoke tests for the updfa extension module."""

import updfa


def test_value_and_rep():
    assert updfa.value([], 2) == 0
    assert updfa.value([1, 0, 1], 2) == 5
    assert updfa.lsdf_rep(12, 3) == [0, 1, 1]
    assert updfa.lsdf_rep(0, 2) == []
    for n in (0, 1, 7, 100, 12345):
        assert updfa.value(updfa.lsdf_rep(n, 10), 10) == n


def test_pascal_automaton():
    p23 = updfa.build_pascal([2], 3, 2)
    assert p23.state_count == 6
    assert p23.accepts_number(2)
    assert not p23.accepts_number(3)
    assert updfa.accepted_numbers(p23, 20) == [2, 5, 8, 11, 14, 17]
    assert updfa.is_group_automaton(p23)
    assert updfa.mult_order(2, 3) == 2


def test_recognition():
    minimal = updfa.minimize(updfa.build_pascal([2], 3, 2))
    assert minimal.state_count == 3
    witness = updfa.recognize_pascal_quotient(minimal)
    assert witness is not None
    assert witness.period == 3
    assert witness.residues == [2]
    assert updfa.recognize_pascal_quotient(updfa.build_threshold(5, 2)) is None
    assert updfa.pascal_reject_reason(updfa.build_threshold(5, 2)) == "NotGroup"


def test_up_check_positive():
    automaton = updfa.build_up_automaton(updfa.UpSet(24, [0], 1), 2)
    report = updfa.is_up(automaton)
    assert report.verdict
    params = report.parameters
    assert params.period == 24
    assert params.residues == [0]
    assert params.threshold == 1
    assert "verdict=UP" in report.machine_report()


def test_up_check_negative():
    powers = updfa.Dfa(2, 0, [0, 1, 1, 2, 2, 2], [False, True, False])
    report = updfa.is_up(powers)
    assert not report.verdict
    assert report.parameters is None
    assert any("UP2" in failure for failure in report.failures)
    bits = [powers.accepts_number(n) for n in range(4096)]
    assert updfa.find_up_params(bits, 64, 512) is None


def test_builders_and_equivalence():
    assert updfa.crt_split(12, 2) == (3, 4, 2)
    tree = updfa.divisor_tree(4, 2, [1])
    assert updfa.accepted_numbers(tree, 10) == [1, 5, 9]
    d5 = updfa.build_threshold(5, 2)
    assert updfa.accepted_numbers(d5, 10) == [5, 6, 7, 8, 9]
    direct = updfa.build_psa([5], 12, 2)
    combined = updfa.product_and(updfa.build_pascal([2], 3, 2), tree)
    assert updfa.equivalent(direct, combined)


def test_text_round_trip():
    p23 = updfa.build_pascal([2], 3, 2)
    again = updfa.Dfa.from_text(p23.to_text())
    assert again == p23
    assert "digraph" in p23.to_dot()
