from bmw_e6.field import DELTA, L, R, ZERO
from bmw_e6.linalg import Matrix
from bmw_e6.presentation import (MatrixFamily, cubic_check, load_presentation,
                                 presentation_to_json, relation_instances,
                                 verify_representation, word, word_text)


def scalar_family(g, e):
    return MatrixFamily({i: Matrix.diagonal([g]) for i in range(1, 7)},
                        {i: Matrix.diagonal([e]) for i in range(1, 7)})


def test_instance_counts():
    counts = {}
    for inst in relation_instances():
        counts[inst.kind] = counts.get(inst.kind, 0) + 1
    assert counts == {"A1": 10, "A2": 5, "P": 6, "DL1": 6, "DL2": 10, "I": 6, "MA": 20,
                      "R": 10, "EE": 10}


def test_word_round_trip():
    w = word("g1 g2^-1 e3")
    assert w == (("g", 1), ("ginv", 2), ("e", 3))
    assert word(word_text(w)) == w


def test_one_dimensional_character_passes():
    # g_i -> r, e_i -> 0 is a representation
    report = verify_representation(scalar_family(R, ZERO))
    assert report.passed
    assert cubic_check(scalar_family(R, ZERO), 1)


def test_violations_are_reported_with_location():
    # g_i -> 1/l, e_i -> delta satisfies (P) and (DL1) but not (DL2)
    report = verify_representation(scalar_family(1 / L, DELTA))
    failed = {r.instance.kind for r in report.failures()}
    assert "DL2" in failed and "EE" in failed
    assert "P" not in failed and "DL1" not in failed
    bad = report.failures()[0]
    assert bad.row == 0 and bad.col == 0 and bad.left_value != bad.right_value


def test_presentation_json_round_trip():
    text = presentation_to_json()
    assert load_presentation(text) == relation_instances()
