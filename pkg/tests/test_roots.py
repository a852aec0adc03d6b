from bmw_e6.roots import (E6, LABELS, Family, decoration, label, label_for_root, pairing,
                          positive_roots, root_closure, root_for_label, simple_root)


def test_thirty_six_positive_roots():
    roots = positive_roots()
    assert len(roots) == 36
    assert len(root_closure()) == 36


def test_highest_root():
    assert max(positive_roots(), key=lambda b: b.height).coeffs == (1, 2, 2, 3, 2, 1)


def test_family_counts():
    counts = {}
    for lab in LABELS:
        counts[lab.family] = counts.get(lab.family, 0) + 1
    assert counts == {Family.PLAIN: 15, Family.HAT: 10, Family.TRI: 6, Family.TRI_PLUS: 3,
                      Family.TRI_PLUS_PLUS: 1, Family.TRI_LONG: 1}


def test_decoration_matches_table():
    for lab in LABELS:
        assert decoration(root_for_label(lab)) == lab.family


def test_label_lookup():
    assert label_for_root(simple_root(2)) == label("hw[2,3]")
    assert label_for_root(simple_root(1)) == label("w[1,2]")
    assert root_for_label("tlw[5,6]").height == 11


def test_pairing_on_simple_roots():
    assert pairing(4, simple_root(4)) == 2
    assert pairing(4, simple_root(2)) == -1
    assert pairing(1, simple_root(2)) == 0
    assert E6.adjacent(2, 4) and not E6.adjacent(2, 3)
