from bmw_e6.field import ZERO, Assignment, LSubstitution, parse, r_to_minus_inverse
from bmw_e6.linalg import rank
from bmw_e6.reducibility import (SPECIAL_VALUES, det_target,
                                 semisimplicity_values, specialization_report, t_value)
from bmw_e6.roots import INDEX, Family, label


def test_thirty_six_rank_one_conjugates(conjugates):
    assert len(conjugates) == 36
    assert all(rank(x.matrix, "generic") == 1 for x in conjugates)
    families = {}
    for x in conjugates:
        families[label(x.name).family] = families.get(label(x.name).family, 0) + 1
    assert families[Family.PLAIN] == 15 and families[Family.HAT] == 10


def test_base_conjugate_is_e1(rep, conjugates):
    assert conjugates[INDEX[label("w[1,2]")]].matrix == rep.e[1]


def test_image_of_each_conjugate_is_its_own_line(conjugates):
    for x in conjugates:
        assert list(x.u) == [INDEX[label(x.name)]]


def test_rank_one_form_matches_defining_word(rep, conjugates):
    for name in ("w[1,4]", "hw[3,5]", "t2w[4,6]", "tlw[5,6]"):
        x = conjugates[INDEX[label(name)]]
        w = x.conjugator + (("e", x.base),) + tuple(("ginv", i) for _, i in reversed(x.conjugator))
        assert rep.word_matrix(w) == x.matrix, name


def test_determinant_vanishes_at_last_factor():
    assert LSubstitution(parse("1/r^21"))(det_target()) == ZERO


def test_t_values():
    assert [t_value(parse(v)) for v in SPECIAL_VALUES] == [parse(t) for t in
                                                          ("1", "-1", "r^6", "-r^12", "r^24")]


def test_semisimplicity_values_closed_under_r_inversion():
    values = semisimplicity_values()
    special = [parse(v) for v in SPECIAL_VALUES]
    assert len(values) == 8
    assert set(map(str, values)) == {str(parse(v)) for v in (
        "r^3", "-r^3", "1/r^3", "-1/r^3", "-1/r^9", "r^9", "1/r^21", "-r^21")}
    for v in values:
        assert v in special or r_to_minus_inverse(v) in special
    assert r_to_minus_inverse(parse("1/r^21")) == parse("-r^21")


def test_numeric_point_off_locus(rep, conjugates, S):
    r = specialization_report(rep, Assignment.numeric(5, 7), conjugates, S)
    assert r.rank == 36 and r.kernel_dim == 0


def test_off_locus_symbolic_value_has_full_rank(rep, conjugates, S):
    r = specialization_report(rep, "r^5", conjugates, S)
    assert r.rank == 36 and r.kernel_dim == 0 and r.expected_kernel_dim is None
