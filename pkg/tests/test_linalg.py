from fractions import Fraction
import random

import pytest

from bmw_e6.field import L, ONE, R, ZERO, Assignment, parse, substitute
from bmw_e6.linalg import (DimensionError, Matrix, determinant, kernel_basis, outer, rank,
                           rank_mod)


def random_matrix(n, seed, density=0.6):
    rng = random.Random(seed)
    atoms = [ONE, L, R, 1 / R, L * R - 1, parse("l - r^2"), parse("(1 + l)/(r - 1)")]
    rows = [[rng.choice(atoms) * rng.randint(-2, 2) if rng.random() < density else ZERO
             for _ in range(n)] for _ in range(n)]
    return Matrix.from_rows(rows)


def cofactor_det(rows):
    if len(rows) == 1:
        return rows[0][0]
    total = ZERO
    for j, x in enumerate(rows[0]):
        if x:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total = total + (-1) ** j * x * cofactor_det(minor)
    return total


@pytest.mark.parametrize("seed", range(4))
def test_backends_agree_with_cofactor_expansion(seed):
    m = random_matrix(5, seed)
    want = cofactor_det(m.to_dense())
    assert determinant(m, "bareiss") == want
    assert determinant(m, "modular", seed=seed) == want


def test_singular_matrix_has_zero_determinant():
    m = Matrix.from_rows([[L, R], [L * L, L * R]])
    assert determinant(m, "bareiss") == ZERO
    assert determinant(m, "modular") == ZERO


def test_identity_and_products():
    m = random_matrix(4, 11)
    eye = Matrix.identity(4)
    assert m * eye == m and eye * m == m
    assert (m + m) == m.scale(2 * ONE)
    assert (m - m).is_zero()


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        Matrix.identity(2) * Matrix.identity(3)


def test_rank_of_outer_product():
    u = {0: ONE, 2: L}
    phi = {1: R, 3: ONE - L}
    assert rank(outer(u, phi, 4), "generic") == 1


def test_kernel_over_specialized_field():
    # [[1, r], [r, r^2]] has kernel spanned by (-r, 1)
    m = Matrix.from_rows([[ONE, R], [R, R * R]])
    assert rank(m, "specialized") == 1
    kern = kernel_basis(m, "specialized")
    assert len(kern) == 1
    v = kern[0]
    assert not m.apply(v)


def test_rational_rank_and_kernel():
    m = Matrix.from_rows([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])
    assert rank(m, "rational") == 1
    kern = kernel_basis(m, "rational")
    assert len(kern) == 1 and not m.apply(kern[0])


def test_rank_mod_matches_numeric_rank():
    m = random_matrix(5, 3)
    a = Assignment.numeric(5, 7)
    num = m.map(lambda x: substitute(x, a))
    p = 1000003
    assert rank_mod(m, p, lambda x: substitute(x, Assignment.modular(p, 5, 7))) == rank(num, "rational")
