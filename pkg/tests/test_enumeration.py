import numpy as np
import pytest

from bmw_e6.enumeration import BatchResidues, MixedZeroError, batched_inverse, batched_matmul


def test_batched_inverse_and_matmul():
    p = 1000003
    rng = np.random.default_rng(1)
    a = rng.integers(0, p, size=(3, 4, 4))
    inv = batched_inverse(a, p)
    prod = batched_matmul(a, inv, p)
    assert (prod == np.eye(4, dtype=np.int64)).all()


def test_mixed_zero_detection():
    p = 101
    x = BatchResidues(np.array([0, 3]), p)
    with pytest.raises(MixedZeroError):
        bool(x)
    assert not BatchResidues(np.array([0, 0]), p)

