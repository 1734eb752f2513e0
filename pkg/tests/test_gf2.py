import numpy as np
import pytest
from hypothesis import given, strategies as st

from surfmcg import gf2

rows = st.lists(st.integers(0, 2 ** 6 - 1), max_size=7)


def _rank_by_elimination(m):
    m = m.copy() % 2
    r = 0
    for c in range(m.shape[1]):
        piv = [i for i in range(r, m.shape[0]) if m[i, c]]
        if not piv:
            continue
        m[[r, piv[0]]] = m[[piv[0], r]]
        for i in range(m.shape[0]):
            if i != r and m[i, c]:
                m[i] ^= m[r]
        r += 1
    return r


def test_bits_and_support():
    assert gf2.bits([0, 3, 3, 5]) == 0b100001
    assert gf2.support(0b100101) == [0, 2, 5]


@given(rows)
def test_rank_and_nullspace(rs):
    m = gf2.to_matrix(rs, 6)
    assert gf2.rank(rs) == _rank_by_elimination(m)
    ker = gf2.nullspace(rs, 6)
    assert len(ker) == 6 - gf2.rank(rs)
    for v in ker:
        assert all(bin(r & v).count("1") % 2 == 0 for r in rs)
    assert gf2.from_matrix(m) == list(rs)


@given(rows)
def test_echelon_canonical(rs):
    e = gf2.Echelon()
    for r in rs:
        e.add(r)
    for r in rs:
        assert e.contains(r)
    assert len(e) == gf2.rank(rs)


def test_inverse():
    a = np.array([[1, 1, 0], [0, 1, 1], [0, 0, 1]], dtype=np.uint8)
    assert (gf2.matmul(a, gf2.inverse(a)) == np.eye(3)).all()
    with pytest.raises(np.linalg.LinAlgError):
        gf2.inverse(np.array([[1, 1], [1, 1]], dtype=np.uint8))
