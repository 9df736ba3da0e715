from itertools import product

import pytest

from flagres.parser import parse_poly
from flagres.ring import VarTable
from flagres.symfun import Partition, e_k, h_k, is_symmetric, partitions_in_box, schur


def table(r):
    return VarTable.build(torus=[f"x{i}" for i in range(1, r + 1)], residue=["u1", "u2"])


def xs(r):
    t = table(r)
    return t, t.vars([f"x{i}" for i in range(1, r + 1)])


def ssyt_schur(lam, r):
    """Sum of x^T over semistandard tableaux of shape lam with entries 1..r."""
    t, x = xs(r)
    cells = [(i, j) for i, row in enumerate(lam) for j in range(row)]
    total = t.zero()
    for filling in product(range(r), repeat=len(cells)):
        f = dict(zip(cells, filling))
        rows_ok = all(f[(i, j)] <= f[(i, j + 1)] for (i, j) in cells if (i, j + 1) in f)
        cols_ok = all(f[(i, j)] < f[(i + 1, j)] for (i, j) in cells if (i + 1, j) in f)
        if rows_ok and cols_ok:
            term = t.one()
            for v in filling:
                term = term * x[v]
            total = total + term
    return total


def test_h_examples():
    t, x = xs(3)
    assert h_k(2, x[:2]) == parse_poly("x1^2 + x1*x2 + x2^2", t)
    assert h_k(0, x) == 1
    assert h_k(-3, x[:1]) == 0
    inv = [v.inverse_monomial() for v in x[:2]]
    assert h_k(1, inv) == parse_poly("x1^-1 + x2^-1", t)


def test_e_examples():
    t = table(1)
    u = t.vars(["u1", "u2"])
    assert e_k(1, u) == parse_poly("u1 + u2", t)
    assert e_k(2, u) == parse_poly("u1*u2", t)
    assert e_k(3, u) == 0
    assert e_k(-1, u) == 0
    assert e_k(0, u) == 1


def test_schur_examples():
    t, x = xs(2)
    assert schur((1,), x) == parse_poly("x1 + x2", t)
    assert schur((1, 1), x) == parse_poly("x1*x2", t)
    assert schur((2, 1), x) == parse_poly("x1^2*x2 + x1*x2^2", t)
    assert str(schur((2, 1), x)) == "x1^2*x2 + x1*x2^2"


@pytest.mark.parametrize("r", [1, 2, 3])
def test_schur_matches_tableaux(r):
    _, x = xs(r)
    for lam in partitions_in_box(r, 3):
        s = schur(lam, x)
        assert s == ssyt_schur(lam, r), lam
        assert is_symmetric(s, [f"x{i}" for i in range(1, r + 1)])


def test_schur_special_shapes():
    _, x = xs(3)
    assert schur((), x) == 1
    for k in range(5):
        assert schur((k,), x) == h_k(k, x)
    for k in range(4):
        assert schur((1,) * k, x) == e_k(k, x)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_newton_identity(r):
    _, x = xs(r)
    for k in range(1, 2 * r + 1):
        total = sum(((-1) ** i * e_k(i, x) * h_k(k - i, x) for i in range(k + 1)), x[0].table.zero())
        assert total == 0, k


def test_is_symmetric_examples():
    t, _ = xs(2)
    names = ["x1", "x2"]
    assert is_symmetric(parse_poly("x1 + x2", t), names)
    assert not is_symmetric(parse_poly("x1 - x2", t), names)
    assert is_symmetric(parse_poly("x1^-1*x2^-1", t), names)


def test_partition():
    assert Partition.parse("2,1,0") == (2, 1, 0)
    assert str(Partition((2, 1, 0))) == "2,1,0"
    assert Partition((3, 1)).padded(4) == (3, 1, 0, 0)
    assert Partition((3, 2, 2)).conjugate() == (3, 3, 1)
    assert Partition((2, 0)).size == 2
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((1, -1))
    with pytest.raises(ValueError):
        Partition((1, 1, 1)).padded(2)
    with pytest.raises(ValueError):
        Partition.parse("2,x")
    assert len(partitions_in_box(3, 3)) == 20
