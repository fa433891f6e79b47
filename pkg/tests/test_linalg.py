import pytest

from k3sym.field import root_of_unity
from k3sym.linalg import Mat3, SingularMatrix, charpoly, det, nullspace, poly_eval, rank, rref


def test_rref_and_rank(ctx):
    rows = [[ctx(1), ctx(2), ctx(3)], [ctx(2), ctx(4), ctx(6)], [ctx(0), ctx(1), ctx(1)]]
    red, piv = rref(rows)
    assert piv == [0, 1]
    assert rank(rows) == 2
    ker = nullspace(rows, 3, ctx)
    assert len(ker) == 1
    v = ker[0]
    assert all(sum((r[i] * v[i] for i in range(3)), ctx.zero) == 0 for r in rows)


def test_det_and_charpoly(ctx):
    w = root_of_unity(3, 1, ctx)
    m = [[ctx(2), ctx(1), ctx(0)], [ctx(0), w, ctx(1)], [ctx(1), ctx(0), ctx(3)]]
    cp = charpoly(m)
    assert cp[-1] == 1
    assert cp[0] == -det(m)  # (-1)^3 det
    assert poly_eval(cp, ctx.zero) == -det(m)


def test_mat3_basics(ctx):
    lam = root_of_unity(7, 1, ctx)
    h = Mat3.diag(lam, lam ** 2, lam ** 4)
    assert h ** 7 == Mat3.identity(ctx)
    assert h.projective_order() == 7
    assert h.inverse() @ h == Mat3.identity(ctx)
    t = Mat3.permutation([2, 0, 1], ctx)
    assert t.apply([ctx(1), ctx(2), ctx(3)]) == (ctx(3), ctx(1), ctx(2))
    assert t.is_monomial() and not t.is_diagonal()
    assert h.scale(lam).canonical() == h.canonical()
    with pytest.raises(SingularMatrix):
        Mat3([[1, 0, 0], [0, 0, 0], [0, 0, 1]]).inverse()


def test_adjugate_identity(ctx):
    m = Mat3([[1, 2, 0], [0, 1, 3], [4, 0, 1]])
    adj = m.adjugate()
    assert m @ adj == Mat3.identity(ctx).scale(m.det())
