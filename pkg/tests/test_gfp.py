import random

import pytest
from hypothesis import given, settings, strategies as st

from k3sym import gfp

P = 337
polys = st.lists(st.integers(0, P - 1), min_size=0, max_size=8).map(gfp.trim)


@settings(max_examples=100)
@given(polys, polys.filter(bool))
def test_divmod(a, b):
    q, r = gfp.divmod_(a, b, P)
    assert gfp.add(gfp.mul(q, b, P), r, P) == gfp.trim(a)
    assert gfp.deg(r) < gfp.deg(b)


@settings(max_examples=50)
@given(polys, polys, polys.filter(lambda p: gfp.deg(p) >= 1))
def test_gcd_divides(a, b, c):
    g = gfp.gcd(gfp.mul(a, c, P), gfp.mul(b, c, P), P)
    if a or b:
        assert not gfp.mod(gfp.monic(c, P), g, P) or gfp.deg(g) >= gfp.deg(c)
        assert not gfp.mod(gfp.mul(a, c, P), g, P)


def test_interpolate():
    f = [3, 0, 5, 1]
    xs = list(range(4))
    assert gfp.interpolate(xs, [gfp.evaluate(f, x, P) for x in xs], P) == f


def test_resultant_vanishes_iff_common_root():
    a = gfp.mul([1, 1], [2, 1], P)  # (x+1)(x+2)
    b = gfp.mul([1, 1], [5, 1], P)
    c = [7, 1]
    assert gfp.sylvester_resultant(a, b, 2, 2, P) == 0
    assert gfp.sylvester_resultant(a, c, 2, 1, P) != 0
    # Res(x - r, g) = g(r)
    g = [4, 0, 1]
    assert gfp.sylvester_resultant([P - 3, 1], g, 1, 2, P) == gfp.evaluate(g, 3, P)


def test_bivariate_resultant():
    # f = y - x, g = y^2 - 2 -> Res_y = x^2 - 2 (up to sign)
    f = [[0, P - 1], [1]]
    g = [[P - 2], [], [1]]
    r = gfp.resultant_y(f, g, P)
    assert gfp.monic(r, P) == [P - 2, 0, 1]


def test_factorization():
    rng = random.Random(1)
    q1 = [1, 0, 1]  # x^2 + 1: 337 = 1 mod 4 so it splits
    q2 = [5, 0, 1]
    f = gfp.mul(q1, q2, P)
    f = gfp.mul(f, [3, 1], P)
    parts = gfp.factor_squarefree(f, P)
    prod = [1]
    for q in parts:
        prod = gfp.mul(prod, q, P)
    assert prod == gfp.monic(f, P)
    assert all(len(gfp.distinct_degree(q, P)) == 1 for q in parts)


def test_irreducible_quadratic_stays():
    # find a non-residue r; x^2 - r is irreducible
    r = next(r for r in range(2, P) if pow(r, (P - 1) // 2, P) == P - 1)
    q = [P - r, 0, 1]
    assert gfp.factor_squarefree(q, P) == [q]
    K = gfp.ExtField(q, P)
    t = [0, 1]
    assert K.mul(t, t) == [r]
    assert K.mul(K.inv([1, 1]), [1, 1]) == [1]


def test_squarefree_part():
    f = gfp.mul(gfp.mul([1, 1], [1, 1], P), [2, 1], P)
    assert gfp.squarefree_part(f, P) == gfp.monic(gfp.mul([1, 1], [2, 1], P), P)
