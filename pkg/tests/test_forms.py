import json

import pytest
from hypothesis import given, settings

from k3sym import forms as fm
from k3sym.field import root_of_unity
from k3sym.forms import FormError, TernaryForm
from k3sym.linalg import Mat3

from strategies import CTX, forms, small_matrices


def test_construction_and_printing(ctx):
    f = TernaryForm(2, {(1, 1, 0): 1, (0, 0, 2): -2}, ctx)
    assert str(f) == "z0*z1 - 2*z2^2"
    assert f.coefficient((1, 1, 0)) == 1
    assert f.coefficient((2, 0, 0)) == 0
    with pytest.raises(FormError):
        TernaryForm(2, {(1, 0, 0): 1}, ctx)


def test_zero_terms_dropped(ctx):
    f = TernaryForm(1, {(1, 0, 0): 0, (0, 1, 0): 1}, ctx)
    assert f.support() == [(0, 1, 0)]
    assert (f - f).is_zero()


def test_partials_klein(ctx):
    k = fm.klein_quartic(ctx)
    grad = fm.gradient(k)
    pt = [ctx(1), ctx(0), ctx(0)]
    assert [fm.evaluate(g, pt) for g in grad] == [0, 0, 1]


def test_hessian_klein(ctx):
    c = fm.proportional(fm.hessian_form(fm.klein_quartic(ctx)), fm.hess_sextic(ctx))
    assert c == -54


def test_hessian_degree_error(ctx):
    with pytest.raises(FormError):
        fm.hessian_form(fm.TernaryForm.variable(0, ctx))


def test_proportional(ctx):
    f = fm.p2(ctx)
    w = root_of_unity(3, 1, ctx)
    assert fm.proportional(f * w, f) == w
    assert fm.proportional(f, fm.p1(ctx)) is None
    assert not fm.is_proportional(f, TernaryForm.zero(6, ctx))


def test_substitute_monomial_and_dense_agree(ctx):
    f = fm.klein_quartic(ctx)
    t = Mat3.permutation([2, 0, 1], ctx)
    dense = Mat3([[0, 0, 1], [1, 0, 0], [0, 1, 1]])
    assert fm.substitute(f, t) == f
    g = fm.substitute(f, dense)
    # z -> dense z evaluated directly
    pt = [ctx(2), ctx(-1), ctx(3)]
    assert fm.evaluate(g, pt) == fm.evaluate(f, dense.apply(pt))


def test_pencil(ctx):
    assert fm.pencil_member(1, 0, ctx) == fm.p1(ctx)
    with pytest.raises(FormError):
        fm.pencil_member(0, 0, ctx)
    assert fm.c_sing(ctx) == fm.p1(ctx) * 3 - fm.p2(ctx)
    assert fm.q_zeta(0, ctx) == fm.klein_quartic(ctx)


def test_monomial_basis():
    assert len(fm.monomial_exponents(6)) == 28
    assert fm.monomial_exponents(1) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_vector_roundtrip(ctx):
    f = fm.hess_sextic(ctx)
    assert fm.from_vector(fm.to_vector(f), 6) == f


def test_json_roundtrip(ctx):
    f = fm.tau_eigen_sextic(1, ctx)
    g = fm.loads(fm.dumps(f, "eigen"))
    assert g == f and fm.proportional(g, f) == 1


@pytest.mark.parametrize("doc, where", [
    ({"degree": 2, "terms": [{"exps": [2, 0, 0], "coeff": [[0, "1"]]}, {"exps": [1, 1], "coeff": [[0, "1"]]}]}, "term 1"),
    ({"degree": 2, "terms": [{"exps": [2, 0, 1], "coeff": [[0, "1"]]}]}, "term 0"),
    ({"degree": 2, "terms": [{"exps": [2, 0, 0], "coeff": [[0]]}]}, "term 0"),
    ({"terms": []}, "degree"),
])
def test_json_errors(doc, where):
    with pytest.raises(FormError, match=where):
        fm.form_from_json(doc)


def test_loads_bad_json():
    with pytest.raises(FormError, match="line"):
        fm.loads("{\n  oops")


@settings(max_examples=100)
@given(forms())
def test_euler_identity(f):
    lhs = TernaryForm.zero(f.degree, CTX)
    for i, g in enumerate(fm.gradient(f)):
        lhs = lhs + g * TernaryForm.variable(i, CTX)
    assert lhs == f * f.degree


@settings(max_examples=50)
@given(forms(max_terms=3), small_matrices, small_matrices)
def test_substitution_action_law(f, a, b):
    # f(a b z) computed two ways: right action
    assert fm.substitute(fm.substitute(f, a), b) == fm.substitute(f, a @ b)
