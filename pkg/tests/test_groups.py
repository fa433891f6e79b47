import pytest
from hypothesis import given, settings, strategies as st

from k3sym import forms as fm
from k3sym import groups as gr
from k3sym.field import FieldError, root_of_unity
from k3sym.forms import TernaryForm
from k3sym.linalg import Mat3
from k3sym.points import ProjPoint


@pytest.fixture(scope="module")
def hlin():
    return gr.group_h("linear")


@pytest.fixture(scope="module")
def hplin():
    return gr.group_h_prime("linear")


def test_generator_catalog(ctx):
    assert gr.generator_catalog("tau", ctx) == Mat3.permutation([2, 0, 1], ctx)
    assert gr.generator_catalog("h_prime", ctx).projective_order() == 7
    assert gr.generator_catalog("gamma", ctx).projective_order() == 3
    with pytest.raises(KeyError):
        gr.generator_catalog("nope")


def test_s_candidate_oracles(ctx):
    checks = gr.validate_s_candidate(gr.s_involution(ctx))
    assert checks == {"square_scalar": True, "klein_invariant": True, "projective_order": 168, "ok": True}


def test_s_wrong_index_fails(ctx):
    # a naive index choice gives a matrix that does not preserve Klein's quartic
    t = gr.s_involution(ctx, index=(1, 2, 3))
    assert not fm.is_proportional(fm.substitute(fm.klein_quartic(ctx), t), fm.klein_quartic(ctx))


@pytest.mark.parametrize("factory, proj, lin", [
    (gr.group_h_prime, 7, 7), (gr.group_h, 21, 21), (gr.group_gamma, 3, 3), (gr.group_n, 63, 189),
])
def test_group_orders(factory, proj, lin):
    assert len(factory("projective")) == proj
    assert len(factory("linear")) == lin


def test_l27_order():
    assert len(gr.group_l27("projective")) == 168


def test_closure_bound(ctx):
    with pytest.raises(gr.ClosureBoundExceeded):
        gr.closure([gr.h_prime(ctx), gr.tau(ctx)], "projective", bound=10)
    with pytest.raises(ValueError):
        gr.closure([], "projective")
    with pytest.raises(ValueError):
        gr.closure([gr.tau(ctx)], "affine")


def test_membership(ctx):
    h = gr.group_h()
    assert gr.tau(ctx).scale(root_of_unity(3, 1, ctx)) in h
    assert gr.gamma(ctx) not in h


def test_trivial_group(ctx):
    g = gr.trivial_group(ctx)
    assert len(g) == 1
    assert gr.reynolds_project(g, fm.p2(ctx)) == fm.p2(ctx)


def test_orbit_point(ctx):
    orbit = gr.orbit_point(gr.group_h_prime(), ProjPoint([1, 1, 1], ctx))
    assert len(orbit) == 7
    assert gr.orbit_point(gr.group_h(), ProjPoint([1, 0, 0], ctx)) == sorted(
        [ProjPoint(v, ctx) for v in ([1, 0, 0], [0, 1, 0], [0, 0, 1])], key=ProjPoint.sort_key)


def test_orbit_form(ctx):
    assert len(gr.orbit_form(gr.group_gamma(), fm.c_zeta(0, ctx))) == 3
    assert len(gr.orbit_form(gr.group_h(), fm.p2(ctx))) == 1
    with pytest.raises(ValueError):
        gr.orbit_form(gr.group_h(), TernaryForm.zero(2, ctx))


def test_reynolds_needs_linear(ctx):
    with pytest.raises(ValueError):
        gr.reynolds_invariants(gr.group_h(), 6)


def test_invariant_dimensions(ctx, hlin, hplin):
    assert len(gr.reynolds_invariants(hplin, 6)) == 4
    assert len(gr.reynolds_invariants(hlin, 6)) == 2
    assert len(gr.reynolds_invariants(hplin, 4)) == 3
    assert gr.reynolds_invariants(hplin, 1) == []
    assert gr.reynolds_invariants(hplin, 3) == [TernaryForm.monomial((1, 1, 1), 1, ctx)]


def test_klein_l27_invariant(ctx):
    l27 = gr.group_l27("linear")
    assert len(l27) == 336
    inv4 = gr.reynolds_invariants(l27, 4)
    assert len(inv4) == 1 and fm.is_proportional(inv4[0], fm.klein_quartic(ctx))


@settings(max_examples=20)
@given(st.sampled_from(fm.monomial_exponents(6)), st.integers(0, 83))
def test_reynolds_idempotent(e, k):
    h = gr.group_h("linear")
    f = TernaryForm.monomial(e, root_of_unity(84, k), None)
    once = gr.reynolds_project(h, f)
    assert gr.reynolds_project(h, once) == once
    for m in h.generators:
        assert fm.substitute(once, m) == once


@settings(max_examples=25)
@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 3))
def test_orbit_size_divides_order(a, b, c):
    from k3sym.field import field
    ctx = field()
    pt = ProjPoint([ctx(c), ctx(a) + ctx.zeta_power(12), ctx(b)], ctx)
    for g in (gr.group_h(), gr.group_n()):
        assert len(g) % len(gr.orbit_point(g, pt)) == 0


def test_eigenspace_split(ctx, hplin):
    v4 = gr.reynolds_invariants(hplin, 4)
    split = gr.eigenspace_split(v4, gr.tau(ctx))
    assert sorted(split) == [0, 28, 56]
    for k, forms in split.items():
        (f,) = forms
        assert fm.substitute(f, gr.tau(ctx)) == f * ctx.zeta_power(k)
        assert any(fm.is_proportional(f, fm.q_zeta(j, ctx)) for j in range(3))


def test_eigenspace_not_invariant(ctx):
    with pytest.raises(gr.NotInvariant):
        gr.eigenspace_split([TernaryForm.variable(0, ctx)], Mat3([[1, 1, 0], [0, 1, 0], [0, 0, 1]]))


def test_gamma_moves_klein(ctx):
    # gamma is not an automorphism of Klein's quartic: it permutes the Q_w
    g = fm.substitute(fm.klein_quartic(ctx), gr.gamma(ctx))
    assert not fm.is_proportional(g, fm.klein_quartic(ctx))
    assert any(fm.is_proportional(g, fm.q_zeta(k, ctx)) for k in (1, 2))


def test_smith_normal_form():
    a = [[2, 4], [6, 8], [3, 3]]
    u, d, v = gr.smith_normal_form(a)
    prod = [[sum(u[i][k] * sum(a[k][l] * v[l][j] for l in range(2)) for k in range(3)) for j in range(2)]
            for i in range(3)]
    assert prod == d
    assert d[0][1] == d[1][0] == 0 and d[1][1] % d[0][0] == 0


def test_solve_torus():
    kind, sols = gr.solve_torus([[1, 0], [0, 1]], [3, 5], 84)
    assert kind == "finite" and sols == [(3, 5)]
    kind, sols = gr.solve_torus([[2, 0], [0, 1]], [0, 0], 84)
    assert sols == [(0, 0), (42, 0)]
    assert gr.solve_torus([[1, 1]], [0], 84)[0] == "positive_dimensional"
    # inconsistent
    assert gr.solve_torus([[2, 0], [0, 1]], [1, 0], 84) == ("finite", [])
    with pytest.raises(FieldError):
        gr.solve_torus([[5, 0], [0, 1]], [0, 0], 84)


def test_diag_stabilizer(ctx):
    res = gr.diag_stabilizer(fm.hess_sextic(ctx))
    assert res.finite and len(res.elements) == 7
    assert gr.diag_stabilizer(fm.p1(ctx)).kind == "positive_dimensional"
    assert gr.same_projective_group(res.elements, gr.group_h_prime())


def test_diag_stabilizer_matches_bruteforce(ctx):
    f = fm.klein_quartic(ctx)
    assert gr.same_projective_group(gr.diag_stabilizer(f).elements, gr.diag_stabilizer_bruteforce(f))


def test_stab_three_points(ctx):
    res = gr.stab_of_three_points_check(fm.hess_sextic(ctx))
    assert len(res.elements) == 21 and gr.same_projective_group(res.elements, gr.group_h())
    assert len(gr.stab_of_three_points_check(fm.fermat(6, ctx)).elements) == 216
    assert gr.stab_of_three_points_check(fm.p1(ctx)).kind == "positive_dimensional"
