"""Finite matrix groups acting on P^2 and on ternary forms.

Points transform as ``p -> m p`` and forms as ``f -> f(m z)`` (see
:func:`k3sym.forms.substitute`).  Groups are built under one of two equality
policies: ``"linear"`` compares raw matrices, ``"projective"`` compares the
canonical rescaling of :meth:`Mat3.canonical`.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import gcd
from typing import Iterable, Sequence

from k3sym.field import CycNum, FieldCtx, FieldError, field, root_of_unity, sqrt_minus_seven
from k3sym.forms import (
    TernaryForm,
    from_vector,
    is_proportional,
    klein_quartic,
    monomial_basis,
    monomial_exponents,
    substitute,
    to_vector,
)
from k3sym.linalg import Mat3, charpoly, nullspace, poly_eval, rref
from k3sym.points import ProjPoint

POLICIES = ("linear", "projective")
DEFAULT_BOUND = 10_000


class ClosureBoundExceeded(RuntimeError):
    pass


class NotInvariant(ValueError):
    pass


# -- generators -------------------------------------------------------------------

def h_prime(ctx: FieldCtx | None = None) -> Mat3:
    """diag(l, l^2, l^4), l a primitive 7th root of unity."""
    ctx = ctx or field()
    lam = root_of_unity(7, 1, ctx)
    return Mat3.diag(lam, lam ** 2, lam ** 4)


def tau(ctx: FieldCtx | None = None) -> Mat3:
    """[z0:z1:z2] -> [z2:z0:z1]."""
    return Mat3.permutation([2, 0, 1], ctx or field())


def gamma(ctx: FieldCtx | None = None) -> Mat3:
    """(z0, z1, z2) -> (z0, w z1, w^2 z2), w a primitive cube root of unity."""
    ctx = ctx or field()
    w = root_of_unity(3, 1, ctx)
    return Mat3.diag(1, w, w * w, ctx=ctx)


# exponent pattern rows/cols: entry (j, k) uses l^(u_j u_k) - l^(-u_j u_k)
S_INDEX = (1, 4, 2)


def s_involution(ctx: FieldCtx | None = None, index: Sequence[int] = S_INDEX) -> Mat3:
    """Extra involution completing <h', tau> to L2(7): T_jk = (l^(u_j u_k) - l^(-u_j u_k)) / sqrt(-7)."""
    ctx = ctx or field()
    lam = root_of_unity(7, 1, ctx)
    r = sqrt_minus_seven(ctx).inverse()
    return Mat3([[(lam ** (a * b) - lam ** (-a * b)) * r for b in index] for a in index])


CATALOG = {"h_prime": h_prime, "tau": tau, "gamma": gamma, "s_involution": s_involution}


def generator_catalog(name: str, ctx: FieldCtx | None = None) -> Mat3:
    try:
        return CATALOG[name](ctx)
    except KeyError:
        raise KeyError(f"unknown generator {name!r}; known: {sorted(CATALOG)}") from None


def validate_s_candidate(t: Mat3, bound: int = DEFAULT_BOUND) -> dict:
    """Oracles for an L2(7)-completing involution: T^2 scalar, Klein invariance, order 168."""
    ctx = t.ctx
    klein = klein_quartic(ctx)
    group = closure([h_prime(ctx), tau(ctx), t], "projective", bound)
    checks = {
        "square_scalar": (t @ t).is_scalar(),
        "klein_invariant": is_proportional(substitute(klein, t), klein),
        "projective_order": len(group),
    }
    checks["ok"] = checks["square_scalar"] and checks["klein_invariant"] and checks["projective_order"] == 168
    return checks


# -- groups -----------------------------------------------------------------------

@dataclass(frozen=True)
class MatGroup:
    elements: tuple[Mat3, ...]
    generators: tuple[Mat3, ...]
    policy: str = "projective"
    _index: frozenset = dc_field(default=frozenset(), repr=False, compare=False)

    def __post_init__(self):
        if self.policy not in POLICIES:
            raise ValueError(f"policy must be one of {POLICIES}")
        object.__setattr__(self, "_index", frozenset(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def key(self, m: Mat3) -> Mat3:
        return m.canonical() if self.policy == "projective" else m

    def __contains__(self, m: Mat3) -> bool:
        return self.key(m) in self._index

    @property
    def ctx(self) -> FieldCtx:
        return self.elements[0].ctx

    def non_scalar(self) -> list[Mat3]:
        return [m for m in self.elements if not m.is_scalar()]


def closure(gens: Sequence[Mat3], policy: str = "projective", bound: int = DEFAULT_BOUND) -> MatGroup:
    """Smallest multiplicatively closed set containing gens and the identity."""
    if policy not in POLICIES:
        raise ValueError(f"policy must be one of {POLICIES}")
    if not gens:
        raise ValueError("closure needs at least one generator (use the identity for the trivial group)")
    for g in gens:
        if not g.det():
            raise ValueError("generators must be invertible")
    canon = (lambda m: m.canonical()) if policy == "projective" else (lambda m: m)
    gens = [canon(g) for g in gens]
    ident = Mat3.identity(gens[0].ctx)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = canon(a @ g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
                    if len(seen) > bound:
                        raise ClosureBoundExceeded(f"closure exceeded {bound} elements")
        frontier = nxt
    return MatGroup(tuple(sorted(seen, key=Mat3.sort_key)), tuple(gens), policy)


def same_projective_group(a: Iterable[Mat3], b: Iterable[Mat3]) -> bool:
    return {m.canonical() for m in a} == {m.canonical() for m in b}


# -- orbits -----------------------------------------------------------------------

def orbit_point(g: MatGroup, pt: ProjPoint) -> list[ProjPoint]:
    return sorted({pt.transform(m) for m in g}, key=ProjPoint.sort_key)


def normalize_form(f: TernaryForm) -> TernaryForm:
    """Scalar multiple with leading coefficient 1 (projective representative)."""
    lead = next(iter(f.items()))[1]
    return f if lead == 1 else f * lead.inverse()


def orbit_form(g: MatGroup, f: TernaryForm) -> list[TernaryForm]:
    if f.is_zero():
        raise ValueError("the zero form defines no curve")
    reps: dict[TernaryForm, None] = {}
    for m in g:
        reps.setdefault(normalize_form(substitute(f, m)), None)
    return sorted(reps, key=lambda h: [(e, c.sort_key()) for e, c in h.items()])


# -- invariants -------------------------------------------------------------------

def _require_linear(g: MatGroup):
    if g.policy != "linear":
        raise ValueError("averaging needs a linear group (closure with policy='linear')")


def reynolds_project(g: MatGroup, f: TernaryForm) -> TernaryForm:
    """(1/|g|) sum of f(m z) over the group."""
    _require_linear(g)
    acc = TernaryForm.zero(f.degree, f.ctx)
    for m in g:
        acc = acc + substitute(f, m)
    return acc * (f.ctx.one / len(g))


def echelon_forms(forms: Sequence[TernaryForm], d: int) -> list[TernaryForm]:
    """Deterministic reduced echelon basis of the span (graded lex coordinates)."""
    exps = monomial_exponents(d)
    if not forms:
        return []
    red, _ = rref([to_vector(f, exps) for f in forms], len(exps))
    return [from_vector(r, d, exps) for r in red]


def reynolds_invariants(g: MatGroup, d: int, ctx: FieldCtx | None = None) -> list[TernaryForm]:
    """Echelonized basis of the degree-d invariants, by averaging monomials."""
    _require_linear(g)
    ctx = ctx or g.ctx
    averaged = [reynolds_project(g, mono) for mono in monomial_basis(d, ctx)]
    return echelon_forms([f for f in averaged if f], d)


def express_in_basis(basis: Sequence[TernaryForm], targets: Sequence[TernaryForm]) -> list[list[CycNum]] | None:
    """Coordinates of each target in the (independent) basis, or None if some target is outside the span."""
    if not basis:
        return [[] for _ in targets] if all(t.is_zero() for t in targets) else None
    d = basis[0].degree
    exps = monomial_exponents(d)
    ctx = basis[0].ctx
    k = len(basis)
    cols = [to_vector(b, exps) for b in basis] + [to_vector(t, exps) for t in targets]
    # rows = monomials, columns = basis vectors then targets
    mat = [[cols[c][r] for c in range(len(cols))] for r in range(len(exps))]
    red, pivots = rref(mat, len(cols))
    if pivots[:k] != list(range(k)) or any(p >= k for p in pivots):
        return None
    out = []
    for t in range(len(targets)):
        coords = [ctx.zero] * k
        for row, pc in zip(red, pivots):
            coords[pc] = row[k + t]
        out.append(coords)
    return out


def induced_matrix(subspace: Sequence[TernaryForm], element: Mat3) -> list[list[CycNum]]:
    """A with substitute(b_j, element) = sum_i A[i][j] b_i; raises if the span is not preserved."""
    imgs = [substitute(b, element) for b in subspace]
    coords = express_in_basis(subspace, imgs)
    if coords is None:
        raise NotInvariant("element does not preserve the span")
    k = len(subspace)
    return [[coords[j][i] for j in range(k)] for i in range(k)]


def eigenspace_split(subspace: Sequence[TernaryForm], element: Mat3, scale: CycNum | None = None) -> dict[int, list[TernaryForm]]:
    """Eigenspaces of the induced action, keyed by the exponent k of the eigenvalue scale * zeta_n^k."""
    basis = echelon_forms(subspace, subspace[0].degree) if subspace else []
    if not basis:
        return {}
    ctx = basis[0].ctx
    scale = ctx(1) if scale is None else scale
    a = induced_matrix(basis, element)
    cp = charpoly(a)
    k = len(basis)
    out: dict[int, list[TernaryForm]] = {}
    found = 0
    for e in range(ctx.n):
        c = ctx.zeta_power(e) * scale
        if poly_eval(cp, c):
            continue
        shifted = [[a[i][j] - (c if i == j else ctx.zero) for j in range(k)] for i in range(k)]
        ker = nullspace(shifted, k, ctx)
        forms = [sum((b * v for b, v in zip(basis, vec) if v), TernaryForm.zero(basis[0].degree, ctx)) for vec in ker]
        out[e] = echelon_forms(forms, basis[0].degree)
        found += len(ker)
    if found != k:
        raise FieldError("eigenvalues outside the roots of unity of the field (conductor too small)")
    return out


# -- diagonal stabilizers ---------------------------------------------------------

@dataclass(frozen=True)
class DiagSolveResult:
    kind: str  # "finite" or "positive_dimensional"
    elements: tuple[Mat3, ...] = ()

    @property
    def finite(self) -> bool:
        return self.kind == "finite"


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """(U, D, V) with U a V == D for an integer k x 2 matrix a; U, V unimodular, D diagonal with d1 | d2."""
    k = len(a)
    d = [list(r) for r in a]
    u = [[int(i == j) for j in range(k)] for i in range(k)]
    v = [[1, 0], [0, 1]]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):  # row_dst += c row_src
        d[dst] = [x + c * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for r in d:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    for t in range(min(k, 2)):
        while True:
            entries = [(abs(d[i][j]), i, j) for i in range(t, k) for j in range(t, 2) if d[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            done = True
            for i in range(t + 1, k):
                q = d[i][t] // d[t][t]
                if q:
                    add_row(i, t, -q)
                if d[i][t]:
                    done = False
            for j in range(t + 1, 2):
                q = d[t][j] // d[t][t]
                if q:
                    add_col(j, t, -q)
                if d[t][j]:
                    done = False
            if done:
                # enforce divisibility of the remaining block
                bad = [(i, j) for i in range(t + 1, k) for j in range(t + 1, 2) if d[i][j] % d[t][t]]
                if not bad:
                    break
                add_row(t, bad[0][0], 1)
        if t < k and t < 2 and d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v


def solve_torus(rows: Sequence[Sequence[int]], rhs: Sequence[int], n: int) -> tuple[str, list[tuple[int, int]]]:
    """Solutions (a1, a2) mod n of rows . a == rhs (mod n), i.e. diagonal (zeta^a1, zeta^a2).

    Returns ("positive_dimensional", []) when the integer rank is < 2 and the
    system is consistent, ("finite", solutions) otherwise.  Raises FieldError
    if complex solutions exist that are not n-th roots of unity.
    """
    if not rows:
        return "positive_dimensional", []
    u, d, v = smith_normal_form(rows)
    c = [sum(ui * b for ui, b in zip(urow, rhs)) for urow in u]
    r = sum(1 for t in range(min(len(d), 2)) if d[t][t])
    if any(c[i] % n for i in range(r, len(c))):
        return "finite", []
    if r < 2:
        return "positive_dimensional", []
    ws: list[list[int]] = []
    for t in range(2):
        dt = d[t][t]
        g = gcd(dt, n)
        if dt % n and n % dt:
            pass
        if c[t] % g:
            return "finite", []
        step = n // g
        base = (c[t] // g) * pow(dt // g, -1, step) % step if step > 1 else 0
        ws.append([(base + s * step) % n for s in range(g)])
        if g != abs(dt) and n % abs(dt):
            raise FieldError(f"stabilizer has order-{abs(dt)} entries outside mu_{n}")
    sols = set()
    for w1 in ws[0]:
        for w2 in ws[1]:
            a1 = (v[0][0] * w1 + v[0][1] * w2) % n
            a2 = (v[1][0] * w1 + v[1][1] * w2) % n
            sols.add((a1, a2))
    return "finite", sorted(sols)


def _torus_system(f: TernaryForm, g: TernaryForm):
    """Rows and right-hand sides for g(z0, s z1, t z2) proportional to f (supports must agree)."""
    support = f.support()
    ref = support[0]
    ratio0 = f.coefficient(ref) / g.coefficient(ref)
    rows, rhs = [], []
    for e in support[1:]:
        rho = f.coefficient(e) / g.coefficient(e) / ratio0
        k = rho.root_exponent()
        if k is None:
            raise FieldError("coefficient ratio is not a root of unity of the field")
        rows.append([e[1] - ref[1], e[2] - ref[2]])
        rhs.append(k)
    return rows, rhs


def _twisted_diagonals(f: TernaryForm, g: TernaryForm) -> tuple[str, list[Mat3]]:
    if set(f.support()) != set(g.support()):
        return "finite", []
    ctx = f.ctx
    rows, rhs = _torus_system(f, g)
    kind, sols = solve_torus(rows, rhs, ctx.n)
    mats = [Mat3.diag(1, ctx.zeta_power(a1), ctx.zeta_power(a2), ctx=ctx) for a1, a2 in sols]
    return kind, mats


def diag_stabilizer(f: TernaryForm) -> DiagSolveResult:
    """All diag(1, s, t) fixing the curve f = 0, by the exponent-lattice method."""
    if f.is_zero():
        raise ValueError("the zero form defines no curve")
    kind, mats = _twisted_diagonals(f, f)
    return DiagSolveResult(kind, tuple(sorted(mats, key=Mat3.sort_key)))


def diag_stabilizer_bruteforce(f: TernaryForm) -> list[Mat3]:
    """Oracle: test every diag(1, zeta^a, zeta^b) by substitution."""
    ctx = f.ctx
    out = []
    for a in range(ctx.n):
        for b in range(ctx.n):
            m = Mat3.diag(1, ctx.zeta_power(a), ctx.zeta_power(b), ctx=ctx)
            if is_proportional(substitute(f, m), f):
                out.append(m)
    return sorted(out, key=Mat3.sort_key)


PERMUTATIONS = ((0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2))


def stab_of_three_points_check(f: TernaryForm) -> DiagSolveResult:
    """Monomial matrices (coordinate permutation times diagonal) fixing the curve f = 0.

    These are exactly the projective transformations preserving the set of
    coordinate points.  Elements are returned canonically scaled.
    """
    if f.is_zero():
        raise ValueError("the zero form defines no curve")
    ctx = f.ctx
    found: set[Mat3] = set()
    for perm in PERMUTATIONS:
        pm = Mat3.permutation(perm, ctx)
        kind, diags = _twisted_diagonals(f, substitute(f, pm))
        if kind == "positive_dimensional":
            return DiagSolveResult("positive_dimensional")
        found.update((pm @ dm).canonical() for dm in diags)
    return DiagSolveResult("finite", tuple(sorted(found, key=Mat3.sort_key)))


# -- standard groups --------------------------------------------------------------

def group_h_prime(policy: str = "projective", ctx: FieldCtx | None = None) -> MatGroup:
    return closure([h_prime(ctx)], policy)


def group_h(policy: str = "projective", ctx: FieldCtx | None = None) -> MatGroup:
    return closure([h_prime(ctx), tau(ctx)], policy)


def group_gamma(policy: str = "projective", ctx: FieldCtx | None = None) -> MatGroup:
    return closure([gamma(ctx)], policy)


def group_n(policy: str = "projective", ctx: FieldCtx | None = None) -> MatGroup:
    return closure([h_prime(ctx), tau(ctx), gamma(ctx)], policy)


def group_l27(policy: str = "projective", ctx: FieldCtx | None = None, bound: int = DEFAULT_BOUND) -> MatGroup:
    return closure([h_prime(ctx), tau(ctx), s_involution(ctx)], policy, bound)


def trivial_group(ctx: FieldCtx | None = None) -> MatGroup:
    return closure([Mat3.identity(ctx or field())], "linear")
