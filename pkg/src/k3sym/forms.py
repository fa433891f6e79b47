"""Sparse homogeneous forms in z0, z1, z2 with cyclotomic coefficients.

Group elements act on forms on the right: ``substitute(f, m)(z) = f(m z)``,
so ``substitute(f, m1 @ m2) == substitute(substitute(f, m1), m2)``.
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping, Sequence

from k3sym.field import CycNum, FieldCtx, field, from_wire, root_of_unity, to_wire

Exp = tuple[int, int, int]


class FormError(ValueError):
    pass


def _mul_terms(a: Mapping[Exp, CycNum], b: Mapping[Exp, CycNum]) -> dict[Exp, CycNum]:
    out: dict[Exp, CycNum] = {}
    for (a0, a1, a2), x in a.items():
        for (b0, b1, b2), y in b.items():
            k = (a0 + b0, a1 + b1, a2 + b2)
            v = x * y
            if k in out:
                out[k] = out[k] + v
            else:
                out[k] = v
    return {k: v for k, v in out.items() if v}


class TernaryForm:
    """Homogeneous polynomial of fixed degree; zero coefficients are never stored."""

    __slots__ = ("degree", "_terms", "ctx", "_hash")

    def __init__(self, degree: int, terms: Mapping[Sequence[int], object] | Iterable = (), ctx: FieldCtx | None = None):
        if degree < 0:
            raise FormError("degree must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        items = list(items)
        if ctx is None:
            ctx = next((c.ctx for _, c in items if isinstance(c, CycNum)), None) or field()
        clean: dict[Exp, CycNum] = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != 3 or min(e) < 0 or sum(e) != degree:
                raise FormError(f"exponent {e} incompatible with degree {degree}")
            c = ctx(c)
            if e in clean:
                c = clean[e] + c
            clean[e] = c
        self.degree = degree
        self.ctx = ctx
        self._terms = {e: c for e, c in sorted(clean.items(), reverse=True) if c}
        self._hash = None

    # -- constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, degree: int, ctx: FieldCtx | None = None) -> "TernaryForm":
        return cls(degree, {}, ctx)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1, ctx: FieldCtx | None = None) -> "TernaryForm":
        return cls(sum(exps), {tuple(exps): coeff}, ctx)

    @classmethod
    def variable(cls, i: int, ctx: FieldCtx | None = None) -> "TernaryForm":
        e = [0, 0, 0]
        e[i] = 1
        return cls.monomial(e, 1, ctx)

    # -- inspection -------------------------------------------------------------
    @property
    def terms(self) -> Mapping[Exp, CycNum]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def support(self) -> list[Exp]:
        return list(self._terms)

    def coefficient(self, exps: Sequence[int]) -> CycNum:
        return self._terms.get(tuple(exps), self.ctx.zero)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TernaryForm)
            and self.degree == other.degree
            and self.ctx is other.ctx
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.degree, tuple(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"TernaryForm({self.degree}, {self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms.items():
            mon = "*".join(
                f"z{i}" if k == 1 else f"z{i}^{k}" for i, k in enumerate(e) if k
            )
            cs = _coeff_str(c)
            if not mon:
                parts.append(cs)
            elif cs == "1":
                parts.append(mon)
            elif cs == "-1":
                parts.append("-" + mon)
            else:
                parts.append(f"{cs}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- arithmetic -------------------------------------------------------------
    def _check(self, other: "TernaryForm"):
        if other.degree != self.degree:
            raise FormError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other: "TernaryForm") -> "TernaryForm":
        self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out[e] + c if e in out else c
        return TernaryForm(self.degree, out, self.ctx)

    def __neg__(self) -> "TernaryForm":
        return TernaryForm(self.degree, {e: -c for e, c in self._terms.items()}, self.ctx)

    def __sub__(self, other: "TernaryForm") -> "TernaryForm":
        return self + (-other)

    def __mul__(self, other) -> "TernaryForm":
        if isinstance(other, TernaryForm):
            return TernaryForm(self.degree + other.degree, _mul_terms(self._terms, other._terms), self.ctx)
        return TernaryForm(self.degree, {e: c * other for e, c in self._terms.items()}, self.ctx)

    def __rmul__(self, other) -> "TernaryForm":
        return self * other

    def __pow__(self, k: int) -> "TernaryForm":
        out = TernaryForm(0, {(0, 0, 0): 1}, self.ctx)
        for _ in range(k):
            out = out * self
        return out


def _coeff_str(c: CycNum) -> str:
    if c.is_rational():
        return str(c.to_fraction())
    parts = []
    for j, q in enumerate(c.coeffs):
        if q:
            parts.append(f"{q}" if j == 0 else (f"z{c.ctx.n}^{j}" if q == 1 else f"{q}*z{c.ctx.n}^{j}"))
    return "(" + " + ".join(parts) + ")"


# -- operations ---------------------------------------------------------------------

def evaluate(f: TernaryForm, pt) -> CycNum:
    """Value at a point given as coordinates (or a ProjPoint, at its canonical coordinates)."""
    coords = getattr(pt, "coords", pt)
    ctx = f.ctx
    z = [ctx(x) for x in coords]
    cache: dict[tuple[int, int], CycNum] = {}

    def pw(i, k):
        key = (i, k)
        if key not in cache:
            cache[key] = z[i] ** k
        return cache[key]

    acc = ctx.zero
    for e, c in f.items():
        v = c
        for i, k in enumerate(e):
            if k:
                v = v * pw(i, k)
                if not v:
                    break
        if v:
            acc = acc + v
    return acc


def partial(f: TernaryForm, var: int) -> TernaryForm:
    if var not in (0, 1, 2):
        raise FormError("variable index must be 0, 1 or 2")
    out = {}
    for e, c in f.items():
        k = e[var]
        if k:
            ne = list(e)
            ne[var] -= 1
            out[tuple(ne)] = c * k
    return TernaryForm(max(f.degree - 1, 0), out, f.ctx)


def gradient(f: TernaryForm) -> tuple[TernaryForm, TernaryForm, TernaryForm]:
    return partial(f, 0), partial(f, 1), partial(f, 2)


def hessian_matrix(f: TernaryForm) -> list[list[TernaryForm]]:
    g = gradient(f)
    return [[partial(g[i], j) for j in range(3)] for i in range(3)]


def hessian_form(f: TernaryForm) -> TernaryForm:
    """det of the matrix of second partials; degree 3(d - 2)."""
    if f.degree < 2:
        raise FormError("Hessian needs degree >= 2")
    h = hessian_matrix(f)
    minor = lambda a, b, c, d: a * d - b * c  # noqa: E731
    return (
        h[0][0] * minor(h[1][1], h[1][2], h[2][1], h[2][2])
        - h[0][1] * minor(h[1][0], h[1][2], h[2][0], h[2][2])
        + h[0][2] * minor(h[1][0], h[1][1], h[2][0], h[2][1])
    )


def substitute(f: TernaryForm, m) -> TernaryForm:
    """The form z -> f(m z)."""
    rows = [list(r) for r in m]
    ctx = f.ctx
    rows = [[ctx(x) for x in r] for r in rows]
    if all(sum(1 for x in r if x) == 1 for r in rows):
        # monomial matrix: z_i -> a_i z_{p(i)}
        img = [next((j, x) for j, x in enumerate(r) if x) for r in rows]
        out: dict[Exp, CycNum] = {}
        for e, c in f.items():
            ne = [0, 0, 0]
            v = c
            for i, k in enumerate(e):
                if k:
                    j, a = img[i]
                    ne[j] += k
                    v = v * (a ** k)
            ne = tuple(ne)
            out[ne] = out[ne] + v if ne in out else v
        return TernaryForm(f.degree, out, ctx)
    if _det3(rows).is_zero():
        raise FormError("substitution matrix is singular")
    lin = [{(1, 0, 0): r[0], (0, 1, 0): r[1], (0, 0, 1): r[2]} for r in rows]
    lin = [{k: v for k, v in t.items() if v} for t in lin]
    powers: dict[tuple[int, int], dict] = {}

    def pw(i, k):
        if k == 0:
            return {(0, 0, 0): ctx.one}
        key = (i, k)
        if key not in powers:
            powers[key] = _mul_terms(pw(i, k - 1), lin[i])
        return powers[key]

    out: dict[Exp, CycNum] = {}
    for e, c in f.items():
        t = {(0, 0, 0): c}
        for i, k in enumerate(e):
            if k:
                t = _mul_terms(t, pw(i, k))
        for k2, v in t.items():
            out[k2] = out[k2] + v if k2 in out else v
    return TernaryForm(f.degree, out, ctx)


def _det3(r) -> CycNum:
    (a, b, c), (d, e, f), (g, h, i) = r
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def is_proportional(f: TernaryForm, g: TernaryForm) -> bool:
    """f == c g for some nonzero c, tested by cross-multiplication (no inversion)."""
    if f.degree != g.degree or f.is_zero() or g.is_zero():
        return False
    if f._terms.keys() != g._terms.keys():
        return False
    e0 = next(iter(f._terms))
    f0, g0 = f._terms[e0], g._terms[e0]
    return all(fc * g0 == f0 * g._terms[e] for e, fc in f.items())


def proportional(f: TernaryForm, g: TernaryForm) -> CycNum | None:
    """The nonzero c with f == c g, or None (also None for zero forms)."""
    if not is_proportional(f, g):
        return None
    e0 = next(iter(f._terms))
    return f._terms[e0] / g._terms[e0]


def monomial_exponents(d: int) -> list[Exp]:
    """Exponent triples of degree d in graded lexicographic order, z0 > z1 > z2."""
    if d < 0:
        raise FormError("degree must be nonnegative")
    return [(a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1)]


def monomial_basis(d: int, ctx: FieldCtx | None = None) -> list[TernaryForm]:
    return [TernaryForm.monomial(e, 1, ctx) for e in monomial_exponents(d)]


def to_vector(f: TernaryForm, exps: Sequence[Exp] | None = None) -> list[CycNum]:
    exps = monomial_exponents(f.degree) if exps is None else exps
    return [f.coefficient(e) for e in exps]


def from_vector(vec: Sequence[CycNum], d: int, exps: Sequence[Exp] | None = None) -> TernaryForm:
    exps = monomial_exponents(d) if exps is None else exps
    ctx = vec[0].ctx if vec else field()
    return TernaryForm(d, {e: c for e, c in zip(exps, vec) if c}, ctx)


# -- named forms ------------------------------------------------------------------

def p1(ctx: FieldCtx | None = None) -> TernaryForm:
    """z0^2 z1^2 z2^2."""
    return TernaryForm(6, {(2, 2, 2): 1}, ctx)


def p2(ctx: FieldCtx | None = None) -> TernaryForm:
    """z0^5 z1 + z2^5 z0 + z1^5 z2."""
    return TernaryForm(6, {(5, 1, 0): 1, (1, 0, 5): 1, (0, 5, 1): 1}, ctx)


def pencil_member(alpha, beta, ctx: FieldCtx | None = None) -> TernaryForm:
    """alpha P1 + beta P2."""
    ctx = ctx or next((x.ctx for x in (alpha, beta) if isinstance(x, CycNum)), None) or field()
    if not ctx(alpha) and not ctx(beta):
        raise FormError("pencil parameter (0:0) is not a point of P^1")
    return p1(ctx) * ctx(alpha) + p2(ctx) * ctx(beta)


def klein_quartic(ctx: FieldCtx | None = None) -> TernaryForm:
    """z0 z1^3 + z1 z2^3 + z2 z0^3."""
    return TernaryForm(4, {(1, 3, 0): 1, (0, 1, 3): 1, (3, 0, 1): 1}, ctx)


def q_zeta(k: int, ctx: FieldCtx | None = None) -> TernaryForm:
    """z0^3 z2 + w z2^3 z1 + w^2 z1^3 z0 with w = zeta_3^k; k = 0 is Klein's quartic."""
    ctx = ctx or field()
    w = root_of_unity(3, k, ctx)
    return TernaryForm(4, {(3, 0, 1): 1, (0, 1, 3): w, (1, 3, 0): w * w}, ctx)


def c_sing(ctx: FieldCtx | None = None) -> TernaryForm:
    """3 P1 - P2, the seven-nodal member of the pencil."""
    return pencil_member(3, -1, ctx)


def c_zeta(k: int, ctx: FieldCtx | None = None) -> TernaryForm:
    """The member with alpha + 3 zeta_3^k beta = 0, normalised as -3 zeta_3^k P1 + P2."""
    ctx = ctx or field()
    return pencil_member(root_of_unity(3, k, ctx) * (-3), 1, ctx)


def hess_sextic(ctx: FieldCtx | None = None) -> TernaryForm:
    """P2 - 5 P1."""
    return pencil_member(-5, 1, ctx)


def tau_eigen_sextic(k: int, ctx: FieldCtx | None = None) -> TernaryForm:
    """z0^5 z1 + w z2^5 z0 + w^2 z1^5 z2 with w = zeta_3^k."""
    ctx = ctx or field()
    w = root_of_unity(3, k, ctx)
    return TernaryForm(6, {(5, 1, 0): 1, (1, 0, 5): w, (0, 5, 1): w * w}, ctx)


def fermat(d: int, ctx: FieldCtx | None = None) -> TernaryForm:
    return TernaryForm(d, {(d, 0, 0): 1, (0, d, 0): 1, (0, 0, d): 1}, ctx)


# -- curve file format ---------------------------------------------------------------

def form_to_json(f: TernaryForm, label: str | None = None) -> dict:
    doc = {
        "degree": f.degree,
        "terms": [{"exps": list(e), "coeff": to_wire(c)} for e, c in f.items()],
    }
    if label is not None:
        doc["label"] = label
    return doc


def form_from_json(doc, ctx: FieldCtx | None = None) -> TernaryForm:
    """Parse a curve document; errors name the offending term index."""
    if not isinstance(doc, dict):
        raise FormError("curve document must be a JSON object")
    d = doc.get("degree")
    if not isinstance(d, int) or isinstance(d, bool) or d < 0:
        raise FormError(f"invalid degree {d!r}")
    terms = doc.get("terms")
    if not isinstance(terms, list):
        raise FormError("'terms' must be a list")
    parsed = []
    for idx, t in enumerate(terms):
        if not isinstance(t, dict):
            raise FormError(f"term {idx}: expected an object")
        exps = t.get("exps")
        if (
            not isinstance(exps, list)
            or len(exps) != 3
            or not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in exps)
        ):
            raise FormError(f"term {idx}: 'exps' must be three nonnegative integers, got {exps!r}")
        if sum(exps) != d:
            raise FormError(f"term {idx}: exponents {exps} do not sum to degree {d}")
        try:
            c = from_wire(t.get("coeff"), ctx)
        except ValueError as exc:
            raise FormError(f"term {idx}: {exc}") from exc
        parsed.append((tuple(exps), c))
    return TernaryForm(d, parsed, ctx or field())


def dumps(f: TernaryForm, label: str | None = None) -> str:
    return json.dumps(form_to_json(f, label), indent=2)


def loads(text: str, ctx: FieldCtx | None = None) -> TernaryForm:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return form_from_json(doc, ctx)
