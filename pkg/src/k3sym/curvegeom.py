"""Fixed loci, singular points of plane curves, and classical position tests."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from k3sym import gfp
from k3sym.field import BadPrime, FieldError, PrimeEmbedding, reduce_mod_prime
from k3sym.forms import TernaryForm, evaluate, gradient, hessian_matrix, is_proportional, partial, substitute
from k3sym.groups import MatGroup
from k3sym.linalg import Mat3, charpoly, det, nullspace, poly_eval, rank
from k3sym.points import ProjPoint

SMOOTH = "smooth_certified"
SINGULAR = "singular_mod_p"
BAD_PRIME = "bad_prime"


# -- fixed points ---------------------------------------------------------------------

@dataclass(frozen=True)
class FixedLocus:
    """Isolated fixed points plus bases of any higher-dimensional eigenspaces (fixed lines)."""

    points: frozenset
    higher: tuple = ()

    @property
    def isolated(self) -> bool:
        return not self.higher

    def __iter__(self):
        return iter(sorted(self.points, key=ProjPoint.sort_key))

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, pt) -> bool:
        return pt in self.points

    def __eq__(self, other) -> bool:
        if isinstance(other, FixedLocus):
            return self.points == other.points and self.higher == other.higher
        if isinstance(other, (set, frozenset)):
            return self.isolated and self.points == other
        return NotImplemented

    __hash__ = None


def fixed_points(m: Mat3) -> FixedLocus:
    """Projective fixed points of m, from eigenvectors for eigenvalues in mu_n."""
    ctx = m.ctx
    if m.is_scalar():
        raise ValueError("a scalar matrix fixes every point")
    if m.projective_order(ctx.n) is None:
        raise ValueError(f"matrix has no finite projective order <= {ctx.n}")
    cp = charpoly([list(r) for r in m.rows])
    points, higher, found = set(), [], 0
    for e in range(ctx.n):
        c = ctx.zeta_power(e)
        if poly_eval(cp, c):
            continue
        shifted = [[m[i][j] - (c if i == j else ctx.zero) for j in range(3)] for i in range(3)]
        ker = nullspace(shifted, 3, ctx)
        found += len(ker)
        if len(ker) == 1:
            points.add(ProjPoint(ker[0], ctx))
        else:
            higher.append(tuple(ProjPoint(v, ctx) for v in ker))
    if found != 3:
        # finite order forces diagonalizability, so a rescaled matrix may still work
        canon = m.canonical()
        if canon != m:
            return fixed_points(canon)
        raise FieldError("eigenvalue outside the roots of unity of the field (conductor too small)")
    return FixedLocus(frozenset(points), tuple(higher))


# -- singularities at a point -----------------------------------------------------------

@dataclass(frozen=True)
class SingularityReport:
    point: ProjPoint
    is_singular: bool
    node: bool | None = None

    def __post_init__(self):
        if self.node is not None and not self.is_singular:
            raise ValueError("node flag only applies to singular points")


def is_singular_at(f: TernaryForm, pt: ProjPoint) -> SingularityReport:
    """Singular iff the gradient vanishes; node iff the second-derivative matrix has rank 2."""
    if f.is_zero():
        raise ValueError("the zero form defines no curve")
    if any(evaluate(g, pt) for g in gradient(f)):
        return SingularityReport(pt, False)
    if f.degree < 2:
        return SingularityReport(pt, True, False)
    h = [[evaluate(e, pt) for e in row] for row in hessian_matrix(f)]
    return SingularityReport(pt, True, rank(h) == 2)


# -- candidate singular locus --------------------------------------------------------

@dataclass(frozen=True)
class CandidateLocus:
    """Singular points among the fixed points of non-trivial group elements.

    ``sound`` says whether these provably exhaust the singular locus: that
    needs f irreducible (asserted by the caller, with the justification kept in
    ``irreducibility``), isolated fixed loci, and the free-orbit size exceeding
    the arithmetic genus.
    """

    points: frozenset
    candidates: int
    group_order: int
    genus_bound: int
    orbit_condition: bool
    isolated: bool
    irreducibility: str | None
    sound: bool
    reports: tuple = dc_field(default=(), repr=False)

    def __iter__(self):
        return iter(sorted(self.points, key=ProjPoint.sort_key))

    def __len__(self) -> int:
        return len(self.points)


def check_invariant(f: TernaryForm, g: MatGroup) -> None:
    for m in g.generators:
        if not is_proportional(substitute(f, m), f):
            raise ValueError("form is not invariant under the group")


def candidate_singular_locus(f: TernaryForm, g: MatGroup, irreducibility: str | None = None) -> CandidateLocus:
    if f.is_zero():
        raise ValueError("the zero form defines no curve")
    check_invariant(f, g)
    cands: set[ProjPoint] = set()
    isolated = True
    seen = set()
    for m in g.non_scalar():
        key = m.canonical()
        if key in seen:
            continue
        seen.add(key)
        loc = fixed_points(m)
        cands |= loc.points
        isolated = isolated and loc.isolated
    reports = tuple(is_singular_at(f, p) for p in sorted(cands, key=ProjPoint.sort_key))
    sing = frozenset(r.point for r in reports if r.is_singular)
    order = len({m.canonical() for m in g})
    bound = (f.degree - 1) * (f.degree - 2) // 2
    orbit_ok = order > bound
    sound = bool(irreducibility) and isolated and orbit_ok
    return CandidateLocus(sing, len(cands), order, bound, orbit_ok, isolated, irreducibility, sound, reports)


# -- smoothness by reduction mod p --------------------------------------------------------

@dataclass(frozen=True)
class SmoothnessCertificate:
    prime: int
    verdict: str
    detail: str = ""

    @property
    def smooth(self) -> bool:
        return self.verdict == SMOOTH


def reduce_form(f: TernaryForm, emb: PrimeEmbedding) -> dict:
    """{exps: coefficient mod p}, zero coefficients dropped."""
    out = {}
    for e, c in f.items():
        v = reduce_mod_prime(c, emb)
        if v:
            out[e] = v
    return out


def _affine(red: dict, p: int) -> gfp.BiPoly:
    """Dehomogenize at z2 = 1: polynomial in y = z1 with coefficients in F_p[x], x = z0."""
    if not red:
        return []
    dy = max(e[1] for e in red)
    out = [[] for _ in range(dy + 1)]
    for (i, j, _k), c in red.items():
        col = out[j] + [0] * max(0, i + 1 - len(out[j]))
        col[i] = (col[i] + c) % p
        out[j] = col
    return gfp.bi_trim(out)


def _combine(polys: Sequence[dict], weights: Sequence[int], p: int) -> dict:
    out: dict = {}
    for poly, w in zip(polys, weights):
        for e, c in poly.items():
            out[e] = (out.get(e, 0) + w * c) % p
    return {e: c for e, c in out.items() if c}


def _eval_red(red: dict, pt, p: int) -> int:
    acc = 0
    for (i, j, k), c in red.items():
        acc += c * pow(pt[0], i, p) * pow(pt[1], j, p) * pow(pt[2], k, p)
    return acc % p


def smooth_mod_p(f: TernaryForm, emb: PrimeEmbedding, seed: int = 0, tries: int = 4) -> SmoothnessCertificate:
    """Decide whether the reduction of f mod p is smooth over the algebraic closure of F_p.

    Works chartwise: on the line z2 = 0 by univariate gcds, on z2 = 1 by
    eliminating z1 with resultants of generic combinations of the partials, then
    testing each irreducible factor of the eliminant for a common root of all
    three partials over the corresponding extension field.
    """
    p = emb.p
    d = f.degree
    if d < 1:
        return SmoothnessCertificate(p, BAD_PRIME, "constant form")
    if p <= d or p <= (d - 1) ** 2 * 2:
        return SmoothnessCertificate(p, BAD_PRIME, "characteristic too small for the degree")
    try:
        red = reduce_form(f, emb)
        parts = [reduce_form(partial(f, i), emb) for i in range(3)]
    except BadPrime as exc:
        return SmoothnessCertificate(p, BAD_PRIME, str(exc))
    if not red:
        return SmoothnessCertificate(p, BAD_PRIME, "form vanishes mod p")
    if any(not q for q in parts):
        # f is a cone over a point: singular there
        return SmoothnessCertificate(p, SINGULAR, "a partial derivative vanishes identically")

    # line at infinity z2 = 0: the point [1:0:0], then [x:1:0]
    if all(_eval_red(q, (1, 0, 0), p) == 0 for q in parts):
        return SmoothnessCertificate(p, SINGULAR, "singular at [1:0:0]")
    g = None
    for q in parts:
        uni = [0] * d
        for (i, j, k), c in q.items():
            if k == 0:
                uni[i] = (uni[i] + c) % p
        uni = gfp.trim(uni)
        g = uni if g is None else gfp.gcd(g, uni, p)
    if g is not None and (not g or gfp.deg(g) > 0):
        return SmoothnessCertificate(p, SINGULAR, "singular point on the line z2 = 0")

    # affine chart z2 = 1
    a, b, c = (_affine(q, p) for q in parts)
    rng = random.Random(seed)
    elim = None
    for _ in range(tries):
        w = [[rng.randrange(1, p) for _ in range(3)] for _ in range(3)]
        combos = [_affine(_combine(parts, wi, p), p) for wi in w]
        r1 = gfp.resultant_y(combos[0], combos[1], p)
        r2 = gfp.resultant_y(combos[0], combos[2], p)
        if r1 and r2:
            elim = gfp.gcd(r1, r2, p)
            break
    if elim is None:
        # generic members of the net of partials share a component: the
        # singular locus is one-dimensional (non-reduced curve)
        return SmoothnessCertificate(p, SINGULAR, "partials share a common component")
    if gfp.deg(elim) == 0:
        return SmoothnessCertificate(p, SMOOTH, "eliminant is constant")
    for q in gfp.factor_squarefree(gfp.squarefree_part(elim, p), p, seed):
        K = gfp.ExtField(q, p)
        h = K.poly_gcd(K.poly_gcd(gfp.bi_specialize(a, K), gfp.bi_specialize(b, K)), gfp.bi_specialize(c, K))
        if not h or len(h) > 1:
            return SmoothnessCertificate(p, SINGULAR, f"common zero over an extension of degree {gfp.deg(q)}")
    return SmoothnessCertificate(p, SMOOTH, f"eliminant of degree {gfp.deg(elim)} has no common zeros")


def singular_points_by_enumeration(f: TernaryForm, emb: PrimeEmbedding) -> list[tuple[int, int, int]]:
    """Oracle: all F_p-rational points where f and its partials vanish (vectorized scan of P^2(F_p))."""
    import numpy as np

    p = emb.p
    polys = [reduce_form(f, emb)] + [reduce_form(partial(f, i), emb) for i in range(3)]
    r = np.arange(p, dtype=np.int64)
    pts = [np.stack([np.ones(p, dtype=np.int64), np.zeros(p, dtype=np.int64), np.zeros(p, dtype=np.int64)])[:, :1]]
    pts.append(np.stack([r, np.ones(p, dtype=np.int64), np.zeros(p, dtype=np.int64)]))
    xx, yy = np.meshgrid(r, r, indexing="ij")
    pts.append(np.stack([xx.ravel(), yy.ravel(), np.ones(p * p, dtype=np.int64)]))
    allpts = np.concatenate(pts, axis=1)
    mask = np.ones(allpts.shape[1], dtype=bool)
    maxdeg = f.degree
    pw = [[np.ones_like(allpts[v])] for v in range(3)]
    for v in range(3):
        for _ in range(maxdeg):
            pw[v].append(pw[v][-1] * allpts[v] % p)
    for poly in polys:
        acc = np.zeros(allpts.shape[1], dtype=np.int64)
        for (i, j, k), c in poly.items():
            acc = (acc + c * (pw[0][i] * pw[1][j] % p) % p * pw[2][k]) % p
        mask &= acc == 0
    return [tuple(int(x) for x in allpts[:, t]) for t in np.nonzero(mask)[0]]


def count_projective_points(p: int) -> int:
    return p * p + p + 1


# -- classical position tests --------------------------------------------------------------

def collinear(a: ProjPoint, b: ProjPoint, c: ProjPoint) -> bool:
    return not det([list(a.coords), list(b.coords), list(c.coords)])


def _conic_row(pt: ProjPoint) -> list:
    x, y, z = pt.coords
    return [x * x, y * y, z * z, x * y, x * z, y * z]


def on_common_conic(pts: Sequence[ProjPoint]) -> bool:
    if len(pts) != 6:
        raise ValueError("on_common_conic takes six points")
    return not det([_conic_row(p) for p in pts])


def general_position7(pts: Sequence[ProjPoint]) -> bool:
    """No three collinear and no six on a conic."""
    pts = list(pts)
    if len(pts) != 7:
        raise ValueError("general_position7 takes seven points")
    if len(set(pts)) != 7:
        raise ValueError("points must be pairwise distinct")
    if any(collinear(*t) for t in itertools.combinations(pts, 3)):
        return False
    return not any(on_common_conic(s) for s in itertools.combinations(pts, 6))


def arithmetic_genus(d: int) -> int:
    return (d - 1) * (d - 2) // 2


def plane_curve_genus(d: int, node_count: int) -> int:
    if d < 1 or node_count < 0:
        raise ValueError("need d >= 1 and node_count >= 0")
    pa = arithmetic_genus(d)
    if node_count > pa:
        raise ValueError(f"{node_count} nodes exceed the arithmetic genus {pa} of a degree-{d} curve")
    return pa - node_count


def bezout(d1: int, d2: int) -> int:
    if d1 < 1 or d2 < 1:
        raise ValueError("degrees must be positive")
    return d1 * d2
