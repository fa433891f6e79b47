"""Registry of checkable statements about H-invariant plane curves, and report I/O.

Each claim is a pure function of a :class:`RunConfig` returning ``(ok, evidence)``.
Evidence is plain JSON data so reports can be diffed byte for byte.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Sequence

from k3sym import curvegeom as cg
from k3sym import forms as fm
from k3sym import groups as gr
from k3sym import mori
from k3sym.axioms import check_axioms
from k3sym.field import FieldCtx, PrimeEmbedding, field, root_of_unity, to_wire
from k3sym.forms import TernaryForm
from k3sym.linalg import Mat3, nullspace
from k3sym.points import ProjPoint

REPORT_VERSION = 1
STATUSES = ("pass", "fail", "error")


# -- configuration & shared objects ------------------------------------------------------

@dataclass(frozen=True)
class RunConfig:
    conductor: int = 84
    prime: int | None = None
    max_closure: int = gr.DEFAULT_BOUND

    @property
    def ctx(self) -> FieldCtx:
        return field(self.conductor)

    @property
    def embedding(self) -> PrimeEmbedding:
        if self.prime is None:
            return PrimeEmbedding.default(self.conductor, start=337)
        return PrimeEmbedding.for_prime(self.prime, self.conductor)


@lru_cache(maxsize=None)
def _group(name: str, policy: str, cfg: RunConfig) -> gr.MatGroup:
    ctx = cfg.ctx
    gens = {
        "hprime": [gr.h_prime(ctx)],
        "h": [gr.h_prime(ctx), gr.tau(ctx)],
        "n": [gr.h_prime(ctx), gr.tau(ctx), gr.gamma(ctx)],
        "l27": [gr.h_prime(ctx), gr.tau(ctx), gr.s_involution(ctx)],
    }[name]
    return gr.closure(gens, policy, cfg.max_closure)


def _form_str(f: TernaryForm) -> str:
    return str(f)


def _pt(p: ProjPoint) -> str:
    return repr(p)


def _normalized(f: TernaryForm) -> TernaryForm:
    return gr.normalize_form(f)


def _same_span(a: Sequence[TernaryForm], b: Sequence[TernaryForm]) -> bool:
    if not a or not b:
        return len(a) == len(b)
    d = a[0].degree
    ea, eb = gr.echelon_forms(a, d), gr.echelon_forms(b, d)
    return ea == eb


# -- irreducibility via small orbits ------------------------------------------------------

def small_orbit_irreducibility(f: TernaryForm, cfg: RunConfig) -> tuple[bool, dict]:
    """Certify that an H-invariant form of degree <= 6 is irreducible.

    Components of a reducible f are permuted by H in orbits of size 1 or 3
    (size 7 would need degree >= 7).  A size-3 orbit consists of H'-stable
    curves of degree <= 2, i.e. H'-weight vectors; a size-1 orbit consists of
    H-stable curves, whose equations have H'-weight 0 because tau multiplies
    weights by 4.  When the degree <= d/3 weight spaces are spanned by single
    monomials and the degree <= d/2 H'-invariants are zero or a single
    monomial, every reducible case is divisible by a coordinate variable.
    """
    d = f.degree
    ev: dict = {"method": "small-orbit arithmetic", "degree": d}
    if d > 6:
        return False, dict(ev, reason="argument needs degree <= 6")
    hp = _group("hprime", "linear", cfg)
    h = _group("h", "projective", cfg)
    cg.check_invariant(f, h)
    weight_ok = True
    for k in range(1, d // 3 + 1):
        # H' weights of degree-k monomials all distinct
        lam_weights = [(e[0] + 2 * e[1] + 4 * e[2]) % 7 for e in fm.monomial_exponents(k)]
        weight_ok &= len(set(lam_weights)) == len(lam_weights)
    inv_dims = {}
    inv_ok = True
    for k in range(1, d // 2 + 1):
        basis = gr.reynolds_invariants(hp, k, cfg.ctx)
        inv_dims[k] = [_form_str(b) for b in basis]
        if len(basis) > 1 or (basis and (len(basis[0]) != 1 or sum(1 for x in basis[0].support()[0] if x) < 2)):
            inv_ok = False
    support = f.support()
    no_coordinate_factor = all(any(e[i] == 0 for e in support) for i in range(3))
    ok = weight_ok and inv_ok and no_coordinate_factor
    ev.update(weight_spaces_monomial=weight_ok, hprime_invariants=inv_dims, no_coordinate_factor=no_coordinate_factor)
    return ok, ev


def _smooth_evidence(f: TernaryForm, cfg: RunConfig) -> tuple[bool, dict]:
    """Smoothness by both one-sided tests: reduction mod p and the candidate locus."""
    cert = cg.smooth_mod_p(f, cfg.embedding)
    irr, irr_ev = small_orbit_irreducibility(f, cfg)
    loc = cg.candidate_singular_locus(f, _group("h", "projective", cfg), irr_ev["method"] if irr else None)
    ok = cert.smooth and loc.sound and len(loc) == 0
    return ok, {
        "certificate": {"prime": cert.prime, "verdict": cert.verdict, "detail": cert.detail},
        "candidate_points": loc.candidates,
        "singular_candidates": [_pt(p) for p in loc],
        "locus_sound": loc.sound,
        "irreducibility": irr_ev,
    }


# -- registry -------------------------------------------------------------------------

@dataclass(frozen=True)
class ClaimSpec:
    id: str
    check: Callable[[RunConfig], tuple[bool, dict]]
    citations: tuple
    axioms: tuple = ()
    tags: tuple = ()
    summary: str = ""


class Registry:
    def __init__(self):
        self._claims: dict[str, ClaimSpec] = {}

    def register(self, id: str, citations: Sequence[str], axioms: Sequence[str] = (), tags: Sequence[str] = (),
                 summary: str = ""):
        if id in self._claims:
            raise ValueError(f"duplicate claim id {id!r}")
        if not citations:
            raise ValueError("a claim needs at least one citation")
        check_axioms(axioms)

        def deco(fn):
            self._claims[id] = ClaimSpec(id, fn, tuple(citations), tuple(sorted(axioms)), tuple(tags), summary)
            return fn

        return deco

    def ids(self) -> list[str]:
        return sorted(self._claims)

    def get(self, id: str) -> ClaimSpec:
        try:
            return self._claims[id]
        except KeyError:
            raise KeyError(f"unknown claim {id!r}") from None

    def __len__(self) -> int:
        return len(self._claims)

    def __contains__(self, id) -> bool:
        return id in self._claims


REGISTRY = Registry()
claim = REGISTRY.register


@claim("inv6-H", ["H-invariant sextics span the pencil P1, P2"], tags=("invariants",),
       summary="degree-6 H-invariants are 2-dimensional, spanned by P1 and P2")
def _inv6_h(cfg):
    basis = gr.reynolds_invariants(_group("h", "linear", cfg), 6, cfg.ctx)
    ok = len(basis) == 2 and _same_span(basis, [fm.p1(cfg.ctx), fm.p2(cfg.ctx)])
    return ok, {"dim": len(basis), "basis": [_form_str(b) for b in basis], "matches_P1_P2": ok}


@claim("inv6-Hprime", ["H'-invariant sextic monomials"], tags=("invariants",),
       summary="degree-6 H'-invariants are the four listed monomials")
def _inv6_hp(cfg):
    ctx = cfg.ctx
    basis = gr.reynolds_invariants(_group("hprime", "linear", cfg), 6, ctx)
    expected = [TernaryForm.monomial(e, 1, ctx) for e in [(2, 2, 2), (5, 1, 0), (1, 0, 5), (0, 5, 1)]]
    ok = len(basis) == 4 and set(basis) == set(expected)
    return ok, {"dim": len(basis), "basis": [_form_str(b) for b in basis]}


def _tau_fixed(cfg) -> list[ProjPoint]:
    return list(cg.fixed_points(gr.tau(cfg.ctx)))


@claim("eig6-lines", ["tau-eigenlines in the H'-invariant sextics"], tags=("invariants", "smoothness"),
       summary="two 1-dimensional tau-eigenlines besides V, smooth curves through all tau-fixed points")
def _eig6(cfg):
    ctx = cfg.ctx
    space = gr.reynolds_invariants(_group("hprime", "linear", cfg), 6, ctx)
    split = gr.eigenspace_split(space, gr.tau(ctx))
    dims = {str(k): len(v) for k, v in sorted(split.items())}
    lines = [v[0] for k, v in sorted(split.items()) if len(v) == 1]
    v_part = [v for v in split.values() if len(v) == 2]
    ok = len(lines) == 2 and len(v_part) == 1 and _same_span(v_part[0], [fm.p1(ctx), fm.p2(ctx)])
    fixed = _tau_fixed(cfg)
    ev = {"eigenvalue_exponents": dims, "conductor": ctx.n, "eigenforms": [_form_str(f) for f in lines], "curves": []}
    for f in lines:
        on = all(not fm.evaluate(f, p) for p in fixed)
        matches = [k for k in (1, 2) if fm.is_proportional(f, fm.tau_eigen_sextic(k, ctx))]
        smooth, sev = _smooth_evidence(f, cfg)
        ok = ok and on and smooth and len(matches) == 1
        ev["curves"].append({"form": _form_str(f), "contains_tau_fixed_points": on, "zeta3_power": matches,
                             "smooth": smooth, "smoothness": sev})
    return ok, ev


@claim("tau-fixed", ["fixed points of tau"], tags=("groups",),
       summary="Fix(tau) = {[1:w^j:w^2j]}")
def _tau_fixed_claim(cfg):
    ctx = cfg.ctx
    loc = cg.fixed_points(gr.tau(ctx))
    expected = {ProjPoint([1, root_of_unity(3, j, ctx), root_of_unity(3, 2 * j, ctx)], ctx) for j in range(3)}
    ok = loc.isolated and set(loc) == expected
    return ok, {"points": [_pt(p) for p in loc], "isolated": loc.isolated}


def pencil_singular_parameters(cfg: RunConfig) -> tuple[list[tuple], dict]:
    """Parameters (a:b) with a P1 + b P2 singular at a fixed point of some non-trivial element of H."""
    ctx = cfg.ctx
    h = _group("h", "projective", cfg)
    cands: set[ProjPoint] = set()
    for m in h.non_scalar():
        cands |= cg.fixed_points(m).points
    g1, g2 = fm.gradient(fm.p1(ctx)), fm.gradient(fm.p2(ctx))
    params = set()
    every = []
    for p in sorted(cands, key=ProjPoint.sort_key):
        rows = [[fm.evaluate(a, p), fm.evaluate(b, p)] for a, b in zip(g1, g2)]
        ker = nullspace(rows, 2, ctx)
        if len(ker) == 2:
            every.append(_pt(p))
        if len(ker) == 1:
            params.add(_proj(*ker[0]))
    return sorted(params, key=lambda t: (t[0].sort_key(), t[1].sort_key())), {"candidate_points": len(cands),
                                                                             "singular_for_every_member": every}


def _proj(a, b):
    """Normalize (a:b) to (1:0) or (a/b:1)."""
    if not b:
        return (a.ctx.one, a.ctx.zero)
    return (a / b, b.ctx.one)


@claim("pencil-singular", ["singular members of the invariant pencil"], tags=("pencil", "smoothness"),
       summary="singular members are (1:0) and the three with a + 3 w b = 0")
def _pencil_singular(cfg):
    ctx = cfg.ctx
    params, info = pencil_singular_parameters(cfg)
    expected = {(ctx.one, ctx.zero)} | {(root_of_unity(3, j, ctx) * (-3), ctx.one) for j in range(3)}
    ok = set(params) == expected and not info["singular_for_every_member"]
    # members with b != 0 have monomials avoiding each variable, so the orbit argument covers them
    generic_irr, irr_ev = small_orbit_irreducibility(fm.pencil_member(1, 1, ctx), cfg)
    ok = ok and generic_irr
    # cross-check by reduction on assorted members
    emb = cfg.embedding
    probes = []
    sample = [(0, 1), (1, 1), (-5, 1), (2, 7), (-1, 3), (11, -2)] + [(a, b) for a, b in expected]
    for a, b in sample:
        f = fm.pencil_member(a, b, ctx)
        cert = cg.smooth_mod_p(f, emb)
        singular = any(ctx(a) * q[1] == ctx(b) * q[0] for q in expected)
        agree = cert.smooth != singular
        ok = ok and agree and cert.verdict != cg.BAD_PRIME
        probes.append({"member": [to_wire(ctx(a)), to_wire(ctx(b))], "verdict": cert.verdict, "agrees": agree})
    return ok, {"singular_parameters": [[to_wire(a), to_wire(b)] for a, b in params], "count": len(params),
                **info, "irreducibility_of_members_with_b_nonzero": irr_ev, "mod_p_probes": probes}


@claim("csing-nodes", ["seven nodes of the singular invariant sextic"], tags=("pencil", "curves"),
       summary="Sing(C_sing) is the H'-orbit of [1:1:1], 7 nodes, geometric genus 3")
def _csing(cfg):
    ctx = cfg.ctx
    f = fm.c_sing(ctx)
    irr, irr_ev = small_orbit_irreducibility(f, cfg)
    loc = cg.candidate_singular_locus(f, _group("h", "projective", cfg), irr_ev["method"] if irr else None)
    orbit = set(gr.orbit_point(_group("hprime", "projective", cfg), ProjPoint([1, 1, 1], ctx)))
    nodes = [r.node for r in loc.reports if r.is_singular]
    genus = cg.plane_curve_genus(6, len(loc))
    ok = loc.sound and set(loc) == orbit and len(orbit) == 7 and all(nodes) and genus == 3
    return ok, {"points": [_pt(p) for p in loc], "all_nodes": all(nodes), "sound": loc.sound,
                "genus_after_resolution": genus, "irreducibility": irr_ev}


@claim("general-position", ["general position of the seven nodes", "conic through six nodes"],
       tags=("curves",), summary="the 7 nodes are in general position; conic argument 2*6 = 12 < 14")
def _general_position(cfg):
    ctx = cfg.ctx
    nodes = gr.orbit_point(_group("hprime", "projective", cfg), ProjPoint([1, 1, 1], ctx))
    triples = list(itertools.combinations(nodes, 3))
    sixes = list(itertools.combinations(nodes, 6))
    col = sum(cg.collinear(*t) for t in triples)
    con = sum(cg.on_common_conic(s) for s in sixes)
    # a conic through 6 double points meets the sextic with multiplicity >= 12, but would need 14
    b = cg.bezout(2, 6)
    ok = len(triples) == 35 and len(sixes) == 7 and col == 0 and con == 0 and cg.general_position7(nodes) and b < 14
    return ok, {"triples": len(triples), "collinear": col, "six_subsets": len(sixes), "on_conic": con,
                "bezout_conic_sextic": b, "required_by_nodes": 14}


@claim("inv4-Hprime", ["H'-invariant quartics and their tau-eigenforms"], tags=("invariants",),
       summary="quartic H'-invariants are 3-dimensional with tau-eigenforms Q_w")
def _inv4(cfg):
    ctx = cfg.ctx
    basis = gr.reynolds_invariants(_group("hprime", "linear", cfg), 4, ctx)
    expected = {TernaryForm.monomial(e, 1, ctx) for e in [(3, 0, 1), (1, 3, 0), (0, 1, 3)]}
    split = gr.eigenspace_split(basis, gr.tau(ctx))
    mapping = {}
    for e, v in sorted(split.items()):
        for k in range(3):
            if len(v) == 1 and fm.is_proportional(v[0], fm.q_zeta(k, ctx)):
                mapping[str(e)] = k
    ok = len(basis) == 3 and set(basis) == expected and len(split) == 3 and sorted(mapping.values()) == [0, 1, 2]
    return ok, {"dim": len(basis), "basis": [_form_str(b) for b in basis],
                "eigenvalue_exponent_to_zeta3_power": mapping, "conductor": ctx.n}


@claim("klein-smooth", ["smoothness of Klein's quartic"], tags=("smoothness",),
       summary="C_Klein is smooth: certificate mod p and empty candidate locus")
def _klein_smooth(cfg):
    return _smooth_evidence(fm.klein_quartic(cfg.ctx), cfg)


@claim("hessian-klein", ["Hessian of Klein's quartic"], tags=("l27",),
       summary="Hess(C_Klein) is proportional to P2 - 5 P1")
def _hessian(cfg):
    ctx = cfg.ctx
    c = fm.proportional(fm.hessian_form(fm.klein_quartic(ctx)), fm.hess_sextic(ctx))
    return c is not None, {"constant": to_wire(c) if c is not None else None}


@claim("l27-closure", ["L2(7)-invariance of Klein's quartic"], tags=("groups", "l27"),
       summary="<h', tau, S> has projective order 168 and preserves C_Klein and the Hess curve")
def _l27_closure(cfg):
    ctx = cfg.ctx
    s = gr.s_involution(ctx)
    g = _group("l27", "projective", cfg)
    checks = {
        "square_scalar": (s @ s).is_scalar(),
        "order": len(g),
        "klein_invariant": all(fm.is_proportional(fm.substitute(fm.klein_quartic(ctx), m), fm.klein_quartic(ctx))
                               for m in g.generators),
        "hess_invariant": all(fm.is_proportional(fm.substitute(fm.hess_sextic(ctx), m), fm.hess_sextic(ctx))
                              for m in g.generators),
    }
    ok = checks["square_scalar"] and checks["order"] == 168 and checks["klein_invariant"] and checks["hess_invariant"]
    return ok, checks


def l27_fixed_pencil_members(cfg: RunConfig) -> tuple[list[tuple], dict]:
    """Members a P1 + b P2 mapped to multiples of themselves by S (h' and tau fix every member)."""
    ctx = cfg.ctx
    s = gr.s_involution(ctx)
    p1, p2 = fm.p1(ctx), fm.p2(ctx)
    for m in (gr.h_prime(ctx), gr.tau(ctx)):
        assert fm.substitute(p1, m) == p1 and fm.substitute(p2, m) == p2
    s1, s2 = fm.substitute(p1, s), fm.substitute(p2, s)
    v_support = set(p1.support()) | set(p2.support())
    rows = [[s1.coefficient(e), s2.coefficient(e)] for e in fm.monomial_exponents(6) if e not in v_support]
    rows = [r for r in rows if r[0] or r[1]]
    ker = nullspace(rows, 2, ctx)
    out = []
    for a, b in ker:
        f = fm.pencil_member(a, b, ctx)
        if fm.is_proportional(fm.substitute(f, s), f):
            out.append(_proj(a, b))
    return out, {"linear_conditions": len(rows), "kernel_dim": len(ker)}


@claim("l27-unique", ["uniqueness of the L2(7)-invariant smooth sextic", "L2(7)-orbits on a curve"],
       tags=("l27", "pencil"), summary="the Hess member is the only L2(7)-fixed pencil member; 36 is no sum of orbits >= 21")
def _l27_unique(cfg):
    ctx = cfg.ctx
    members, info = l27_fixed_pencil_members(cfg)
    is_hess = len(members) == 1 and members[0] == (ctx(-5), ctx.one)
    smooth = cg.smooth_mod_p(fm.hess_sextic(ctx), cfg.embedding).smooth
    knap = mori.orbit_sum_feasible(36, mori.OrbitSizeSet.all_divisors(168), 21)
    ok = is_hess and smooth and not knap
    return ok, {"fixed_members": [[to_wire(a), to_wire(b)] for a, b in members], **info,
                "member_smooth": smooth, "orbit_sum_36_feasible": knap, "bezout_sextics": cg.bezout(6, 6)}


@claim("gamma-orbits", ["Gamma acting on the singular pencil members"], tags=("groups", "pencil"),
       summary="Gamma permutes the three C_w transitively and fixes C_P1, C_P2")
def _gamma(cfg):
    ctx = cfg.ctx
    g = gr.gamma(ctx)
    perm = {}
    for k in range(3):
        img = fm.substitute(fm.c_zeta(k, ctx), g)
        perm[k] = [j for j in range(3) if fm.is_proportional(img, fm.c_zeta(j, ctx))]
    images = [v[0] for v in perm.values() if len(v) == 1]
    gam = _group("n", "projective", cfg)
    orbit = gr.orbit_form(gr.closure([g], "projective"), fm.c_zeta(0, ctx))
    fixes = {name: fm.is_proportional(fm.substitute(f, g), f) for name, f in (("P1", fm.p1(ctx)), ("P2", fm.p2(ctx)))}
    ok = sorted(images) == [0, 1, 2] and len(orbit) == 3 and all(fixes.values()) and len(gam) == 63
    return ok, {"image_of_C_w^k": {str(k): v for k, v in perm.items()}, "orbit_size": len(orbit),
                "fixes": fixes, "order_of_N": len(gam)}


@claim("stab-F", ["automorphisms of the Hess sextic preserving the coordinate triangle"], tags=("groups", "l27"),
       summary="monomial stabilizer of P2 - 5 P1 equals H")
def _stab(cfg):
    ctx = cfg.ctx
    res = gr.stab_of_three_points_check(fm.hess_sextic(ctx))
    h = _group("h", "projective", cfg)
    ok = res.finite and len(res.elements) == 21 and gr.same_projective_group(res.elements, h)
    return ok, {"kind": res.kind, "order": len(res.elements), "equals_H": ok}


@claim("mori-audit", ["Euler characteristic formula", "number of rational branch curves",
                      "Mori-fiber estimate", "non-minimal case"],
       axioms=sorted(set().union(*mori.RULE_AXIOMS.values()) | {"fix-sigma-curves", "no-p1xp1"}),
       tags=("mori",), summary="the case analysis leaves n = 0 with |E| in {0, 7} and an image of degree 6")
def _mori(cfg):
    rows = mori.enumerate_scenarios(range(3, 11), (0, 7, 14), range(3, 12))
    alive = mori.survivors(rows)
    admissible = mori.branch_count_admissible(mori.standard_branch_sizes())
    caps = {n: mori.estimate_lemma(n) for n in (7, 14)}
    bounds = {n: mori.fiber_bound(n) for n in (0, 7, 14)}
    degs = mori.image_self_intersection_test(8, 7, {1, 2})
    backed = all(r.axioms for r in rows if not r.feasible and set(r.killed_by) - {"euler_formula"})
    ok = (admissible == {0, 7, 14} and caps == {7: 13, 14: 20} and all(caps[n] < bounds[n] for n in caps)
          and {r.fibers for r in alive if r.n == 0} == {0, 7} and all(r.n == 0 for r in alive)
          and degs == {6} and not mori.image_self_intersection_test(8, 7, {1}) and backed)
    return ok, {"rows": len(rows), "survivors": [r.as_dict() for r in alive], "admissible_n": sorted(admissible),
                "estimate_caps": {str(k): v for k, v in caps.items()}, "fiber_bounds": {str(k): v for k, v in bounds.items()},
                "image_degrees": sorted(degs), "all_killed_rows_cite_axioms": backed}


@claim("delpezzo-degree", ["blow-up of the seven nodes", "possible H-minimal models"],
       axioms=["no-faithful-2dim", "hprime-three-fixed-points", "no-p1xp1", "delpezzo-minimal-model"],
       tags=("mori", "curves"), summary="blowing up 7 points gives degree 2; only P2 and degree 2 can be H-minimal")
def _delpezzo(cfg):
    deg = 9 - 7
    counts = {str(d): mori.minus_one_curve_count(d) for d in range(1, 9)}
    models = [mori.minimal_model_check(e) for e in range(3, 12)]
    allowed = sorted(m.surface for m in models if not m.excluded)
    g_b = cg.plane_curve_genus(6, 7)
    g_klein = cg.plane_curve_genus(4, 0)
    # the 56 lines of a degree-2 del Pezzo split into orbits of size 7 or 21
    ok = (deg == 2 and allowed == ["P2", "dP2"] and g_b == 3 == g_klein and counts["2"] == 56
          and mori.orbit_sum_feasible(56, mori.OrbitSizeSet(21, {7, 21})))
    return ok, {"degree": deg, "minus_one_curves": counts, "h_minimal_candidates": allowed,
                "genus_proper_transform": g_b, "genus_klein": g_klein}


# -- running -------------------------------------------------------------------------------

@dataclass
class ClaimResult:
    id: str
    status: str
    evidence: dict
    citations: list
    axioms_used: list
    elapsed_ms: float = 0.0

    def as_dict(self, with_time: bool = True) -> dict:
        d = {"id": self.id, "status": self.status, "evidence": self.evidence, "citations": list(self.citations),
             "axioms_used": list(self.axioms_used)}
        d["elapsed_ms"] = round(self.elapsed_ms, 3) if with_time else 0
        return d


def run_claim(id: str, config: RunConfig | None = None, registry: Registry | None = None) -> ClaimResult:
    registry = REGISTRY if registry is None else registry
    spec = registry.get(id)
    config = config or RunConfig()
    t0 = time.perf_counter()
    try:
        ok, evidence = spec.check(config)
        status = "pass" if ok and evidence else "fail"
    except Exception as exc:  # a failing claim must not abort the run
        status, evidence = "error", {"error": f"{type(exc).__name__}: {exc}"}
    elapsed = (time.perf_counter() - t0) * 1000
    return ClaimResult(id, status, _jsonable(evidence), list(spec.citations), list(spec.axioms), elapsed)


def run_all(tag: str | None = None, config: RunConfig | None = None, registry: Registry | None = None) -> list[ClaimResult]:
    registry = REGISTRY if registry is None else registry
    ids = [i for i in registry.ids() if tag is None or tag in registry.get(i).tags]
    return [run_claim(i, config, registry) for i in ids]


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


# -- files & reports ----------------------------------------------------------------------

def load_curve(path) -> TernaryForm:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return fm.loads(text)
    except fm.FormError as exc:
        raise fm.FormError(f"{path}: {exc}") from exc


def save_curve(f: TernaryForm, path, label: str | None = None) -> None:
    Path(path).write_text(fm.dumps(f, label) + "\n", encoding="utf-8")


def report_dict(results: Iterable[ClaimResult], with_time: bool = True) -> dict:
    return {"version": REPORT_VERSION, "results": [r.as_dict(with_time) for r in results]}


def report_schema() -> dict:
    return json.loads(resources.files("k3sym").joinpath("data/report.schema.json").read_text(encoding="utf-8"))


def format_text(results: Sequence[ClaimResult]) -> str:
    lines = [f"{r.status.upper():5s} {r.id:18s} {r.elapsed_ms:9.1f} ms" for r in results]
    passed = sum(r.status == "pass" for r in results)
    lines.append(f"{passed}/{len(results)} claims passed")
    return "\n".join(lines)


def emit_report(results: Sequence[ClaimResult], format: str = "json", path=None) -> str:
    if format == "json":
        text = json.dumps(report_dict(results), indent=2, sort_keys=False) + "\n"
    elif format == "text":
        text = format_text(results) + "\n"
    else:
        raise ValueError("format must be 'json' or 'text'")
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


SHIPPED_CURVES = {
    "klein_quartic": fm.klein_quartic,
    "hess_sextic": fm.hess_sextic,
    "c_sing": fm.c_sing,
    "p1": fm.p1,
    "p2": fm.p2,
    "tau_eigen_sextic_1": lambda ctx=None: fm.tau_eigen_sextic(1, ctx),
    "tau_eigen_sextic_2": lambda ctx=None: fm.tau_eigen_sextic(2, ctx),
}


def shipped_curve_paths() -> dict[str, Path]:
    base = resources.files("k3sym").joinpath("data/curves")
    return {name: Path(str(base.joinpath(f"{name}.json"))) for name in SHIPPED_CURVES}
