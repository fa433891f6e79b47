"""Arithmetic audit of the Mori-reduction case analysis.

Each check either follows from plain arithmetic or consumes named axioms from
:mod:`k3sym.axioms`; rows of :func:`enumerate_scenarios` keep the two apart.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, asdict
from functools import lru_cache
from typing import Iterable, Sequence

H_ORDER = 21
L27_ORDER = 168
E_MIN_RANGE = (3, 11)


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(frozen=True)
class MoriScenario:
    g: int
    n: int
    e_min: int
    fibers: int

    def __post_init__(self):
        if self.g < 3:
            raise ValueError("g(B0) >= 3")
        if not E_MIN_RANGE[0] <= self.e_min <= E_MIN_RANGE[1]:
            raise ValueError(f"e_min must lie in {E_MIN_RANGE}")
        if self.n < 0 or self.fibers < 0:
            raise ValueError("n and fibers are nonnegative")


@dataclass(frozen=True)
class OrbitSizeSet:
    group_order: int
    allowed: frozenset

    def __init__(self, group_order: int, allowed: Iterable[int]):
        allowed = frozenset(allowed)
        bad = [a for a in allowed if a < 1 or group_order % a]
        if bad:
            raise ValueError(f"orbit sizes {sorted(bad)} do not divide {group_order}")
        object.__setattr__(self, "group_order", group_order)
        object.__setattr__(self, "allowed", allowed)

    @classmethod
    def all_divisors(cls, group_order: int) -> "OrbitSizeSet":
        return cls(group_order, divisors(group_order))


# -- basic bookkeeping ---------------------------------------------------------------

def euler_feasible(s: MoriScenario) -> bool:
    return 13 - s.g == s.e_min + s.fibers - s.n


def euler_fibers(g: int, n: int, e_min: int) -> int:
    """The fiber count forced by the Euler formula."""
    return 13 - g - e_min + n


def fiber_bound(n: int) -> int:
    if n < 0:
        raise ValueError("n >= 0")
    return n + 9


@dataclass(frozen=True)
class EstimateDetail:
    n: int
    cap: int
    euler_max: int
    witness: MoriScenario
    excluded_by: str = "estimate-configuration"


def estimate_detail(n: int) -> EstimateDetail:
    """Maximize fibers under the Euler formula with g, e_min >= 3; the maximum itself needs geometry to exclude."""
    if n not in (7, 14):
        raise ValueError("the estimate applies to n = 7 or n = 14")
    g, e = 3, E_MIN_RANGE[0]
    mx = euler_fibers(g, n, e)
    witness = MoriScenario(g, n, e, mx)
    assert euler_feasible(witness)
    return EstimateDetail(n, mx - 1, mx, witness)


def estimate_lemma(n: int) -> int:
    return estimate_detail(n).cap


def orbit_sum_feasible(total: int, sizes: OrbitSizeSet, min_size: int = 1) -> bool:
    """Is total a nonnegative integer combination of allowed sizes >= min_size?"""
    if total < 0:
        raise ValueError("total >= 0")
    parts = sorted(s for s in sizes.allowed if s >= min_size)
    reach = [True] + [False] * total
    for t in range(1, total + 1):
        reach[t] = any(s <= t and reach[t - s] for s in parts)
    return reach[total]


def standard_branch_sizes(allow_21: bool = False) -> OrbitSizeSet:
    """H-orbit sizes for rational branch curves: 1 and 3 would add H'-fixed points, 21 conflicts with the lattice bound."""
    allowed = {7, 21} if allow_21 else {7}
    return OrbitSizeSet(H_ORDER, allowed)


def branch_count_admissible(sizes: OrbitSizeSet, max_orbits: int = 2) -> set[int]:
    """Totals of at most max_orbits orbits with sizes from sizes.allowed (0 = no branch curves)."""
    out = {0}
    for k in range(1, max_orbits + 1):
        for combo in itertools.combinations_with_replacement(sorted(sizes.allowed), k):
            out.add(sum(combo))
    return out


def image_self_intersection_test(b0_sq: int, orbit: int, multiplicities: Iterable[int]) -> set[int]:
    """Degrees d with d^2 = b0_sq + orbit m^2 for some m, leaving room for orbit nodes (genus >= 0)."""
    out = set()
    for m in multiplicities:
        s = b0_sq + orbit * m * m
        d = math.isqrt(s) if s >= 0 else -1
        if d >= 1 and d * d == s and d * (d - 3) // 2 + 1 - orbit >= 0:
            out.add(d)
    return out


# -- del Pezzo surfaces --------------------------------------------------------------

@lru_cache(maxsize=None)
def minus_one_curve_count(degree: int) -> int:
    """Number of (-1)-classes on P2 blown up in 9 - degree general points (1 <= degree <= 8).

    Enumerates a H - sum m_i E_i with a^2 - sum m_i^2 = -1 and 3a - sum m_i = 1.
    """
    r = 9 - degree
    if not 1 <= r <= 8:
        raise ValueError("degree must be between 1 and 8")
    count = r  # the exceptional curves E_i themselves (a = 0)
    for a in range(1, 7):
        target_sum, target_sq = 3 * a - 1, a * a + 1

        def rec(i, rem_sum, rem_sq, cap):
            # nonincreasing multiplicities; count distinct orderings afterwards
            if i == r:
                return [()] if rem_sum == 0 and rem_sq == 0 else []
            res = []
            for m in range(min(cap, rem_sum), -1, -1):
                if m * m > rem_sq:
                    continue
                for tail in rec(i + 1, rem_sum - m, rem_sq - m * m, m):
                    res.append((m,) + tail)
            return res

        for mult in rec(0, target_sum, target_sq, a):
            count += _arrangements(mult)
    return count


def _arrangements(mult: Sequence[int]) -> int:
    n = math.factorial(len(mult))
    for _, grp in itertools.groupby(mult):
        n //= math.factorial(len(list(grp)))
    return n


def euler_of_delpezzo(degree: int) -> int:
    return 12 - degree


@dataclass(frozen=True)
class MinimalModelCheck:
    e_min: int
    surface: str
    excluded: bool
    reason: str
    axioms: tuple = ()


def minimal_model_check(e_min: int) -> MinimalModelCheck:
    """Can a del Pezzo surface with Euler number e_min be H-minimal?"""
    d = 12 - e_min
    if d == 9:
        return MinimalModelCheck(e_min, "P2", False, "no (-1)-curves")
    if d == 1:
        return MinimalModelCheck(e_min, "dP1", True, "anticanonical base point would be H-fixed", ("no-faithful-2dim",))
    count = minus_one_curve_count(d)
    # H-orbits have size 1, 3, 7 or 21; sizes 1 and 3 are impossible
    ok = orbit_sum_feasible(count, OrbitSizeSet(H_ORDER, {7, 21}))
    name = f"dP{d}"
    axioms = ("no-faithful-2dim", "hprime-three-fixed-points")
    if d == 8:
        name = "dP8 (F1 or P1xP1)"
        axioms = axioms + ("no-p1xp1",)
    if ok:
        return MinimalModelCheck(e_min, name, False, f"{count} (-1)-curves split into orbits of size 7/21", axioms)
    return MinimalModelCheck(e_min, name, True, f"{count} (-1)-curves force an orbit of size 1 or 3", axioms)


# -- scenario sweep -------------------------------------------------------------------

RULE_AXIOMS = {
    "euler_formula": (),
    "minimal_model": ("delpezzo-minimal-model",),
    "fiber_bound": ("euler-k3",),
    "branch_count": ("lattice-rank-21", "hprime-three-fixed-points"),
    "estimate_lemma": ("estimate-configuration", "genus-at-least-3"),
    "configuration_lower_bound": ("configuration-lower-bound", "mori-self-intersection", "mori-meets-branch-twice"),
    "orbit_divisibility": ("hprime-three-fixed-points", "no-faithful-2dim"),
    "image_self_intersection": ("b0-square-8", "mori-self-intersection"),
}


def configuration_lower_bound(n: int) -> int:
    """Fibers forced along the branch orbits when n > 0: 14 along one orbit, plus 7 per further orbit."""
    if n <= 0:
        return 0
    return 14 + 7 * (n // 7 - 1)


@dataclass(frozen=True)
class ScenarioRow:
    g: int
    n: int
    e_min: int
    fibers: int
    feasible: bool
    killed_by: tuple = ()
    axioms: tuple = ()
    notes: tuple = ()

    def as_dict(self) -> dict:
        d = asdict(self)
        d["killed_by"] = list(self.killed_by)
        d["axioms"] = list(self.axioms)
        d["notes"] = list(self.notes)
        return d


def _evaluate(g: int, n: int, e: int) -> ScenarioRow:
    fibers = euler_fibers(g, n, e)
    killed, notes = [], []
    used: set[str] = set()

    def rule(name, failed, note=None):
        used.update(RULE_AXIOMS[name])
        if failed:
            killed.append(name)
            if note:
                notes.append(note)

    if fibers < 0:
        rule("euler_formula", True, "no nonnegative fiber count satisfies the Euler formula")
    mm = minimal_model_check(e)
    rule("minimal_model", mm.excluded, f"{mm.surface}: {mm.reason}" if mm.excluded else None)
    used.update(mm.axioms)
    if fibers >= 0:
        rule("fiber_bound", fibers > fiber_bound(n), f"{fibers} > {fiber_bound(n)}")
    admissible = branch_count_admissible(standard_branch_sizes())
    rule("branch_count", n not in admissible, f"n = {n} not in {sorted(admissible)}")
    if n in (7, 14) and fibers >= 0:
        cap = estimate_lemma(n)
        low = configuration_lower_bound(n)
        rule("estimate_lemma", fibers > cap, f"{fibers} > cap {cap}")
        rule("configuration_lower_bound", fibers < low, f"{fibers} < forced {low}")
    if n == 0 and fibers >= 0:
        ok = orbit_sum_feasible(fibers, OrbitSizeSet(H_ORDER, {7, 21}))
        rule("orbit_divisibility", not ok, f"{fibers} is not a sum of H-orbits of size 7 or 21")
        if ok and fibers == 7:
            degs = image_self_intersection_test(8, 7, {1, 2})
            rule("image_self_intersection", degs != {6}, None)
            notes.append(f"image of B0 is a plane curve of degree {sorted(degs)}")
    feasible = not killed
    if not feasible:
        used = set().union(*(RULE_AXIOMS[k] for k in killed)) | (set(mm.axioms) if "minimal_model" in killed else set())
    return ScenarioRow(g, n, e, fibers, feasible, tuple(killed), tuple(sorted(used)), tuple(notes))


def parse_range(text: str) -> list[int]:
    """'3..10' -> [3..10]; '0,7,14' -> [0, 7, 14]; '' -> []."""
    text = text.strip()
    if not text:
        return []
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return sorted({int(x) for x in text.split(",") if x.strip()})


def enumerate_scenarios(g_range: Iterable[int] = range(3, 11), n_values: Iterable[int] = (0, 7, 14),
                        e_range: Iterable[int] = range(3, 12)) -> list[ScenarioRow]:
    rows = []
    for n in sorted(set(n_values)):
        for g in sorted(set(g_range)):
            for e in sorted(set(e_range)):
                rows.append(_evaluate(g, n, e))
    return rows


def survivors(rows: Iterable[ScenarioRow]) -> list[ScenarioRow]:
    return [r for r in rows if r.feasible]


def format_table(rows: Sequence[ScenarioRow]) -> str:
    head = ("g", "n", "e_min", "fibers", "feasible", "killed_by")
    body = [(str(r.g), str(r.n), str(r.e_min), str(r.fibers), "yes" if r.feasible else "no", ",".join(r.killed_by) or "-")
            for r in rows]
    widths = [max(len(x) for x in col) for col in zip(head, *body)] if body else [len(h) for h in head]
    lines = ["  ".join(x.ljust(w) for x, w in zip(line, widths)).rstrip() for line in [head, *body]]
    return "\n".join(lines)
