"""Points of the projective plane over Q(zeta_n)."""

from __future__ import annotations

from typing import Sequence

from k3sym.field import CycNum, FieldCtx, field


class ProjPoint:
    """A point [z0:z1:z2], stored with its first nonzero coordinate equal to 1."""

    __slots__ = ("coords", "_hash")

    def __init__(self, coords: Sequence, ctx: FieldCtx | None = None):
        if len(coords) != 3:
            raise ValueError("a point of P^2 has three coordinates")
        ctx = ctx or next((c.ctx for c in coords if isinstance(c, CycNum)), None) or field()
        cs = [ctx(c) for c in coords]
        lead = next((c for c in cs if c), None)
        if lead is None:
            raise ValueError("[0:0:0] is not a point of P^2")
        if lead != 1:
            inv = lead.inverse()
            cs = [c * inv for c in cs]
        self.coords = tuple(cs)
        self._hash = None

    @property
    def ctx(self) -> FieldCtx:
        return self.coords[0].ctx

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coords)
        return self._hash

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i: int) -> CycNum:
        return self.coords[i]

    def sort_key(self) -> tuple:
        return tuple(c.sort_key() for c in self.coords)

    def __repr__(self) -> str:
        return "[" + " : ".join(_short(c) for c in self.coords) + "]"

    def transform(self, m) -> "ProjPoint":
        """The image m . p."""
        return ProjPoint(m.apply(self.coords))


def _short(c: CycNum) -> str:
    if c.is_rational():
        return str(c.to_fraction())
    k = c.root_exponent()
    if k is not None:
        return f"z{c.ctx.n}^{k}"
    return repr(c)
