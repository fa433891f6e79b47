"""Exact verification of the invariant-sextic computations behind the
classification of K3 surfaces with a symplectic C3 x| C7 action centralized
by an antisymplectic involution."""

from k3sym.field import CycNum, FieldCtx, PrimeEmbedding, field, root_of_unity
from k3sym.forms import TernaryForm

__all__ = ["CycNum", "FieldCtx", "PrimeEmbedding", "TernaryForm", "field", "root_of_unity"]
__version__ = "0.1.0"
