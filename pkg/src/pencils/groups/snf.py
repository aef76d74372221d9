"""Abelian invariants of integer relation matrices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors


@dataclass(frozen=True)
class AbelianInvariants:
    """Z^rank + Z/d_1 + ... + Z/d_k with 2 <= d_1 | d_2 | ... | d_k."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(int(d) for d in self.torsion)
        if self.rank < 0 or any(d < 2 for d in t):
            raise ValueError(f"invalid invariants {self.rank}, {t}")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion {t} is not a divisibility chain")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_cyclic_orders(cls, orders: Sequence[int]) -> "AbelianInvariants":
        """Normalize a direct sum of cyclic groups Z/n_i (n_i = 0 meaning Z)."""
        n = len(orders)
        diag = Matrix.zeros(n, n)
        for i, o in enumerate(orders):
            diag[i, i] = o
        return invariants_of_relations([list(diag.row(i)) for i in range(n)], n)

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"


def invariant_diagonal(rows: Sequence[Sequence[int]], ncols: int) -> list[int]:
    """Nonzero Smith normal form diagonal entries of the matrix with these rows."""
    rows = [list(r) for r in rows if any(r)]
    if not rows or not ncols:
        return []
    M = Matrix(len(rows), ncols, [int(x) for r in rows for x in r])
    return [abs(int(d)) for d in invariant_factors(M, domain=ZZ) if d != 0]


def invariants_of_relations(rows: Sequence[Sequence[int]], ncols: int) -> AbelianInvariants:
    """Abelian group Z^ncols / (row span)."""
    diag = invariant_diagonal(rows, ncols)
    return AbelianInvariants(ncols - len(diag), tuple(sorted(d for d in diag if d > 1)))
