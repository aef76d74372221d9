"""Two-stage fundamental group report.

Stage one proves that the group presented by the non-conjugated,
word-bearing vanishing cycles is abelian.  The full group is a quotient of
that one, so it is abelian too, and stage two reads it off from homology:
Z^{2g} modulo the classes of all vanishing cycles, conjugated ones included.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .fpgroup import FPGroup, h1_pipeline, presentation, surface_relator
from .prover import DEFAULT_MAX_LENGTH, DEFAULT_MAX_NODES, ProofVerdict, prove_abelian
from .snf import AbelianInvariants

CERTIFIED = "Certified"
H1_ONLY = "H1-only"


@dataclass(frozen=True)
class Pi1Report:
    status: str                        # CERTIFIED or H1_ONLY
    invariants: AbelianInvariants      # pi_1 when certified, otherwise H_1
    verdict: ProofVerdict
    presentation: FPGroup

    @property
    def certified(self) -> bool:
        return self.status == CERTIFIED

    def __str__(self):
        what = "pi_1" if self.certified else "H_1"
        return f"{self.status} {self.invariants} ({what})"


def pi1_report(f, base_points: int, max_length: int = DEFAULT_MAX_LENGTH,
               max_nodes: int = DEFAULT_MAX_NODES,
               max_growth: Optional[int] = None) -> Pi1Report:
    G = presentation(f, base_points, partial=True)
    g = f.surface.genus
    if g >= 2 and all(r == surface_relator(g) or not r.letters for r in G.relators):
        # a bare surface group of genus >= 2 is not abelian: nothing to search
        verdict = ProofVerdict("Inconclusive", G.generators,
                               unproven=[(G.generators[0], G.generators[1])])
    else:
        kw = {} if max_growth is None else {"max_growth": max_growth}
        verdict = prove_abelian(G, max_length=max_length, max_nodes=max_nodes, **kw)
    inv = h1_pipeline(f)
    return Pi1Report(CERTIFIED if verdict.proven else H1_ONLY, inv, verdict, G)
