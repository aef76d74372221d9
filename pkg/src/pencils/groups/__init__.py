"""Fundamental groups and homology of Lefschetz fibration total spaces."""

from .fpgroup import FPGroup, abelianization, h1_pipeline, presentation, surface_relator
from .pi1 import CERTIFIED, H1_ONLY, Pi1Report, pi1_report
from .prover import ProofVerdict, check_certificate, parse_certificate, prove_abelian, replay
from .snf import AbelianInvariants, invariants_of_relations

__all__ = [
    "AbelianInvariants", "CERTIFIED", "FPGroup", "H1_ONLY", "Pi1Report", "ProofVerdict",
    "abelianization", "check_certificate", "h1_pipeline", "invariants_of_relations",
    "parse_certificate", "pi1_report", "presentation", "prove_abelian", "replay",
    "surface_relator",
]
