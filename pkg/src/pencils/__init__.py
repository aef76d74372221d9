"""Lefschetz pencils from Dehn-twist factorizations.

Subpackages and modules, bottom-up: ``surfaces`` (curves and words),
``symplectic`` (the Sp(2g, Z) shadow), ``factorizations`` (moves),
``invariants`` (e, sigma, c_1^2, chi_h and predicates), ``groups``
(presentations, abelian certificates) and ``catalog``/``dsl``/``cli``.
"""

__version__ = "0.1.0"
