"""Numerical invariants of Lefschetz fibrations and pencils.

Everything here is integer bookkeeping on top of a factorization: Euler
characteristic from the twist count, signature by three independent routes
(hyperelliptic formula, additivity over a decomposition, Meyer cocycle),
c_1^2 and chi_h from those, and a handful of classification predicates.

The fibration is the total space of the monodromy factorization (the
blow-up); the pencil is obtained by blowing down its m base-point sections.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from . import symplectic as sp
from .factorizations import Factorization, elementary
from .groups import AbelianInvariants, h1_pipeline

# Local contribution of a separating (or null-homologous) twist to the Meyer
# count.  Fixed once against the Matsumoto word (sigma = -4), see
# calibrate_lambda_sep, and frozen here.
LAMBDA_SEP = -1

PASS, FAIL = "PASS", "FAIL"


class InvariantError(ValueError):
    """Data inconsistent with the integrality or bound identities."""


# ------------------------------------------------------------------ counts

def euler(f: Factorization, base_points: int = 0) -> tuple[int, int]:
    """(e of the fibration, e of the pencil)."""
    if base_points < 0:
        raise ValueError("negative number of base points")
    e = 4 - 4 * f.surface.genus + f.length
    return e, e - base_points


def _split(t, g: int) -> int:
    h = t.curve.split_genus
    if h is None:
        if t.curve.boundary_index is not None:
            return 0
        if g == 2:
            return 1
        raise InvariantError(f"separating curve {t.curve.name} has no split genus")
    return min(h, g - h)


def twist_counts(f: Factorization) -> tuple[int, dict[int, int]]:
    """Signed counts: n nonseparating, s[h] separating of split genus h.

    A twist t^e counts e times, so negative twists count negatively.
    Null-homologous curves that are not marked separating (boundary-parallel
    ones) land in s[0].
    """
    g = f.surface.genus
    n = 0
    s: dict[int, int] = {}
    for t in f.twists:
        if t.separating or not t.homology:
            h = _split(t, g)
            s[h] = s.get(h, 0) + t.exponent
        else:
            n += t.exponent
    return n, {h: k for h, k in sorted(s.items()) if k}


# --------------------------------------------------------------- signature

def signature_hyperelliptic(f: Factorization) -> int:
    """Endo's formula for hyperelliptic fibrations, over exact rationals."""
    g = f.surface.genus
    if g < 1:
        raise InvariantError("hyperelliptic formula needs genus >= 1")
    n, s = twist_counts(f)
    sig = Fraction(-(g + 1), 2 * g + 1) * n
    for h, k in s.items():
        sig += (Fraction(4 * h * (g - h), 2 * g + 1) - 1) * k
    if sig.denominator != 1:
        raise InvariantError(f"hyperelliptic signature {sig} is not an integer")
    return int(sig)


@dataclass(frozen=True)
class Summand:
    """One piece of a Novikov decomposition: a factorization or a known value."""

    label: str
    factorization: Optional[Factorization] = None
    sigma: Optional[int] = None

    def value(self) -> int:
        if self.sigma is not None:
            return self.sigma
        if self.factorization is None:
            raise InvariantError(f"summand {self.label} has no computable signature")
        return signature_hyperelliptic(self.factorization)


@dataclass(frozen=True)
class Cancellation:
    """A canceled pair t_c^k t_c^-k; its piece has signature zero."""

    curve: str
    power: int = 1
    separating: bool = False

    def value(self) -> int:
        return 0


def signature_decomposition(plan: Sequence[Summand],
                            ledger: Sequence[Cancellation] = ()) -> int:
    """Sum over summands; canceled opposite pairs contribute nothing."""
    return sum(p.value() for p in plan) + sum(c.value() for c in ledger)


def meyer_sum(f: Factorization) -> tuple[int, int]:
    """(sum of tau(P_{k-1}, T_k) over elementary twists, signed separating count)."""
    g = f.surface.genus
    P = sp.SpMatrix.identity(g)
    tau = 0
    sep = 0
    for t in elementary(f).twists:
        T = sp.transvection(t.homology, t.exponent)
        tau += sp.meyer_tau(P, T)
        P = P @ T
        if t.separating or not t.homology:
            sep += t.exponent
    if not P.is_identity():
        raise InvariantError("Meyer signature needs a factorization with identity product")
    return tau, sep


def signature_meyer(f: Factorization, lambda_sep: int = LAMBDA_SEP) -> int:
    tau, sep = meyer_sum(f)
    return -tau + lambda_sep * sep


def calibrate_lambda_sep(oracle: Factorization, expected: int = -4) -> int:
    """Pick the local separating term in {0, -1} that reproduces the oracle."""
    tau, sep = meyer_sum(oracle)
    fits = [lam for lam in (0, -1) if -tau + lam * sep == expected]
    if len(fits) != 1:
        raise InvariantError(f"calibration is ambiguous or impossible: {fits}")
    return fits[0]


# ----------------------------------------------------------- obstructions

@dataclass(frozen=True)
class ObstructionVerdict:
    """Outcome of a fiber-class search; ``witness`` is (a, c_1..c_9) if found."""

    status: str                          # "NoSolution" or "Witness"
    witness: Optional[tuple[int, ...]] = None

    @property
    def obstructed(self) -> bool:
        return self.status == "NoSolution"


@lru_cache(maxsize=None)
def _squares(k: int, total: int, sq: int, bound: int) -> Optional[tuple[int, ...]]:
    """k integers in [-bound, bound] with the given sum and sum of squares."""
    if k == 0:
        return () if total == 0 and sq == 0 else None
    # Cauchy-Schwarz, size and parity pruning
    if sq < 0 or total * total > k * sq or sq > k * bound * bound or (total - sq) % 2:
        return None
    r = math.isqrt(sq)
    for c in range(min(bound, r), -min(bound, r) - 1, -1):
        rest = _squares(k - 1, total - c, sq - c * c, bound)
        if rest is not None:
            return (c,) + rest
    return None


def rational_obstruction(g: int, m: int, bound: int = 50) -> ObstructionVerdict:
    """Search fiber classes F = aH - sum c_i E_i in CP^2 # 9 (-CP^2).

    F^2 = m and the adjunction identity 2g - 2 = m - 3a + sum c_i must both
    hold; a, c_i range over [-bound, bound] with a >= 0.
    """
    if g < 2 or m < 0:
        raise ValueError("need g >= 2 and m >= 0")
    for a in range(0, bound + 1):
        sq = a * a - m
        if sq < 0:
            continue
        total = 2 * g - 2 - m + 3 * a
        cs = _squares(9, total, sq, bound)
        if cs is not None:
            return ObstructionVerdict("Witness", (a,) + cs)
    return ObstructionVerdict("NoSolution")


@dataclass(frozen=True)
class RuledVerdict:
    surface: str
    status: str                          # "Excluded" or "NotExcluded"
    witness: Optional[tuple[int, int]] = None

    @property
    def excluded(self) -> bool:
        return self.status == "Excluded"


def ruled_exclusion(g: int, self_int: int) -> dict[str, RuledVerdict]:
    """Can F = aS + bT on the ruled surfaces over T^2 be a genus-g fiber class?"""
    out = {}
    # S^2 x T^2: F^2 = 2ab, K.F = -2a
    key = "S2xT2"
    w = None
    twice_a = self_int - (2 * g - 2)
    if twice_a % 2 == 0:
        a = twice_a // 2
        if a == 0:
            w = (0, 0) if self_int == 0 else None
        elif self_int % (2 * a) == 0:
            w = (a, self_int // (2 * a))
    out[key] = RuledVerdict(key, "NotExcluded" if w else "Excluded", w)
    # twisted bundle: F^2 = b(2a + b), K.F = -2a - b
    key = "S2~T2"
    w = None
    t = self_int - (2 * g - 2)          # = 2a + b
    if t == 0:
        w = (0, 0) if self_int == 0 else None
    elif self_int % t == 0:
        b = self_int // t
        if (t - b) % 2 == 0:
            w = ((t - b) // 2, b)
    out[key] = RuledVerdict(key, "NotExcluded" if w else "Excluded", w)
    return out


def kodaira_classify(ksq: int, k_dot_omega_sign: int) -> float:
    """Symplectic Kodaira dimension of a minimal model; -inf as float('-inf')."""
    s = k_dot_omega_sign
    if s not in (-1, 0, 1):
        raise ValueError("sign must be -1, 0 or 1")
    if s < 0 or ksq < 0:
        return float("-inf")
    if s == 0:
        if ksq != 0:
            raise ValueError(f"K.w = 0 with K^2 = {ksq} is not in the table")
        return 0
    return 1 if ksq == 0 else 2


# ------------------------------------------------------------------ report

@dataclass(frozen=True)
class InvariantReport:
    genus: int
    base_points: int
    length: int
    n: int
    s: dict
    e_fib: int
    e_pencil: int
    sigma: int
    c1sq_fib: int
    c1sq_pencil: int
    chi_h: int
    b1: int
    h1: AbelianInvariants
    predicates: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.e_pencil != self.e_fib - self.base_points:
            raise InvariantError("e_pencil != e_fib - m")
        if self.c1sq_fib != 2 * self.e_fib + 3 * self.sigma:
            raise InvariantError("c1^2 != 2e + 3 sigma")
        if self.c1sq_pencil != self.c1sq_fib + self.base_points:
            raise InvariantError("c1^2 of the pencil != c1^2 + m")
        if 4 * self.chi_h != self.e_fib + self.sigma:
            raise InvariantError("chi_h is not (e + sigma)/4")
        if self.genus >= 1 and self.b1 > 2 * self.genus - 1:
            raise InvariantError(f"b1 = {self.b1} exceeds 2g - 1 = {2 * self.genus - 1}")

    @property
    def sigma_pencil(self) -> int:
        return self.sigma + self.base_points

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "base_points": self.base_points,
            "length": self.length,
            "n": self.n,
            "s": {str(h): k for h, k in self.s.items()},
            "e_fib": self.e_fib,
            "e_pencil": self.e_pencil,
            "sigma": self.sigma,
            "c1sq_fib": self.c1sq_fib,
            "c1sq_pencil": self.c1sq_pencil,
            "chi_h": self.chi_h,
            "b1": self.b1,
            "h1_rank": self.h1.rank,
            "h1_torsion": list(self.h1.torsion),
            "predicates": dict(self.predicates),
        }


def invariant_report(f: Factorization, base_points: int, *, sigma: Optional[int] = None,
                     plan: Optional[Sequence[Summand]] = None,
                     ledger: Sequence[Cancellation] = (),
                     hyperelliptic: bool = False) -> InvariantReport:
    """Assemble the report; sigma from the first available of: given value,
    decomposition plan, hyperelliptic formula, Meyer cocycle."""
    if sigma is not None:
        method = "given"
    elif plan is not None:
        sigma, method = signature_decomposition(plan, ledger), "decomposition"
    elif hyperelliptic:
        sigma, method = signature_hyperelliptic(f), "hyperelliptic"
    else:
        sigma, method = signature_meyer(f), f"meyer (lambda_sep={LAMBDA_SEP})"
    e, ep = euler(f, base_points)
    if (e + sigma) % 4:
        raise InvariantError(f"chi_h = ({e} + {sigma})/4 is not an integer")
    n, s = twist_counts(f)
    h1 = h1_pipeline(f)
    c1 = 2 * e + 3 * sigma
    g = f.surface.genus
    rep = InvariantReport(g, base_points, f.length, n, s, e, ep, sigma, c1,
                          c1 + base_points, (e + sigma) // 4, h1.rank, h1, {})
    preds = {"sigma_method": method,
             "b1_bound": PASS if g < 1 or h1.rank <= 2 * g - 1 else FAIL}
    if g >= 2:
        preds["scy"] = scy_criterion(rep).label
    return replace(rep, predicates=preds)


@dataclass(frozen=True)
class SCYVerdict:
    passed: bool
    reason: str
    base_points: Optional[int] = None
    blown_down: Optional[tuple[int, int, int]] = None
    ruled: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        return PASS if self.passed else FAIL

    def __str__(self):
        return f"{self.label}: {self.reason}"


def scy_criterion(report: InvariantReport) -> SCYVerdict:
    """Does the fibration blow down to a minimal symplectic Calabi-Yau pencil?

    c_1^2 = 2 - 2g forces K.[fiber] = 0 after blowing down m = 2g - 2
    exceptional sections, so the minimal model has K = 0 unless it is
    rational or ruled.  Those alternatives are ruled out by b_1 arithmetic
    and by the fiber-class searches.
    """
    g = report.genus
    if g < 2:
        raise ValueError("scy_criterion needs g >= 2")
    if report.c1sq_fib != 2 - 2 * g:
        return SCYVerdict(False, f"c1^2 = {report.c1sq_fib}, not 2 - 2g = {2 - 2 * g}")
    m = 2 * g - 2
    e, sig = report.e_fib - m, report.sigma + m
    down = (e, sig, 2 * e + 3 * sig)
    # a rational or ruled minimal model has b+ = 1, hence b1 = (4 - sigma - e)/2
    twice = 4 - sig - e
    ruled: dict = {}
    if twice >= 0 and twice % 4 == 0:
        b1 = twice // 2
        if b1 == 2:
            ruled = ruled_exclusion(g, m)
            if not all(v.excluded for v in ruled.values()):
                return SCYVerdict(False, "a ruled model over T^2 is not excluded", m, down, ruled)
        elif b1 == 0:
            if not rational_obstruction(g, m).obstructed:
                return SCYVerdict(False, "a rational model is not excluded", m, down)
        else:
            return SCYVerdict(False, f"b1 = {b1} ruled models are not handled", m, down)
    return SCYVerdict(True, f"blows down to a minimal SCY with {m} base points", m, down, ruled)
