"""Surfaces, homology lattices, free-group words and named curves.

The homology lattice of a genus-g surface is Z^{2g} in the basis order
(a1, b1, a2, b2, ..., ag, bg) with the standard symplectic pairing
<a_i, b_i> = 1.  Boundary components carry no homology coordinates: the
lattice is always the one of the capped (closed) surface.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


class SurfaceError(ValueError):
    """Raised on dimension mismatches and malformed words or curves."""


@dataclass(frozen=True)
class Surface:
    genus: int
    boundary_count: int = 0

    def __post_init__(self):
        if self.genus < 0 or self.boundary_count < 0:
            raise SurfaceError(f"invalid surface ({self.genus}, {self.boundary_count})")

    @property
    def rank(self) -> int:
        return 2 * self.genus

    @property
    def generators(self) -> list[str]:
        """pi_1 generator symbols a1, b1, ..., ag, bg."""
        out = []
        for i in range(1, self.genus + 1):
            out += [f"a{i}", f"b{i}"]
        return out

    @property
    def boundary_symbols(self) -> list[str]:
        return [f"d{i}" for i in range(1, self.boundary_count + 1)]

    @property
    def alphabet(self) -> list[str]:
        return self.generators + self.boundary_symbols

    def zero(self) -> "HomologyClass":
        return HomologyClass((0,) * self.rank)

    def basis(self, symbol: str) -> "HomologyClass":
        """Homology class of a generator symbol; boundary symbols map to 0."""
        if symbol in self.boundary_symbols:
            return self.zero()
        try:
            k = self.generators.index(symbol)
        except ValueError:
            raise SurfaceError(f"unknown generator {symbol!r} on genus {self.genus}") from None
        coeffs = [0] * self.rank
        coeffs[k] = 1
        return HomologyClass(tuple(coeffs))

    def homology(self, **coeffs: int) -> "HomologyClass":
        """Convenience constructor: ``S.homology(a1=1, b3=-1)``."""
        x = self.zero()
        for sym, c in coeffs.items():
            x = x + c * self.basis(sym)
        return x

    def __str__(self):
        return f"Sigma_{self.genus}^{self.boundary_count}"


@dataclass(frozen=True)
class HomologyClass:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) % 2:
            raise SurfaceError("homology vector must have even length")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def genus(self) -> int:
        return len(self.coeffs) // 2

    def _check(self, other: "HomologyClass"):
        if len(self.coeffs) != len(other.coeffs):
            raise SurfaceError(
                f"dimension mismatch: {len(self.coeffs)} vs {len(other.coeffs)}")

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        self._check(other)
        return HomologyClass(tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "HomologyClass") -> "HomologyClass":
        return self + (-other)

    def __neg__(self) -> "HomologyClass":
        return HomologyClass(tuple(-x for x in self.coeffs))

    def __rmul__(self, k: int) -> "HomologyClass":
        return HomologyClass(tuple(k * x for x in self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                sym = f"{'ab'[k % 2]}{k // 2 + 1}"
                terms.append(f"{c:+d}{sym}" if abs(c) != 1 else f"{'+' if c > 0 else '-'}{sym}")
        return " ".join(terms).lstrip("+") or "0"


def intersection(x: HomologyClass, y: HomologyClass) -> int:
    """Algebraic intersection <x, y> under the standard symplectic form."""
    x._check(y)
    c, d = x.coeffs, y.coeffs
    return sum(c[2 * i] * d[2 * i + 1] - c[2 * i + 1] * d[2 * i] for i in range(len(c) // 2))


# ---------------------------------------------------------------- free words

_TOKEN = re.compile(r"\[([^\]]*)\]|(~?)([A-Za-z]\d+)(?:\^(-?\d+))?|(\S)")


@dataclass(frozen=True)
class FreeWord:
    """Freely reduced word, stored as ((symbol, +-1), ...)."""

    letters: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        out: list[tuple[str, int]] = []
        for sym, e in self.letters:
            if e not in (1, -1):
                raise SurfaceError(f"letter exponent must be +-1, got {e}")
            if out and out[-1] == (sym, -e):
                out.pop()
            else:
                out.append((sym, e))
        object.__setattr__(self, "letters", tuple(out))

    @classmethod
    def parse(cls, text: str) -> "FreeWord":
        """Parse ``"a1 ~b1^3 [a2,b2] b1"``; ``~`` inverts, ``[x,y] = x y ~x ~y``."""
        letters: list[tuple[str, int]] = []
        for m in _TOKEN.finditer(text):
            comm, tilde, sym, power, junk = m.groups()
            if junk is not None:
                raise SurfaceError(f"unexpected character {junk!r} in word {text!r}")
            if comm is not None:
                parts = [p.strip() for p in comm.split(",")]
                if len(parts) != 2:
                    raise SurfaceError(f"bad commutator [{comm}]")
                x, y = cls.parse(parts[0]), cls.parse(parts[1])
                letters += (x * y * x.inverse() * y.inverse()).letters
                continue
            e = -1 if tilde else 1
            n = int(power) if power is not None else 1
            if n < 0:
                e, n = -e, -n
            letters += [(sym, e)] * n
        return cls(tuple(letters))

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((s, -e) for s, e in reversed(self.letters)))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def symbols(self) -> set[str]:
        return {s for s, _ in self.letters}

    def __str__(self):
        return " ".join(("~" if e < 0 else "") + s for s, e in self.letters)


def abelianize_word(w: FreeWord, surface: Surface) -> HomologyClass:
    """Exponent-sum vector of w (boundary symbols contribute nothing)."""
    x = surface.zero()
    for sym, e in w.letters:
        if sym not in surface.alphabet:
            raise SurfaceError(f"symbol {sym!r} not in the alphabet of {surface}")
        x = x + e * surface.basis(sym)
    return x


# -------------------------------------------------------------------- curves

@dataclass(frozen=True)
class Curve:
    """A named simple closed curve, known through its homological and pi_1 shadows.

    ``split_genus`` is the genus of the smaller side of a separating curve (0 for
    a curve that bounds a disk after capping).  ``origin`` records how a curve
    produced by a twist was made: (parent curve, twisting curve name, sign).
    """

    name: str
    homology: HomologyClass
    separating: bool = False
    word: Optional[FreeWord] = None
    boundary_index: Optional[int] = None
    split_genus: Optional[int] = None
    provenance: str = field(default="", compare=False)
    origin: Optional[tuple["Curve", str, int]] = field(default=None, compare=False, repr=False)

    @property
    def genus(self) -> int:
        return self.homology.genus

    def negated(self) -> "Curve":
        """Same curve with the opposite orientation."""
        from dataclasses import replace
        return replace(self, homology=-self.homology,
                       word=self.word.inverse() if self.word is not None else None)


def make_curve(surface: Surface, name: str, word: str | None = None, *,
               homology: HomologyClass | Sequence[int] | None = None,
               separating: bool = False, split_genus: int | None = None,
               boundary_index: int | None = None, provenance: str = "") -> Curve:
    """Build a curve; the homology defaults to the abelianized word."""
    w = FreeWord.parse(word) if word is not None else None
    if homology is None:
        if w is None:
            if not separating:
                raise SurfaceError(f"curve {name}: need a word or a homology class")
            hom = surface.zero()
        else:
            hom = abelianize_word(w, surface)
    else:
        hom = homology if isinstance(homology, HomologyClass) else HomologyClass(tuple(homology))
    return Curve(name, hom, separating, w, boundary_index, split_genus, provenance)


def boundary_curve(surface: Surface, i: int) -> Curve:
    return Curve(f"d{i}", surface.zero(), True, None, i, 0, "boundary parallel")


@dataclass
class ValidationReport:
    curve: str
    failures: list[str]

    @property
    def valid(self) -> bool:
        return not self.failures

    def __str__(self):
        if self.valid:
            return f"{self.curve}: ok"
        return f"{self.curve}: " + "; ".join(self.failures)


def validate_curve(c: Curve, surface: Surface | None = None) -> ValidationReport:
    """Check the internal consistency of a curve's data; never raises."""
    failures = []
    if surface is not None and len(c.homology) != surface.rank:
        failures.append(f"homology has length {len(c.homology)}, expected {surface.rank}")
    if c.separating and c.homology:
        failures.append(f"separating curve with nonzero homology {c.homology}")
    if c.boundary_index is not None and not c.separating:
        failures.append("boundary-parallel curve not flagged separating")
    if c.split_genus is not None and not c.separating:
        failures.append("split genus given for a nonseparating curve")
    if c.word is not None:
        s = surface or Surface(c.genus, 0)
        try:
            ab = abelianize_word(c.word, s)
        except SurfaceError as exc:
            failures.append(str(exc))
        else:
            if ab != c.homology:
                failures.append(f"word abelianizes to {ab}, homology says {c.homology}")
    return ValidationReport(c.name, failures)


def homology_span_rows(curves: Iterable[Curve]) -> list[list[int]]:
    return [list(c.homology.coeffs) for c in curves]
