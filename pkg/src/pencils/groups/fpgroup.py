"""Finitely presented groups read off from vanishing-cycle words."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..surfaces import FreeWord, Surface
from .snf import AbelianInvariants, invariants_of_relations


def surface_relator(g: int) -> FreeWord:
    return FreeWord.parse(" ".join(f"[a{i},b{i}]" for i in range(1, g + 1)))


@dataclass(frozen=True)
class FPGroup:
    generators: tuple[str, ...]
    relators: tuple[FreeWord, ...]
    labels: tuple[str, ...] = ()
    complete: bool = True
    missing: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.labels and len(self.labels) != len(self.relators):
            raise ValueError("one label per relator")
        for r in self.relators:
            bad = r.symbols() - set(self.generators)
            if bad:
                raise ValueError(f"relator {r} uses unknown symbols {sorted(bad)}")

    @classmethod
    def surface_group(cls, g: int) -> "FPGroup":
        s = Surface(g)
        return cls(tuple(s.generators), (surface_relator(g),), ("surface",))

    def exponent_matrix(self) -> list[list[int]]:
        idx = {s: k for k, s in enumerate(self.generators)}
        rows = []
        for r in self.relators:
            row = [0] * len(self.generators)
            for s, e in r.letters:
                row[idx[s]] += e
            rows.append(row)
        return rows

    def __str__(self):
        rel = ", ".join(str(r) or "1" for r in self.relators)
        return f"< {', '.join(self.generators)} | {rel} >"


def presentation(f, base_points: int, *, partial: bool = False,
                 include=None) -> FPGroup:
    """pi_1 of the total space from the twist words of f.

    Relators: the surface relation and one word per word-bearing twist (or
    per twist accepted by ``include``).  Twists without a word make the
    presentation partial; so does the absence of a section (no base points).
    """
    g = f.surface.genus
    rels = [surface_relator(g)]
    labels = ["surface"]
    missing = []
    seen = set()
    for t in f.twists:
        if include is not None and not include(t):
            if t.name not in missing:
                missing.append(t.name)
            continue
        if t.name in seen:
            continue
        seen.add(t.name)
        w = t.word
        if w is None:
            missing.append(t.name)
            continue
        w = FreeWord(tuple((s, e) for s, e in w.letters if not s.startswith("d")))
        rels.append(w)
        labels.append(t.name)
    complete = not missing and base_points > 0
    if not complete and not partial:
        raise ValueError(
            "presentation is partial (twists without words: "
            f"{', '.join(missing) or 'none'}; base points: {base_points}); pass partial=True")
    return FPGroup(tuple(Surface(g).generators), tuple(rels), tuple(labels),
                   complete, tuple(missing))


def abelianization(G: FPGroup) -> AbelianInvariants:
    return invariants_of_relations(G.exponent_matrix(), len(G.generators))


def h1_rows(f) -> list[list[int]]:
    """Homology classes of all vanishing cycles, after any conjugation."""
    return [list(t.homology.coeffs) for t in f.twists]


def h1_pipeline(f) -> AbelianInvariants:
    """H_1 of the total space: Z^{2g} modulo the vanishing-cycle classes."""
    return invariants_of_relations(h1_rows(f), f.surface.rank)
