"""Signed Dehn-twist factorizations and the moves that rewrite them.

A Factorization records the word t_1^{e_1} ... t_k^{e_k} (composition order,
rightmost applied first) together with the boundary multi-twist it equals.
Besides the twists it carries the commutation facts that the moves are
allowed to use:

* ``disjoint``: unordered pairs of curve names declared disjoint;
* ``commutes``: (block label, curve name) pairs declaring that the product
  of a whole block of twists commutes with the twist along that curve.

These facts cannot be derived from homology, so they are data.  Every move
that relies on them also checks the Sp-level shadow of the claim.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Optional, Sequence

from .surfaces import (Curve, FreeWord, HomologyClass, Surface, SurfaceError,
                       abelianize_word, intersection)
from . import symplectic as sp


class FactorizationError(ValueError):
    """A move or construction whose precondition fails."""


# ------------------------------------------------------------------ twists

@dataclass(frozen=True)
class ConjugationWord:
    """phi = t_{c_1}^{e_1} ... t_{c_k}^{e_k}; acts on curves rightmost first."""

    factors: tuple[tuple[Curve, int], ...] = ()

    @property
    def curves(self) -> list[Curve]:
        return [c for c, _ in self.factors]

    def is_identity(self) -> bool:
        return all(e == 0 or not c.homology for c, e in self.factors)

    def apply(self, x: HomologyClass) -> HomologyClass:
        for c, e in reversed(self.factors):
            x = sp.transvect(c.homology, e, x)
        return x

    def matrix(self, g: int) -> sp.SpMatrix:
        return sp.word_product(((c.homology, e) for c, e in self.factors), g)

    def then(self, inner: "ConjugationWord") -> "ConjugationWord":
        """self composed after inner: x -> self(inner(x))."""
        return ConjugationWord(self.factors + inner.factors)

    def __str__(self):
        return " ".join(c.name if e == 1 else f"{c.name}^{e}" for c, e in self.factors)


@dataclass(frozen=True)
class Twist:
    curve: Curve
    exponent: int = 1
    conj: Optional[ConjugationWord] = None
    block: Optional[str] = None

    def __post_init__(self):
        if self.exponent == 0:
            raise FactorizationError(f"zero exponent on {self.curve.name}")

    @property
    def name(self) -> str:
        if self.conj is None:
            return self.curve.name
        return f"{self.curve.name}^({self.conj})"

    @property
    def homology(self) -> HomologyClass:
        if self.conj is None:
            return self.curve.homology
        return self.conj.apply(self.curve.homology)

    @property
    def separating(self) -> bool:
        return self.curve.separating

    @property
    def word(self) -> Optional[FreeWord]:
        return self.curve.word if self.conj is None else None

    def with_exponent(self, e: int) -> "Twist":
        return replace(self, exponent=e)

    def __str__(self):
        s = self.name if self.exponent > 0 else "~" + self.name
        return s if abs(self.exponent) == 1 else f"{s}^{abs(self.exponent)}"


Pair = frozenset


def _pairs(pairs: Iterable[Sequence[str]]) -> frozenset:
    out = set()
    for p in pairs:
        p = tuple(p)
        if len(p) != 2:
            raise FactorizationError(f"disjointness needs two names, got {p}")
        out.add(frozenset(p))
    return frozenset(out)


@dataclass(frozen=True)
class Factorization:
    surface: Surface
    twists: tuple[Twist, ...] = ()
    target: tuple[int, ...] = ()
    disjoint: frozenset = frozenset()
    commutes: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(self.twists))
        object.__setattr__(self, "target", tuple(sorted(self.target)))
        seen: dict[str, HomologyClass] = {}
        for t in self.twists:
            if len(t.curve.homology) != self.surface.rank:
                raise SurfaceError(
                    f"curve {t.curve.name} has a rank-{len(t.curve.homology)} class "
                    f"on {self.surface}")
            h = t.homology
            if seen.setdefault(t.name, h) != h:
                raise FactorizationError(f"two different curves named {t.name}")
        for i in self.target:
            if not 1 <= i <= self.surface.boundary_count:
                raise FactorizationError(f"target boundary d{i} not on {self.surface}")

    # -- bookkeeping
    @property
    def length(self) -> int:
        return sum(abs(t.exponent) for t in self.twists)

    def __len__(self):
        return len(self.twists)

    def curves(self) -> dict[str, Twist]:
        out: dict[str, Twist] = {}
        for t in self.twists:
            out.setdefault(t.name, t)
        return out

    def declared_disjoint(self, x: str, y: str) -> bool:
        return x == y or frozenset((x, y)) in self.disjoint

    def declare(self, disjoint: Iterable[Sequence[str]] = (),
                commutes: Iterable[tuple[str, str]] = ()) -> "Factorization":
        return replace(self, disjoint=self.disjoint | _pairs(disjoint),
                       commutes=self.commutes | frozenset(tuple(c) for c in commutes))

    def blocks(self) -> dict[str, list[int]]:
        out: dict[str, list[int]] = {}
        for k, t in enumerate(self.twists):
            if t.block is not None:
                out.setdefault(t.block, []).append(k)
        return out

    def block_twists(self, label: str) -> "Factorization":
        return replace(self, twists=tuple(t for t in self.twists if t.block == label), target=())

    def is_positive(self) -> bool:
        """Every exponent positive and no curve null-homotopic after capping."""
        for t in self.twists:
            if t.exponent <= 0:
                return False
            if t.curve.boundary_index is not None or t.curve.split_genus == 0:
                return False
            if not t.homology and not t.separating:
                return False
        return bool(self.twists)

    def __str__(self):
        tgt = " ".join(f"d{i}" for i in self.target) or "1"
        return " ".join(str(t) for t in self.twists) + f" = {tgt}"


def apply_twist_homology(t: Twist, x: HomologyClass) -> HomologyClass:
    """Picard-Lefschetz: x -> x + e<c, x> c."""
    t.homology._check(x)
    return sp.transvect(t.homology, t.exponent, x)


# ------------------------------------------------------------- normal forms

def elementary(f: Factorization) -> Factorization:
    """Expand every t^e into |e| elementary twists."""
    out = []
    for t in f.twists:
        s = 1 if t.exponent > 0 else -1
        out += [t.with_exponent(s)] * abs(t.exponent)
    return replace(f, twists=tuple(out))


def compact(f: Factorization) -> Factorization:
    """Merge runs of twists along the same curve (same block); drop zero powers."""
    out: list[Twist] = []
    for t in f.twists:
        if out and out[-1].name == t.name and out[-1].block == t.block:
            e = out[-1].exponent + t.exponent
            out.pop()
            if e:
                out.append(t.with_exponent(e))
        else:
            out.append(t)
    return replace(f, twists=tuple(out))


def tag_block(f: Factorization, start: int, stop: int, label: str) -> Factorization:
    tw = list(f.twists)
    for k in range(start, stop):
        tw[k] = replace(tw[k], block=label)
    return replace(f, twists=tuple(tw))


# ----------------------------------------------------------- Hurwitz moves

def _moved_curve(src: Twist, by: Twist, sign: int, name: Optional[str],
                 word: Optional[str], surface: Surface) -> Curve:
    """Curve t_by^{sign * e}(src) with provenance for exact inversion."""
    h = sp.transvect(by.homology, sign * by.exponent, src.homology)
    tag = "" if sign * by.exponent > 0 else "~"
    new_name = name or f"{src.name}@{tag}{by.name}"
    w = FreeWord.parse(word) if word is not None else None
    if w is not None and abelianize_word(w, surface) != h:
        raise FactorizationError(f"word {word!r} does not abelianize to {h}")
    return Curve(new_name, h, src.separating, w, None, src.curve.split_genus,
                 f"Hurwitz image of {src.name} under {tag}{by.name}",
                 origin=(src, by.name, sign * by.exponent))


def hurwitz_move(f: Factorization, i: int, direction: str = "right", *,
                 name: Optional[str] = None, word: Optional[str] = None) -> Factorization:
    """Rewrite twists i, i+1 (0-based).

    right: (t_a, t_b) -> (t_{t_a(b)}, t_a);  left: (t_a, t_b) -> (t_b, t_{t_b^{-1}(a)}).
    Declared-disjoint pairs just swap.  ``name``/``word`` label the new curve.
    """
    if not 0 <= i < len(f.twists) - 1:
        raise FactorizationError(f"Hurwitz index {i} out of range for length {len(f.twists)}")
    a, b = f.twists[i], f.twists[i + 1]
    if abs(a.exponent) != 1 or abs(b.exponent) != 1:
        raise FactorizationError("Hurwitz moves need elementary twists; call elementary() first")
    if f.declared_disjoint(a.curve.name, b.curve.name) and a.conj is None and b.conj is None:
        new = (b, a)
    elif direction == "right":
        if b.curve.origin is not None and b.curve.origin[1:] == (a.name, -a.exponent):
            moved = b.curve.origin[0]
            new = (replace(moved, exponent=b.exponent, block=b.block), a)
        else:
            c = _moved_curve(b, a, +1, name, word, f.surface)
            new = (Twist(c, b.exponent, None, b.block), a)
    elif direction == "left":
        if a.curve.origin is not None and a.curve.origin[1:] == (b.name, b.exponent):
            moved = a.curve.origin[0]
            new = (b, replace(moved, exponent=a.exponent, block=a.block))
        else:
            c = _moved_curve(a, b, -1, name, word, f.surface)
            new = (b, Twist(c, a.exponent, None, a.block))
    else:
        raise FactorizationError(f"unknown direction {direction!r}")
    tw = list(f.twists)
    tw[i:i + 2] = new
    return replace(f, twists=tuple(tw))


# --------------------------------------------------------- commutation checks

def _commutes_with(f: Factorization, lo: int, hi: int, t: Twist) -> Optional[str]:
    """Reason why twists[lo:hi] may be moved across t, or None.

    Each interior twist must be along t's curve, be declared disjoint from it,
    or belong to a block lying wholly inside the interval and declared to
    commute with t's curve.
    """
    blocks = f.blocks()
    for k in range(lo, hi):
        u = f.twists[k]
        if u.name == t.name or f.declared_disjoint(u.name, t.name):
            continue
        if u.block is not None and (u.block, t.name) in f.commutes:
            idx = blocks[u.block]
            if lo <= idx[0] and idx[-1] < hi:
                continue
            return f"block {u.block} is not wholly between the twists"
        return f"{u.name} is not declared disjoint from {t.name}"
    return None


def _sp_commutes(f: Factorization, lo: int, hi: int, t: Twist) -> bool:
    g = f.surface.genus
    M = sp.word_product(((u.homology, u.exponent) for u in f.twists[lo:hi]), g)
    T = sp.transvection(t.homology, 1)
    return (M @ T) == (T @ M)


def cancel_opposite_pair(f: Factorization, i: int, j: int) -> Factorization:
    """Cancel t_c^{e} ... t_c^{-e'} across a commuting interior."""
    if i > j:
        i, j = j, i
    n = len(f.twists)
    if not (0 <= i < j < n):
        raise FactorizationError(f"indices {i}, {j} out of range")
    a, b = f.twists[i], f.twists[j]
    if a.name != b.name or a.homology != b.homology:
        raise FactorizationError(f"{a.name} and {b.name} are different curves")
    if (a.exponent > 0) == (b.exponent > 0):
        raise FactorizationError(f"exponents {a.exponent}, {b.exponent} are not opposite")
    why = _commutes_with(f, i + 1, j, a)
    if why is not None:
        raise FactorizationError(f"cannot cancel {a.name}: {why}")
    if not _sp_commutes(f, i + 1, j, a):
        raise FactorizationError(f"cannot cancel {a.name}: interior does not commute in Sp")
    k = min(abs(a.exponent), abs(b.exponent))
    tw = list(f.twists)
    ea = a.exponent - k * (1 if a.exponent > 0 else -1)
    eb = b.exponent - k * (1 if b.exponent > 0 else -1)
    tw[j] = b.with_exponent(eb) if eb else None
    tw[i] = a.with_exponent(ea) if ea else None
    return replace(f, twists=tuple(t for t in tw if t is not None))


def slide_twist(f: Factorization, i: int, j: int) -> Factorization:
    """Move twist i so that it ends at index j, across commuting twists."""
    t = f.twists[i]
    lo, hi = (i + 1, j + 1) if j > i else (j, i)
    if j == i:
        return f
    why = _commutes_with(f, lo, hi, t)
    if why is not None:
        raise FactorizationError(f"cannot slide {t.name}: {why}")
    if not _sp_commutes(f, lo, hi, t):
        raise FactorizationError(f"cannot slide {t.name}: no Sp commutation")
    tw = list(f.twists)
    tw.pop(i)
    tw.insert(j, t)
    return replace(f, twists=tuple(tw))


# ------------------------------------------------------- partial conjugation

def partial_conjugate(f: Factorization, start: int, stop: int, phi: ConjugationWord,
                      label: str = "phi") -> Factorization:
    """Replace the factor twists[start:stop] by its conjugate under phi.

    A twist whose curve is declared disjoint from every curve of phi is left
    as it is (words kept); any other twist records phi and loses its word.
    """
    if not 0 <= start <= stop <= len(f.twists):
        raise FactorizationError(f"range {start}:{stop} out of bounds")
    g = f.surface.genus
    for c in phi.curves:
        if len(c.homology) != f.surface.rank:
            raise SurfaceError(f"conjugating curve {c.name} is not on {f.surface}")
    M = sp.word_product(((t.homology, t.exponent) for t in f.twists[start:stop]), g)
    Phi = phi.matrix(g)
    if Phi @ M @ Phi.inverse() != M:
        raise FactorizationError(
            f"factor does not commute with phi in Sp:\nfactor=\n{M}\nphi=\n{Phi}")
    # the identity still relabels blocks, so a conjugated copy stays distinct
    trivial = not any(k for _, k in phi.factors)
    pnames = [c.name for c, k in phi.factors if k]

    def fixed(name: str) -> bool:
        return trivial or all(f.declared_disjoint(name, p) for p in pnames)

    for t in f.twists[start:stop]:
        if t.conj is None and fixed(t.curve.name) and not trivial:
            for c in phi.curves:
                if intersection(c.homology, t.homology):
                    raise FactorizationError(
                        f"{t.name} is declared disjoint from {c.name} but meets it in homology")

    tw = list(f.twists)
    renamed_blocks: dict[str, str] = {}
    renamed: dict[str, str] = {}
    for k in range(start, stop):
        t = tw[k]
        blk = t.block
        if fixed(t.curve.name) and t.conj is None:
            if trivial and blk is not None:
                tw[k] = replace(t, block=renamed_blocks.setdefault(blk, f"{blk}^{label}"))
            continue
        conj = phi if t.conj is None else phi.then(t.conj)
        if blk is not None:
            blk = renamed_blocks.setdefault(blk, f"{blk}^{label}")
        nt = replace(t, conj=conj, block=blk)
        renamed[t.name] = nt.name
        tw[k] = nt
    out = replace(f, twists=tuple(tw))
    # commutation facts survive for curves that phi fixes
    stable = {n for n in {t.name for t in f.twists} | {c for _, c in f.commutes}
              if fixed(n)}
    new_comm = {(renamed_blocks[b], c) for b, c in f.commutes
                if b in renamed_blocks and c in stable}
    new_disj = {(renamed[x], y) for pair in f.disjoint for x, y in (tuple(pair), tuple(pair)[::-1])
                if x in renamed and y in stable}
    return out.declare(new_disj, new_comm)


# -------------------------------------------------- embedding and gluing

@dataclass(frozen=True)
class Embedding:
    """A map Sigma_source -> Sigma_target given on named curves.

    ``curve_map`` sends each source curve name and each boundary symbol d_i to
    a target curve.  A boundary may land on a boundary of the target or on an
    interior curve (a glued or capped-off cuff).  ``block`` labels all images.
    """

    source: Surface
    target: Surface
    curve_map: Mapping[str, Curve]
    block: Optional[str] = None
    name: str = ""

    def __post_init__(self):
        for c in self.curve_map.values():
            if len(c.homology) != self.target.rank:
                raise SurfaceError(f"image curve {c.name} is not on {self.target}")

    def image(self, name: str) -> Curve:
        try:
            return self.curve_map[name]
        except KeyError:
            raise FactorizationError(f"embedding {self.name or ''} has no image for {name!r}") from None


def embed(f: Factorization, e: Embedding) -> Factorization:
    """Push f forward; boundary twists not sent to boundaries move into the word."""
    if f.surface != e.source:
        raise FactorizationError(f"factorization on {f.surface}, embedding from {e.source}")
    tw = []
    for t in f.twists:
        if t.curve.origin is not None and t.curve.name not in e.curve_map:
            raise FactorizationError(f"unmapped synthesized curve {t.curve.name}")
        c = e.image(t.curve.name)
        conj = None
        if t.conj is not None:
            conj = ConjugationWord(tuple((e.image(x.name), k) for x, k in t.conj.factors))
        tw.append(Twist(c, t.exponent, conj, e.block if e.block is not None else t.block))
    new_target = []
    for i in f.target:
        img = e.image(f"d{i}")
        if img.boundary_index is not None:
            new_target.append(img.boundary_index)
        else:
            tw.append(Twist(img, -1, None, None))
    names = {n: e.curve_map[n].name for n in e.curve_map}
    disj = {(names[x], names[y]) for p in f.disjoint for x, y in [tuple(p)]
            if x in names and y in names}
    comm = {(e.block or b, names[c]) for b, c in f.commutes if c in names}
    return Factorization(e.target, tuple(tw), tuple(new_target)).declare(disj, comm)


def concatenate(f: Factorization, g: Factorization) -> Factorization:
    """Product f g; boundary multi-twists multiply."""
    if f.surface != g.surface:
        raise FactorizationError(f"cannot concatenate {f.surface} and {g.surface}")
    return Factorization(f.surface, f.twists + g.twists, f.target + g.target,
                         f.disjoint | g.disjoint, f.commutes | g.commutes)


def cap_boundary(f: Factorization, which: Iterable[int]) -> Factorization:
    """Cap the listed boundary components; the rest are renumbered in order."""
    which = set(which)
    m = f.surface.boundary_count
    if not which <= set(range(1, m + 1)):
        raise FactorizationError(f"cannot cap {sorted(which)} on {f.surface}")
    if not which:
        return f
    keep = [i for i in range(1, m + 1) if i not in which]
    renum = {old: new for new, old in enumerate(keep, 1)}
    surf = Surface(f.surface.genus, len(keep))
    tw = []
    for t in f.twists:
        c = t.curve
        if c.boundary_index in which:
            continue
        if c.word is not None:
            used = {s for s in c.word.symbols() if s.startswith("d")}
            if any(int(s[1:]) in which for s in used):
                raise FactorizationError(f"curve {c.name} uses a capped boundary symbol")
            if used:
                w = FreeWord(tuple((f"d{renum[int(s[1:])]}" if s.startswith("d") else s, k)
                                   for s, k in c.word.letters))
                c = replace(c, word=w)
        if c.boundary_index is not None:
            c = replace(c, boundary_index=renum[c.boundary_index])
        tw.append(replace(t, curve=c))
    tgt = tuple(renum[i] for i in f.target if i not in which)
    return Factorization(surf, tuple(tw), tgt, f.disjoint, f.commutes)


def achiral_closure(f: Factorization, which: Iterable[int]) -> Factorization:
    """Move the listed target boundary twists into the word as negative twists.

    The result is a factorization of the remaining target; the moved twists are
    along boundary-parallel curves, i.e. curves that bound a disk once capped.
    """
    from .surfaces import boundary_curve
    which = list(which)
    tgt = list(f.target)
    tw = list(f.twists)
    for i in which:
        if i not in tgt:
            raise FactorizationError(f"d{i} is not in the target")
        tgt.remove(i)
        tw.append(Twist(boundary_curve(f.surface, i), -1))
    return replace(f, twists=tuple(tw), target=tuple(tgt))


def product(f: Factorization) -> sp.SpMatrix:
    return sp.product(f)
