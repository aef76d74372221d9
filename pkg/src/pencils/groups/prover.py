"""Bounded search for proofs that a finitely presented group is abelian.

For each pair of generators x, y we look for a derivation of [x, y] = 1:
starting from the cyclic word x y x^-1 y^-1 we repeatedly

* rotate the word (conjugation),
* insert a relator, its inverse or a cyclic permutation of either, and
* freely reduce,

until the word is empty.  Insertion is only ever done at the front of a
rotated word, where it has the effect of replacing a piece u of a relator
r = u v by v^-1.  The search is best-first on a weighted word length.

Proven commutators become lemmas that later searches may insert; a lemma
proof may only use earlier lemmas, so replaying lemmas in order checks the
whole certificate.  A failed search returns Inconclusive, never a false
positive.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from ..surfaces import FreeWord
from .fpgroup import FPGroup

Word = tuple[int, ...]

DEFAULT_MAX_LENGTH = 64
DEFAULT_MAX_NODES = 1_000_000
_SLICE = 100  # nodes per search per round-robin turn
_DEPTH_DIV = 2  # one weight unit of penalty per this many steps


class TraceError(ValueError):
    pass


def _inv(w: Word) -> Word:
    return tuple(-x for x in reversed(w))


def free_reduce(w: Sequence[int]) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _canonical(w: Word) -> Word:
    """Least rotation; only rotations starting at the least letter compete."""
    if not w:
        return w
    m = min(w)
    i = w.index(m)
    if w.count(m) == 1:
        return w[i:] + w[:i]
    return min(w[i:] + w[:i] for i, x in enumerate(w) if x == m)


@dataclass(frozen=True)
class Step:
    """One elementary step.

    kind "rotate": move the first ``arg`` letters to the end.
    kind "insert": put source word ``ref`` at the front, where ref is
      (pool, index, rotation, inverted) and pool is "R" (relator) or "L" (lemma).
    kind "reduce": free reduction.
    """

    kind: str
    arg: int = 0
    ref: Optional[tuple[str, int, int, bool]] = None

    def serialize(self) -> str:
        if self.kind == "insert":
            pool, idx, rot, inv = self.ref
            return f"insert 0 {pool}{idx} rot={rot} inv={int(inv)}"
        if self.kind == "rotate":
            return f"rotate {self.arg}"
        return "reduce"

    @classmethod
    def parse(cls, line: str) -> "Step":
        parts = line.split()
        if not parts:
            raise TraceError("empty trace line")
        if parts[0] == "reduce" and len(parts) == 1:
            return cls("reduce")
        if parts[0] == "rotate" and len(parts) == 2:
            return cls("rotate", int(parts[1]))
        if parts[0] == "insert" and len(parts) == 5:
            src = parts[2]
            rot = int(parts[3].split("=")[1])
            inv = bool(int(parts[4].split("=")[1]))
            return cls("insert", int(parts[1]), (src[0], int(src[1:]), rot, inv))
        raise TraceError(f"bad trace line {line!r}")


@dataclass(frozen=True)
class Lemma:
    word: Word
    steps: tuple[Step, ...]
    label: str


@dataclass
class ProofVerdict:
    status: str                      # "Proven" or "Inconclusive"
    generators: tuple[str, ...]
    lemmas: list[Lemma] = field(default_factory=list)
    unproven: list[tuple[str, str]] = field(default_factory=list)
    nodes: int = 0

    @property
    def proven(self) -> bool:
        return self.status == "Proven"

    def serialize(self) -> str:
        """Line-based certificate: one block per lemma."""
        out = [f"generators {' '.join(self.generators)}"]
        for k, lem in enumerate(self.lemmas):
            out.append(f"lemma L{k} {lem.label} : {' '.join(map(str, lem.word))}")
            out += ["  " + s.serialize() for s in lem.steps]
            out.append("qed")
        return "\n".join(out) + "\n"


def _encode(w: FreeWord, gens: Sequence[str]) -> Word:
    idx = {g: k + 1 for k, g in enumerate(gens)}
    return tuple(idx[s] * e for s, e in w.letters)


def _source_word(ref: tuple[str, int, int, bool], relators: Sequence[Word],
                 lemmas: Sequence[Lemma]) -> Word:
    pool, idx, rot, inv = ref
    base = relators[idx] if pool == "R" else lemmas[idx].word
    w = _inv(base) if inv else base
    if not w:
        return w
    rot %= len(w)
    return w[rot:] + w[:rot]


def replay(start: Word, steps: Iterable[Step], relators: Sequence[Word],
           lemmas: Sequence[Lemma]) -> Word:
    """Execute steps from ``start``; returns the final word."""
    w = tuple(start)
    for s in steps:
        if s.kind == "rotate":
            if w:
                k = s.arg % len(w)
                w = w[k:] + w[:k]
        elif s.kind == "insert":
            pool, idx = s.ref[0], s.ref[1]
            if pool == "R" and not 0 <= idx < len(relators):
                raise TraceError(f"no relator R{idx}")
            if pool == "L" and not 0 <= idx < len(lemmas):
                raise TraceError(f"lemma L{idx} used before it is proven")
            if pool not in "RL":
                raise TraceError(f"unknown pool {pool}")
            w = _source_word(s.ref, relators, lemmas) + w[s.arg:] if s.arg == 0 else \
                w[:s.arg] + _source_word(s.ref, relators, lemmas) + w[s.arg:]
        elif s.kind == "reduce":
            w = free_reduce(w)
        else:
            raise TraceError(f"unknown step {s.kind}")
    return w


def check_certificate(G: FPGroup, verdict: ProofVerdict) -> bool:
    """Replay every lemma in order; each must reach the empty word."""
    relators = [_encode(r, G.generators) for r in G.relators]
    done: list[Lemma] = []
    for lem in verdict.lemmas:
        if replay(lem.word, lem.steps, relators, done):
            return False
        done.append(lem)
    if verdict.proven:
        n = len(G.generators)
        need = {_commutator(i, j) for i in range(n) for j in range(i + 1, n)}
        have = {lem.word for lem in done}
        return need <= have
    return True


def parse_certificate(text: str) -> tuple[tuple[str, ...], list[Lemma]]:
    lines = [ln.rstrip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("generators"):
        raise TraceError("certificate must start with a generators line")
    gens = tuple(lines[0].split()[1:])
    lemmas: list[Lemma] = []
    k = 1
    while k < len(lines):
        head = lines[k]
        if not head.startswith("lemma"):
            raise TraceError(f"expected lemma at line {k + 1}")
        label = head.split()[2]
        word = tuple(int(x) for x in head.split(":", 1)[1].split())
        steps = []
        k += 1
        while k < len(lines) and lines[k].strip() != "qed":
            steps.append(Step.parse(lines[k].strip()))
            k += 1
        k += 1
        lemmas.append(Lemma(word, tuple(steps), label))
    return gens, lemmas


def _commutator(i: int, j: int) -> Word:
    return (i + 1, j + 1, -(i + 1), -(j + 1))


class _Pool:
    """Index from relator pieces u to the replacements v^-1 (r = u v)."""

    def __init__(self, max_growth: int, weights: Optional[dict[int, int]] = None):
        self.max_growth = max_growth
        self.weights = weights
        self.index: dict[Word, list[tuple[Word, tuple[str, int, int, bool], int, int]]] = {}
        self.max_piece = 0

    def add(self, pool: str, idx: int, word: Word):
        seen = set()
        for inv in (False, True):
            w = _inv(word) if inv else word
            L = len(w)
            for rot in range(L):
                r = w[rot:] + w[:rot]
                if r in seen:
                    continue
                seen.add(r)
                for s in range(1, L + 1):
                    u, v = r[:s], r[s:]
                    if len(v) - len(u) > self.max_growth:
                        continue
                    # inserting (u v)^-1 = v^-1 u^-1 in front of u... turns u into v^-1
                    ins_rot, ins_inv = _inverse_ref(len(w), rot, s, inv)
                    vi = _inv(v)
                    wts = self.weights
                    wu = sum(wts.get(x, 1) for x in u) if wts else len(u)
                    wr = sum(wts.get(x, 1) for x in vi) if wts else len(vi)
                    self.index.setdefault(u, []).append((vi, (pool, idx, ins_rot, ins_inv), wu, wr))
                    self.max_piece = max(self.max_piece, s)


def _inverse_ref(L: int, rot: int, s: int, inv: bool) -> tuple[int, bool]:
    """Reference for (u v)^-1 where u v = rotation ``rot`` of base^{inv}.

    (u v)^-1 = v^-1 u^-1 is a rotation of base^{not inv}.  If w = base^{inv}
    and r = w[rot:] + w[:rot], then r^-1 = (w^-1) rotated by (L - rot) % L,
    and v^-1 u^-1 is r^-1 rotated by (L - s) % L... we compute directly.
    """
    # r^-1 rotated so that it starts with v^-1: r^-1 = u^-1 ... no: r^-1 = v^-1 u^-1.
    # r^-1 = (w^-1) rotated by (L - rot) % L.
    return (L - rot) % L, not inv


def _weight(w: Word, weights: dict[int, int]) -> int:
    return sum(map(weights.__getitem__, w))


class _Search:
    """Resumable best-first search for a derivation of ``start`` = 1.

    Edges are stored as (rotation, ref, cyclic reductions) and turned into
    Steps only when a proof is found.
    """

    def __init__(self, start: Word, pool: _Pool, max_length: int, weights: dict[int, int]):
        self.pool = pool
        self.max_length = max_length
        self.weights = weights
        start = free_reduce(start)
        self.counter = itertools.count()
        self.heap = [(_weight(start, weights), 0, next(self.counter), start)]
        self.parents: dict[Word, tuple[Optional[Word], Optional[tuple]]] = {start: (None, None)}
        self.seen = {_canonical(start)}
        self.nodes = 0
        self.steps: Optional[list[Step]] = None

    @property
    def exhausted(self) -> bool:
        return not self.heap

    def _trace(self, w: Word) -> list[Step]:
        steps: list[Step] = []
        cur: Optional[Word] = w
        while True:
            prev, edge = self.parents[cur]
            if prev is None:
                return steps
            i, ref, cycl = edge
            st = [Step("rotate", i)] if i else []
            st += [Step("insert", 0, ref), Step("reduce")]
            st += [Step("rotate", 1), Step("reduce")] * cycl
            steps[:0] = st
            cur = prev

    def run(self, budget: int) -> Optional[list[Step]]:
        """Expand at most ``budget`` nodes; return the proof once found."""
        heap, parents, seen = self.heap, self.parents, self.seen
        index, max_piece = self.pool.index, self.pool.max_piece
        weights, max_length = self.weights, self.max_length
        push, pop = heapq.heappush, heapq.heappop
        stop = self.nodes + budget
        while heap and self.nodes < stop:
            _, depth, _, w = pop(heap)
            self.nodes += 1
            if not w:
                self.steps = self._trace(w)
                return self.steps
            n = len(w)
            ww = w + w
            wt = _weight(w, weights)
            d1 = depth + 1
            pen = d1 // _DEPTH_DIV
            for i in range(n):
                for ell in range(1, min(max_piece, n) + 1):
                    entries = index.get(ww[i:i + ell])
                    if not entries:
                        continue
                    rest = ww[i + ell:i + n]
                    lr = len(rest)
                    for repl, ref, wu, wr in entries:
                        # both halves are reduced, so cancellation happens at the seam only
                        a, b = len(repl), 0
                        while a and b < lr and repl[a - 1] == -rest[b]:
                            a -= 1
                            b += 1
                        new = repl[:a] + rest[b:]
                        cycl = 0
                        while len(new) > 1 and new[0] == -new[-1]:
                            new = new[1:-1]
                            cycl += 1
                        if len(new) > max_length:
                            continue
                        key = _canonical(new)
                        if key in seen:
                            continue
                        seen.add(key)
                        parents[new] = (w, (i, ref, cycl))
                        cw = wt - wu + wr
                        if b or cycl:
                            cw = _weight(new, weights)
                        push(heap, (cw + pen, d1, next(self.counter), new))
        return None


def _search(start: Word, pool: _Pool, max_length: int, max_nodes: int,
            weights: dict[int, int]) -> tuple[Optional[list[Step]], int]:
    s = _Search(start, pool, max_length, weights)
    return s.run(max_nodes), s.nodes


def _elimination_weights(G: FPGroup) -> dict[int, int]:
    """Heavier weights for generators a relator expresses through the others.

    Greedy Tietze plan: a generator occurring exactly once in some relator
    can be eliminated; such generators cost more so the search prefers to
    rewrite them away.
    """
    words = [_encode(r, G.generators) for r in G.relators]
    eliminated: set[int] = set()
    weights: dict[int, int] = {}
    n = len(G.generators)
    for _ in range(n):
        best = None
        for w in words:
            for gen in {abs(x) for x in w} - eliminated:
                if sum(1 for x in w if abs(x) == gen) == 1:
                    cand = (len(w), gen)
                    if best is None or cand < best:
                        best = cand
        if best is None or len(eliminated) >= n - 1:
            break
        eliminated.add(best[1])
        weights[best[1]] = 3
    return weights


def prove_abelian(G: FPGroup, max_length: int = DEFAULT_MAX_LENGTH,
                  max_nodes: int = DEFAULT_MAX_NODES, max_growth: int = 3) -> ProofVerdict:
    """Try to certify that every pair of generators commutes.

    Searches for the pending pairs run round-robin in slices and keep their
    state between slices; each proven commutator joins the insertion pool.
    """
    relators = [_encode(r, G.generators) for r in G.relators]
    heavy = _elimination_weights(G)
    n = len(G.generators)
    weights = {s * (k + 1): heavy.get(k + 1, 1) for k in range(n) for s in (1, -1)}
    pool = _Pool(max_growth, weights)
    for k, r in enumerate(relators):
        if r:
            pool.add("R", k, r)
    searches = {(i, j): _Search(_commutator(i, j), pool, max_length, weights)
                for i in range(n) for j in range(i + 1, n)}
    lemmas: list[Lemma] = []
    used = 0
    slice_ = _SLICE
    while searches and used < max_nodes:
        live = False
        for (i, j), srch in list(searches.items()):
            if used >= max_nodes:
                break
            if srch.exhausted:
                continue
            live = True
            before = srch.nodes
            steps = srch.run(min(slice_, max_nodes - used))
            used += srch.nodes - before
            if steps is not None:
                word = _commutator(i, j)
                label = f"[{G.generators[i]},{G.generators[j]}]"
                lemmas.append(Lemma(word, tuple(steps), label))
                pool.add("L", len(lemmas) - 1, word)
                del searches[(i, j)]
        if not live:
            break
    pending = sorted(searches)
    status = "Proven" if not pending else "Inconclusive"
    return ProofVerdict(status, G.generators, lemmas,
                        [(G.generators[i], G.generators[j]) for i, j in pending], used)
