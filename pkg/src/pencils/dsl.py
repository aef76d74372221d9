"""Line-based text format for factorizations.

    # comment
    surface g=3 b=1
    basepoints: 1
    curve C hom=[0,0,0,0,0,0] sep=true word="[a1,b1]" splitgenus=1
    curve B0 hom=[1,0,1,0,0,0] sep=false word="a1 a2"
    word: block(P1){ B0 B1 } conj(b1^-1 a2){ x1 x2 } | C^2 ~C'
    target: d1
    disjoint: C C'
    commutes: P1 C

Generator curves a1..bg and boundary curves d1..dm exist implicitly.  In a
word, ``~X`` inverts, ``X^k`` is a power, ``conj(...){...}`` conjugates the
enclosed twists and ``block(L){...}`` labels them; ``|`` is decoration.
Every rejected input produces located diagnostics.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .factorizations import ConjugationWord, Factorization, FactorizationError, Twist
from .surfaces import (Curve, FreeWord, HomologyClass, Surface, SurfaceError, abelianize_word,
                       boundary_curve, make_curve)

NAME = r"[A-Za-z][A-Za-z0-9'@~_.]*"
_NAME_RE = re.compile(NAME + r"\Z")
_LABEL = r"[^\s(){}]+"


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    message: str
    severity: str = "error"

    def __str__(self):
        return f"{self.line}:{self.column}: {self.severity}: {self.message}"


class ParseError(ValueError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("\n".join(map(str, diagnostics)))


@dataclass(frozen=True)
class Document:
    factorization: Factorization
    base_points: Optional[int] = None


# ------------------------------------------------------------------- parser

_KV = re.compile(r'(\w+)=("(?:[^"]*)"|\[[^\]]*\]|\S+)')
_WORD_TOKEN = re.compile(
    r"\s*(?:(?P<conj>conj\()|(?P<block>block\()|(?P<close>\})|(?P<bar>\|)"
    r"|(?P<twist>(?P<inv>~?)(?P<name>" + NAME + r")(?:\^(?P<pow>[^\s{}()|]*))?)"
    r"|(?P<junk>\S))")
_CONJ_FACTOR = re.compile(r"\s*(?P<inv>~?)(?P<name>" + NAME + r")(?:\^(?P<pow>-?\d+))?")
_QUOTED = re.compile(r'"([^"]*)"|(\S+)')


def _implicit(s: Surface) -> dict[str, Curve]:
    cs = {x: make_curve(s, x, x, provenance="standard generator") for x in s.generators}
    for i in range(1, s.boundary_count + 1):
        cs[f"d{i}"] = boundary_curve(s, i)
    return cs


class _Parser:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.diags: list[Diagnostic] = []
        self.surface: Optional[Surface] = None
        self.curves: dict[str, Curve] = {}
        self.declared: set[str] = set()
        self.twists: list[Twist] = []
        self.target: Optional[tuple[int, ...]] = None
        self.disjoint: list[tuple[str, str]] = []
        self.commutes: list[tuple[str, str]] = []
        self.base_points: Optional[int] = None
        self.word_line = 0

    def err(self, line: int, col: int, msg: str):
        self.diags.append(Diagnostic(line, col + 1, msg))

    def run(self) -> Document:
        for n, raw in enumerate(self.lines, 1):
            body = raw.split("#", 1)[0]
            stripped = body.strip()
            if not stripped:
                continue
            col = len(body) - len(body.lstrip())
            head = stripped.split(None, 1)[0]
            if self.surface is None and head != "surface":
                self.err(n, col, "expected 'surface g=<int> b=<int>' first")
                return self.fail()
            if head == "surface":
                self.do_surface(n, col, stripped)
                if self.surface is None:
                    return self.fail()
            elif head == "curve":
                self.do_curve(n, col, stripped)
            elif stripped.startswith("word:"):
                self.do_word(n, col + 5, stripped[5:])
            elif stripped.startswith("target:"):
                self.do_target(n, col + 7, stripped[7:])
            elif stripped.startswith("disjoint:"):
                self.do_pair(n, col + 9, stripped[9:], self.disjoint, "disjoint")
            elif stripped.startswith("commutes:"):
                self.do_pair(n, col + 9, stripped[9:], self.commutes, "commutes")
            elif stripped.startswith("basepoints:"):
                v = stripped[11:].strip()
                if not re.fullmatch(r"\d+", v):
                    self.err(n, col + 11, f"basepoints must be a non-negative integer, got {v!r}")
                else:
                    self.base_points = int(v)
            else:
                self.err(n, col, f"unknown directive {head!r}")
        if self.surface is None:
            self.err(max(len(self.lines), 1), 0, "missing 'surface' line")
        if self.target is None and not self.diags:
            self.err(max(len(self.lines), 1), 0, "missing 'target:' line")
        if self.diags:
            return self.fail()
        try:
            f = Factorization(self.surface, tuple(self.twists), self.target)
            f = f.declare(self.disjoint, self.commutes)
        except (FactorizationError, SurfaceError) as exc:
            self.err(self.word_line or 1, 0, str(exc))
            return self.fail()
        return Document(f, self.base_points)

    def fail(self):
        raise ParseError(self.diags)

    # -- directives
    def do_surface(self, n: int, col: int, line: str):
        if self.surface is not None:
            self.err(n, col, "surface declared twice")
            return
        m = re.fullmatch(r"surface\s+g=(-?\d+)\s+b=(-?\d+)", line)
        if not m:
            self.err(n, col, "expected 'surface g=<int> b=<int>'")
            return
        g, b = int(m.group(1)), int(m.group(2))
        if g < 0 or b < 0:
            self.err(n, col, f"invalid surface g={g} b={b}")
            return
        self.surface = Surface(g, b)
        self.curves = _implicit(self.surface)

    def do_curve(self, n: int, col: int, line: str):
        s = self.surface
        m = re.match(r"curve\s+(\S+)", line)
        if not m:
            self.err(n, col, "expected a curve name")
            return
        name = m.group(1)
        if not _NAME_RE.match(name):
            self.err(n, col + m.start(1), f"invalid curve name {name!r}")
            return
        if name in self.declared:
            self.err(n, col + m.start(1), f"curve {name} declared twice")
            return
        rest_at = m.end()
        kv: dict[str, tuple[str, int]] = {}
        pos = rest_at
        for km in _KV.finditer(line, rest_at):
            gap = line[pos:km.start()]
            if gap.strip():
                self.err(n, col + pos + len(gap) - len(gap.lstrip()), f"unexpected text {gap.strip()!r}")
                return
            kv[km.group(1)] = (km.group(2), col + km.start(2))
            pos = km.end()
        if line[pos:].strip():
            self.err(n, col + pos + 1, f"unexpected text {line[pos:].strip()!r}")
            return
        allowed = {"hom", "sep", "word", "splitgenus", "boundary"}
        for k, (_, c) in kv.items():
            if k not in allowed:
                self.err(n, c, f"unknown curve attribute {k!r}")
                return
        hom = word = None
        sep = False
        split = bidx = None
        if "hom" in kv:
            v, c = kv["hom"]
            try:
                vec = tuple(int(x) for x in v.strip("[]").split(",") if x.strip())
            except ValueError:
                self.err(n, c, f"malformed homology vector {v}")
                return
            if len(vec) != s.rank:
                self.err(n, c, f"homology vector has length {len(vec)}, expected {s.rank}")
                return
            hom = HomologyClass(vec)
        if "sep" in kv:
            v, c = kv["sep"]
            if v not in ("true", "false"):
                self.err(n, c, f"sep must be true or false, got {v!r}")
                return
            sep = v == "true"
        for key in ("splitgenus", "boundary"):
            if key in kv:
                v, c = kv[key]
                if not re.fullmatch(r"\d+", v):
                    self.err(n, c, f"{key} must be a non-negative integer, got {v!r}")
                    return
                if key == "splitgenus":
                    split = int(v)
                else:
                    bidx = int(v)
                    if not 1 <= bidx <= s.boundary_count:
                        self.err(n, c, f"boundary {bidx} not on {s}")
                        return
        if "word" in kv:
            v, c = kv["word"]
            if not (v.startswith('"') and v.endswith('"')):
                self.err(n, c, "word must be double-quoted")
                return
            try:
                word = FreeWord.parse(v[1:-1])
                ab = abelianize_word(word, s)
            except SurfaceError as exc:
                self.err(n, c, str(exc))
                return
            if hom is None:
                hom = ab
            elif ab != hom:
                self.err(n, c, f"word abelianizes to {ab}, hom says {hom}")
                return
        if hom is None:
            if not sep:
                self.err(n, col, f"curve {name} needs hom=[...] or a word")
                return
            hom = s.zero()
        self.declared.add(name)
        self.curves[name] = Curve(name, hom, sep, word, bidx, split, "parsed")

    def do_target(self, n: int, col: int, text: str):
        if self.target is not None:
            self.err(n, col, "target given twice")
            return
        toks = text.split()
        if toks == ["identity"] or not toks:
            self.target = ()
            return
        out = []
        for m in re.finditer(r"\S+", text):
            t = m.group()
            mm = re.fullmatch(r"d(\d+)", t)
            if not mm or not 1 <= int(mm.group(1)) <= self.surface.boundary_count:
                self.err(n, col + m.start(), f"bad boundary {t!r} in target")
                return
            out.append(int(mm.group(1)))
        self.target = tuple(out)

    def do_pair(self, n: int, col: int, text: str, into: list, what: str):
        toks = [(m.group(1) if m.group(1) is not None else m.group(2), m.start())
                for m in _QUOTED.finditer(text)]
        if len(toks) != 2:
            self.err(n, col, f"{what}: expects exactly two names")
            return
        into.append((toks[0][0], toks[1][0]))

    # -- words
    def do_word(self, n: int, col: int, text: str):
        self.word_line = self.word_line or n
        stack: list[tuple[str, object, int]] = []     # (kind, payload, column)
        pos = 0
        while pos < len(text):
            m = _WORD_TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                break
            at = col + m.start() + (len(m.group()) - len(m.group().lstrip()))
            pos = m.end()
            if m.group("junk"):
                self.err(n, at, f"unexpected character {m.group('junk')!r}")
                return
            if m.group("bar"):
                continue
            if m.group("conj") or m.group("block"):
                close = text.find(")", pos)
                if close < 0:
                    self.err(n, at, "unclosed '(' in conj/block header")
                    return
                inner = text[pos:close]
                rest = text[close + 1:]
                if not rest.lstrip().startswith("{"):
                    self.err(n, col + close + 1, "expected '{' after conj(...)/block(...)")
                    return
                brace = close + 1 + (len(rest) - len(rest.lstrip()))
                if m.group("conj"):
                    phi = self.conj_word(n, col + pos, inner)
                    if phi is None:
                        return
                    stack.append(("conj", phi, at))
                else:
                    if not re.fullmatch(_LABEL, inner.strip()):
                        self.err(n, col + pos, f"bad block label {inner!r}")
                        return
                    stack.append(("block", inner.strip(), at))
                pos = brace + 1
                continue
            if m.group("close"):
                if not stack:
                    self.err(n, at, "unbalanced '}'")
                    return
                stack.pop()
                continue
            name = m.group("name")
            curve = self.curves.get(name)
            if curve is None:
                self.err(n, at, f"unknown curve {name!r}")
                continue
            e = 1
            if m.group("pow") is not None:
                p = m.group("pow")
                if not re.fullmatch(r"-?\d+", p) or int(p) == 0:
                    self.err(n, at, f"malformed exponent {p!r} on {name}")
                    continue
                e = int(p)
            if m.group("inv"):
                e = -e
            conj: Optional[ConjugationWord] = None
            block = None
            for kind, payload, _ in stack:
                if kind == "conj":
                    conj = payload if conj is None else conj.then(payload)
                else:
                    block = payload
            self.twists.append(Twist(curve, e, conj, block))
        if stack:
            kind, _, at = stack[-1]
            self.err(n, at, f"unbalanced {kind} block: missing '}}'")

    def conj_word(self, n: int, col: int, text: str) -> Optional[ConjugationWord]:
        factors = []
        pos = 0
        while text[pos:].strip():
            m = _CONJ_FACTOR.match(text, pos)
            if m is None:
                self.err(n, col + pos, f"malformed conjugating word {text!r}")
                return None
            c = self.curves.get(m.group("name"))
            if c is None:
                self.err(n, col + m.start("name"), f"unknown curve {m.group('name')!r}")
                return None
            e = int(m.group("pow")) if m.group("pow") is not None else 1
            factors.append((c, -e if m.group("inv") else e))
            pos = m.end()
        return ConjugationWord(tuple(factors))


def parse_document(text: str) -> Document:
    return _Parser(text).run()


def parse(text: str) -> Factorization:
    """Parse a factorization; raises ParseError carrying the diagnostics."""
    return parse_document(text).factorization


def diagnose(text: str) -> list[Diagnostic]:
    try:
        parse_document(text)
    except ParseError as exc:
        return exc.diagnostics
    return []


# --------------------------------------------------------------- serializer

def _quote(name: str) -> str:
    return f'"{name}"' if re.search(r'[\s"]', name) else name


def _curve_line(c: Curve) -> str:
    parts = [f"curve {c.name}", "hom=[" + ",".join(map(str, c.homology.coeffs)) + "]",
             f"sep={'true' if c.separating else 'false'}"]
    if c.word is not None:
        parts.append(f'word="{c.word}"')
    if c.split_genus is not None:
        parts.append(f"splitgenus={c.split_genus}")
    if c.boundary_index is not None:
        parts.append(f"boundary={c.boundary_index}")
    return " ".join(parts)


def _twist_token(t: Twist) -> str:
    e = t.exponent
    s = ("~" if e < 0 else "") + t.curve.name
    return s if abs(e) == 1 else f"{s}^{abs(e)}"


def _conj_header(phi: ConjugationWord) -> str:
    return "conj(" + " ".join(c.name if e == 1 else f"{c.name}^{e}"
                              for c, e in phi.factors) + ")"


def serialize(f: Factorization, base_points: Optional[int] = None) -> str:
    s = f.surface
    implicit = _implicit(s)
    out = [f"surface g={s.genus} b={s.boundary_count}"]
    if base_points is not None:
        out.append(f"basepoints: {base_points}")
    seen: dict[str, Curve] = {}
    for t in f.twists:
        for c in ([t.curve] + (t.conj.curves if t.conj is not None else [])):
            if not _NAME_RE.match(c.name):
                raise ValueError(f"curve name {c.name!r} cannot be written in this format")
            prev = seen.setdefault(c.name, c)
            if prev != c:
                raise ValueError(f"two different curves named {c.name}")
    for name, c in seen.items():
        if implicit.get(name) != c:
            out.append(_curve_line(c))
    toks: list[str] = []
    k = 0
    tw = f.twists
    while k < len(tw):
        blk = tw[k].block
        j = k
        while j < len(tw) and tw[j].block == blk:
            j += 1
        inner: list[str] = []
        i = k
        while i < j:
            cj = tw[i].conj
            h = i
            while h < j and tw[h].conj == cj:
                h += 1
            run = " ".join(_twist_token(t) for t in tw[i:h])
            inner.append(run if cj is None else f"{_conj_header(cj)}{{ {run} }}")
            i = h
        body = " ".join(inner)
        toks.append(body if blk is None else f"block({blk}){{ {body} }}")
        k = j
    out.append("word: " + " ".join(toks))
    out.append("target: " + (" ".join(f"d{i}" for i in f.target) or "identity"))
    for p in sorted(tuple(sorted(p)) for p in f.disjoint):
        a, b = p if len(p) == 2 else (p[0], p[0])
        out.append(f"disjoint: {_quote(a)} {_quote(b)}")
    for b, c in sorted(f.commutes):
        out.append(f"commutes: {_quote(b)} {_quote(c)}")
    return "\n".join(out) + "\n"
