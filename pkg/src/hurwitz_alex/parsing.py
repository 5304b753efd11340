"""Text formats: presentations, polynomials and integer matrices.

The grammars are written out in docs/grammar.md.  All parse failures raise
ParseError carrying a 1-based line and column.
"""
from __future__ import annotations

import json
import re
from typing import Optional

from .cgroup import EMPTY, ConjRelation, CPresentation, Word
from .errors import ParseError
from .linalg import IntMatrix
from .poly import Poly, cyclotomic

# ---------------------------------------------------------------------------
# polynomials

_POLY_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<phi>(?:Phi|Φ)_?(?P<phin>\d+))|(?P<t>t)|(?P<op>[-+*^()]))")


def _tokenize_poly(text: str, line: int = 1):
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _POLY_TOKEN.match(text, pos)
        if not m:
            col = pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[col - 1]!r}", line, col)
        start = m.start(m.lastgroup) + 1
        kind = m.lastgroup if m.lastgroup != "phin" else "phi"
        if kind == "int":
            out.append(("int", int(m.group("int")), start))
        elif kind == "phi":
            out.append(("phi", int(m.group("phin")), start))
        elif kind == "t":
            out.append(("t", None, start))
        else:
            out.append((m.group("op"), None, start))
        pos = m.end()
    out.append(("end", None, len(text) + 1))
    return out


class _PolyParser:
    def __init__(self, text: str, line: int):
        self.toks = _tokenize_poly(text, line)
        self.i = 0
        self.line = line

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[0] if tok[1] is None else tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", self.line, tok[2])
        self.i += 1
        return tok

    def error(self, msg):
        raise ParseError(msg, self.line, self.peek()[2])

    def expr(self) -> Poly:
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term().scale(sign)
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            term = self.term()
            acc = acc + term if op == "+" else acc - term
        return acc

    def term(self) -> Poly:
        acc = self.power()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                acc = acc * self.power()
            elif kind in ("int", "t", "phi", "("):
                acc = acc * self.power()
            else:
                return acc

    def power(self) -> Poly:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            if self.peek()[0] == "-":
                self.error("negative exponents are not allowed")
            n = self.take("int")[1]
            base = base ** n
        return base

    def atom(self) -> Poly:
        kind, val, col = self.peek()
        if kind == "int":
            self.take()
            return Poly((val,))
        if kind == "t":
            self.take()
            return Poly((0, 1))
        if kind == "phi":
            self.take()
            if val < 1:
                raise ParseError("cyclotomic index must be positive", self.line, col)
            return cyclotomic(val)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected {kind!r}")


def parse_poly(text: str, line: int = 1) -> Poly:
    """Parse e.g. ``t^2 - t + 1``, ``(t-1)^2*(t+1)``, ``2t``, ``Phi6^2``."""
    p = _PolyParser(text, line)
    out = p.expr()
    if p.peek()[0] != "end":
        p.error(f"unexpected {p.peek()[0]!r}")
    return out


# ---------------------------------------------------------------------------
# presentations

_WORD_TOKEN = re.compile(r"\s*(?:(?P<gen>x(?P<idx>\d+)(?:\^(?P<exp>[-+]?\d+))?)|(?P<one>1)|(?P<op>[()\[\],=]|\^-1))")


def _tokenize_line(text: str, line: int):
    pos, out = 0, []
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _WORD_TOKEN.match(text, pos)
        if not m:
            col = pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected text {text[col - 1:col + 5]!r}", line, col)
        col = m.start(m.lastgroup if m.lastgroup != "idx" else "gen") + 1
        if m.group("gen"):
            idx = int(m.group("idx"))
            exp = int(m.group("exp")) if m.group("exp") is not None else 1
            if idx < 1:
                raise ParseError("generator indices start at 1", line, col)
            if exp == 0:
                raise ParseError("exponent must be non-zero", line, col)
            out.append(("gen", (idx, exp), col))
        elif m.group("one"):
            out.append(("one", None, col))
        else:
            out.append((m.group("op"), None, col))
        pos = m.end()
    out.append(("end", None, len(text) + 1))
    return out


class _LineParser:
    def __init__(self, text: str, line: int):
        self.toks = _tokenize_line(text, line)
        self.i = 0
        self.line = line

    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of line" if tok[0] == "end" else repr(tok[0])
            raise ParseError(f"expected {kind!r}, found {what}", self.line, tok[2])
        self.i += 1
        return tok

    def error(self, msg, col=None):
        raise ParseError(msg, self.line, col if col is not None else self.peek()[2])

    def word(self) -> Word:
        letters = []
        if self.peek()[0] == "one":
            self.take()
            return EMPTY
        while self.peek()[0] == "gen":
            letters.append(self.take()[1])
        if not letters:
            self.error("expected a word")
        return Word(tuple(letters))

    def side(self):
        """Either ('single', i), ('conj', j, w) or ('flat', word)."""
        col = self.peek()[2]
        if self.peek()[0] == "(":
            self.take()
            w1 = self.word()
            self.take(")")
            self.take("^-1")
            g = self.take("gen")
            if g[1][1] != 1:
                self.error("conjugated generator must have exponent 1", g[2])
            self.take("(")
            w2 = self.word()
            self.take(")")
            if w1 != w2:
                self.error("the two conjugating words differ", col)
            return ("conj", g[1][0], w1, col)
        w = self.word()
        return ("flat", w, col)

    def relation(self) -> ConjRelation:
        if self.peek()[0] == "[":
            return self.commutator()
        lhs = self.side()
        self.take("=")
        rhs = self.side()
        if self.peek()[0] != "end":
            self.error("trailing input")
        single_l = _as_single(lhs)
        single_r = _as_single(rhs)
        if single_l is not None:
            return ConjRelation(single_l, *self.conj_form(rhs))
        if single_r is not None:
            return ConjRelation(single_r, *self.conj_form(lhs))
        self.error("one side of a relation must be a single generator", lhs[-1])

    def conj_form(self, side):
        if side[0] == "conj":
            return side[1], side[2]
        word = side[1]
        syl = word.letters
        if len(syl) % 2 == 0:
            self.error(f"{word} is not a conjugate of a generator", side[-1])
        r = len(syl) // 2
        gen, e = syl[r]
        left, right = syl[:r], syl[r + 1:]
        if e != 1 or Word(left) != Word(right).inverse():
            self.error(f"{word} is not of the form w^-1 xj w", side[-1])
        return gen, Word(right)

    def commutator(self) -> ConjRelation:
        self.take("[")
        a = self.word()
        self.take(",")
        b = self.word()
        self.take("]")
        self.take("=")
        one = self.take("one")
        if self.peek()[0] != "end":
            self.error("trailing input")
        for x, w in ((a, b), (b, a)):
            if len(x.letters) == 1 and x.letters[0][1] == 1:
                i = x.letters[0][0]
                return ConjRelation(i, i, w)
        self.error("a commutator needs a single generator on one side", one[2])


def _as_single(side) -> Optional[int]:
    if side[0] == "flat" and len(side[1].letters) == 1 and side[1].letters[0][1] == 1:
        return side[1].letters[0][0]
    return None


_HEADER = re.compile(r"^\s*cgroup\s+m\s*=\s*(\d+)\s*$")


def parse_presentation(text: str, name: str = "") -> CPresentation:
    m: Optional[int] = None
    rels: list = []
    where: list = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if line.strip().startswith("cgroup"):
            h = _HEADER.match(line)
            if not h:
                raise ParseError("malformed header, expected 'cgroup m=N'", lineno, 1)
            if m is not None or rels:
                raise ParseError("header must come first and only once", lineno, 1)
            m = int(h.group(1))
            if m < 1:
                raise ParseError("m must be positive", lineno, line.index(h.group(1)) + 1)
            continue
        rel = _LineParser(line, lineno).relation()
        rels.append(rel)
        where.append(lineno)
    used = max([max(r.left, r.right, r.conjugator.max_generator()) for r in rels], default=1)
    if m is None:
        m = used
    for r, lineno in zip(rels, where):
        top = max(r.left, r.right, r.conjugator.max_generator())
        if top > m:
            raise ParseError(f"x{top} exceeds the declared m={m}", lineno, 1)
    return CPresentation(m, tuple(rels), name=name)


def format_relation(r: ConjRelation) -> str:
    w = r.conjugator
    if w.is_identity():
        return f"x{r.left} = x{r.right}"
    if w.letters[0][0] == r.right:
        return f"x{r.left} = ({w})^-1 x{r.right} ({w})"
    flat = w.inverse() * Word.gen(r.right) * w
    return f"x{r.left} = {flat}"


def format_presentation(g: CPresentation) -> str:
    lines = [f"cgroup m={g.num_generators}"]
    lines += [format_relation(r) for r in g.relations]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# integer matrices


def parse_matrix(text: str) -> IntMatrix:
    """JSON ``[[0,1],[1,0]]``, or rows separated by ``;`` or newlines with
    whitespace/comma separated entries, optionally prefixed by ``n:`` giving
    the dimension of a square matrix with its entries listed row-major."""
    s = text.strip()
    if not s:
        raise ParseError("empty matrix", 1, 1)
    if s.startswith("["):
        try:
            data = json.loads(s)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc.msg}", exc.lineno, exc.colno) from None
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise ParseError("expected a list of rows", 1, 1)
        if not all(isinstance(x, int) and not isinstance(x, bool) for r in data for x in r):
            raise ParseError("entries must be integers", 1, 1)
        rows = data
    else:
        dim = None
        head = re.match(r"^\s*(\d+)\s*:", s)
        if head:
            dim = int(head.group(1))
            s = s[head.end():]
        rows = []
        for lineno, chunk in enumerate(re.split(r"[;\n]", s), 1):
            if not chunk.strip():
                continue
            row = []
            for tok in re.split(r"[\s,]+", chunk.strip()):
                try:
                    row.append(int(tok))
                except ValueError:
                    raise ParseError(f"not an integer: {tok!r}", lineno,
                                     chunk.find(tok) + 1) from None
            rows.append(row)
        if dim is not None:
            flat = [x for r in rows for x in r]
            if len(flat) != dim * dim:
                raise ParseError(f"expected {dim * dim} entries, got {len(flat)}", 1, 1)
            rows = [flat[i * dim:(i + 1) * dim] for i in range(dim)]
    if any(len(r) != len(rows[0]) for r in rows):
        raise ParseError("rows have different lengths", 1, 1)
    return IntMatrix.from_lists(rows)
