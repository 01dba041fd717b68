"""Line-oriented text input: group declarations, ring elements, matrices,
complexes, and key=value reports.

Grammar (informal EBNF)::

    file    := record ('---' record)*
    record  := line*
    line    := 'group' SPEC | 'ranks' INT+ | 'rows' INT
             | BLOCK [rowseq] NEWLINE rowline*        (BLOCK = 'matrix' | 'd' INT | 'columns')
             | KEY payload                             (KEY = 'f' | 'g' | 'set' | 'vars')
    rowline := rowseq                                  (a line starting with '[')
    rowseq  := row+ | '[' row (',' row)* ']'
    row     := '[' [expr (',' expr)*] ']'
    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := ('+' | '-') factor | atom ['^' ['-'] INT]
    atom    := NUMBER | NAME | '(' expr ')'
    NUMBER  := DIGITS ['/' DIGITS] ['i'] | 'i'

``#`` starts a comment.  ``e`` is the group identity.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import re
import shlex

from l2betti.errors import ParseError
from l2betti.group_ring import (
    CrossedProductElement,
    GroupRingElement,
    GroupRingMatrix,
    ring_one,
    ring_scalar,
)
from l2betti.groups import CrossedProductData, FiniteGroup, FreeAbelianGroup, FreeGroup, parse_group
from l2betti.scalars import I, GaussianRational, LaurentPoly, RationalFunction, variable_names

# ------------------------------------------------------------------ tokens


@dataclass(frozen=True)
class Token:
    kind: str  # num, name, op, end
    text: str
    line: int
    col: int
    value: object = None


_NUM = re.compile(r"\d+(?:/\d+)?i?")
_INT = re.compile(r"\d+")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_OPS = set("+-*/^()[],")


def tokenize(text, line=1, col=1):
    """Tokens of ``text``; ``col`` is the column of its first character."""
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        c = col + pos
        if ch.isdigit():
            after_caret = bool(out) and out[-1].text == "^" or (
                len(out) >= 2 and out[-1].text == "-" and out[-2].text == "^")
            m = (_INT if after_caret else _NUM).match(text, pos)
            try:
                value = _number(m.group())
            except ZeroDivisionError:
                raise ParseError("division by zero", line, c) from None
            out.append(Token("num", m.group(), line, c, value))
            pos = m.end()
        elif ch.isalpha() or ch == "_":
            m = _NAME.match(text, pos)
            out.append(Token("name", m.group(), line, c))
            pos = m.end()
        elif ch in _OPS:
            out.append(Token("op", ch, line, c))
            pos += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", line, c)
    out.append(Token("end", "", line, col + n))
    return out


def _number(text):
    imag = text.endswith("i")
    if imag:
        text = text[:-1]
    q = Fraction(text)
    return GaussianRational(0, q) if imag else GaussianRational(q)


# ------------------------------------------------------------------ algebras


class GroupRingAlgebra:
    """Evaluation target for expressions over a group ring or crossed product."""

    def __init__(self, ring):
        self.ring = ring
        self.names = {"e": ring_one(ring)}
        if isinstance(ring, CrossedProductData):
            for name, g in ring.base.generators.items():
                self.names[name] = CrossedProductElement.from_base(ring, GroupRingElement.of(ring.base, g))
            for name, h in ring.names.items():
                self.names[name] = CrossedProductElement.mu(ring, h)
        else:
            for name, g in ring.generators.items():
                self.names[name] = GroupRingElement.of(ring, g)

    def const(self, c):
        return ring_scalar(self.ring, c)

    def name(self, tok):
        if tok.text in self.names:
            return self.names[tok.text]
        if tok.text == "i":
            return self.const(I)
        raise ParseError(f"unknown generator {tok.text!r} for {self.ring}", tok.line, tok.col)

    def div(self, a, b, tok):
        if set(b.terms) != {_identity_key(self.ring)} or not _is_scalar(b):
            raise ParseError("division is only by nonzero scalars in a group ring", tok.line, tok.col)
        return a / _scalar_value(b)

    def pow(self, a, k, tok):
        try:
            return a ** k
        except (ValueError, ArithmeticError) as exc:
            raise ParseError(str(exc), tok.line, tok.col) from None


def _identity_key(ring):
    if isinstance(ring, CrossedProductData):
        return ring.acting.identity
    return ring.identity


def _is_scalar(b):
    if isinstance(b, CrossedProductElement):
        (r,) = b.terms.values()
        return set(r.terms) == {r.group.identity}
    return True


def _scalar_value(b):
    if isinstance(b, CrossedProductElement):
        (r,) = b.terms.values()
        return r.terms[r.group.identity]
    return b.terms[b.group.identity]


class RationalAlgebra:
    """Evaluation target for rational functions in ``nvars`` variables."""

    def __init__(self, nvars):
        self.nvars = nvars
        self.names = {n: RationalFunction(LaurentPoly.variable(nvars, k)) for k, n in enumerate(variable_names(nvars))}
        self.names["e"] = RationalFunction.one(nvars)

    def const(self, c):
        return RationalFunction(LaurentPoly.constant(self.nvars, c))

    def name(self, tok):
        if tok.text in self.names:
            return self.names[tok.text]
        if tok.text == "i":
            return self.const(I)
        raise ParseError(f"unknown variable {tok.text!r}", tok.line, tok.col)

    def div(self, a, b, tok):
        if not b:
            raise ParseError("division by zero", tok.line, tok.col)
        return a / b

    def pow(self, a, k, tok):
        if k < 0 and not a:
            raise ParseError("zero to a negative power", tok.line, tok.col)
        return a ** k


def algebra_for(ring):
    if isinstance(ring, (FiniteGroup, FreeAbelianGroup, FreeGroup, CrossedProductData)):
        return GroupRingAlgebra(ring)
    raise TypeError(f"no expression algebra for {ring!r}")


# ------------------------------------------------------------------ parser


class ExprParser:
    def __init__(self, tokens, algebra):
        self.toks = tokens
        self.i = 0
        self.alg = algebra

    @property
    def tok(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def expect(self, text):
        if self.tok.text != text or self.tok.kind != "op":
            found = self.tok.text or "end of line"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.next()

    def at(self, text):
        return self.tok.kind == "op" and self.tok.text == text

    def expr(self):
        if self.tok.kind == "end" or self.at(",") or self.at("]") or self.at(")"):
            raise self.error("expected an expression")
        value = self.term()
        while self.at("+") or self.at("-"):
            op = self.next().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.at("*") or self.at("/"):
            op = self.next()
            rhs = self.factor()
            value = value * rhs if op.text == "*" else self.alg.div(value, rhs, op)
        return value

    def factor(self):
        if self.at("-"):
            self.next()
            return -self.factor()
        if self.at("+"):
            self.next()
            return self.factor()
        base = self.atom()
        if self.at("^"):
            op = self.next()
            sign = 1
            if self.at("-"):
                self.next()
                sign = -1
            if self.tok.kind != "num" or not _INT.fullmatch(self.tok.text):
                raise self.error("exponent must be an integer")
            k = sign * int(self.next().text)
            base = self.alg.pow(base, k, op)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.next()
            return self.alg.const(t.value)
        if t.kind == "name":
            self.next()
            return self.alg.name(t)
        if self.at("("):
            self.next()
            v = self.expr()
            self.expect(")")
            return v
        raise self.error(f"unexpected {t.text or 'end of line'!r}")

    def row(self):
        self.expect("[")
        out = []
        if self.at("]"):
            self.next()
            return out
        out.append(self.expr())
        while self.at(","):
            self.next()
            out.append(self.expr())
        self.expect("]")
        return out

    def rows(self):
        """row+ or '[' row (',' row)* ']'."""
        if self.at("[") and self.toks[self.i + 1].text == "[" and self.toks[self.i + 1].kind == "op":
            self.next()
            out = [self.row()]
            while self.at(","):
                self.next()
                out.append(self.row())
            self.expect("]")
            return out
        out = []
        while self.at("["):
            out.append(self.row())
        return out

    def finish(self):
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")


def parse_expr(text, algebra, line=1, col=1):
    p = ExprParser(tokenize(text, line, col), algebra)
    v = p.expr()
    p.finish()
    return v


def parse_element(text, ring, line=1, col=1):
    return parse_expr(text, algebra_for(ring), line, col)


def parse_rational(text, nvars, line=1, col=1):
    return parse_expr(text, RationalAlgebra(nvars), line, col)


def parse_pair(text, algebra, line=1, col=1):
    """``(a, b)`` as a pair of values."""
    p = ExprParser(tokenize(text, line, col), algebra)
    p.expect("(")
    a = p.expr()
    p.expect(",")
    b = p.expr()
    p.expect(")")
    p.finish()
    return a, b


def parse_rows(pieces, algebra):
    """Rows from a list of ``(text, line, col)`` pieces forming one matrix."""
    toks = []
    for text, line, col in pieces:
        toks.extend(tokenize(text, line, col)[:-1])
    last = pieces[-1] if pieces else ("", 1, 1)
    toks.append(Token("end", "", last[1], last[2] + len(last[0])))
    p = ExprParser(toks, algebra)
    rows = p.rows()
    p.finish()
    if len({len(r) for r in rows}) > 1:
        raise ParseError("rows have different lengths", pieces[0][1], pieces[0][2])
    return rows


def parse_matrix(text, ring, line=1, col=1):
    """A GroupRingMatrix from bracketed rows, e.g. ``[x - e, y - e]``."""
    rows = parse_rows([(text, line, col)], algebra_for(ring))
    return GroupRingMatrix(ring, rows)


# ------------------------------------------------------------------ records


@dataclass
class Field:
    text: str
    line: int
    col: int


@dataclass
class Record:
    group: object = None
    group_line: int = None
    fields: dict = field(default_factory=dict)
    blocks: dict = field(default_factory=dict)
    start: int = 1

    def block_rows(self, name, algebra):
        head, pieces = self.blocks[name]
        if not pieces:
            return []
        return parse_rows(pieces, algebra)

    def matrix(self, name, ring, shape=None):
        head = self.blocks[name][0]
        rows = self.block_rows(name, algebra_for(ring))
        if shape is not None:
            n, m = shape
            if not rows and n and not m:
                rows = [[] for _ in range(n)]
            got = (len(rows), len(rows[0]) if rows else 0)
            if rows and got != shape or not rows and n and m:
                raise ParseError(f"{name} has shape {got[0]}x{got[1]}, expected {n}x{m}", head.line, head.col)
        return GroupRingMatrix(ring, rows, len(rows), len(rows[0]) if rows else 0)

    def require(self, key):
        if key not in self.fields:
            raise ParseError(f"missing '{key}' line", self.start, 1)
        return self.fields[key]


_BLOCK = re.compile(r"^(matrix|columns|d\d+)\b")
_KEYED = ("group", "ranks", "rows", "f", "g", "set", "vars", "radius")


def parse_records(text):
    """Split into ``---``-separated records of keyed lines and matrix blocks."""
    records = [Record()]
    current_block = None
    group = None
    group_line = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        if not stripped:
            continue
        rec = records[-1]
        if stripped == "---":
            current_block = None
            records.append(Record(group=group, group_line=group_line, start=lineno + 1))
            continue
        if stripped.startswith("["):
            if current_block is None:
                raise ParseError("matrix row outside a matrix block", lineno, indent + 1)
            rec.blocks[current_block][1].append((stripped, lineno, indent + 1))
            continue
        current_block = None
        m = _BLOCK.match(stripped)
        if m:
            name = m.group(1)
            if name in rec.blocks:
                raise ParseError(f"duplicate block {name!r}", lineno, indent + 1)
            rest = stripped[m.end():]
            pieces = []
            if rest.strip():
                off = len(rest) - len(rest.lstrip())
                pieces.append((rest.strip(), lineno, indent + m.end() + off + 1))
            rec.blocks[name] = (Field(name, lineno, indent + 1), pieces)
            current_block = name
            continue
        key, _, rest = stripped.partition(" ")
        if key not in _KEYED:
            raise ParseError(f"unknown directive {key!r}", lineno, indent + 1)
        if key in rec.fields and key != "group":
            raise ParseError(f"duplicate '{key}' line", lineno, indent + 1)
        col = indent + len(key) + 2 + (len(rest) - len(rest.lstrip()))
        fld = Field(rest.strip(), lineno, col)
        if key == "group":
            rec.group = group = parse_group(fld.text, lineno)
            rec.group_line = group_line = lineno
        rec.fields[key] = fld
    return [r for r in records if r.fields or r.blocks]


def parse_ints(fld, minimum=0):
    out = []
    col = fld.col
    for piece in fld.text.split():
        if not re.fullmatch(r"\d+", piece) or int(piece) < minimum:
            raise ParseError(f"expected an integer >= {minimum}, found {piece!r}", fld.line, col + fld.text.find(piece))
        out.append(int(piece))
    if not out:
        raise ParseError("expected integers", fld.line, col)
    return out


# ------------------------------------------------------------------ reports


def format_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def format_record(pairs, machine=False):
    if machine:
        return " ".join(f"{k}={shlex.quote(format_value(v))}" for k, v in pairs)
    return "\n".join(f"{k} = {format_value(v)}" for k, v in pairs)


def parse_report(text):
    """Inverse of machine-mode output: list of ``{key: value-string}`` per line."""
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        rec = {}
        for item in shlex.split(line):
            k, sep, v = item.partition("=")
            if not sep:
                raise ParseError(f"expected key=value, found {item!r}")
            rec[k] = v
        out.append(rec)
    return out


def parse_scalar(text):
    """Exact value of a rendered rational or Gaussian rational, or a boolean."""
    if text in ("true", "false"):
        return text == "true"
    v = parse_expr(text, _ScalarAlgebra())
    return v.re if v.is_real() else v


class _ScalarAlgebra:
    def const(self, c):
        return c

    def name(self, tok):
        if tok.text == "i":
            return I
        raise ParseError(f"unexpected name {tok.text!r} in a scalar", tok.line, tok.col)

    def div(self, a, b, tok):
        if not b:
            raise ParseError("division by zero", tok.line, tok.col)
        return a / b

    def pow(self, a, k, tok):
        r = GaussianRational(1)
        for _ in range(abs(k)):
            r = r * a
        return r if k >= 0 else r.inverse()
