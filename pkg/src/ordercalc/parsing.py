"""Parsing and formatting for the string interfaces.

Grammar (all arithmetic exact):

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom (('^' | '**') INT)?
    atom   := INT | 'u' | 'v' | 'x' | 'y' | 'z' | '(' expr ')'

z is the primitive root of unity of the coefficient field; x, y are the
skew variables (only when e' > 1) and do not commute: y*x = z*x*y.
Division is restricted to nonzero scalar constants.  Matrices of
polynomials are written [[entry, ...], ...] (or given as nested lists
of entry strings in JSON).
"""

import re

from .errors import DivisionByZero, OutOfRange, ParseError
from .orders import AlgebraElement
from .power_series import TruncSeries
from .rationals import RAT

_TOKEN = re.compile(r"\s*(\d+|\*\*|[uvxyz]|[-+*/^()\[\],])")


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r} at position {pos}")
        tok = m.group(1)
        out.append("^" if tok == "**" else tok)
        pos = m.end()
    return out


class _Ctx:
    """Evaluation context: skew polynomials {(a, b, i, j): scalar}."""

    def __init__(self, field, e_prime, N, allow_xy, allow_uv=True):
        self.field = field
        self.ep = e_prime
        self.N = N
        self.allow_xy = allow_xy
        self.allow_uv = allow_uv

    def const(self, scalar):
        return {(0, 0, 0, 0): scalar} if scalar else {}

    def variable(self, name):
        if name in "uv":
            if not self.allow_uv:
                raise ParseError(f"{name!r} is not allowed in a scalar")
            key = (0, 0, 1, 0) if name == "u" else (0, 0, 0, 1)
        elif name in "xy":
            if not self.allow_xy:
                raise ParseError(f"{name!r} only exists when e' > 1")
            key = (1, 0, 0, 0) if name == "x" else (0, 1, 0, 0)
        else:
            return self.const(self.field.zeta())
        if key[2] + key[3] >= self.N:
            return {}
        return {key: self.field.one()}

    def add(self, p, q, sign=1):
        out = dict(p)
        for k, c in q.items():
            if sign < 0:
                c = -c
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            else:
                del out[k]
        return out

    def mul(self, p, q):
        ep, N = self.ep, self.N
        out = {}
        for (a1, b1, i1, j1), c1 in p.items():
            for (a2, b2, i2, j2), c2 in q.items():
                a, b = a1 + a2, b1 + b2
                i = i1 + i2 + a // ep
                j = j1 + j2 + b // ep
                if i + j >= N:
                    continue
                c = c1 * c2
                if b1 and a2:
                    c = c * self.field.zeta_pow(b1 * a2)
                key = (a % ep, b % ep, i, j)
                s = out.get(key)
                s = c if s is None else s + c
                if s:
                    out[key] = s
                else:
                    del out[key]
        return out

    def as_scalar(self, p):
        """The scalar when p is a constant, else None."""
        if not p:
            return self.field.zero()
        if len(p) == 1 and (0, 0, 0, 0) in p:
            return p[(0, 0, 0, 0)]
        return None


class _Parser:
    def __init__(self, tokens, ctx):
        self.toks = tokens
        self.pos = 0
        self.ctx = ctx

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression")
        self.pos += 1
        return tok

    def expect(self, tok):
        got = self.next()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}")

    def expr(self):
        out = self.term()
        while self.peek() in ("+", "-"):
            op = self.next()
            out = self.ctx.add(out, self.term(), -1 if op == "-" else 1)
        return out

    def term(self):
        out = self.unary()
        while self.peek() in ("*", "/"):
            op = self.next()
            rhs = self.unary()
            if op == "*":
                out = self.ctx.mul(out, rhs)
            else:
                s = self.ctx.as_scalar(rhs)
                if s is None:
                    raise ParseError("division is only defined by scalar constants")
                if not s:
                    raise DivisionByZero("division by zero in expression")
                out = self.ctx.mul(out, self.ctx.const(self.ctx.field.one() / s))
        return out

    def unary(self):
        if self.peek() in ("-", "+"):
            op = self.next()
            val = self.unary()
            if op == "-":
                return {k: -c for k, c in val.items()}
            return val
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.next()
            exp_tok = self.next()
            if not exp_tok.isdigit():
                raise ParseError(f"exponent must be a nonnegative integer, got {exp_tok!r}")
            n = int(exp_tok)
            out = self.ctx.const(self.ctx.field.one())
            for _ in range(n):
                out = self.ctx.mul(out, base)
            return out
        return base

    def atom(self):
        tok = self.next()
        if tok.isdigit():
            return self.ctx.const(self.ctx.field.from_int(int(tok)))
        if tok in "uvxyz":
            return self.ctx.variable(tok)
        if tok == "(":
            out = self.expr()
            self.expect(")")
            return out
        raise ParseError(f"unexpected token {tok!r}")


def _parse_with_ctx(text, ctx):
    parser = _Parser(_tokenize(text), ctx)
    out = parser.expr()
    if parser.peek() is not None:
        raise ParseError(f"trailing input from token {parser.peek()!r}")
    return out


def parse_scalar(text, field):
    """Scalar of the coefficient field, e.g. "1/2 - 3*z^2"."""
    ctx = _Ctx(field, 1, 1, allow_xy=False, allow_uv=False)
    val = _parse_with_ctx(text, ctx)
    s = ctx.as_scalar(val)
    assert s is not None
    return s


def parse_series(text, field, N):
    """Truncated power series in u, v."""
    ctx = _Ctx(field, 1, N, allow_xy=False)
    val = _parse_with_ctx(text, ctx)
    return TruncSeries(field, N, {(i, j): c for (a, b, i, j), c in val.items()})


def _entry_rows(spec, data):
    size = spec.f * spec.g
    if isinstance(data, str):
        toks = _tokenize(data)
        rows, pos = _parse_matrix_tokens(toks, 0)
        if pos != len(toks):
            raise ParseError("trailing input after matrix literal")
    else:
        rows = data
    if len(rows) != size or any(len(r) != size for r in rows):
        raise ParseError(f"matrix must be {size}x{size} for this algebra")
    return rows


def _parse_matrix_tokens(toks, pos):
    if toks[pos] != "[":
        raise ParseError("matrix literal must start with '['")
    pos += 1
    rows = []
    while True:
        if toks[pos] != "[":
            raise ParseError("matrix row must start with '['")
        pos += 1
        row = []
        depth_start = pos
        while True:
            # scan one entry: tokens until ',' or ']' at depth 0
            depth = 0
            entry = []
            while pos < len(toks):
                t = toks[pos]
                if t == "(":
                    depth += 1
                elif t == ")":
                    depth -= 1
                elif depth == 0 and t in (",", "]"):
                    break
                entry.append(t)
                pos += 1
            row.append(entry)
            if toks[pos] == ",":
                pos += 1
                continue
            break
        if toks[pos] != "]":
            raise ParseError("unterminated matrix row")
        pos += 1
        rows.append(row)
        if pos < len(toks) and toks[pos] == ",":
            pos += 1
            continue
        break
    if pos >= len(toks) or toks[pos] != "]":
        raise ParseError("unterminated matrix literal")
    return rows, pos + 1


def parse_element(spec, data):
    """Element from a matrix of polynomial entries.

    data: nested lists of entry strings, or one "[[...],[...]]" literal.
    The matrix is (f*g) x (f*g); entries below the diagonal of each inner
    g x g block must be divisible by u (resp. lie in xS)."""
    rows = _entry_rows(spec, data)
    ctx = _Ctx(spec.field, spec.e_prime, spec.N, allow_xy=spec.e_prime > 1)
    idx = spec.index()
    coeffs = {}
    g = spec.g
    for row_i, row in enumerate(rows):
        for col_i, entry in enumerate(row):
            if isinstance(entry, list):
                value = _Parser(entry, ctx).expr() if entry else {}
            else:
                value = _parse_with_ctx(str(entry), ctx)
            P, r = divmod(row_i, g)
            Q, c = divmod(col_i, g)
            for (a, b, i, j), scal in value.items():
                key = (P, Q, r, c, a, b, i, j)
                k = idx.get(key)
                if k is None:
                    raise ParseError(
                        "entry violates the block divisibility pattern",
                        detail={"row": row_i + 1, "col": col_i + 1},
                    )
                coeffs[k] = scal
    return AlgebraElement(spec, coeffs)


# -- formatting ------------------------------------------------------------------


def _scalar_prefix(field, s):
    text = field.format_scalar(s)
    if " " in text:
        return f"({text})*"
    if text == "1":
        return ""
    if text == "-1":
        return "-"
    return f"{text}*"


def _format_terms(field, terms):
    """terms: {(a, b, i, j): scalar} -> canonical polynomial string."""
    if not terms:
        return "0"
    parts = []
    for key in sorted(terms, key=lambda k: (k[2] + k[3], k[3], k[0], k[1])):
        a, b, i, j = key
        vars_ = []
        for sym, exp in (("x", a), ("y", b), ("u", i), ("v", j)):
            if exp == 1:
                vars_.append(sym)
            elif exp > 1:
                vars_.append(f"{sym}^{exp}")
        mono = "*".join(vars_)
        if not mono:
            text = field.format_scalar(terms[key])
            parts.append(f"({text})" if " " in text else text)
        else:
            parts.append(_scalar_prefix(field, terms[key]) + mono)
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def format_series(ts):
    return _format_terms(ts.field, {(0, 0, i, j): c for (i, j), c in ts.coeffs.items()})


def element_entries(elem):
    """Nested lists of canonical entry strings."""
    spec = elem.spec
    size = spec.f * spec.g
    g = spec.g
    cells = [[{} for _ in range(size)] for _ in range(size)]
    monos = spec.monomials()
    for k, c in elem.coeffs.items():
        P, Q, r, cc, a, b, i, j = monos[k]
        cells[P * g + r][Q * g + cc][(a, b, i, j)] = c
    return [[_format_terms(spec.field, cell) for cell in row] for row in cells]


def format_element(elem):
    rows = element_entries(elem)
    return "[" + ", ".join("[" + ", ".join(row) + "]" for row in rows) + "]"
