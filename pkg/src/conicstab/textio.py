"""Text form of polynomials.

Grammar (whitespace insensitive)::

    poly    := ['+'|'-'] term (('+'|'-') term)*
    term    := coeff ('*' varpow)* | varpow ('*' varpow)*
    coeff   := real | '(' real ('+'|'-') real 'i' ')'
    varpow  := var ('^' posint)?
    var     := 'z' index | 'z' digit digit | 'z{' int ',' int '}'

In a vector space ``z12`` is variable 12; in a symmetric space it is the
entry (1, 2), and ``z{i,j}`` covers orders above 9.  Indices are 1-based.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .polycore import Polynomial
from .symmat import SymVarSpace


class PolynomialSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


@dataclass(frozen=True)
class Space:
    """Declared variable space: ``vector:N`` or ``sym:N``."""

    kind: str
    n: int

    @classmethod
    def parse(cls, text: str) -> "Space":
        m = re.fullmatch(r"\s*(vector|sym):(\d+)\s*", text)
        if not m or int(m.group(2)) < 1:
            raise ValueError(f"bad space {text!r}; expected vector:N or sym:N")
        return cls(m.group(1), int(m.group(2)))

    @classmethod
    def of(cls, f: Polynomial, sym: bool) -> "Space":
        if sym:
            return cls("sym", SymVarSpace.from_nvars(f.nvars).n)
        return cls("vector", f.nvars)

    @property
    def sym(self) -> bool:
        return self.kind == "sym"

    @property
    def nvars(self) -> int:
        return self.n * (self.n + 1) // 2 if self.sym else self.n

    def __str__(self) -> str:
        return f"{self.kind}:{self.n}"


_REAL = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_TOKEN = re.compile(
    rf"(?P<ws>\s+)|(?P<num>{_REAL})|(?P<var>z(?:\{{[^}}]*\}}|\d+))|(?P<op>[-+*^()])|(?P<i>i)"
)


def _tokenize(text: str):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            out.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, space: Space):
        self.toks = _tokenize(text)
        self.k = 0
        self.space = space
        self.sym = SymVarSpace(space.n) if space.sym else None

    def peek(self):
        return self.toks[self.k]

    def take(self, kind=None, value=None):
        tok = self.toks[self.k]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value or kind
            raise PolynomialSyntaxError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.k += 1
        return tok

    def parse(self) -> Polynomial:
        nv = self.space.nvars
        terms: dict[tuple, complex] = {}
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
        while True:
            exp, c = self.term()
            terms[exp] = terms.get(exp, 0j) + sign * c
            tok = self.peek()
            if tok[0] == "end":
                break
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                sign = -1 if tok[1] == "-" else 1
                continue
            raise PolynomialSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return Polynomial(nv, terms)

    def term(self):
        exp = [0] * self.space.nvars
        c = 1 + 0j
        tok = self.peek()
        if tok[0] in ("num", "op") and tok[1] != "*":
            if tok[0] == "op" and tok[1] != "(":
                raise PolynomialSyntaxError(f"unexpected {tok[1]!r}", tok[2])
            c = self.coeff()
            if self.peek()[1] != "*":
                return tuple(exp), c
            self.take("op", "*")
        while True:
            idx, e = self.varpow()
            exp[idx] += e
            if self.peek()[1] == "*":
                self.take()
                continue
            return tuple(exp), c

    def coeff(self) -> complex:
        tok = self.peek()
        if tok[0] == "num":
            return complex(float(self.take()[1]))
        self.take("op", "(")
        rsign = 1
        if self.peek()[1] in ("+", "-"):
            rsign = -1 if self.take()[1] == "-" else 1
        re_part = rsign * float(self.take("num")[1])
        op = self.take("op")
        if op[1] not in "+-":
            raise PolynomialSyntaxError("expected '+' or '-' in complex coefficient", op[2])
        im_part = float(self.take("num")[1]) * (-1 if op[1] == "-" else 1)
        self.take("i")
        self.take("op", ")")
        return complex(re_part, im_part)

    def varpow(self):
        tok = self.take("var")
        idx = self._var_index(tok[1], tok[2])
        e = 1
        if self.peek()[1] == "^":
            self.take()
            nxt = self.peek()
            if nxt[1] == "-":
                raise PolynomialSyntaxError("negative exponent", nxt[2])
            num = self.take("num")
            if not num[1].isdigit() or int(num[1]) < 1:
                raise PolynomialSyntaxError("exponent must be a positive integer", num[2])
            e = int(num[1])
        return idx, e

    def _var_index(self, text: str, pos: int) -> int:
        body = text[1:]
        if body.startswith("{"):
            parts = [p.strip() for p in body[1:-1].split(",")]
            if not all(p.isdigit() for p in parts) or not parts:
                raise PolynomialSyntaxError(f"bad variable {text!r}", pos)
            idx = [int(p) for p in parts]
        elif self.sym is not None:
            if len(body) != 2:
                raise PolynomialSyntaxError(f"symmetric variable {text!r} needs two digits or z{{i,j}}", pos)
            idx = [int(body[0]), int(body[1])]
        else:
            idx = [int(body)]
        if self.sym is not None:
            if len(idx) != 2:
                raise PolynomialSyntaxError(f"symmetric variable {text!r} needs two indices", pos)
            i, j = idx
            if not (1 <= i <= self.sym.n and 1 <= j <= self.sym.n):
                raise PolynomialSyntaxError(f"index of {text!r} outside order {self.sym.n}", pos)
            return self.sym.index(i - 1, j - 1)
        if len(idx) != 1 or not 1 <= idx[0] <= self.space.n:
            raise PolynomialSyntaxError(f"variable {text!r} outside vector:{self.space.n}", pos)
        return idx[0] - 1


def parse_polynomial(text: str, space) -> Polynomial:
    """Parse ``text`` over ``space`` (a :class:`Space` or ``"vector:N"``/``"sym:N"``)."""
    if isinstance(space, str):
        space = Space.parse(space)
    return _Parser(text, space).parse()


def format_number(x: float) -> str:
    if x == int(x) and abs(x) < 2**53:
        return str(int(x))
    return format(x, ".17g")


def _var_names(f: Polynomial, sym: bool) -> list[str]:
    if sym:
        sp = SymVarSpace.from_nvars(f.nvars)
        return [sp.name(k) for k in range(f.nvars)]
    return [f"z{k + 1}" for k in range(f.nvars)]


def monomial_order_key(exp: tuple):
    """Graded lexicographic, largest first."""
    return (-sum(exp), tuple(-e for e in exp))


def format_monomial(exp: tuple, names: list[str]) -> str:
    parts = []
    for k, e in enumerate(exp):
        if e == 1:
            parts.append(names[k])
        elif e > 1:
            parts.append(f"{names[k]}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial, sym: bool | None = None) -> str:
    """Deterministic text form; ``parse_polynomial`` inverts it exactly.

    ``sym=None`` guesses a symmetric space only for callers that do not know;
    pass it explicitly when the space matters.
    """
    if f.is_zero():
        return "0"
    names = _var_names(f, bool(sym))
    out = []
    for exp in sorted(f.support(), key=monomial_order_key):
        c = f.coeff(exp)
        mono = format_monomial(exp, names)
        if c.imag == 0:
            neg = c.real < 0
            mag = abs(c.real)
            body = mono if (mag == 1 and mono) else (format_number(mag) + ("*" + mono if mono else ""))
        else:
            neg = False
            im = c.imag
            cs = f"({format_number(c.real + 0.0)}{'-' if im < 0 else '+'}{format_number(abs(im))}i)"
            body = cs + ("*" + mono if mono else "")
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def complex_to_json(z) -> list[float] | float:
    z = complex(z)
    return [z.real + 0.0, z.imag + 0.0]


def polynomial_to_json(f: Polynomial, sym: bool) -> dict:
    return {"text": format_polynomial(f, sym), "nvars": f.nvars, "terms": len(f)}
