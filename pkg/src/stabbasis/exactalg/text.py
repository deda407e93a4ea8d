"""Canonical text form of ring elements and its parser.

Grammar (whitespace ignored)::

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := unary ("^" exp)?
    unary  := "-" unary | atom
    atom   := NUMBER | "(" expr ")" | "e[" ints "]" | "ey[" ints "]" | "ex[" ints "]"
              | "q" | "y" | "h" | "a" INDEX
    exp    := INT | "{" INT ("/" INT)? "}"

``e[a,b]`` is ``e^{a alpha_1 + b alpha_2}``; ``q^{n/2}`` is a half-integer power
of ``q``.  Printing sorts monomials by exponent vector (lattice part first,
then ``q``, ``y``, ``h``), so equal values print to identical strings.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .poly import Poly
from .ratfunc import RatFunc
from .ring import Ring


class ParseError(ValueError):
    pass


def _coeff_str(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _exp_str(n: int) -> str:
    return "" if n == 1 else f"^{{{n}}}"


def monomial_str(ring: Ring, exps) -> str:
    parts = []
    for name, (start, r) in ring.blocks.items():
        lam = exps[start:start + r]
        if any(lam):
            head = {"e": "e", "y": "ey", "x": "ex", "a": None}[name]
            if head is None:
                for i, x in enumerate(lam):
                    if x:
                        parts.append(f"a{i + 1}{_exp_str(x)}")
            else:
                parts.append(f"{head}[{','.join(str(x) for x in lam)}]")
    for nm in ("q", "y", "h"):
        j = ring.slot.get(nm)
        if j is None or not exps[j]:
            continue
        k = exps[j]
        if nm == "q":
            if k == 2:
                parts.append("q")
            elif k % 2 == 0:
                parts.append(f"q^{{{k // 2}}}")
            else:
                parts.append(f"q^{{{k}/2}}")
        else:
            parts.append(nm + _exp_str(k))
    return "*".join(parts)


def poly_to_str(p: Poly) -> str:
    if not p.terms:
        return "0"
    ring = p.ring
    out = []
    for k in sorted(p.terms):
        c = p.terms[k]
        mon = monomial_str(ring, ring.decode(k))
        neg = c < 0
        a = -c if neg else c
        if not mon:
            body = _coeff_str(a)
        elif a == 1:
            body = mon
        else:
            body = f"{_coeff_str(a)}*{mon}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def to_str(f) -> str:
    """Canonical string of a Poly or RatFunc."""
    if isinstance(f, Poly):
        return poly_to_str(f)
    if not f.den:
        return poly_to_str(f.num)
    ring = f.ring
    facs = []
    for aid, m in f.den:
        s = f"({poly_to_str(ring.atoms[aid])})"
        facs.append(s + (f"^{m}" if m > 1 else ""))
    facs.sort()
    return f"({poly_to_str(f.num)})/({'*'.join(facs)})"


# --- LaTeX ---------------------------------------------------------------------

def _root_combo_tex(lam, sym: str = "\\alpha") -> str:
    out = ""
    for i, x in enumerate(lam):
        if not x:
            continue
        term = f"{sym}_{{{i + 1}}}"
        if abs(x) != 1:
            term = f"{abs(x)}{term}"
        out += ("-" if x < 0 else ("+" if out else "")) + term
    return out


def monomial_tex(ring: Ring, exps) -> str:
    parts = []
    for name, (start, r) in ring.blocks.items():
        lam = exps[start:start + r]
        if not any(lam):
            continue
        if name == "a":
            for i, x in enumerate(lam):
                if x:
                    parts.append(f"\\alpha_{{{i + 1}}}" + ("" if x == 1 else f"^{{{x}}}"))
        else:
            head = {"e": "e", "y": "e_y", "x": "e_x"}[name]
            parts.append(f"{head}^{{{_root_combo_tex(lam)}}}")
    for nm, tex in (("q", "q"), ("y", "y"), ("h", "\\hbar")):
        j = ring.slot.get(nm)
        if j is None or not exps[j]:
            continue
        k = exps[j]
        if nm == "q":
            k = Fraction(k, 2)
        if k == 1:
            parts.append(tex)
        else:
            ks = str(k.numerator) + ("" if k.denominator == 1 else f"/{k.denominator}") if isinstance(k, Fraction) else str(k)
            parts.append(f"{tex}^{{{ks}}}")
    return " ".join(parts)


def _coeff_tex(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"\\tfrac{{{c.numerator}}}{{{c.denominator}}}"


def poly_to_tex(p: Poly) -> str:
    if not p.terms:
        return "0"
    ring = p.ring
    out = ""
    for k in sorted(p.terms):
        c = p.terms[k]
        mon = monomial_tex(ring, ring.decode(k))
        a = abs(c)
        body = _coeff_tex(a) if not mon else (mon if a == 1 else f"{_coeff_tex(a)}\\,{mon}")
        if not out:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


def to_latex(f) -> str:
    """LaTeX form (math mode body) of a Poly or RatFunc; characters as ``e^{...}`` in simple roots."""
    if isinstance(f, Poly):
        return poly_to_tex(f)
    if not f.den:
        return poly_to_tex(f.num)
    ring = f.ring
    facs = []
    for aid, m in f.den:
        s = f"({poly_to_tex(ring.atoms[aid])})"
        facs.append(s + (f"^{{{m}}}" if m > 1 else ""))
    facs.sort()
    return f"\\frac{{{poly_to_tex(f.num)}}}{{{''.join(facs)}}}"


# --- parsing --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(ey|ex|e)\[([-\d,\s]*)\]|(a)(\d+)|([qyh])|(\S))")


def _tokenize(text: str):
    pos = 0
    toks = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at {text[pos:]!r}")
        pos = m.end()
        if m.group(1):
            toks.append(("num", int(m.group(1))))
        elif m.group(2):
            body = m.group(3).strip()
            vec = tuple(int(t) for t in body.split(",")) if body else ()
            toks.append(("lat", (m.group(2), vec)))
        elif m.group(4):
            toks.append(("avar", int(m.group(5))))
        elif m.group(6):
            toks.append(("var", m.group(6)))
        else:
            toks.append(("op", m.group(7)))
    return toks


class _Parser:
    def __init__(self, ring: Ring, text: str):
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, val=None):
        t = self.peek()
        if t[0] is None or (kind and t[0] != kind) or (val is not None and t[1] != val):
            raise ParseError(f"expected {val or kind}, got {t[1]!r}")
        self.i += 1
        return t

    def parse(self) -> RatFunc:
        v = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input {self.peek()[1]!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            v = v + t if op == "+" else v - t
        return v

    def term(self):
        v = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            t = self.factor()
            v = v * t if op == "*" else v / t
        return v

    def factor(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.factor()
        base, is_q = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            e = self.exponent()
            if is_q:
                if (2 * e).denominator != 1:
                    raise ParseError("q exponent must be a multiple of 1/2")
                return _qmono(self.ring, int(2 * e))
            if e.denominator != 1:
                raise ParseError("fractional exponent")
            return base ** int(e)
        return base

    def exponent(self) -> Fraction:
        if self.peek() == ("op", "{"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            n = self.take("num")[1]
            d = 1
            if self.peek() == ("op", "/"):
                self.take()
                d = self.take("num")[1]
            self.take("op", "}")
            return Fraction(sign * n, d)
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        return Fraction(sign * self.take("num")[1])

    def atom(self):
        kind, val = self.take()
        ring = self.ring
        if kind == "num":
            return RatFunc.const(ring, val), False
        if kind == "op" and val == "(":
            v = self.expr()
            self.take("op", ")")
            return v, False
        if kind == "lat":
            head, vec = val
            block = {"e": "e", "ey": "y", "ex": "x"}[head]
            if block not in ring.blocks:
                raise ParseError(f"{head}[...] not valid in this ring")
            start, r = ring.blocks[block]
            if len(vec) != r:
                raise ParseError(f"{head}[...] needs {r} coordinates")
            e = [0] * ring.nslots
            e[start:start + r] = vec
            return RatFunc.monomial(ring, ring.encode(e)), False
        if kind == "avar":
            if "a" not in ring.blocks or not 1 <= val <= ring.blocks["a"][1]:
                raise ParseError(f"a{val} not valid in this ring")
            e = [0] * ring.nslots
            e[val - 1] = 1
            return RatFunc.monomial(ring, ring.encode(e)), False
        if kind == "var":
            if val not in ring.slot:
                raise ParseError(f"variable {val} not valid in this ring")
            if val == "q":
                return _qmono(ring, 2), True
            e = [0] * ring.nslots
            e[ring.slot[val]] = 1
            return RatFunc.monomial(ring, ring.encode(e)), False
        raise ParseError(f"unexpected token {val!r}")


def _qmono(ring: Ring, half: int) -> RatFunc:
    e = [0] * ring.nslots
    e[ring.slot["q"]] = half
    return RatFunc.monomial(ring, ring.encode(e))


def parse(ring: Ring, text: str) -> RatFunc:
    """Parse the text form back into a RatFunc over ``ring``."""
    return _Parser(ring, text).parse()
