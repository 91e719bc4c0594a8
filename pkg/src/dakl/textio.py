"""Parsing and printing of elements in the pi[...]*s_i grammar.

Grammar (whitespace-free):

    element  := 'e' | weyl | 'pi[' coweight ']' ('*' weyl)?
    weyl     := 's'<int> ('*' 's'<int>)*
    coweight := ['-'] term (('+'|'-') term)*
    term     := [<int> '*'] name | <int>
    name     := 'Lambda0' | 'delta' | 'alpha'<int> | 'alpha'<int>'v'

Coweights are in the Lambda0 / alpha_i^vee / delta^vee basis; following the
simply laced identification, 'alpha1' and 'alpha1v' both denote the coroot
and 'delta' denotes the central element K = delta^vee.
"""

from __future__ import annotations

from fractions import Fraction

from .core import AffineData, Coweight, WPElt
from .errors import ParseError


def format_coweight(mu: Coweight) -> str:
    parts = []

    def add(coeff, name):
        if coeff == 0:
            return
        if coeff == 1:
            parts.append(("+", name))
        elif coeff == -1:
            parts.append(("-", name))
        else:
            sign = "-" if coeff < 0 else "+"
            parts.append((sign, f"{_fmt_coeff(abs(coeff))}*{name}"))

    add(mu.level, "Lambda0")
    for i, c in enumerate(mu.finite):
        add(c, f"alpha{i + 1}")
    add(mu.delta, "delta")
    if not parts:
        return "0"
    sign, head = parts[0]
    out = ("-" if sign == "-" else "") + head
    for sign, item in parts[1:]:
        out += sign + item
    return out


def _fmt_coeff(c: Fraction):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_element(data: AffineData, x: WPElt) -> str:
    word = data.v_reduced_word(x.v)
    weyl = "*".join(f"s{i}" for i in word)
    zero = data.zero_coweight()
    if x.mu == zero:
        return weyl if weyl else "e"
    head = f"pi[{format_coweight(x.mu)}]"
    return f"{head}*{weyl}" if weyl else head


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, token):
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def expect(self, token):
        if not self.take(token):
            raise ParseError(self.text, self.pos, repr(token))

    def integer(self):
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        while self.peek().isdigit():
            self.pos += 1
        if self.pos == start or self.text[start:self.pos] == "-":
            raise ParseError(self.text, start, "an integer")
        return int(self.text[start:self.pos])

    def done(self):
        return self.pos >= len(self.text)


def parse_coweight(data: AffineData, text: str) -> Coweight:
    sc = _Scanner(text.strip())
    mu = _coweight_body(data, sc)
    if not sc.done():
        raise ParseError(sc.text, sc.pos, "end of coweight")
    return mu


def _coweight_body(data: AffineData, sc: _Scanner) -> Coweight:
    total = data.zero_coweight()
    sign = -1 if sc.take("-") else 1
    while True:
        total = total + _term(data, sc).scale(sign)
        if sc.take("+"):
            sign = 1
        elif sc.take("-"):
            sign = -1
        else:
            return total


def _term(data: AffineData, sc: _Scanner) -> Coweight:
    coeff = 1
    if sc.peek().isdigit():
        coeff = sc.integer()
        if not sc.take("*"):
            if coeff == 0:
                return data.zero_coweight()
            raise ParseError(sc.text, sc.pos, "'*' after a coefficient")
    if sc.take("Lambda0"):
        return data.lambda0().scale(coeff)
    if sc.take("delta"):
        return data.K().scale(coeff)
    if sc.take("alpha"):
        i = sc.integer()
        sc.take("v")
        if not 1 <= i <= data.n:
            raise ParseError(sc.text, sc.pos, f"coroot index in 1..{data.n}")
        return data.simple_coroot(i).scale(coeff)
    raise ParseError(sc.text, sc.pos, "Lambda0, delta or alpha<i>")


def parse_element(data: AffineData, text: str) -> WPElt:
    sc = _Scanner(text.strip())
    if sc.take("e") and sc.done():
        return data.wp_identity()
    sc.pos = 0
    mu = data.zero_coweight()
    if sc.take("pi"):
        sc.expect("[")
        mu = _coweight_body(data, sc)
        sc.expect("]")
        if not sc.done():
            sc.expect("*")
    word = []
    while not sc.done():
        sc.expect("s")
        i = sc.integer()
        if not 0 <= i <= data.n:
            raise ParseError(sc.text, sc.pos, f"simple reflection index in 0..{data.n}")
        word.append(i)
        if not sc.done():
            sc.expect("*")
    return WPElt(mu, data.v_from_word(word))
