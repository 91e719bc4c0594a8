"""Exact sparse Laurent polynomials in one variable q over the integers.

Polynomials are kept symbolic end to end; q is only specialized at print
time.  The bar involution q <-> q^-1 is the reason plain power series or
floats would not do.
"""

from __future__ import annotations


class LaurentPoly:
    """Sparse exponent -> integer coefficient map in the variable q."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        d = {}
        if terms:
            for e, c in dict(terms).items():
                if c:
                    d[int(e)] = int(c)
        self._terms = d
        self._hash = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def const(c):
        return LaurentPoly({0: c})

    @staticmethod
    def monomial(exp, coeff=1):
        return LaurentPoly({exp: coeff})

    # -- structure ----------------------------------------------------

    def items(self):
        return sorted(self._terms.items())

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def degree(self):
        if not self._terms:
            raise ValueError("degree of zero polynomial")
        return max(self._terms)

    def valuation(self):
        if not self._terms:
            raise ValueError("valuation of zero polynomial")
        return min(self._terms)

    def leading_coeff(self):
        return self._terms[self.degree()]

    def is_monic(self):
        return bool(self._terms) and self.leading_coeff() == 1

    def coeff(self, exp):
        return self._terms.get(exp, 0)

    def has_nonnegative_coeffs(self):
        return all(c >= 0 for c in self._terms.values())

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        d = dict(self._terms)
        for e, c in other._terms.items():
            d[e] = d.get(e, 0) + c
        return LaurentPoly(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        d = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                d[e] = d.get(e, 0) + c1 * c2
        return LaurentPoly(d)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power; use bar() or shift()")
        out = LaurentPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def bar(self):
        """The involution q -> q^-1."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def shift(self, k):
        """Multiply by q^k."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def truncate_above(self, bound):
        """Keep terms with exponent <= bound."""
        return LaurentPoly({e: c for e, c in self._terms.items() if e <= bound})

    def __call__(self, value):
        from fractions import Fraction

        return sum((Fraction(c) * Fraction(value) ** e for e, c in self._terms.items()),
                   Fraction(0))

    # -- comparison / io ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self!s})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            if e == 0:
                mono = str(abs(c))
            else:
                base = "q" if e == 1 else f"q^{e}"
                mono = base if abs(c) == 1 else f"{abs(c)}*{base}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, mono in parts[1:]:
            text += f" {sign} {mono}"
        return text

    def to_json(self):
        return {"var": "q", "terms": [[e, c] for e, c in self.items()]}

    @staticmethod
    def from_json(obj):
        assert obj["var"] == "q"
        return LaurentPoly({e: c for e, c in obj["terms"]})


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot coerce {x!r} to LaurentPoly")


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
Q = LaurentPoly.monomial(1)
QM1 = Q - ONE
