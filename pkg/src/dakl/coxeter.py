"""Generic Coxeter systems from a symmetric generalized Cartan matrix.

Used for the classical ground-truth computations (symmetric groups, affine
A1): reduced words, Bruhat order, R-polynomials and Deodhar counts.  The
geometric representation on root coordinates keeps everything exact and
works uniformly for finite and affine types.
"""

from __future__ import annotations

from .errors import ConventionMismatch
from .laurent import LaurentPoly, ONE, Q, QM1, ZERO


class CoxeterSystem:
    """Coxeter group with root system, from a symmetric GCM."""

    def __init__(self, matrix):
        self.a = tuple(tuple(int(x) for x in row) for row in matrix)
        self.n = len(self.a)
        for i in range(self.n):
            if self.a[i][i] != 2:
                raise ValueError("GCM needs 2s on the diagonal")
            for j in range(self.n):
                if self.a[i][j] != self.a[j][i] or (i != j and self.a[i][j] > 0):
                    raise ValueError("need a symmetric GCM with nonpositive off-diagonal")
        ident = tuple(tuple(1 if i == j else 0 for j in range(self.n))
                      for i in range(self.n))
        self.identity = (ident, ident)
        self._simples = [self._simple_matrix(i) for i in range(self.n)]
        self._len_cache: dict = {self.identity: 0}
        self._leq_cache: dict = {}
        self._r_cache: dict = {}

    @staticmethod
    def symmetric_group(n):
        """Type A_(n-1) system, the symmetric group S_n."""
        rank = n - 1
        a = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(rank)]
             for i in range(rank)]
        return CoxeterSystem(a)

    @staticmethod
    def affine_a1():
        return CoxeterSystem([[2, -2], [-2, 2]])

    def _simple_matrix(self, i):
        return tuple(tuple((1 if r == c else 0) - (self.a[i][c] if r == i else 0)
                           for c in range(self.n))
                     for r in range(self.n))

    def _apply(self, m, vec):
        return tuple(sum(m[r][c] * vec[c] for c in range(self.n)) for r in range(self.n))

    def _matmul(self, m1, m2):
        n = self.n
        return tuple(tuple(sum(m1[i][k] * m2[k][j] for k in range(n)) for j in range(n))
                     for i in range(n))

    # Elements are pairs (matrix, inverse matrix) acting on root coordinates.

    def simple(self, i):
        s = self._simples[i]
        return (s, s)

    def mult(self, x, y):
        return (self._matmul(x[0], y[0]), self._matmul(y[1], x[1]))

    def inverse(self, x):
        return (x[1], x[0])

    def act_simple_root(self, x, i):
        return self._apply(x[0], tuple(1 if j == i else 0 for j in range(self.n)))

    def from_word(self, word):
        x = self.identity
        for i in word:
            x = self.mult(x, self.simple(i))
        return x

    @staticmethod
    def _is_negative(vec):
        return any(c < 0 for c in vec)

    def right_descents(self, x):
        return [i for i in range(self.n) if self._is_negative(self.act_simple_root(x, i))]

    def left_descents(self, x):
        return self.right_descents(self.inverse(x))

    def length(self, x):
        cached = self._len_cache.get(x)
        if cached is not None:
            return cached
        word = self.reduced_word(x)
        return self._len_cache.setdefault(x, len(word))

    def reduced_word(self, x):
        """Canonical reduced word by greedy lowest right descent."""
        word = []
        cur = x
        while cur != self.identity:
            ds = self.right_descents(cur)
            if not ds:
                raise ConventionMismatch("nonidentity element with no descent")
            i = ds[0]
            word.append(i)
            cur = self.mult(cur, self.simple(i))
        return tuple(reversed(word))

    def all_reduced_words(self, x):
        if x == self.identity:
            return [()]
        out = []
        for i in self.right_descents(x):
            shorter = self.mult(x, self.simple(i))
            out.extend(w + (i,) for w in self.all_reduced_words(shorter))
        return out

    def leq(self, a, b):
        """Bruhat order via the lifting property."""
        key = (a, b)
        cached = self._leq_cache.get(key)
        if cached is not None:
            return cached
        if b == self.identity:
            out = a == self.identity
        elif self.length(a) > self.length(b):
            out = False
        else:
            i = self.left_descents(b)[0]
            s = self.simple(i)
            sb = self.mult(s, b)
            sa = self.mult(s, a)
            if self.length(sa) < self.length(a):
                out = self.leq(sa, sb)
            else:
                out = self.leq(a, sb)
        self._leq_cache[key] = out
        return out

    def ball(self, max_length):
        """All elements of length <= max_length."""
        seen = {self.identity}
        frontier = [self.identity]
        for _ in range(max_length):
            nxt = []
            for x in frontier:
                for i in range(self.n):
                    y = self.mult(x, self.simple(i))
                    if y not in seen and self.length(y) > self.length(x):
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen, key=lambda x: (self.length(x), x))

    # -- classical R-polynomials and Deodhar counting ----------------------

    def classical_r(self, v, w) -> LaurentPoly:
        """R_{v,w} by the standard recursion."""
        key = (v, w)
        cached = self._r_cache.get(key)
        if cached is not None:
            return cached
        if not self.leq(v, w):
            out = ZERO
        elif w == self.identity:
            out = ONE
        else:
            i = self.left_descents(w)[0]
            s = self.simple(i)
            sw = self.mult(s, w)
            sv = self.mult(s, v)
            if self.length(sv) < self.length(v):
                out = self.classical_r(sv, sw)
            else:
                out = QM1 * self.classical_r(v, sw) + Q * self.classical_r(sv, sw)
        self._r_cache[key] = out
        return out

    def deodhar_count(self, word, v) -> LaurentPoly:
        """Distinguished-subexpression count for the cell of the given reduced
        word against the opposite cell of v.

        Weights: up-cross 1, up-stay (q-1), down-cross q; down-stays are
        forbidden (the distinguished condition).
        """
        states = {self.identity: ONE}
        for letter in word:
            nxt: dict = {}
            for pi, weight in states.items():
                wall = self.act_simple_root(pi, letter)
                crossed = self.mult(pi, self.simple(letter))
                if self._is_negative(wall):
                    _accumulate(nxt, crossed, weight * Q)
                else:
                    _accumulate(nxt, crossed, weight)
                    _accumulate(nxt, pi, weight * QM1)
            states = nxt
        return states.get(v, ZERO)


def _accumulate(d, key, poly):
    d[key] = d.get(key, ZERO) + poly
