"""Root datum for an untwisted affine ADE system.

Conventions fixed here and used everywhere else:

* Coweights are written on the basis {Lambda0^vee} u {finite coroots} u {K}:
  level = coefficient of Lambda0^vee, finite = coroot coordinates,
  delta = coefficient of the canonical central element K (delta^vee).
  alpha_0^vee = K - theta^vee.
* An affine real root is beta + d*delta with beta a finite root; a double
  affine root is zeta + n*pi.  Positivity: d > 0, or d = 0 and beta > 0;
  likewise n > 0, or n = 0 and zeta > 0.
* W^v = W_fin x Q^vee in the canonical pair form (w, q) meaning w o t_q,
  where t_q acts on affine roots by beta + d*delta -> beta + (d - <beta,q>)delta
  and on coweights by mu -> mu + level*q - (<mu_fin,q> + level*(q,q)/2)K.
* W_P elements are pi^mu * v acting on the apartment by p -> mu + v(p),
  and on double affine roots by zeta + n*pi -> v(zeta) + (n + <v(zeta),mu>)pi.
  Reflections: s_{zeta + n*pi} = pi^{n*zeta^vee} s_zeta.

All arithmetic is exact (ints and Fractions); there is no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cartan import CartanData
from .errors import ConventionMismatch, DaklError


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Coweight:
    """Element of the affine coweight space (rational coordinates allowed)."""

    level: Fraction
    finite: tuple
    delta: Fraction

    def __add__(self, other):
        return Coweight(self.level + other.level,
                        tuple(a + b for a, b in zip(self.finite, other.finite)),
                        self.delta + other.delta)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Coweight(-self.level, tuple(-a for a in self.finite), -self.delta)

    def scale(self, t):
        t = _fr(t)
        return Coweight(self.level * t, tuple(a * t for a in self.finite), self.delta * t)

    def is_integral(self):
        return (self.level.denominator == 1 and self.delta.denominator == 1
                and all(a.denominator == 1 for a in self.finite))

    def sort_key(self):
        return (self.level, self.finite, self.delta)


@dataclass(frozen=True)
class AffineRoot:
    """Real affine root beta + d*delta; finite part beta is never zero."""

    finite: tuple
    d: int

    def __neg__(self):
        return AffineRoot(tuple(-c for c in self.finite), -self.d)

    def is_positive(self):
        return self.d > 0 or (self.d == 0 and sum(self.finite) > 0)


@dataclass(frozen=True)
class DaRoot:
    """Double affine root zeta + n*pi."""

    zeta: AffineRoot
    n: int

    def __neg__(self):
        return DaRoot(-self.zeta, -self.n)

    def is_positive(self):
        return self.n > 0 or (self.n == 0 and self.zeta.is_positive())


@dataclass(frozen=True)
class WeylVElt:
    """Element of W^v as a canonical pair (finite Weyl matrix, Q^vee part)."""

    m: tuple
    q: tuple

    def sort_key(self):
        return (self.q, self.m)


@dataclass(frozen=True)
class WPElt:
    """Element pi^mu * v of W_P = W^v x P."""

    mu: Coweight
    v: WeylVElt

    def sort_key(self):
        return (self.mu.sort_key(), self.v.sort_key())


class AffineData:
    """Operations for the affine root datum attached to a CartanData."""

    def __init__(self, cartan: CartanData):
        self.cartan = cartan
        self.n = cartan.rank
        self._a = cartan.matrix
        self._id_matrix = tuple(tuple(1 if i == j else 0 for j in range(self.n))
                                for i in range(self.n))
        self._len_cache: dict = {}
        self._word_cache: dict = {}
        self._leq_cache: dict = {}
        self._dom_cache: dict = {}

    # -- scalars --------------------------------------------------------

    def zero_coweight(self):
        return Coweight(Fraction(0), tuple(Fraction(0) for _ in range(self.n)), Fraction(0))

    def coweight(self, level=0, finite=None, delta=0):
        f = tuple(_fr(x) for x in (finite or [0] * self.n))
        if len(f) != self.n:
            raise ValueError("finite part has wrong rank")
        return Coweight(_fr(level), f, _fr(delta))

    def lambda0(self):
        return self.coweight(level=1)

    def K(self):
        return self.coweight(delta=1)

    def simple_coroot(self, i):
        """alpha_i^vee, i = 0..n with alpha_0^vee = K - theta^vee."""
        if i == 0:
            return self.coweight(finite=[-c for c in self.cartan.theta], delta=1)
        return self.coweight(finite=[1 if j == i - 1 else 0 for j in range(self.n)])

    def simple_affroot(self, i):
        """alpha_i, i = 0..n with alpha_0 = delta - theta."""
        if i == 0:
            return AffineRoot(tuple(-c for c in self.cartan.theta), 1)
        return AffineRoot(tuple(1 if j == i - 1 else 0 for j in range(self.n)), 0)

    # -- pairings --------------------------------------------------------

    def pair_fin(self, beta, fin):
        """<beta, mu_fin> for a finite root vs coroot coordinates."""
        a = self._a
        return sum(beta[i] * a[i][j] * fin[j] for i in range(self.n) for j in range(self.n))

    def bilinear(self, q1, q2):
        """Normalized invariant form on the coroot space, (a^vee, a^vee) = 2."""
        a = self._a
        return sum(q1[i] * a[i][j] * q2[j] for i in range(self.n) for j in range(self.n))

    def pair(self, root: AffineRoot, mu: Coweight):
        """<beta + d*delta, mu> = <beta, mu_fin> + d*level(mu)."""
        return self.pair_fin(root.finite, mu.finite) + root.d * mu.level

    def two_rho_pair(self, mu: Coweight):
        """<2 rho, mu> with the Lambda0^vee coefficient of 2 rho normalized to 0."""
        return 2 * sum(mu.finite) + 2 * self.cartan.dual_coxeter_number * mu.delta

    def coroot(self, root: AffineRoot) -> Coweight:
        """(beta + d*delta)^vee = beta^vee + d*K (simply laced identification)."""
        return self.coweight(finite=root.finite, delta=root.d)

    def reflect_coweight(self, root: AffineRoot, mu: Coweight) -> Coweight:
        return mu - self.coroot(root).scale(self.pair(root, mu))

    def is_dominant(self, mu: Coweight):
        return all(self.pair(self.simple_affroot(i), mu) >= 0 for i in range(self.n + 1))

    # -- finite Weyl matrices ---------------------------------------------

    def _apply(self, m, vec):
        return tuple(sum(m[i][j] * vec[j] for j in range(self.n)) for i in range(self.n))

    def _matmul(self, m1, m2):
        n = self.n
        return tuple(tuple(sum(m1[i][k] * m2[k][j] for k in range(n)) for j in range(n))
                     for i in range(n))

    def reflection_matrix(self, beta):
        """Matrix of s_beta on root (equivalently coroot) coordinates."""
        a_beta = tuple(sum(self._a[i][j] * beta[j] for j in range(self.n))
                       for i in range(self.n))
        return tuple(tuple((1 if i == j else 0) - beta[i] * a_beta[j]
                           for j in range(self.n))
                     for i in range(self.n))

    # -- W^v ---------------------------------------------------------------

    def v_identity(self):
        return WeylVElt(self._id_matrix, tuple(0 for _ in range(self.n)))

    def v_simple(self, i) -> WeylVElt:
        """s_i for i = 0..n; s_0 = s_theta o t_{-theta^vee}."""
        if i == 0:
            theta = self.cartan.theta
            return WeylVElt(self.reflection_matrix(theta), tuple(-c for c in theta))
        beta = tuple(1 if j == i - 1 else 0 for j in range(self.n))
        return WeylVElt(self.reflection_matrix(beta), tuple(0 for _ in range(self.n)))

    def v_reflection(self, root: AffineRoot) -> WeylVElt:
        """s_{beta + d*delta} = s_beta o t_{d*beta^vee}."""
        return WeylVElt(self.reflection_matrix(root.finite),
                        tuple(root.d * c for c in root.finite))

    def v_mult(self, x: WeylVElt, y: WeylVElt) -> WeylVElt:
        # (w1, q1)(w2, q2) = (w1 w2, w2^-1(q1) + q2)
        m2inv = self._inverse_matrix(y.m)
        q = tuple(a + b for a, b in zip(self._apply(m2inv, x.q), y.q))
        return WeylVElt(self._matmul(x.m, y.m), q)

    def _inverse_matrix(self, m):
        inv = _MATRIX_INVERSE_CACHE.get(m)
        if inv is None:
            inv = _invert_int_matrix(m)
            _MATRIX_INVERSE_CACHE[m] = inv
        return inv

    def v_inverse(self, x: WeylVElt) -> WeylVElt:
        minv = self._inverse_matrix(x.m)
        return WeylVElt(minv, tuple(-c for c in self._apply(x.m, x.q)))

    def v_act_affroot(self, x: WeylVElt, root: AffineRoot) -> AffineRoot:
        d = root.d - self.pair_fin(root.finite, x.q)
        return AffineRoot(self._apply(x.m, root.finite), d)

    def v_act_coweight(self, x: WeylVElt, mu: Coweight) -> Coweight:
        q = x.q
        lvl = mu.level
        fin = tuple(a + lvl * b for a, b in zip(mu.finite, q))
        dlt = mu.delta - (self.pair_fin(q, mu.finite) + lvl * Fraction(self.bilinear(q, q), 2))
        return Coweight(lvl, self._apply(x.m, fin), dlt)

    def v_word(self, x: WeylVElt, word) -> WeylVElt:
        for i in word:
            x = self.v_mult(x, self.v_simple(i))
        return x

    def v_from_word(self, word) -> WeylVElt:
        return self.v_word(self.v_identity(), word)

    # Coxeter structure of W^v (exact, window-free).

    def v_length(self, x: WeylVElt) -> int:
        cached = self._len_cache.get(x)
        if cached is not None:
            return cached
        total = 0
        for beta in self.cartan.roots:
            c = self.pair_fin(beta, x.q)
            dmin = 0 if sum(beta) > 0 else 1
            total += max(0, c - dmin)
            if c >= dmin and sum(self._apply(x.m, beta)) < 0:
                total += 1
        self._len_cache[x] = total
        return total

    def v_reduced_word(self, x: WeylVElt):
        """Canonical reduced word (greedy lowest right descent)."""
        cached = self._word_cache.get(x)
        if cached is not None:
            return cached
        word = []
        cur = x
        ident = self.v_identity()
        while cur != ident:
            for i in range(self.n + 1):
                if not self.v_act_affroot(cur, self.simple_affroot(i)).is_positive():
                    word.append(i)
                    cur = self.v_mult(cur, self.v_simple(i))
                    break
            else:
                raise ConventionMismatch("nonidentity W^v element with no descent")
        result = tuple(reversed(word))
        self._word_cache[x] = result
        return result

    def v_leq(self, a: WeylVElt, b: WeylVElt) -> bool:
        """Bruhat order on W^v via the lifting property."""
        key = (a, b)
        cached = self._leq_cache.get(key)
        if cached is not None:
            return cached
        ident = self.v_identity()
        if b == ident:
            out = a == ident
        elif self.v_length(a) > self.v_length(b):
            out = False
        else:
            binv = self.v_inverse(b)
            i = next(i for i in range(self.n + 1)
                     if not self.v_act_affroot(binv, self.simple_affroot(i)).is_positive())
            s = self.v_simple(i)
            sb = self.v_mult(s, b)
            sa = self.v_mult(s, a)
            if self.v_length(sa) < self.v_length(a):
                out = self.v_leq(sa, sb)
            else:
                out = self.v_leq(a, sb)
        self._leq_cache[key] = out
        return out

    def v_minrep_mod_stabilizer(self, x: WeylVElt, mu: Coweight) -> WeylVElt:
        """Minimal representative of x modulo the stabilizer W^v_mu (mu dominant)."""
        if not self.is_dominant(mu):
            raise ValueError("stabilizer parabolic needs a dominant coweight")
        js = [i for i in range(self.n + 1) if self.pair(self.simple_affroot(i), mu) == 0]
        changed = True
        while changed:
            changed = False
            for i in js:
                if not self.v_act_affroot(x, self.simple_affroot(i)).is_positive():
                    x = self.v_mult(x, self.v_simple(i))
                    changed = True
        return x

    def v_parabolic_leq(self, a: WeylVElt, b: WeylVElt, mu: Coweight) -> bool:
        """Bruhat order on W^v / W^v_mu, tested on minimal representatives."""
        return self.v_leq(self.v_minrep_mod_stabilizer(a, mu),
                          self.v_minrep_mod_stabilizer(b, mu))

    def v_parabolic_length(self, a: WeylVElt, mu: Coweight) -> int:
        """#{positive affine roots g: a(g) < 0, <g, mu> != 0} (exact)."""
        total = 0
        for beta in self.cartan.roots:
            c = self.pair_fin(beta, a.q)
            dmin = 0 if sum(beta) > 0 else 1
            img_fin_negative = sum(self._apply(a.m, beta)) < 0
            pf = self.pair_fin(beta, mu.finite)
            for d in range(dmin, max(dmin, c) + 1):
                newd = d - c
                inverted = newd < 0 or (newd == 0 and img_fin_negative)
                if inverted and pf + d * mu.level != 0:
                    total += 1
        return total

    def dominantize(self, mu: Coweight):
        """Return (mu_plus, u) with mu = u(mu_plus), u minimal; needs level > 0."""
        cached = self._dom_cache.get(mu)
        if cached is not None:
            return cached
        if mu.level <= 0:
            raise DaklError("dominantize needs positive level")
        u = self.v_identity()
        cur = mu
        for _ in range(100000):
            for i in range(self.n + 1):
                root = self.simple_affroot(i)
                if self.pair(root, cur) < 0:
                    cur = self.reflect_coweight(root, cur)
                    u = self.v_mult(u, self.v_simple(i))
                    break
            else:
                self._dom_cache[mu] = (cur, u)
                return cur, u
        raise ConventionMismatch("dominantize did not terminate")

    # -- W_P ----------------------------------------------------------------

    def wp_identity(self):
        return WPElt(self.zero_coweight(), self.v_identity())

    def wp_translation(self, mu: Coweight) -> WPElt:
        return WPElt(mu, self.v_identity())

    def wp_from_v(self, v: WeylVElt) -> WPElt:
        return WPElt(self.zero_coweight(), v)

    def wp_mult(self, x: WPElt, y: WPElt) -> WPElt:
        return WPElt(x.mu + self.v_act_coweight(x.v, y.mu), self.v_mult(x.v, y.v))

    def wp_inverse(self, x: WPElt) -> WPElt:
        vinv = self.v_inverse(x.v)
        return WPElt(-self.v_act_coweight(vinv, x.mu), vinv)

    def wp_act_point(self, x: WPElt, p: Coweight) -> Coweight:
        return x.mu + self.v_act_coweight(x.v, p)

    def wp_act_daroot(self, x: WPElt, g: DaRoot) -> DaRoot:
        zeta = self.v_act_affroot(x.v, g.zeta)
        return DaRoot(zeta, g.n + self.pair(zeta, x.mu))

    def da_reflection(self, g: DaRoot) -> WPElt:
        """s_{zeta + n*pi} = pi^{n*zeta^vee} s_zeta."""
        return WPElt(self.coroot(g.zeta).scale(g.n), self.v_reflection(g.zeta))

    def wp_conjugate_root(self, x: WPElt, g: DaRoot) -> DaRoot:
        """Root such that x s_g x^-1 = s_{x(g)} (up to sign of the root)."""
        return self.wp_act_daroot(x, g)

    # -- enumeration within windows -----------------------------------------

    def affine_roots_window(self, max_delta: int):
        out = []
        for beta in self.cartan.roots:
            dmin = 0 if sum(beta) > 0 else 1
            for d in range(dmin, max_delta + 1):
                out.append(AffineRoot(beta, d))
        return out

    def positive_daroots_window(self, max_delta: int, max_pi: int):
        out = []
        for beta in self.cartan.roots:
            for d in range(-max_delta, max_delta + 1):
                if d == 0 and beta == tuple(0 for _ in range(self.n)):
                    continue
                zeta = AffineRoot(beta, d)
                nmin = 0 if zeta.is_positive() else 1
                for npi in range(nmin, max_pi + 1):
                    out.append(DaRoot(zeta, npi))
        return out


_MATRIX_INVERSE_CACHE: dict = {}


def _invert_int_matrix(m):
    n = len(m)
    aug = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(1 if i == j else 0)
                                                    for j in range(n)]
           for i in range(n)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            x = aug[i][n + j]
            if x.denominator != 1:
                raise ConventionMismatch("Weyl matrix with non-integer inverse")
            row.append(int(x))
        out.append(tuple(row))
    return tuple(out)


@lru_cache(maxsize=None)
def affine_data(cartan: CartanData) -> AffineData:
    return AffineData(cartan)
