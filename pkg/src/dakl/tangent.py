"""Tangent root systems and Weyl groups at apartment points.

The local system at a point p collects the double affine roots whose
reflections fix p; its Weyl group W_p is realized inside W_P.  The root set
is infinite, so every enumeration runs inside a truncation window and is
accepted only if doubling the window does not change the answer.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .core import AffineData, Coweight, DaRoot, WPElt
from .errors import NotRealizable, StabilizationFailure

log = logging.getLogger("dakl")


@dataclass(frozen=True)
class Window:
    """Truncation parameters: delta-degree, pi-coefficient and search height."""

    max_delta: int = 6
    max_pi: int = 6
    height: int = 40

    def doubled(self):
        return Window(2 * self.max_delta, 2 * self.max_pi, 2 * self.height)


DEFAULT_WINDOW = Window()


@dataclass(frozen=True)
class LocalWeylElt:
    """Element of a local Weyl group: reduced word in local simples plus its
    realization in W_P.  Equality is equality of realizations."""

    word: tuple
    elt: WPElt

    def __eq__(self, other):
        return isinstance(other, LocalWeylElt) and self.elt == other.elt

    def __hash__(self):
        return hash(self.elt)

    @property
    def length(self):
        return len(self.word)


class LocalSystem:
    """Tangent root system Phi_p with its simple roots and Weyl group."""

    def __init__(self, data: AffineData, point: Coweight, window: Window = DEFAULT_WINDOW):
        self.data = data
        self.point = point
        self.window = window
        self._pos_cache: dict = {}
        self._simples = None

    # -- membership and enumeration ----------------------------------------

    def is_member(self, g: DaRoot) -> bool:
        """g = zeta + n*pi fixes the point iff <zeta, p> = n."""
        return self.data.pair(g.zeta, self.point) == g.n

    def positive_roots(self, window: Window = None):
        window = window or self.window
        key = (window.max_delta, window.max_pi)
        cached = self._pos_cache.get(key)
        if cached is not None:
            return cached
        out = []
        for beta in self.data.cartan.roots:
            for d in range(-window.max_delta, window.max_delta + 1):
                zeta = _affroot(beta, d)
                n = self.data.pair(zeta, self.point)
                if n.denominator != 1 or abs(n) > window.max_pi:
                    continue
                g = DaRoot(zeta, int(n))
                if g.is_positive():
                    out.append(g)
        out = tuple(out)
        self._pos_cache[key] = out
        return out

    # -- simple roots --------------------------------------------------------

    def simples(self):
        """Indecomposable positive local roots, via the reflection criterion:
        g is simple iff s_g permutes the other positive local roots.

        Checked against the doubled window; a change raises
        StabilizationFailure."""
        if self._simples is not None:
            return self._simples
        small = self._simples_raw(self.window)
        big = self._simples_raw(self.window.doubled())
        in_small_window = [g for g in big
                          if abs(g.zeta.d) <= self.window.max_delta
                          and abs(g.n) <= self.window.max_pi]
        if set(small) != set(in_small_window):
            raise StabilizationFailure("local simple roots", self.window)
        self._simples = tuple(sorted(big, key=_daroot_key))
        return self._simples

    def _simples_raw(self, window):
        positives = self.positive_roots(window)
        out = []
        for g in positives:
            refl = self.data.da_reflection(g)
            if all(d == g or self.data.wp_act_daroot(refl, d).is_positive()
                   for d in positives):
                out.append(g)
        return out

    def germ_parabolic(self, direction: Coweight):
        """Simple roots of the standard parabolic fixing the germ [p, p+eps*dir)."""
        return tuple(g for g in self.simples() if self.data.pair(g.zeta, direction) == 0)

    # -- elements -------------------------------------------------------------

    def identity(self):
        return LocalWeylElt((), self.data.wp_identity())

    def simple_reflection(self, g: DaRoot) -> LocalWeylElt:
        return LocalWeylElt((g,), self.data.da_reflection(g))

    def inversions(self, x: WPElt, window: Window = None):
        """{g in Phi_p^+ : x(g) < 0}, enumerated in the window with a
        doubling stability check."""
        small = self._inversions_raw(x, window or self.window)
        big = self._inversions_raw(x, (window or self.window).doubled())
        if set(small) != set(big):
            raise StabilizationFailure("inversion set", window or self.window)
        return small

    def _inversions_raw(self, x: WPElt, window):
        return [g for g in self.positive_roots(window)
                if not self.data.wp_act_daroot(x, g).is_positive()]

    def _word_from_inversions(self, inv):
        """Peel local simples off a finite biconvex set; returns the word of
        the unique element with that inversion set (Papi)."""
        data = self.data
        simples = self.simples()
        cur = list(inv)
        peeled = []
        while cur:
            gamma = next((g for g in simples if g in cur), None)
            if gamma is None:
                raise NotRealizable(
                    f"no local simple root inside {len(cur)} remaining inversions; "
                    "window too small or input not in the local Weyl group")
            refl = data.da_reflection(gamma)
            nxt = []
            for g in cur:
                if g == gamma:
                    continue
                img = data.wp_act_daroot(refl, g)
                if not img.is_positive():
                    raise NotRealizable("inversion set is not biconvex")
                nxt.append(img)
            peeled.append(gamma)
            cur = nxt
        return tuple(reversed(peeled))

    def element_from_wp(self, x: WPElt) -> LocalWeylElt:
        """Realize x as a local Weyl element (raises NotRealizable if x is not
        a product of local reflections)."""
        word = self._word_from_inversions(self.inversions(x))
        realized = self._realize(word)
        if realized != x:
            raise NotRealizable("element does not lie in the local Weyl group")
        return LocalWeylElt(word, x)

    def _realize(self, word):
        out = self.data.wp_identity()
        for g in word:
            out = self.data.wp_mult(out, self.data.da_reflection(g))
        return out

    def overline(self, x: WPElt) -> LocalWeylElt:
        """The unique local element whose local inversion set realizes
        x^-1(Phi^-) n Phi_p (the overline projection)."""
        inv = self.inversions(x)
        word = self._word_from_inversions(inv)
        return LocalWeylElt(word, self._realize(word))

    def mult(self, a: LocalWeylElt, b: LocalWeylElt) -> LocalWeylElt:
        prod = self.data.wp_mult(a.elt, b.elt)
        return self.element_from_wp(prod)

    def inverse(self, a: LocalWeylElt) -> LocalWeylElt:
        return self.element_from_wp(self.data.wp_inverse(a.elt))

    def descends_right(self, a: LocalWeylElt, g: DaRoot) -> bool:
        """True iff a * s_g is shorter, i.e. a(g) is locally negative."""
        return not self.data.wp_act_daroot(a.elt, g).is_positive()

    def minrep_mod(self, a: LocalWeylElt, parabolic) -> LocalWeylElt:
        """Minimal length representative of a modulo the standard parabolic
        generated by the given simple roots (right cosets a*W_J)."""
        cur = a
        changed = True
        while changed:
            changed = False
            for g in parabolic:
                if self.descends_right(cur, g):
                    cur = self.mult(cur, self.simple_reflection(g))
                    changed = True
        return cur

    def in_parabolic(self, x: WPElt, parabolic) -> bool:
        """Whether x lies in the standard parabolic subgroup W_J."""
        cur = x
        for _ in range(4 * self.window.height + 4):
            if cur == self.data.wp_identity():
                return True
            moved = False
            for g in parabolic:
                if not self.data.wp_act_daroot(cur, g).is_positive():
                    cur = self.data.wp_mult(cur, self.data.da_reflection(g))
                    moved = True
                    break
            if not moved:
                return False
        return False

    def leq(self, a: LocalWeylElt, b: LocalWeylElt) -> bool:
        """Bruhat order on the local Weyl group, by the lifting property."""
        if b.length == 0:
            return a.length == 0
        if a.length > b.length:
            return False
        binv_elt = self.data.wp_inverse(b.elt)
        gamma = next(g for g in self.simples()
                     if not self.data.wp_act_daroot(binv_elt, g).is_positive())
        s = self.simple_reflection(gamma)
        sb = self.mult(s, b)
        sa = self.mult(s, a)
        if sa.length < a.length:
            return self.leq(sa, sb)
        return self.leq(a, sb)

    def parabolic_leq(self, a: LocalWeylElt, b: LocalWeylElt, direction: Coweight) -> bool:
        """Order on W_p / W_[p, p+eps*dir), tested on minimal representatives."""
        par = self.germ_parabolic(direction)
        return self.leq(self.minrep_mod(a, par), self.minrep_mod(b, par))

    def parabolic_length(self, a: LocalWeylElt, direction: Coweight) -> int:
        return self.minrep_mod(a, self.germ_parabolic(direction)).length


def local_system(data: AffineData, point: Coweight, window: Window = DEFAULT_WINDOW):
    key = (id(data), point, window)
    cached = _LOCAL_CACHE.get(key)
    if cached is None:
        cached = LocalSystem(data, point, window)
        _LOCAL_CACHE[key] = cached
    return cached


_LOCAL_CACHE: dict = {}


def _affroot(beta, d):
    from .core import AffineRoot

    return AffineRoot(beta, d)


# -- operations of the module API -------------------------------------------

def local_membership(data: AffineData, g: DaRoot, point: Coweight) -> bool:
    return LocalSystem(data, point).is_member(g)


def local_simples(data: AffineData, point: Coweight, window: Window = DEFAULT_WINDOW):
    return local_system(data, point, window).simples()


def project_overline(data: AffineData, x: WPElt, point: Coweight,
                     window: Window = DEFAULT_WINDOW) -> LocalWeylElt:
    return local_system(data, point, window).overline(x)


def min_coset_rep(data: AffineData, x: WPElt, point: Coweight,
                  germ_direction: Coweight, window: Window = DEFAULT_WINDOW) -> WPElt:
    """Replace x by x * ov(x)^-1 * min-rep(ov(x)); the result satisfies the
    minimal-representative normalization at the germ [p, p + eps*dir)."""
    ls = local_system(data, point, window)
    ov = ls.overline(x)
    ov_min = ls.minrep_mod(ov, ls.germ_parabolic(germ_direction))
    out = data.wp_mult(x, data.wp_mult(data.wp_inverse(ov.elt), ov_min.elt))
    check = ls.overline(out)
    if check != ov_min:
        raise NotRealizable("minimal coset representative failed its defining property")
    return out


def project_px(data: AffineData, z, point: Coweight, window: Window = DEFAULT_WINDOW):
    """Vectorial projection p_x: the unique element of W^v_x with
    z^-1(Phi^v,-) n Phi^v_x = p_x(z)^-1(Phi^v,-_x).

    Realized through the tangent system at the point (the projection of the
    local overline to vectorial parts under the canonical bijection)."""
    ls = local_system(data, point, window)
    ov = ls.overline(data.wp_from_v(z) if not isinstance(z, WPElt) else z)
    return ov


def _daroot_key(g: DaRoot):
    return (g.n, g.zeta.d, g.zeta.finite)
