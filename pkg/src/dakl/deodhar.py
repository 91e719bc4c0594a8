"""Deodhar problems: cell/opposite-cell intersection counts as polynomials.

Three flavors are needed:

* classical counts in an abstract Coxeter system (ground truth oracles,
  provided by CoxeterSystem.deodhar_count / classical_r);
* plain cell sizes q^d for the orbit of a class in a local partial flag;
* orientation-twisted counts for the interior folding factors, where each
  wall crossing is judged against the twisted negative system and the
  subexpression endpoint against a coset window.

The twisted walk's weight table is pinned by the classical oracle: up-cross
1, up-stay (q-1), down-cross q, down-stay forbidden.
"""

from __future__ import annotations

import logging

from .core import AffineData, Coweight, WPElt
from .errors import ConventionMismatch, NotRealizable
from .laurent import LaurentPoly, ONE, Q, QM1, ZERO
from .tangent import LocalSystem, LocalWeylElt

log = logging.getLogger("dakl")


def _accumulate(d, key, poly):
    d[key] = d.get(key, ZERO) + poly


def orientation_walk(local: LocalSystem, word, twist_inverse: WPElt, accept) -> LaurentPoly:
    """Subexpression walk over a reduced word in local simples.

    State is the partial product; the wall of each letter is judged against
    the twisted negative system (twist_inverse applied, then plain
    positivity).  accept() selects the end states to count.
    """
    data = local.data
    states = {data.wp_identity(): ONE}
    for gamma in word:
        refl = data.da_reflection(gamma)
        nxt: dict = {}
        for pi, weight in states.items():
            wall = data.wp_act_daroot(pi, gamma)
            judged = data.wp_act_daroot(twist_inverse, wall)
            crossed = data.wp_mult(pi, refl)
            if judged.is_positive():
                _accumulate(nxt, crossed, weight)
                _accumulate(nxt, pi, weight * QM1)
            else:
                _accumulate(nxt, crossed, weight * Q)
        states = nxt
    total = ZERO
    for pi, weight in states.items():
        if accept(pi):
            total = total + weight
    return total


def _fixes_germ(data: AffineData, x: WPElt, point: Coweight, direction: Coweight) -> bool:
    """Membership in the parabolic fixing the germ [p, p + eps*dir) (for
    elements already known to lie in the local Weyl group at p)."""
    return (data.wp_act_point(x, point) == point
            and data.v_act_coweight(x.v, direction) == direction)


def cell_count(local: LocalSystem, cls: LocalWeylElt, direction: Coweight) -> LaurentPoly:
    """Size of the plain cell of the class: q^d, d the parabolic length."""
    d = local.parabolic_length(cls, direction)
    return LaurentPoly.monomial(d)


def twisted_count(local: LocalSystem, twist: LocalWeylElt, rel: WPElt,
                  direction: Coweight) -> LaurentPoly:
    """Cardinality of the interior-step intersection: the twisted cell of the
    class of twist*rel against the incoming opposite big cell.

    Zero iff the parabolic order condition fails; otherwise monic of degree
    equal to the quotient length of the class (checked, ConventionMismatch on
    violation).
    """
    data = local.data
    prod = data.wp_mult(twist.elt, rel)
    lw = local.element_from_wp(prod)
    par = local.germ_parabolic(direction)
    u = local.minrep_mod(lw, par)
    twist_inv = data.wp_inverse(twist.elt)

    def accept(pi):
        return _fixes_germ(data, data.wp_mult(twist_inv, pi), local.point, direction)

    count = orientation_walk(local, u.word, twist_inv, accept)
    if count:
        if not (count.is_monic() and count.degree() == len(u.word)):
            raise ConventionMismatch(
                f"twisted count {count} is not monic of degree {len(u.word)}")
    return count


def start_factor_spherical(local: LocalSystem, x0: WPElt, shape: Coweight) -> LaurentPoly:
    """Start factor of a spherical path: the plain cell q^d of the class of
    x0 in the tangent flag at time 0."""
    cls = local.element_from_wp(x0)
    return cell_count(local, cls, shape)


def start_factor_iwahori(data: AffineData, x0: WPElt, mu: Coweight) -> LaurentPoly:
    """Start factor for shape translation mu (not necessarily dominant): the
    cell of x0 cut by the positive-chamber cell, via the dominant shift.

    Nonzero iff w^-1 <= x0 w^-1 in W^v / W^v_{mu_+}, mu = w(mu_+).
    """
    mu_plus, wdom = data.dominantize(mu)
    if x0.mu != data.zero_coweight():
        raise ValueError("time-0 direction must be vectorial")
    u = data.v_minrep_mod_stabilizer(data.v_mult(x0.v, data.v_inverse(wdom)), mu_plus)
    word = data.v_reduced_word(u)
    states = {data.v_identity(): ONE}
    for i in word:
        s = data.v_simple(i)
        root = data.simple_affroot(i)
        nxt: dict = {}
        for pi, weight in states.items():
            wall = data.v_act_affroot(pi, root)
            crossed = data.v_mult(pi, s)
            if wall.is_positive():
                _accumulate(nxt, crossed, weight)
                _accumulate(nxt, pi, weight * QM1)
            else:
                _accumulate(nxt, crossed, weight * Q)
        states = nxt
    total = ZERO
    for pi, weight in states.items():
        if data.v_act_coweight(data.v_mult(wdom, pi), mu_plus) == mu_plus:
            total = total + weight
    return total


def final_factor_iwahori(local: LocalSystem, x_last: WPElt, forced: WPElt,
                         shape_translation: Coweight) -> LaurentPoly:
    """Terminal factor of an Iwahori path: the twisted cell of the forced
    terminal step against the incoming cell at time 1, judged at the chamber
    level (no outgoing germ quotient).
    """
    data = local.data
    par = local.germ_parabolic(shape_translation)
    ov = local.overline(x_last)
    a = local.minrep_mod(ov, par)
    x_tilde = data.wp_mult(x_last, data.wp_mult(data.wp_inverse(ov.elt), a.elt))
    y = data.wp_mult(data.wp_inverse(x_tilde), forced)
    try:
        lw = local.element_from_wp(data.wp_mult(a.elt, y))
    except NotRealizable:
        log.info("terminal step not realizable in the endpoint Weyl group; factor 0")
        return ZERO
    twist_inv = data.wp_inverse(a.elt)

    def accept(pi):
        return _fixes_germ(data, data.wp_mult(twist_inv, pi), local.point,
                           shape_translation)

    return orientation_walk(local, lw.word, twist_inv, accept)


def walk_partition(local: LocalSystem, twist: LocalWeylElt, rel: WPElt,
                   direction: Coweight):
    """All end-state weights of the twisted walk, for the partition invariant:
    they must total q^(length of the word)."""
    data = local.data
    prod = data.wp_mult(twist.elt, rel)
    lw = local.element_from_wp(prod)
    u = local.minrep_mod(lw, local.germ_parabolic(direction))
    twist_inv = data.wp_inverse(twist.elt)
    states = {data.wp_identity(): ONE}
    for gamma in u.word:
        refl = data.da_reflection(gamma)
        nxt: dict = {}
        for pi, weight in states.items():
            wall = data.wp_act_daroot(pi, gamma)
            judged = data.wp_act_daroot(twist_inv, wall)
            crossed = data.wp_mult(pi, refl)
            if judged.is_positive():
                _accumulate(nxt, crossed, weight)
                _accumulate(nxt, pi, weight * QM1)
            else:
                _accumulate(nxt, crossed, weight * Q)
        states = nxt
    return states, len(u.word)
