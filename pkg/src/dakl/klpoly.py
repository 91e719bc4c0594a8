"""R-polynomials from Hecke paths, and the P-polynomial recursions.

The spherical R-polynomial is the sum over paths of the time-0 cell size
times the interior twisted counts; the Iwahori variants replace the start
factor by the chamber-cut count and append the forced terminal factor.

P-polynomials solve  q^(l(w)-l(v)) bar(P) - P = sum_u R_{v,u} P_{u,w}  under
the degree bound; when the right-hand side is not compatible with the bound
the failure is reported as data (PalindromyFailure), never patched.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .core import AffineData, Coweight, WPElt
from .daorder import Interval, interval, length
from .deodhar import (cell_count, final_factor_iwahori, start_factor_iwahori,
                      start_factor_spherical, twisted_count)
from .errors import ConventionMismatch, NoSolution
from .laurent import LaurentPoly, ONE, ZERO
from .paths import HeckePath, iwahori_paths, iwahori_spherical_paths, spherical_paths
from .tangent import DEFAULT_WINDOW, Window, local_system

log = logging.getLogger("dakl")


# -- path factors -------------------------------------------------------------

def interior_factors(data: AffineData, path: HeckePath,
                     window: Window = DEFAULT_WINDOW):
    """Twisted Deodhar factors at the interior folds of a path."""
    shape = path.shape
    out = []
    for k in range(1, len(path.times)):
        point = shape.scale(path.times[k])
        local = local_system(data, point, window)
        ov = local.overline(path.dirs[k - 1])
        par = local.germ_parabolic(shape)
        a = local.minrep_mod(ov, par)
        if a.length:
            log.info("overline at an interior fold is nontrivial (length %d); "
                     "research-interest case", a.length)
        x_tilde = data.wp_mult(path.dirs[k - 1],
                               data.wp_mult(data.wp_inverse(ov.elt), a.elt))
        check = local.minrep_mod(local.overline(x_tilde), par)
        if check != a:
            raise ConventionMismatch("minimal representative normalization failed")
        rel = data.wp_mult(data.wp_inverse(x_tilde), path.dirs[k])
        out.append(twisted_count(local, a, rel, shape))
    return out


def spherical_path_factors(data: AffineData, path: HeckePath,
                           window: Window = DEFAULT_WINDOW):
    local0 = local_system(data, path.shape.scale(0), window)
    start = start_factor_spherical(local0, path.dirs[0], path.shape)
    return [start] + interior_factors(data, path, window)


def spherical_r(data: AffineData, lam: Coweight, nu: Coweight,
                window: Window = DEFAULT_WINDOW) -> LaurentPoly:
    """Sum over spherical paths of the product of Deodhar factors."""
    total = ZERO
    for path in spherical_paths(data, lam, nu, window):
        term = ONE
        for f in spherical_path_factors(data, path, window):
            term = term * f
        total = total + term
    return total


def iwahori_spherical_r(data: AffineData, mu: Coweight, nu: Coweight,
                        window: Window = DEFAULT_WINDOW) -> LaurentPoly:
    total = ZERO
    for path in iwahori_spherical_paths(data, mu, nu, window):
        term = start_factor_iwahori(data, path.dirs[0], mu)
        for f in interior_factors(data, path, window):
            term = term * f
        total = total + term
    return total


def iwahori_r(data: AffineData, lower: WPElt, upper: WPElt,
              window: Window = DEFAULT_WINDOW) -> LaurentPoly:
    """R_{lower, upper}: shape pi^mu w = upper, endpoint pi^nu v = lower."""
    if lower == upper:
        return ONE
    total = ZERO
    for path in iwahori_paths(data, upper, lower, window):
        term = start_factor_iwahori(data, path.dirs[0], upper.mu)
        for f in interior_factors(data, path, window):
            term = term * f
        local = local_system(data, upper.mu, window)
        term = term * final_factor_iwahori(local, path.dirs[-1], path.terminal,
                                           upper.mu)
        total = total + term
    return total


# -- the Kazhdan-Lusztig recursion --------------------------------------------

@dataclass(frozen=True)
class KLStatus:
    status: str                 # "solved" | "palindromy_failure"
    poly: LaurentPoly           # P when solved, else the residual
    rhs: LaurentPoly            # the right-hand side used


def solve_kl_cell(length_diff: int, rhs: LaurentPoly) -> KLStatus:
    """Solve q^L bar(P) - P = rhs under deg P <= (L-1)/2, P constant-free of
    the top half; report the residual if the palindromy constraint fails."""
    bound = (length_diff - 1) // 2 if length_diff >= 1 else -1
    p = -rhs.truncate_above(bound)
    residual = p.shift(length_diff).bar() - p - rhs
    if residual.is_zero():
        return KLStatus("solved", p, rhs)
    return KLStatus("palindromy_failure", residual, rhs)


def kl_table(elements, leq, lengths, r_provider, strict=True):
    """P_{v,w} for all pairs v <= w in a finite graded poset.

    elements must be closed under taking intervals; r_provider(v, w) supplies
    the R-polynomials.  With strict=True a palindromy failure raises
    NoSolution (appropriate for honest Coxeter input); otherwise failures are
    returned as data.
    """
    order = sorted(elements, key=lambda z: lengths[z])
    table = {}
    for w in order:
        table[(w, w)] = KLStatus("solved", ONE, ZERO)
        below = [v for v in order if v != w and leq(v, w)]
        for v in sorted(below, key=lambda z: -lengths[z]):
            rhs = ZERO
            blocked = False
            for u in below + [w]:
                if u == v or not leq(v, u):
                    continue
                entry = table[(u, w)]
                if entry.status != "solved":
                    blocked = True
                    break
                rhs = rhs + r_provider(v, u) * entry.poly
            if blocked:
                table[(v, w)] = KLStatus("blocked", ZERO, ZERO)
                continue
            cell = solve_kl_cell(lengths[w] - lengths[v], rhs)
            if strict and cell.status != "solved":
                raise NoSolution(f"palindromy constraint failed for a pair at "
                                 f"lengths {lengths[v]}, {lengths[w]}")
            table[(v, w)] = cell
    return table


def classical_kl(cox, elements=None):
    """P-table of a finite Coxeter group (or a lower-closed subset of one)."""
    if elements is None:
        raise ValueError("pass the element list (e.g. cox.ball(max_length))")
    lengths = {x: cox.length(x) for x in elements}
    return kl_table(elements, cox.leq, lengths, cox.classical_r, strict=True)


def double_affine_p(data: AffineData, itv: Interval,
                    r_provider=None, window: Window = DEFAULT_WINDOW):
    """Status table of the double affine recursion on a computed interval.

    Relative lengths come from the interval grading and are cross-checked
    against the length function; any disagreement aborts loudly.
    """
    if r_provider is None:
        cache = {}

        def r_provider(v, w):
            key = (v, w)
            if key not in cache:
                cache[key] = iwahori_r(data, v, w, window)
            return cache[key]

    elements = list(itv.elements)
    base = itv.lengths[0]
    lengths = {}
    for i, z in enumerate(elements):
        graded = itv.lengths[i] - base
        direct = length(data, z) - length(data, itv.bottom)
        if graded != direct:
            raise ConventionMismatch(
                f"interval grading {graded} disagrees with the length function {direct}")
        lengths[z] = graded
    index = {z: i for i, z in enumerate(elements)}

    def leq(a, b):
        return a == b or (index[a], index[b]) in itv.relation

    return kl_table(elements, leq, lengths, r_provider, strict=False)


# -- truncated involution rows -------------------------------------------------

@dataclass(frozen=True)
class InvolutionRow:
    element: WPElt
    entries: tuple      # ((element, LaurentPoly), ...)
    truncated: bool = True


def involution_row(data: AffineData, x: WPElt,
                   window: Window = DEFAULT_WINDOW) -> InvolutionRow:
    """Window-truncated row of the conjectural involution matrix: the
    coefficient of each in-window z <= x is bar(R_{z,x}) q^(-l(z)).

    The full row has infinitely many terms; the output is always labeled
    TRUNCATED.
    """
    lx = length(data, x)
    floor = max(0, lx - window.height)
    entries = []
    for z in _lower_set(data, x, floor, window):
        coeff = iwahori_r(data, z, x, window).bar() * LaurentPoly.monomial(-length(data, z))
        entries.append((z, coeff))
    entries.sort(key=lambda pair: (length(data, pair[0]), pair[0].sort_key()))
    return InvolutionRow(element=x, entries=tuple(entries), truncated=True)


def _lower_set(data, x, floor, window):
    from .daorder import _left_steps, _LengthCache

    lengths = _LengthCache(data)
    seen = {x}
    frontier = [x]
    while frontier:
        nxt = []
        for z in frontier:
            for _g, target, lt in _left_steps(data, lengths, z, window, "down"):
                if lt >= floor and target not in seen:
                    seen.add(target)
                    nxt.append(target)
        frontier = nxt
    return seen
