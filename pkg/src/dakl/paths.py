"""Hecke paths from decreasing Bruhat chains, with folding-time constraints.

A chain step by the reflection of a root g after direction y imposes a
constraint on its folding time through the conjugated root y^-1(g) = z[r]:
the wall is hit at t = r / <z, shape>.  Chains whose fixed times cannot be
ordered are discarded (logged).  Paths are identified by their pointwise
trajectory, sampled twice per segment (segments are affine in t).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .core import AffineData, Coweight, DaRoot, WPElt
from .daorder import Chain, decreasing_chains, length
from .deodhar import start_factor_iwahori
from .errors import ConventionMismatch, EquivalenceViolation, InconsistentTimes, NotRealizable
from .laurent import ZERO
from .tangent import DEFAULT_WINDOW, Window, local_system, min_coset_rep

log = logging.getLogger("dakl")


@dataclass(frozen=True)
class TimeConstraint:
    kind: str                      # "fixed" | "unconstrained" | "infeasible"
    t: Fraction = Fraction(0)

    @staticmethod
    def fixed(t):
        return TimeConstraint("fixed", Fraction(t))

    @staticmethod
    def unconstrained():
        return TimeConstraint("unconstrained")

    @staticmethod
    def infeasible():
        return TimeConstraint("infeasible")


def folding_time(data: AffineData, x_prev: WPElt, chain_root: DaRoot,
                 shape: Coweight) -> TimeConstraint:
    conj = data.wp_act_daroot(data.wp_inverse(x_prev), chain_root)
    c = data.pair(conj.zeta, shape)
    r = Fraction(conj.n)
    if c != 0:
        t = r / c
        if 0 <= t <= 1:
            return TimeConstraint.fixed(t)
        return TimeConstraint.infeasible()
    if r == 0:
        return TimeConstraint.unconstrained()
    return TimeConstraint.infeasible()


@dataclass(frozen=True)
class HeckePath:
    """Folding times (strictly increasing, in [0,1)) and directions, with the
    trajectory fingerprint as identity."""

    shape: Coweight
    times: tuple
    dirs: tuple
    fingerprint: tuple
    sources: tuple = field(compare=False, default=())
    terminal: WPElt = field(compare=False, default=None)

    def __eq__(self, other):
        return isinstance(other, HeckePath) and self.fingerprint == other.fingerprint

    def __hash__(self):
        return hash(self.fingerprint)

    def sort_key(self):
        return (len(self.times), self.times, self.fingerprint)


def _fingerprint(data, shape, times, dirs):
    out = []
    cuts = list(times) + [Fraction(1)]
    for k, (a, b) in enumerate(zip(cuts, cuts[1:])):
        for s in (a + (b - a) / 3, a + (b - a) * Fraction(2, 3)):
            pt = data.wp_act_point(dirs[k], shape.scale(s))
            out.append(pt.sort_key())
    out.append(data.wp_act_point(dirs[-1], shape).sort_key())
    return tuple(out)


def _same_trajectory(data, x, y, shape, a, b):
    """Whether x and y agree on the open segment (a, b) of the shape line."""
    for s in (a + (b - a) / 3, a + (b - a) * Fraction(2, 3)):
        if data.wp_act_point(x, shape.scale(s)) != data.wp_act_point(y, shape.scale(s)):
            return False
    return True


def chain_to_path_data(data: AffineData, chain: Chain, shape: Coweight, strict=False):
    """Times and directions of the path a chain gives rise to, or None with a
    logged reason when the chain admits no monotone time assignment."""
    y_prev = data.wp_identity()
    folds = []  # (time, direction after the fold)
    current = Fraction(0)
    for g, _elt in chain.steps:
        tc = folding_time(data, y_prev, g, shape)
        y_next = data.wp_mult(data.da_reflection(g), y_prev)
        if tc.kind == "infeasible":
            log.info("chain discarded: infeasible folding time for root %s", g)
            if strict:
                raise InconsistentTimes("infeasible folding time")
            return None
        if tc.kind == "unconstrained":
            if not _same_trajectory(data, y_prev, y_next, shape, Fraction(0), Fraction(1)):
                raise ConventionMismatch(
                    "unconstrained step changed the trajectory; fixing condition violated")
            y_prev = y_next
            continue
        if tc.t < current:
            log.info("chain discarded: non-monotone folding times")
            if strict:
                raise InconsistentTimes("non-monotone folding times")
            return None
        current = tc.t
        folds.append((tc.t, y_next))
        y_prev = y_next
    times = [Fraction(0)]
    dirs = [data.wp_identity()]
    for t, y in folds:
        if t == 1:
            continue  # time-1 folds are terminal data, invisible to the path
        if t == times[-1]:
            dirs[-1] = y
        else:
            times.append(t)
            dirs.append(y)
    # verify the endpoint is insensitive to dropping time-1 folds
    if data.wp_act_point(dirs[-1], shape) != data.wp_act_point(y_prev, shape):
        raise ConventionMismatch("dropping time-1 folds changed the endpoint")
    # drop smooth joints (irredundancy of fold data)
    k = 1
    while k < len(times):
        a = times[k]
        b = times[k + 1] if k + 1 < len(times) else Fraction(1)
        if _same_trajectory(data, dirs[k - 1], dirs[k], shape, a, b):
            del times[k]
            del dirs[k]
        else:
            k += 1
    return tuple(times), tuple(dirs)


def chains_to_paths(data: AffineData, chains, shape: Coweight,
                    window: Window = DEFAULT_WINDOW, strict=False):
    """Convert chains to paths, normalize directions, dedupe on fingerprints."""
    buckets: dict = {}
    order = []
    for chain in chains:
        td = chain_to_path_data(data, chain, shape, strict=strict)
        if td is None:
            continue
        times, dirs = td
        normalized = tuple(
            min_coset_rep(data, x, shape.scale(t), shape, window)
            for t, x in zip(times, dirs))
        fp = _fingerprint(data, shape, times, normalized)
        if fp not in buckets:
            buckets[fp] = HeckePath(shape=shape, times=times, dirs=normalized,
                                    fingerprint=fp, sources=(chain,))
            order.append(fp)
        else:
            old = buckets[fp]
            if old.times != times or old.dirs != normalized:
                raise ConventionMismatch(
                    "chains with one fingerprint produced different canonical data")
            buckets[fp] = HeckePath(shape=shape, times=times, dirs=normalized,
                                    fingerprint=fp, sources=old.sources + (chain,))
    return sorted(buckets.values(), key=HeckePath.sort_key)


def _endpoint_candidates(data: AffineData, shape: Coweight, nu: Coweight, top: WPElt):
    """Vectorial parts w with l(pi^nu w) <= l(top): the finiteness bound."""
    ltop = length(data, top)
    seen = {data.v_identity()}
    frontier = [data.v_identity()]
    out = []
    while frontier:
        nxt = []
        for v in frontier:
            if length(data, WPElt(nu, v)) <= ltop:
                out.append(v)
            for i in range(data.n + 1):
                y = data.v_mult(v, data.v_simple(i))
                if y not in seen and data.v_length(y) > data.v_length(v) \
                        and data.v_length(y) <= ltop + 2 * _dom_defect(data, nu):
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


def _dom_defect(data, nu):
    _, u = data.dominantize(nu)
    return data.v_length(u)


def spherical_paths(data: AffineData, lam: Coweight, nu: Coweight,
                    window: Window = DEFAULT_WINDOW):
    """All spherical Hecke paths of shape lam (dominant) and endpoint nu."""
    if not data.is_dominant(lam):
        raise ValueError("shape must be dominant")
    if lam.level <= 0 or nu.level <= 0:
        raise ValueError("shape and endpoint must have positive level")
    top = data.wp_translation(lam)
    targets = [WPElt(nu, w) for w in _endpoint_candidates(data, lam, nu, top)]
    chains = decreasing_chains(data, top, None, window, targets=targets)
    paths = chains_to_paths(data, chains, lam, window)
    ltop = length(data, top)
    out = []
    for p in paths:
        end = data.wp_act_point(p.dirs[-1], lam)
        if end != nu:
            raise ConventionMismatch("path endpoint disagrees with its chain targets")
        wmin = data.v_minrep_mod_stabilizer(p.dirs[-1].v, data.dominantize(lam)[0])
        if length(data, WPElt(nu, wmin)) > ltop:
            raise ConventionMismatch("emitted path violates the length bound")
        out.append(p)
    return out


def iwahori_spherical_paths(data: AffineData, mu: Coweight, nu: Coweight,
                            window: Window = DEFAULT_WINDOW):
    """Paths of shape translation mu (any open-Tits-cone mu): the spherical
    chain machinery plus the nonzero time-0 factor filter."""
    if mu.level <= 0 or nu.level <= 0:
        raise ValueError("shape and endpoint must have positive level")
    top = data.wp_translation(mu)
    targets = [WPElt(nu, w) for w in _endpoint_candidates(data, mu, nu, top)]
    chains = decreasing_chains(data, top, None, window, targets=targets)
    paths = chains_to_paths(data, chains, mu, window)
    out = []
    for p in paths:
        if start_factor_iwahori(data, p.dirs[0], mu):
            out.append(p)
        else:
            log.info("path discarded by the time-0 chamber filter")
    return out


def iwahori_paths(data: AffineData, shape: WPElt, endpoint: WPElt,
                  window: Window = DEFAULT_WINDOW):
    """Iwahori paths of shape pi^mu w and endpoint pi^nu v: the spherical set
    for (mu, nu) filtered by a nonzero forced terminal factor."""
    from .deodhar import final_factor_iwahori

    mu, w = shape.mu, shape.v
    nu, v = endpoint.mu, endpoint.v
    forced = data.wp_mult(WPElt(nu, v),
                          data.wp_mult(data.wp_from_v(data.v_inverse(w)),
                                       data.wp_translation(-mu)))
    base = iwahori_spherical_paths(data, mu, nu, window)
    out = []
    for p in base:
        local = local_system(data, mu, window)
        factor = final_factor_iwahori(local, p.dirs[-1], forced, mu)
        if factor:
            out.append(HeckePath(shape=p.shape, times=p.times, dirs=p.dirs,
                                 fingerprint=p.fingerprint, sources=p.sources,
                                 terminal=forced))
        else:
            log.info("path discarded by the terminal filter")
    return out


# -- the U^- folding predicate, in both forms --------------------------------

def km_folding_check(data: AffineData, times, dirs, lam: Coweight,
                     window: Window = DEFAULT_WINDOW) -> bool:
    """Kapovich-Millson positive folding for a prospective path.

    Form (a) searches a chain of vectorial reflections on one-sided
    derivatives with negative pairings; form (b) is the translated parabolic
    order condition through the vectorial projection.  Both are evaluated;
    disagreement raises EquivalenceViolation.
    """
    if not data.is_dominant(lam):
        raise ValueError("shape must be dominant")
    ok = True
    for k in range(1, len(dirs)):
        res_a = _km_form_a(data, times[k], dirs[k - 1], dirs[k], lam, window)
        res_b = _km_form_b(data, times[k], dirs[k - 1], dirs[k], lam, window)
        if res_a != res_b:
            raise EquivalenceViolation(
                f"folding forms disagree at fold {k}: chain={res_a} parabolic={res_b}")
        ok = ok and res_a
    return ok


def _km_form_a(data, t, z_prev, z_next, lam, window):
    """Chain of reflections xi -> s_b(xi) with <b, xi> < 0 and b integral on
    the retracted point, from the outgoing to the incoming derivative."""
    point = data.wp_act_point(z_next, lam.scale(t))
    start = data.v_act_coweight(z_next.v, lam)
    goal = data.v_act_coweight(z_prev.v, lam)
    roots = [b for b in data.affine_roots_window(window.max_delta)
             if data.pair(b, point).denominator == 1]
    seen = {start}
    frontier = [start]
    cap = max(200, window.height * 20)
    while frontier:
        if goal in seen:
            return True
        nxt = []
        for xi in frontier:
            for b in roots:
                if data.pair(b, xi) < 0:
                    img = data.reflect_coweight(b, xi)
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
                        if len(seen) > cap:
                            raise ConventionMismatch(
                                "folding chain search exceeded its node budget")
        frontier = nxt
    return goal in seen


def _km_form_b(data, t, z_prev, z_next, lam, window):
    """ov(w_prev) <= ov(w_prev) * w_prev^-1 w_next in the tangent quotient."""
    point = lam.scale(t)
    local = local_system(data, point, window)
    w_prev = data.wp_from_v(z_prev.v)
    w_next = data.wp_from_v(z_next.v)
    ov = local.overline(w_prev)
    rel = data.wp_mult(data.wp_inverse(w_prev), w_next)
    try:
        target = local.element_from_wp(data.wp_mult(ov.elt, rel))
    except NotRealizable:
        return False
    return local.parabolic_leq(ov, target, lam)
