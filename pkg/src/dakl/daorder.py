"""Double affine Bruhat order: length, edges, intervals, chains, quotients.

The order on W_T is generated by reflection edges; the length function

    l(pi^mu w) = <2 rho, mu_+> - l(u) + l(u^-1 w),   mu = u(mu_+), u minimal,

grades it.  All closures run inside a root window and are certified by
recomputation at the doubled window (the finiteness theorems behind them are
not effective).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .core import AffineData, DaRoot, WPElt
from .errors import ConventionMismatch, EmptyInterval, StabilizationFailure
from .tangent import DEFAULT_WINDOW, Window
from .textio import format_element

log = logging.getLogger("dakl")


def length(data: AffineData, x: WPElt) -> int:
    mu_plus, u = data.dominantize(x.mu)
    val = data.two_rho_pair(mu_plus) - data.v_length(u) \
        + data.v_length(data.v_mult(data.v_inverse(u), x.v))
    if val.denominator != 1:
        raise ConventionMismatch(f"non-integer length for {x}")
    return int(val)


def edge_test(data: AffineData, x: WPElt, g: DaRoot, side: str) -> str:
    """'up' iff x < x*s_g (right) or x < s_g*x (left), per the edge invariant."""
    if not g.is_positive():
        raise ValueError("edge roots must be positive")
    if side == "right":
        img = data.wp_act_daroot(x, g)
    elif side == "left":
        img = data.wp_act_daroot(data.wp_inverse(x), g)
    else:
        raise ValueError("side must be 'left' or 'right'")
    return "up" if img.is_positive() else "down"


def _left_neighbor(data: AffineData, x: WPElt, g: DaRoot):
    """(s_g * x, 'up'|'down' seen from x)."""
    target = data.wp_mult(data.da_reflection(g), x)
    return target, edge_test(data, x, g, "left")


class _LengthCache:
    """Global per-datum length memo (lengths are reused across closures)."""

    _store: dict = {}

    def __init__(self, data):
        self.data = data
        self.cache = self._store.setdefault(id(data), {})

    def __call__(self, x):
        v = self.cache.get(x)
        if v is None:
            v = length(self.data, x)
            self.cache[x] = v
        return v


def _reflection_table(data, window):
    key = (id(data), window.max_delta, window.max_pi)
    cached = _REFL_TABLES.get(key)
    if cached is None:
        cached = tuple((g, data.da_reflection(g))
                       for g in data.positive_daroots_window(window.max_delta,
                                                             window.max_pi))
        _REFL_TABLES[key] = cached
    return cached


_REFL_TABLES: dict = {}


def _left_steps(data, lengths, z, window, direction):
    """All left-edge neighbors of z in the given direction, each cross-checked
    against the grading (an inconsistency is a convention bug and fails loudly)."""
    want_up = direction == "up"
    z_inv = data.wp_inverse(z)
    lz = lengths(z)
    out = []
    for g, refl in _reflection_table(data, window):
        if data.wp_act_daroot(z_inv, g).is_positive() != want_up:
            continue
        target = data.wp_mult(refl, z)
        lt = lengths(target)
        if (lt > lz) != want_up or lt == lz:
            raise ConventionMismatch(
                f"edge {format_element(data, z)} -> {format_element(data, target)} "
                f"judged {direction} but lengths are {lz}, {lt}")
        out.append((g, target, lt))
    return out


def _up_closure(data, start, ceiling, window):
    """All elements reachable from start by upward edges with length <= ceiling."""
    lengths = _LengthCache(data)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for z in frontier:
            for _g, target, lt in _left_steps(data, lengths, z, window, "up"):
                if lt <= ceiling and target not in seen:
                    seen.add(target)
                    nxt.append(target)
        frontier = nxt
    return seen, lengths


def _down_closure_within(data, start, allowed, lengths, window):
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for z in frontier:
            for _g, target, _lt in _left_steps(data, lengths, z, window, "down"):
                if target in allowed and target not in seen:
                    seen.add(target)
                    nxt.append(target)
        frontier = nxt
    return seen


@dataclass(frozen=True)
class Interval:
    """A finite interval with its Hasse diagram, canonically ordered."""

    bottom: WPElt
    top: WPElt
    elements: tuple
    lengths: tuple
    covers: tuple          # index pairs (i, j) with element i covered by j
    relation: frozenset    # all strict order pairs (i, j), i < j
    graded: bool
    cover_gaps: tuple      # covers whose length difference exceeds 1

    def index(self, x: WPElt):
        return self.elements.index(x)


def _build_interval(data, bottom, top, window):
    lb = length(data, bottom)
    lt = length(data, top)
    up, lengths = _up_closure(data, bottom, lt, window)
    if top not in up:
        raise EmptyInterval(
            f"{format_element(data, bottom)} is not below {format_element(data, top)} "
            f"within window {window}")
    elems = _down_closure_within(data, top, up, lengths, window)
    order = sorted(elems, key=lambda z: (lengths(z), z.sort_key()))
    index = {z: i for i, z in enumerate(order)}
    edges = set()
    for z in order:
        for _g, target, _lt in _left_steps(data, lengths, z, window, "up"):
            if target in index:
                edges.add((index[z], index[target]))
    relation = _transitive_closure(edges, len(order))
    covers = tuple(sorted((a, b) for (a, b) in relation
                          if not any((a, c) in relation and (c, b) in relation
                                     for c in range(len(order)))))
    lens = tuple(lengths(z) for z in order)
    gaps = tuple((a, b) for (a, b) in covers if lens[b] - lens[a] != 1)
    return Interval(bottom=bottom, top=top, elements=tuple(order), lengths=lens,
                    covers=covers, relation=frozenset(relation), graded=not gaps,
                    cover_gaps=gaps)


def _transitive_closure(edges, n):
    succ = {i: set() for i in range(n)}
    for a, b in edges:
        succ[a].add(b)
    closed = set()
    for a in range(n):
        stack = list(succ[a])
        reach = set()
        while stack:
            b = stack.pop()
            if b not in reach:
                reach.add(b)
                stack.extend(succ[b])
        closed.update((a, b) for b in reach)
    return closed


_INTERVAL_CACHE: dict = {}


def _build_interval_cached(data, bottom, top, window):
    key = (id(data), bottom, top, window)
    out = _INTERVAL_CACHE.get(key)
    if out is None:
        out = _build_interval(data, bottom, top, window)
        _INTERVAL_CACHE[key] = out
    return out


def interval(data: AffineData, bottom: WPElt, top: WPElt,
             window: Window = DEFAULT_WINDOW, verify: bool = True) -> Interval:
    """The interval [bottom, top], with gradedness and window-stability checks."""
    out = _build_interval_cached(data, bottom, top, window)
    if not out.graded:
        raise ConventionMismatch(
            f"interval [{format_element(data, bottom)}, {format_element(data, top)}] "
            f"is not graded: cover gaps {out.cover_gaps}")
    if verify:
        big = _build_interval_cached(data, bottom, top, window.doubled())
        if set(big.elements) != set(out.elements) or big.covers != out.covers:
            raise StabilizationFailure("interval", window)
    return out


def leq(data: AffineData, a: WPElt, b: WPElt, window: Window = DEFAULT_WINDOW) -> bool:
    """Order test a <= b via the windowed closure."""
    if a == b:
        return True
    la = length(data, a)
    lb = length(data, b)
    if la >= lb:
        return False
    up, lengths = _up_closure(data, a, lb, window)
    return b in up


def covers(data: AffineData, x: WPElt, direction: str,
           window: Window = DEFAULT_WINDOW) -> tuple:
    """Neighbors of x at length distance exactly 1 (these are covers, the
    order being graded), window-certified."""
    out = _covers_raw(data, x, direction, window)
    big = _covers_raw(data, x, direction, window.doubled())
    if set(out) != set(big):
        raise StabilizationFailure(f"{direction}-covers", window)
    return tuple(sorted(out, key=lambda z: z.sort_key()))


def _covers_raw(data, x, direction, window):
    lengths = _LengthCache(data)
    want = 1 if direction == "up" else -1
    found = set()
    for _g, target, lt in _left_steps(data, lengths, x, window, direction):
        if lt - lengths(x) == want:
            found.add(target)
    return found


@dataclass(frozen=True)
class Chain:
    """A strictly decreasing left-reflection chain from a top element."""

    top: WPElt
    steps: tuple  # ((root, element), ...)

    @property
    def roots(self):
        return tuple(g for g, _ in self.steps)

    @property
    def elements(self):
        return (self.top,) + tuple(z for _, z in self.steps)

    @property
    def end(self):
        return self.steps[-1][1] if self.steps else self.top


def decreasing_chains(data: AffineData, top: WPElt, accept,
                      window: Window = DEFAULT_WINDOW, targets=None) -> list:
    """All strictly decreasing left-edge chains from top ending at an accepted
    element (strict drops, not necessarily covers).

    When explicit targets are given the search is confined to the union of
    the intervals [t, top]; chains from top to t cannot leave it.
    """
    if targets is not None:
        allowed = set()
        for t in targets:
            try:
                allowed.update(_build_interval_cached(data, t, top, window).elements)
            except EmptyInterval:
                continue
        if accept is None:
            targs = set(targets)
            accept = lambda z: z in targs
    else:
        lengths = _LengthCache(data)
        allowed = _down_ball(data, top, lengths, window)
    allowed.add(top)
    lengths = _LengthCache(data)
    out = []

    def dfs(node, steps):
        if accept(node):
            out.append(Chain(top=top, steps=tuple(steps)))
        for g, target, _lt in _left_steps(data, lengths, node, window, "down"):
            if target in allowed:
                steps.append((g, target))
                dfs(target, steps)
                steps.pop()

    dfs(top, [])
    return out


def _down_ball(data, top, lengths, window):
    floor = 0
    seen = {top}
    frontier = [top]
    while frontier:
        nxt = []
        for z in frontier:
            for _g, target, lt in _left_steps(data, lengths, z, window, "down"):
                if lt >= floor and target not in seen:
                    seen.add(target)
                    nxt.append(target)
        frontier = nxt
    return seen


def class_rep_mod_weyl(data: AffineData, x: WPElt) -> WPElt:
    """Minimal length representative of x modulo W^v (right cosets)."""
    _, u = data.dominantize(x.mu)
    return WPElt(x.mu, u)


def parabolic_quotient_interval(data: AffineData, bottom: WPElt, top: WPElt,
                                window: Window = DEFAULT_WINDOW) -> Interval:
    """The interval in W_T / W^v between the classes of bottom and top, on
    minimal-length representatives.  Gradedness is reported, not enforced:
    the quotient order genuinely fails to be graded by the length function.
    """
    brep = class_rep_mod_weyl(data, bottom)
    trep = class_rep_mod_weyl(data, top)
    ambient = interval(data, brep, trep, window)
    keep = [i for i, z in enumerate(ambient.elements)
            if class_rep_mod_weyl(data, z) == z]
    reindex = {old: new for new, old in enumerate(keep)}
    relation = frozenset((reindex[a], reindex[b]) for (a, b) in ambient.relation
                         if a in reindex and b in reindex)
    n = len(keep)
    covers_q = tuple(sorted((a, b) for (a, b) in relation
                            if not any((a, c) in relation and (c, b) in relation
                                       for c in range(n))))
    elements = tuple(ambient.elements[i] for i in keep)
    lens = tuple(ambient.lengths[i] for i in keep)
    gaps = tuple((a, b) for (a, b) in covers_q if lens[b] - lens[a] != 1)
    return Interval(bottom=brep, top=trep, elements=elements, lengths=lens,
                    covers=covers_q, relation=relation, graded=not gaps,
                    cover_gaps=gaps)


# -- export -------------------------------------------------------------------

def to_dot(data: AffineData, itv: Interval) -> str:
    lines = ["digraph interval {"]
    for i, z in enumerate(itv.elements):
        lines.append(f'  n{i} [label="{format_element(data, z)}"];')
    for a, b in itv.covers:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_dict(data: AffineData, itv: Interval) -> dict:
    return {
        "elements": [format_element(data, z) for z in itv.elements],
        "edges": [[a, b] for a, b in itv.covers],
        "lengths": list(itv.lengths),
        "graded": itv.graded,
    }
