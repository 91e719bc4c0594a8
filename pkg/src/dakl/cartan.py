"""Finite ADE Cartan data and the untwisted affinization constants.

Only simply laced irreducible types are accepted: the simple root/coroot
identification used throughout (beta^vee has the same coordinates as beta)
is valid exactly there.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction


def cartan_matrix(family: str, rank: int):
    """Cartan matrix for type A/D/E of the given rank (Bourbaki shapes)."""
    family = family.upper()
    if family == "A":
        if rank < 1:
            raise ValueError("type A needs rank >= 1")
        edges = [(i, i + 1) for i in range(1, rank)]
    elif family == "D":
        if rank < 4:
            raise ValueError("type D needs rank >= 4")
        edges = [(i, i + 1) for i in range(1, rank - 1)] + [(rank - 2, rank)]
    elif family == "E":
        if rank not in (6, 7, 8):
            raise ValueError("type E needs rank 6, 7 or 8")
        edges = [(1, 3), (3, 4), (4, 5), (2, 4)] + [(i, i + 1) for i in range(5, rank)]
    else:
        raise ValueError(f"not an ADE family: {family!r}")
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j in edges:
        a[i - 1][j - 1] = a[j - 1][i - 1] = -1
    return tuple(tuple(row) for row in a)


def _is_positive_definite(a):
    n = len(a)
    for k in range(1, n + 1):
        minor = [[Fraction(a[i][j]) for j in range(k)] for i in range(k)]
        det = _det(minor)
        if det <= 0:
            return False
    return True


def _det(m):
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            for c in range(col, n):
                m[r][c] -= f * m[col][c]
    return det


def _is_connected(a):
    n = len(a)
    seen = {0}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for j in range(n):
            if j != i and a[i][j] != 0 and j not in seen:
                seen.add(j)
                frontier.append(j)
    return len(seen) == n


def _root_closure(a):
    """All roots of the finite system, as coefficient tuples on the simples."""
    n = len(a)
    simples = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]

    def reflect(i, beta):
        pairing = sum(a[i][j] * beta[j] for j in range(n))
        out = list(beta)
        out[i] -= pairing
        return tuple(out)

    roots = set(simples) | {tuple(-c for c in b) for b in simples}
    frontier = list(roots)
    while frontier:
        beta = frontier.pop()
        for i in range(n):
            img = reflect(i, beta)
            if img not in roots:
                roots.add(img)
                frontier.append(img)
    return tuple(sorted(roots))


@dataclass(frozen=True)
class CartanData:
    """An ADE Cartan matrix with its root system and affinization constants.

    theta is the highest root; marks are its coordinates (equal to the
    comarks in simply laced type), and the dual Coxeter number is
    1 + sum(marks).  The affine simple root is alpha_0 = delta - theta.
    """

    matrix: tuple
    label: str = ""

    def __post_init__(self):
        a = self.matrix
        n = len(a)
        if n == 0:
            raise ValueError("empty Cartan matrix")
        for i in range(n):
            if len(a[i]) != n or a[i][i] != 2:
                raise ValueError("Cartan matrix must be square with 2s on the diagonal")
            for j in range(n):
                if i != j and a[i][j] not in (0, -1):
                    raise ValueError("not simply laced: off-diagonal entries must be 0 or -1")
                if a[i][j] != a[j][i]:
                    raise ValueError("Cartan matrix must be symmetric")
        if not _is_connected(a):
            raise ValueError("Cartan matrix must be irreducible (connected diagram)")
        if not _is_positive_definite(a):
            raise ValueError("Cartan matrix must be of finite type")

    @property
    def rank(self):
        return len(self.matrix)

    @property
    def roots(self):
        return self._computed()[0]

    @property
    def positive_roots(self):
        return self._computed()[1]

    @property
    def theta(self):
        return self._computed()[2]

    @property
    def marks(self):
        return self.theta

    @property
    def dual_coxeter_number(self):
        return 1 + sum(self.theta)

    def _computed(self):
        cached = _CLOSURES.get(self.matrix)
        if cached is None:
            roots = _root_closure(self.matrix)
            positives = tuple(b for b in roots if sum(b) > 0)
            theta = max(positives, key=sum)
            cached = (roots, positives, theta)
            _CLOSURES[self.matrix] = cached
        return cached


_CLOSURES: dict = {}


def load_cartan(spec) -> CartanData:
    """Build CartanData from {"type": .., "rank": ..} or {"matrix": [[..]]}."""
    if isinstance(spec, str):
        spec = json.loads(spec)
    if "matrix" in spec:
        matrix = tuple(tuple(int(x) for x in row) for row in spec["matrix"])
        return CartanData(matrix, label=spec.get("label", "custom"))
    family = spec["type"]
    rank = int(spec["rank"])
    return CartanData(cartan_matrix(family, rank), label=f"{family.upper()}{rank}")
