"""Lie algebra structure constants ``C^c_{ab}`` and their sanity checks."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class StructureConstants:
    """``c[c][a][b] == C^c_{ab}`` with exact rational entries."""

    dim: int
    c: tuple

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be positive")
        arr = tuple(
            tuple(tuple(Fraction(self.c[k][a][b]) for b in range(self.dim)) for a in range(self.dim))
            for k in range(self.dim)
        )
        object.__setattr__(self, "c", arr)

    def __call__(self, k: int, a: int, b: int) -> Fraction:
        return self.c[k][a][b]

    @classmethod
    def from_function(cls, dim: int, fn) -> "StructureConstants":
        return cls(dim, [[[fn(k, a, b) for b in range(dim)] for a in range(dim)] for k in range(dim)])

    @classmethod
    def abelian(cls, dim: int) -> "StructureConstants":
        return cls.from_function(dim, lambda k, a, b: 0)

    @classmethod
    def levi_civita(cls, scale=1) -> "StructureConstants":
        """su(2)-type constants ``C^c_{ab} = scale * eps_{abc}``."""
        return cls.from_function(3, lambda k, a, b: scale * levi_civita(a, b, k))

    def is_abelian(self) -> bool:
        return not any(v for plane in self.c for row in plane for v in row)

    def scaled(self, s) -> "StructureConstants":
        return StructureConstants.from_function(self.dim, lambda k, a, b: s * self(k, a, b))

    def change_basis(self, m) -> "StructureConstants":
        """Constants in the basis ``e'_a = sum_i m[i][a] e_i`` (m invertible)."""
        from ..linsolve import inverse

        n = self.dim
        minv = inverse([[Fraction(x) for x in row] for row in m])

        def fn(k, a, b):
            return sum(
                minv[k][r] * self(r, i, j) * m[i][a] * m[j][b]
                for r in range(n)
                for i in range(n)
                for j in range(n)
                if m[i][a] and m[j][b] and minv[k][r]
            )

        return StructureConstants.from_function(n, fn)

    def to_json(self):
        return [[[str(v) for v in row] for row in plane] for plane in self.c]


def levi_civita(*idx) -> int:
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign


def check_structure_constants(sc: StructureConstants) -> dict:
    """Exact antisymmetry and Jacobi check, listing every violation."""
    n = sc.dim
    anti = [
        (k, a, b)
        for k in range(n)
        for a in range(n)
        for b in range(a, n)
        if sc(k, a, b) != -sc(k, b, a)
    ]
    jac = []
    for a, b, c, d in itertools.product(range(n), repeat=4):
        s = sum(
            sc(e, a, b) * sc(d, e, c) + sc(e, b, c) * sc(d, e, a) + sc(e, c, a) * sc(d, e, b)
            for e in range(n)
        )
        if s:
            jac.append((a, b, c, d))
    return {
        "antisymmetry": not anti,
        "jacobi": not jac,
        "antisymmetry_violations": anti,
        "jacobi_violations": jac,
    }


_SEED_ALGEBRAS = {
    1: [lambda: StructureConstants.abelian(1)],
    2: [
        lambda: StructureConstants.abelian(2),
        # [e0, e1] = e1
        lambda: StructureConstants.from_function(
            2, lambda k, a, b: (1 if (k, a, b) == (1, 0, 1) else -1 if (k, a, b) == (1, 1, 0) else 0)
        ),
    ],
    3: [
        lambda: StructureConstants.levi_civita(),
        # sl(2): [h,e]=2e, [h,f]=-2f, [e,f]=h with (h,e,f) = (0,1,2)
        lambda: _from_brackets(3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}),
        # Heisenberg: [e0,e1] = e2
        lambda: _from_brackets(3, {(0, 1): {2: 1}}),
        # r3: [e0,e1]=e1, [e0,e2]=e1+e2
        lambda: _from_brackets(3, {(0, 1): {1: 1}, (0, 2): {1: 1, 2: 1}}),
        lambda: StructureConstants.abelian(3),
    ],
}


def _from_brackets(dim, table) -> StructureConstants:
    arr = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for (a, b), out in table.items():
        for k, v in out.items():
            arr[k][a][b] = Fraction(v)
            arr[k][b][a] = -Fraction(v)
    return StructureConstants(dim, arr)


def random_structure_constants(dim: int, rng: random.Random) -> StructureConstants:
    """A Jacobi-satisfying algebra: a seed algebra in a random rational basis."""
    seeds = _SEED_ALGEBRAS[dim]
    base = seeds[rng.randrange(len(seeds))]()
    from ..linsolve import rank

    while True:
        m = [[Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(dim)] for _ in range(dim)]
        if rank(m) == dim:
            return base.change_basis(m)
