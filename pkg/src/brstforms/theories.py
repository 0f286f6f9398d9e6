"""Built-in theories."""

from __future__ import annotations

from fractions import Fraction

from .kernel.expr import Expr
from .kernel.generators import Gen, Role
from .kernel.structure import StructureConstants
from .phase_space import FieldFamily, TheorySpec


def adjoint_generators(sc: StructureConstants, name: str = "u") -> dict:
    """``xi_a = -C^i_{aj} u^j d/du^i`` on a multiplet in the adjoint."""
    dim = sc.dim
    u = [Gen(name, (i,), Role.FIELD) for i in range(dim)]
    out = {}
    for a in range(dim):
        comps = {}
        for i in range(dim):
            c = sum((Expr.gen(u[j]).scale(-sc(i, a, j)) for j in range(dim)), Expr())
            if c:
                comps[u[i]] = c
        out[a] = comps
    return out


def adjoint_theory(sc: StructureConstants, n: int, extensions=(), hamiltonian: Expr | None = None,
                   name: str = "adjoint") -> TheorySpec:
    """One scalar multiplet in the adjoint representation."""
    return TheorySpec(n=n, fields=[FieldFamily("u", (sc.dim,), "p")], algebra=sc,
                      xi_field=adjoint_generators(sc), extensions=frozenset(extensions),
                      hamiltonian=hamiltonian, name=name)


def su2(n: int = 2, extensions=("ghosts", "multipliers", "antighosts")) -> TheorySpec:
    """su(2) adjoint multiplet with the invariant Hamiltonian ``-1/2 u.u``."""
    sc = StructureConstants.levi_civita()
    H = sum((Expr.gen(Gen("u", (i,), Role.FIELD)) ** 2 for i in range(3)), Expr()).scale(Fraction(-1, 2))
    return adjoint_theory(sc, n, extensions, H, name="su2")


def yang_mills(extensions=()) -> TheorySpec:
    from .yang_mills import YangMills

    ym = YangMills()
    spec = ym.spec(extensions)
    spec.hamiltonian = ym.hamiltonian_standard()
    return spec


BUILTINS = {
    "su2": su2,
    "yang-mills": yang_mills,
}
