"""Covariant field equations by contraction with the Cartan form.

A prolonged section is represented formally: every fibre coordinate q gets
jet symbols ``q_{,beta}`` (role JET, same parity as q) and the pull-back
replaces ``dq`` by ``q_{,beta} dx^beta``.  The equation attached to a
coordinate field ``d/dq`` is the coefficient of ``d^n x`` in the pulled back
``d/dq ⨼ omega_H``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .calculus import base_coord, d, hook_partial, vol
from .kernel.expr import Expr, split_index
from .kernel.generators import Factor, Gen, Role
from .phase_space import PhaseSpace, conjugate_pairs, lifted_momentum

HAMILTON_VARIANTS = ("plain", "graded", "graded-extended")


def jet(g: Gen, beta: int) -> Gen:
    """The formal derivative ``g_{,beta}`` along a section."""
    return Gen(g.name, g.idx, Role.JET, g.parity, deriv=(base_coord(beta),))


def prolong(e: Expr, n: int) -> Expr:
    """Pull back along a formal prolonged section."""

    def fn(f: Factor):
        if not f.is_diff or f.gen.role in (Role.BASE, Role.JET, Role.PARAMETER):
            return None
        g = f.gen
        if g.role == Role.FUNCTION:  # pragma: no cover - d() never leaves these
            raise ValueError("differential of an opaque function in a form")
        return sum(
            (Expr.gen(jet(g, b)) * Expr.diff(base_coord(b)) for b in range(n)), Expr()
        )

    return e.map_factors(fn)


def top_coefficient(e: Expr, n: int) -> Expr:
    """Coefficient of ``d^n x`` in a form built from base differentials only."""
    for m in e.terms:
        k = split_index(m)
        if any(f.gen.role != Role.BASE for f in m[k:]):
            raise ValueError("form still contains fibre differentials")
    if e.degrees() - {n}:
        raise ValueError("pulled back form is not of top degree")
    return e.coefficient(vol(n))


@dataclass
class Equation:
    """``lhs = rhs``; ``sign * contraction == lhs - rhs``."""

    label: str
    lhs: Expr
    rhs: Expr
    contraction: Expr
    sign: int = 1

    def residual(self) -> Expr:
        return self.lhs - self.rhs


@dataclass
class EquationSet:
    variant: str
    n: int
    equations: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.equations)

    def __len__(self):
        return len(self.equations)

    def by_label(self, label: str) -> Equation:
        for e in self.equations:
            if e.label == label:
                return e
        raise KeyError(label)

    def to_json(self) -> dict:
        from .printing import pretty

        return {
            "variant": self.variant,
            "equations": [
                {"label": e.label, "lhs": pretty(e.lhs), "rhs": pretty(e.rhs)} for e in self.equations
            ],
        }

    def text(self) -> str:
        from .printing import pretty

        return "\n".join(f"{e.label}: {pretty(e.lhs)} = {pretty(e.rhs)}" for e in self.equations)


def _split(label: str, c: Expr, principal: set) -> Equation:
    """Move the constant-coefficient principal jets to the left."""
    lead = Expr({m: v for m, v in c.terms.items() if len(m) == 1 and m[0].gen in principal})
    if not lead:
        return Equation(label, Expr(), -c, c, -1)
    first = min(lead.terms, key=lambda m: m[0].key)
    s = 1 if lead.terms[first] > 0 else -1
    lhs = lead.scale(s)
    return Equation(label, lhs, lhs - c.scale(s), c, s)


def contraction_equation(psH: PhaseSpace, g: Gen, principal=()) -> Equation:
    from .printing import format_gen

    c = top_coefficient(prolong(hook_partial(g, psH.omega), psH.n), psH.n)
    return _split(f"d/d{format_gen(g)}", c, set(principal))


def _canonical_equations(psH: PhaseSpace, pairs) -> list:
    n = psH.n
    out = []
    for q, moms in pairs:
        out.append(contraction_equation(psH, q, [jet(moms[a], a) for a in range(n)]))
        for a in range(n):
            out.append(contraction_equation(psH, moms[a], [jet(q, a)]))
    return out


def derive_hamilton_equations(ps: PhaseSpace, H: Expr) -> EquationSet:
    """Covariant Hamilton equations on a canonical multiphase space."""
    if ps.variant not in HAMILTON_VARIANTS:
        raise ValueError(f"Hamilton equations need one of {HAMILTON_VARIANTS}, got {ps.variant!r}")
    psH = ps.with_hamiltonian(H)
    return EquationSet(ps.variant, ps.n, _canonical_equations(psH, conjugate_pairs(psH)))


def noether_current_H(ps: PhaseSpace, H: Expr, a: int) -> Expr:
    """``delta_H(xi_a)``: the lifted momentum with ``p = -H``."""
    xf, xb = ps.spec.xi(a)
    return lifted_momentum(ps.spec, xf, xb, -H)


def derive_lda_equations(ps: PhaseSpace, H: Expr) -> EquationSet:
    """Lagrange-d'Alembert-Hamilton equations and Noether conservation.

    Contractions with ``d/du^i`` and ``d/dp_i^alpha`` give the dynamical
    equations, contraction with ``d/dlambda^a`` gives ``0 = d(phi* delta_H(xi_a))``.
    """
    if ps.variant != "lagrange-dalembert":
        raise ValueError("derive_lda_equations needs the lagrange-dalembert variant")
    spec = ps.spec
    if spec.dim == 0 or any(not (spec.xi_field.get(a) or spec.xi_base.get(a)) for a in range(spec.dim)):
        raise ValueError("every generator needs a registered delta(xi_a)")
    psH = ps.with_hamiltonian(H)
    n = ps.n
    pairs = [(q, m) for q, m in conjugate_pairs(psH) if q.role == Role.FIELD]
    eqs = _canonical_equations(psH, pairs)
    for a in range(spec.dim):
        lam = psH.coord("lam", a)
        eq = contraction_equation(psH, lam)
        noether = top_coefficient(prolong(d(noether_current_H(ps, H, a)), n), n)
        if noether != eq.contraction:  # pragma: no cover - identity of the construction
            raise AssertionError("multiplier equation is not the Noether conservation law")
        eqs.append(Equation(f"noether[{a}]", Expr(), noether, eq.contraction, -1))
    return EquationSet(ps.variant, n, eqs)


def substitute_jets(e: Expr, rules: dict) -> Expr:
    """Replace jet symbols by expressions (e.g. the right-hand sides of
    other equations)."""
    return e.subs(rules)


# -- Minkowski metric -----------------------------------------------------------------

class MinkowskiMetric:
    """``eta^{mu nu} = diag(+1, -1, ..., -1)`` with explicit raising."""

    def __init__(self, n: int = 4):
        self.n = n

    def __call__(self, mu: int, nu: int) -> Fraction:
        if mu != nu:
            return Fraction(0)
        return Fraction(1) if mu == 0 else Fraction(-1)

    def matrix(self) -> list:
        return [[self(m, v) for v in range(self.n)] for m in range(self.n)]

    def signature(self) -> tuple:
        return tuple(int(self(m, m)) for m in range(self.n))

    def raise_index(self, comps: dict) -> dict:
        """``v^mu = eta^{mu nu} v_nu`` for ``comps = {nu: value}``."""
        # diagonal, so each component only changes sign
        return {mu: v * self(mu, mu) for mu, v in comps.items()}
