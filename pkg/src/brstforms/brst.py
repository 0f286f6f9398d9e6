"""Symmetry generators, BRST vector fields and charges, nilpotency checks and
the Koszul complex of the multiplier/antighost sector."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .calculus import VectorField, base_coord, d, hook, vol_minus, vol_minus2
from .kernel.expr import Expr
from .kernel.generators import Gen, Role
from .kernel.structure import StructureConstants, check_structure_constants
from .linsolve import rank
from .phase_space import (
    PhaseSpace,
    TheorySpec,
    bracket,
    conjugate_pairs,
    pairing,
    solve_structural,
)


class JacobiError(ValueError):
    def __init__(self, witness):
        super().__init__(f"structure constants violate Jacobi at (a,b,c,d)={witness}")
        self.witness = witness


def _E(c) -> Expr:
    return c if isinstance(c, Expr) else Expr.const(c)


def ghost(a):
    return Gen("eta", (a,), Role.GHOST, 1)


def antighost(a):
    return Gen("rho", (a,), Role.ANTIGHOST, 1)


def multiplier(a):
    return Gen("lam", (a,), Role.MULTIPLIER, 0)


def ghost_momentum(a, alpha):
    return Gen("P", (a, alpha), Role.GHOST_MOMENTUM, 1)


def antighost_momentum(a, alpha):
    return Gen("C", (a, alpha), Role.ANTIGHOST_MOMENTUM, 1)


def multiplier_momentum(a, alpha):
    return Gen("B", (a, alpha), Role.MULTIPLIER_MOMENTUM, 0)


def momentum_observable(ps: PhaseSpace, mk) -> Expr:
    """``m^alpha d^{n-1}x_alpha`` for a momentum family ``mk(alpha)``."""
    return sum((Expr.gen(mk(al)) * vol_minus(ps.n, al) for al in range(ps.n)), Expr())


# -- symmetry generators ---------------------------------------------------------------

def generator_field(spec: TheorySpec, a: int) -> VectorField:
    """``xi_a = xi^i_a d/du^i + xi^alpha_a d/dx^alpha`` on the configuration bundle."""
    xf, xb = spec.xi(a)
    cs = {g: _E(c) for g, c in xf.items()}
    for alpha, c in xb.items():
        cs[base_coord(alpha)] = _E(c)
    return VectorField(cs)


@dataclass
class NoetherCurrent:
    label: object
    form: Expr


def lift_momentum_observable(ps: PhaseSpace, xi: VectorField, label=None) -> NoetherCurrent:
    """``delta(xi) = xi ⨼ theta``: the lifted momentum observable of a
    projectable configuration-bundle vector field.

    On a covariant phase space (``p = -H`` already imposed) this is
    ``delta_H``; on the vertical space the ``p`` term is absent.
    """
    for g, c in xi.coeffs.items():
        if g.role == Role.BASE:
            for h in c.generators():
                deps = h.deps if h.role == Role.FUNCTION else ()
                if h.role not in (Role.BASE, Role.FUNCTION, Role.PARAMETER, Role.JET) or any(
                    k.role != Role.BASE for k in deps
                ):
                    raise ValueError("non-projectable generator: xi^alpha must depend on x only")
        elif g.role in (Role.FIELD_MOMENTUM, Role.MULTIPLIER_MOMENTUM, Role.GHOST_MOMENTUM,
                        Role.ANTIGHOST_MOMENTUM, Role.AFFINE):
            raise ValueError("generator must live on the configuration bundle")
    return NoetherCurrent(label, hook(xi, ps.theta))


def explicit_lifted_momentum(ps: PhaseSpace, xi_field: dict, xi_base: dict) -> Expr:
    """The coordinate formula
    ``(p_i^a xi^i + p xi^a) d^{n-1}x_a - p_i^a xi^b du^i ^ d^{n-2}x_{ab}``,
    used to cross-check :func:`lift_momentum_observable`."""
    n = ps.n
    spec = ps.spec
    if ps.affine is not None:
        p = Expr.gen(ps.affine)
    elif ps.hamiltonian is not None:
        p = -ps.hamiltonian
    else:
        p = Expr()
    out = Expr()
    for u, c in xi_field.items():
        for al in range(n):
            out = out + Expr.gen(spec.momentum_of(u, al)) * _E(c) * vol_minus(n, al)
    for be, c in xi_base.items():
        out = out + p * _E(c) * vol_minus(n, be)
        # every fibre coordinate of the chart, ghosts included, picks up
        # the base component through its own momentum
        for u, moms in conjugate_pairs(ps):
            for al in range(n):
                if al != be:
                    out = out - Expr.gen(moms[al]) * _E(c) * Expr.diff(u) * vol_minus2(n, al, be)
    return out


def noether_currents(ps: PhaseSpace) -> list:
    spec = ps.spec
    out = []
    for a in range(spec.dim):
        cur = lift_momentum_observable(ps, generator_field(spec, a), a)
        xf, xb = spec.xi(a)
        if cur.form != explicit_lifted_momentum(ps, xf, xb):  # pragma: no cover
            raise AssertionError("lifted momentum disagrees with the coordinate formula")
        out.append(cur)
    return out


# -- BRST vector field and charge -----------------------------------------------------

def build_brst_vector_field(spec: TheorySpec, variant: str = "minimal", check: bool = True) -> VectorField:
    """``V = eta^a xi_a - 1/2 C^c_ab eta^a eta^b d/d eta^c`` (+ ``rho^a d/d lambda^a``)."""
    if spec.algebra is None:
        raise ValueError("a Lie algebra is required")
    sc = spec.algebra
    if check:
        rep = check_structure_constants(sc)
        if not rep["jacobi"]:
            raise JacobiError(rep["jacobi_violations"][0])
    dim = sc.dim
    V = VectorField()
    for a in range(dim):
        V = V + generator_field(spec, a).lmul(Expr.gen(ghost(a)))
    cs = {}
    for c in range(dim):
        coef = Expr()
        for a, b in itertools.product(range(dim), repeat=2):
            if sc(c, a, b):
                coef = coef + Expr.gen(ghost(a)) * Expr.gen(ghost(b)) * Fraction(-1, 2) * sc(c, a, b)
        if coef:
            cs[ghost(c)] = coef
    V = V + VectorField(cs)
    if variant == "extended":
        V = V + VectorField({multiplier(a): Expr.gen(antighost(a)) for a in range(dim)})
    elif variant != "minimal":
        raise ValueError("variant must be 'minimal' or 'extended'")
    return V


@dataclass
class BrstCharge:
    variant: str
    form: Expr
    V: VectorField = field(repr=False, default=None)


def eq13_charge(ps: PhaseSpace, currents=None) -> Expr:
    """``1/2 C^a_bc eta^b eta^c P_a + eta^a delta(xi_a)``."""
    sc = ps.spec.algebra
    dim = sc.dim
    if currents is None:
        currents = noether_currents(ps)
    out = Expr()
    for a in range(dim):
        Pa = momentum_observable(ps, lambda al, a=a: ghost_momentum(a, al))
        for b, c in itertools.product(range(dim), repeat=2):
            if sc(a, b, c):
                out = out + Expr.gen(ghost(b)) * Expr.gen(ghost(c)) * Pa * (Fraction(1, 2) * sc(a, b, c))
        out = out + Expr.gen(ghost(a)) * currents[a].form
    return out


def build_brst_charge(ps: PhaseSpace, variant: str = "minimal", check: bool = True) -> BrstCharge:
    """``V ⨼ theta`` for the BRST vector field V; checked against the
    coordinate formula (plus ``rho^a B_a`` for the extended charge)."""
    spec = ps.spec
    if not ps.has(Role.GHOST):
        raise ValueError("the phase space has no ghost sector")
    if variant == "extended" and not (ps.has(Role.ANTIGHOST) and ps.has(Role.MULTIPLIER)):
        raise ValueError("the extended charge needs multipliers and antighosts")
    V = build_brst_vector_field(spec, variant, check=check)
    form = hook(V, ps.theta)
    expect = eq13_charge(ps)
    if variant == "extended":
        for a in range(spec.dim):
            expect = expect + Expr.gen(antighost(a)) * momentum_observable(
                ps, lambda al, a=a: multiplier_momentum(a, al))
    if form != expect:  # pragma: no cover
        raise AssertionError("V ⨼ theta disagrees with the coordinate charge")
    return BrstCharge(variant, form, V)


# -- nilpotency -----------------------------------------------------------------------

def _split_charge(ps, Q: BrstCharge):
    """Pieces of the charge: ghost-momentum part, Noether part, rho B part."""
    ghost_part, noether, rhoB = Expr(), Expr(), Expr()
    for m, c in Q.form.terms.items():
        roles = {f.gen.role for f in m}
        t = Expr({m: c})
        if Role.GHOST_MOMENTUM in roles:
            ghost_part = ghost_part + t
        elif Role.ANTIGHOST in roles:
            rhoB = rhoB + t
        else:
            noether = noether + t
    return {"ghost": ghost_part, "noether": noether, "rhoB": rhoB}


@dataclass
class NilpotencyReport:
    bracket_value: Expr
    is_zero: bool
    term_ledger: dict

    def to_json(self):
        from .printing import pretty

        return {
            "bracket_value": pretty(self.bracket_value),
            "is_zero": self.is_zero,
            "term_ledger": {k: pretty(v) for k, v in self.term_ledger.items()},
        }


def check_nilpotency(ps: PhaseSpace, Q: BrstCharge, cap: int = 4) -> NilpotencyReport:
    """``{Q, Q}`` through the structural solver and the bracket.

    The ledger splits the contraction ``X_Q ⨼ dQ`` by the pieces of Q and
    sorts the resulting terms into the group carrying a ghost momentum
    (cancels by Jacobi) and the rest (mutual cancellation)."""
    val = bracket(ps, Q.form, Q.form, cap=cap)
    parts = {k: v for k, v in _split_charge(ps, Q).items() if v}
    X = {k: solve_structural(ps, v, cap=cap).vf for k, v in parts.items()}
    sign = -1 if (ps.n - (ps.n - 1)) % 2 else 1
    ledger: dict = {}
    jac, mutual = Expr(), Expr()
    for ka, Xa in X.items():
        for kb, Fb in parts.items():
            t = hook(Xa, d(Fb)).scale(sign) if d(Fb) else Expr()
            ledger[f"X({ka}) ⨼ d({kb})"] = t
            for m, c in t.terms.items():
                if any(f.gen.role == Role.GHOST_MOMENTUM for f in m):
                    jac = jac + Expr({m: c})
                else:
                    mutual = mutual + Expr({m: c})
    ledger["jacobi_group"] = jac
    ledger["mutual_group"] = mutual
    return NilpotencyReport(val, not val, ledger)


def brst_variation(ps: PhaseSpace, Q: BrstCharge | Expr, F: Expr, cap: int = 4) -> Expr:
    """``X(Q) ⨼ X(F) ⨼ omega``."""
    q = Q.form if isinstance(Q, BrstCharge) else Q
    return pairing(ps, F, q, cap=cap)


# -- generator-level reduction differential ----------------------------------------------

@dataclass
class GeneratorRow:
    name: str
    computed: Expr
    expected: Expr

    @property
    def ok(self) -> bool:
        return self.computed == self.expected


def reduction_generator_actions(ps: PhaseSpace, Q: BrstCharge, observables=None, cap: int = 4) -> list:
    """``{F, Q}``, ``{P_a, Q}`` and ``{eta^a_nu, Q}`` against
    ``{F, delta(xi_a)} eta^a``, ``C^d_ab eta^b P_d + delta(xi_a)`` and
    ``1/2 C^a_bc eta^b eta^c d^{n-1}x_nu``."""
    spec = ps.spec
    sc = spec.algebra
    n = ps.n
    dim = sc.dim
    currents = noether_currents(ps)
    rows = []
    if observables is None:
        observables = []
        for u in spec.field_gens():
            observables.append((f"{u}_0", Expr.gen(u) * vol_minus(n, 0)))
            observables.append((f"{spec.momentum_of(u, 0).name}{list(u.idx)}",
                                momentum_observable(ps, lambda al, u=u: spec.momentum_of(u, al))))
    for name, F in observables:
        comp = bracket(ps, F, Q.form, cap=cap)
        exp = Expr()
        for a in range(dim):
            exp = exp + bracket(ps, F, currents[a].form, cap=cap) * Expr.gen(ghost(a))
        rows.append(GeneratorRow(f"{{{name}, Q}}", comp, exp))
    for a in range(dim):
        Pa = momentum_observable(ps, lambda al, a=a: ghost_momentum(a, al))
        comp = bracket(ps, Pa, Q.form, cap=cap)
        exp = currents[a].form
        for dd in range(dim):
            Pd = momentum_observable(ps, lambda al, dd=dd: ghost_momentum(dd, al))
            for b in range(dim):
                if sc(dd, a, b):
                    exp = exp + Expr.gen(ghost(b)) * Pd * sc(dd, a, b)
        rows.append(GeneratorRow(f"{{P_{a}, Q}}", comp, exp))
    for a in range(dim):
        for nu in range(n):
            F = Expr.gen(ghost(a)) * vol_minus(n, nu)
            comp = bracket(ps, F, Q.form, cap=cap)
            exp = Expr()
            for b, c in itertools.product(range(dim), repeat=2):
                if sc(a, b, c):
                    exp = exp + Expr.gen(ghost(b)) * Expr.gen(ghost(c)) * (Fraction(1, 2) * sc(a, b, c))
            exp = exp * vol_minus(n, nu)
            rows.append(GeneratorRow(f"{{eta^{a}_{nu}, Q}}", comp, exp))
    return rows


def adjoint_square(ps: PhaseSpace, Q: BrstCharge, F: Expr, cap: int = 4) -> Expr:
    """``{{F, Q}, Q}``."""
    once = bracket(ps, F, Q.form, cap=cap)
    if not once:
        return Expr()
    return bracket(ps, once, Q.form, cap=cap)


# -- Koszul complex ------------------------------------------------------------------------

class TruncationError(ValueError):
    pass


def koszul_differential_signs(dim: int, n: int = 2) -> list:
    """Coefficients ``s_a`` with ``{C_a, rho^b B_b} = s_a B_a``, computed with
    the bracket on the vertical extended space."""
    from .phase_space import build_phase_space

    spec = TheorySpec(n=n, fields=[], algebra=StructureConstants.abelian(dim),
                      extensions={"multipliers", "ghosts", "antighosts"})
    ps = build_phase_space(spec, "vertical")
    rhoB = sum((Expr.gen(antighost(b)) * momentum_observable(ps, lambda al, b=b: multiplier_momentum(b, al))
                for b in range(dim)), Expr())
    out = []
    for a in range(dim):
        Ca = momentum_observable(ps, lambda al, a=a: antighost_momentum(a, al))
        Ba = momentum_observable(ps, lambda al, a=a: multiplier_momentum(a, al))
        val = bracket(ps, Ca, rhoB)
        s = None
        for m, c in val.terms.items():
            s = c / Ba.terms[m]
            break
        if val != Ba.scale(s):  # pragma: no cover
            raise AssertionError("unexpected Koszul differential")
        Bb = bracket(ps, Ba, rhoB)
        if Bb:  # pragma: no cover
            raise AssertionError("{B, rho B} should vanish")
        out.append(s)
    return out


def _koszul_basis(dim, weight, k):
    """Monomials B^mult C^S with |S| = k and total weight ``weight``."""
    out = []
    for S in itertools.combinations(range(dim), k):
        rest = weight - k
        if rest < 0:
            continue
        for mult in itertools.combinations_with_replacement(range(dim), rest):
            out.append((tuple(mult), S))
    return out


def _koszul_apply(mono, signs):
    """Differential on ``B^mult C_{s1} ... C_{sk}`` (C factors to the right),
    acting as an odd right derivation: ``D(xy) = x D(y) + (-1)^{|y|} D(x) y``."""
    mult, S = mono
    out = {}
    k = len(S)
    for j, s in enumerate(S):
        # move C_s to the far right past k-1-j odd factors
        sign = -1 if (k - 1 - j) % 2 else 1
        newS = S[:j] + S[j + 1:]
        newm = tuple(sorted(mult + (s,)))
        key = (newm, newS)
        out[key] = out.get(key, 0) + sign * signs[s]
    return {k_: v for k_, v in out.items() if v}


def koszul_homology(dim: int, truncation: int | None = None, signs=None) -> list:
    """Betti numbers by antighost degree of ``Sym(B) ⊗ Λ(C)`` with
    ``D C_a = s_a B_a``, summed over weights ``0..truncation``."""
    if truncation is None:
        truncation = dim + 1
    if truncation < 1:
        raise TruncationError("truncation must be at least 1 to see the complex close")
    if signs is None:
        signs = koszul_differential_signs(dim)
    betti = [0] * (dim + 1)
    for w in range(truncation + 1):
        ranks = {}
        dims = {}
        for k in range(dim + 1):
            basis = _koszul_basis(dim, w, k)
            dims[k] = len(basis)
            if k == 0 or not basis:
                ranks[k] = 0
                continue
            target = {m: i for i, m in enumerate(_koszul_basis(dim, w, k - 1))}
            mat = []
            for mono in basis:
                row = [0] * len(target)
                for t, v in _koszul_apply(mono, signs).items():
                    row[target[t]] += v
                mat.append(row)
            ranks[k] = rank(mat) if target else 0
        for k in range(dim + 1):
            betti[k] += dims[k] - ranks[k] - ranks.get(k + 1, 0)
    return betti
