"""Multiphase spaces, Cartan forms, the structural equation and brackets.

A :class:`TheorySpec` lists the base dimension, the field families, the
symmetry algebra with its action, and the extension sectors.  From it
:func:`build_phase_space` produces a chart together with the Cartan n-form
``theta`` and ``omega = -d theta``.

Variants
--------
``plain``               fields and their multimomenta
``multiplier-extended`` adds lambda^a, B_a^alpha
``graded``              adds the ghosts eta^a, P_a^alpha
``graded-extended``     adds lambda, eta and the antighosts rho^a, C_a^alpha
``vertical``            no affine coordinate ``p``; extensions from the TheorySpec
``lagrange-dalembert``  Theta^0 - lambda^a d delta(xi_a) on (x, u, lambda, p_i^alpha, p)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .calculus import VectorField, base_coord, d, hook, hook_partial, vol, vol_minus, vol_minus2
from .kernel.expr import Expr, split_index
from .kernel.generators import Gen, Role
from .kernel.structure import StructureConstants
from .linsolve import Inconsistent, solve_sparse

VARIANTS = (
    "plain",
    "multiplier-extended",
    "graded",
    "graded-extended",
    "vertical",
    "lagrange-dalembert",
)

_VARIANT_EXT = {
    "plain": frozenset(),
    "multiplier-extended": frozenset({"multipliers"}),
    "graded": frozenset({"ghosts"}),
    "graded-extended": frozenset({"multipliers", "ghosts", "antighosts"}),
    "lagrange-dalembert": frozenset({"multipliers"}),
}

EXTENSIONS = ("multipliers", "ghosts", "antighosts")

# (extension flag, coordinate role, coordinate name, momentum role, momentum name)
_SECTORS = (
    ("multipliers", Role.MULTIPLIER, "lam", Role.MULTIPLIER_MOMENTUM, "B"),
    ("ghosts", Role.GHOST, "eta", Role.GHOST_MOMENTUM, "P"),
    ("antighosts", Role.ANTIGHOST, "rho", Role.ANTIGHOST_MOMENTUM, "C"),
)


@dataclass(frozen=True)
class FieldFamily:
    """Fields ``name[idx]`` for idx in the product of ``shape``; the
    multimomentum of ``name[idx]`` is ``momentum[idx + (alpha,)]``."""

    name: str = "u"
    shape: tuple = (1,)
    momentum: str = "p"

    def indices(self):
        return list(itertools.product(*(range(r) for r in self.shape)))


@dataclass
class TheorySpec:
    """Declarative field theory.

    ``xi_field[a]`` maps field generators to the components xi^i_a,
    ``xi_base[a]`` maps base indices alpha to xi^alpha_a.  Both hold Exprs
    (polynomials or opaque function symbols).
    """

    n: int
    fields: list = field(default_factory=lambda: [FieldFamily()])
    algebra: StructureConstants | None = None
    xi_field: dict = field(default_factory=dict)
    xi_base: dict = field(default_factory=dict)
    extensions: frozenset = frozenset()
    hamiltonian: Expr | None = None
    name: str = "theory"

    def __post_init__(self):
        self.extensions = frozenset(self.extensions)
        bad = self.extensions - set(EXTENSIONS)
        if bad:
            raise ValueError(f"unknown extensions {sorted(bad)}")
        if self.n < 1:
            raise ValueError("base dimension must be positive")
        dim = self.dim
        for a in list(self.xi_field) + list(self.xi_base):
            if not 0 <= a < max(dim, 1):
                raise ValueError(f"generator label {a} outside the Lie algebra range")
        for a, comps in self.xi_base.items():
            for alpha in comps:
                if not 0 <= alpha < self.n:
                    raise ValueError(f"xi^alpha_{a}: base index {alpha} out of range")
        if self.hamiltonian is not None and self.hamiltonian.parity != 0:
            raise ValueError("the Hamiltonian must be Grassmann-even")

    @property
    def dim(self) -> int:
        return self.algebra.dim if self.algebra is not None else 0

    def field_gens(self) -> list:
        return [Gen(f.name, idx, Role.FIELD) for f in self.fields for idx in f.indices()]

    def momentum_of(self, g: Gen, alpha: int) -> Gen:
        for f in self.fields:
            if f.name == g.name:
                return Gen(f.momentum, g.idx + (alpha,), Role.FIELD_MOMENTUM)
        raise KeyError(g)

    def xi(self, a: int) -> tuple:
        """``(field components, base components)`` of the generator ``xi_a``."""
        return self.xi_field.get(a, {}), self.xi_base.get(a, {})


def opaque(name: str, idx=(), deps: Iterable[Gen] = (), parity: int = 0) -> Expr:
    """An unspecified smooth function of ``deps``."""
    return Expr.gen(Gen(name, tuple(idx), Role.FUNCTION, parity, tuple(deps)))


class PhaseSpace:
    """Chart, Cartan n-form and Cartan (n+1)-form of one variant.

    Immutable after construction.  ``omega == -d(theta)`` and
    ``d(omega) == 0`` are verified when the space is built.
    """

    def __init__(self, spec, variant, coords, theta, omega, *, vertical=False, hamiltonian=None):
        self.spec = spec
        self.variant = variant
        self.coords = tuple(coords)
        self.theta = theta
        self.omega = omega
        self.vertical = vertical
        self.hamiltonian = hamiltonian
        self._by_name = {(g.name, g.idx, g.role): g for g in self.coords}
        self._hook_index: dict = {}

    @property
    def n(self) -> int:
        return self.spec.n

    def has(self, role: Role) -> bool:
        return any(g.role == role for g in self.coords)

    def coord(self, name: str, *idx, role: Role | None = None) -> Gen:
        for (nm, ix, r), g in self._by_name.items():
            if nm == name and ix == tuple(idx) and (role is None or r == role):
                return g
        raise KeyError(f"{name}{list(idx)} is not a coordinate of this chart")

    def x(self, alpha: int) -> Gen:
        return base_coord(alpha)

    @property
    def affine(self) -> Gen | None:
        for g in self.coords:
            if g.role == Role.AFFINE:
                return g
        return None

    def sector(self, role: Role) -> list:
        return [g for g in self.coords if g.role == role]

    def with_hamiltonian(self, H: Expr) -> "PhaseSpace":
        """Covariant phase space obtained through the section ``p = -H``."""
        om = pull_back_section(self, H)
        th = self.theta.subs({self.affine: -H})
        coords = [g for g in self.coords if g.role != Role.AFFINE]
        return PhaseSpace(self.spec, self.variant + "+H", coords, th, om, hamiltonian=H)

    def __repr__(self):
        return f"PhaseSpace({self.spec.name!r}, {self.variant}, {len(self.coords)} coordinates)"


# -- forms helpers ---------------------------------------------------------------

def drop_semibasic(e: Expr) -> Expr:
    """Discard every term whose differentials are all base differentials."""
    out = {}
    for m, c in e.terms.items():
        k = split_index(m)
        if any(f.gen.role != Role.BASE for f in m[k:]):
            out[m] = c
    return Expr(out)


def lifted_momentum(spec: TheorySpec, xi_field: Mapping, xi_base: Mapping, affine: Expr | None) -> Expr:
    """(p_i^a xi^i + p xi^a) d^{n-1}x_a - p_i^a xi^b du^i ^ d^{n-2}x_{ab}.

    ``affine`` is the value used for p (None drops the p term, as on the
    vertical space).
    """
    n = spec.n
    for alpha, comp in xi_base.items():
        comp = comp if isinstance(comp, Expr) else Expr.const(comp)
        for g in comp.generators():
            deps = g.deps if g.role == Role.FUNCTION else ()
            if g.role not in (Role.BASE, Role.FUNCTION, Role.PARAMETER, Role.JET) or any(
                h.role != Role.BASE for h in deps
            ):
                raise ValueError("non-projectable generator: xi^alpha must depend on x only")
    out = Expr()
    for u, comp in xi_field.items():
        comp = comp if isinstance(comp, Expr) else Expr.const(comp)
        for alpha in range(n):
            out = out + Expr.gen(spec.momentum_of(u, alpha)) * comp * vol_minus(n, alpha)
    for alpha, comp in xi_base.items():
        comp = comp if isinstance(comp, Expr) else Expr.const(comp)
        if affine is not None:
            out = out + affine * comp * vol_minus(n, alpha)
        for u in spec.field_gens():
            for a2 in range(n):
                if a2 == alpha:
                    continue
                out = out - Expr.gen(spec.momentum_of(u, a2)) * comp * Expr.diff(u) * vol_minus2(n, a2, alpha)
    return out


def _canonical_theta(spec, ext, with_affine):
    n = spec.n
    coords = [base_coord(a) for a in range(n)]
    theta = Expr()
    fields = spec.field_gens()
    coords += fields
    for flag, role, name, _, _ in _SECTORS:
        if flag in ext:
            coords += [Gen(name, (a,), role, 1 if role in (Role.GHOST, Role.ANTIGHOST) else 0) for a in range(spec.dim)]
    for u in fields:
        for alpha in range(n):
            pg = spec.momentum_of(u, alpha)
            coords.append(pg)
            theta = theta + Expr.gen(pg) * Expr.diff(u) * vol_minus(n, alpha)
    for flag, role, name, mrole, mname in _SECTORS:
        if flag not in ext:
            continue
        odd = 1 if role in (Role.GHOST, Role.ANTIGHOST) else 0
        for a in range(spec.dim):
            c = Gen(name, (a,), role, odd)
            for alpha in range(n):
                m = Gen(mname, (a, alpha), mrole, odd)
                coords.append(m)
                theta = theta + Expr.gen(m) * Expr.diff(c) * vol_minus(n, alpha)
    if with_affine:
        p = Gen("p", (), Role.AFFINE)
        coords.append(p)
        theta = Expr.gen(p) * vol(n) + theta
    return coords, theta


def conjugate_pairs(ps: PhaseSpace) -> list:
    """``(q, [pi_q^0, ..., pi_q^{n-1}])`` for every fibre coordinate."""
    spec = ps.spec
    names = {Role.MULTIPLIER: "B", Role.GHOST: "P", Role.ANTIGHOST: "C"}
    roles = {Role.MULTIPLIER: Role.MULTIPLIER_MOMENTUM, Role.GHOST: Role.GHOST_MOMENTUM,
             Role.ANTIGHOST: Role.ANTIGHOST_MOMENTUM}
    present = set(ps.coords)
    out = []
    for g in ps.coords:
        if g.role == Role.FIELD:
            moms = [spec.momentum_of(g, al) for al in range(ps.n)]
        elif g.role in names:
            moms = [Gen(names[g.role], g.idx + (al,), roles[g.role], g.parity) for al in range(ps.n)]
        else:
            continue
        if all(m in present for m in moms):
            out.append((g, moms))
    return out


def build_phase_space(spec: TheorySpec, variant: str = "plain") -> PhaseSpace:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    ext = spec.extensions if variant == "vertical" else _VARIANT_EXT[variant]
    if ext and spec.dim == 0:
        raise ValueError("extension sectors need a Lie algebra")
    vertical = variant == "vertical"
    coords, theta = _canonical_theta(spec, ext, not vertical)
    if variant == "lagrange-dalembert":
        # Theta^0 lives where B = 0
        coords = [g for g in coords if g.role != Role.MULTIPLIER_MOMENTUM]
        theta = Expr({m: c for m, c in theta.terms.items() if not any(f.gen.role == Role.MULTIPLIER_MOMENTUM for f in m)})
        p = Expr.gen(Gen("p", (), Role.AFFINE))
        for a in range(spec.dim):
            xf, xb = spec.xi(a)
            delta = lifted_momentum(spec, xf, xb, p)
            theta = theta - Expr.gen(Gen("lam", (a,), Role.MULTIPLIER)) * d(delta)
    omega = -d(theta)
    if vertical:
        omega = drop_semibasic(omega)
    if d(omega) and not vertical:
        raise AssertionError("Cartan form is not closed")
    return PhaseSpace(spec, variant, coords, theta, omega, vertical=vertical)


def pull_back_section(ps: PhaseSpace, H: Expr) -> Expr:
    """``omega_H``: the Cartan form with p -> -H and dp -> -dH."""
    p = ps.affine
    if p is None:
        raise ValueError("this phase space has no affine coordinate p")
    if H.parity != 0:
        raise ValueError("H must be Grassmann-even")
    if any(g == p for g in H.generators()) or any(
        p in g.deps for g in H.generators() if g.role == Role.FUNCTION
    ):
        raise ValueError("H must not depend on p")
    if H.degrees() - {0}:
        raise ValueError("H must be a function")
    return ps.omega.subs({p: -H})


# -- structural equation -----------------------------------------------------------

class NotHamiltonian(Exception):
    """``X ⨼ omega = dF`` has no solution; ``witness`` is an unmatched term."""

    def __init__(self, witness: Expr, unmatched=()):
        from .printing import pretty

        super().__init__(f"not Hamiltonian: cannot produce {pretty(witness)}")
        self.witness = witness
        self.unmatched = list(unmatched)


class CapExceeded(Exception):
    pass


@dataclass
class StructuralSolution:
    vf: VectorField
    kernel_dim: int
    basis_size: int


def _divide(tf: tuple, wf: tuple):
    """Multiset quotient ``tf / wf`` of sorted factor tuples, or None."""
    rest = list(tf)
    for f in wf:
        try:
            rest.remove(f)
        except ValueError:
            return None
    return tuple(rest)


def _hook_index(ps: PhaseSpace, om: Expr, vert: bool):
    """``d/dg ⨼ omega`` for every coordinate, indexed by differential part.

    Cached on the phase space, since the result depends only on ``omega``.
    """
    key = (vert, om)
    hit = ps._hook_index.get(key)
    if hit is not None:
        return hit
    quot = drop_semibasic if vert else (lambda e: e)
    hooks = {}
    by_form: dict = {}
    for g in ps.coords:
        h = quot(hook_partial(g, om))
        if not h:
            continue
        hooks[g] = h
        for m in h.terms:
            k = split_index(m)
            by_form.setdefault(m[k:], []).append((g, m[:k]))
    ps._hook_index[key] = (hooks, by_form)
    return hooks, by_form


def solve_structural(ps: PhaseSpace, F: Expr, cap: int = 4, omega: Expr | None = None,
                     vertical: bool | None = None, order=None) -> StructuralSolution:
    """Solve ``X ⨼ omega = dF`` for a vector field X.

    The ansatz uses unknown coefficients ``c[g, m]`` for each coordinate g
    and function monomial m.  The monomials are those forced by dF, closed
    under every equation they touch, with total degree at most ``cap``.
    Free unknowns are set to zero; ``kernel_dim`` counts them.  ``order``
    optionally permutes the basis (for determinism checks).
    """
    n = ps.n
    if not F:
        return StructuralSolution(VectorField(), 0, 0)
    if F.degree != n - 1:
        raise ValueError(f"observable must be an ({n - 1})-form, got degree {F.degree}")
    om = ps.omega if omega is None else omega
    vert = ps.vertical if vertical is None else vertical
    quot = drop_semibasic if vert else (lambda e: e)
    target = quot(d(F))
    if not target:
        return StructuralSolution(VectorField(), 0, 0)

    hooks, by_form = _hook_index(ps, om, vert)
    unknowns: dict = {}
    rows: dict = {}
    queue = []

    def candidates(t, strict):
        k = split_index(t)
        tf, td = t[:k], t[k:]
        found = []
        for g, wf in by_form.get(td, ()):
            m = _divide(tf, wf)
            if m is None:
                continue
            if len(m) > cap:
                if strict:
                    raise CapExceeded(f"coefficient degree {len(m)} exceeds cap {cap}")
                continue
            found.append((g, m))
        return found

    unmatched = []
    for t in sorted(target.terms, key=_mono_key):
        rows[t] = None
        cs = candidates(t, True)
        if not cs:
            unmatched.append(Expr({t: target.terms[t]}))
        for u in cs:
            if u not in unknowns:
                unknowns[u] = None
                queue.append(u)
    if unmatched:
        raise NotHamiltonian(_pick_witness(unmatched), unmatched)

    contrib = {}
    while queue:
        u = queue.pop()
        g, m = u
        e = Expr({m: Fraction(1)}) * hooks[g]
        contrib[u] = e
        for t in e.terms:
            if t in rows:
                continue
            rows[t] = None
            for u2 in candidates(t, False):
                if u2 not in unknowns:
                    unknowns[u2] = None
                    queue.append(u2)

    cols = sorted(unknowns, key=lambda u: (u[0].key, tuple(f.key for f in u[1])))
    if order is not None:
        cols = [cols[i] for i in order(len(cols))]
    col_of = {u: i for i, u in enumerate(cols)}
    row_list = sorted(rows, key=_mono_key)
    row_of = {t: i for i, t in enumerate(row_list)}
    mat = [dict() for _ in row_list]
    for u, e in contrib.items():
        j = col_of[u]
        for t, c in e.terms.items():
            mat[row_of[t]][j] = c
    rhs = [target.terms.get(t, 0) for t in row_list]
    try:
        sol = solve_sparse(mat, rhs, len(cols))
    except Inconsistent as exc:
        t = row_list[exc.row]
        raise NotHamiltonian(Expr({t: target.terms.get(t, Fraction(1))})) from None
    coeffs: dict = {}
    for j, v in sol.values.items():
        g, m = cols[j]
        coeffs[g] = coeffs.get(g, Expr()) + Expr({m: v})
    X = VectorField(coeffs)
    if quot(hook(X, om)) != target:  # pragma: no cover - solver invariant
        raise AssertionError("structural solution failed the round trip")
    return StructuralSolution(X, sol.kernel_dim, len(cols))


def _mono_key(m):
    return (len(m), tuple(f.key for f in m))


def _pick_witness(unmatched):
    """Prefer the term with the most non-base differentials."""

    def score(e):
        (m,) = e.terms
        k = split_index(m)
        return (-sum(1 for f in m[k:] if f.gen.role != Role.BASE), _mono_key(m))

    return min(unmatched, key=score)


def hamiltonian_vf(ps: PhaseSpace, F: Expr, **kw) -> VectorField:
    return solve_structural(ps, F, **kw).vf


def _form_degree(F: Expr) -> int:
    if not F:
        return 0
    return F.degree


def bracket(ps: PhaseSpace, F: Expr, G: Expr, **kw) -> Expr:
    """``{F, G} = (-1)^{n-|F|} X_F ⨼ dG``."""
    X = hamiltonian_vf(ps, F, **kw)
    dG = d(G)
    if not dG:
        return Expr()
    out = hook(X, dG)
    return -out if (ps.n - _form_degree(F)) % 2 else out


def pairing(ps: PhaseSpace, F: Expr, G: Expr, **kw) -> Expr:
    """``X_G ⨼ X_F ⨼ omega``, the double contraction used for the
    canonical tables.  For (n-1)-forms it equals ``X_G ⨼ dF`` and differs
    from :func:`bracket` by ``(-1)^{h_F h_G}`` up to the vertical quotient."""
    XF = hamiltonian_vf(ps, F, **kw)
    XG = hamiltonian_vf(ps, G, **kw)
    inner = hook(XF, ps.omega)
    return hook(XG, inner) if inner else Expr()


# -- weak equality -------------------------------------------------------------------

class ConstraintIdeal:
    """Linear constraint generators; ``reduce`` eliminates one generator per
    constraint (the largest linear one) by substitution."""

    def __init__(self, constraints: Iterable[Expr]):
        self.rules: list = []
        for c in constraints:
            c = self._apply(c)
            if not c:
                continue
            lin = [m for m in c.terms if len(m) == 1 and not m[0].deg]
            if not lin:
                raise ValueError("constraints must contain a linear term")
            lead = max(lin, key=lambda m: m[0].key)
            coef = c.terms[lead]
            rest = c - Expr({lead: coef})
            self.rules.append((lead[0].gen, rest.scale(-1 / coef)))

    def _apply(self, e: Expr) -> Expr:
        for g, img in self.rules:
            if g in e.generators():
                e = e.subs({g: img})
        return e

    def reduce(self, e: Expr) -> Expr:
        return self._apply(e)

    def weakly_zero(self, e: Expr) -> bool:
        return not self.reduce(e)
