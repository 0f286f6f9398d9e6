"""Yang-Mills on four-dimensional Minkowski space.

Fields ``A[a,mu]``, multimomenta ``F[a,mu,nu]`` (all sixteen components per
colour).  On the constraint surface the momenta are antisymmetric; that
surface is modelled by pulling ``dF^{mu nu}`` back through the projector
``F^{mu nu} -> (F^{mu nu} - F^{nu mu}) / 2``.

Structure constants come in as a totally antisymmetric ``f_{abc}``.  The
mixed-index constants are ``f^c_{ab} = SIGMA * f_{cab}``.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .calculus import VectorField, d, hook, hook_partial, vol_minus
from .field_eqs import MinkowskiMetric, jet, prolong, top_coefficient
from .kernel.expr import Expr
from .kernel.generators import Factor, Gen, Role
from .kernel.structure import StructureConstants
from .phase_space import (
    FieldFamily,
    PhaseSpace,
    TheorySpec,
    build_phase_space,
    drop_semibasic,
    solve_structural,
)
from .printing import pretty

SIGMA = -1
N = 4
GOLDEN_ENV = "BRSTFORMS_GOLDEN_DIR"


def levi_civita_lower():
    def f(a, b, c):
        if len({a, b, c}) < 3:
            return Fraction(0)
        perm = (a, b, c)
        inv = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
        return Fraction(-1 if inv % 2 else 1)

    return f


def _E(g):
    return Expr.gen(g)


class YangMills:
    """Bookkeeping for the Yang-Mills scenario with a chosen ``f_{abc}``."""

    def __init__(self, f_lower=None, dim: int = 3):
        self.dim = dim
        f = f_lower or levi_civita_lower()
        self._f = {(a, b, c): Fraction(f(a, b, c)) for a, b, c in itertools.product(range(dim), repeat=3)}
        for (a, b, c), v in self._f.items():
            if v != -self._f[b, a, c] or v != -self._f[a, c, b]:
                raise ValueError("f_{abc} must be totally antisymmetric")
        self.metric = MinkowskiMetric(N)
        self.algebra = StructureConstants.from_function(dim, lambda k, a, b: self.fu(k, a, b))

    # -- constants and coordinates ----------------------------------------------------
    def f(self, a, b, c) -> Fraction:
        """``f_{abc}``"""
        return self._f[a, b, c]

    def fu(self, c, a, b) -> Fraction:
        """``f^c_{ab}``"""
        return SIGMA * self._f[c, a, b]

    def eta(self, mu) -> Fraction:
        return self.metric(mu, mu)

    @staticmethod
    def A(a, mu) -> Gen:
        return Gen("A", (a, mu), Role.FIELD)

    @staticmethod
    def F(a, mu, nu) -> Gen:
        return Gen("F", (a, mu, nu), Role.FIELD_MOMENTUM)

    def spec(self, extensions=()) -> TheorySpec:
        xi = {}
        for a in range(self.dim):
            comps = {}
            for fc in range(self.dim):
                for mu in range(N):
                    c = sum((_E(self.A(e, mu)).scale(self.f(a, e, fc)) for e in range(self.dim)), Expr())
                    if c:
                        comps[self.A(fc, mu)] = c
            xi[a] = comps
        return TheorySpec(
            n=N,
            fields=[FieldFamily("A", (self.dim, N), "F")],
            algebra=self.algebra,
            xi_field=xi,
            extensions=frozenset(extensions),
            name="yang-mills",
        )

    # -- covariant Legendre transformation -------------------------------------------
    def field_strength(self, a, mu, nu) -> Expr:
        """``F^a_{mu nu} = A^a_{nu,mu} - A^a_{mu,nu} + f^a_{bc} A^b_mu A^c_nu`` on jets."""
        out = _E(jet(self.A(a, nu), mu)) - _E(jet(self.A(a, mu), nu))
        return out + self.quadratic(a, mu, nu)

    def quadratic(self, a, mu, nu) -> Expr:
        out = Expr()
        for b in range(self.dim):
            for c in range(self.dim):
                k = self.fu(a, b, c)
                if k:
                    out = out + (_E(self.A(b, mu)) * _E(self.A(c, nu))).scale(k)
        return out

    def lagrangian(self) -> Expr:
        out = Expr()
        for a in range(self.dim):
            for mu in range(N):
                for nu in range(N):
                    fl = self.field_strength(a, mu, nu)
                    out = out + (fl * fl).scale(self.eta(mu) * self.eta(nu))
        return out.scale(Fraction(-1, 4))

    def gamma(self, a, mu, nu) -> Expr:
        return self.quadratic(a, mu, nu).scale(Fraction(-1, 2))

    def legendre(self) -> dict:
        """Momenta ``dL/dA_{mu,nu}`` and the affine coordinate ``p``, both as
        functions on the jet bundle, next to the displayed values."""
        from .calculus import partial

        L = self.lagrangian()
        mom, expect, ok = {}, {}, True
        p = L
        for a in range(self.dim):
            for mu in range(N):
                for nu in range(N):
                    v = jet(self.A(a, mu), nu)
                    m = partial(L, v)
                    e = self.field_strength(a, mu, nu).scale(self.eta(mu) * self.eta(nu))
                    mom[a, mu, nu], expect[a, mu, nu] = m, e
                    ok = ok and m == e
                    p = p - m * (_E(v) + self.gamma(a, mu, nu))
        quarter = Expr()
        for a in range(self.dim):
            for mu in range(N):
                for nu in range(N):
                    fl = self.field_strength(a, mu, nu)
                    quarter = quarter + (fl * fl).scale(self.eta(mu) * self.eta(nu))
        quarter = quarter.scale(Fraction(1, 4))
        return {"momenta_ok": ok, "p": p, "p_expected": quarter, "p_ok": p == quarter}

    def hamiltonian(self) -> Expr:
        """``H = -1/4 F^d_{mu nu} F_d^{mu nu}`` in the momentum coordinates."""
        out = Expr()
        for a in range(self.dim):
            for mu in range(N):
                for nu in range(N):
                    out = out + (_E(self.F(a, mu, nu)) ** 2).scale(self.eta(mu) * self.eta(nu))
        return out.scale(Fraction(-1, 4))

    def hamiltonian_standard(self) -> Expr:
        """The Hamiltonian in the affine coordinate without the connection
        shift: ``H - F^{mu nu}_a Gamma^a_{mu nu}``."""
        out = self.hamiltonian()
        for a in range(self.dim):
            for mu in range(N):
                for nu in range(N):
                    out = out - _E(self.F(a, mu, nu)) * self.gamma(a, mu, nu)
        return out

    # -- phase spaces ----------------------------------------------------------------
    def antisymmetrize(self, e: Expr) -> Expr:
        """Pull back through ``F^{mu nu} -> (F^{mu nu} - F^{nu mu}) / 2``."""

        def fn(fac: Factor):
            g = fac.gen
            if g.name != "F" or g.role != Role.FIELD_MOMENTUM:
                return None
            a, mu, nu = g.idx
            img = (_E(g) - _E(self.F(a, nu, mu))).scale(Fraction(1, 2))
            return d(img) if fac.is_diff else img

        return e.map_factors(fn)

    def vertical_space(self, extensions=(), constrained=False) -> PhaseSpace:
        ps = build_phase_space(self.spec(extensions), "vertical")
        if not constrained:
            return ps
        om = drop_semibasic(self.antisymmetrize(ps.omega))
        return PhaseSpace(ps.spec, "vertical-constrained", ps.coords, self.antisymmetrize(ps.theta), om,
                          vertical=True)

    def covariant_space(self) -> PhaseSpace:
        """Covariant phase space: the Hamiltonian section, restricted to the
        antisymmetric momenta."""
        ps = build_phase_space(self.spec(), "plain").with_hamiltonian(self.hamiltonian_standard())
        return PhaseSpace(ps.spec, "plain-constrained+H", ps.coords, self.antisymmetrize(ps.theta),
                          self.antisymmetrize(ps.omega), hamiltonian=ps.hamiltonian)

    def on_surface(self, e: Expr) -> Expr:
        """Normal form on the constraint surface: ``F^{nu mu} -> -F^{mu nu}``
        for ``nu > mu`` and ``F^{mu mu} -> 0``; the same for jets and
        differentials of F."""

        def fn(fac: Factor):
            g = fac.gen
            if g.name != "F" or g.role not in (Role.FIELD_MOMENTUM, Role.JET):
                return None
            a, mu, nu = g.idx
            if mu < nu:
                return None
            if mu == nu:
                return Expr()
            h = Gen(g.name, (a, nu, mu), g.role, g.parity, deriv=g.deriv)
            return -(Expr.diff(h) if fac.is_diff else Expr.gen(h))

        return e.map_factors(fn)

    # -- observables ------------------------------------------------------------------
    def T(self, a, mu) -> Expr:
        """Primary constraint ``(wp_a^{mu nu} - F_a^{mu nu}) d^3x_nu``; on the
        multiphase space only the quadratic part of the field strength is a
        function of the coordinates."""
        out = Expr()
        for nu in range(N):
            fa = self.quadratic(a, mu, nu).scale(self.eta(mu) * self.eta(nu))
            out = out + (_E(self.F(a, mu, nu)) - fa) * vol_minus(N, nu)
        return out

    def S_component(self, a, nu) -> Expr:
        out = Expr()
        for b in range(self.dim):
            for c in range(self.dim):
                k = self.f(a, b, c)
                if k:
                    for rho in range(N):
                        out = out + (_E(self.A(b, rho)) * _E(self.F(c, rho, nu))).scale(k)
        return out

    def S(self, a) -> Expr:
        """``S_a = f_{abc} A^b_rho F^{c rho nu} d^3x_nu``"""
        return sum((self.S_component(a, nu) * vol_minus(N, nu) for nu in range(N)), Expr())

    def X_S_displayed(self, a) -> VectorField:
        cs = {}
        for e, fc in itertools.product(range(self.dim), repeat=2):
            k = self.f(a, e, fc)
            if not k:
                continue
            for mu in range(N):
                _acc(cs, self.A(fc, mu), _E(self.A(e, mu)).scale(k))
                for nu in range(N):
                    _acc(cs, self.F(e, mu, nu), _E(self.F(fc, mu, nu)).scale(-k))
        return VectorField(cs)

    def X_T_displayed(self, a, mu) -> VectorField:
        """``d/dA^a_mu + 2 eta^{mu lam} eta^{nu pi} f_{abc} A^c_pi d/dwp_a^{lam nu}``
        read literally (b is left free, so it is summed)."""
        cs = {self.A(a, mu): Expr.const(1)}
        lam = mu
        for nu in range(N):
            pi = nu
            k = 2 * self.eta(mu) * self.eta(nu)
            c = Expr()
            for b in range(self.dim):
                for cc in range(self.dim):
                    c = c + _E(self.A(cc, pi)).scale(k * self.f(a, b, cc))
            _acc(cs, self.F(a, lam, nu), c)
        return VectorField(cs)

    def upsilon(self) -> Expr:
        """``eta^a S_a^nu d^3x_nu - 1/2 eta^a eta^b f^c_{ab} P_c^nu d^3x_nu + B_a^nu rho^a d^3x_nu``"""
        eta = [Gen("eta", (a,), Role.GHOST, 1) for a in range(self.dim)]
        out = Expr()
        for nu in range(N):
            w = vol_minus(N, nu)
            for a in range(self.dim):
                out = out + _E(eta[a]) * self.S_component(a, nu) * w
                out = out + _E(Gen("B", (a, nu), Role.MULTIPLIER_MOMENTUM)) * _E(
                    Gen("rho", (a,), Role.ANTIGHOST, 1)) * w
                for b in range(self.dim):
                    for c in range(self.dim):
                        k = self.fu(c, a, b)
                        if k:
                            out = out + (_E(eta[a]) * _E(eta[b]) * _E(Gen("P", (c, nu), Role.GHOST_MOMENTUM, 1))
                                         * w).scale(-Fraction(k, 2))
        return out


def jet2(g: Gen, mu: int, nu: int) -> Gen:
    from .calculus import base_coord

    deriv = tuple(sorted((base_coord(mu), base_coord(nu)), key=lambda h: h.key))
    return Gen(g.name, g.idx, Role.JET, g.parity, deriv=deriv)


def _acc(cs, g, c):
    if not c:
        return
    v = cs.get(g, Expr()) + c
    if v:
        cs[g] = v
    else:
        cs.pop(g, None)


# -- the suite --------------------------------------------------------------------------

@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    computed: str = ""
    expected: str = ""


@dataclass
class SuiteReport:
    checks: list = field(default_factory=list)

    def add(self, name, ok, detail="", computed="", expected=""):
        self.checks.append(Check(name, bool(ok), detail, computed, expected))

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def group(self, prefix) -> list:
        return [c for c in self.checks if c.name.startswith(prefix)]

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "suite": "yang-mills",
            "ok": self.ok,
            "checks": [
                {"name": c.name, "status": "PASS" if c.ok else "FAIL", "detail": c.detail,
                 "computed": c.computed, "expected": c.expected}
                for c in self.checks
            ],
        }


def golden_path(name: str = "yang_mills_su2.json"):
    override = os.environ.get(GOLDEN_ENV)
    if override:
        return os.path.join(override, name)
    return str(resources.files("brstforms").joinpath("golden", name))


def load_golden(name: str = "yang_mills_su2.json") -> dict:
    with open(golden_path(name), encoding="utf-8") as fh:
        return json.load(fh)


# -- field equations ---------------------------------------------------------------------

def _proportional(a: Expr, b: Expr):
    """The constant k with ``a == k * b`` (None if there is none)."""
    if not a and not b:
        return Fraction(1)
    if not a or not b:
        return None
    m = next(iter(b.terms))
    if m not in a.terms:
        return None
    k = a.terms[m] / b.terms[m]
    return k if a == b.scale(k) else None


def field_equations(ym: YangMills) -> dict:
    """Contractions of the covariant Cartan form with ``d/dA^m_pi`` and
    ``d/dF_m^{pi kappa}`` (pi < kappa), prolonged and put on the surface."""
    psH = ym.covariant_space()
    out = {"A": {}, "F": {}}
    for m in range(ym.dim):
        for pi in range(N):
            c = top_coefficient(prolong(hook_partial(ym.A(m, pi), psH.omega), N), N)
            out["A"][m, pi] = ym.on_surface(c)
            for ka in range(pi + 1, N):
                c = top_coefficient(prolong(hook_partial(ym.F(m, pi, ka), psH.omega), N), N)
                out["F"][m, pi, ka] = ym.on_surface(c)
    return out


def displayed_field_equations(ym: YangMills) -> dict:
    """``dF_m^{pi kappa}/dx^kappa + F_d^{mu pi} f^d_{e m} A^e_mu = 0`` and
    ``F^m_{pi kappa} = A^m_{[pi,kappa]} + f^m_{ef} A^e_pi A^f_kappa``.

    The index order ``F_d^{mu pi}`` is the one the contraction with
    ``d/dA^m_pi`` produces, and the free index of ``f`` is m.  The
    antisymmetrized jet is ``A_{kappa,pi} - A_{pi,kappa}``, matching the
    field strength of the Lagrangian.
    """
    out = {"A": {}, "F": {}}
    for m in range(ym.dim):
        for pi in range(N):
            e = Expr()
            for ka in range(N):
                e = e + _E(jet(ym.F(m, pi, ka), ka))
            for dd in range(ym.dim):
                for ee in range(ym.dim):
                    k = ym.fu(dd, ee, m)
                    if k:
                        for mu in range(N):
                            e = e + (_E(ym.F(dd, mu, pi)) * _E(ym.A(ee, mu))).scale(k)
            out["A"][m, pi] = ym.on_surface(e)
            for ka in range(pi + 1, N):
                e = _E(ym.F(m, pi, ka)).scale(ym.eta(pi) * ym.eta(ka))
                e = e - _E(jet(ym.A(m, ka), pi)) + _E(jet(ym.A(m, pi), ka))
                e = e - ym.quadratic(m, pi, ka)
                out["F"][m, pi, ka] = ym.on_surface(e)
    return out


def compare_field_equations(ym: YangMills, computed=None) -> dict:
    computed = computed or field_equations(ym)
    shown = displayed_field_equations(ym)
    res = {}
    for kind in ("A", "F"):
        ks = {k: _proportional(computed[kind][k], shown[kind][k]) for k in shown[kind]}
        res[kind] = ks
    return res


def total_derivative(e: Expr, ym: YangMills, ka: int) -> Expr:
    """``D_kappa`` of a function of ``A`` and its first jets."""
    from .calculus import partial

    out = Expr()
    for a in range(ym.dim):
        for mu in range(N):
            g = ym.A(a, mu)
            out = out + partial(e, g) * _E(jet(g, ka))
            for nu in range(N):
                out = out + partial(e, jet(g, nu)) * _E(jet2(g, nu, ka))
    return out


def round_trip(ym: YangMills, computed=None) -> dict:
    """Solve the second family for F, substitute into the first and compare
    with the Euler-Lagrange equations of the Lagrangian."""
    from .calculus import partial

    computed = computed or field_equations(ym)
    L = ym.lagrangian()
    fsol = {}
    for (m, pi, ka), e in computed["F"].items():
        g = ym.F(m, pi, ka)
        lin = Expr({k: v for k, v in e.terms.items() if k == (Factor(g),)})
        if not lin:
            raise AssertionError("momentum equation does not contain its momentum")
        c = lin.terms[(Factor(g),)]
        fsol[g] = (lin - e).scale(1 / c)
    out = {}
    for (m, pi), e in computed["A"].items():
        sub = Expr()
        for mono, c in e.terms.items():
            term = Expr({(): c})
            for fac in mono:
                g = fac.gen
                if g.role == Role.JET and g.name == "F":
                    base = Gen("F", g.idx, Role.FIELD_MOMENTUM)
                    term = term * total_derivative(fsol[base], ym, g.deriv[0].idx[0])
                elif g in fsol:
                    term = term * fsol[g]
                else:
                    term = term * _E(g)
            sub = sub + term
        el = -partial(L, ym.A(m, pi))
        for ka in range(N):
            el = el + total_derivative(partial(L, jet(ym.A(m, pi), ka)), ym, ka)
        out[m, pi] = (_proportional(sub, el), sub, el)
    return out


# -- canonical observables and the section tables -------------------------------------

EXT = ("multipliers", "ghosts", "antighosts")


def _g(name, a, role, parity=0):
    return Gen(name, (a,), role, parity)


def _m(name, a, nu, role, parity=0):
    return Gen(name, (a, nu), role, parity)


def eta_(a):
    return _g("eta", a, Role.GHOST, 1)


def rho_(a):
    return _g("rho", a, Role.ANTIGHOST, 1)


def lam_(a):
    return _g("lam", a, Role.MULTIPLIER)


def P_(a, nu):
    return _m("P", a, nu, Role.GHOST_MOMENTUM, 1)


def C_(a, nu):
    return _m("C", a, nu, Role.ANTIGHOST_MOMENTUM, 1)


def B_(a, nu):
    return _m("B", a, nu, Role.MULTIPLIER_MOMENTUM)


def _current(mk) -> Expr:
    return sum((_E(mk(nu)) * vol_minus(N, nu) for nu in range(N)), Expr())


class Observables:
    """The canonical coordinate observables, indexed the way the tables are."""

    def __init__(self, ym: YangMills):
        self.ym = ym

    def A(self, a, mu, nu) -> Expr:
        return _E(self.ym.A(a, mu)) * vol_minus(N, nu)

    def A_rep(self, a, mu, nu) -> Expr:
        """``1/2 A_{[mu} d^3x_{nu]}``, the Hamiltonian representative of
        ``A_{mu nu}`` once the momenta are antisymmetric."""
        return (self.A(a, mu, nu) - self.A(a, nu, mu)).scale(Fraction(1, 2))

    def F(self, b, mu) -> Expr:
        return _current(lambda nu: self.ym.F(b, mu, nu))

    def F_rep(self, b, mu) -> Expr:
        return self.ym.antisymmetrize(self.F(b, mu))

    def eta(self, a, nu) -> Expr:
        return _E(eta_(a)) * vol_minus(N, nu)

    def rho(self, a, nu) -> Expr:
        return _E(rho_(a)) * vol_minus(N, nu)

    def lam(self, a, nu) -> Expr:
        return _E(lam_(a)) * vol_minus(N, nu)

    def P(self, a) -> Expr:
        return _current(lambda nu: P_(a, nu))

    def C(self, a) -> Expr:
        return _current(lambda nu: C_(a, nu))

    def B(self, a) -> Expr:
        return _current(lambda nu: B_(a, nu))

    def rows(self) -> list:
        """(family, index, observable) for the eight families."""
        dim = self.ym.dim
        out = []
        for a in range(dim):
            for mu in range(N):
                for nu in range(N):
                    out.append(("A", (a, mu, nu), self.A(a, mu, nu)))
        for b in range(dim):
            for mu in range(N):
                out.append(("F", (b, mu), self.F(b, mu)))
        for name, fn in (("eta", self.eta), ("lam", self.lam), ("rho", self.rho)):
            for a in range(dim):
                for nu in range(N):
                    out.append((name, (a, nu), fn(a, nu)))
        for name, fn in (("P", self.P), ("B", self.B), ("C", self.C)):
            for a in range(dim):
                out.append((name, (a,), fn(a)))
        return out


class _HvfCache:
    def __init__(self, ps, cap=4):
        self.ps, self.cap, self._c = ps, cap, {}

    def __call__(self, F: Expr) -> VectorField:
        key = tuple(sorted(F.terms.items(), key=lambda t: [f.key for f in t[0]]))
        if key not in self._c:
            self._c[key] = solve_structural(self.ps, F, cap=self.cap).vf
        return self._c[key]

    def pairing(self, F: Expr, G: Expr) -> Expr:
        inner = hook(self(F), self.ps.omega)
        return hook(self(G), inner) if inner else Expr()


def _delta(a, b):
    return 1 if a == b else 0


def displayed_bracket_table(ym: YangMills) -> dict:
    """The four canonical brackets, ``[mu|...|nu]`` with weight one."""
    dim = ym.dim
    rows = {}
    for a, b in itertools.product(range(dim), repeat=2):
        for mu in range(N):
            for nu in range(mu + 1, N):
                for ka in range(N):
                    e = (vol_minus(N, nu).scale(_delta(ka, mu)) - vol_minus(N, mu).scale(_delta(ka, nu)))
                    rows["A,F", (a, mu, nu), (b, ka)] = e.scale(Fraction(_delta(a, b), 2))
        for nu in range(N):
            w = vol_minus(N, nu).scale(_delta(a, b))
            rows["eta,P", (a, nu), (b,)] = -w
            rows["lam,B", (a, nu), (b,)] = w
            rows["rho,C", (a, nu), (b,)] = -w
    return rows


def bracket_table(ym: YangMills, ps=None) -> dict:
    """Pairings ``X_G ⨼ X_F ⨼ omega`` on the constrained vertical space."""
    ps = ps or ym.vertical_space(EXT, constrained=True)
    h = _HvfCache(ps)
    ob = Observables(ym)
    rows = {}
    for (kind, i, j) in displayed_bracket_table(ym):
        if kind == "A,F":
            F, G = ob.A_rep(*i), ob.F_rep(*j)
        else:
            left, right = kind.split(",")
            F, G = getattr(ob, left)(*i), getattr(ob, right)(*j)
        rows[kind, i, j] = h.pairing(F, G)
    return rows


def displayed_hvf_table(ym: YangMills) -> dict:
    """Hamiltonian vector fields of the coordinate observables; the
    colour index of ``X(eta)`` and ``X(rho)`` is the observable's own."""
    out = {}
    for fam, idx, _ in Observables(ym).rows():
        if fam == "A":
            a, mu, nu = idx
            out[fam, idx] = VectorField.partial(ym.F(a, mu, nu), -1)
        elif fam == "F":
            b, mu = idx
            out[fam, idx] = VectorField.partial(ym.A(b, mu), 1)
        elif fam == "eta":
            out[fam, idx] = VectorField.partial(P_(*idx), -1)
        elif fam == "lam":
            out[fam, idx] = VectorField.partial(B_(*idx), -1)
        elif fam == "rho":
            out[fam, idx] = VectorField.partial(C_(*idx), -1)
        elif fam == "P":
            out[fam, idx] = VectorField.partial(eta_(*idx), -1)
        elif fam == "B":
            out[fam, idx] = VectorField.partial(lam_(*idx), 1)
        else:
            out[fam, idx] = VectorField.partial(rho_(*idx), -1)
    return out


def hvf_table(ym: YangMills, ps=None) -> dict:
    """For each observable: the solver's field, and whether the displayed
    field solves the structural equation."""
    ps = ps or ym.vertical_space(EXT)
    h = _HvfCache(ps)
    shown = displayed_hvf_table(ym)
    out = {}
    for fam, idx, F in Observables(ym).rows():
        X = shown[fam, idx]
        solves = drop_semibasic(hook(X, ps.omega)) == drop_semibasic(d(F))
        out[fam, idx] = (h(F), solves)
    return out


def displayed_x_upsilon(ym: YangMills) -> VectorField:
    dim = ym.dim
    cs = {}
    for a in range(dim):
        ea = _E(eta_(a))
        for e, fc in itertools.product(range(dim), repeat=2):
            k = ym.f(a, e, fc)
            if not k:
                continue
            for mu in range(N):
                _acc(cs, ym.A(fc, mu), (ea * _E(ym.A(e, mu))).scale(k))
                for nu in range(N):
                    _acc(cs, ym.F(e, mu, nu), (ea * _E(ym.F(fc, mu, nu))).scale(-k))
        for b, c in itertools.product(range(dim), repeat=2):
            k = ym.fu(c, a, b)
            if k:
                _acc(cs, eta_(c), (ea * _E(eta_(b))).scale(Fraction(k, 2)))
        for nu in range(N):
            coef = -ym.S_component(a, nu)
            for b, c in itertools.product(range(dim), repeat=2):
                k = ym.fu(c, a, b)
                if k:
                    coef = coef + (_E(eta_(b)) * _E(P_(c, nu))).scale(k)
            _acc(cs, P_(a, nu), coef)
            _acc(cs, C_(a, nu), -_E(B_(a, nu)))
        _acc(cs, lam_(a), _E(rho_(a)))
    return VectorField(cs)


def displayed_variation_table(ym: YangMills) -> dict:
    dim = ym.dim
    out = {}
    for fam, idx, _ in Observables(ym).rows():
        e = Expr()
        if fam == "A":
            a, mu, nu = idx
            for b, c in itertools.product(range(dim), repeat=2):
                k = ym.fu(a, b, c)
                if k:
                    e = e + (_E(eta_(c)) * _E(ym.A(b, mu))).scale(k)
            e = e * vol_minus(N, nu)
        elif fam == "F":
            b, mu = idx
            for a, c in itertools.product(range(dim), repeat=2):
                k = ym.f(a, b, c)
                if k:
                    e = e - (_E(eta_(a)) * _current(lambda nu: ym.F(c, mu, nu))).scale(k)
        elif fam == "eta":
            c, nu = idx
            for a, b in itertools.product(range(dim), repeat=2):
                k = ym.fu(c, a, b)
                if k:
                    e = e + (_E(eta_(a)) * _E(eta_(b))).scale(Fraction(k, 2))
            e = e * vol_minus(N, nu)
        elif fam == "P":
            (a,) = idx
            for nu in range(N):
                coef = -ym.S_component(a, nu)
                for b, c in itertools.product(range(dim), repeat=2):
                    k = ym.fu(c, b, a)
                    if k:
                        coef = coef + (_E(eta_(b)) * _E(P_(c, nu))).scale(k)
                e = e + coef * vol_minus(N, nu)
        elif fam == "lam":
            a, nu = idx
            e = _E(rho_(a)) * vol_minus(N, nu)
        elif fam == "C":
            (b,) = idx
            e = -_current(lambda nu: B_(b, nu))
        out[fam, idx] = e
    return out


def variation_table(ym: YangMills, ps=None) -> dict:
    """``X(Upsilon) ⨼ X(F) ⨼ omega`` on the vertical extended space."""
    ps = ps or ym.vertical_space(EXT)
    h = _HvfCache(ps)
    ups = ym.upsilon()
    return {(fam, idx): h.pairing(F, ups) for fam, idx, F in Observables(ym).rows()}


# -- golden expectations and the suite -------------------------------------------------

def _k(*parts) -> str:
    return "|".join(",".join(str(i) for i in p) if isinstance(p, tuple) else str(p) for p in parts)


def displayed_expectations(ym: YangMills) -> dict:
    """Pretty-printed normal forms of the displayed results, transcribed by
    hand into the builders above.  This is what the golden file stores."""
    from .printing import pretty_vf

    fe = displayed_field_equations(ym)
    return {
        "schema": 1,
        "sigma": SIGMA,
        "legendre": {"p": pretty(ym.legendre()["p_expected"]), "H": pretty(ym.hamiltonian())},
        "x_s": {str(a): pretty_vf(ym.X_S_displayed(a)) for a in range(ym.dim)},
        "field_equations": {kind: {_k(k): pretty(v) for k, v in fe[kind].items()} for kind in fe},
        "bracket_table": {_k(*k): pretty(v, N) for k, v in displayed_bracket_table(ym).items()},
        "hvf_table": {_k(*k): pretty_vf(v) for k, v in displayed_hvf_table(ym).items()},
        "x_upsilon": pretty_vf(displayed_x_upsilon(ym)),
        "variation_table": {_k(*k): pretty(v, N) for k, v in displayed_variation_table(ym).items()},
    }


def write_golden(path: str | None = None, ym: YangMills | None = None) -> str:
    path = path or golden_path()
    data = displayed_expectations(ym or YangMills())
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=1, sort_keys=True)
        fh.write("\n")
    return path


def _first_mismatch(computed: dict, expected: dict):
    bad = [k for k in expected if computed.get(k) != expected[k]]
    return bad


def yang_mills_suite(ym: YangMills | None = None, golden: dict | None = None, cap: int = 4) -> SuiteReport:
    """Run every Yang-Mills check against the stored expectations."""
    from .printing import pretty_vf

    ym = ym or YangMills()
    gold = golden if golden is not None else load_golden()
    rep = SuiteReport()
    if gold.get("schema") != 1:
        raise ValueError("unsupported golden schema")

    lg = ym.legendre()
    rep.add("legendre.momenta", lg["momenta_ok"], "dL/dA_{mu,nu} = F^{mu nu}")
    rep.add("legendre.p", lg["p_ok"] and pretty(lg["p"]) == gold["legendre"]["p"], "p = 1/4 F.F",
            pretty(lg["p"]), gold["legendre"]["p"])
    rep.add("legendre.H", pretty(ym.hamiltonian()) == gold["legendre"]["H"], "H = -1/4 F.F")

    # primary constraints
    ps = ym.vertical_space()
    h = _HvfCache(ps, cap)
    nonzero = []
    for a, b in itertools.product(range(ym.dim), repeat=2):
        for mu, ka in itertools.product(range(N), repeat=2):
            v = h.pairing(ym.T(a, mu), ym.T(b, ka))
            if v:
                nonzero.append(((a, mu), (b, ka), v))
    detail = f"{len(nonzero)} nonzero pairings"
    comp = pretty(nonzero[0][2], N) if nonzero else "0"
    if nonzero:
        detail += f"; first at T{nonzero[0][0]}, T{nonzero[0][1]}"
    rep.add("T.abelian", not nonzero, detail, comp, "0")
    lit = all(drop_semibasic(hook(ym.X_T_displayed(a, mu), ps.omega)) == drop_semibasic(d(ym.T(a, mu)))
              for a in range(ym.dim) for mu in range(N))
    rep.checks[-1].detail += f"; displayed X(T) solves the structural equation: {lit}"

    # consistency: X(T)(H) on the surface
    H = ym.hamiltonian()
    factors = set()
    for a in range(ym.dim):
        for mu in range(N):
            v = ym.on_surface(h(ym.T(a, mu))(H))
            factors.add(_proportional(v, ym.on_surface(ym.S_component(a, mu))))
    rep.add("consistency.S", factors == {Fraction(1, 2)},
            "X(T)_a^mu(H) = k S_a^mu on the surface, k in " + str(sorted(str(f) for f in factors)))

    # secondary constraints
    xs_ok = all(pretty_vf(h(ym.S(a))) == gold["x_s"][str(a)] for a in range(ym.dim))
    rep.add("S.hvf", xs_ok, "solver X(S)_a equals the displayed field")
    alg = True
    for a, b in itertools.product(range(ym.dim), repeat=2):
        lhs = h.pairing(ym.S(b), ym.S(a))
        rhs = sum((ym.S(c).scale(ym.fu(c, a, b)) for c in range(ym.dim)), Expr())
        alg = alg and lhs == rhs
    rep.add("S.algebra", alg, "X(S)_a ⨼ X(S)_b ⨼ omega = f^c_ab S_c")

    # field equations
    fe = field_equations(ym)
    shown = displayed_field_equations(ym)
    for kind in ("A", "F"):
        ks = compare_field_equations(ym, fe)[kind]
        transcribed = all(pretty(shown[kind][k]) == gold["field_equations"][kind][_k(k)] for k in shown[kind])
        ok = None not in ks.values() and transcribed
        rep.add(f"eom.{kind}", ok, "proportionality constants " + str(sorted({str(v) for v in ks.values()})))
    rt = round_trip(ym, fe)
    rep.add("eom.round_trip", all(v[0] == 1 for v in rt.values()),
            "substituted equations equal the Euler-Lagrange equations")

    # tables
    bt = {_k(*k): pretty(v, N) for k, v in bracket_table(ym).items()}
    bad = _first_mismatch(bt, gold["bracket_table"])
    for fam in ("A,F", "eta,P", "lam,B", "rho,C"):
        fb = [k for k in bad if k.startswith(fam + "|")]
        rep.add(f"brackets.{fam}", not fb, f"{len(fb)} mismatches",
                bt.get(fb[0], "") if fb else "", gold["bracket_table"][fb[0]] if fb else "")

    vps = ym.vertical_space(EXT)
    hv = hvf_table(ym, vps)
    for fam in ("A", "F", "eta", "P", "lam", "B", "rho", "C"):
        rows = {k: v for k, v in hv.items() if k[0] == fam}
        mism = [k for k, (X, solves) in rows.items()
                if not solves or pretty_vf(X) != gold["hvf_table"][_k(*k)]]
        rep.add(f"hvf.{fam}", not mism, f"{len(mism)} of {len(rows)} rows differ")

    hu = _HvfCache(vps, cap)
    XU = hu(ym.upsilon())
    solves = drop_semibasic(hook(displayed_x_upsilon(ym), vps.omega)) == drop_semibasic(d(ym.upsilon()))
    rep.add("x_upsilon", solves and pretty_vf(XU) == gold["x_upsilon"], "solver field equals the display",
            pretty_vf(XU), gold["x_upsilon"])

    vt = variation_table(ym, vps)
    for fam in ("A", "F", "eta", "P", "lam", "rho", "C", "B"):
        rows = [k for k in vt if k[0] == fam]
        mism = [k for k in rows if pretty(vt[k], N) != gold["variation_table"][_k(*k)]]
        first = mism[0] if mism else None
        rep.add(f"variation.{fam}", not mism, f"{len(mism)} of {len(rows)} rows differ",
                pretty(vt[first], N) if first else "", gold["variation_table"][_k(*first)] if first else "")
    return rep
