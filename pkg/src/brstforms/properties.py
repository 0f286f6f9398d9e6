"""Seeded random instances of the algebraic laws.

Every law is a function ``law(rng) -> Outcome``; the suite draws instances
from a ``random.Random`` seeded once, so a seed fixes the whole run.  The
bracket laws draw observables from the canonical families of a small
vertical graded space: coordinate observables, momentum currents, lifted
momenta of random linear generators and the BRST charge.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .brst import build_brst_charge, ghost, ghost_momentum, multiplier, noether_currents
from .calculus import VectorField, base_coord, d, hook, lie_bracket, vol_minus
from .kernel.expr import Expr
from .kernel.generators import Gen, Role
from .kernel.structure import StructureConstants, random_structure_constants
from .phase_space import (
    FieldFamily,
    NotHamiltonian,
    TheorySpec,
    bracket,
    build_phase_space,
)

LAWS = (
    "d_squared",
    "wedge_associativity",
    "hook_antiderivation",
    "lie_jacobi",
    "loday",
    "right_leibniz",
    "generalized_commutativity",
)


class Skip(Exception):
    """The drawn instance falls outside the law's hypotheses."""


@dataclass
class Outcome:
    ok: bool
    nontrivial: bool = True


def _rc(rng, lo=-3, hi=3):
    c = 0
    while c == 0:
        c = rng.randint(lo, hi)
    return Fraction(c)


# -- random forms and vector fields ------------------------------------------------------

POOL = (
    Gen("u", (0,), Role.FIELD),
    Gen("u", (1,), Role.FIELD),
    Gen("p", (0, 0), Role.FIELD_MOMENTUM),
    Gen("eta", (0,), Role.GHOST, 1),
    Gen("eta", (1,), Role.GHOST, 1),
    Gen("P", (0, 1), Role.GHOST_MOMENTUM, 1),
    base_coord(0),
    base_coord(1),
)


def random_function(rng, max_terms=3, max_len=2, min_len=0) -> Expr:
    out = Expr()
    for _ in range(rng.randint(1, max_terms)):
        t = Expr.const(_rc(rng))
        for _ in range(rng.randint(min_len, max_len)):
            t = t * Expr.gen(rng.choice(POOL))
        out = out + t
    return out


def random_form(rng, max_terms=3, max_deg=2) -> Expr:
    out = Expr()
    for _ in range(rng.randint(1, max_terms)):
        t = random_function(rng, 1, 2)
        for _ in range(rng.randint(0, max_deg)):
            t = t * Expr.diff(rng.choice(POOL))
        out = out + t
    return out


def homogeneous_form(rng, **kw) -> Expr:
    """A nonzero random form of a single (degree, parity)."""
    for _ in range(50):
        e = random_form(rng, **kw)
        parts = _components(e)
        if parts:
            return rng.choice(list(parts.values()))
    raise Skip("no nonzero form drawn")


def _components(e: Expr) -> dict:
    out: dict = {}
    for m, c in e.terms.items():
        deg = sum(f.deg for f in m)
        par = sum(f.par for f in m) % 2
        out.setdefault((deg, par), Expr())
        out[deg, par] = out[deg, par] + Expr({m: c})
    return out


def random_vector_field(rng, parity: int) -> VectorField:
    """A nonzero field of the given parity with polynomial coefficients."""
    for _ in range(50):
        cs = {}
        for _ in range(rng.randint(1, 3)):
            g = rng.choice(POOL)
            c = random_function(rng, 3, 2, min_len=1)
            c = Expr({m: v for m, v in c.terms.items()
                      if (sum(f.par for f in m) + g.parity) % 2 == parity})
            if c:
                cs[g] = cs.get(g, Expr()) + c
        X = VectorField(cs)
        if X:
            return X
    raise Skip("no vector field drawn")


def _hook(X: VectorField, a: Expr) -> Expr:
    """Interior product extended by zero to functions."""
    pos = Expr({m: c for m, c in a.terms.items() if any(f.deg for f in m)})
    return hook(X, pos) if pos else Expr()


# -- calculus laws -----------------------------------------------------------------------

def law_d_squared(rng) -> Outcome:
    a = random_form(rng)
    return Outcome(not d(d(a)), bool(d(a)))


def law_wedge_associativity(rng) -> Outcome:
    a, b, c = (random_form(rng) for _ in range(3))
    lhs = (a * b) * c
    return Outcome(lhs == a * (b * c), bool(lhs))


def law_hook_antiderivation(rng) -> Outcome:
    """``X ⨼ (a b) = (X ⨼ a) b + (-1)^{deg a + |X| |a|} a (X ⨼ b)``"""
    X = random_vector_field(rng, rng.randint(0, 1))
    if not X:
        raise Skip("empty vector field")
    a = homogeneous_form(rng)
    b = random_form(rng)
    deg, par = next(iter(_components(a)))
    s = -1 if (deg + X.parity * par) % 2 else 1
    lhs = _hook(X, a * b)
    rhs = _hook(X, a) * b + (a * _hook(X, b)).scale(s)
    return Outcome(lhs == rhs, bool(lhs))


def law_lie_jacobi(rng) -> Outcome:
    """``[X,[Y,Z]] = [[X,Y],Z] + (-1)^{|X||Y|} [Y,[X,Z]]``"""
    X, Y, Z = (random_vector_field(rng, rng.randint(0, 1)) for _ in range(3))
    if not (X and Y and Z):
        raise Skip("empty vector field")
    s = -1 if X.parity * Y.parity else 1
    lhs = lie_bracket(X, lie_bracket(Y, Z))
    rhs = lie_bracket(lie_bracket(X, Y), Z) + _vscale(lie_bracket(Y, lie_bracket(X, Z)), s)
    return Outcome(lhs == rhs, bool(lhs))


def _vscale(X: VectorField, s) -> VectorField:
    return X.lmul(Expr.const(s))


# -- canonical observable families -------------------------------------------------------

@dataclass
class ObservableBench:
    """A vertical graded space with its canonical observable families."""

    ps: object
    coords: list
    momenta: dict
    n: int
    fibre: list = field(default_factory=list)
    charge: Expr | None = None
    currents: list = field(default_factory=list)

    @classmethod
    def build(cls, rng, n=None, m=2, dim=None) -> "ObservableBench":
        n = n or rng.choice((2, 3))
        dim = dim or rng.choice((1, 2))
        sc = random_structure_constants(dim, rng) if dim > 1 else StructureConstants.abelian(dim)
        u = [Gen("u", (i,), Role.FIELD) for i in range(m)]
        xi = {}
        for a in range(dim):
            xi[a] = {}
            for i in range(m):
                c = sum((Expr.gen(u[j]).scale(rng.randint(-2, 2)) for j in range(m)), Expr())
                if c:
                    xi[a][u[i]] = c
        spec = TheorySpec(n=n, fields=[FieldFamily("u", (m,), "p")], algebra=sc, xi_field=xi,
                          extensions=frozenset({"ghosts", "multipliers"}))
        ps = build_phase_space(spec, "vertical")
        fibre = [g for g in ps.coords if g.role in (Role.FIELD, Role.GHOST, Role.MULTIPLIER)]
        momenta = {}
        for g in ps.coords:
            if g.role in (Role.FIELD_MOMENTUM, Role.GHOST_MOMENTUM, Role.MULTIPLIER_MOMENTUM):
                momenta.setdefault((g.name, g.idx[:-1]), []).append(g)
        bench = cls(ps, list(ps.coords), momenta, n, fibre)
        try:
            bench.charge = build_brst_charge(ps, check=False).form
        except (ValueError, AssertionError):
            bench.charge = None
        bench.currents = [c.form for c in noether_currents(ps)]
        return bench

    def coordinate(self, rng, g=None) -> Expr:
        g = g or rng.choice(self.fibre)
        return Expr.gen(g) * vol_minus(self.n, rng.randrange(self.n))

    def current(self, rng) -> Expr:
        key = rng.choice(sorted(self.momenta, key=str))
        return sum((Expr.gen(p) * vol_minus(self.n, p.idx[-1]) for p in self.momenta[key]), Expr())

    def draw(self, rng) -> Expr:
        """A parity-homogeneous integer combination of up to three members
        of the canonical families."""
        fams = [self.coordinate, self.current]
        if self.currents:
            fams.append(lambda r: r.choice(self.currents))
        if self.charge is not None:
            fams.append(lambda r: self.charge)
        out = rng.choice(fams)(rng).scale(_rc(rng, -2, 2))
        for _ in range(rng.randint(0, 2)):
            for _ in range(5):
                extra = rng.choice(fams)(rng)
                if extra and extra.parity == out.parity:
                    out = out + extra.scale(_rc(rng, -2, 2))
                    break
        return out if out else self.coordinate(rng)

    def function(self, rng) -> Expr:
        """A 0-form built from fibre coordinates (degree at most two)."""
        out = Expr.gen(rng.choice(self.fibre))
        if rng.random() < 0.5:
            out = out * Expr.gen(rng.choice(self.fibre))
        return out if out else Expr.gen(self.fibre[0])


def _h(e: Expr) -> int:
    return e.parity if e else 0


def _br(bench, F, G):
    try:
        return bracket(bench.ps, F, G)
    except NotHamiltonian as exc:
        raise Skip("non-Hamiltonian observable") from exc


def law_loday(rng, bench=None) -> Outcome:
    """``{{F,G},H} = {F,{G,H}} - (-1)^{g_F g_G + h_F h_G} {G,{F,H}}``"""
    b = bench or ObservableBench.build(rng)
    F, G, H = b.draw(rng), b.draw(rng), b.draw(rng)
    s = -1 if _h(F) * _h(G) else 1  # g = 0 for (n-1)-forms
    lhs = _br(b, _br(b, F, G), H)
    rhs = _br(b, F, _br(b, G, H)) - _br(b, G, _br(b, F, H)).scale(s)
    return Outcome(lhs == rhs, bool(lhs))


def law_generalized_commutativity(rng, bench=None) -> Outcome:
    """``{{F,G},H} = -(-1)^{g_F g_G + h_F h_G} {{G,F},H}``"""
    b = bench or ObservableBench.build(rng)
    F, G, H = b.draw(rng), b.draw(rng), b.draw(rng)
    s = -1 if _h(F) * _h(G) else 1
    lhs = _br(b, _br(b, F, G), H)
    rhs = _br(b, _br(b, G, F), H).scale(-s)
    return Outcome(lhs == rhs, bool(lhs))


def bracket_function(bench, f: Expr, H: Expr) -> Expr:
    """``{f, H}`` for a 0-form f and a Hamiltonian (n-1)-form H, written
    through X_H alone: ``(-1)^{h_f h_H} X_H ⨼ df``."""
    from .phase_space import hamiltonian_vf

    try:
        XH = hamiltonian_vf(bench.ps, H)
    except NotHamiltonian as exc:
        raise Skip("non-Hamiltonian observable") from exc
    df = d(f)
    out = hook(XH, df) if df else Expr()
    return out.scale(-1) if _h(f) * _h(H) else out


def law_right_leibniz(rng, bench=None) -> Outcome:
    """``{F ^ G, H} = F ^ {G,H} + (-1)^{|G| g_H + h_H h_G} {F,H} ^ G`` with F
    a coordinate function, G a horizontal coordinate observable and H from
    the canonical families (g_H = 0)."""
    b = bench or ObservableBench.build(rng)
    F = b.function(rng)
    G = b.coordinate(rng)
    H = b.draw(rng)
    s = -1 if _h(H) * _h(G) else 1
    lhs = _br(b, F * G, H)
    rhs = F * _br(b, G, H) + (bracket_function(b, F, H) * G).scale(s)
    return Outcome(lhs == rhs, bool(lhs))


LAW_FUNCS = {
    "d_squared": law_d_squared,
    "wedge_associativity": law_wedge_associativity,
    "hook_antiderivation": law_hook_antiderivation,
    "lie_jacobi": law_lie_jacobi,
    "loday": law_loday,
    "right_leibniz": law_right_leibniz,
    "generalized_commutativity": law_generalized_commutativity,
}


@dataclass
class LawResult:
    law: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    nontrivial: int = 0
    first_failure: int | None = None

    @property
    def ok(self) -> bool:
        return self.failed == 0


@dataclass
class PropertyReport:
    seed: int
    count: int
    results: list

    @property
    def ok(self) -> bool:
        return all(r.ok and r.passed >= self.count for r in self.results)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "suite": "properties",
            "seed": self.seed,
            "instances": self.count,
            "ok": self.ok,
            "laws": [
                {"law": r.law, "status": "PASS" if r.ok and r.passed >= self.count else "FAIL",
                 "passed": r.passed, "failed": r.failed, "skipped": r.skipped, "nontrivial": r.nontrivial,
                 "first_failure": r.first_failure}
                for r in self.results
            ],
        }


def run_property_suite(seed: int = 0, count: int = 100, laws=LAWS, max_draws: int | None = None) -> PropertyReport:
    """Draw instances until ``count`` of each law have been evaluated."""
    max_draws = max_draws or 5 * count
    results = []
    for law in laws:
        fn = LAW_FUNCS[law]
        rng = random.Random(f"{seed}:{law}")
        res = LawResult(law)
        draws = 0
        while res.passed + res.failed < count and draws < max_draws:
            draws += 1
            try:
                out = fn(rng)
            except Skip:
                res.skipped += 1
                continue
            res.nontrivial += out.nontrivial
            if out.ok:
                res.passed += 1
            else:
                res.failed += 1
                if res.first_failure is None:
                    res.first_failure = draws
        results.append(res)
    return PropertyReport(seed, count, results)


__all__ = ["LAWS", "LAW_FUNCS", "ObservableBench", "Outcome", "PropertyReport", "Skip",
           "bracket_function", "run_property_suite", "ghost", "ghost_momentum", "multiplier"]
