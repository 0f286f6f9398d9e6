"""Exterior derivative, interior products and graded vector fields.

Sign convention: a factor of form degree ``k`` and parity ``p`` passes one
of bi-degree ``(k', p')`` with sign ``(-1)**(k*k' + p*p')``.  ``d`` has
bi-degree (1, 0); ``d/dg`` has (0, |g|); the hook of ``d/dg`` has
(-1, |g|).  Vector-field coefficients stand to the left of the partials,
and every operator acts from the left.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .kernel._backend import contract
from .kernel.expr import Expr, split_index
from .kernel.generators import Factor, Gen, Role


def base_coord(alpha: int) -> Gen:
    return Gen("x", (alpha,), Role.BASE, 0)


def _dfactor(f: Factor) -> Expr:
    g = f.gen
    if f.is_diff or g.is_constant:
        return Expr()
    if g.role == Role.FUNCTION:
        out = Expr()
        for h in g.deps:
            r = g.partial(h)
            if r is not None:
                out = out + Expr({(Factor(h, True),): Fraction(1)}) * Expr.gen(r[1]).scale(r[0])
        return out
    return Expr({(Factor(g, True),): Fraction(1)})


def d(a: Expr) -> Expr:
    """Exterior derivative.  Function factors precede differentials in a
    normal-form monomial, so no sign is ever picked up."""
    acc = Expr()
    for m, c in a.terms.items():
        k = split_index(m)
        for j in range(k):
            dfj = _dfactor(m[j])
            if not dfj:
                continue
            pre = Expr({m[:j]: c})
            post = Expr({m[j + 1:]: Fraction(1)})
            acc = acc + pre * dfj * post
    return acc


def wedge(a: Expr, b: Expr) -> Expr:
    return a * b


def partial(a: Expr, g: Gen) -> Expr:
    """Left partial derivative of the coefficient functions of ``a``."""
    pg = g.parity
    out = Expr()
    for m, c in a.terms.items():
        k = split_index(m)
        ex = 0
        for j in range(k):
            f = m[j]
            h = f.gen
            img = None
            if h == g:
                img = Expr.const(1)
            elif h.role == Role.FUNCTION:
                r = h.partial(g)
                if r is not None:
                    img = Expr.gen(r[1]).scale(r[0])
            if img is not None:
                s = -1 if ex & 1 else 1
                out = out + Expr({m[:j]: c * s}) * img * Expr({m[j + 1:]: Fraction(1)})
            ex += pg * f.par
    return out


def right_partial(a: Expr, g: Gen) -> Expr:
    """Right partial derivative: ``(-1)^{|g|(|f|+1)}`` times the left one on
    each term of coefficient parity ``|f|``."""
    if not g.parity:
        return partial(a, g)
    out = Expr()
    for m, c in a.terms.items():
        k = split_index(m)
        pf = sum(f.par for f in m[:k]) & 1
        t = partial(Expr({m: c}), g)
        out = out + (t if pf else -t)
    return out


def hook_partial(g: Gen, a: Expr) -> Expr:
    """Interior product of the coordinate field ``d/dg`` with ``a``."""
    return Expr(contract(a.terms, Factor(g, True), g.parity))


class VectorField:
    """Graded derivation ``sum_g coeff[g] * d/dg``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[Gen, Expr] | None = None):
        cs = {}
        for g, c in (coeffs or {}).items():
            if not isinstance(c, Expr):
                c = Expr.const(c)
            if c:
                if c.degrees() - {0}:
                    raise ValueError("vector field coefficients must be functions")
                cs[g] = c
        self.coeffs = dict(sorted(cs.items(), key=lambda kv: kv[0].key))

    @classmethod
    def partial(cls, g: Gen, coeff=1) -> "VectorField":
        return cls({g: coeff if isinstance(coeff, Expr) else Expr.const(coeff)})

    def parities(self) -> set:
        return {(p + g.parity) % 2 for g, c in self.coeffs.items() for p in c.parities()}

    @property
    def parity(self) -> int:
        ps = self.parities()
        if len(ps) > 1:
            raise ValueError("vector field is not parity-homogeneous")
        return ps.pop() if ps else 0

    def __add__(self, other: "VectorField") -> "VectorField":
        cs = dict(self.coeffs)
        for g, c in other.coeffs.items():
            cs[g] = cs.get(g, Expr()) + c
        return VectorField(cs)

    def __neg__(self):
        return VectorField({g: -c for g, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def lmul(self, f) -> "VectorField":
        """Left multiplication by a function or scalar."""
        if not isinstance(f, Expr):
            f = Expr.const(f)
        return VectorField({g: f * c for g, c in self.coeffs.items()})

    __rmul__ = lmul

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, f: Expr) -> Expr:
        """Action on functions as a derivation."""
        out = Expr()
        for g, c in self.coeffs.items():
            pf = partial(f, g)
            if pf:
                out = out + c * pf
        return out

    def hook(self, a: Expr) -> Expr:
        return hook(self, a)

    def __repr__(self):
        from .printing import pretty_vf

        return f"VectorField({pretty_vf(self)})"


def hook(X: VectorField, a: Expr) -> Expr:
    """Interior product ``X ⨼ a``; requires form degree >= 1."""
    degs = a.degrees()
    if a and min(degs) < 1:
        raise ValueError("interior product with a form of degree 0")
    out = Expr()
    for g, c in X.coeffs.items():
        h = hook_partial(g, a)
        if h:
            out = out + c * h
    return out


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """Graded commutator ``[X, Y] = XY - (-1)^{|X||Y|} YX``."""
    s = -1 if (X.parity * Y.parity) else 1
    gens = set(X.coeffs) | set(Y.coeffs)
    cs = {}
    for g in gens:
        v = X(Y.coeffs.get(g, Expr())) - Y(X.coeffs.get(g, Expr())).scale(s)
        if v:
            cs[g] = v
    return VectorField(cs)


def vol(n: int) -> Expr:
    """``d^n x = dx^0 ∧ ... ∧ dx^{n-1}``."""
    return Expr({tuple(Factor(base_coord(a), True) for a in range(n)): Fraction(1)})


def vol_minus(n: int, alpha: int) -> Expr:
    """``d^{n-1}x_α = ∂_α ⨼ d^n x``."""
    return hook_partial(base_coord(alpha), vol(n))


def vol_minus2(n: int, alpha: int, beta: int) -> Expr:
    """``d^{n-2}x_{αβ} = ∂_β ⨼ (∂_α ⨼ d^n x)``."""
    return hook_partial(base_coord(beta), vol_minus(n, alpha))


def pullback_section(a: Expr, images: Mapping[Gen, Expr]) -> Expr:
    """Pull back along a section: each listed coordinate is replaced by its
    image (differentials by the differential of the image)."""
    return a.subs(images)
