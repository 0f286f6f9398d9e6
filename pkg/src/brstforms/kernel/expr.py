"""Exact elements of the bi-graded supercommutative algebra.

Functions and differential forms live in the same algebra: generators and
their differentials are both factors, and a monomial is a sorted tuple of
factors (functions first, then differentials).  Coefficients are
``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Mapping

from ._backend import mul_mono, sort_factors
from .generators import Factor, Gen, Role


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, Rational):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


class Expr:
    """Finite sum of (rational coefficient) x (normal-form monomial)."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        self.terms = dict(terms) if terms else {}
        self._hash = None

    # -- construction -----------------------------------------------------
    @classmethod
    def const(cls, c) -> "Expr":
        c = _frac(c)
        return cls({(): c} if c else {})

    @classmethod
    def gen(cls, g: Gen) -> "Expr":
        return cls({(Factor(g),): Fraction(1)})

    @classmethod
    def diff(cls, g: Gen) -> "Expr":
        """The 1-form ``d g`` (zero for constants)."""
        if g.is_constant:
            return cls()
        if g.role == Role.FUNCTION:
            from ..calculus import d

            return d(cls.gen(g))
        return cls({(Factor(g, True),): Fraction(1)})

    @classmethod
    def normalize(cls, raw: Iterable) -> "Expr":
        """Normal form of ``sum(coef * f1 * f2 * ...)``.

        ``raw`` yields ``(coef, factors)`` pairs with factors in any order.
        """
        out: dict = {}
        for c, factors in raw:
            s, mono = sort_factors(factors)
            if s == 0:
                continue
            v = out.get(mono, 0) + s * _frac(c)
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return cls(out)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Expr":
        if isinstance(other, Expr):
            return other
        return Expr.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Expr(out)

    __radd__ = __add__

    def __neg__(self):
        return Expr({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Expr":
        c = _frac(c)
        if not c:
            return Expr()
        return Expr({m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Expr):
            return self.scale(other)
        out: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                s, m = mul_mono(ma, mb)
                if s == 0:
                    continue
                v = out.get(m, 0) + (ca * cb if s > 0 else -(ca * cb))
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Expr(out)

    def __rmul__(self, other):
        # scalars commute with everything
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(1 / _frac(c))

    wedge = __mul__

    def __pow__(self, k: int):
        out = Expr.const(1)
        for _ in range(k):
            out = out * self
        return out

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Expr):
            return self.terms == other.terms
        if isinstance(other, Rational):
            return self.terms == ({(): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    # -- gradings ---------------------------------------------------------
    def degrees(self) -> set:
        return {sum(f.deg for f in m) for m in self.terms}

    @property
    def degree(self) -> int:
        """Form degree; raises for mixed-degree expressions."""
        degs = self.degrees()
        if not degs:
            return 0
        if len(degs) != 1:
            raise ValueError(f"mixed form degrees {sorted(degs)}")
        return degs.pop()

    def parities(self) -> set:
        return {sum(f.par for f in m) % 2 for m in self.terms}

    @property
    def parity(self) -> int:
        ps = self.parities()
        if not ps:
            return 0
        if len(ps) != 1:
            raise ValueError("expression is not parity-homogeneous")
        return ps.pop()

    def homogeneous_part(self, degree: int) -> "Expr":
        return Expr(
            {m: c for m, c in self.terms.items() if sum(f.deg for f in m) == degree}
        )

    def generators(self) -> set:
        return {f.gen for m in self.terms for f in m}

    # -- structural maps --------------------------------------------------
    def map_factors(self, fn: Callable[[Factor], "Expr | None"]) -> "Expr":
        """Algebra homomorphism defined on factors.

        ``fn`` returns the image of a factor, or None to keep it.  Images must
        have the same bi-degree as the factor for signs to stay consistent.
        """
        out = Expr()
        cache: dict = {}
        for m, c in self.terms.items():
            acc = Expr({(): c})
            for f in m:
                if f not in cache:
                    img = fn(f)
                    cache[f] = Expr({(f,): Fraction(1)}) if img is None else img
                acc = acc * cache[f]
                if not acc.terms:
                    break
            out = out + acc
        return out

    def subs(self, mapping: Mapping[Gen, "Expr"]) -> "Expr":
        """Substitute generators (and, consistently, their differentials)."""
        from ..calculus import d

        mapping = {g: (v if isinstance(v, Expr) else Expr.const(v)) for g, v in mapping.items()}
        dimg = {}

        def fn(f: Factor):
            if f.gen not in mapping:
                return None
            if not f.is_diff:
                return mapping[f.gen]
            if f.gen not in dimg:
                dimg[f.gen] = d(mapping[f.gen])
            return dimg[f.gen]

        return self.map_factors(fn)

    def coefficient(self, form_part: "Expr") -> "Expr":
        """Function coefficient multiplying a single pure-differential monomial."""
        if len(form_part.terms) != 1:
            raise ValueError("form_part must be a single monomial")
        (fm, fc), = form_part.terms.items()
        out = {}
        for m, c in self.terms.items():
            k = _split(m)
            if m[k:] == fm:
                out[m[:k]] = out.get(m[:k], 0) + c / fc
        return Expr({m: c for m, c in out.items() if c})

    def by_form_part(self) -> dict:
        """Group terms as ``{differential monomial: function coefficient}``."""
        groups: dict = {}
        for m, c in self.terms.items():
            k = _split(m)
            groups.setdefault(m[k:], {})[m[:k]] = c
        return {fm: Expr(t) for fm, t in groups.items()}

    def __repr__(self):
        from ..printing import pretty

        return f"Expr({pretty(self)})"

    def __str__(self):
        from ..printing import pretty

        return pretty(self)


def _split(mono) -> int:
    """Index of the first differential factor in a normal-form monomial."""
    for k, f in enumerate(mono):
        if f.deg:
            return k
    return len(mono)


split_index = _split
GradedExpr = Expr


def gen(g: Gen) -> Expr:
    return Expr.gen(g)


def const(c) -> Expr:
    return Expr.const(c)


def dvar(g: Gen) -> Expr:
    return Expr.diff(g)


def mul_all(items: Iterable[Expr]) -> Expr:
    out = Expr.const(1)
    for e in items:
        out = out * e
    return out
