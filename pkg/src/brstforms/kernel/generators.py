"""Generators of the phase-space algebra and their differentials."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum


class Role(IntEnum):
    """Coordinate roles; the integer value is the rank used for ordering."""

    BASE = 0
    FIELD = 1
    MULTIPLIER = 2
    GHOST = 3
    ANTIGHOST = 4
    FIELD_MOMENTUM = 5
    MULTIPLIER_MOMENTUM = 6
    GHOST_MOMENTUM = 7
    ANTIGHOST_MOMENTUM = 8
    AFFINE = 9
    FUNCTION = 10
    JET = 11
    PARAMETER = 12


ODD_ROLES = frozenset(
    {Role.GHOST, Role.ANTIGHOST, Role.GHOST_MOMENTUM, Role.ANTIGHOST_MOMENTUM}
)


@dataclass(frozen=True)
class Gen:
    """A named generator ``name^{idx}``.

    ``deps`` is only used by opaque functions (role FUNCTION): it lists the
    coordinates the function depends on, and is part of its identity.  ``deriv`` records the partial
    derivatives already taken, so ``Gen('H', deps=(u,)).partial(u)`` is the
    symbol for dH/du.  Jets and parameters are constants for ``d``.
    """

    name: str
    idx: tuple = ()
    role: Role = Role.FIELD
    parity: int = 0
    deps: tuple = field(default=(), repr=False)
    deriv: tuple = ()

    def __post_init__(self):
        if self.parity not in (0, 1):
            raise ValueError("parity must be 0 or 1")
        object.__setattr__(self, "idx", tuple(self.idx))

    @property
    def key(self):
        return (
            int(self.role),
            self.name,
            self.idx,
            tuple(g.key for g in self.deriv),
            tuple(g.key for g in self.deps),
        )

    @property
    def is_constant(self) -> bool:
        return self.role in (Role.JET, Role.PARAMETER)

    def partial(self, g: "Gen") -> "tuple[int, Gen] | None":
        """``(sign, symbol)`` with d/dg of this opaque function equal to
        ``sign * symbol``, or None when it vanishes identically.

        ``deriv`` is kept sorted; the symbol stands for the derivatives applied
        in that order (first entry innermost), so inserting ``g`` costs a sign
        for every odd direction it has to pass.
        """
        if self.role != Role.FUNCTION:
            raise TypeError(f"{self} is not an opaque function")
        if g not in self.deps:
            return None
        if g.parity and g in self.deriv:
            return None
        sign = 1
        if g.parity:
            for h in self.deriv:
                if h.parity and h.key > g.key:
                    sign = -sign
        deriv = tuple(sorted(self.deriv + (g,), key=lambda h: h.key))
        return sign, Gen(
            self.name,
            self.idx,
            Role.FUNCTION,
            (self.parity + g.parity) % 2,
            self.deps,
            deriv,
        )

    def __lt__(self, other):
        return self.key < other.key

    def __str__(self):
        return format_gen(self)


_GREEK = {"alpha": "α", "beta": "β", "mu": "μ", "nu": "ν"}


def format_gen(g: Gen) -> str:
    s = g.name
    if g.role == Role.JET:
        # jets carry the base direction in ``deriv``
        idx = "[" + ",".join(str(i) for i in g.idx) + "]" if g.idx else ""
        return s + idx + "_{," + ",".join(str(h.idx[0]) for h in g.deriv) + "}"
    if g.idx:
        s += "[" + ",".join(str(i) for i in g.idx) + "]"
    if g.deriv:
        s += "_{," + ",".join(format_gen(h) for h in g.deriv) + "}"
    return s


class Factor:
    """A generator or the differential of a generator.

    ``deg`` is the form degree, ``par`` the Grassmann parity.  Swapping two
    factors costs ``(-1)**(deg*deg' + par*par')``; a factor whose self-swap
    sign is -1 squares to zero.
    """

    __slots__ = ("gen", "is_diff", "deg", "par", "key", "sqzero", "_hash")

    _cache: dict = {}

    def __new__(cls, gen: Gen, is_diff: bool = False):
        k = (gen, is_diff)
        obj = cls._cache.get(k)
        if obj is not None:
            return obj
        obj = object.__new__(cls)
        obj.gen = gen
        obj.is_diff = is_diff
        obj.deg = 1 if is_diff else 0
        obj.par = gen.parity
        obj.key = (obj.deg, gen.key)
        obj.sqzero = bool((obj.deg + obj.par) % 2)
        obj._hash = hash(obj.key)
        cls._cache[k] = obj
        return obj

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        return ("d" if self.is_diff else "") + format_gen(self.gen)

    def __reduce__(self):
        return (Factor, (self.gen, self.is_diff))
