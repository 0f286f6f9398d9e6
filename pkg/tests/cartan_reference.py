"""Hand transcriptions of the canonical Cartan forms.

Volume forms are written out as explicit wedges of base differentials, so
these references use nothing from the package beyond generators and
products.
"""

from brstforms import Expr, Gen, Role

EXT_ALL = ("multipliers", "ghosts", "antighosts")


def x(alpha):
    return Gen("x", (alpha,), Role.BASE)


def dx_all(n):
    out = Expr.const(1)
    for b in range(n):
        out = out * Expr.diff(x(b))
    return out


def dx_minus(n, alpha):
    """``d/dx^alpha ⨼ dx^0 ^ ... ^ dx^{n-1}``."""
    out = Expr.const(-1 if alpha % 2 else 1)
    for b in range(n):
        if b != alpha:
            out = out * Expr.diff(x(b))
    return out


def sectors(m, dim, ext):
    """(coordinate, momenta) pairs with the sign of their Cartan term."""
    n_fields = [(Gen("u", (i,), Role.FIELD), "p", Role.FIELD_MOMENTUM, 0, (i,)) for i in range(m)]
    rows = list(n_fields)
    if "multipliers" in ext:
        rows += [(Gen("lam", (a,), Role.MULTIPLIER), "B", Role.MULTIPLIER_MOMENTUM, 0, (a,))
                 for a in range(dim)]
    if "ghosts" in ext:
        rows += [(Gen("eta", (a,), Role.GHOST, 1), "P", Role.GHOST_MOMENTUM, 1, (a,))
                 for a in range(dim)]
    if "antighosts" in ext:
        rows += [(Gen("rho", (a,), Role.ANTIGHOST, 1), "C", Role.ANTIGHOST_MOMENTUM, 1, (a,))
                 for a in range(dim)]
    return rows


def theta(n, m, dim, ext, affine=True):
    """``p d^n x + sum pi^alpha dq ^ d^{n-1}x_alpha`` over every sector."""
    out = Expr()
    if affine:
        out = Expr.gen(Gen("p", (), Role.AFFINE)) * dx_all(n)
    for q, name, role, par, idx in sectors(m, dim, ext):
        for al in range(n):
            mom = Gen(name, idx + (al,), role, par)
            out = out + Expr.gen(mom) * Expr.diff(q) * dx_minus(n, al)
    return out


def omega(n, m, dim, ext, affine=True):
    """``-dp ^ d^n x + dq ^ dpi^alpha ^ d^{n-1}x_alpha`` for even sectors and
    ``-dq ^ dpi^alpha ^ d^{n-1}x_alpha`` for odd ones."""
    out = Expr()
    if affine:
        out = -(Expr.diff(Gen("p", (), Role.AFFINE)) * dx_all(n))
    for q, name, role, par, idx in sectors(m, dim, ext):
        sign = -1 if par else 1
        for al in range(n):
            mom = Gen(name, idx + (al,), role, par)
            out = out + (Expr.diff(q) * Expr.diff(mom) * dx_minus(n, al)).scale(sign)
    return out
