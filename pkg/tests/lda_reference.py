"""Hand transcriptions of the Lagrange-d'Alembert displays, written with
the package primitives but without using the derivation code."""

from brstforms import Expr, Gen, Role, StructureConstants, base_coord
from brstforms.calculus import partial, vol, vol_minus, vol_minus2
from brstforms.field_eqs import jet
from brstforms.phase_space import FieldFamily, TheorySpec, opaque


def E(g):
    return Expr.gen(g)


def dE(g):
    return Expr.diff(g)


class LdaSetup:
    """m scalar fields, dim generators, opaque xi^i_a(x, u) and xi^alpha_a(x)."""

    def __init__(self, n=2, m=1, dim=1, moving_base=True):
        self.n, self.m, self.dim = n, m, dim
        self.x = [base_coord(a) for a in range(n)]
        self.u = [Gen("u", (i,), Role.FIELD) for i in range(m)]
        self.p = [[Gen("p", (i, al), Role.FIELD_MOMENTUM) for al in range(n)] for i in range(m)]
        self.lam = [Gen("lam", (a,), Role.MULTIPLIER) for a in range(dim)]
        self.xi = {(i, a): opaque("xi", (i, a), self.x + self.u) for i in range(m) for a in range(dim)}
        self.xib = {(al, a): (opaque("xib", (al, a), self.x) if moving_base else Expr())
                    for al in range(n) for a in range(dim)}
        self.spec = TheorySpec(
            n=n,
            fields=[FieldFamily("u", (m,), "p")],
            algebra=StructureConstants.abelian(dim),
            xi_field={a: {self.u[i]: self.xi[i, a] for i in range(m)} for a in range(dim)},
            xi_base={a: {al: self.xib[al, a] for al in range(n)} for a in range(dim)} if moving_base else {},
        )
        flat = [g for row in self.p for g in row]
        self.H = opaque("H", (), self.x + self.u + flat)

    # total derivative along the section of a function of (x, u, p)
    def total(self, f, beta):
        out = partial(f, self.x[beta])
        for i in range(self.m):
            out = out + partial(f, self.u[i]) * E(jet(self.u[i], beta))
            for al in range(self.n):
                out = out + partial(f, self.p[i][al]) * E(jet(self.p[i][al], beta))
        return out

    def G(self, a, al):
        return sum((E(self.p[i][al]) * self.xi[i, a] for i in range(self.m)), Expr())

    def F(self, a, i, be, al):
        return E(self.p[i][al]) * self.xib[be, a]

    def lj(self, a, al):
        return E(jet(self.lam[a], al))

    # -- first-order equations --------------------------------------------------------
    def eq5_p(self, i):
        """Returns (lhs, rhs) of the momentum equation, five right-hand terms."""
        n, H = self.n, self.H
        lhs = sum((E(jet(self.p[i][al], al)) for al in range(n)), Expr())
        rhs = -partial(H, self.u[i])
        for a in range(self.dim):
            for al in range(n):
                rhs = rhs + partial(self.G(a, al), self.u[i]) * self.lj(a, al)
                for be in range(n):
                    rhs = rhs + self.lj(a, al) * self.total(self.F(a, i, be, al), be)
                    rhs = rhs - self.lj(a, be) * self.total(self.F(a, i, be, al), al)
            for be in range(n):
                rhs = rhs - self.lj(a, be) * self.xib[be, a] * partial(H, self.u[i])
        return lhs, rhs

    def eq5_u(self, i, al):
        """dF^{beta gamma}_{ak}/dp_k^gamma is read as xi^beta_a (k = i, gamma = al)."""
        n, H = self.n, self.H
        lhs = E(jet(self.u[i], al))
        rhs = partial(H, self.p[i][al])
        for a in range(self.dim):
            for be in range(n):
                rhs = rhs - self.lj(a, be) * partial(self.G(a, be), self.p[i][al])
                rhs = rhs + self.lj(a, be) * self.xib[be, a] * partial(H, self.p[i][al])
                rhs = rhs + self.lj(a, al) * self.xib[be, a] * E(jet(self.u[i], be))
                rhs = rhs - self.lj(a, be) * self.xib[be, a] * E(jet(self.u[i], al))
        return lhs, rhs

    def eq9_p(self, i):
        lhs = sum((E(jet(self.p[i][al], al)) for al in range(self.n)), Expr())
        rhs = -partial(self.H, self.u[i])
        for a in range(self.dim):
            for al in range(self.n):
                rhs = rhs + partial(self.G(a, al), self.u[i]) * self.lj(a, al)
        return lhs, rhs

    def eq9_u(self, i, al):
        rhs = partial(self.H, self.p[i][al])
        for a in range(self.dim):
            for be in range(self.n):
                rhs = rhs - partial(self.G(a, be), self.p[i][al]) * self.lj(a, be)
        return E(jet(self.u[i], al)), rhs

    # -- the extended Cartan form and its contractions ---------------------------------
    def omega_ex_H(self):
        """Expansion of the extended Cartan form with p = -H; the
        xi^i_{a,j} term carries du^j."""
        n, H = self.n, self.H
        x, u, p, lam = self.x, self.u, self.p, self.lam
        out = Expr()
        for i in range(self.m):
            out = out + partial(H, u[i]) * dE(u[i]) * vol(n)
            for al in range(n):
                out = out + partial(H, p[i][al]) * dE(p[i][al]) * vol(n)
                out = out + dE(u[i]) * dE(p[i][al]) * vol_minus(n, al)
        for a in range(self.dim):
            dl = dE(lam[a])
            for al in range(n):
                xa = self.xib[al, a]
                out = out - partial(H, x[al]) * xa * dl * vol(n)
                out = out - partial(xa, x[al]) * H * dl * vol(n)
                for k in range(self.m):
                    for be in range(n):
                        out = out - partial(H, p[k][be]) * xa * dl * dE(p[k][be]) * vol_minus(n, al)
                for i in range(self.m):
                    xi = self.xi[i, a]
                    out = out + xi * dl * dE(p[i][al]) * vol_minus(n, al)
                    out = out + partial(xi, x[al]) * E(p[i][al]) * dl * vol(n)
                    for j in range(self.m):
                        out = out + partial(xi, u[j]) * E(p[i][al]) * dl * dE(u[j]) * vol_minus(n, al)
                    out = out - partial(H, u[i]) * xa * dl * dE(u[i]) * vol_minus(n, al)
                    for be in range(n):
                        xb = self.xib[be, a]
                        out = out - xb * dl * dE(p[i][al]) * dE(u[i]) * vol_minus2(n, al, be)
                        for ga in range(n):
                            out = out + (E(p[i][al]) * partial(xb, x[ga]) * dl * dE(u[i])
                                         * dE(x[ga]) * vol_minus2(n, al, be))
        return out

    def eq7(self, l):
        """d/du^l contraction; dx^gamma ^ d^{n-2}x_{alpha alpha} is read as
        d^{n-1}x_alpha and dx^gamma ^ d^{n-2}x_{alpha beta} as d^{n-1}x_beta."""
        n, H = self.n, self.H
        x, u, p, lam = self.x, self.u, self.p, self.lam
        out = partial(H, u[l]) * vol(n)
        for al in range(n):
            out = out + dE(p[l][al]) * vol_minus(n, al)
        for a in range(self.dim):
            dl = dE(lam[a])
            for al in range(n):
                for i in range(self.m):
                    out = out - partial(self.xi[i, a], u[l]) * E(p[i][al]) * dl * vol_minus(n, al)
                out = out + partial(H, u[l]) * self.xib[al, a] * dl * vol_minus(n, al)
                for be in range(n):
                    xb = self.xib[be, a]
                    out = out - xb * dl * dE(p[l][al]) * vol_minus2(n, al, be)
                    out = out - E(p[l][al]) * partial(xb, x[be]) * dl * vol_minus(n, al)
                    out = out + E(p[l][al]) * partial(xb, x[al]) * dl * vol_minus(n, be)
        return out

    def eq8(self, l, eps):
        n, H = self.n, self.H
        u, p, lam = self.u, self.p, self.lam
        out = partial(H, p[l][eps]) * vol(n) - dE(u[l]) * vol_minus(n, eps)
        for a in range(self.dim):
            dl = dE(lam[a])
            out = out - self.xi[l, a] * dl * vol_minus(n, eps)
            for al in range(n):
                out = out + partial(H, p[l][eps]) * self.xib[al, a] * dl * vol_minus(n, al)
                out = out + self.xib[al, a] * dl * dE(u[l]) * vol_minus2(n, eps, al)
        return out
