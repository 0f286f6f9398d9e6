import pytest

from brstforms import (
    CapExceeded,
    Expr,
    FieldFamily,
    Gen,
    NotHamiltonian,
    Role,
    StructureConstants,
    TheorySpec,
    VectorField,
    bracket,
    build_phase_space,
    d,
    hook,
    pairing,
    solve_structural,
    vol,
    vol_minus,
)
from brstforms.phase_space import (
    VARIANTS,
    ConstraintIdeal,
    drop_semibasic,
    hamiltonian_vf,
    lifted_momentum,
    opaque,
)

N = 2
ALL = {"multipliers", "ghosts", "antighosts"}


@pytest.fixture(scope="module")
def vps():
    spec = TheorySpec(n=N, algebra=StructureConstants.abelian(1), extensions=ALL)
    return build_phase_space(spec, "vertical")


def current(ps, name):
    return sum((Expr.gen(ps.coord(name, 0, a)) * vol_minus(N, a) for a in range(N)), Expr())


@pytest.mark.parametrize("variant", [v for v in VARIANTS if v != "vertical"])
def test_omega_is_minus_d_theta_and_closed(variant):
    spec = TheorySpec(n=3, algebra=StructureConstants.abelian(1))
    ps = build_phase_space(spec, variant)
    assert ps.omega == -d(ps.theta)
    assert not d(ps.omega)


def test_unknown_variant():
    with pytest.raises(ValueError):
        build_phase_space(TheorySpec(n=2), "symplectic")


def test_vertical_space_drops_semibasic_terms(vps):
    assert vps.vertical
    assert vps.affine is None
    assert drop_semibasic(vps.omega) == vps.omega
    u = vps.coord("u", 0)
    assert not drop_semibasic(Expr.gen(u) * vol(N))
    assert drop_semibasic(Expr.diff(u) * vol(N)) == Expr.diff(u) * vol(N)


@pytest.mark.parametrize("name,target,sign", [
    ("lam", ("B", 0, 1), -1),
    ("eta", ("P", 0, 1), -1),
    ("rho", ("C", 0, 1), -1),
    ("u", ("p", 0, 1), -1),
])
def test_coordinate_observables(vps, name, target, sign):
    F = Expr.gen(vps.coord(name, 0)) * vol_minus(N, 1)
    X = solve_structural(vps, F).vf
    assert X == VectorField({vps.coord(*target): Expr.const(sign)})
    assert hook(X, vps.omega) == drop_semibasic(d(F))


@pytest.mark.parametrize("name,target,sign", [
    ("B", "lam", 1),
    ("P", "eta", -1),
    ("C", "rho", -1),
    ("p", "u", 1),
])
def test_momentum_observables(vps, name, target, sign):
    X = solve_structural(vps, current(vps, name)).vf
    assert X == VectorField({vps.coord(target, 0): Expr.const(sign)})


def test_bracket_and_pairing_on_canonical_pair(vps):
    F = Expr.gen(vps.coord("u", 0)) * vol_minus(N, 1)
    G = current(vps, "p")
    assert bracket(vps, F, G) == vol_minus(N, 1)
    assert pairing(vps, F, G) == vol_minus(N, 1)


def test_bracket_and_pairing_differ_on_odd_pairs(vps):
    F = Expr.gen(vps.coord("eta", 0)) * vol_minus(N, 1)
    G = current(vps, "P")
    assert bracket(vps, F, G) == -pairing(vps, F, G)


def test_structural_equation_rejects_wrong_degree(vps):
    with pytest.raises(ValueError):
        solve_structural(vps, Expr.gen(vps.coord("u", 0)) * vol(N))


def test_zero_observable_has_zero_field(vps):
    sol = solve_structural(vps, Expr())
    assert not sol.vf and sol.kernel_dim == 0


def test_cap_exceeded(vps):
    u = Expr.gen(vps.coord("u", 0))
    F = u * u * u * u * u * u * vol_minus(N, 0)
    with pytest.raises(CapExceeded):
        solve_structural(vps, F, cap=2)


def test_solution_independent_of_basis_order(vps):
    u = Expr.gen(vps.coord("u", 0))
    lam = Expr.gen(vps.coord("lam", 0))
    F = u * lam * current(vps, "p") + u * u * vol_minus(N, 0)
    a = solve_structural(vps, F).vf
    b = solve_structural(vps, F, order=lambda k: list(reversed(range(k)))).vf
    assert a == b


def test_non_hamiltonian_form_carries_witness(vps):
    u = vps.coord("u", 0)
    F = Expr.gen(u) * Expr.diff(vps.coord("lam", 0)) * Expr.diff(vps.coord("eta", 0))
    spec = TheorySpec(n=3, algebra=StructureConstants.abelian(1), extensions=ALL)
    ps3 = build_phase_space(spec, "vertical")
    with pytest.raises(NotHamiltonian) as info:
        solve_structural(ps3, F)
    assert info.value.witness


def test_with_hamiltonian_replaces_affine_coordinate():
    spec = TheorySpec(n=2, algebra=StructureConstants.abelian(1))
    ps = build_phase_space(spec, "plain")
    deps = [g for g in ps.coords if g.role != Role.AFFINE]
    H = opaque("H", (), deps)
    psH = ps.with_hamiltonian(H)
    assert psH.affine is None
    assert psH.omega == ps.omega.subs({ps.affine: -H})
    assert not d(psH.omega)


def test_hamiltonian_vf_on_graded_space():
    spec = TheorySpec(n=2, algebra=StructureConstants.abelian(1), extensions={"ghosts"})
    ps = build_phase_space(spec, "graded")
    F = Expr.gen(ps.coord("eta", 0)) * vol_minus(2, 0)
    X = hamiltonian_vf(ps, F)
    assert hook(X, ps.omega) == d(F)


def test_lifted_momentum_of_vertical_generator():
    u = Gen("u", (0,), Role.FIELD)
    spec = TheorySpec(n=2, fields=[FieldFamily()], algebra=StructureConstants.abelian(1),
                      xi_field={0: {u: Expr.const(1)}})
    delta = lifted_momentum(spec, *spec.xi(0), None)
    p = [spec.momentum_of(u, a) for a in range(2)]
    assert delta == sum((Expr.gen(p[a]) * vol_minus(2, a) for a in range(2)), Expr())


def test_constraint_ideal():
    a, b = Gen("a", (), Role.FIELD), Gen("b", (), Role.FIELD)
    ideal = ConstraintIdeal([Expr.gen(a) - Expr.gen(b)])
    assert ideal.weakly_zero(Expr.gen(a) * Expr.gen(a) - Expr.gen(b) * Expr.gen(b))
    assert not ideal.weakly_zero(Expr.gen(a))
    with pytest.raises(ValueError):
        ConstraintIdeal([Expr.gen(a) * Expr.gen(b)])
