import random

import pytest

from brstforms import (
    Expr,
    Gen,
    Role,
    VectorField,
    base_coord,
    d,
    hook,
    hook_partial,
    lie_bracket,
    partial,
    right_partial,
    vol,
    vol_minus,
    vol_minus2,
)
from brstforms.phase_space import opaque
from brstforms.properties import POOL, random_form, random_function, random_vector_field

u = Gen("u", (0,), Role.FIELD)
w = Gen("u", (1,), Role.FIELD)
eta = Gen("eta", (0,), Role.GHOST, 1)
rho = Gen("rho", (0,), Role.ANTIGHOST, 1)
x = [base_coord(a) for a in range(4)]


def E(g):
    return Expr.gen(g)


def D(g):
    return Expr.diff(g)


def test_d_of_coordinates():
    assert d(E(u)) == D(u)
    assert not d(D(u))
    assert not d(Expr.const(3))


def test_d_is_a_graded_derivation():
    a = E(u) * E(eta)
    assert d(a) == D(u) * E(eta) + E(u) * D(eta)
    b = E(w) * D(u)
    assert d(b) == D(w) * D(u)


@pytest.mark.parametrize("seed", range(30))
def test_d_squared_random(seed):
    a = random_form(random.Random(seed))
    assert not d(d(a))


def test_opaque_function_chain_rule():
    f = opaque("f", (), [u, w])
    df = d(f)
    assert df == D(u) * partial(f, u) + D(w) * partial(f, w)
    assert not d(df)


def test_left_and_right_partials_on_odd_generators():
    e = E(eta) * E(rho)
    assert partial(e, eta) == E(rho)
    assert right_partial(e, eta) == -E(rho)
    assert partial(e, rho) == -E(eta)
    assert right_partial(e, rho) == E(eta)
    assert right_partial(E(u) * E(w), u) == partial(E(u) * E(w), u)


def test_volume_forms():
    n = 3
    assert vol(n) == D(x[0]) * D(x[1]) * D(x[2])
    assert vol_minus(n, 0) == D(x[1]) * D(x[2])
    assert vol_minus(n, 1) == -(D(x[0]) * D(x[2]))
    assert vol_minus2(n, 0, 1) == D(x[2])
    assert vol_minus2(n, 1, 0) == -D(x[2])
    for a in range(n):
        assert D(x[a]) * vol_minus(n, a) == vol(n)


def test_hook_partial_signs():
    assert hook_partial(u, D(u) * D(w)) == D(w)
    assert hook_partial(w, D(u) * D(w)) == -D(u)
    # an odd coordinate field passes an odd coefficient with a sign
    assert hook_partial(eta, E(rho) * D(eta)) == -E(rho)
    assert hook_partial(eta, D(u) * D(eta)) == -D(u)


def test_hook_rejects_functions():
    with pytest.raises(ValueError):
        hook(VectorField.partial(u), E(u))


def test_vector_field_action_and_bracket():
    X = VectorField({u: E(w)})
    Y = VectorField({w: E(u)})
    assert X(E(u) * E(u)) == (E(u) * E(w)).scale(2)
    Z = lie_bracket(X, Y)
    assert Z == VectorField({u: -E(u), w: E(w)})


def test_odd_vector_fields_bracket_symmetrically():
    Q = VectorField({u: E(eta), eta: E(u)})
    assert Q.parity == 1
    assert lie_bracket(Q, Q) == VectorField({u: E(u).scale(2), eta: E(eta).scale(2)})
    assert not lie_bracket(VectorField({eta: E(eta) * E(rho)}), VectorField({eta: E(eta) * E(rho)}))


def _positive_form(rng, deg):
    out = random_function(rng, 2, 2)
    for _ in range(deg):
        out = out * Expr.diff(rng.choice(POOL))
    return out


@pytest.mark.parametrize("seed", range(20))
def test_hook_is_an_antiderivation(seed):
    rng = random.Random(seed)
    X = random_vector_field(rng, 0)
    a = _positive_form(rng, rng.randint(1, 2))
    b = _positive_form(rng, rng.randint(1, 2))
    k = a.degree if a else 0
    lhs = hook(X, a * b)
    rhs = hook(X, a) * b + (a * hook(X, b)).scale((-1) ** k)
    assert lhs == rhs
