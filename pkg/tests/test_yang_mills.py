import itertools
import json

import pytest

from brstforms import Expr, d, hook, pretty, vol_minus
from brstforms.phase_space import drop_semibasic
from brstforms.yang_mills import (
    EXT,
    N,
    YangMills,
    _E,
    compare_field_equations,
    displayed_expectations,
    eta_,
    golden_path,
    load_golden,
    P_,
    round_trip,
    variation_table,
    yang_mills_suite,
)


@pytest.fixture(scope="module")
def ym():
    return YangMills()


@pytest.fixture(scope="module")
def report(ym):
    return yang_mills_suite(ym)


def _check(report, name):
    (c,) = [c for c in report.checks if c.name == name]
    return c


def test_golden_file_matches_transcriptions(ym):
    stored = load_golden()
    fresh = json.loads(json.dumps(displayed_expectations(ym), sort_keys=True))
    assert stored == fresh
    assert golden_path().endswith("yang_mills_su2.json")


def test_suite_has_every_group(report):
    names = {c.name.split(".")[0] for c in report.checks}
    assert names >= {"legendre", "T", "consistency", "S", "eom", "brackets", "hvf", "x_upsilon", "variation"}
    assert len(report.group("hvf.")) == 8
    assert len(report.group("variation.")) == 8
    assert len(report.group("brackets.")) == 4


@pytest.mark.parametrize("name", [
    "legendre.momenta", "legendre.p", "legendre.H",
    "consistency.S", "S.hvf", "S.algebra",
    "eom.A", "eom.F", "eom.round_trip",
    "brackets.A,F", "brackets.eta,P", "brackets.lam,B", "brackets.rho,C",
    "hvf.A", "hvf.F", "hvf.eta", "hvf.P", "hvf.lam", "hvf.B", "hvf.rho", "hvf.C",
    "x_upsilon",
    "variation.A", "variation.F", "variation.eta", "variation.lam", "variation.rho",
    "variation.C", "variation.B",
])
def test_check_passes(report, name):
    c = _check(report, name)
    assert c.ok, c.detail


def test_constraint_algebra_is_not_abelian(report):
    """The displayed claim fails: the solver's fields for the primary
    constraints pair to nonzero forms, and the displayed field for them
    does not solve its structural equation."""
    c = _check(report, "T.abelian")
    assert not c.ok
    assert c.detail.startswith("96 nonzero pairings")
    assert "solves the structural equation: False" in c.detail


def test_ghost_momentum_variation_differs_by_the_ghost_term_sign(ym):
    """The computed row is ``-S_a + f^c_{ab} eta^b P_c``; the display has
    ``f^c_{ba}`` in the ghost term.  The S term agrees."""
    comp = variation_table(ym)
    for a in range(ym.dim):
        e = Expr()
        for nu in range(N):
            coef = -ym.S_component(a, nu)
            for b, c in itertools.product(range(ym.dim), repeat=2):
                k = ym.fu(c, a, b)
                if k:
                    coef = coef + (_E(eta_(b)) * _E(P_(c, nu))).scale(k)
            e = e + coef * vol_minus(N, nu)
        assert comp["P", (a,)] == e


def test_consistency_constant_is_one_half(report):
    assert "'1/2'" in _check(report, "consistency.S").detail


def test_field_equations_proportionality(ym):
    cmp = compare_field_equations(ym)
    assert len(cmp["A"]) == 12 and len(cmp["F"]) == 18
    assert {str(k) for k in cmp["A"].values()} == {"1"}
    assert {str(k) for k in cmp["F"].values()} == {"-1/2"}


def test_round_trip_reaches_euler_lagrange(ym):
    rt = round_trip(ym)
    assert len(rt) == 12
    for k, sub, el in rt.values():
        assert k == 1
        assert sub == el


def test_hamiltonian_is_quadratic_in_field_strength(ym):
    H = ym.hamiltonian()
    assert H.degree == 0
    assert {len(m) for m in H.terms} == {2}
    assert pretty(H).startswith("-")


def test_covariant_space_closed(ym):
    ps = ym.covariant_space()
    assert not d(ps.omega)


def test_upsilon_is_odd_three_form(ym):
    U = ym.upsilon()
    assert U.parity == 1 and U.degree == 3


def test_x_s_displayed_solves_structural_equation(ym):
    ps = ym.vertical_space(EXT)
    for a in range(ym.dim):
        X = ym.X_S_displayed(a)
        assert hook(X, ps.omega) == drop_semibasic(d(ym.S(a)))


def test_report_json_round_trip(report):
    blob = json.dumps(report.to_json(), sort_keys=True)
    back = json.loads(blob)
    assert back["suite"] == "yang-mills"
    assert back["ok"] is False
    assert sorted(c["name"] for c in back["checks"] if c["status"] == "FAIL") == ["T.abelian", "variation.P"]
