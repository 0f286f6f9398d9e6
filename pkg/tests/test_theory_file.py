import os
import warnings
from fractions import Fraction

import pytest

from brstforms import Expr, Gen, Role, base_coord, vol, vol_minus, vol_minus2
from brstforms.theory_file import (
    JacobiWarning,
    ParseError,
    load_text,
    parse_expr,
    parse_theory,
    parse_theory_file,
    resolve_theory,
    symbol_table,
)
from brstforms.theories import su2

HERE = os.path.dirname(__file__)
THEORIES = os.path.join(HERE, "..", "theories")

u0 = Gen("u", (0,), Role.FIELD)
u1 = Gen("u", (1,), Role.FIELD)
p00 = Gen("p", (0, 0), Role.FIELD_MOMENTUM)


@pytest.fixture
def table():
    return symbol_table([u0, u1, p00], n=2)


def test_arithmetic(table):
    e = parse_expr("1/2*u[0]**2 - 3*u[0]*u[1] + 2", table)
    U0, U1 = Expr.gen(u0), Expr.gen(u1)
    assert e == (U0 * U0).scale(Fraction(1, 2)) - (U0 * U1).scale(3) + Expr.const(2)


def test_numbers_are_exact(table):
    assert parse_expr(0.25, table) == Expr.const(Fraction(1, 4))
    assert parse_expr("2/3", table) == Expr.const(Fraction(2, 3))


def test_forms(table):
    assert parse_expr("d(u[0])", table) == Expr.diff(u0)
    assert parse_expr("vol()", table, n=2) == vol(2)
    assert parse_expr("vol(1)", table, n=2) == vol_minus(2, 1)
    assert parse_expr("vol(0, 1)", table, n=3) == vol_minus2(3, 0, 1)
    assert parse_expr("x[0]", table) == Expr.gen(base_coord(0))


@pytest.mark.parametrize("text", ["u[5]", "q", "u[0] +", "u[0]**u[1]", "open('x')", "u[0] / u[1]"])
def test_rejected_expressions(table, text):
    with pytest.raises(ValueError):
        parse_expr(text, table, n=2)


def test_builtin_and_file_su2_agree():
    spec = parse_theory_file(os.path.join(THEORIES, "su2.theory"))
    ref = su2(2)
    assert spec.n == ref.n
    assert spec.hamiltonian == ref.hamiltonian
    assert spec.xi_field == ref.xi_field
    assert spec.extensions == ref.extensions


def test_json_theory():
    spec = parse_theory_file(os.path.join(THEORIES, "affine2.json"))
    assert spec.dim == 2 and spec.n == 2
    assert spec.algebra(1, 0, 1) == 1 and spec.algebra(1, 1, 0) == -1


def test_resolve_builtin_names():
    assert resolve_theory("su2").dim == 3
    assert resolve_theory("yang-mills").n == 4
    with pytest.raises(FileNotFoundError):
        resolve_theory("no-such-theory.yaml")


def test_antisymmetry_violation_reports_line():
    with pytest.raises(ParseError) as info:
        parse_theory_file(os.path.join(THEORIES, "bad_antisymmetry.theory"))
    assert info.value.line == 8
    assert "antisymmetric" in str(info.value)


def test_jacobi_violation_is_a_warning():
    text = """
name: nonjacobi
n: 2
fields: [{name: u, shape: [3], momentum: p}]
algebra:
  dim: 3
  structure_constants:
    - [2, 0, 1, 1]
    - [2, 1, 0, -1]
    - [0, 1, 2, 1]
    - [0, 2, 1, -1]
    - [1, 2, 0, 1]
    - [1, 0, 2, -1]
    - [0, 0, 1, 1]
    - [0, 1, 0, -1]
"""
    data, root = load_text(text)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        spec = parse_theory(data, "<t>", root)
    assert spec.dim == 3
    assert any(issubclass(w.category, JacobiWarning) for w in caught)


@pytest.mark.parametrize("text,where", [
    ("name: t\nfields: []\n", "n"),
    ("name: t\nn: -1\nfields: []\n", "n"),
    ("name: t\nn: 2\nfields: [{name: u, shape: [1], momentum: p}]\nalgebra: {dim: 1}\n"
     "generators: {0: {field: {'w[0]': '1'}}}\n", "generators"),
    ("name: t\nn: 2\nfields: []\nbogus: 1\n", "bogus"),
    ("name: t\nn: 2\nfields: []\nextensions: [wormholes]\n", "extensions"),
])
def test_schema_errors(text, where):
    data, root = load_text(text)
    with pytest.raises(ParseError) as info:
        parse_theory(data, "<t>", root)
    assert where in str(info.value)


def test_yaml_syntax_error_has_line():
    with pytest.raises(ParseError) as info:
        load_text("name: t\nn: [2\n")
    assert info.value.line is not None
