"""Theory-definition files (YAML or JSON) and the small expression language
used inside them.

Expressions are Python-syntax polynomials over the coordinates, e.g.
``"-1/2*u[0]**2 + x[1]*u[2]"``.  Forms may also use ``d(...)``,
``vol()`` (``d^nx``), ``vol(a)`` (``d^{n-1}x_a``) and ``vol(a, b)``
(``d^{n-2}x_{ab}``); products of forms are wedge products.
"""

from __future__ import annotations

import ast
import json
import os
import warnings
from fractions import Fraction

import yaml

from .calculus import base_coord, d, vol, vol_minus, vol_minus2
from .kernel.expr import Expr
from .kernel.generators import Gen
from .kernel.structure import StructureConstants, check_structure_constants
from .phase_space import EXTENSIONS, FieldFamily, TheorySpec


class ParseError(ValueError):
    def __init__(self, message: str, path: str = "", line: int | None = None, source: str = ""):
        self.path, self.line, self.source = path, line, source
        where = source or "<theory>"
        if line is not None:
            where += f":{line}"
        if path:
            where += f": {path}"
        super().__init__(f"{where}: {message}")


class JacobiWarning(UserWarning):
    pass


# -- expressions --------------------------------------------------------------------------

def symbol_table(coords, n: int | None = None) -> dict:
    """``{(name, idx): Gen}`` for the given coordinates."""
    table = {(g.name, g.idx): g for g in coords}
    if n is not None:
        for a in range(n):
            g = base_coord(a)
            table[g.name, g.idx] = g
    return table


def parse_expr(text, table: dict, n: int | None = None) -> Expr:
    """Parse an expression string against a symbol table."""
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        return Expr.const(Fraction(str(text)))
    if not isinstance(text, str):
        raise ValueError(f"expected an expression string, got {type(text).__name__}")
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse {text!r}: {exc.msg}") from None
    return _Eval(table, n).visit(tree.body)


class _Eval(ast.NodeVisitor):
    def __init__(self, table, n):
        self.table, self.n = table, n

    def generic_visit(self, node):
        raise ValueError(f"unsupported syntax: {ast.dump(node)[:60]}")

    def visit_Constant(self, node):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
            raise ValueError(f"unsupported constant {node.value!r}")
        return Expr.const(Fraction(str(node.value)))

    def visit_UnaryOp(self, node):
        v = self.visit(node.operand)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
        return self.generic_visit(node)

    def visit_BinOp(self, node):
        a, b = self.visit(node.left), self.visit(node.right)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            c = _constant(b)
            if not c:
                raise ValueError("division by zero or by a non-constant")
            return a.scale(1 / c)
        if isinstance(node.op, ast.Pow):
            k = _constant(b)
            if k is None or k.denominator != 1 or k < 0:
                raise ValueError("exponents must be non-negative integers")
            return a ** int(k)
        return self.generic_visit(node)

    def _lookup(self, name, idx):
        g = self.table.get((name, idx))
        if g is None:
            raise ValueError(f"unknown coordinate {name}{list(idx) if idx else ''}")
        return g

    def visit_Name(self, node):
        return Expr.gen(self._lookup(node.id, ()))

    def visit_Subscript(self, node):
        if not isinstance(node.value, ast.Name):
            return self.generic_visit(node)
        sl = node.slice
        elts = sl.elts if isinstance(sl, ast.Tuple) else [sl]
        idx = []
        for e in elts:
            c = _constant(self.visit(e))
            if c is None or c.denominator != 1:
                raise ValueError("indices must be integers")
            idx.append(int(c))
        return Expr.gen(self._lookup(node.value.id, tuple(idx)))

    def visit_Call(self, node):
        if not isinstance(node.func, ast.Name) or node.keywords:
            return self.generic_visit(node)
        fn = node.func.id
        args = [self.visit(a) for a in node.args]
        if fn == "d" and len(args) == 1:
            return d(args[0])
        if fn == "vol":
            if self.n is None:
                raise ValueError("vol() needs the base dimension")
            ix = [int(_constant(a)) for a in args]
            if len(ix) == 0:
                return vol(self.n)
            if len(ix) == 1:
                return vol_minus(self.n, ix[0])
            if len(ix) == 2:
                return vol_minus2(self.n, *ix)
        raise ValueError(f"unknown function {fn}/{len(args)}")


def _constant(e: Expr):
    if not e.terms:
        return Fraction(0)
    if set(e.terms) == {()}:
        return e.terms[()]
    return None


# -- files ----------------------------------------------------------------------------------

def _locate(root, path):
    """Line (1-based) of the YAML node at ``path`` (best effort)."""
    node = root
    line = node.start_mark.line + 1 if node is not None else None
    for key in path:
        if isinstance(node, yaml.MappingNode):
            nxt = None
            for k, v in node.value:
                if str(k.value) == str(key):
                    nxt = v
                    break
            node = nxt
        elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and key < len(node.value):
            node = node.value[key]
        else:
            node = None
        if node is None:
            break
        line = node.start_mark.line + 1
    return line


class _Ctx:
    def __init__(self, source, root):
        self.source, self.root = source, root

    def fail(self, path, message):
        raise ParseError(message, _fmt(path), _locate(self.root, path) if self.root else None, self.source)


def _fmt(path) -> str:
    out = ""
    for p in path:
        out += f"[{p}]" if isinstance(p, int) else (("." if out else "") + str(p))
    return out


def _frac(v, ctx, path) -> Fraction:
    try:
        if isinstance(v, bool):
            raise ValueError
        return Fraction(str(v))
    except (ValueError, ZeroDivisionError):
        ctx.fail(path, f"expected a rational number, got {v!r}")


def _int(v, ctx, path, lo=None) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or (lo is not None and v < lo):
        ctx.fail(path, f"expected an integer{f' >= {lo}' if lo is not None else ''}, got {v!r}")
    return v


def load_document(path: str):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return load_text(text, path)


def load_text(text: str, source: str = "<string>"):
    try:
        if source.endswith(".json"):
            data = json.loads(text)
        else:
            data = yaml.safe_load(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, source=source) from None
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ParseError(str(getattr(exc, "problem", exc)), line=mark.line + 1 if mark else None,
                         source=source) from None
    try:
        root = yaml.compose(text)
    except yaml.YAMLError:
        root = None
    return data, root


def parse_theory(data, source: str = "<theory>", root=None) -> TheorySpec:
    """Validate a decoded theory document and build the TheorySpec."""
    ctx = _Ctx(source, root)
    if not isinstance(data, dict):
        ctx.fail([], "the document must be a mapping")
    known = {"name", "n", "fields", "algebra", "generators", "extensions", "hamiltonian"}
    for k in data:
        if k not in known:
            ctx.fail([k], f"unknown key (expected one of {sorted(known)})")
    if "n" not in data:
        ctx.fail(["n"], "missing base dimension")
    n = _int(data["n"], ctx, ["n"], lo=1)

    fields = []
    for i, fd in enumerate(data.get("fields", [{"name": "u", "shape": [1], "momentum": "p"}])):
        p = ["fields", i]
        if not isinstance(fd, dict):
            ctx.fail(p, "expected a mapping with name, shape, momentum")
        name = fd.get("name", "u")
        shape = fd.get("shape", [1])
        mom = fd.get("momentum", "p")
        if not isinstance(name, str) or not name.isidentifier():
            ctx.fail(p + ["name"], f"invalid field name {name!r}")
        if not isinstance(mom, str) or not mom.isidentifier():
            ctx.fail(p + ["momentum"], f"invalid momentum name {mom!r}")
        if not isinstance(shape, list) or not shape:
            ctx.fail(p + ["shape"], "expected a non-empty list of positive integers")
        shape = tuple(_int(s, ctx, p + ["shape", j], lo=1) for j, s in enumerate(shape))
        fields.append(FieldFamily(name, shape, mom))
    names = [f.name for f in fields] + [f.momentum for f in fields]
    if len(set(names)) != len(names):
        ctx.fail(["fields"], "field and momentum names must be distinct")

    sc = _parse_algebra(data.get("algebra"), ctx)
    dim = sc.dim if sc else 0

    ext = data.get("extensions", [])
    if not isinstance(ext, list):
        ctx.fail(["extensions"], "expected a list")
    for i, e in enumerate(ext):
        if e not in EXTENSIONS:
            ctx.fail(["extensions", i], f"unknown extension {e!r} (expected one of {list(EXTENSIONS)})")
    if ext and sc is None:
        ctx.fail(["extensions"], "extension sectors need an algebra")

    probe = TheorySpec(n=n, fields=fields)
    ftable = symbol_table(probe.field_gens(), n)
    xi_field, xi_base = {}, {}
    gens = data.get("generators")
    if gens == "adjoint":
        from .theories import adjoint_generators

        if sc is None or len(fields) != 1 or fields[0].shape != (dim,):
            ctx.fail(["generators"], "'adjoint' needs an algebra and one field family of shape [dim]")
        xi_field = adjoint_generators(sc, fields[0].name)
    elif gens is not None:
        if not isinstance(gens, dict):
            ctx.fail(["generators"], "expected a mapping from generator label to components, or 'adjoint'")
        for a_key, comps in gens.items():
            p = ["generators", a_key]
            try:
                a = int(a_key)
            except (TypeError, ValueError):
                ctx.fail(p, "generator labels are integers")
            if not 0 <= a < max(dim, 1):
                ctx.fail(p, f"generator label {a} outside 0..{dim - 1}")
            if not isinstance(comps, dict) or set(comps) - {"field", "base"}:
                ctx.fail(p, "expected a mapping with 'field' and/or 'base'")
            xf = {}
            for sym, val in (comps.get("field") or {}).items():
                try:
                    g = _single_gen(parse_expr(sym, ftable, n))
                    xf[g] = parse_expr(val, ftable, n)
                except ValueError as exc:
                    ctx.fail(p + ["field", sym], str(exc))
            xb = {}
            for alpha, val in (comps.get("base") or {}).items():
                try:
                    al = int(alpha)
                    if not 0 <= al < n:
                        raise ValueError(f"base index {al} out of range")
                    xb[al] = parse_expr(val, ftable, n)
                except ValueError as exc:
                    ctx.fail(p + ["base", alpha], str(exc))
            xi_field[a] = {g: c for g, c in xf.items() if c}
            if xb:
                xi_base[a] = {al: c for al, c in xb.items() if c}

    H = None
    if data.get("hamiltonian") is not None:
        mtable = dict(ftable)
        for g in probe.field_gens():
            for al in range(n):
                m = probe.momentum_of(g, al)
                mtable[m.name, m.idx] = m
        try:
            H = parse_expr(data["hamiltonian"], mtable, n)
        except ValueError as exc:
            ctx.fail(["hamiltonian"], str(exc))
        if H.degrees() - {0}:
            ctx.fail(["hamiltonian"], "the Hamiltonian must be a function (no differentials)")

    try:
        return TheorySpec(n=n, fields=fields, algebra=sc, xi_field=xi_field, xi_base=xi_base,
                          extensions=frozenset(ext), hamiltonian=H, name=str(data.get("name", "theory")))
    except ValueError as exc:
        ctx.fail([], str(exc))


def _single_gen(e: Expr) -> Gen:
    if len(e.terms) != 1:
        raise ValueError("expected a single coordinate")
    (m, c), = e.terms.items()
    if c != 1 or len(m) != 1 or m[0].is_diff:
        raise ValueError("expected a single coordinate")
    return m[0].gen


def _parse_algebra(al, ctx):
    if al is None:
        return None
    p = ["algebra"]
    if not isinstance(al, dict):
        ctx.fail(p, "expected a mapping")
    if "levi_civita" in al:
        sc = StructureConstants.levi_civita(_frac(al["levi_civita"], ctx, p + ["levi_civita"]))
    elif "abelian" in al:
        sc = StructureConstants.abelian(_int(al["abelian"], ctx, p + ["abelian"], lo=1))
    elif "dim" in al:
        dim = _int(al["dim"], ctx, p + ["dim"], lo=1)
        arr = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for i, row in enumerate(al.get("structure_constants", [])):
            q = p + ["structure_constants", i]
            if not isinstance(row, list) or len(row) != 4:
                ctx.fail(q, "expected [k, a, b, value] for C^k_{ab}")
            k, a, b = (_int(v, ctx, q + [j], lo=0) for j, v in enumerate(row[:3]))
            if max(k, a, b) >= dim:
                ctx.fail(q, f"index out of range for dim {dim}")
            arr[k][a][b] = _frac(row[3], ctx, q + [3])
        sc = StructureConstants(dim, arr)
    else:
        ctx.fail(p, "expected one of 'levi_civita', 'abelian' or 'dim' + 'structure_constants'")
    rep = check_structure_constants(sc)
    if not rep["antisymmetry"]:
        k, a, b = rep["antisymmetry_violations"][0]
        ctx.fail(p + ["structure_constants"],
                 f"C^{k}_{{{a}{b}}} = {sc(k, a, b)} but C^{k}_{{{b}{a}}} = {sc(k, b, a)}: not antisymmetric")
    if not rep["jacobi"]:
        warnings.warn(f"structure constants violate Jacobi at (a,b,c,d)={rep['jacobi_violations'][0]}",
                      JacobiWarning, stacklevel=2)
    return sc


def parse_theory_file(path: str) -> TheorySpec:
    """Load and validate a theory file (``.json``, otherwise YAML)."""
    if not os.path.exists(path):
        raise FileNotFoundError(path)
    data, root = load_document(path)
    return parse_theory(data, path, root)


def resolve_theory(name_or_path: str) -> TheorySpec:
    """A built-in scenario name or a theory file path."""
    from .theories import BUILTINS

    if name_or_path in BUILTINS:
        return BUILTINS[name_or_path]()
    return parse_theory_file(name_or_path)
