"""Command-line front end.

Exit status: 0 when every check passes, 1 on a failed check, 2 on an input
error, 3 when an ansatz or truncation cap is exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import __version__
from .phase_space import CapExceeded, NotHamiltonian, VARIANTS, build_phase_space
from .kernel.generators import format_gen
from .printing import pretty, pretty_vf

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_CAP = 0, 1, 2, 3
SCHEMA = 1


class Report:
    def __init__(self, command: str):
        self.command = command
        self.checks: list = []
        self.result: dict = {}
        self.warnings: list = []

    def check(self, name: str, ok: bool, detail: str = "", term: str = "", expected: str = ""):
        row = {"name": name, "status": "PASS" if ok else "FAIL", "detail": detail}
        if not ok and term:
            row["term"] = term
        if not ok and expected:
            row["expected"] = expected
        self.checks.append(row)

    @property
    def ok(self) -> bool:
        return all(c["status"] == "PASS" for c in self.checks)

    def to_json(self) -> dict:
        out = {"schema": SCHEMA, "command": self.command, "ok": self.ok, "checks": self.checks,
               "result": self.result}
        if self.warnings:
            out["warnings"] = self.warnings
        return out

    def text(self) -> str:
        lines = [f"# {self.command}"]
        lines += [f"warning: {w}" for w in self.warnings]
        for k, v in self.result.items():
            if isinstance(v, list):
                lines.append(f"{k}:")
                lines += [f"  {x}" for x in v]
            elif isinstance(v, dict):
                lines.append(f"{k}:")
                lines += [f"  {a}: {b}" for a, b in v.items()]
            else:
                lines.append(f"{k}: {v}")
        for c in self.checks:
            line = f"{c['status']} {c['name']}"
            if c["detail"]:
                line += f": {c['detail']}"
            lines.append(line)
            if "term" in c:
                label = "computed" if "expected" in c else "offending term"
                lines.append(f"  {label}: {c['term']}")
            if "expected" in c:
                lines.append(f"  expected: {c['expected']}")
        return "\n".join(lines)


def dump(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_json(), indent=2, sort_keys=True, ensure_ascii=False)
    return report.text()


# -- helpers -----------------------------------------------------------------------------

def _theory(args):
    from .theory_file import resolve_theory

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        spec = resolve_theory(args.input)
    return spec, [str(w.message) for w in caught]


def _space(spec, variant):
    ps = build_phase_space(spec, variant)
    if spec.hamiltonian is not None and variant not in ("vertical",):
        ps = ps.with_hamiltonian(spec.hamiltonian)
    return ps


def _observable(ps, text):
    from .theory_file import parse_expr, symbol_table

    return parse_expr(text, symbol_table(ps.coords, ps.n), ps.n)


# -- commands ----------------------------------------------------------------------------

def cmd_build(args, rep):
    from .calculus import d

    spec, rep.warnings = _theory(args)
    ps = build_phase_space(spec, args.variant)
    rep.result = {
        "theory": spec.name,
        "variant": ps.variant,
        "coordinates": [format_gen(g) for g in ps.coords],
        "theta": pretty(ps.theta, ps.n),
        "omega": pretty(ps.omega, ps.n),
    }
    if not ps.vertical:
        rep.check("omega_closed", not d(ps.omega), "d omega = 0")
    rep.check("omega_is_minus_d_theta", ps.vertical or ps.omega == -d(ps.theta), "omega = -d theta")


def cmd_structural(args, rep):
    from .calculus import d, hook
    from .phase_space import drop_semibasic, solve_structural

    spec, rep.warnings = _theory(args)
    ps = _space(spec, args.variant)
    F = _observable(ps, args.F)
    try:
        sol = solve_structural(ps, F, cap=args.cap)
    except NotHamiltonian as exc:
        rep.result = {"observable": pretty(F, ps.n)}
        rep.check("hamiltonian", False, "no solution of X ⨼ omega = dF", pretty(exc.witness, ps.n))
        return
    back = hook(sol.vf, ps.omega)
    target = d(F)
    if ps.vertical:
        back, target = drop_semibasic(back), drop_semibasic(target)
    rep.result = {"observable": pretty(F, ps.n), "vector_field": pretty_vf(sol.vf),
                  "kernel_dim": sol.kernel_dim}
    rep.check("hamiltonian", True, "structural equation solved")
    rep.check("round_trip", back == target, "X ⨼ omega reproduces dF", pretty(back - target, ps.n))


def cmd_bracket(args, rep):
    from .phase_space import bracket, pairing

    spec, rep.warnings = _theory(args)
    ps = _space(spec, args.variant)
    F, G = _observable(ps, args.F), _observable(ps, args.G)
    fn = pairing if args.pairing else bracket
    try:
        val = fn(ps, F, G, cap=args.cap)
    except NotHamiltonian as exc:
        rep.check("hamiltonian", False, "an argument is not Hamiltonian", pretty(exc.witness, ps.n))
        return
    rep.result = {"F": pretty(F, ps.n), "G": pretty(G, ps.n), "value": pretty(val, ps.n),
                  "convention": "X_G ⨼ X_F ⨼ omega" if args.pairing else "(-1)^(n-|F|) X_F ⨼ dG"}
    if args.expect is not None:
        exp = _observable(ps, args.expect)
        rep.check("expected", val == exp, f"value equals {pretty(exp, ps.n)}", pretty(val - exp, ps.n))


def cmd_nilpotency(args, rep):
    from .brst import build_brst_charge, build_brst_vector_field, check_nilpotency
    from .calculus import lie_bracket

    spec, rep.warnings = _theory(args)
    if spec.algebra is None:
        raise ValueError("nilpotency needs an algebra")
    exts = {"ghosts"} | ({"multipliers", "antighosts"} if args.charge == "extended" else set())
    spec.extensions = frozenset(spec.extensions | exts)
    variant = args.variant
    if variant == "graded" and args.charge == "extended":
        variant = "graded-extended"
    ps = _space(spec, variant)
    V = build_brst_vector_field(spec, args.charge, check=not args.allow_jacobi_violation)
    VV = lie_bracket(V, V)
    rep.check("[V,V]=0", not VV, "BRST vector field squares to zero", pretty_vf(VV))
    Q = build_brst_charge(ps, args.charge, check=not args.allow_jacobi_violation)
    rep.result = {"space": ps.variant, "charge": pretty(Q.form, ps.n)}
    try:
        nr = check_nilpotency(ps, Q, cap=args.cap)
    except NotHamiltonian as exc:
        rep.check("hamiltonian", False, "the charge has no Hamiltonian vector field",
                  pretty(exc.witness, ps.n))
        return
    rep.result = {**rep.result,
                  "ledger": {k: pretty(v, ps.n) for k, v in nr.term_ledger.items()}}
    rep.check("{Q,Q}=0", nr.is_zero, "bracket of the charge with itself", pretty(nr.bracket_value, ps.n))


def cmd_eom(args, rep):
    from .field_eqs import derive_hamilton_equations

    spec, rep.warnings = _theory(args)
    if spec.hamiltonian is None:
        raise ValueError("eom needs a Hamiltonian in the theory")
    ps = build_phase_space(spec, args.variant)
    eqs = derive_hamilton_equations(ps, spec.hamiltonian)
    rep.result = {"variant": eqs.variant, "equations": [f"{e.label}: {pretty(e.lhs)} = {pretty(e.rhs)}"
                                                         for e in eqs]}
    rep.check("derived", len(eqs) > 0, f"{len(eqs)} equations")


def cmd_lda(args, rep):
    from .field_eqs import derive_lda_equations

    spec, rep.warnings = _theory(args)
    if spec.hamiltonian is None:
        raise ValueError("lda needs a Hamiltonian in the theory")
    ps = build_phase_space(spec, "lagrange-dalembert")
    eqs = derive_lda_equations(ps, spec.hamiltonian)
    rep.result = {"equations": [f"{e.label}: {pretty(e.lhs)} = {pretty(e.rhs)}" for e in eqs]}
    rep.check("noether", True, "multiplier equations equal the Noether conservation laws")


def cmd_koszul(args, rep):
    from .brst import TruncationError, koszul_differential_signs, koszul_homology

    trunc = args.truncation if args.truncation is not None else args.dim + 1
    if trunc > args.max_truncation:
        raise CapExceeded(f"truncation {trunc} exceeds the cap {args.max_truncation}")
    try:
        signs = koszul_differential_signs(args.dim)
        betti = koszul_homology(args.dim, trunc, signs)
    except TruncationError as exc:
        raise ValueError(str(exc)) from None
    expect = [1] + [0] * args.dim
    rep.result = {"dim": args.dim, "truncation": trunc, "signs": [str(s) for s in signs], "betti": betti}
    rep.check("acyclic", betti == expect, f"Betti numbers {betti}", str(betti))


def cmd_ym_suite(args, rep):
    from .yang_mills import yang_mills_suite

    r = yang_mills_suite(cap=args.cap)
    for c in r.checks:
        rep.check(c.name, c.ok, c.detail, c.computed, c.expected)
    rep.result = {"variation_rows": len(r.group("variation."))}


def cmd_property_suite(args, rep):
    from .properties import LAWS, run_property_suite

    laws = args.laws.split(",") if args.laws else LAWS
    bad = set(laws) - set(LAWS)
    if bad:
        raise ValueError(f"unknown laws {sorted(bad)}")
    r = run_property_suite(args.seed, args.count, laws)
    for row in r.to_json()["laws"]:
        rep.check(row["law"], row["status"] == "PASS",
                  f"{row['passed']} passed, {row['failed']} failed, {row['skipped']} skipped, "
                  f"{row['nontrivial']} nontrivial",
                  f"first failing draw {row['first_failure']}" if row["first_failure"] else "")
    rep.result = {"seed": args.seed, "instances": args.count}


COMMANDS = {
    "build": cmd_build,
    "bracket": cmd_bracket,
    "structural": cmd_structural,
    "nilpotency": cmd_nilpotency,
    "eom": cmd_eom,
    "lda": cmd_lda,
    "koszul": cmd_koszul,
    "ym-suite": cmd_ym_suite,
    "property-suite": cmd_property_suite,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--cap", type=int, default=4, help="ansatz degree cap for the structural solver")

    theory = argparse.ArgumentParser(add_help=False)
    theory.add_argument("--input", "-i", required=True, help="theory file or built-in name (su2, yang-mills)")

    p = argparse.ArgumentParser(prog="brstforms", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("build", parents=[common, theory], help="Cartan forms of a phase space")
    s.add_argument("--variant", choices=VARIANTS, default="plain")

    helps = {"structural": "Hamiltonian vector field of an observable",
             "bracket": "bracket of two observables"}
    for name in ("structural", "bracket"):
        s = sub.add_parser(name, parents=[common, theory], help=helps[name])
        s.add_argument("--variant", choices=VARIANTS, default="vertical")
        s.add_argument("--F", "-F", required=True, help="observable, e.g. 'u[0]*vol(1)'")
        if name == "bracket":
            s.add_argument("--G", "-G", required=True)
            s.add_argument("--pairing", action="store_true", help="use X_G ⨼ X_F ⨼ omega")
            s.add_argument("--expect", help="expected value; adds a check")

    s = sub.add_parser("nilpotency", parents=[common, theory], help="{Q,Q} = 0 and [V,V] = 0")
    s.add_argument("--charge", choices=("minimal", "extended"), default="minimal")
    s.add_argument("--variant", choices=("vertical", "graded"), default="vertical")
    s.add_argument("--allow-jacobi-violation", action="store_true")

    s = sub.add_parser("eom", parents=[common, theory], help="covariant Hamilton equations")
    s.add_argument("--variant", choices=("plain", "graded", "graded-extended"), default="plain")

    sub.add_parser("lda", parents=[common, theory], help="Lagrange-d'Alembert-Hamilton equations")

    s = sub.add_parser("koszul", parents=[common], help="homology of the multiplier/antighost complex")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--truncation", type=int)
    s.add_argument("--max-truncation", type=int, default=8)

    sub.add_parser("ym-suite", parents=[common], help="the Yang-Mills checks against the golden file")

    s = sub.add_parser("property-suite", parents=[common], help="seeded random checks of the algebraic laws")
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--laws", help="comma-separated subset")
    return p


def run(argv=None, out=None) -> int:
    from .theory_file import ParseError

    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    rep = Report(args.command)
    try:
        COMMANDS[args.command](args, rep)
    except CapExceeded as exc:
        rep.check("cap", False, str(exc))
        print(dump(rep, args.format), file=out)
        return EXIT_CAP
    except (ParseError, FileNotFoundError, ValueError) as exc:
        msg = f"no such file: {exc}" if isinstance(exc, FileNotFoundError) else str(exc)
        if args.format == "json":
            print(json.dumps({"schema": SCHEMA, "command": args.command, "ok": False, "error": msg},
                             indent=2, sort_keys=True), file=out)
        else:
            print(f"error: {msg}", file=sys.stderr)
        return EXIT_PARSE
    print(dump(rep, args.format), file=out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
