"""Compare the compiled monomial kernel with the pure-Python fallback.

Each workload runs in a fresh interpreter so the backend is chosen at
import time.  Usage: ``python benchmarks/bench_backends.py [--repeat N]``.
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOADS = {
    "products": """
import random
from brstforms.properties import random_form
rng = random.Random(0)
forms = [random_form(rng, max_terms=6, max_deg=3) for _ in range(300)]
for a, b in zip(forms, forms[1:]):
    (a * b) * a
""",
    "nilpotency": """
from brstforms.brst import build_brst_charge, check_nilpotency
from brstforms.kernel.structure import StructureConstants
from brstforms.phase_space import build_phase_space
from brstforms.theories import adjoint_theory
spec = adjoint_theory(StructureConstants.levi_civita(), 4, ("ghosts", "multipliers", "antighosts"))
ps = build_phase_space(spec, "vertical")
assert check_nilpotency(ps, build_brst_charge(ps, "extended")).is_zero
""",
    "ym-variations": """
from brstforms.yang_mills import YangMills, variation_table
variation_table(YangMills())
""",
}

RUNNER = """
import time, sys
t = time.perf_counter()
exec(sys.argv[1])
import brstforms
print(brstforms.BACKEND, time.perf_counter() - t)
"""


def run(code: str, pure: bool) -> tuple:
    env = dict(os.environ)
    if pure:
        env["BRSTFORMS_PURE_PYTHON"] = "1"
    else:
        env.pop("BRSTFORMS_PURE_PYTHON", None)
    out = subprocess.run([sys.executable, "-c", RUNNER, code], env=env, check=True,
                         capture_output=True, text=True).stdout.split()
    return out[0], float(out[1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = []
    for name, code in WORKLOADS.items():
        best = {}
        for pure in (False, True):
            times = [run(code, pure) for _ in range(args.repeat)]
            backend = times[0][0]
            best[backend if not pure else "python"] = min(t for _, t in times)
        rows.append((name, best))
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'workload':<16}{'cython [s]':>12}{'python [s]':>12}{'speedup':>10}")
    for name, best in rows:
        c, p = best.get("cython"), best["python"]
        if c is None:
            print(f"{name:<16}{'n/a':>12}{p:>12.3f}{'':>10}")
        else:
            print(f"{name:<16}{c:>12.3f}{p:>12.3f}{p / c:>9.2f}x")


if __name__ == "__main__":
    main()
