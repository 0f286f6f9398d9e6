"""Human-readable and canonical text forms of expressions."""

from __future__ import annotations

from fractions import Fraction

from .kernel.expr import Expr, split_index
from .kernel.generators import Role, format_gen


def _coef(c: Fraction, first: bool, bare: bool) -> str:
    sign = "-" if c < 0 else ("" if first else "+")
    a = abs(c)
    if bare and a == 1:
        body = ""
    else:
        body = str(a)
    if first:
        return sign + body
    return f" {sign} " + body if body else f" {sign} "


def _volume_label(base: tuple, n: int):
    """Return (sign, label) when ``base`` is one of the volume pieces."""
    from .calculus import vol, vol_minus, vol_minus2

    idx = [f.gen.idx[0] for f in base]
    if any(not (0 <= i < n) for i in idx):
        return None
    missing = [i for i in range(n) if i not in idx]
    if len(missing) == 0:
        form, label = vol(n), "d^nx"
    elif len(missing) == 1:
        form, label = vol_minus(n, missing[0]), f"d^(n-1)x_{missing[0]}"
    elif len(missing) == 2:
        a, b = missing
        form, label = vol_minus2(n, a, b), f"d^(n-2)x_{a}{b}"
    else:
        return None
    (_, s), = form.terms.items()
    return s, label


def _mono_parts(m, n):
    k = split_index(m)
    funcs = [format_gen(f.gen) for f in m[:k]]
    diffs = m[k:]
    sign = 1
    words = []
    j = 0
    while j < len(diffs) and diffs[j].gen.role == Role.BASE:
        j += 1
    base, rest = diffs[:j], diffs[j:]
    # the base block is written last; moving it past the rest costs
    # (-1)^(deg base * deg rest) since base differentials are even
    if (len(base) * len(rest)) % 2:
        sign = -1
    words.extend("d" + format_gen(f.gen) for f in rest)
    vl = _volume_label(base, n) if (n and base) else None
    if vl:
        sign *= vl[0]
        words.append(vl[1])
    else:
        words.extend("d" + format_gen(f.gen) for f in base)
    return sign, funcs, words


def pretty(e: Expr, n: int | None = None) -> str:
    """Readable form.  With ``n`` given, products of base differentials are
    written as ``d^nx``, ``d^(n-1)x_a`` or ``d^(n-2)x_ab``."""
    if not e.terms:
        return "0"
    out = []
    for i, (m, c) in enumerate(sorted(e.terms.items(), key=lambda t: [f.key for f in t[0]])):
        sign, funcs, words = _mono_parts(m, n)
        c = c * sign
        body = "*".join(funcs)
        if words:
            body = (body + " " if body else "") + "^".join(words)
        out.append(_coef(c, i == 0, bool(body)) + ("*" if body and abs(c) != 1 else "") + body)
    return "".join(out)


def pretty_vf(X) -> str:
    if not X.coeffs:
        return "0"
    items = sorted(X.coeffs.items(), key=lambda t: t[0].key)
    parts = [f"({pretty(c)})*d/d{format_gen(g)}" for g, c in items]
    return " + ".join(parts)


def serialize(e: Expr) -> list:
    """Canonical JSON-ready form: sorted ``[coef, [factor, ...]]`` pairs."""
    rows = []
    for m, c in e.terms.items():
        rows.append([str(c), [repr(f) for f in m]])
    rows.sort(key=lambda r: (r[1], r[0]))
    return rows
