"""Pure-Python monomial kernel (fallback for the compiled ``_monomial``)."""


def mul_mono(a, b):
    """Multiply two sorted factor tuples.

    Returns ``(sign, product)``; ``sign == 0`` means the product vanishes.
    """
    if not b:
        return 1, a
    if not a:
        return 1, b
    la = len(a)
    sd = [0] * (la + 1)
    sp = [0] * (la + 1)
    for k in range(la - 1, -1, -1):
        sd[k] = sd[k + 1] + a[k].deg
        sp[k] = sp[k + 1] + a[k].par
    res = []
    i = 0
    ex = 0
    for y in b:
        yk = y.key
        while i < la and a[i].key <= yk:
            x = a[i]
            if x is y and x.sqzero:
                return 0, None
            res.append(x)
            i += 1
        ex += y.deg * sd[i] + y.par * sp[i]
        res.append(y)
    if i < la:
        res.extend(a[i:])
    return (-1 if ex & 1 else 1), tuple(res)


def sort_factors(factors):
    """Bring an arbitrary factor sequence to normal order.

    Returns ``(sign, mono)`` with ``sign == 0`` when a nilpotent factor repeats.
    """
    seq = list(factors)
    ex = 0
    n = len(seq)
    # insertion sort; sequences are short
    for j in range(1, n):
        y = seq[j]
        k = j - 1
        while k >= 0 and seq[k].key > y.key:
            x = seq[k]
            ex += x.deg * y.deg + x.par * y.par
            seq[k + 1] = x
            k -= 1
        seq[k + 1] = y
    for j in range(1, n):
        if seq[j] is seq[j - 1] and seq[j].sqzero:
            return 0, None
    return (-1 if ex & 1 else 1), tuple(seq)


def contract(terms, target, pg):
    """``d/dg ⨼`` on a term dict, where ``target`` is the factor ``dg`` and
    ``pg`` the parity of g.  Returns a new term dict."""
    out = {}
    for m, c in terms.items():
        ex = 0
        for j, f in enumerate(m):
            if f is target:
                rest = m[:j] + m[j + 1:]
                v = out.get(rest, 0) + (-c if ex & 1 else c)
                if v:
                    out[rest] = v
                else:
                    out.pop(rest, None)
            ex += f.deg + pg * f.par
    return out
