# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled monomial kernel; same contract as ``_monomial_py``."""


def mul_mono(tuple a, tuple b):
    cdef Py_ssize_t la = len(a), lb = len(b), i = 0, j, k
    cdef long ex = 0
    cdef int yd, yp
    if lb == 0:
        return 1, a
    if la == 0:
        return 1, b
    cdef list sd = [0] * (la + 1)
    cdef list sp = [0] * (la + 1)
    cdef long accd = 0, accp = 0
    for k in range(la - 1, -1, -1):
        x = a[k]
        accd += <int>x.deg
        accp += <int>x.par
        sd[k] = accd
        sp[k] = accp
    cdef list res = []
    for j in range(lb):
        y = b[j]
        yk = y.key
        while i < la and a[i].key <= yk:
            x = a[i]
            if x is y and x.sqzero:
                return 0, None
            res.append(x)
            i += 1
        yd = y.deg
        yp = y.par
        ex += yd * <long>sd[i] + yp * <long>sp[i]
        res.append(y)
    if i < la:
        res.extend(a[i:])
    return (-1 if ex & 1 else 1), tuple(res)


def sort_factors(factors):
    cdef list seq = list(factors)
    cdef Py_ssize_t n = len(seq), j, k
    cdef long ex = 0
    for j in range(1, n):
        y = seq[j]
        k = j - 1
        while k >= 0 and seq[k].key > y.key:
            x = seq[k]
            ex += <int>x.deg * <int>y.deg + <int>x.par * <int>y.par
            seq[k + 1] = x
            k -= 1
        seq[k + 1] = y
    for j in range(1, n):
        if seq[j] is seq[j - 1] and seq[j].sqzero:
            return 0, None
    return (-1 if ex & 1 else 1), tuple(seq)


def contract(dict terms, target, int pg):
    cdef dict out = {}
    cdef long ex
    cdef Py_ssize_t j, lm
    cdef tuple m
    for m, c in terms.items():
        ex = 0
        lm = len(m)
        for j in range(lm):
            f = m[j]
            if f is target:
                rest = m[:j] + m[j + 1:]
                v = out.get(rest, 0) + (-c if ex & 1 else c)
                if v:
                    out[rest] = v
                else:
                    out.pop(rest, None)
            ex += <int>f.deg + pg * <int>f.par
    return out
