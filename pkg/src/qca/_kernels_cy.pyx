# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled torus kernels; same contract as `_kernels_py`.

Exponent-vector and form arithmetic runs in C integers (Cython raises
OverflowError on conversion rather than truncating, so exactness is safe),
while Z[v^{+-1}] coefficients stay Python ints.
"""


def lform(lam, a, b):
    cdef Py_ssize_t i, j, n = len(a)
    cdef long long ai, bj, s, total = 0
    for i in range(n):
        ai = a[i]
        if ai != 0:
            row = lam[i]
            s = 0
            for j in range(n):
                bj = b[j]
                if bj != 0:
                    s += (<long long> row[j]) * bj
            total += ai * s
    return total


def mul_terms(x, y, lam):
    cdef Py_ssize_t i, j, n = len(lam)
    cdef long long ai, bj, shift
    cdef long long[64] row
    if n > 64:
        raise ValueError("kernel supports rank <= 64")
    out = {}
    for a, ca in x.items():
        for j in range(n):
            row[j] = 0
        for i in range(n):
            ai = a[i]
            if ai != 0:
                li = lam[i]
                for j in range(n):
                    row[j] += ai * (<long long> li[j])
        for b, cb in y.items():
            shift = 0
            for j in range(n):
                bj = b[j]
                if bj != 0:
                    shift += row[j] * bj
            key = tuple([a[j] + b[j] for j in range(n)])
            acc = out.get(key)
            if acc is None:
                acc = {}
                out[key] = acc
            for e, cv in ca.items():
                for f, dv in cb.items():
                    g = e + f + shift
                    nv = acc.get(g, 0) + cv * dv
                    if nv:
                        acc[g] = nv
                    else:
                        acc.pop(g, None)
    return {k: v for k, v in out.items() if v}


def submul_monomial(rem, p, aexp, coeff, lam):
    cdef Py_ssize_t i, j, n = len(aexp)
    cdef long long bi, shift
    for b, cb in p.items():
        shift = 0
        for i in range(n):
            bi = b[i]
            if bi != 0:
                row = lam[i]
                for j in range(n):
                    if aexp[j] != 0:
                        shift += bi * (<long long> row[j]) * (<long long> aexp[j])
        key = tuple([b[j] + aexp[j] for j in range(n)])
        acc = rem.get(key)
        if acc is None:
            acc = {}
            rem[key] = acc
        for e, cv in cb.items():
            for f, dv in coeff.items():
                g = e + f + shift
                nv = acc.get(g, 0) - cv * dv
                if nv:
                    acc[g] = nv
                else:
                    acc.pop(g, None)
        if not acc:
            del rem[key]
