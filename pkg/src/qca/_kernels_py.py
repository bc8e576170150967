"""Pure-Python torus kernels.

Fallback for the compiled module `_kernels_cy`; both implement the same
three functions on the same plain-dict term representation

    terms: dict[tuple[int, ...], dict[int, int]]

mapping an exponent vector to its coefficient in Z[v^{+-1}] (v-exponent ->
nonzero integer).  Coefficients are Python ints throughout, so nothing here
can overflow.
"""

from __future__ import annotations


def lform(lam, a, b):
    """sum_{i,j} lam[i][j] * a[i] * b[j] for the skew form lam."""
    total = 0
    for i, ai in enumerate(a):
        if ai:
            row = lam[i]
            s = 0
            for j, bj in enumerate(b):
                if bj:
                    s += row[j] * bj
            total += ai * s
    return total


def mul_terms(x, y, lam):
    """Product of two term dicts: (c X^a)(d X^b) = c d v^{aT lam b} X^{a+b}."""
    n = len(lam)
    rng = range(n)
    out = {}
    for a, ca in x.items():
        # row[j] = sum_i a_i lam[i][j], hoisted out of the inner loop
        row = [0] * n
        for i, ai in enumerate(a):
            if ai:
                li = lam[i]
                for j in rng:
                    row[j] += ai * li[j]
        for b, cb in y.items():
            shift = 0
            for j, bj in enumerate(b):
                if bj:
                    shift += row[j] * bj
            key = tuple(ai + bi for ai, bi in zip(a, b))
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
    """In place: rem -= p * (coeff X^aexp).  Empty coefficients are pruned."""
    for b, cb in p.items():
        shift = lform(lam, b, aexp)
        key = tuple(bi + ai for bi, ai in zip(b, aexp))
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
