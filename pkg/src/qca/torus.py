"""Exact arithmetic in a based quantum torus over Z[v^{+-1}], v^2 = q.

The torus P(L) attached to a skew-symmetric integer matrix L = (lambda_ij)
has generators X_1..X_K with X_i X_j = q^{lambda_ij} X_j X_i and basis the
normalized monomials

    X^a = q^{(1/2) sum_{i>j} a_i a_j lambda_ij} X_1^{a_1} ... X_K^{a_K},

in which products close up as X^a X^b = v^{aT L b} X^{a+b} (the v-exponent
aT L b = sum_{i,j} lambda_ij a_i b_j is always an integer).  Everything in
this module is exact: coefficients are maps v-exponent -> Python int.

Elements are value-like; treat them as immutable.  The hot kernels
(products and the subtract-multiply inside exact division) live in a
compiled extension when it is available, with a pure-Python fallback chosen
at import time; set QCA_PURE_PYTHON=1 to force the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import NotDivisibleError

if os.environ.get("QCA_PURE_PYTHON") == "1":
    from . import _kernels_py as _k

    KERNEL_BACKEND = "python"
else:
    try:
        from . import _kernels_cy as _k  # type: ignore[no-redef]

        KERNEL_BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _k  # type: ignore[no-redef]

        KERNEL_BACKEND = "python"

__all__ = [
    "KERNEL_BACKEND",
    "LMatrix",
    "TorusElem",
    "exact_left_div",
    "q_commute_exponent",
    "qc_const",
    "qc_v",
    "qc_mul",
    "qc_shift",
    "qc_div_exact",
]


# ---------------------------------------------------------------------------
# coefficients: Z[v^{+-1}] as dict {v_exponent: nonzero int}

def qc_const(n: int) -> dict:
    """The constant coefficient n.

    >>> qc_const(3)
    {0: 3}
    >>> qc_const(0)
    {}
    """
    return {0: n} if n else {}


def qc_v(e: int, n: int = 1) -> dict:
    """n * v^e."""
    return {e: n} if n else {}


def qc_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, cv in b.items():
        nv = out.get(e, 0) + cv
        if nv:
            out[e] = nv
        else:
            out.pop(e, None)
    return out


def qc_neg(a: dict) -> dict:
    return {e: -cv for e, cv in a.items()}


def qc_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e, cv in a.items():
        for f, dv in b.items():
            g = e + f
            nv = out.get(g, 0) + cv * dv
            if nv:
                out[g] = nv
            else:
                out.pop(g, None)
    return out


def qc_shift(a: dict, k: int) -> dict:
    """Multiply by v^k."""
    if k == 0:
        return dict(a)
    return {e + k: cv for e, cv in a.items()}


def qc_bar(a: dict) -> dict:
    """v -> v^{-1}."""
    return {-e: cv for e, cv in a.items()}


def qc_div_exact(num: dict, den: dict) -> dict | None:
    """num / den in Z[v^{+-1}] if the division is exact, else None.

    Top-down long division; the quotient is forced term by term, so the
    division is exact iff every forced leading coefficient divides and the
    quotient's lowest exponent min(num) - min(den) is reached cleanly.

    >>> qc_div_exact({3: 2, 1: 2}, {1: 2})
    {2: 1, 0: 1}
    >>> qc_div_exact({0: 1}, {0: 2}) is None
    True
    >>> qc_div_exact({0: 1}, {1: 1, 0: -1}) is None
    True
    """
    if not den:
        raise ZeroDivisionError("coefficient division by zero")
    if not num:
        return {}
    dmax = max(den)
    dc = den[dmax]
    emin = min(num) - min(den)
    nd = dict(num)
    out = {}
    while nd:
        t = max(nd)
        e = t - dmax
        if e < emin:
            return None
        c, r = divmod(nd[t], dc)
        if r:
            return None
        out[e] = c
        for de, dv in den.items():
            g = de + e
            nv = nd.get(g, 0) - dv * c
            if nv:
                nd[g] = nv
            else:
                nd.pop(g, None)
    return out


def qc_is_nonneg(a: dict) -> bool:
    return all(cv >= 0 for cv in a.values())


def _qc_str(a: dict) -> str:
    if not a:
        return "0"
    parts = []
    for e in sorted(a, reverse=True):
        cv = a[e]
        if e == 0:
            parts.append("%d" % cv)
        else:
            head = "" if cv == 1 else ("-" if cv == -1 else "%d*" % cv)
            parts.append("%sv^%d" % (head, e))
    return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# the based torus

@dataclass(frozen=True)
class LMatrix:
    """Skew-symmetric integer K x K matrix defining the torus."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        k = len(self.rows)
        if any(len(row) != k for row in self.rows):
            raise ValueError("L matrix must be square")
        for i in range(k):
            for j in range(i, k):
                if self.rows[i][j] != -self.rows[j][i]:
                    raise ValueError(
                        "L matrix must be skew-symmetric (entries (%d, %d), (%d, %d))"
                        % (i + 1, j + 1, j + 1, i + 1)
                    )

    @classmethod
    def from_rows(cls, rows) -> "LMatrix":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @property
    def k(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j]


class TorusElem:
    """An element of the torus, stored on the normalized monomial basis.

    ``terms`` maps an exponent vector (tuple of K ints) to its coefficient
    dict.  Do not mutate either after construction.

    >>> L = LMatrix.from_rows([[0, 1], [-1, 0]])
    >>> x = TorusElem.monomial(L, (1, 0)) * TorusElem.monomial(L, (0, 1))
    >>> x == TorusElem.monomial(L, (1, 1), qc_v(1))
    True
    """

    __slots__ = ("ambient", "terms")

    def __init__(self, ambient: LMatrix, terms: dict, _trusted: bool = False):
        if not _trusted:
            k = ambient.k
            clean: dict = {}
            for a, cf in terms.items():
                a = tuple(int(x) for x in a)
                if len(a) != k:
                    raise ValueError("exponent length does not match torus rank")
                cf = {int(e): int(cv) for e, cv in cf.items() if cv}
                if cf:
                    clean[a] = cf
            terms = clean
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("TorusElem is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ambient: LMatrix) -> "TorusElem":
        return cls(ambient, {}, _trusted=True)

    @classmethod
    def one(cls, ambient: LMatrix) -> "TorusElem":
        return cls.monomial(ambient, (0,) * ambient.k)

    @classmethod
    def monomial(cls, ambient: LMatrix, exp, coeff=None) -> "TorusElem":
        """c * X^exp; ``coeff`` is a coefficient dict or int (default 1)."""
        exp = tuple(int(x) for x in exp)
        if len(exp) != ambient.k:
            raise ValueError("exponent length does not match torus rank")
        if coeff is None:
            coeff = {0: 1}
        elif isinstance(coeff, int):
            coeff = qc_const(coeff)
        else:
            coeff = {int(e): int(cv) for e, cv in coeff.items() if cv}
        if not coeff:
            return cls.zero(ambient)
        return cls(ambient, {exp: coeff}, _trusted=True)

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def n_terms(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorusElem):
            return NotImplemented
        return self.ambient == other.ambient and self.terms == other.terms

    __hash__ = None  # mutable dict payload; equality only

    def __repr__(self) -> str:
        if self.is_zero():
            return "TorusElem(0)"
        bits = []
        for a in sorted(self.terms, reverse=True):
            bits.append("(%s)*X^%s" % (_qc_str(self.terms[a]), str(a)))
        return "TorusElem(%s)" % " + ".join(bits)

    # -- ring operations ---------------------------------------------------

    def _require_same(self, other: "TorusElem") -> None:
        if self.ambient != other.ambient:
            raise ValueError("torus elements live in different ambients")

    def __add__(self, other: "TorusElem") -> "TorusElem":
        self._require_same(other)
        out = {a: dict(cf) for a, cf in self.terms.items()}
        for a, cf in other.terms.items():
            acc = out.get(a)
            if acc is None:
                out[a] = dict(cf)
                continue
            for e, cv in cf.items():
                nv = acc.get(e, 0) + cv
                if nv:
                    acc[e] = nv
                else:
                    del acc[e]
            if not acc:
                del out[a]
        return TorusElem(self.ambient, out, _trusted=True)

    def __neg__(self) -> "TorusElem":
        out = {a: qc_neg(cf) for a, cf in self.terms.items()}
        return TorusElem(self.ambient, out, _trusted=True)

    def __sub__(self, other: "TorusElem") -> "TorusElem":
        return self + (-other)

    def __mul__(self, other: "TorusElem") -> "TorusElem":
        self._require_same(other)
        prod = _k.mul_terms(self.terms, other.terms, self.ambient.rows)
        return TorusElem(self.ambient, prod, _trusted=True)

    def scaled(self, coeff) -> "TorusElem":
        """Multiply by a central coefficient (dict or int)."""
        if isinstance(coeff, int):
            coeff = qc_const(coeff)
        out = {}
        for a, cf in self.terms.items():
            nf = qc_mul(cf, coeff)
            if nf:
                out[a] = nf
        return TorusElem(self.ambient, out, _trusted=True)

    def v_shift(self, e: int) -> "TorusElem":
        """Multiply by v^e."""
        if e == 0:
            return self
        out = {a: qc_shift(cf, e) for a, cf in self.terms.items()}
        return TorusElem(self.ambient, out, _trusted=True)

    def pow(self, n: int) -> "TorusElem":
        """n-th power; n < 0 needs an invertible monomial (+-v^k X^a).

        >>> lam = LMatrix.from_rows([[0, 1], [-1, 0]])
        >>> x = TorusElem.monomial(lam, (2, -1))
        >>> (x.pow(-1) * x) == TorusElem.one(lam)
        True
        """
        if n < 0:
            inv = None
            if len(self.terms) == 1:
                ((a, cf),) = self.terms.items()
                if len(cf) == 1:
                    ((k, c),) = cf.items()
                    if c in (1, -1):
                        # (c v^k X^a)^{-1} = c v^{-k} X^{-a}, since a^T L a = 0
                        exp = tuple(-e for e in a)
                        inv = TorusElem.monomial(self.ambient, exp, {-k: c})
            if inv is None:
                raise ValueError("negative powers only exist for invertible monomials")
            return inv.pow(-n)
        acc = TorusElem.one(self.ambient)
        for _ in range(n):
            acc = acc * self
        return acc

    # -- the extra structure the engine verifies ---------------------------

    def bar(self) -> "TorusElem":
        """The bar involution: v -> v^{-1}, X^a -> X^a (an anti-automorphism)."""
        out = {a: qc_bar(cf) for a, cf in self.terms.items()}
        return TorusElem(self.ambient, out, _trusted=True)

    def specialize_q1(self) -> dict:
        """Set v = 1: a commutative Laurent polynomial {exp: int}."""
        out = {}
        for a, cf in self.terms.items():
            s = sum(cf.values())
            if s:
                out[a] = s
        return out

    def is_nonneg(self) -> bool:
        """All coefficients in Z_{>=0}[v^{+-1}]?"""
        return all(qc_is_nonneg(cf) for cf in self.terms.values())


def exact_left_div(p: TorusElem, q: TorusElem, step_bound: int | None = None) -> TorusElem:
    """The unique s with p * s = q, if it exists in the torus.

    Peels the lex-leading term of the remainder: lex order on exponent
    vectors is a group order, so LT(p * s) = LT(p) * LT(s) and each quotient
    term is forced.  Raises NotDivisibleError with reason "coefficient" when
    a forced coefficient division leaves Z[v^{+-1}], or "step_bound" when the
    step budget is exhausted (no exact quotient can take that many terms).

    >>> L = LMatrix.from_rows([[0, 1], [-1, 0]])
    >>> q = TorusElem.monomial(L, (2, 1), qc_v(3))
    >>> s = exact_left_div(TorusElem.monomial(L, (1, 0)), q)
    >>> s == TorusElem.monomial(L, (1, 1), qc_v(2))
    True
    """
    p._require_same(q)
    if p.is_zero():
        raise ZeroDivisionError("left division by zero")
    if q.is_zero():
        return TorusElem.zero(p.ambient)
    if step_bound is None:
        step_bound = 16 * len(q.terms) + 1024
    lam = p.ambient.rows
    ap = max(p.terms)
    cp = p.terms[ap]
    rem = {a: dict(cf) for a, cf in q.terms.items()}
    out: dict = {}
    steps = 0
    while rem:
        steps += 1
        if steps > step_bound:
            raise NotDivisibleError(
                "step_bound", "no exact quotient within %d peeling steps" % step_bound
            )
        ar = max(rem)
        aq = tuple(x - y for x, y in zip(ar, ap))
        shift = _k.lform(lam, ap, aq)
        c = qc_div_exact(qc_shift(rem[ar], -shift), cp)
        if c is None:
            raise NotDivisibleError(
                "coefficient",
                "leading coefficient at X^%s is not divisible" % (ar,),
            )
        out[aq] = c
        _k.submul_monomial(rem, p.terms, aq, c, lam)
    return TorusElem(p.ambient, out, _trusted=True)


def q_commute_exponent(x: TorusElem, y: TorusElem) -> int | None:
    """gamma with x y = q^gamma y x, or None if no single power works.

    For monomials x = X^a, y = X^b the torus relation gives
    x y = v^{2 aT L b} y x, so gamma = aT L b.  None is also returned when
    the uniform v-exponent comes out odd (a genuine half-integer q-power,
    which the engine treats as not q-commuting since gamma must be an
    integer).
    """
    if x.is_zero() or y.is_zero():
        raise ValueError("q-commutation is defined for nonzero elements")
    xy = (x * y).terms
    yx = (y * x).terms
    if set(xy) != set(yx):
        return None
    a = next(iter(xy))
    fa, ga = xy[a], yx[a]
    if len(fa) != len(ga):
        return None
    c = min(fa) - min(ga)
    for a, cf in xy.items():
        if qc_shift(yx[a], c) != cf:
            return None
    if c % 2:
        return None
    return c // 2
