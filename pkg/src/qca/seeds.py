"""Quantum seeds and their mutation.

A seed is a compatible pair (L, B~) together with one quantum-torus element
per index (the cluster variables, all expressed in the *initial* torus), a
weight per index (the D data), and the mutation history.  Mutation in
direction k replaces

    vars_k  ->  X'_k  with  vars_k * X'_k = v^{p'} M' + v^{p''} M'',

where M', M'' are the normalized cluster monomials with exponents e_k + a',
e_k + a'' built from the exchange column of B~, and p', p'' are the
v-exponents produced by commuting vars_k across those monomials
(p = sum_i a_i lambda^cur_{ki}).  Compatibility forces p' - p'' = 2, which
the engine asserts at every step along with q-commutation and homogeneity
of the new variable.

All of this is exact; nothing is floating point.  Matrix and d-vector
mutation are each computed by two different formulas (matrix products
against closed forms) and cross-checked.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .cartan import CartanDatum, Weight
from .errors import EngineInvariantError, IncompatibleError
from .torus import LMatrix, TorusElem, exact_left_div, q_commute_exponent

__all__ = [
    "BMatrix",
    "QuantumSeed",
    "ExchangeParts",
    "check_compatible",
    "ef_matrices",
    "mutate_matrices",
    "mutate_dvector",
    "exchange_exponents",
    "exchange_parts",
    "mutate_variable",
    "mutate",
    "mutate_seq",
    "cluster_monomial",
    "homogeneous_weight",
]


@dataclass(frozen=True)
class BMatrix:
    """K x |K_ex| exchange matrix; column j of ``rows`` belongs to ex[j].

    The principal part (rows restricted to exchangeable indices) must be
    skew-symmetric.
    """

    rows: tuple[tuple[int, ...], ...]
    ex: tuple[int, ...]

    def __post_init__(self):
        k = len(self.rows)
        ncols = len(self.ex)
        if any(len(row) != ncols for row in self.rows):
            raise ValueError("B matrix must have one column per exchangeable index")
        if list(self.ex) != sorted(set(self.ex)):
            raise ValueError("exchangeable indices must be strictly increasing")
        if self.ex and not (0 <= self.ex[0] and self.ex[-1] < k):
            raise ValueError("exchangeable index out of range")
        for jpos, j in enumerate(self.ex):
            for ipos, i in enumerate(self.ex):
                if self.rows[i][jpos] != -self.rows[j][ipos]:
                    raise ValueError(
                        "principal part of B must be skew-symmetric "
                        "(entries (%d, %d), (%d, %d))" % (i + 1, j + 1, j + 1, i + 1)
                    )

    @classmethod
    def from_rows(cls, rows, ex) -> "BMatrix":
        return cls(
            tuple(tuple(int(x) for x in row) for row in rows),
            tuple(int(x) for x in ex),
        )

    @property
    def k(self) -> int:
        return len(self.rows)

    def pos(self, j: int) -> int:
        return self.ex.index(j)

    def entry(self, i: int, j: int) -> int:
        """b_ij for i in K, j in K_ex."""
        return self.rows[i][self.pos(j)]

    def column(self, j: int) -> tuple[int, ...]:
        p = self.pos(j)
        return tuple(row[p] for row in self.rows)


def check_compatible(lmat: LMatrix, bmat: BMatrix) -> int | None:
    """The d with sum_t lambda_it b_tj = delta_ij d, else IncompatibleError.

    Returns None when there are no exchangeable indices (no constraint).
    """
    if lmat.k != bmat.k:
        raise ValueError("L and B must have the same number of rows")
    d_val = None
    for jpos, j in enumerate(bmat.ex):
        for i in range(lmat.k):
            s = sum(
                lmat.entry(i, t) * bmat.rows[t][jpos]
                for t in range(lmat.k)
                if bmat.rows[t][jpos]
            )
            if i == j:
                if s <= 0:
                    raise IncompatibleError((i, j), "diagonal value %d is not positive" % s)
                if d_val is None:
                    d_val = s
                elif s != d_val:
                    raise IncompatibleError(
                        (i, j), "diagonal values %d and %d differ" % (d_val, s)
                    )
            elif s != 0:
                raise IncompatibleError((i, j), "off-diagonal value %d" % s)
    return d_val


def ef_matrices(bmat: BMatrix, k: int):
    """The involutive mutation matrices (E, F) in direction k.

    E is K x K and differs from the identity only in column k; F is
    |K_ex| x |K_ex| and differs from the identity only in row k.  E^2 = 1.
    """
    n = bmat.k
    col = bmat.column(k)
    e_rows = []
    for i in range(n):
        row = [1 if i == j else 0 for j in range(n)]
        row[k] = -1 if i == k else max(0, -col[i])
        e_rows.append(tuple(row))
    kpos = bmat.pos(k)
    f_rows = []
    for ipos in range(len(bmat.ex)):
        row = [1 if ipos == jpos else 0 for jpos in range(len(bmat.ex))]
        if ipos == kpos:
            for jpos in range(len(bmat.ex)):
                row[jpos] = -1 if jpos == kpos else max(0, bmat.rows[k][jpos])
        f_rows.append(tuple(row))
    return tuple(e_rows), tuple(f_rows)


def _matmul(a, b):
    n, m = len(a), len(b[0])
    inner = len(b)
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(inner)) for j in range(m))
        for i in range(n)
    )


def _transpose(a):
    return tuple(tuple(row[i] for row in a) for i in range(len(a[0])))


def mutate_matrices(lmat: LMatrix, bmat: BMatrix, k: int):
    """(mu_k L, mu_k B~) = (E^T L E, E B~ F), cross-checked against the
    entrywise closed forms.  A disagreement is an engine bug."""
    if k not in bmat.ex:
        raise ValueError("direction %d is frozen" % (k + 1))
    e_mat, f_mat = ef_matrices(bmat, k)
    n = bmat.k
    lp_matrix = _matmul(_transpose(e_mat), _matmul(lmat.rows, e_mat))
    bp_matrix = _matmul(_matmul(e_mat, bmat.rows), f_mat)

    col = bmat.column(k)
    lp_closed = [list(row) for row in lmat.rows]
    for j in range(n):
        if j != k:
            lp_closed[k][j] = -lmat.entry(k, j) + sum(
                max(0, -col[t]) * lmat.entry(t, j) for t in range(n) if t != k
            )
            lp_closed[j][k] = -lp_closed[k][j]
    lp_closed[k][k] = 0
    lp_closed = tuple(tuple(row) for row in lp_closed)

    bp_closed = []
    for i in range(n):
        row = []
        for jpos, j in enumerate(bmat.ex):
            b_ij = bmat.rows[i][jpos]
            if i == k or j == k:
                row.append(-b_ij)
            else:
                b_ik = col[i]
                b_kj = bmat.rows[k][jpos]
                sign = -1 if b_ik < 0 else 1
                row.append(b_ij + sign * max(b_ik * b_kj, 0))
        bp_closed.append(tuple(row))
    bp_closed = tuple(bp_closed)

    if lp_matrix != lp_closed or bp_matrix != bp_closed:
        raise EngineInvariantError(
            "matrix mutation mismatch in direction %d: "
            "E^T L E vs closed form %s, E B F vs closed form %s"
            % (k + 1, lp_matrix == lp_closed, bp_matrix == bp_closed)
        )
    return LMatrix(lp_closed), BMatrix(bp_closed, bmat.ex)


def mutate_dvector(dvec, bmat: BMatrix, k: int):
    """Replace d_k by -d_k + sum_{b_ik > 0} b_ik d_i."""
    if k not in bmat.ex:
        raise ValueError("direction %d is frozen" % (k + 1))
    col = bmat.column(k)
    acc = -dvec[k]
    for i, b in enumerate(col):
        if b > 0:
            acc = acc + dvec[i].scale(b)
    out = list(dvec)
    out[k] = acc
    return tuple(out)


def exchange_exponents(bmat: BMatrix, k: int):
    """(a', a''): both have -1 at k; a' collects b_ik > 0, a'' collects -b_ik > 0."""
    if k not in bmat.ex:
        raise ValueError("direction %d is frozen" % (k + 1))
    col = bmat.column(k)
    a_pos = tuple(-1 if i == k else max(0, b) for i, b in enumerate(col))
    a_neg = tuple(-1 if i == k else max(0, -b) for i, b in enumerate(col))
    return a_pos, a_neg


def homogeneous_weight(x: TorusElem, d_init) -> Weight | None:
    """The common weight sum_i a_i d_i of all monomials of x, or None."""
    if x.is_zero():
        return None
    n = len(d_init)
    wt = None
    for a in x.terms:
        w = Weight.zero(d_init[0].n)
        for i in range(n):
            if a[i]:
                w = w + d_init[i].scale(a[i])
        if wt is None:
            wt = w
        elif wt != w:
            return None
    return wt


@dataclass(frozen=True, eq=False)
class QuantumSeed:
    """Current (L, B~, D, vars) plus the initial torus data and history.

    ``l_init`` is the matrix of the ambient torus all variables live in and
    ``d_init`` the grading weights; both are constant along mutation.
    ``cartan`` is carried when the seed came from a Cartan datum (needed for
    root-lattice pairings: parity checks, normalized export).
    """

    l_init: LMatrix
    d_init: tuple[Weight, ...]
    lmat: LMatrix
    bmat: BMatrix
    dvec: tuple[Weight, ...]
    vars: tuple[TorusElem, ...]
    history: tuple[int, ...]
    cartan: CartanDatum | None = None

    def __post_init__(self):
        n = self.l_init.k
        if not (
            self.lmat.k == n
            and self.bmat.k == n
            and len(self.dvec) == n
            and len(self.d_init) == n
            and len(self.vars) == n
        ):
            raise ValueError("seed components disagree on the index set size")
        for x in self.vars:
            if x.ambient != self.l_init:
                raise ValueError("cluster variable lives in the wrong torus")

    @property
    def k(self) -> int:
        return self.l_init.k

    @property
    def ex(self) -> tuple[int, ...]:
        return self.bmat.ex

    def __eq__(self, other) -> bool:
        """Seed equality ignores history (and the optional Cartan tag)."""
        if not isinstance(other, QuantumSeed):
            return NotImplemented
        return (
            self.l_init == other.l_init
            and self.d_init == other.d_init
            and self.lmat == other.lmat
            and self.bmat == other.bmat
            and self.dvec == other.dvec
            and self.vars == other.vars
        )

    __hash__ = None

    @classmethod
    def initial(cls, lmat: LMatrix, bmat: BMatrix, dvec, cartan=None) -> "QuantumSeed":
        """The seed whose variables are the torus generators X^{e_i}."""
        gens = tuple(
            TorusElem.monomial(lmat, tuple(1 if j == i else 0 for j in range(lmat.k)))
            for i in range(lmat.k)
        )
        seed = cls(
            l_init=lmat,
            d_init=tuple(dvec),
            lmat=lmat,
            bmat=bmat,
            dvec=tuple(dvec),
            vars=gens,
            history=(),
            cartan=cartan,
        )
        seed.validate_full()
        return seed

    def validate_full(self) -> None:
        """Compatibility, pairwise q-commutation per L, homogeneity per D."""
        check_compatible(self.lmat, self.bmat)
        n = self.k
        for i in range(n):
            for j in range(i + 1, n):
                gamma = q_commute_exponent(self.vars[i], self.vars[j])
                if gamma != self.lmat.entry(i, j):
                    raise EngineInvariantError(
                        "q-commutation of variables (%d, %d): got %s, L says %d"
                        % (i + 1, j + 1, gamma, self.lmat.entry(i, j))
                    )
        for i in range(n):
            w = homogeneous_weight(self.vars[i], self.d_init)
            if w != self.dvec[i]:
                raise EngineInvariantError(
                    "variable %d is not homogeneous of weight D_%d" % (i + 1, i + 1)
                )


def cluster_monomial(seed: QuantumSeed, a) -> TorusElem:
    """The normalized product of current variables with exponents a >= 0:

        v^{sum_{i>j} a_i a_j lambda^cur_ij} vars_1^{a_1} ... vars_K^{a_K}.

    On the initial seed this reproduces the basis monomial X^a exactly.
    """
    a = tuple(int(x) for x in a)
    if len(a) != seed.k or any(x < 0 for x in a):
        raise ValueError("cluster monomials need a nonnegative exponent per index")
    return _realize_monomial(seed.lmat, seed.vars, a)


def _realize_monomial(lcur: LMatrix, vars, a) -> TorusElem:
    prefac = 0
    for i in range(len(a)):
        if a[i]:
            for j in range(i):
                if a[j]:
                    prefac += a[i] * a[j] * lcur.entry(i, j)
    prod = TorusElem.one(vars[0].ambient)
    for i, ai in enumerate(a):
        if ai:
            prod = prod * vars[i].pow(ai)
    return prod.v_shift(prefac)


@dataclass(frozen=True)
class ExchangeParts:
    """Everything mutation in direction k produces, before validation.

    ``m_pos``/``m_neg`` are the two normalized cluster monomials, already
    shifted by v^{shift_pos}/v^{shift_neg}; ``numerator`` is their sum,
    which equals vars_k * new_var by construction.
    """

    k: int
    a_pos: tuple[int, ...]
    a_neg: tuple[int, ...]
    shift_pos: int
    shift_neg: int
    m_pos: TorusElem
    m_neg: TorusElem
    numerator: TorusElem
    new_var: TorusElem


def exchange_parts(seed: QuantumSeed, k: int) -> ExchangeParts:
    """Compute the exchange in direction k inside the initial torus.

    The commuting prefactors come from X_k X^a = v^{sum_i a_i lambda_ki}
    X^{e_k + a}, applied with the *current* L; compatibility forces
    shift_pos - shift_neg = 2, which is asserted here.
    """
    a_pos, a_neg = exchange_exponents(seed.bmat, k)
    c_pos = tuple(x + (1 if i == k else 0) for i, x in enumerate(a_pos))
    c_neg = tuple(x + (1 if i == k else 0) for i, x in enumerate(a_neg))
    lcur = seed.lmat
    shift_pos = sum(a_pos[i] * lcur.entry(k, i) for i in range(seed.k) if a_pos[i])
    shift_neg = sum(a_neg[i] * lcur.entry(k, i) for i in range(seed.k) if a_neg[i])
    if shift_pos - shift_neg != 2:
        raise EngineInvariantError(
            "exchange prefactors in direction %d differ by %d, not 2 "
            "(compatibility is broken)" % (k + 1, shift_pos - shift_neg)
        )
    m_pos = _realize_monomial(lcur, seed.vars, c_pos).v_shift(shift_pos)
    m_neg = _realize_monomial(lcur, seed.vars, c_neg).v_shift(shift_neg)
    numerator = m_pos + m_neg
    new_var = exact_left_div(seed.vars[k], numerator)
    return ExchangeParts(
        k=k,
        a_pos=a_pos,
        a_neg=a_neg,
        shift_pos=shift_pos,
        shift_neg=shift_neg,
        m_pos=m_pos,
        m_neg=m_neg,
        numerator=numerator,
        new_var=new_var,
    )


def mutate_variable(seed: QuantumSeed, k: int) -> TorusElem:
    """The new cluster variable in direction k."""
    return exchange_parts(seed, k).new_var


def _mutate_unchecked(seed: QuantumSeed, k: int):
    """New seed plus the exchange data, without the invariant re-checks."""
    parts = exchange_parts(seed, k)
    lp, bp = mutate_matrices(seed.lmat, seed.bmat, k)
    dp = mutate_dvector(seed.dvec, seed.bmat, k)
    new_vars = list(seed.vars)
    new_vars[k] = parts.new_var
    new_seed = replace(
        seed,
        lmat=lp,
        bmat=bp,
        dvec=dp,
        vars=tuple(new_vars),
        history=seed.history + (k,),
    )
    return new_seed, parts


def mutate(seed: QuantumSeed, k: int) -> QuantumSeed:
    """Mutation in direction k, with every changed invariant re-checked:

    - compatibility of (mu_k L, mu_k B~) with the same d,
    - q-commutation of the new variable against all others per mu_k(L),
    - homogeneity of the new variable of weight mu_k(D)_k.

    Unchanged pairs need no re-check (their variables and L entries are
    untouched), so this is a full revalidation given a valid input seed.
    """
    d_before = check_compatible(seed.lmat, seed.bmat)
    new_seed, parts = _mutate_unchecked(seed, k)
    d_after = check_compatible(new_seed.lmat, new_seed.bmat)
    if d_after != d_before:
        raise EngineInvariantError(
            "compatibility degree changed from %s to %s in direction %d"
            % (d_before, d_after, k + 1)
        )
    for j in range(seed.k):
        if j == k:
            continue
        gamma = q_commute_exponent(new_seed.vars[j], parts.new_var)
        expected = new_seed.lmat.entry(j, k)
        if gamma != expected:
            raise EngineInvariantError(
                "new variable in direction %d fails q-commutation with "
                "variable %d: got %s, mu_k(L) says %d" % (k + 1, j + 1, gamma, expected)
            )
    w = homogeneous_weight(parts.new_var, seed.d_init)
    if w != new_seed.dvec[k]:
        raise EngineInvariantError(
            "new variable in direction %d is not homogeneous of weight mu_k(D)_k"
            % (k + 1)
        )
    return new_seed


def mutate_seq(seed: QuantumSeed, ks) -> QuantumSeed:
    """Fold mutate over a sequence of directions."""
    for k in ks:
        seed = mutate(seed, k)
    return seed
