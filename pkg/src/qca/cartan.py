"""Symmetric Cartan data, weights and the Weyl group action, in exact integers.

A weight is stored in hybrid coordinates

    mu = sum_i m_i varpi_i - sum_j c_j alpha_j

(fundamental-weight part and a subtracted root part).  Every pairing the
engine needs puts a root-lattice vector in the second slot, where

    (mu, alpha_j) = <h_j, mu> = m_j - (A c)_j

so all values are exact integers and the inverse Cartan matrix never appears.
That matters: the inverse is rational in finite type and singular in affine
type, while the formulas below work uniformly for every symmetric
generalized Cartan matrix.

Indices are 0-based everywhere in this module; the command-line layer
converts to the 1-based convention used in displays.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotReducedError

__all__ = [
    "CartanDatum",
    "Weight",
    "RootVec",
    "WeylWord",
    "coroot_pair",
    "pair_weight_root",
    "reflect",
    "reflect_root",
    "weyl_apply",
    "inversion_roots",
    "is_reduced",
]


@dataclass(frozen=True)
class CartanDatum:
    """A symmetric generalized Cartan matrix with index set 0..n-1.

    >>> CartanDatum.from_rows([[2, -1], [-1, 2]]).n
    2
    >>> CartanDatum.from_rows([[2, 1], [1, 2]])
    Traceback (most recent call last):
        ...
    ValueError: Cartan entry sign error at (1, 2): off-diagonal entries must be <= 0
    """

    n: int
    a: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n <= 0:
            raise ValueError("Cartan rank must be positive")
        if len(self.a) != self.n or any(len(row) != self.n for row in self.a):
            raise ValueError("Cartan matrix must be square of size n")
        for i in range(self.n):
            if self.a[i][i] != 2:
                raise ValueError(
                    "Cartan diagonal entry at (%d, %d) must be 2" % (i + 1, i + 1)
                )
            for j in range(self.n):
                if i != j and self.a[i][j] > 0:
                    raise ValueError(
                        "Cartan entry sign error at (%d, %d): "
                        "off-diagonal entries must be <= 0" % (i + 1, j + 1)
                    )
                if self.a[i][j] != self.a[j][i]:
                    raise ValueError(
                        "Cartan matrix must be symmetric (entries (%d, %d), (%d, %d))"
                        % (i + 1, j + 1, j + 1, i + 1)
                    )

    @classmethod
    def from_rows(cls, rows) -> "CartanDatum":
        a = tuple(tuple(int(x) for x in row) for row in rows)
        return cls(n=len(a), a=a)

    def entry(self, i: int, j: int) -> int:
        return self.a[i][j]


@dataclass(frozen=True)
class Weight:
    """mu = sum_i m_i varpi_i - sum_j c_j alpha_j, both parts integer vectors.

    The representation is not unique as an abstract weight (varpi and alpha
    overlap in finite type), but the engine never needs to decide that:
    weights are compared coordinate-wise, and all GLS weights are produced
    in a canonical way from fundamental weights by reflections, which touch
    only the c part.

    >>> w = Weight.fundamental(2, 0) - Weight.root_multiple(2, (1, 0))
    >>> (w.m, w.c)
    ((1, 0), (1, 0))
    """

    m: tuple[int, ...]
    c: tuple[int, ...]

    def __post_init__(self):
        if len(self.m) != len(self.c):
            raise ValueError("weight parts must have equal length")

    @property
    def n(self) -> int:
        return len(self.m)

    @classmethod
    def zero(cls, n: int) -> "Weight":
        return cls((0,) * n, (0,) * n)

    @classmethod
    def fundamental(cls, n: int, i: int) -> "Weight":
        m = [0] * n
        m[i] = 1
        return cls(tuple(m), (0,) * n)

    @classmethod
    def root_multiple(cls, n: int, c) -> "Weight":
        """Build sum_j c_j alpha_j as a Weight (zero m part, negated c part)."""
        return cls((0,) * n, tuple(-int(x) for x in c))

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(
            tuple(x + y for x, y in zip(self.m, other.m)),
            tuple(x + y for x, y in zip(self.c, other.c)),
        )

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(
            tuple(x - y for x, y in zip(self.m, other.m)),
            tuple(x - y for x, y in zip(self.c, other.c)),
        )

    def __neg__(self) -> "Weight":
        return Weight(tuple(-x for x in self.m), tuple(-x for x in self.c))

    def scale(self, k: int) -> "Weight":
        return Weight(tuple(k * x for x in self.m), tuple(k * x for x in self.c))

    def is_root_lattice(self) -> bool:
        return all(x == 0 for x in self.m)

    def as_root(self) -> "RootVec":
        """Write a root-lattice weight as a RootVec (alpha coefficients)."""
        if not self.is_root_lattice():
            raise ValueError("weight has a nonzero fundamental part")
        return RootVec(tuple(-x for x in self.c))


@dataclass(frozen=True)
class RootVec:
    """beta = sum_j c_j alpha_j as an integer coefficient vector."""

    c: tuple[int, ...]

    @classmethod
    def simple(cls, n: int, i: int) -> "RootVec":
        c = [0] * n
        c[i] = 1
        return cls(tuple(c))

    def __add__(self, other: "RootVec") -> "RootVec":
        return RootVec(tuple(x + y for x, y in zip(self.c, other.c)))

    def __neg__(self) -> "RootVec":
        return RootVec(tuple(-x for x in self.c))

    def is_positive(self) -> bool:
        return any(self.c) and all(x >= 0 for x in self.c)

    def as_weight(self) -> Weight:
        return Weight((0,) * len(self.c), tuple(-x for x in self.c))


@dataclass(frozen=True)
class WeylWord:
    """A word (i_1, ..., i_r) in the simple reflections, letters 0-based."""

    letters: tuple[int, ...]

    def __post_init__(self):
        for k, i in enumerate(self.letters):
            if i < 0:
                raise ValueError(
                    "word letter %d at position %d outside Cartan index range"
                    % (i + 1, k + 1)
                )

    @classmethod
    def from_one_based(cls, letters) -> "WeylWord":
        return cls(tuple(int(x) - 1 for x in letters))

    def to_one_based(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self.letters)

    @property
    def r(self) -> int:
        return len(self.letters)

    def validate(self, d: CartanDatum) -> None:
        for k, i in enumerate(self.letters):
            if not 0 <= i < d.n:
                raise ValueError(
                    "word letter %d at position %d outside Cartan index range"
                    % (i + 1, k + 1)
                )


def coroot_pair(d: CartanDatum, i: int, mu: Weight) -> int:
    """<h_i, mu> = m_i - (A c)_i.

    >>> d = CartanDatum.from_rows([[2, -1], [-1, 2]])
    >>> coroot_pair(d, 0, Weight.fundamental(2, 0))
    1
    >>> coroot_pair(d, 1, Weight((1, 0), (1, 0)))
    1
    """
    return mu.m[i] - sum(d.a[i][j] * mu.c[j] for j in range(d.n) if mu.c[j])


def pair_weight_root(d: CartanDatum, mu: Weight, beta: RootVec) -> int:
    """(mu, beta) for beta in the root lattice; exact integer.

    With all symmetrizers equal to 1, (mu, alpha_i) = <h_i, mu>, so
    (mu, sum c_j alpha_j) = sum_j c_j <h_j, mu>.

    >>> d = CartanDatum.from_rows([[2, -1], [-1, 2]])
    >>> pair_weight_root(d, RootVec.simple(2, 0).as_weight(), RootVec.simple(2, 0))
    2
    >>> pair_weight_root(d, Weight.fundamental(2, 0), RootVec.simple(2, 1))
    0
    """
    return sum(
        beta.c[j] * coroot_pair(d, j, mu) for j in range(d.n) if beta.c[j]
    )


def reflect(d: CartanDatum, i: int, mu: Weight) -> Weight:
    """s_i(mu) = mu - <h_i, mu> alpha_i; only c_i changes.

    >>> d = CartanDatum.from_rows([[2, -1], [-1, 2]])
    >>> w = reflect(d, 0, Weight.fundamental(2, 0))
    >>> (w.m, w.c)
    ((1, 0), (1, 0))
    """
    k = coroot_pair(d, i, mu)
    if k == 0:
        return mu
    c = list(mu.c)
    c[i] += k
    return Weight(mu.m, tuple(c))


def reflect_root(d: CartanDatum, i: int, beta: RootVec) -> RootVec:
    """s_i(beta) = beta - <h_i, beta> alpha_i on root-lattice vectors."""
    k = sum(d.a[i][j] * beta.c[j] for j in range(d.n) if beta.c[j])
    if k == 0:
        return beta
    c = list(beta.c)
    c[i] -= k
    return RootVec(tuple(c))


def weyl_apply(d: CartanDatum, word: WeylWord, mu: Weight) -> Weight:
    """Apply u = s_{i_1} s_{i_2} ... s_{i_r} to mu (rightmost letter first).

    >>> d = CartanDatum.from_rows([[2, -1], [-1, 2]])
    >>> w = weyl_apply(d, WeylWord.from_one_based((1, 2)), Weight.fundamental(2, 1))
    >>> (w.m, w.c)
    ((0, 1), (1, 1))
    """
    word.validate(d)
    for i in reversed(word.letters):
        mu = reflect(d, i, mu)
    return mu


def inversion_roots(d: CartanDatum, word: WeylWord) -> tuple[RootVec, ...]:
    """beta_k = s_{i_1} ... s_{i_{k-1}} (alpha_{i_k}) for k = 1..r.

    The word is reduced exactly when every beta_k is a positive root; for a
    reduced word the beta_k are pairwise distinct.
    """
    word.validate(d)
    out = []
    for k, i in enumerate(word.letters):
        beta = RootVec.simple(d.n, i)
        for j in reversed(word.letters[:k]):
            beta = reflect_root(d, j, beta)
        out.append(beta)
    return tuple(out)


def is_reduced(d: CartanDatum, word: WeylWord) -> bool:
    """Length check via inversion roots.

    The length of u_k = s_{i_1}...s_{i_k} grows at each step iff
    u_{k-1}(alpha_{i_k}) is positive, so the word is reduced iff every
    inversion root is positive.

    >>> d = CartanDatum.from_rows([[2, -1], [-1, 2]])
    >>> is_reduced(d, WeylWord.from_one_based((1, 2, 1)))
    True
    >>> is_reduced(d, WeylWord.from_one_based((1, 1)))
    False
    """
    for beta in inversion_roots(d, word):
        assert any(beta.c), "an inversion root cannot vanish"
        if not beta.is_positive():
            return False
    return True


def check_reduced(d: CartanDatum, word: WeylWord) -> None:
    if not is_reduced(d, word):
        raise NotReducedError(
            "word %s is not reduced" % (word.to_one_based(),)
        )
