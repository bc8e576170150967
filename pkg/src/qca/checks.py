"""Named identity checks over mutation sequences, with reporting.

run_suite walks the prefix tree of the requested sequences (shared prefixes
are mutated once), evaluates the selected checks at the starting seed and
at every mutation step, and returns a CheckReport whose entries never throw:
every failure is data.  The report serializes deterministically; timings
stay on the in-memory object only.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from .cartan import Weight, pair_weight_root
from .classical import classical_shadow, classical_mutate, compare_q1
from .errors import EngineInvariantError, IncompatibleError, NotDivisibleError
from .seeds import (
    QuantumSeed,
    _mutate_unchecked,
    check_compatible,
    homogeneous_weight,
)
from .torus import q_commute_exponent

__all__ = [
    "STANDARD_CHECKS",
    "EXTENDED_CHECKS",
    "ALL_CHECKS",
    "CheckEntry",
    "CheckReport",
    "run_suite",
    "default_sequences",
]

STANDARD_CHECKS = (
    "compatible",
    "parity",
    "weight_balance",
    "exchange_identity",
    "lambda_mutation",
    "homogeneity",
    "laurent",
    "positivity",
    "q1_oracle",
    "involutivity",
)
EXTENDED_CHECKS = ("bar_invariance",)
ALL_CHECKS = STANDARD_CHECKS + EXTENDED_CHECKS

_SEED_LEVEL = frozenset(
    ("compatible", "parity", "weight_balance", "homogeneity", "positivity",
     "bar_invariance", "q1_oracle")
)


def check_tier(name: str) -> str:
    if name in EXTENDED_CHECKS:
        return "extended"
    if name in STANDARD_CHECKS:
        return "standard"
    raise ValueError("unknown check %r; valid names: %s" % (name, ", ".join(ALL_CHECKS)))


@dataclass(frozen=True)
class CheckEntry:
    check: str
    tier: str
    sequence: tuple[int, ...]  # 1-based directions, () = the starting seed
    status: str  # "pass" | "fail"
    witness: str | None = None


@dataclass
class CheckReport:
    entries: tuple[CheckEntry, ...]
    meta: dict
    timings: dict = field(default_factory=dict)  # not serialized

    @property
    def passed(self) -> bool:
        return all(e.status == "pass" for e in self.entries)

    def failures(self) -> tuple[CheckEntry, ...]:
        return tuple(e for e in self.entries if e.status == "fail")


def default_sequences(seed: QuantumSeed, depth: int = 4, n_random: int = 32,
                      random_len: int = 6, rng_seed: int = 0):
    """All sequences of length <= depth over K_ex, plus seeded random ones."""
    ex = seed.ex
    seqs = []
    for length in range(1, depth + 1):
        seqs.extend(itertools.product(ex, repeat=length))
    if ex:
        rng = random.Random(rng_seed)
        for _ in range(n_random):
            length = rng.randint(1, random_len)
            seqs.append(tuple(rng.choice(ex) for _ in range(length)))
    seen = set()
    out = []
    for s in seqs:
        if s not in seen:
            seen.add(s)
            out.append(s)
    return out


# -- individual step checks -------------------------------------------------

def _seed_level_failures(seed: QuantumSeed, selected, fail):
    """Evaluate the seed-level checks at the starting seed (path ())."""
    if "compatible" in selected:
        try:
            check_compatible(seed.lmat, seed.bmat)
        except IncompatibleError as e:
            fail[("compatible", ())] = str(e)
    if "parity" in selected:
        w = _parity_witness(seed)
        if w:
            fail[("parity", ())] = w
    if "weight_balance" in selected:
        w = _balance_witness(seed)
        if w:
            fail[("weight_balance", ())] = w
    if "homogeneity" in selected:
        for i in range(seed.k):
            if homogeneous_weight(seed.vars[i], seed.d_init) != seed.dvec[i]:
                fail[("homogeneity", ())] = (
                    "variable %d is not homogeneous of weight D_%d" % (i + 1, i + 1)
                )
                break
    if "positivity" in selected:
        for i in range(seed.k):
            if not seed.vars[i].is_nonneg():
                fail[("positivity", ())] = "variable %d has a negative coefficient" % (i + 1)
                break
    if "bar_invariance" in selected:
        for i in range(seed.k):
            if seed.vars[i].bar() != seed.vars[i]:
                fail[("bar_invariance", ())] = "variable %d is not bar-invariant" % (i + 1)
                break


def _parity_witness(seed: QuantumSeed) -> str | None:
    if seed.cartan is None:
        return "parity needs the Cartan datum (seed carries none)"
    for i in range(seed.k):
        for j in range(i):
            if not (seed.dvec[i].is_root_lattice() and seed.dvec[j].is_root_lattice()):
                return "D entries outside the root lattice at (%d, %d)" % (i + 1, j + 1)
            pairing = pair_weight_root(seed.cartan, seed.dvec[i], seed.dvec[j].as_root())
            if (seed.lmat.entry(i, j) - pairing) % 2:
                return "lambda_%d%d = %d but (d_i, d_j) = %d" % (
                    i + 1, j + 1, seed.lmat.entry(i, j), pairing)
    return None


def _balance_witness(seed: QuantumSeed) -> str | None:
    zero = Weight.zero(seed.dvec[0].n)
    for k in seed.ex:
        acc = zero
        for i in range(seed.k):
            b = seed.bmat.entry(i, k)
            if b:
                acc = acc + seed.dvec[i].scale(b)
        if acc != zero:
            return "column %d does not balance" % (k + 1)
    return None


def _step_failures(seed, new_seed, parts, path, selected, fail, d_expect):
    """Checks evaluated after one mutation step ending at ``path``."""
    k = parts.k
    step_txt = "step %d (direction %d)" % (len(path), k + 1)
    if "compatible" in selected:
        try:
            d_now = check_compatible(new_seed.lmat, new_seed.bmat)
            if d_now != d_expect:
                fail[("compatible", path)] = "%s: d changed from %s to %s" % (
                    step_txt, d_expect, d_now)
        except IncompatibleError as e:
            fail[("compatible", path)] = "%s: %s" % (step_txt, e)
    if "parity" in selected:
        w = _parity_witness(new_seed)
        if w:
            fail[("parity", path)] = "%s: %s" % (step_txt, w)
    if "weight_balance" in selected:
        w = _balance_witness(new_seed)
        if w:
            fail[("weight_balance", path)] = "%s: %s" % (step_txt, w)
    if "exchange_identity" in selected:
        lhs = seed.vars[k] * parts.new_var
        rhs = (parts.m_pos.v_shift(2 - parts.shift_pos)
               + parts.m_neg.v_shift(-parts.shift_neg)).v_shift(parts.shift_neg)
        if lhs != rhs:
            fail[("exchange_identity", path)] = (
                "%s: vars_k * new_var differs from v^{p''}(v^2 M' + M'')" % step_txt)
    if "lambda_mutation" in selected:
        for j in range(seed.k):
            if j == k:
                continue
            gamma = q_commute_exponent(new_seed.vars[j], parts.new_var)
            if gamma != new_seed.lmat.entry(j, k):
                fail[("lambda_mutation", path)] = (
                    "%s: q-commutation of variable %d with the new variable "
                    "gives %s, mu_k(L) says %d"
                    % (step_txt, j + 1, gamma, new_seed.lmat.entry(j, k)))
                break
    if "homogeneity" in selected:
        if homogeneous_weight(parts.new_var, seed.d_init) != new_seed.dvec[k]:
            fail[("homogeneity", path)] = (
                "%s: new variable is not homogeneous of weight mu_k(D)_k" % step_txt)
    if "positivity" in selected:
        if not parts.new_var.is_nonneg():
            fail[("positivity", path)] = (
                "%s: new variable has a negative coefficient" % step_txt)
    if "bar_invariance" in selected:
        if parts.new_var.bar() != parts.new_var:
            fail[("bar_invariance", path)] = (
                "%s: new variable is not bar-invariant" % step_txt)
    if "involutivity" in selected:
        try:
            back, _ = _mutate_unchecked(new_seed, k)
            if back != seed:
                fail[("involutivity", path)] = (
                    "%s: mutating back does not restore the seed" % step_txt)
        except (NotDivisibleError, EngineInvariantError) as e:
            fail[("involutivity", path)] = "%s: back-mutation failed (%s)" % (step_txt, e)


def run_suite(seed: QuantumSeed, sequences, checks=None, meta=None) -> CheckReport:
    """Evaluate the selected checks over the given sequences (0-based
    directions).  Unknown check names raise ValueError; everything else is
    reported, not raised."""
    if checks is None:
        selected = list(ALL_CHECKS)
    else:
        selected = list(checks)
        bad = [c for c in selected if c not in ALL_CHECKS]
        if bad:
            raise ValueError(
                "unknown check name(s) %s; valid names: %s"
                % (", ".join(sorted(bad)), ", ".join(ALL_CHECKS))
            )
    sel = frozenset(selected)
    sequences = [tuple(int(k) for k in s) for s in sequences]
    for s in sequences:
        for k in s:
            if k not in seed.ex:
                raise ValueError("direction %d is not exchangeable" % (k + 1))

    t0 = time.monotonic()
    fail: dict = {}
    pruned: dict = {}  # path -> reason, subtree below was not evaluated

    try:
        d_expect = check_compatible(seed.lmat, seed.bmat)
    except IncompatibleError:
        d_expect = None
    _seed_level_failures(seed, sel, fail)

    want_classical = "q1_oracle" in sel
    cs0 = classical_shadow(seed) if want_classical else None
    if want_classical:
        bad = compare_q1(seed, cs0)
        if bad:
            fail[("q1_oracle", ())] = (
                "initial variables %s disagree with the classical seed"
                % [i + 1 for i in bad])

    # prefix tree of all requested sequences
    children: dict = {(): set()}
    for s in sequences:
        for i in range(len(s)):
            children.setdefault(s[:i], set()).add(s[i])
            children.setdefault(s[: i + 1], set())

    stack = [((), seed, cs0)]
    while stack:
        path, cur, cs = stack.pop()
        for k in sorted(children.get(path, ()), reverse=True):
            child = path + (k,)
            try:
                new_seed, parts = _mutate_unchecked(cur, k)
            except NotDivisibleError as e:
                fail[("laurent", child)] = (
                    "step %d (direction %d): %s" % (len(child), k + 1, e))
                pruned[child] = "division failed at step %d" % len(child)
                continue
            except EngineInvariantError as e:
                fail[("exchange_identity", child)] = (
                    "step %d (direction %d): %s" % (len(child), k + 1, e))
                pruned[child] = "mutation aborted at step %d" % len(child)
                continue
            new_cs = None
            if want_classical:
                new_cs = classical_mutate(cs, k)
                bad = compare_q1(new_seed, new_cs)
                if bad:
                    fail[("q1_oracle", child)] = (
                        "step %d (direction %d): variables %s disagree with "
                        "the classical shadow"
                        % (len(child), k + 1, [i + 1 for i in bad]))
            _step_failures(cur, new_seed, parts, child, sel, fail, d_expect)
            stack.append((child, new_seed, new_cs))
    elapsed = time.monotonic() - t0

    entries = []
    order = [c for c in ALL_CHECKS if c in sel]
    for check in order:
        ent = fail.get((check, ()))
        entries.append(CheckEntry(
            check=check, tier=check_tier(check), sequence=(),
            status="fail" if ent else "pass", witness=ent))
        for s in sorted(set(sequences), key=lambda t: (len(t), t)):
            status, witness = "pass", None
            for i in range(1, len(s) + 1):
                prefix = s[:i]
                if (check, prefix) in fail:
                    status, witness = "fail", fail[(check, prefix)]
                    break
                if prefix in pruned:
                    status = "fail"
                    witness = "not evaluated: %s" % pruned[prefix]
                    break
            entries.append(CheckEntry(
                check=check, tier=check_tier(check),
                sequence=tuple(k + 1 for k in s), status=status, witness=witness))

    full_meta = {"checks": list(order), "n_sequences": len(set(sequences))}
    if meta:
        full_meta.update(meta)
    report = CheckReport(entries=tuple(entries), meta=full_meta)
    report.timings["total"] = elapsed
    return report
