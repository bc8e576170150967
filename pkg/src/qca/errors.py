"""Exception types shared across the engine."""

from __future__ import annotations


class NotReducedError(ValueError):
    """Raised when a word is passed where a reduced word is required."""


class IncompatibleError(Exception):
    """(L, B) fails the compatibility equation sum_k lambda_ik b_kj = delta_ij d.

    ``witness`` is the first failing (row, column) pair, 0-based.
    """

    def __init__(self, witness: tuple[int, int], detail: str = ""):
        self.witness = witness
        i, j = witness
        msg = "compatibility fails at (%d, %d)" % (i + 1, j + 1)
        if detail:
            msg += ": " + detail
        super().__init__(msg)


class NotDivisibleError(Exception):
    """Exact left division failed.

    ``reason`` is "coefficient" (a forced leading-coefficient division left
    Z[v^{+-1}]) or "step_bound" (the peeling loop exhausted its step budget,
    which is how a non-terminating division is detected).
    """

    def __init__(self, reason: str, detail: str = ""):
        assert reason in ("coefficient", "step_bound")
        self.reason = reason
        msg = "not exactly divisible (%s)" % reason
        if detail:
            msg += ": " + detail
        super().__init__(msg)


class EngineInvariantError(Exception):
    """An internal identity the engine re-checks after every step failed.

    This always indicates a bug (or a hand-corrupted seed), never expected
    user input, so it carries a full diagnostic string.
    """
